#include "comet/scalar.hpp"

#include <cctype>

namespace comet {

namespace {

void require_unit_interval(const Rational& q) {
    if (sgn(q) < 0 || q > 1) throw ScalarRangeError("scalar " + q.get_str() + " outside [0,1]");
}

mpz_class pow10(unsigned long k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), 10, k);
    return r;
}

// Non-negative x rounded to the nearest integer, ties to even.
mpz_class round_half_even(const Rational& x) {
    mpz_class fl = x.get_num() / x.get_den();
    mpz_class twice_rem = 2 * (x.get_num() - fl * x.get_den());
    int c = cmp(twice_rem, x.get_den());
    if (c > 0 || (c == 0 && mpz_odd_p(fl.get_mpz_t()))) fl += 1;
    return fl;
}

// digits of m placed so that the value is m · 10^-scale.
std::string place_point(const mpz_class& m, unsigned long scale) {
    std::string digits = m.get_str();
    if (scale == 0) return digits;
    if (digits.size() <= scale) digits.insert(0, scale - digits.size() + 1, '0');
    digits.insert(digits.size() - scale, ".");
    return digits;
}

std::string strip_zeros(std::string s) {
    if (s.find('.') == std::string::npos) return s;
    while (!s.empty() && s.back() == '0') s.pop_back();
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

}  // namespace

Scalar::Scalar(long num, long den) : q_(num, den) {
    q_.canonicalize();
    require_unit_interval(q_);
}

Scalar::Scalar(const Rational& q) : q_(q) {
    q_.canonicalize();
    require_unit_interval(q_);
}

Scalar Scalar::one_over(std::uint64_t n) {
    if (n == 0) throw ScalarRangeError("1/0");
    Rational q(1);
    q /= mpz_class(std::to_string(n));
    return Scalar(q);
}

Scalar Scalar::parse(std::string_view text) {
    auto all_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        return true;
    };
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed fraction: " + std::string(text));
        mpz_class d(std::string{den}, 10);
        if (d == 0) throw ScalarRangeError("zero denominator");
        return Scalar(Rational(mpz_class(std::string{num}, 10), d));
    }
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        auto whole = text.substr(0, dot), frac = text.substr(dot + 1);
        if (!all_digits(whole) || !all_digits(frac)) throw std::invalid_argument("malformed decimal: " + std::string(text));
        mpz_class num(std::string{whole} + std::string{frac}, 10);
        return Scalar(Rational(num, pow10(frac.size())));
    }
    if (!all_digits(text)) throw std::invalid_argument("malformed scalar: " + std::string(text));
    return Scalar(Rational(mpz_class(std::string{text}, 10)));
}

std::string Scalar::to_string() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

Scalar ovee_scalar(const Scalar& q, const Scalar& r) {
    Rational s = q.value() + r.value();
    if (s > 1) throw DisjointnessViolation(q.to_string() + " (+) " + r.to_string() + " exceeds 1");
    return Scalar(s);
}

Scalar andthen_scalar(const Scalar& q, const Scalar& r) { return Scalar(Rational(q.value() * r.value())); }

Scalar ortho(const Scalar& q) { return Scalar(Rational(1 - q.value())); }

bool leq_scalar(const Scalar& q, const Scalar& r) { return q.value() <= r.value(); }

std::string to_decimal(const Rational& q, int significant) {
    if (sgn(q) == 0) return "0";
    bool negative = sgn(q) < 0;
    Rational x = negative ? Rational(-q) : q;
    // Find e with 10^e <= x < 10^(e+1).
    long e = static_cast<long>(x.get_num().get_str().size()) - static_cast<long>(x.get_den().get_str().size());
    auto scaled = [&](long exp) {
        Rational r = x;
        if (exp >= 0) r *= pow10(exp); else r /= pow10(-exp);
        return r;
    };
    while (scaled(-e) >= 10) ++e;
    while (scaled(-e) < 1) --e;
    long shift = significant - 1 - e;
    mpz_class m = round_half_even(scaled(shift));
    if (m == pow10(significant)) {
        m /= 10;
        --shift;
    }
    std::string out;
    if (shift >= 0) {
        out = strip_zeros(place_point(m, shift));
    } else {
        out = mpz_class(m * pow10(-shift)).get_str();
    }
    return negative ? "-" + out : out;
}

std::string to_fixed(const Rational& q, int places) {
    bool negative = sgn(q) < 0;
    Rational x = negative ? Rational(-q) : q;
    x *= pow10(places);
    std::string out = place_point(round_half_even(x), places);
    return negative ? "-" + out : out;
}

}  // namespace comet

#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace comet {

// Unconstrained exact rational, used for intermediate sums.
using Rational = mpq_class;

struct DisjointnessViolation : std::domain_error {
    using std::domain_error::domain_error;
};

struct ScalarRangeError : std::domain_error {
    using std::domain_error::domain_error;
};

/// An exact probability: a reduced rational in [0, 1].
class Scalar {
public:
    Scalar() = default;
    Scalar(long num, long den);
    explicit Scalar(const Rational& q);

    static Scalar zero() { return {}; }
    static Scalar one() { return Scalar(1, 1); }
    static Scalar one_over(std::uint64_t n);

    /// Parses `p/q`, an integer `0`/`1`, or a decimal literal such as `0.096`.
    static Scalar parse(std::string_view text);

    const Rational& value() const { return q_; }
    mpz_class numerator() const { return q_.get_num(); }
    mpz_class denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_one() const { return q_ == 1; }

    /// `p/q` form (`0` and `1` for the extremes); `parse` inverts it exactly.
    std::string to_string() const;

    friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    Rational q_{0};
};

// Effect-monoid operations on scalars.

/// Partial sum; throws DisjointnessViolation when q + r > 1.
Scalar ovee_scalar(const Scalar& q, const Scalar& r);
/// Sequential product q & r = q·r.
Scalar andthen_scalar(const Scalar& q, const Scalar& r);
/// Orthosupplement 1 − q.
Scalar ortho(const Scalar& q);
bool leq_scalar(const Scalar& q, const Scalar& r);

/// Rounds to `significant` digits, ties to even, trailing zeros stripped.
std::string to_decimal(const Rational& q, int significant = 10);
/// Rounds to a fixed number of places after the point, ties to even.
std::string to_fixed(const Rational& q, int places);

}  // namespace comet

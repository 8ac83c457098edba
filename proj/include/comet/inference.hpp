#pragma once

#include "comet/semantics.hpp"
#include "comet/surface.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace comet {

struct ZeroMass : std::domain_error {
    using std::domain_error::domain_error;
};

struct NotATensor : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A state was required but the definition has parameters.
struct NotClosed : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Weights over A with total mass at most 1; the rest is divergence.
class SubDist {
public:
    SubDist() = default;
    explicit SubDist(Dist d) : dist_(std::move(d)) {}

    const Dist& dist() const { return dist_; }
    const Type& carrier() const { return dist_.carrier(); }
    Rational weight(const Value& v) const { return dist_.weight(v); }
    Rational mass() const { return dist_.mass(); }

private:
    Dist dist_;
};

/// Weights state(a) * P(p(a) = top).
SubDist assert_state(const Dist& state, const Predicate& pred);
Dist normalize(const SubDist& s);
Dist condition(const Dist& state, const Predicate& pred);
Dist marginal(const Dist& state, int side);
Rational validity(const Dist& state, const Predicate& pred);

/// The distribution of a closed definition.
Dist state_of(const Definition& def);

struct Inference {
    std::string state, pred;
    Dist prior;
    SubDist asserted;
    Rational validity;
    std::uint64_t witness = 0;  // least n with 1/n <= validity
    Dist posterior;
    int marginal_side = 0;
    std::optional<Dist> marginal;
};

/// Validity of a predicate definition in a state definition; 0 is allowed.
Rational validity(const Program& prog, const std::string& state, const std::string& pred);

/// Conditions a state definition on a predicate definition of the same program.
/// The posterior is also computed by evaluating norm(assert_p(state)) and the two must agree.
Inference infer(const Program& prog, const std::string& state, const std::string& pred, int marginal_side = 0);

}  // namespace comet

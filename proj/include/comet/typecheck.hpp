#pragma once

#include "comet/semantics.hpp"
#include "comet/syntax.hpp"

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace comet {

enum class TypeErrorKind { UnboundVar, LinearityViolation, Mismatch, SideConditionFailed, EmptyEnum, UnknownEnum };

std::string to_string(TypeErrorKind k);

class TypeError : public std::runtime_error {
public:
    TypeError(TypeErrorKind kind, std::string rule, std::string detail, std::string context = {}, Span span = {},
              std::string which = {});

    TypeErrorKind kind() const { return kind_; }
    /// Name of the typing rule that failed, e.g. "Tpair".
    const std::string& rule() const { return rule_; }
    /// For SideConditionFailed: Equal, Disjoint or NonZeroDomain.
    const std::string& which() const { return which_; }
    const std::string& detail() const { return detail_; }
    const std::string& context() const { return context_; }
    const Span& span() const { return span_; }

private:
    TypeErrorKind kind_;
    std::string rule_, detail_, context_, which_;
    Span span_;
};

/// Conditioning on an event of probability zero.
struct ZeroDomain : std::domain_error {
    using std::domain_error::domain_error;
};

enum class JudgementKind { TypeOf, Equal, Leq, Disjoint, NonZeroDomain };

/// A side condition discharged while checking a term.
struct Judgement {
    JudgementKind kind = JudgementKind::TypeOf;
    Context ctx;
    Term s, t;
    Type type;
    std::uint64_t witness = 0;  // NonZeroDomain only

    std::string to_string() const;
};

struct CheckResult {
    Type type;
    std::set<std::string> used;
    std::vector<Judgement> judgements;
    std::vector<std::string> warnings;
};

/// Full check: structure, affine usage, and every semantic side condition.
CheckResult check_term(const Context& ctx, const Term& t);
Type infer_type(const Context& ctx, const Term& t);

/// Rejects unresolved or empty enums.
void validate_type(const Type& ty, Span span = {});

// Semantic judgements, decided by exhaustive evaluation over the context.

bool check_equal(const Context& ctx, const Term& s, const Term& t, const Type& ty);
/// Pointwise P(s = inl a) <= P(t = inl a); `ty` must be A + 1.
bool check_leq(const Context& ctx, const Term& s, const Term& t, const Type& ty);
bool check_disjoint(const Context& ctx, const Term& s, const Term& t);
/// Least n >= 2 with 1/n <= dom t in every environment; throws ZeroDomain.
std::uint64_t check_nonzero_domain(const Context& ctx, const Term& t);

}  // namespace comet

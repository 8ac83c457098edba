#pragma once

#include "comet/scalar.hpp"
#include "comet/syntax.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace comet {

struct UnknownEnum : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised when evaluation meets a term that violates its typing precondition.
struct EvalError : std::logic_error {
    using std::logic_error::logic_error;
};

enum class ValueKind { Star, Enum, Inl, Inr, Pair };

/// An element of the set denoted by a type.
class Value {
public:
    Value();  // *

    static Value star() { return Value(); }
    static Value enumerator(EnumRef decl, std::size_t index);
    static Value inl(Value v);
    static Value inr(Value v);
    static Value pair(Value a, Value b);

    /// i-th injection into n·A (1-based), right-nested.
    static Value injection(std::size_t i, std::size_t n, Value v);
    static Value top() { return inl(star()); }
    static Value bot() { return inr(star()); }

    ValueKind kind() const;
    const Value& inner() const;  // Inl/Inr payload, Pair first
    const Value& second() const;
    std::size_t enum_index() const;
    const EnumRef& decl() const;

    /// For a value of n·A, the 1-based component index and the payload.
    std::pair<std::size_t, Value> split_copower(std::size_t n) const;

    std::string to_string() const;

    /// Canonical order: inl before inr, pairs lexicographic, enums in declaration order.
    friend std::strong_ordering operator<=>(const Value& a, const Value& b);
    friend bool operator==(const Value& a, const Value& b) { return (a <=> b) == 0; }

private:
    struct Node;
    explicit Value(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

/// Complete, duplicate-free, canonically ordered enumeration of a type's values.
std::vector<Value> enumerate_values(const Type& ty);

/// A finite-support (sub)distribution; only positive weights are stored.
class Dist {
public:
    Dist() = default;
    explicit Dist(Type carrier) : carrier_(std::move(carrier)) {}

    static Dist dirac(Type carrier, Value v);

    const Type& carrier() const { return carrier_; }
    const std::map<Value, Rational>& weights() const { return weights_; }

    /// Adds w to the weight of v (w may be zero).
    void add(const Value& v, const Rational& w);
    Rational weight(const Value& v) const;
    Rational mass() const;
    bool empty() const { return weights_.empty(); }

    friend bool operator==(const Dist& a, const Dist& b) { return a.weights_ == b.weights_; }
    friend bool operator!=(const Dist& a, const Dist& b) { return !(a == b); }

    std::string to_string() const;

private:
    Type carrier_;
    std::map<Value, Rational> weights_;
};

using Env = std::map<std::string, Value>;

/// All environments for a context, in canonical (lexicographic) order.
std::vector<Env> enumerate_envs(const Context& ctx);

/// P(t(env) = -). `t` must be well-typed in `ctx`; env must cover ctx.
Dist eval(const Context& ctx, const Term& t, const Env& env);

/// One distribution per environment of `ctx`, in `enumerate_envs` order.
std::vector<std::pair<Env, Dist>> eval_all(const Context& ctx, const Term& t);

std::string env_to_string(const Env& env);

}  // namespace comet

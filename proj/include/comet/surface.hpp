#pragma once

#include "comet/constructions.hpp"
#include "comet/syntax.hpp"
#include "comet/typecheck.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace comet {

class ParseError : public std::runtime_error {
public:
    ParseError(Span span, const std::string& msg)
        : std::runtime_error("parse error at " + span.to_string() + ": " + msg), span_(span) {}
    const Span& span() const { return span_; }

private:
    Span span_;
};

/// A derived form that cannot be expanded (missing type information, bad reference, non-test arms, ...).
class ElaborationError : public std::runtime_error {
public:
    ElaborationError(Span span, const std::string& msg)
        : std::runtime_error("elaboration error at " + span.to_string() + ": " + msg), span_(span) {}
    const Span& span() const { return span_; }

private:
    Span span_;
};

enum class SKind {
    Var,        // x, a definition name, or an enum constructor
    Call,       // f(a, b)
    Star,
    Top,
    Bot,
    Fail,
    Scalar,     // 0.096, 1/3, 0, 1
    Numeral,    // i@n
    Pair,
    Ovee,
    And,
    Ortho,      // p^
    Prefix,     // op e for op in inl inr magic lft rgt norm return dom ker inl? inr? fst snd
    Inlr,       // <s, t>
    Assert,     // assert[P](t)
    Instr,      // instr[P](t)
    Indexed,    // rhd[n: i..](t), nabla[n](t), index[n](t), in[n: i](t), test[n: i](t)
    Let,        // let x = s in t
    LetFun,     // let f(x, y) = s in t
    LetPair,    // let x (x) y = s in t
    Do,         // do x <- s; t
    Bind,       // t >>= P
    Case,       // case r of inl x -> s | inr y -> t
    EnumCase,   // case r of C1 -> s1 | ...
    If,
    Measure,    // measure [s as x with] p1 -> t1 | ...
    Condition,  // t | P
    Ascribe,    // (e : A)
};

struct SNode;
using SurfaceTerm = std::shared_ptr<const SNode>;

/// A predicate or function reference: a definition name, a lambda, or a closed scalar expression.
struct SPred {
    enum class Kind { Name, Lambda, Expr } kind = Kind::Expr;
    std::string name;                 // Name
    std::vector<std::string> binders; // Lambda: one name, or two for a tensor pattern
    SurfaceTerm body;                 // Lambda body or Expr
    Span span;
};

struct SNode {
    SKind kind = SKind::Star;
    Span span;
    std::string op;                  // Prefix/Indexed operator
    std::string name, name2;         // binders, variable or function name
    std::vector<std::string> names;  // LetFun params, EnumCase constructor labels
    std::vector<SurfaceTerm> kids;
    std::optional<Type> type;        // annotations
    Scalar scalar;
    std::size_t i = 0, n = 0;
    std::vector<std::size_t> indices;
    std::optional<SPred> pred;
};

struct SurfaceDef {
    std::string name;
    std::vector<std::pair<std::string, Type>> params;
    Type type;
    SurfaceTerm body;
    Span span;
};

struct Query {
    enum class Kind { Eval, Infer, Validity } kind = Kind::Eval;
    std::string state, pred;
    int marginal = 0;  // 0 for none, else 1 or 2
    Span span;

    std::string to_string() const;
};

struct SurfaceProgram {
    std::vector<EnumRef> enums;
    std::vector<SurfaceDef> defs;
    std::vector<Query> queries;
};

/// Parses a `.comet` program.
SurfaceProgram parse(std::string_view source);
/// Parses a single expression; enum types are resolved against `enums`.
SurfaceTerm parse_expression(std::string_view source, const std::vector<EnumRef>& enums = {});
Type parse_type(std::string_view source, const std::vector<EnumRef>& enums = {});

/// A checked definition: `ctx ⊢ body : type` where ctx lists the parameters.
struct Definition {
    std::string name;
    Context params;
    Type type;
    Term body;
    Span span;
    std::vector<Judgement> judgements;
    std::vector<std::string> warnings;

    bool closed() const { return params.empty(); }
    /// The parameters bundled into one type (A1 (x) (A2 (x) ...)), or 1.
    Type domain() const;
};

struct Program {
    std::vector<EnumRef> enums;
    std::vector<Definition> defs;
    std::vector<Query> queries;

    const Definition* find(const std::string& name) const;
};

/// Elaborates and type-checks every definition in order, and validates queries.
/// Throws ElaborationError or TypeError.
Program elaborate(const SurfaceProgram& sp);
Program load_program(std::string_view source);

/// Elaborates one surface term in a context; definitions of `prog` are in scope.
Term elaborate(const SurfaceTerm& t, const Context& ctx = {}, const Program* prog = nullptr,
               const std::optional<Type>& expected = std::nullopt);

/// Parse, elaborate and check an expression in one step.
Term compile_expression(std::string_view source, const Context& ctx = {}, const Program* prog = nullptr);

/// A predicate on the parameters of a definition, bundled into one variable.
struct Predicate {
    std::string var;
    Type domain;
    Term body;  // var : domain ⊢ body : 2
};
Predicate predicate_of(const Definition& def);

std::string print(const Term& t);
std::string print(const SurfaceTerm& t);

}  // namespace comet

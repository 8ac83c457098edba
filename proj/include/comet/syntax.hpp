#pragma once

#include "comet/scalar.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace comet {

/// A finite enumeration declared by `type Name = c1 | c2 | ...`.
struct EnumDecl {
    std::string name;
    std::vector<std::string> constructors;

    std::optional<std::size_t> index_of(const std::string& ctor) const;
};
using EnumRef = std::shared_ptr<const EnumDecl>;

// ---------------------------------------------------------------------------
// Types

enum class TypeKind { Const, Zero, One, Sum, Tensor };

class Type {
public:
    Type();  // the unit type

    static Type zero();
    static Type one();
    static Type constant(EnumRef decl);
    /// An enum constant known only by name; rejected by the checker.
    static Type unresolved(std::string name);
    static Type sum(Type left, Type right);
    static Type tensor(Type left, Type right);

    /// 1 + 1
    static Type two();
    /// n·1, right-nested: 1 + (1 + ... ). `n(0)` is 0 and `n(1)` is 1.
    static Type n(std::size_t n);
    /// n·A, right-nested. `copower(1, A)` is A.
    static Type copower(std::size_t n, const Type& a);
    /// A + 1
    static Type partial(const Type& a) { return sum(a, one()); }

    TypeKind kind() const;
    const Type& left() const;
    const Type& right() const;
    const EnumRef& decl() const;
    const std::string& const_name() const;

    bool is_sum() const { return kind() == TypeKind::Sum; }
    bool is_tensor() const { return kind() == TypeKind::Tensor; }
    /// True for A + 1.
    bool is_partial() const { return is_sum() && right().kind() == TypeKind::One; }
    bool is_two() const { return is_partial() && left().kind() == TypeKind::One; }

    /// If this type is n·1 (right-nested), returns n.
    std::optional<std::size_t> as_n() const;
    /// If this type splits as n copies of `a`, returns true.
    bool is_copower_of(std::size_t n, const Type& a) const;

    /// Number of values; nullopt when an enum is unresolved.
    std::optional<std::size_t> cardinality() const;

    std::string to_string() const;

    friend bool operator==(const Type& a, const Type& b);
    friend bool operator!=(const Type& a, const Type& b) { return !(a == b); }

private:
    struct Node;
    explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Terms

struct Span {
    int line = 0;
    int column = 0;
    bool known() const { return line > 0; }
    std::string to_string() const;
};

enum class TermKind {
    Var,
    Star,
    Pair,       // s (x) t
    LetPair,    // let x (x) y = s in t
    Magic,      // magic t, annotated with its target type
    Inl,        // annotated with the right summand
    Inr,        // annotated with the left summand
    Case,       // case r of inl x -> s | inr y -> t
    Inlr,       // <s, t>
    Lft,
    Instr,      // instr_{\x. test}(arg)
    OneOverN,
    Literal,    // exact scalar constant of type 2
    Norm,
    Ovee,
    EnumCon,
    EnumCase,
};

class Term {
public:
    Term();  // *

    static Term var(std::string name);
    static Term star();
    static Term pair(Term s, Term t);
    static Term let_pair(std::string x, std::string y, Term s, Term t);
    static Term magic(Term t, Type target);
    static Term inl(Term t, Type right);
    static Term inr(Term t, Type left);
    static Term case_of(Term r, std::string x, Term s, std::string y, Term t);
    static Term inlr(Term s, Term t);
    static Term lft(Term t);
    static Term instr(std::string x, Term test, Term arg);
    static Term one_over(std::uint64_t n);
    static Term literal(Scalar q);
    static Term norm(Term t);
    static Term ovee(Term s, Term t);
    static Term enum_con(EnumRef decl, std::size_t index);
    static Term enum_case(EnumRef decl, Term scrutinee, std::vector<Term> arms);

    TermKind kind() const;
    /// Variable name, first binder (LetPair x, Case x, Instr x).
    const std::string& name() const;
    /// Second binder (LetPair y, Case y).
    const std::string& name2() const;
    const std::vector<Term>& kids() const;
    const Term& kid(std::size_t i) const { return kids()[i]; }
    /// Annotation for Inl, Inr and Magic.
    const Type& annotation() const;
    std::uint64_t number() const;  // OneOverN n, EnumCon index
    const Scalar& scalar() const;
    const EnumRef& decl() const;
    const Span& span() const;

    /// Same term carrying a source position (ignored by comparisons).
    Term at(Span span) const;

    /// Structural identity including bound-variable names.
    bool identical(const Term& other) const;
    std::size_t size() const;

    /// Core notation, parseable by the surface parser.
    std::string to_string() const;

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    static Term make(Node node);
    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Contexts

class Context {
public:
    Context() = default;
    Context(std::initializer_list<std::pair<std::string, Type>> entries);

    /// Throws std::invalid_argument on a duplicate name.
    Context& add(std::string name, Type type);
    Context extended(std::string name, Type type) const;

    const Type* lookup(const std::string& name) const;
    bool contains(const std::string& name) const { return lookup(name) != nullptr; }
    /// Entries whose names are in `names`, in context order.
    Context restricted(const std::set<std::string>& names) const;

    const std::vector<std::pair<std::string, Type>>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    std::string to_string() const;

private:
    std::vector<std::pair<std::string, Type>> entries_;
};

// ---------------------------------------------------------------------------
// Operations

std::set<std::string> free_vars(const Term& t);
bool occurs_free(const std::string& x, const Term& t);

/// t[x := s], renaming binders of t that would capture free variables of s.
Term substitute(const Term& t, const std::string& x, const Term& s);
/// Simultaneous substitution.
Term substitute(const Term& t, const std::vector<std::pair<std::string, Term>>& subst);

/// Equality up to renaming of bound variables.
bool alpha_equal(const Term& s, const Term& t);

/// A name based on `base` that is not in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

/// Structural type of a term, without linearity or semantic side conditions.
/// Throws std::invalid_argument when the term is structurally ill-formed.
Type synthesize_type(const Context& ctx, const Term& t);

/// Binder names starting with '_' are vacuous: never referenced by user code.
bool is_vacuous_name(const std::string& name);

}  // namespace comet

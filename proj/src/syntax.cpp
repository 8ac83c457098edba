#include "comet/syntax.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace comet {

std::optional<std::size_t> EnumDecl::index_of(const std::string& ctor) const {
    auto it = std::find(constructors.begin(), constructors.end(), ctor);
    if (it == constructors.end()) return std::nullopt;
    return static_cast<std::size_t>(it - constructors.begin());
}

// ---------------------------------------------------------------------------
// Types

struct Type::Node {
    TypeKind kind = TypeKind::One;
    std::optional<Type> left, right;
    EnumRef decl;
    std::string name;
};

Type::Type() : node_(nullptr) {
    static const auto unit = std::make_shared<const Node>(Node{});
    node_ = unit;
}

Type Type::zero() {
    static const auto z = std::make_shared<const Node>(Node{TypeKind::Zero, {}, {}, {}, {}});
    return Type(z);
}

Type Type::one() { return Type(); }

Type Type::constant(EnumRef decl) {
    std::string name = decl ? decl->name : std::string{};
    return Type(std::make_shared<const Node>(Node{TypeKind::Const, {}, {}, std::move(decl), std::move(name)}));
}

Type Type::unresolved(std::string name) {
    return Type(std::make_shared<const Node>(Node{TypeKind::Const, {}, {}, nullptr, std::move(name)}));
}

Type Type::sum(Type left, Type right) {
    return Type(std::make_shared<const Node>(Node{TypeKind::Sum, std::move(left), std::move(right), {}, {}}));
}

Type Type::tensor(Type left, Type right) {
    return Type(std::make_shared<const Node>(Node{TypeKind::Tensor, std::move(left), std::move(right), {}, {}}));
}

Type Type::two() { return sum(one(), one()); }

Type Type::n(std::size_t n) {
    if (n == 0) return zero();
    return copower(n, one());
}

Type Type::copower(std::size_t n, const Type& a) {
    if (n == 0) return zero();
    Type t = a;
    for (std::size_t i = 1; i < n; ++i) t = sum(a, t);
    return t;
}

TypeKind Type::kind() const { return node_->kind; }

const Type& Type::left() const {
    if (!node_->left) throw std::logic_error("type " + to_string() + " has no left component");
    return *node_->left;
}

const Type& Type::right() const {
    if (!node_->right) throw std::logic_error("type " + to_string() + " has no right component");
    return *node_->right;
}

const EnumRef& Type::decl() const { return node_->decl; }
const std::string& Type::const_name() const { return node_->name; }

std::optional<std::size_t> Type::as_n() const {
    std::size_t count = 0;
    const Type* t = this;
    while (t->kind() == TypeKind::Sum) {
        if (t->left().kind() != TypeKind::One) return std::nullopt;
        ++count;
        t = &t->right();
    }
    if (t->kind() == TypeKind::One) return count + 1;
    if (t->kind() == TypeKind::Zero && count == 0) return 0;
    return std::nullopt;
}

bool Type::is_copower_of(std::size_t n, const Type& a) const {
    if (n == 0) return kind() == TypeKind::Zero;
    const Type* t = this;
    for (std::size_t i = 1; i < n; ++i) {
        if (!t->is_sum() || t->left() != a) return false;
        t = &t->right();
    }
    return *t == a;
}

std::optional<std::size_t> Type::cardinality() const {
    switch (kind()) {
    case TypeKind::Zero: return 0;
    case TypeKind::One: return 1;
    case TypeKind::Const:
        if (!decl()) return std::nullopt;
        return decl()->constructors.size();
    case TypeKind::Sum:
    case TypeKind::Tensor: {
        auto l = left().cardinality(), r = right().cardinality();
        if (!l || !r) return std::nullopt;
        return kind() == TypeKind::Sum ? *l + *r : *l * *r;
    }
    }
    return std::nullopt;
}

namespace {

std::string type_string(const Type& t, bool top) {
    if (auto n = t.as_n(); n && *n >= 2) return std::to_string(*n);
    switch (t.kind()) {
    case TypeKind::Zero: return "0";
    case TypeKind::One: return "1";
    case TypeKind::Const: return t.const_name();
    case TypeKind::Sum:
    case TypeKind::Tensor: {
        std::string s = type_string(t.left(), false) + (t.is_sum() ? " + " : " (x) ") + type_string(t.right(), false);
        return top ? s : "(" + s + ")";
    }
    }
    return "?";
}

}  // namespace

std::string Type::to_string() const { return type_string(*this, true); }

bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (a.kind() != b.kind()) return false;
    switch (a.kind()) {
    case TypeKind::Zero:
    case TypeKind::One: return true;
    case TypeKind::Const: return a.const_name() == b.const_name();
    case TypeKind::Sum:
    case TypeKind::Tensor: return a.left() == b.left() && a.right() == b.right();
    }
    return false;
}

// ---------------------------------------------------------------------------
// Terms

std::string Span::to_string() const {
    if (!known()) return "?";
    return std::to_string(line) + ":" + std::to_string(column);
}

struct Term::Node {
    TermKind kind = TermKind::Star;
    std::string name, name2;
    std::vector<Term> kids;
    Type annotation;
    std::uint64_t number = 0;
    Scalar scalar;
    EnumRef decl;
    Span span;
};

Term::Term() {
    static const auto star_node = std::make_shared<const Node>(Node{});
    node_ = star_node;
}

Term Term::make(Node node) { return Term(std::make_shared<const Node>(std::move(node))); }

Term Term::var(std::string name) {
    Node n;
    n.kind = TermKind::Var;
    n.name = std::move(name);
    return make(std::move(n));
}

Term Term::star() { return Term(); }

Term Term::pair(Term s, Term t) {
    Node n;
    n.kind = TermKind::Pair;
    n.kids = {std::move(s), std::move(t)};
    return make(std::move(n));
}

Term Term::let_pair(std::string x, std::string y, Term s, Term t) {
    Node n;
    n.kind = TermKind::LetPair;
    n.name = std::move(x);
    n.name2 = std::move(y);
    n.kids = {std::move(s), std::move(t)};
    return make(std::move(n));
}

Term Term::magic(Term t, Type target) {
    Node n;
    n.kind = TermKind::Magic;
    n.kids = {std::move(t)};
    n.annotation = std::move(target);
    return make(std::move(n));
}

Term Term::inl(Term t, Type right) {
    Node n;
    n.kind = TermKind::Inl;
    n.kids = {std::move(t)};
    n.annotation = std::move(right);
    return make(std::move(n));
}

Term Term::inr(Term t, Type left) {
    Node n;
    n.kind = TermKind::Inr;
    n.kids = {std::move(t)};
    n.annotation = std::move(left);
    return make(std::move(n));
}

Term Term::case_of(Term r, std::string x, Term s, std::string y, Term t) {
    Node n;
    n.kind = TermKind::Case;
    n.name = std::move(x);
    n.name2 = std::move(y);
    n.kids = {std::move(r), std::move(s), std::move(t)};
    return make(std::move(n));
}

Term Term::inlr(Term s, Term t) {
    Node n;
    n.kind = TermKind::Inlr;
    n.kids = {std::move(s), std::move(t)};
    return make(std::move(n));
}

Term Term::lft(Term t) {
    Node n;
    n.kind = TermKind::Lft;
    n.kids = {std::move(t)};
    return make(std::move(n));
}

Term Term::instr(std::string x, Term test, Term arg) {
    Node n;
    n.kind = TermKind::Instr;
    n.name = std::move(x);
    n.kids = {std::move(test), std::move(arg)};
    return make(std::move(n));
}

Term Term::one_over(std::uint64_t value) {
    if (value < 2) throw std::invalid_argument("1/n requires n >= 2");
    Node n;
    n.kind = TermKind::OneOverN;
    n.number = value;
    return make(std::move(n));
}

Term Term::literal(Scalar q) {
    Node n;
    n.kind = TermKind::Literal;
    n.scalar = std::move(q);
    return make(std::move(n));
}

Term Term::norm(Term t) {
    Node n;
    n.kind = TermKind::Norm;
    n.kids = {std::move(t)};
    return make(std::move(n));
}

Term Term::ovee(Term s, Term t) {
    Node n;
    n.kind = TermKind::Ovee;
    n.kids = {std::move(s), std::move(t)};
    return make(std::move(n));
}

Term Term::enum_con(EnumRef decl, std::size_t index) {
    Node n;
    n.kind = TermKind::EnumCon;
    n.decl = std::move(decl);
    n.number = index;
    return make(std::move(n));
}

Term Term::enum_case(EnumRef decl, Term scrutinee, std::vector<Term> arms) {
    Node n;
    n.kind = TermKind::EnumCase;
    n.decl = std::move(decl);
    n.kids.reserve(arms.size() + 1);
    n.kids.push_back(std::move(scrutinee));
    for (auto& a : arms) n.kids.push_back(std::move(a));
    return make(std::move(n));
}

TermKind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const std::string& Term::name2() const { return node_->name2; }
const std::vector<Term>& Term::kids() const { return node_->kids; }
const Type& Term::annotation() const { return node_->annotation; }
std::uint64_t Term::number() const { return node_->number; }
const Scalar& Term::scalar() const { return node_->scalar; }
const EnumRef& Term::decl() const { return node_->decl; }
const Span& Term::span() const { return node_->span; }

Term Term::at(Span span) const {
    Node copy = *node_;
    copy.span = span;
    return make(std::move(copy));
}

bool Term::identical(const Term& other) const {
    if (node_ == other.node_) return true;
    const Node& a = *node_;
    const Node& b = *other.node_;
    if (a.kind != b.kind || a.name != b.name || a.name2 != b.name2 || a.number != b.number) return false;
    if (a.kids.size() != b.kids.size()) return false;
    switch (a.kind) {
    case TermKind::Magic:
    case TermKind::Inl:
    case TermKind::Inr:
        if (a.annotation != b.annotation) return false;
        break;
    case TermKind::Literal:
        if (a.scalar != b.scalar) return false;
        break;
    case TermKind::EnumCon:
    case TermKind::EnumCase:
        if (a.decl->name != b.decl->name) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a.kids.size(); ++i)
        if (!a.kids[i].identical(b.kids[i])) return false;
    return true;
}

std::size_t Term::size() const {
    std::size_t n = 1;
    for (const auto& k : kids()) n += k.size();
    return n;
}

namespace {

std::string binder(const std::string& name, const Term& body) {
    if (is_vacuous_name(name) && !occurs_free(name, body)) return "_";
    return name;
}

std::string literal_string(const Scalar& q) {
    if (q.is_zero()) return "0";
    if (q.is_one()) return "1";
    return q.to_string();
}

}  // namespace

std::string Term::to_string() const {
    const auto& k = kids();
    switch (kind()) {
    case TermKind::Var: return name();
    case TermKind::Star: return "*";
    case TermKind::Pair: return "(" + k[0].to_string() + " (x) " + k[1].to_string() + ")";
    case TermKind::LetPair:
        return "(let " + binder(name(), k[1]) + " (x) " + binder(name2(), k[1]) + " = " + k[0].to_string() + " in " +
               k[1].to_string() + ")";
    case TermKind::Magic: return "(magic[" + annotation().to_string() + "] " + k[0].to_string() + ")";
    case TermKind::Inl:
        if (k[0].kind() == TermKind::Star && annotation().kind() == TypeKind::One) return "top";
        return "(inl[" + annotation().to_string() + "] " + k[0].to_string() + ")";
    case TermKind::Inr:
        if (k[0].kind() == TermKind::Star && annotation().kind() == TypeKind::One) return "bot";
        return "(inr[" + annotation().to_string() + "] " + k[0].to_string() + ")";
    case TermKind::Case:
        return "(case " + k[0].to_string() + " of inl " + binder(name(), k[1]) + " -> " + k[1].to_string() +
               " | inr " + binder(name2(), k[2]) + " -> " + k[2].to_string() + ")";
    case TermKind::Inlr: return "<" + k[0].to_string() + ", " + k[1].to_string() + ">";
    case TermKind::Lft: return "(lft " + k[0].to_string() + ")";
    case TermKind::Instr:
        return "instr[\\" + binder(name(), k[0]) + ". " + k[0].to_string() + "](" + k[1].to_string() + ")";
    case TermKind::OneOverN: return "1/" + std::to_string(number());
    case TermKind::Literal: return literal_string(scalar());
    case TermKind::Norm: return "(norm " + k[0].to_string() + ")";
    case TermKind::Ovee: return "(" + k[0].to_string() + " (+) " + k[1].to_string() + ")";
    case TermKind::EnumCon: return decl()->constructors.at(number());
    case TermKind::EnumCase: {
        std::string s = "(case " + k[0].to_string() + " of ";
        for (std::size_t i = 1; i < k.size(); ++i) {
            if (i > 1) s += " | ";
            s += decl()->constructors.at(i - 1) + " -> " + k[i].to_string();
        }
        return s + ")";
    }
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Contexts

Context::Context(std::initializer_list<std::pair<std::string, Type>> entries) {
    for (const auto& [n, t] : entries) add(n, t);
}

Context& Context::add(std::string name, Type type) {
    if (contains(name)) throw std::invalid_argument("duplicate variable '" + name + "' in context");
    entries_.emplace_back(std::move(name), std::move(type));
    return *this;
}

Context Context::extended(std::string name, Type type) const {
    Context c = *this;
    c.add(std::move(name), std::move(type));
    return c;
}

const Type* Context::lookup(const std::string& name) const {
    for (const auto& [n, t] : entries_)
        if (n == name) return &t;
    return nullptr;
}

Context Context::restricted(const std::set<std::string>& names) const {
    Context c;
    for (const auto& [n, t] : entries_)
        if (names.count(n)) c.entries_.emplace_back(n, t);
    return c;
}

std::string Context::to_string() const {
    std::string s;
    for (const auto& [n, t] : entries_) {
        if (!s.empty()) s += ", ";
        s += n + " : " + t.to_string();
    }
    return s.empty() ? "." : s;
}

// ---------------------------------------------------------------------------
// Free variables, substitution, alpha-equivalence

namespace {

void collect_free(const Term& t, std::vector<std::string>& bound, std::set<std::string>& out) {
    auto under = [&](const Term& body, std::initializer_list<const std::string*> names) {
        for (auto* n : names) bound.push_back(*n);
        collect_free(body, bound, out);
        bound.resize(bound.size() - names.size());
    };
    const auto& k = t.kids();
    switch (t.kind()) {
    case TermKind::Var:
        if (std::find(bound.begin(), bound.end(), t.name()) == bound.end()) out.insert(t.name());
        return;
    case TermKind::LetPair:
        collect_free(k[0], bound, out);
        under(k[1], {&t.name(), &t.name2()});
        return;
    case TermKind::Case:
        collect_free(k[0], bound, out);
        under(k[1], {&t.name()});
        under(k[2], {&t.name2()});
        return;
    case TermKind::Instr:
        under(k[0], {&t.name()});
        collect_free(k[1], bound, out);
        return;
    default:
        for (const auto& kid : k) collect_free(kid, bound, out);
    }
}

using Subst = std::vector<std::pair<std::string, Term>>;

Term subst_rec(const Term& t, const Subst& sub);

// Handles one binder position: drops shadowed entries, renames on capture.
struct BinderResult {
    std::string name;
    Subst sub;
};

BinderResult enter_binder(const std::string& x, const Term& body, const Subst& sub,
                          const std::set<std::string>& extra_avoid) {
    Subst inner;
    for (const auto& [v, s] : sub)
        if (v != x && occurs_free(v, body)) inner.emplace_back(v, s);
    std::set<std::string> replacement_fv;
    for (const auto& [v, s] : inner) {
        auto fv = free_vars(s);
        replacement_fv.insert(fv.begin(), fv.end());
    }
    if (!replacement_fv.count(x)) return {x, std::move(inner)};
    std::set<std::string> avoid = replacement_fv;
    auto body_fv = free_vars(body);
    avoid.insert(body_fv.begin(), body_fv.end());
    avoid.insert(extra_avoid.begin(), extra_avoid.end());
    for (const auto& [v, s] : inner) avoid.insert(v);
    std::string fresh = fresh_name(x, avoid);
    inner.emplace_back(x, Term::var(fresh));
    return {fresh, std::move(inner)};
}

Term rebuild(const Term& t, std::vector<Term> kids, const std::string& n1, const std::string& n2) {
    Term out;
    switch (t.kind()) {
    case TermKind::Pair: out = Term::pair(kids[0], kids[1]); break;
    case TermKind::LetPair: out = Term::let_pair(n1, n2, kids[0], kids[1]); break;
    case TermKind::Magic: out = Term::magic(kids[0], t.annotation()); break;
    case TermKind::Inl: out = Term::inl(kids[0], t.annotation()); break;
    case TermKind::Inr: out = Term::inr(kids[0], t.annotation()); break;
    case TermKind::Case: out = Term::case_of(kids[0], n1, kids[1], n2, kids[2]); break;
    case TermKind::Inlr: out = Term::inlr(kids[0], kids[1]); break;
    case TermKind::Lft: out = Term::lft(kids[0]); break;
    case TermKind::Instr: out = Term::instr(n1, kids[0], kids[1]); break;
    case TermKind::Norm: out = Term::norm(kids[0]); break;
    case TermKind::Ovee: out = Term::ovee(kids[0], kids[1]); break;
    case TermKind::EnumCase: {
        std::vector<Term> arms(kids.begin() + 1, kids.end());
        out = Term::enum_case(t.decl(), kids[0], std::move(arms));
        break;
    }
    default: return t;
    }
    return out.at(t.span());
}

Term subst_rec(const Term& t, const Subst& sub) {
    if (sub.empty()) return t;
    const auto& k = t.kids();
    switch (t.kind()) {
    case TermKind::Var:
        for (const auto& [v, s] : sub)
            if (v == t.name()) return s;
        return t;
    case TermKind::LetPair: {
        Term head = subst_rec(k[0], sub);
        auto bx = enter_binder(t.name(), k[1], sub, {t.name2()});
        auto by = enter_binder(t.name2(), k[1], bx.sub, {bx.name});
        return rebuild(t, {head, subst_rec(k[1], by.sub)}, bx.name, by.name);
    }
    case TermKind::Case: {
        Term head = subst_rec(k[0], sub);
        auto bx = enter_binder(t.name(), k[1], sub, {});
        auto by = enter_binder(t.name2(), k[2], sub, {});
        return rebuild(t, {head, subst_rec(k[1], bx.sub), subst_rec(k[2], by.sub)}, bx.name, by.name);
    }
    case TermKind::Instr: {
        auto bx = enter_binder(t.name(), k[0], sub, {});
        return rebuild(t, {subst_rec(k[0], bx.sub), subst_rec(k[1], sub)}, bx.name, {});
    }
    default: {
        if (k.empty()) return t;
        std::vector<Term> kids;
        kids.reserve(k.size());
        for (const auto& kid : k) kids.push_back(subst_rec(kid, sub));
        return rebuild(t, std::move(kids), {}, {});
    }
    }
}

using BoundPairs = std::vector<std::pair<std::string, std::string>>;

bool alpha_rec(const Term& a, const Term& b, BoundPairs& env) {
    if (a.kind() != b.kind()) return false;
    const auto& ka = a.kids();
    const auto& kb = b.kids();
    if (ka.size() != kb.size()) return false;
    auto under = [&](const Term& x, const Term& y, std::initializer_list<std::pair<std::string, std::string>> names) {
        for (const auto& p : names) env.push_back(p);
        bool ok = alpha_rec(x, y, env);
        env.resize(env.size() - names.size());
        return ok;
    };
    switch (a.kind()) {
    case TermKind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it) {
            bool left = it->first == a.name(), right = it->second == b.name();
            if (left || right) return left && right;
        }
        return a.name() == b.name();
    case TermKind::LetPair:
        return alpha_rec(ka[0], kb[0], env) &&
               under(ka[1], kb[1], {{a.name(), b.name()}, {a.name2(), b.name2()}});
    case TermKind::Case:
        return alpha_rec(ka[0], kb[0], env) && under(ka[1], kb[1], {{a.name(), b.name()}}) &&
               under(ka[2], kb[2], {{a.name2(), b.name2()}});
    case TermKind::Instr:
        return under(ka[0], kb[0], {{a.name(), b.name()}}) && alpha_rec(ka[1], kb[1], env);
    case TermKind::Magic:
    case TermKind::Inl:
    case TermKind::Inr:
        if (a.annotation() != b.annotation()) return false;
        break;
    case TermKind::OneOverN: return a.number() == b.number();
    case TermKind::Literal: return a.scalar() == b.scalar();
    case TermKind::EnumCon: return a.decl()->name == b.decl()->name && a.number() == b.number();
    case TermKind::EnumCase:
        if (a.decl()->name != b.decl()->name) return false;
        break;
    default: break;
    }
    for (std::size_t i = 0; i < ka.size(); ++i)
        if (!alpha_rec(ka[i], kb[i], env)) return false;
    return true;
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::set<std::string> out;
    std::vector<std::string> bound;
    collect_free(t, bound, out);
    return out;
}

bool occurs_free(const std::string& x, const Term& t) { return free_vars(t).count(x) > 0; }

Term substitute(const Term& t, const std::string& x, const Term& s) { return subst_rec(t, {{x, s}}); }

Term substitute(const Term& t, const std::vector<std::pair<std::string, Term>>& subst) {
    return subst_rec(t, subst);
}

bool alpha_equal(const Term& s, const Term& t) {
    BoundPairs env;
    return alpha_rec(s, t, env);
}

namespace {

using TypeScope = std::vector<std::pair<std::string, Type>>;

[[noreturn]] void ill_formed(const Term& t, const std::string& why) {
    throw std::invalid_argument("ill-formed term " + t.to_string() + ": " + why);
}

Type synth(TypeScope& scope, const Term& t) {
    const auto& k = t.kids();
    auto with = [&](std::initializer_list<std::pair<std::string, Type>> binds, const Term& body) {
        for (const auto& b : binds) scope.push_back(b);
        Type r = synth(scope, body);
        scope.resize(scope.size() - binds.size());
        return r;
    };
    switch (t.kind()) {
    case TermKind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
            if (it->first == t.name()) return it->second;
        ill_formed(t, "unbound variable " + t.name());
    case TermKind::Star: return Type::one();
    case TermKind::Pair: return Type::tensor(synth(scope, k[0]), synth(scope, k[1]));
    case TermKind::LetPair: {
        Type p = synth(scope, k[0]);
        if (!p.is_tensor()) ill_formed(t, "let-pair of non-tensor " + p.to_string());
        return with({{t.name(), p.left()}, {t.name2(), p.right()}}, k[1]);
    }
    case TermKind::Magic: return t.annotation();
    case TermKind::Inl: return Type::sum(synth(scope, k[0]), t.annotation());
    case TermKind::Inr: return Type::sum(t.annotation(), synth(scope, k[0]));
    case TermKind::Case: {
        Type r = synth(scope, k[0]);
        if (!r.is_sum()) ill_formed(t, "case on non-sum " + r.to_string());
        return with({{t.name(), r.left()}}, k[1]);
    }
    case TermKind::Inlr: {
        Type a = synth(scope, k[0]), b = synth(scope, k[1]);
        if (!a.is_partial() || !b.is_partial()) ill_formed(t, "partial pairing needs two substates");
        return Type::sum(a.left(), b.left());
    }
    case TermKind::Lft: {
        Type a = synth(scope, k[0]);
        if (!a.is_sum()) ill_formed(t, "lft of non-sum " + a.to_string());
        return a.left();
    }
    case TermKind::Instr: {
        Type a = synth(scope, k[1]);
        TypeScope inner{{t.name(), a}};
        Type test = synth(inner, k[0]);
        auto n = test.as_n();
        if (!n || *n == 0) ill_formed(t, "instrument test of type " + test.to_string());
        return Type::copower(*n, a);
    }
    case TermKind::OneOverN:
    case TermKind::Literal: return Type::two();
    case TermKind::Norm: {
        Type a = synth(scope, k[0]);
        if (!a.is_partial()) ill_formed(t, "norm of non-substate " + a.to_string());
        return a.left();
    }
    case TermKind::Ovee: return synth(scope, k[0]);
    case TermKind::EnumCon: return Type::constant(t.decl());
    case TermKind::EnumCase:
        if (k.size() < 2) ill_formed(t, "case over an empty enum");
        return synth(scope, k[1]);
    }
    ill_formed(t, "unknown term");
}

}  // namespace

Type synthesize_type(const Context& ctx, const Term& t) {
    TypeScope scope(ctx.entries().begin(), ctx.entries().end());
    return synth(scope, t);
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    std::string stem = base.substr(0, base.find('\''));
    if (stem.empty()) stem = "v";
    if (!avoid.count(stem)) return stem;
    for (std::size_t i = 1;; ++i) {
        std::string candidate = stem + "'" + std::to_string(i);
        if (!avoid.count(candidate)) return candidate;
    }
}

bool is_vacuous_name(const std::string& name) { return !name.empty() && name[0] == '_'; }

}  // namespace comet

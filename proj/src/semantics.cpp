#include "comet/semantics.hpp"

#include <sstream>

namespace comet {

struct Value::Node {
    ValueKind kind = ValueKind::Star;
    Value a, b;
    std::size_t index = 0;
    EnumRef decl;

    Node() = default;
    Node(ValueKind k) : kind(k) {}
};

// A null node is the unit value.
Value::Value() = default;

Value Value::enumerator(EnumRef decl, std::size_t index) {
    Node n(ValueKind::Enum);
    n.decl = std::move(decl);
    n.index = index;
    return Value(std::make_shared<const Node>(std::move(n)));
}

Value Value::inl(Value v) {
    Node n(ValueKind::Inl);
    n.a = std::move(v);
    return Value(std::make_shared<const Node>(std::move(n)));
}

Value Value::inr(Value v) {
    Node n(ValueKind::Inr);
    n.a = std::move(v);
    return Value(std::make_shared<const Node>(std::move(n)));
}

Value Value::pair(Value a, Value b) {
    Node n(ValueKind::Pair);
    n.a = std::move(a);
    n.b = std::move(b);
    return Value(std::make_shared<const Node>(std::move(n)));
}

Value Value::injection(std::size_t i, std::size_t n, Value v) {
    if (i == 0 || i > n) throw std::out_of_range("injection index out of range");
    if (n == 1) return v;
    if (i == 1) return inl(std::move(v));
    return inr(injection(i - 1, n - 1, std::move(v)));
}

ValueKind Value::kind() const { return node_ ? node_->kind : ValueKind::Star; }
const Value& Value::inner() const { return node_->a; }
const Value& Value::second() const { return node_->b; }
std::size_t Value::enum_index() const { return node_->index; }
const EnumRef& Value::decl() const { return node_->decl; }

std::pair<std::size_t, Value> Value::split_copower(std::size_t n) const {
    if (n == 1) return {1, *this};
    if (kind() == ValueKind::Inl) return {1, inner()};
    if (kind() != ValueKind::Inr) throw std::invalid_argument("value " + to_string() + " is not in a copower");
    auto [i, v] = inner().split_copower(n - 1);
    return {i + 1, v};
}

std::string Value::to_string() const {
    auto wrapped = [](const Value& v) {
        if (v.kind() == ValueKind::Star || v.kind() == ValueKind::Enum) return v.to_string();
        return "(" + v.to_string() + ")";
    };
    switch (kind()) {
    case ValueKind::Star: return "*";
    case ValueKind::Enum:
        if (decl() && enum_index() < decl()->constructors.size()) return decl()->constructors[enum_index()];
        return "#" + std::to_string(enum_index());
    case ValueKind::Inl: return "inl " + wrapped(inner());
    case ValueKind::Inr: return "inr " + wrapped(inner());
    case ValueKind::Pair: {
        auto side = [&](const Value& v) {
            return v.kind() == ValueKind::Pair ? "(" + v.to_string() + ")" : v.to_string();
        };
        return side(inner()) + " (x) " + side(second());
    }
    }
    return "?";
}

std::strong_ordering operator<=>(const Value& a, const Value& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.kind() != b.kind()) return static_cast<int>(a.kind()) <=> static_cast<int>(b.kind());
    switch (a.kind()) {
    case ValueKind::Star: return std::strong_ordering::equal;
    case ValueKind::Enum: {
        if (auto c = a.enum_index() <=> b.enum_index(); c != 0) return c;
        std::string an = a.decl() ? a.decl()->name : "", bn = b.decl() ? b.decl()->name : "";
        return an.compare(bn) <=> 0;
    }
    case ValueKind::Inl:
    case ValueKind::Inr: return a.inner() <=> b.inner();
    case ValueKind::Pair:
        if (auto c = a.inner() <=> b.inner(); c != 0) return c;
        return a.second() <=> b.second();
    }
    return std::strong_ordering::equal;
}

std::vector<Value> enumerate_values(const Type& ty) {
    std::vector<Value> out;
    switch (ty.kind()) {
    case TypeKind::Zero: break;
    case TypeKind::One: out.push_back(Value::star()); break;
    case TypeKind::Const:
        if (!ty.decl()) throw UnknownEnum("unknown enum type " + ty.const_name());
        for (std::size_t i = 0; i < ty.decl()->constructors.size(); ++i) out.push_back(Value::enumerator(ty.decl(), i));
        break;
    case TypeKind::Sum:
        for (auto& v : enumerate_values(ty.left())) out.push_back(Value::inl(v));
        for (auto& v : enumerate_values(ty.right())) out.push_back(Value::inr(v));
        break;
    case TypeKind::Tensor: {
        auto ls = enumerate_values(ty.left());
        auto rs = enumerate_values(ty.right());
        for (auto& l : ls)
            for (auto& r : rs) out.push_back(Value::pair(l, r));
        break;
    }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dist

Dist Dist::dirac(Type carrier, Value v) {
    Dist d(std::move(carrier));
    d.add(v, Rational(1));
    return d;
}

void Dist::add(const Value& v, const Rational& w) {
    if (sgn(w) == 0) return;
    auto [it, inserted] = weights_.try_emplace(v, w);
    if (!inserted) {
        it->second += w;
        if (sgn(it->second) == 0) weights_.erase(it);
    }
}

Rational Dist::weight(const Value& v) const {
    auto it = weights_.find(v);
    return it == weights_.end() ? Rational(0) : it->second;
}

Rational Dist::mass() const {
    Rational m(0);
    for (const auto& [v, w] : weights_) m += w;
    return m;
}

std::string Dist::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, w] : weights_) {
        if (!first) os << '\n';
        first = false;
        os << v.to_string() << " : " << w.get_str() << " (" << to_decimal(w) << ")";
    }
    return os.str();
}

std::vector<Env> enumerate_envs(const Context& ctx) {
    std::vector<Env> envs{Env{}};
    for (const auto& [name, ty] : ctx.entries()) {
        auto values = enumerate_values(ty);
        std::vector<Env> next;
        next.reserve(envs.size() * values.size());
        for (const auto& e : envs)
            for (const auto& v : values) {
                Env ext = e;
                ext[name] = v;
                next.push_back(std::move(ext));
            }
        envs = std::move(next);
    }
    return envs;
}

std::string env_to_string(const Env& env) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : env) {
        if (!first) out += ", ";
        first = false;
        out += k + " = " + v.to_string();
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Scope {
    const std::string& name;
    const Value& value;
    const Scope* next;
};

class Evaluator {
public:
    explicit Evaluator(const Env& base) : base_(base) {}

    Dist run(const Term& t, const Scope* sc) {
        const auto& k = t.kids();
        switch (t.kind()) {
        case TermKind::Var: return point(lookup(t.name(), sc));
        case TermKind::Star: return point(Value::star());
        case TermKind::Pair: {
            Dist l = run(k[0], sc), r = run(k[1], sc), out;
            for (const auto& [a, wa] : l.weights())
                for (const auto& [b, wb] : r.weights()) out.add(Value::pair(a, b), wa * wb);
            return out;
        }
        case TermKind::LetPair: {
            Dist s = run(k[0], sc), out;
            for (const auto& [v, w] : s.weights()) {
                Scope sx{t.name(), v.inner(), sc};
                Scope sy{t.name2(), v.second(), &sx};
                accumulate(out, run(k[1], &sy), w);
            }
            return out;
        }
        case TermKind::Magic: {
            Dist s = run(k[0], sc);
            if (!s.empty()) throw EvalError("magic applied to an inhabited value");
            return s;
        }
        case TermKind::Inl:
        case TermKind::Inr: {
            Dist s = run(k[0], sc), out;
            bool left = t.kind() == TermKind::Inl;
            for (const auto& [v, w] : s.weights()) out.add(left ? Value::inl(v) : Value::inr(v), w);
            return out;
        }
        case TermKind::Case: {
            Dist r = run(k[0], sc), out;
            for (const auto& [v, w] : r.weights()) {
                bool left = v.kind() == ValueKind::Inl;
                Scope sb{left ? t.name() : t.name2(), v.inner(), sc};
                accumulate(out, run(k[left ? 1 : 2], &sb), w);
            }
            return out;
        }
        case TermKind::Inlr: {
            Dist s = run(k[0], sc), r = run(k[1], sc), out;
            for (const auto& [v, w] : s.weights())
                if (v.kind() == ValueKind::Inl) out.add(Value::inl(v.inner()), w);
            for (const auto& [v, w] : r.weights())
                if (v.kind() == ValueKind::Inl) out.add(Value::inr(v.inner()), w);
            if (out.mass() != 1) throw EvalError("partial pairing without dom s = ker t: " + t.to_string());
            return out;
        }
        case TermKind::Lft: {
            Dist s = run(k[0], sc), out;
            for (const auto& [v, w] : s.weights()) {
                if (v.kind() != ValueKind::Inl) throw EvalError("lft of a term with right mass: " + t.to_string());
                out.add(v.inner(), w);
            }
            return out;
        }
        case TermKind::Instr: {
            Dist arg = run(k[1], sc), out;
            Evaluator closed(empty_env());
            for (const auto& [a, w] : arg.weights()) {
                Scope sx{t.name(), a, nullptr};
                Dist test = closed.run(k[0], &sx);
                for (const auto& [i, wi] : test.weights()) out.add(tag(i, a), w * wi);
            }
            return out;
        }
        case TermKind::OneOverN: {
            Rational q(1);
            q /= mpz_class(std::to_string(t.number()));
            return bernoulli(q);
        }
        case TermKind::Literal: return bernoulli(t.scalar().value());
        case TermKind::Norm: {
            Dist s = run(k[0], sc), out;
            Rational dom(0);
            for (const auto& [v, w] : s.weights())
                if (v.kind() == ValueKind::Inl) dom += w;
            if (sgn(dom) == 0) throw EvalError("norm of a zero-domain substate: " + t.to_string());
            for (const auto& [v, w] : s.weights())
                if (v.kind() == ValueKind::Inl) out.add(v.inner(), w / dom);
            return out;
        }
        case TermKind::Ovee: {
            Dist l = run(k[0], sc), r = run(k[1], sc), out;
            Rational dom(0);
            for (const auto* d : {&l, &r})
                for (const auto& [v, w] : d->weights())
                    if (v.kind() == ValueKind::Inl) {
                        out.add(v, w);
                        dom += w;
                    }
            if (dom > 1) throw EvalError("partial sum of non-disjoint substates: " + t.to_string());
            out.add(Value::bot(), 1 - dom);
            return out;
        }
        case TermKind::EnumCon: return point(Value::enumerator(t.decl(), t.number()));
        case TermKind::EnumCase: {
            Dist r = run(k[0], sc), out;
            for (const auto& [v, w] : r.weights()) accumulate(out, run(k[1 + v.enum_index()], sc), w);
            return out;
        }
        }
        throw EvalError("unknown term kind");
    }

private:
    static const Env& empty_env() {
        static const Env e;
        return e;
    }

    static Dist point(const Value& v) {
        Dist d;
        d.add(v, Rational(1));
        return d;
    }

    static Dist bernoulli(const Rational& q) {
        Dist d;
        d.add(Value::top(), q);
        d.add(Value::bot(), 1 - q);
        return d;
    }

    static void accumulate(Dist& out, const Dist& d, const Rational& w) {
        for (const auto& [v, x] : d.weights()) out.add(v, w * x);
    }

    // Rebuilds the outcome value of **n** around `a`, giving the matching injection into n·A.
    static Value tag(const Value& outcome, const Value& a) {
        switch (outcome.kind()) {
        case ValueKind::Star: return a;
        case ValueKind::Inl: return Value::inl(a);
        case ValueKind::Inr: return Value::inr(tag(outcome.inner(), a));
        default: throw EvalError("instrument test returned a non-numeral " + outcome.to_string());
        }
    }

    const Value& lookup(const std::string& x, const Scope* sc) const {
        for (; sc; sc = sc->next)
            if (sc->name == x) return sc->value;
        auto it = base_.find(x);
        if (it == base_.end()) throw EvalError("unbound variable " + x);
        return it->second;
    }

    const Env& base_;
};

}  // namespace

Dist eval(const Context& ctx, const Term& t, const Env& env) {
    Type carrier;
    try {
        carrier = synthesize_type(ctx, t);
    } catch (const std::invalid_argument& e) {
        throw EvalError(e.what());
    }
    Dist raw = Evaluator(env).run(t, nullptr);
    Dist out(carrier);
    for (const auto& [v, w] : raw.weights()) out.add(v, w);
    return out;
}

std::vector<std::pair<Env, Dist>> eval_all(const Context& ctx, const Term& t) {
    Type carrier;
    try {
        carrier = synthesize_type(ctx, t);
    } catch (const std::invalid_argument& e) {
        throw EvalError(e.what());
    }
    std::vector<std::pair<Env, Dist>> out;
    for (auto& env : enumerate_envs(ctx)) {
        Dist raw = Evaluator(env).run(t, nullptr);
        Dist d(carrier);
        for (const auto& [v, w] : raw.weights()) d.add(v, w);
        out.emplace_back(std::move(env), std::move(d));
    }
    return out;
}

}  // namespace comet

#include "comet/inference.hpp"

#include "comet/constructions.hpp"
#include "comet/typecheck.hpp"

namespace comet {

SubDist assert_state(const Dist& state, const Predicate& pred) {
    Context c{{pred.var, pred.domain}};
    Dist out(state.carrier());
    for (const auto& [v, w] : state.weights()) {
        Env env{{pred.var, v}};
        out.add(v, w * eval(c, pred.body, env).weight(Value::top()));
    }
    return SubDist(std::move(out));
}

Dist normalize(const SubDist& s) {
    Rational m = s.mass();
    if (m == 0) throw ZeroMass("cannot normalise a substate of mass 0");
    Dist out(s.carrier());
    for (const auto& [v, w] : s.dist().weights()) out.add(v, w / m);
    return out;
}

Dist condition(const Dist& state, const Predicate& pred) { return normalize(assert_state(state, pred)); }

Rational validity(const Dist& state, const Predicate& pred) { return assert_state(state, pred).mass(); }

Dist marginal(const Dist& state, int side) {
    const Type& ty = state.carrier();
    if (!ty.is_tensor()) throw NotATensor("marginal of a state on " + ty.to_string() + ", which is not a tensor");
    if (side != 1 && side != 2) throw std::invalid_argument("marginal side must be 1 or 2");
    Dist out(side == 1 ? ty.left() : ty.right());
    for (const auto& [v, w] : state.weights()) out.add(side == 1 ? v.inner() : v.second(), w);
    return out;
}

Dist state_of(const Definition& def) {
    if (!def.closed()) throw NotClosed(def.name + " has parameters; only closed definitions denote states");
    return eval(Context{}, def.body, Env{});
}

namespace {

std::pair<const Definition*, Predicate> resolve(const Program& prog, const std::string& state, const std::string& pred) {
    const Definition* s = prog.find(state);
    const Definition* p = prog.find(pred);
    if (!s) throw ElaborationError({}, "unknown definition " + state);
    if (!p) throw ElaborationError({}, "unknown definition " + pred);
    if (!p->type.is_two())
        throw TypeError(TypeErrorKind::Mismatch, "", pred + " has type " + p->type.to_string() + ", not a predicate type 2",
                        p->params.to_string(), p->span);
    Predicate pr = predicate_of(*p);
    if (pr.domain != s->type)
        throw TypeError(TypeErrorKind::Mismatch, "", pred + " is a predicate on " + pr.domain.to_string() + " but " + state +
                                                         " is a state on " + s->type.to_string(),
                        {}, p->span);
    return {s, std::move(pr)};
}

}  // namespace

Rational validity(const Program& prog, const std::string& state, const std::string& pred) {
    auto [s, pr] = resolve(prog, state, pred);
    return validity(state_of(*s), pr);
}

Inference infer(const Program& prog, const std::string& state, const std::string& pred, int marginal_side) {
    auto [s, pr] = resolve(prog, state, pred);

    Inference r;
    r.state = state;
    r.pred = pred;
    r.prior = state_of(*s);
    r.asserted = assert_state(r.prior, pr);
    r.validity = r.asserted.mass();
    r.posterior = normalize(r.asserted);

    Term asserted = build::assert_(pr.var, pr.body, s->body, s->type);
    r.witness = check_nonzero_domain(Context{}, asserted);
    Dist syntactic = eval(Context{}, Term::norm(asserted), Env{});
    if (syntactic != r.posterior)
        throw std::logic_error("posterior of " + state + " given " + pred + " disagrees with norm(assert)");

    if (marginal_side) {
        r.marginal_side = marginal_side;
        r.marginal = marginal(r.posterior, marginal_side);
    }
    return r;
}

}  // namespace comet

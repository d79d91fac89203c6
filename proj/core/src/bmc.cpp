#include "ebs/bmc.hpp"

#include "ebs/error.hpp"

namespace ebs {

namespace {

const char* kDemo = R"(# Token walk: reach a state outside Q.
vocab Q/1, P/2;
@statevars x;
@init Q(x);
@trans P(x, x_next) & x != x_next & (forall z. P(x_next, z) -> Q(z) | z = x);
@prop !Q(x);
)";

std::vector<std::string> with_next(const std::vector<std::string>& vars) {
    std::vector<std::string> out = vars;
    for (const auto& v : vars) out.push_back(v + "_next");
    return out;
}

Formula required(const Problem& p, const std::string& key, const std::vector<std::string>& free) {
    auto text = p.directive(key);
    if (!text) throw PreconditionError("transition system lacks @" + key);
    return parse_formula(*text, p.vocabulary, free);
}

Formula at_step(const TransitionSystem& ts, const Formula& f, std::size_t i) {
    Substitution m;
    for (std::size_t j = 0; j < ts.state_vars.size(); ++j) m[ts.state_vars[j]] = Term::var(step_variable(i, j + 1));
    return substitute(f, m);
}

Formula trans_step(const TransitionSystem& ts, std::size_t i) {
    Substitution m;
    for (std::size_t j = 0; j < ts.state_vars.size(); ++j) {
        m[ts.state_vars[j]] = Term::var(step_variable(i, j + 1));
        m[ts.state_vars[j] + "_next"] = Term::var(step_variable(i + 1, j + 1));
    }
    return substitute(ts.trans, m);
}

Formula close(const TransitionSystem& ts, std::size_t k, std::vector<Formula> parts) {
    Formula body = Formula::conj(std::move(parts));
    for (std::size_t i = k + 1; i-- > 0;)
        for (std::size_t j = ts.state_vars.size(); j >= 1; --j) body = Formula::exists(step_variable(i, j), body);
    return body;
}

}  // namespace

std::string step_variable(std::size_t i, std::size_t j) { return "s" + std::to_string(i) + "_" + std::to_string(j); }

TransitionSystem transition_system_from(const Problem& p) {
    TransitionSystem ts;
    ts.vocabulary = p.vocabulary;
    auto sv = p.directive("statevars");
    if (!sv) throw PreconditionError("transition system lacks @statevars");
    ts.state_vars = parse_name_list(*sv);
    if (ts.state_vars.empty()) throw PreconditionError("@statevars is empty");
    ts.init = required(p, "init", ts.state_vars);
    ts.trans = required(p, "trans", with_next(ts.state_vars));
    ts.prop = required(p, "prop", ts.state_vars);
    return ts;
}

std::string demo_transition_system_text() { return kDemo; }

TransitionSystem demo_transition_system() { return transition_system_from(parse_problem(kDemo)); }

Formula unroll_bmc(const TransitionSystem& ts, int k) {
    if (k < 0) throw PreconditionError("unrolling depth must be nonnegative");
    auto n = static_cast<std::size_t>(k);
    std::vector<Formula> parts{at_step(ts, ts.init, 0)};
    for (std::size_t i = 0; i < n; ++i) parts.push_back(trans_step(ts, i));
    parts.push_back(at_step(ts, ts.prop, n));
    return close(ts, n, std::move(parts));
}

Formula unroll_ind(const TransitionSystem& ts, int k) {
    if (k < 1) throw PreconditionError("induction unrolling needs k >= 1");
    auto n = static_cast<std::size_t>(k);
    std::vector<Formula> parts;
    for (std::size_t i = 0; i < n; ++i) {
        parts.push_back(at_step(ts, ts.prop, i));
        parts.push_back(trans_step(ts, i));
    }
    parts.push_back(Formula::negate(at_step(ts, ts.prop, n)));
    return close(ts, n, std::move(parts));
}

BmcResult bmc_solve(const TransitionSystem& ts, int k, UnrollKind kind, const SearchOptions& options) {
    BmcResult r;
    r.k = k;
    r.kind = kind;
    r.sentence = kind == UnrollKind::Bmc ? unroll_bmc(ts, k) : unroll_ind(ts, k);
    r.pcnf = to_pcnf(r.sentence);
    Classification c = classify(r.pcnf, ts.vocabulary);
    std::vector<std::string> diagnostics;
    bool found = false;
    for (EdpVariant v : {EdpVariant::Base, EdpVariant::EqFreeEU, EdpVariant::EqEUEU,
                         EdpVariant::RelaxedDistinguishability}) {
        auto check = edp_check(c, {}, v);
        if (check.member) {
            r.bound = edp_bound(c, v);
            found = true;
            break;
        }
        for (const auto& d : check.diagnostics) diagnostics.push_back(variant_name(v) + ": " + d);
    }
    if (!found) {
        std::string msg = "unrolled sentence is not in any supported EDP variant";
        for (const auto& d : diagnostics) msg += "\n  " + d;
        throw PreconditionError(msg);
    }
    r.outcome = decide_sat_bounded(r.sentence, ts.vocabulary, r.bound.bound, options);
    return r;
}

}  // namespace ebs

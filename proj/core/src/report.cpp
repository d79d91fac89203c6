#include "ebs/report.hpp"

namespace ebs {

namespace {

template <class C>
Json names(const C& c) {
    Json a = Json::array();
    for (const auto& x : c) a.push_back(x);
    return a;
}

Json optional_count(const std::optional<std::uint64_t>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json structure_json(const FiniteStructure& m) { return Json::parse(structure_to_json(m)); }

Json classification_json(const Classification& c) {
    Json j;
    j["V"] = names(c.leftmost);
    j["EV"] = names(c.inner);
    j["AV"] = names(c.universal);
    j["EU"] = names(c.unary_inner);
    j["EUbar"] = names(c.non_unary_inner);
    j["free_variables"] = names(c.free_variables);
    Json preds = Json::object();
    for (const auto& [name, cls] : c.predicate_class) preds[name] = symbol_class_name(cls);
    j["predicates"] = preds;
    Json inst = Json::array();
    for (const auto& in : c.instances) {
        Json e;
        e["predicate"] = in.predicate;
        e["clause"] = in.clause;
        e["position"] = in.position;
        e["polarity"] = in.positive ? "+" : "-";
        e["args"] = names(in.args);
        Json roles = Json::array();
        for (auto r : in.roles) roles.push_back(arg_role_name(r));
        e["roles"] = roles;
        e["free_support"] = names(in.free_support);
        e["universal_support"] = names(in.universal_support);
        e["existential_support"] = names(in.existential_support);
        e["class"] = symbol_class_name(in.cls);
        inst.push_back(e);
    }
    j["instances"] = inst;
    j["U"] = names(c.unary);
    j["F"] = names(c.free_predicates);
    j["A"] = names(c.universal_predicates);
    j["k"] = c.k;
    j["m"] = c.m;
    j["r"] = c.r;
    j["q"] = c.q;
    return j;
}

Json bound_json(const BoundReport& b) {
    Json j;
    j["variant"] = variant_name(b.variant);
    j["B"] = b.bound;
    Json t = Json::object();
    for (const auto& [k, v] : b.terms) t[k] = v;
    j["terms"] = t;
    return j;
}

Json classify_report(const Classification& c, const std::optional<BoundReport>& bound) {
    Json j;
    j["formula"] = format_prenex(c.form);
    Json cls = classification_json(c);
    for (auto it = cls.begin(); it != cls.end(); ++it) j[it.key()] = it.value();
    if (bound) {
        j["B"] = bound->bound;
        j["terms"] = bound_json(*bound)["terms"];
        j["variant"] = variant_name(bound->variant);
    } else {
        j["B"] = nullptr;
        j["terms"] = Json::object();
        j["variant"] = nullptr;
    }
    return j;
}

Json check_report(const EdpCheckResult& r, const std::set<std::string>& sigma, EdpVariant variant,
                  const std::optional<BoundReport>& bound) {
    Json j;
    j["edp"] = r.member;
    j["variant"] = variant_name(variant);
    j["sigma"] = names(sigma);
    j["B"] = bound ? Json(bound->bound) : Json(nullptr);
    j["terms"] = bound ? bound_json(*bound)["terms"] : Json::object();
    j["diagnostics"] = names(r.diagnostics);
    return j;
}

Json translation_json(const TranslationResult& t) {
    Json j;
    j["mode"] = mode_name(t.mode);
    j["bsr"] = format_prenex(t.bsr);
    j["fresh"] = names(t.fresh);
    j["pool"] = names(t.pool);
    j["size"] = {{"clauses", t.size.clauses}, {"disjuncts", t.size.disjuncts}};
    return j;
}

Json sat_json(const SatOutcome& s) {
    Json j;
    j["verdict"] = verdict_name(s.verdict);
    j["model"] = s.model ? structure_json(*s.model) : Json(nullptr);
    j["effort"] = {{"sizes_tried", s.effort.sizes_tried},
                   {"groundings", s.effort.groundings},
                   {"conflicts", s.effort.conflicts},
                   {"ground_depth", s.effort.ground_depth},
                   {"herbrand_clauses", s.effort.herbrand_clauses}};
    j["note"] = s.note;
    return j;
}

Json spectrum_json(const SpectrumResult& s) {
    Json j;
    j["n_max"] = s.n_max;
    j["sizes"] = names(s.sizes());
    Json w = Json::object();
    for (int n : s.sizes())
        if (s.witnesses[static_cast<std::size_t>(n)])
            w[std::to_string(n)] = structure_json(*s.witnesses[static_cast<std::size_t>(n)]);
    j["witnesses"] = w;
    return j;
}

Json equiv_json(const EquivResult& e) {
    Json j;
    j["equivalent"] = e.equivalent;
    j["n_cap"] = e.n_cap;
    j["countermodel"] = e.countermodel ? structure_json(*e.countermodel) : Json(nullptr);
    j["first_holds"] = e.countermodel ? Json(e.first_holds) : Json(nullptr);
    j["caveat"] = "checked on structures of size <= " + std::to_string(e.n_cap) + " only";
    return j;
}

Json oracle_json(const EbsVerdict& v, bool replayed) {
    Json j;
    j["pass"] = v.pass;
    j["sigma"] = names(v.sigma);
    j["B"] = v.bound;
    j["n_max"] = v.n_max;
    j["models_checked"] = v.models_checked;
    j["model"] = v.model ? structure_json(*v.model) : Json(nullptr);
    j["m2"] = v.m2 ? names(*v.m2) : Json(nullptr);
    Json ev = Json::array();
    for (const auto& e : v.evidence) ev.push_back({{"core", names(e.core)}, {"m2", names(e.m2)}});
    j["evidence"] = ev;
    j["replayed"] = replayed;
    return j;
}

Json find_bound_json(const FindBoundResult& f) {
    Json j;
    j["B"] = optional_count(f.bound);
    j["bsr"] = f.bsr ? Json(format_prenex(f.bsr->bsr)) : Json(nullptr);
    j["n_cap"] = f.n_cap;
    j["caveat"] = f.caveat;
    return j;
}

Json search_space_json(const SearchSpaceNote& n) {
    Json j;
    j["B"] = n.bound;
    Json per = Json::array();
    for (const auto& c : n.per_size) per.push_back(optional_count(c));
    j["per_size"] = per;
    j["total"] = optional_count(n.total);
    j["log2_total"] = n.log2_total;
    return j;
}

Json bmc_json(const BmcResult& r) {
    Json j;
    j["k"] = r.k;
    j["kind"] = r.kind == UnrollKind::Bmc ? "bmc" : "induction";
    j["sentence"] = format_formula(r.sentence);
    j["bound"] = bound_json(r.bound);
    j["outcome"] = sat_json(r.outcome);
    return j;
}

}  // namespace ebs

// ebskit: command-line front end for the EDP/BSR toolkit.
//
// Exit codes: 0 success / SAT / pass, 1 UNSAT / fail, 2 UNKNOWN, 3 usage or input error,
// 4 cap exceeded.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ebs/analysis.hpp"
#include "ebs/bmc.hpp"
#include "ebs/edp.hpp"
#include "ebs/error.hpp"
#include "ebs/ground.hpp"
#include "ebs/parser.hpp"
#include "ebs/report.hpp"
#include "ebs/translate.hpp"

using namespace ebs;

namespace {

enum Exit { kOk = 0, kNo = 1, kUnknown = 2, kUsage = 3, kCap = 4 };

struct Settings {
    std::string format = "text";
    std::size_t node_cap = 2'000'000;
    std::size_t clause_cap = 100000;
};

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PreconditionError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Problem load(const std::string& path) { return parse_problem(read_input(path)); }

PrenexForm normalized(const Problem& p, const Settings& s) {
    NormalizeOptions o;
    o.clause_cap = s.clause_cap;
    PrenexForm pf = to_pcnf(p.sentence(), o);
    return pf;
}

const Formula& sentence_of(const Problem& p) {
    const Formula& f = p.sentence();
    if (!free_vars(f).empty()) throw PreconditionError("this command needs a sentence (no free variables)");
    return f;
}

std::set<std::string> sigma_of(const Problem& p, const std::optional<std::string>& flag) {
    std::string text;
    if (flag) text = *flag;
    else if (auto d = p.directive("sigma")) text = *d;
    std::set<std::string> out;
    if (text == "*") return p.vocabulary.predicate_names();
    for (const auto& n : parse_name_list(text)) {
        if (!p.vocabulary.has_predicate(n)) throw PreconditionError("sigma names undeclared predicate " + n);
        out.insert(n);
    }
    return out;
}

EdpVariant variant_of(const std::string& name) {
    auto v = variant_from_name(name);
    if (!v) throw CLI::ValidationError("--variant", "unknown variant " + name);
    return *v;
}

std::optional<BoundReport> try_bound(const Classification& c, EdpVariant v) {
    try {
        return edp_bound(c, v);
    } catch (const PreconditionError&) {
        return std::nullopt;
    }
}

std::uint64_t bound_or_default(const Problem& p, const PrenexForm& pf, const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (auto d = p.directive("bound")) return std::stoull(*d);
    return edp_bound(classify(pf, p.vocabulary), EdpVariant::Base).bound;
}

std::string join(const std::vector<std::string>& v, const char* sep = ", ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
    return out;
}

template <class C>
std::string join_ints(const C& v) {
    std::string out;
    bool first = true;
    for (auto x : v) {
        out += (first ? "" : " ") + std::to_string(x);
        first = false;
    }
    return out;
}

int emit(const Settings& s, const Json& j, const std::string& text) {
    if (s.format == "json") std::cout << dump(j);
    else std::cout << text;
    return kOk;
}

int sat_exit(SatOutcome::Verdict v) {
    switch (v) {
        case SatOutcome::Verdict::Sat: return kOk;
        case SatOutcome::Verdict::Unsat: return kNo;
        default: return kUnknown;
    }
}

std::string sat_text(const SatOutcome& o) {
    std::string t = verdict_name(o.verdict) + "\n";
    if (o.model) t += format_structure(*o.model) + "\n";
    if (!o.note.empty()) t += "note: " + o.note + "\n";
    return t;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classify, bound, translate and decide first-order sentences"};
    app.require_subcommand(1);
    Settings s;
    app.add_option("--format", s.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--node-cap", s.node_cap, "Ground formula node cap per universe size");
    app.add_option("--clause-cap", s.clause_cap, "CNF clause cap for normalization");

    std::string input;
    std::string input2;
    std::optional<std::string> sigma;
    std::string variant = "base";
    std::optional<std::uint64_t> bound;
    int nmax = 4;
    int ncap = 3;
    std::uint64_t bmax = 3;
    std::string mode = "equivalent";
    bool interleaved = false;
    std::vector<int> budget{4, 2, 100000};
    std::vector<int> sizes;
    std::optional<int> cofinite;
    int k = 1;
    bool induction = false;
    bool demo = false;
    std::optional<int> universe;
    std::vector<int> constants;
    std::string out_path;
    bool flat = false;

    auto* normalize = app.add_subcommand("normalize", "Print the prenex CNF");
    normalize->add_option("file", input, "Input .fol file or -")->required();

    auto* classify_cmd = app.add_subcommand("classify", "Instance and predicate classification");
    classify_cmd->add_option("file", input)->required();
    classify_cmd->add_option("--variant", variant);

    auto* check = app.add_subcommand("check-edp", "EDP membership for a sigma and variant");
    check->add_option("file", input)->required();
    check->add_option("--sigma", sigma, "Comma-separated predicates, * for all");
    check->add_option("--variant", variant);

    auto* bound_cmd = app.add_subcommand("bound", "Bound for a variant");
    bound_cmd->add_option("file", input)->required();
    bound_cmd->add_option("--variant", variant);

    auto* translate = app.add_subcommand("translate", "Translate into a BSR sentence");
    translate->add_option("file", input)->required();
    translate->add_option("--mode", mode)->check(CLI::IsMember({"equivalent", "equispectral"}));
    translate->add_option("--bound", bound);
    translate->add_flag("--flat", flat, "Use one shared universal block (unsound when a universal follows an inner existential)");

    auto* sat = app.add_subcommand("sat", "Decide satisfiability");
    sat->add_option("file", input)->required();
    sat->add_option("--bound", bound);
    sat->add_flag("--interleaved", interleaved, "Interleave model search with Herbrand refutation");
    sat->add_option("--budget", budget, "size,depth,steps")->delimiter(',')->expected(3);

    auto* spec = app.add_subcommand("spectrum", "Model sizes up to --nmax");
    spec->add_option("file", input)->required();
    spec->add_option("--nmax", nmax)->check(CLI::Range(1, 64));

    auto* equiv = app.add_subcommand("equiv", "Bounded equivalence of two sentences");
    equiv->add_option("first", input)->required();
    equiv->add_option("second", input2)->required();
    equiv->add_option("--ncap", ncap)->check(CLI::Range(1, 64));

    auto* oracle = app.add_subcommand("ebs-oracle", "Bounded EBS property check");
    oracle->add_option("file", input)->required();
    oracle->add_option("--sigma", sigma);
    oracle->add_option("--bound", bound)->required();
    oracle->add_option("--nmax", nmax)->check(CLI::Range(1, 16));

    auto* find = app.add_subcommand("find-bound", "Least B whose BSR translation agrees up to --ncap");
    find->add_option("file", input)->required();
    find->add_option("--bmax", bmax);
    find->add_option("--ncap", ncap)->check(CLI::Range(1, 64));

    auto* synth = app.add_subcommand("spectrum-to-bsr", "BSR sentence with a given spectrum");
    synth->add_option("file", input, "Optional .fol file supplying the vocabulary");
    synth->add_option("--sizes", sizes)->delimiter(',');
    synth->add_option("--cofinite-from", cofinite);

    auto* bmc = app.add_subcommand("bmc", "Bounded model checking of a transition system");
    bmc->add_option("file", input);
    bmc->add_flag("--demo", demo, "Use the shipped demo system");
    bmc->add_option("--k", k)->check(CLI::Range(0, 64));
    bmc->add_flag("--induction", induction, "Check the inductive step instead");

    auto* dimacs = app.add_subcommand("export-dimacs", "Ground and write DIMACS");
    dimacs->add_option("file", input)->required();
    dimacs->add_option("--size", universe, "Fixed universe size; BSR grounding when omitted");
    dimacs->add_option("--constants", constants, "Constant values for fixed-universe grounding")->delimiter(',');
    dimacs->add_option("--out", out_path, "Output path (stdout when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    SearchOptions search;
    search.node_cap = s.node_cap;

    try {
        if (*normalize) {
            Problem p = load(input);
            PrenexForm pf = normalized(p, s);
            Json j;
            j["formula"] = format_prenex(pf);
            Json prefix = Json::array();
            for (const auto& q : pf.prefix)
                prefix.push_back({{"quantifier", q.quantifier == Quantifier::Forall ? "forall" : "exists"},
                                  {"variable", q.name}});
            j["prefix"] = prefix;
            Json matrix = Json::array();
            for (const auto& cl : pf.matrix) {
                Json c = Json::array();
                for (const auto& l : cl) c.push_back(format_literal(l));
                matrix.push_back(c);
            }
            j["matrix"] = matrix;
            j["free_variables"] = pf.free_vars;
            return emit(s, j, format_prenex(pf) + "\n");
        }

        if (*classify_cmd) {
            Problem p = load(input);
            PrenexForm pf = normalized(p, s);
            Classification c = classify(pf, p.vocabulary);
            auto b = try_bound(c, variant_of(variant));
            std::ostringstream t;
            t << "formula: " << format_prenex(pf) << "\n";
            t << "V: {" << join(c.leftmost) << "}  EV: {" << join(c.inner) << "}  AV: {" << join(c.universal)
              << "}\n";
            t << "EU: {" << join(c.unary_inner) << "}  EUbar: {" << join(c.non_unary_inner) << "}\n";
            for (const auto& [name, cls] : c.predicate_class) t << name << ": " << symbol_class_name(cls) << "\n";
            if (b) t << "B (" << variant_name(b->variant) << "): " << b->bound << "\n";
            return emit(s, classify_report(c, b), t.str());
        }

        if (*check) {
            Problem p = load(input);
            PrenexForm pf = normalized(p, s);
            Classification c = classify(pf, p.vocabulary);
            EdpVariant v = variant_of(variant);
            auto sg = sigma_of(p, sigma);
            auto r = edp_check(c, sg, v);
            std::optional<BoundReport> b;
            if (r.member) b = try_bound(c, v);
            std::ostringstream t;
            t << (r.member ? "EDP" : "not EDP") << " (" << variant_name(v) << ", sigma {"
              << join(std::vector<std::string>(sg.begin(), sg.end())) << "})\n";
            if (b) t << "B: " << b->bound << "\n";
            for (const auto& d : r.diagnostics) t << "  " << d << "\n";
            emit(s, check_report(r, sg, v, b), t.str());
            return r.member ? kOk : kNo;
        }

        if (*bound_cmd) {
            Problem p = load(input);
            PrenexForm pf = normalized(p, s);
            Classification c = classify(pf, p.vocabulary);
            BoundReport b = edp_bound(c, variant_of(variant));
            Json j = bound_json(b);
            j["search_space"] = search_space_json(edp_nexptime_note(p.vocabulary, std::min<std::uint64_t>(b.bound, 64)));
            std::ostringstream t;
            t << "B = " << b.bound << " (" << variant_name(b.variant) << ":";
            for (const auto& [key, val] : b.terms) t << " " << key << "=" << val;
            t << ")\n";
            return emit(s, j, t.str());
        }

        if (*translate) {
            Problem p = load(input);
            PrenexForm pf = normalized(p, s);
            std::uint64_t b = bound_or_default(p, pf, bound);
            TranslateOptions o;
            o.clause_cap = s.clause_cap;
            o.flat_layout = flat;
            TranslationResult r = mode == "equivalent" ? to_bsr_equivalent(pf, b, o) : to_bsr_equispectral(pf, b, o);
            return emit(s, translation_json(r), format_prenex(r.bsr) + "\n");
        }

        if (*sat) {
            Problem p = load(input);
            const Formula& f = sentence_of(p);
            SatOutcome o;
            if (interleaved) {
                HerbrandBudget hb{budget[0], budget[1], static_cast<std::uint64_t>(budget[2])};
                o = interleaved_sat(f, p.vocabulary, hb, search);
            } else {
                PrenexForm pf = normalized(p, s);
                o = decide_sat_bounded(f, p.vocabulary, bound_or_default(p, pf, bound), search);
            }
            emit(s, sat_json(o), sat_text(o));
            return sat_exit(o.verdict);
        }

        if (*spec) {
            Problem p = load(input);
            SpectrumResult r = spectrum(sentence_of(p), p.vocabulary, nmax, search);
            return emit(s, spectrum_json(r), join_ints(r.sizes()) + "\n");
        }

        if (*equiv) {
            Problem a = load(input);
            Problem b = load(input2);
            if (!(a.vocabulary == b.vocabulary)) throw PreconditionError("equiv needs identical vocabularies");
            EquivResult r = bounded_equiv(sentence_of(a), sentence_of(b), a.vocabulary, ncap, search);
            std::string t = r.equivalent ? "equivalent up to size " + std::to_string(ncap) + "\n"
                                         : "not equivalent; countermodel (first sentence " +
                                               std::string(r.first_holds ? "holds" : "fails") + "):\n" +
                                               format_structure(*r.countermodel) + "\n";
            emit(s, equiv_json(r), t);
            return r.equivalent ? kOk : kNo;
        }

        if (*oracle) {
            Problem p = load(input);
            const Formula& f = sentence_of(p);
            OracleOptions o;
            o.search = search;
            EbsVerdict v = ebs_oracle(f, p.vocabulary, sigma_of(p, sigma), *bound, nmax, o);
            bool replayed = !v.pass && ebs_replay(v, f, p.vocabulary, search);
            std::ostringstream t;
            t << (v.pass ? "pass" : "fail") << " (" << v.models_checked << " models checked)\n";
            if (v.model) {
                t << "model:\n" << format_structure(*v.model) + "\n";
                if (v.m2) t << "M2: {" << join_ints(*v.m2) << "}\n";
                t << "replayed: " << (replayed ? "yes" : "no") << "\n";
            }
            emit(s, oracle_json(v, replayed), t.str());
            return v.pass ? kOk : kNo;
        }

        if (*find) {
            Problem p = load(input);
            sentence_of(p);
            PrenexForm pf = normalized(p, s);
            FindBoundResult r = find_bound_bounded(pf, p.vocabulary, bmax, ncap, search);
            std::string t = r.bound ? "B = " + std::to_string(*r.bound) + "\n" + format_prenex(r.bsr->bsr) + "\n"
                                    : "no B <= " + std::to_string(bmax) + "\n";
            t += "(" + r.caveat + ")\n";
            emit(s, find_bound_json(r), t);
            return r.bound ? kOk : kNo;
        }

        if (*synth) {
            Vocabulary vocab;
            if (!input.empty()) vocab = load(input).vocabulary;
            std::set<int> sz(sizes.begin(), sizes.end());
            Formula f = spectrum_to_bsr(sz, cofinite, vocab);
            Problem out;
            out.vocabulary = vocab;
            out.formula = f;
            Json j;
            j["formula"] = format_formula(f);
            j["sizes"] = sizes;
            j["cofinite_from"] = cofinite ? Json(*cofinite) : Json(nullptr);
            return emit(s, j, render(out));
        }

        if (*bmc) {
            TransitionSystem ts;
            if (demo) ts = demo_transition_system();
            else if (!input.empty()) ts = transition_system_from(load(input));
            else throw CLI::ValidationError("bmc", "give a file or --demo");
            BmcResult r = bmc_solve(ts, k, induction ? UnrollKind::Induction : UnrollKind::Bmc, search);
            std::ostringstream t;
            t << (induction ? "induction" : "bmc") << " k=" << k << ": " << verdict_name(r.outcome.verdict)
              << " (B=" << r.bound.bound << ", " << variant_name(r.bound.variant) << ")\n";
            if (r.outcome.model) t << format_structure(*r.outcome.model) + "\n";
            emit(s, bmc_json(r), t.str());
            return sat_exit(r.outcome.verdict);
        }

        if (*dimacs) {
            Problem p = load(input);
            const Formula& f = sentence_of(p);
            std::string text;
            if (universe) {
                GroundOptions go;
                go.node_cap = s.node_cap;
                if (!p.vocabulary.constants().empty()) {
                    if (constants.size() != p.vocabulary.constants().size())
                        throw PreconditionError("--constants needs one value per constant");
                    go.constant_values = constants;
                }
                Grounding g = ground_formula(f, p.vocabulary, *universe, go);
                text = export_dimacs(tseitin(g.formula, g.atoms.size() + 1), g.atoms);
            } else {
                BsrGrounding g = bsr_ground(normalized(p, s), p.vocabulary);
                text = export_dimacs(g.cnf, g.atoms);
            }
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(out_path, std::ios::binary);
                if (!out) throw PreconditionError("cannot write " + out_path);
                out << text;
            }
            return kOk;
        }
    } catch (const CapExceeded& e) {
        std::cerr << "ebskit: cap exceeded: " << e.what() << "\n";
        return kCap;
    } catch (const ParseError& e) {
        std::cerr << "ebskit: parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const CLI::Error& e) {
        std::cerr << "ebskit: " << e.what() << "\n";
        return kUsage;
    } catch (const PreconditionError& e) {
        std::cerr << "ebskit: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "ebskit: error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

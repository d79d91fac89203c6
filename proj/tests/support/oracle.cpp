#include "oracle.hpp"

#include <stdexcept>

namespace ebs::testing {

bool satisfies(const GroundCnf& cnf, const std::vector<bool>& a) {
    for (const auto& cl : cnf.clauses) {
        bool ok = false;
        for (int l : cl) {
            auto v = static_cast<std::size_t>(l > 0 ? l : -l);
            if (v < a.size() && a[v] == (l > 0)) {
                ok = true;
                break;
            }
        }
        if (!ok) return false;
    }
    return true;
}

bool truth_table_sat(const GroundCnf& cnf) {
    if (cnf.num_vars > 24) throw std::invalid_argument("truth table too large");
    std::vector<bool> a(static_cast<std::size_t>(cnf.num_vars) + 1, false);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << cnf.num_vars); ++bits) {
        for (int v = 1; v <= cnf.num_vars; ++v) a[static_cast<std::size_t>(v)] = (bits >> (v - 1)) & 1U;
        if (satisfies(cnf, a)) return true;
    }
    return false;
}

std::uint64_t brute_models(const Formula& f, const Vocabulary& vocab, int n,
                           const std::function<bool(const FiniteStructure&)>& visit) {
    EnumerationOptions opt;
    opt.cap = UINT64_MAX;
    StructureEnumerator it(vocab, n, opt);
    FiniteStructure m = it.make();
    std::uint64_t count = 0;
    while (it.next(m)) {
        if (!evaluate(m, f)) continue;
        ++count;
        if (!visit(m)) break;
    }
    return count;
}

bool brute_has_model(const Formula& f, const Vocabulary& vocab, int n) {
    return brute_models(f, vocab, n, [](const FiniteStructure&) { return false; }) > 0;
}

std::vector<int> brute_spectrum(const Formula& f, const Vocabulary& vocab, int n_max) {
    std::vector<int> out;
    for (int n = 1; n <= n_max; ++n)
        if (brute_has_model(f, vocab, n)) out.push_back(n);
    return out;
}

std::vector<std::vector<int>> supersets(const std::vector<int>& core, int n) {
    std::uint32_t core_mask = 0;
    for (int e : core) core_mask |= 1U << e;
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
        if ((mask & core_mask) != core_mask || mask == 0) continue;
        std::vector<int> s;
        for (int e = 0; e < n; ++e)
            if (mask & (1U << e)) s.push_back(e);
        out.push_back(std::move(s));
    }
    return out;
}

std::uint64_t solver_models(const Formula& f, const Vocabulary& vocab, int n,
                            const std::function<bool(const FiniteStructure&)>& visit) {
    // every constant valuation, not only canonical ones
    const std::size_t nc = vocab.constants().size();
    std::vector<int> vals(nc, 0);
    std::uint64_t count = 0;
    bool stop = false;
    while (!stop) {
        GroundOptions go;
        go.register_all_atoms = true;
        go.constant_values = vals;
        go.node_cap = 50'000'000;
        Grounding g = ground_formula(f, vocab, n, go);
        GroundCnf cnf = tseitin(g.formula, g.atoms.size() + 1);
        cnf.num_vars = std::max(cnf.num_vars, g.atoms.size());
        std::vector<int> proj;
        for (int id = 1; id <= g.atoms.size(); ++id) proj.push_back(id);
        all_models(cnf, proj, [&](const std::vector<bool>& p) {
            std::vector<bool> full(static_cast<std::size_t>(g.atoms.size()) + 1, false);
            for (std::size_t i = 0; i < proj.size(); ++i) full[static_cast<std::size_t>(proj[i])] = p[i];
            FiniteStructure m = structure_from_assignment(vocab, n, g.atoms, full, vals);
            if (!evaluate(m, f)) throw std::logic_error("solver model fails evaluation");
            ++count;
            if (!visit(m)) {
                stop = true;
                return false;
            }
            return true;
        });
        std::size_t i = nc;
        while (i > 0 && ++vals[i - 1] == n) vals[--i] = 0;
        if (i == 0) break;
    }
    return count;
}

}  // namespace ebs::testing

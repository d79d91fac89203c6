#include <algorithm>

#include "ebs/error.hpp"
#include "ebs/ground.hpp"

namespace ebs {

namespace {

// Literal encoding: 2*var for positive, 2*var+1 for negative.
inline int enc(int lit) { return lit > 0 ? 2 * lit : 2 * (-lit) + 1; }
inline int neg(int l) { return l ^ 1; }
inline int var_of(int l) { return l >> 1; }

class Solver {
public:
    explicit Solver(const GroundCnf& cnf) : nv_(cnf.num_vars) {
        for (const auto& cl : cnf.clauses)
            for (int l : cl) {
                if (l == 0) throw PreconditionError("zero literal in CNF");
                nv_ = std::max(nv_, std::abs(l));
            }
        value_.assign(static_cast<std::size_t>(nv_) + 1, -1);
        level_.assign(static_cast<std::size_t>(nv_) + 1, 0);
        reason_.assign(static_cast<std::size_t>(nv_) + 1, -1);
        seen_.assign(static_cast<std::size_t>(nv_) + 1, 0);
        watches_.assign(2 * (static_cast<std::size_t>(nv_) + 1), {});
        for (const auto& cl : cnf.clauses) add_input_clause(cl);
    }

    SolverStats stats;

    SolveResult solve(const SolverOptions& opt) {
        SolveResult r;
        order_.clear();
        for (int v = 1; v <= nv_; ++v) order_.push_back(v);
        SolveResult::Status st = opt.learning ? search_cdcl(opt) : search_chrono(opt, nullptr);
        r.status = st;
        if (st == SolveResult::Status::Sat) r.assignment = model();
        r.stats = stats;
        return r;
    }

    std::uint64_t enumerate(const std::vector<int>& projection, const ModelVisitor& visit) {
        std::vector<char> in_proj(static_cast<std::size_t>(nv_) + 1, 0);
        order_.clear();
        for (int v : projection) {
            if (v < 1) throw PreconditionError("projection variable must be positive");
            if (v > nv_) throw PreconditionError("projection variable beyond CNF variables");
            if (!in_proj[static_cast<std::size_t>(v)]) {
                in_proj[static_cast<std::size_t>(v)] = 1;
                order_.push_back(v);
            }
        }
        for (int v = 1; v <= nv_; ++v)
            if (!in_proj[static_cast<std::size_t>(v)]) order_.push_back(v);
        std::uint64_t count = 0;
        if (root_conflict_) return 0;
        EnumState es{&projection, &in_proj, &visit, &count};
        search_chrono(SolverOptions{}, &es);
        return count;
    }

private:
    struct EnumState {
        const std::vector<int>* projection;
        const std::vector<char>* in_proj;
        const ModelVisitor* visit;
        std::uint64_t* count;
    };

    int lit_value(int l) const {
        int v = value_[static_cast<std::size_t>(var_of(l))];
        if (v < 0) return -1;
        return (l & 1) ? 1 - v : v;
    }

    void add_input_clause(const std::vector<int>& cl) {
        std::vector<int> c;
        for (int l : cl) c.push_back(enc(l));
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
        for (std::size_t i = 0; i + 1 < c.size(); ++i)
            if (c[i + 1] == neg(c[i]) && var_of(c[i]) == var_of(c[i + 1])) return;  // tautology
        if (c.empty()) {
            root_conflict_ = true;
            return;
        }
        if (c.size() == 1) {
            units_.push_back(c[0]);
            return;
        }
        attach(std::move(c));
    }

    int attach(std::vector<int> c) {
        int ci = static_cast<int>(clauses_.size());
        watches_[static_cast<std::size_t>(c[0])].push_back(ci);
        watches_[static_cast<std::size_t>(c[1])].push_back(ci);
        clauses_.push_back(std::move(c));
        return ci;
    }

    void assign(int l, int reason) {
        int v = var_of(l);
        value_[static_cast<std::size_t>(v)] = (l & 1) ? 0 : 1;
        level_[static_cast<std::size_t>(v)] = current_level();
        reason_[static_cast<std::size_t>(v)] = reason;
        trail_.push_back(l);
    }

    int current_level() const { return static_cast<int>(trail_lim_.size()); }

    // Watches are stored under the literal whose falsification triggers a visit.
    int propagate() {
        while (qhead_ < trail_.size()) {
            int p = trail_[qhead_++];
            int falsified = neg(p);
            auto& ws = watches_[static_cast<std::size_t>(falsified)];
            std::size_t i = 0, j = 0;
            int conflict = -1;
            while (i < ws.size()) {
                int ci = ws[i++];
                auto& c = clauses_[static_cast<std::size_t>(ci)];
                if (c[0] == falsified) std::swap(c[0], c[1]);
                if (lit_value(c[0]) == 1) {
                    ws[j++] = ci;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < c.size(); ++k) {
                    if (lit_value(c[k]) != 0) {
                        std::swap(c[1], c[k]);
                        watches_[static_cast<std::size_t>(c[1])].push_back(ci);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                ws[j++] = ci;
                if (lit_value(c[0]) == 0) {
                    conflict = ci;
                    while (i < ws.size()) ws[j++] = ws[i++];
                    break;
                }
                ++stats.propagations;
                assign(c[0], ci);
            }
            ws.resize(j);
            if (conflict >= 0) return conflict;
        }
        return -1;
    }

    void backtrack_to(int lvl) {
        if (current_level() <= lvl) return;
        std::size_t stop = static_cast<std::size_t>(trail_lim_[static_cast<std::size_t>(lvl)]);
        for (std::size_t k = trail_.size(); k-- > stop;) {
            int v = var_of(trail_[k]);
            value_[static_cast<std::size_t>(v)] = -1;
            reason_[static_cast<std::size_t>(v)] = -1;
        }
        trail_.resize(stop);
        trail_lim_.resize(static_cast<std::size_t>(lvl));
        decisions_.resize(static_cast<std::size_t>(lvl));
        qhead_ = trail_.size();
    }

    bool start() {
        if (root_conflict_) return false;
        for (int u : units_) {
            int lv = lit_value(u);
            if (lv == 0) return false;
            if (lv < 0) assign(u, -1);
        }
        return propagate() < 0;
    }

    int pick() {
        while (next_order_ < order_.size()) {
            int v = order_[next_order_];
            if (value_[static_cast<std::size_t>(v)] < 0) return v;
            ++next_order_;
        }
        return 0;
    }

    void decide(int l, bool flipped) {
        ++stats.decisions;
        trail_lim_.push_back(static_cast<int>(trail_.size()));
        decisions_.push_back({l, flipped});
        assign(l, -1);
    }

    // Undo to just below the deepest unflipped decision satisfying `eligible`, then take its
    // other branch. Returns false when no such decision exists.
    template <class Pred>
    bool flip_deepest(Pred eligible) {
        for (std::size_t lv = decisions_.size(); lv-- > 0;) {
            if (decisions_[lv].flipped || !eligible(decisions_[lv].lit)) continue;
            int l = decisions_[lv].lit;
            backtrack_to(static_cast<int>(lv));
            next_order_ = 0;
            decide(neg(l), true);
            return true;
        }
        return false;
    }

    SolveResult::Status search_chrono(const SolverOptions& opt, EnumState* es) {
        if (!start()) return SolveResult::Status::Unsat;
        next_order_ = 0;
        for (;;) {
            int confl = propagate();
            if (confl >= 0) {
                ++stats.conflicts;
                if (opt.conflict_limit && stats.conflicts >= opt.conflict_limit) return SolveResult::Status::Unknown;
                if (!flip_deepest([](int) { return true; })) return SolveResult::Status::Unsat;
                continue;
            }
            int v = pick();
            if (v != 0) {
                decide(2 * v + 1, false);
                continue;
            }
            if (!es) return SolveResult::Status::Sat;
            std::vector<bool> proj;
            proj.reserve(es->projection->size());
            for (int pv : *es->projection) proj.push_back(value_[static_cast<std::size_t>(pv)] == 1);
            ++*es->count;
            if (!(*es->visit)(proj)) return SolveResult::Status::Sat;
            const auto& in_proj = *es->in_proj;
            if (!flip_deepest([&](int l) { return in_proj[static_cast<std::size_t>(var_of(l))] != 0; }))
                return SolveResult::Status::Sat;
        }
    }

    SolveResult::Status search_cdcl(const SolverOptions& opt) {
        if (!start()) return SolveResult::Status::Unsat;
        next_order_ = 0;
        for (;;) {
            int confl = propagate();
            if (confl >= 0) {
                ++stats.conflicts;
                if (current_level() == 0) return SolveResult::Status::Unsat;
                if (opt.conflict_limit && stats.conflicts >= opt.conflict_limit) return SolveResult::Status::Unknown;
                std::vector<int> learnt;
                int bt = analyze(confl, learnt);
                backtrack_to(bt);
                next_order_ = 0;
                if (learnt.size() == 1) {
                    assign(learnt[0], -1);
                } else {
                    int ci = attach(learnt);
                    ++stats.learned;
                    assign(learnt[0], ci);
                }
                continue;
            }
            int v = pick();
            if (v == 0) return SolveResult::Status::Sat;
            decide(2 * v + 1, false);
        }
    }

    // First-UIP conflict analysis. learnt[0] is the asserting literal, learnt[1] a literal
    // of the backjump level.
    int analyze(int confl, std::vector<int>& learnt) {
        learnt.assign(1, 0);
        int pending = 0;
        int p = -1;
        std::size_t idx = trail_.size();
        int ci = confl;
        for (;;) {
            const auto& c = clauses_[static_cast<std::size_t>(ci)];
            for (std::size_t k = (p == -1 ? 0 : 1); k < c.size(); ++k) {
                int q = c[k];
                int v = var_of(q);
                if (seen_[static_cast<std::size_t>(v)] || level_[static_cast<std::size_t>(v)] == 0) continue;
                seen_[static_cast<std::size_t>(v)] = 1;
                if (level_[static_cast<std::size_t>(v)] == current_level()) ++pending;
                else learnt.push_back(q);
            }
            do {
                --idx;
            } while (!seen_[static_cast<std::size_t>(var_of(trail_[idx]))]);
            p = trail_[idx];
            seen_[static_cast<std::size_t>(var_of(p))] = 0;
            if (--pending == 0) break;
            ci = reason_[static_cast<std::size_t>(var_of(p))];
            // Reason clauses keep their implied literal at position 0.
            auto& rc = clauses_[static_cast<std::size_t>(ci)];
            if (rc[0] != p) {
                for (std::size_t k = 1; k < rc.size(); ++k)
                    if (rc[k] == p) {
                        std::swap(rc[0], rc[k]);
                        break;
                    }
            }
        }
        learnt[0] = neg(p);
        for (std::size_t k = 1; k < learnt.size(); ++k) seen_[static_cast<std::size_t>(var_of(learnt[k]))] = 0;
        int bt = 0;
        if (learnt.size() > 1) {
            std::size_t maxi = 1;
            for (std::size_t k = 2; k < learnt.size(); ++k)
                if (level_[static_cast<std::size_t>(var_of(learnt[k]))] >
                    level_[static_cast<std::size_t>(var_of(learnt[maxi]))])
                    maxi = k;
            std::swap(learnt[1], learnt[maxi]);
            bt = level_[static_cast<std::size_t>(var_of(learnt[1]))];
        }
        return bt;
    }

    std::vector<bool> model() const {
        std::vector<bool> m(static_cast<std::size_t>(nv_) + 1, false);
        for (int v = 1; v <= nv_; ++v) m[static_cast<std::size_t>(v)] = value_[static_cast<std::size_t>(v)] == 1;
        return m;
    }

    struct Decision {
        int lit;
        bool flipped;
    };

    int nv_;
    bool root_conflict_ = false;
    std::vector<std::vector<int>> clauses_;
    std::vector<std::vector<int>> watches_;
    std::vector<int> units_;
    std::vector<int> value_;
    std::vector<int> level_;
    std::vector<int> reason_;
    std::vector<char> seen_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::vector<Decision> decisions_;
    std::vector<int> order_;
    std::size_t next_order_ = 0;
    std::size_t qhead_ = 0;
};

}  // namespace

SolveResult dpll_solve(const GroundCnf& cnf, const SolverOptions& options) {
    Solver s(cnf);
    return s.solve(options);
}

std::uint64_t all_models(const GroundCnf& cnf, const std::vector<int>& projection, const ModelVisitor& visit) {
    Solver s(cnf);
    return s.enumerate(projection, visit);
}

std::vector<std::vector<bool>> all_models(const GroundCnf& cnf, const std::vector<int>& projection) {
    std::vector<std::vector<bool>> out;
    all_models(cnf, projection, [&](const std::vector<bool>& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

}  // namespace ebs

#include "icbound/cliques.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>

namespace icbound {

namespace {

int popcount(rmask m) { return __builtin_popcount(m); }

struct OpCounter {
    std::uint64_t used = 0, cap = 0;
    bool tick(std::uint64_t k = 1) {
        used += k;
        return used <= cap;
    }
};

}  // namespace

std::vector<fvec> CliqueCatalog::vectors_of(rmask c) const {
    std::vector<fvec> out;
    for (size_t i = 0; i < normalized.size(); ++i)
        if ((satisfies[i] & c) == c) out.push_back(normalized[i]);
    return out;
}

std::vector<GeneralizedClique> CliqueCatalog::maximal_and_singletons() const {
    std::vector<rmask> masks = maximal;
    for (int j = 0; j < m; ++j) {
        rmask s = 1u << j;
        if (std::find(masks.begin(), masks.end(), s) == masks.end()) masks.push_back(s);
    }
    std::sort(masks.begin(), masks.end());
    std::vector<GeneralizedClique> out;
    for (rmask c : masks) out.push_back({c, vectors_of(c)});
    return out;
}

CliqueCatalog enumerate_cliques(const IccsiInstance& inst, const SearchBudget& budget) {
    if (inst.m > 12) throw BudgetExceeded("clique enumeration limited to m <= 12");
    const Field& f = inst.field;
    long double size = 1;
    for (int i = 0; i < inst.d_S(); ++i) {
        size *= f.q();
        if (size > (1 << 20)) throw BudgetExceeded("q^d_S exceeds the vector-search budget");
    }
    OpCounter ops{0, budget.max_ops};

    CliqueCatalog cat;
    cat.m = inst.m;
    // membership structures per receiver
    std::vector<Echelon> side, line_plus_side;
    for (int i = 0; i < inst.m; ++i) {
        Echelon e(f, inst.n);
        for (int r = 0; r < inst.V[i].rows(); ++r) e.insert(inst.V[i].row(r));
        Echelon l = e;
        l.insert(inst.R.row(i));
        side.push_back(std::move(e));
        line_plus_side.push_back(std::move(l));
    }
    // all normalized nonzero vectors of the sender space
    std::set<fvec> seen;
    long total = 1;
    for (int i = 0; i < inst.d_S(); ++i) total *= f.q();
    const FqMatrix& basis = inst.sender_space().basis();
    for (long e = 1; e < total; ++e) {
        if (!ops.tick()) throw BudgetExceeded("clique vector enumeration budget");
        fvec coef(inst.d_S(), 0);
        long idx = e;
        for (int i = 0; i < inst.d_S(); ++i) {
            coef[i] = static_cast<felem>(idx % f.q());
            idx /= f.q();
        }
        fvec v = vec_mat(coef, basis);
        felem first = 0;
        for (felem x : v)
            if (x != 0) {
                first = x;
                break;
            }
        if (first == 0) continue;
        if (first != 1) v = vec_scale(f, f.inv(first), v);
        seen.insert(std::move(v));
    }
    for (const fvec& v : seen) {
        rmask sat = 0, sig = 0;
        for (int i = 0; i < inst.m; ++i) {
            bool in_side = side[i].reduces_to_zero(v);
            if (in_side) sig |= 1u << i;
            if (!in_side && line_plus_side[i].reduces_to_zero(v)) sat |= 1u << i;
        }
        cat.normalized.push_back(v);
        cat.satisfies.push_back(sat);
        cat.signature.push_back(sig);
    }
    // inclusion-maximal satisfier sets
    std::set<rmask> sats(cat.satisfies.begin(), cat.satisfies.end());
    sats.erase(0);
    for (rmask c : sats) {
        bool maximl = true;
        for (rmask o : sats)
            if (o != c && (o & c) == c) maximl = false;
        if (maximl) cat.maximal.push_back(c);
    }
    std::sort(cat.maximal.begin(), cat.maximal.end());
    // subset-closed clique family (all nonempty subsets of maximal cliques)
    std::set<rmask> fam;
    for (int j = 0; j < inst.m; ++j) fam.insert(1u << j);  // singletons always exist
    for (rmask top : cat.maximal)
        for (rmask s = top; s; s = (s - 1) & top) fam.insert(s);
    cat.family.assign(fam.begin(), fam.end());
    return cat;
}

namespace {

// clique with its Pareto-maximal (signature, vector) options
struct CliqueOption {
    rmask members = 0;
    std::vector<std::pair<rmask, fvec>> sigs;
};

std::vector<CliqueOption> catalog_options(const CliqueCatalog& cat) {
    std::vector<CliqueOption> out;
    for (rmask c : cat.family) {
        CliqueOption opt;
        opt.members = c;
        std::vector<std::pair<rmask, fvec>> all;
        for (size_t i = 0; i < cat.normalized.size(); ++i)
            if ((cat.satisfies[i] & c) == c)
                all.push_back({cat.signature[i], cat.normalized[i]});
        for (const auto& [sig, vec] : all) {
            bool dominated = false;
            for (const auto& [osig, ovec] : all)
                if (osig != sig && (osig & sig) == sig) dominated = true;
            if (dominated) continue;
            bool present = false;
            for (const auto& [esig, evec] : opt.sigs)
                if (esig == sig) present = true;
            if (!present) opt.sigs.push_back({sig, vec});
        }
        std::sort(opt.sigs.begin(), opt.sigs.end());
        out.push_back(std::move(opt));
    }
    return out;
}

// cover program (3): min sum y_C with every receiver in exactly one clique
std::pair<Rat, CoverCert> solve_cover(int m, const std::vector<CliqueOption>& cliques,
                                      bool integral) {
    LinearProgram p(static_cast<int>(cliques.size()));
    for (size_t c = 0; c < cliques.size(); ++c) {
        p.objective[c] = 1;
        p.upper[c] = Rat(1);
        p.integral[c] = integral;
    }
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> row(cliques.size(), Rat(0));
        for (size_t c = 0; c < cliques.size(); ++c)
            if (cliques[c].members >> j & 1) row[c] = 1;
        p.add_constraint(std::move(row), LinearProgram::Rel::Eq, Rat(1));
    }
    LpSolution sol = integral ? ilp_solve(p) : lp_solve(p);
    CoverCert cert;
    for (size_t c = 0; c < cliques.size(); ++c) {
        if (sol.assignment[c] == 0) continue;
        cert.cliques.push_back(cliques[c].members);
        cert.vectors.push_back(cliques[c].sigs.front().second);
        cert.weights.push_back(sol.assignment[c]);
    }
    return {sol.objective, std::move(cert)};
}

// enumerate partitions of [m] into family cliques; fn(part indices) -> void
bool partitions_dfs(int m, const std::vector<CliqueOption>& cliques, rmask covered,
                    std::vector<int>& parts, OpCounter& ops,
                    const std::function<void(const std::vector<int>&)>& fn) {
    if (covered == (m >= 32 ? ~0u : (1u << m) - 1)) {
        fn(parts);
        return true;
    }
    int j = 0;
    while (covered >> j & 1) ++j;
    for (size_t c = 0; c < cliques.size(); ++c) {
        rmask mem = cliques[c].members;
        if (!(mem >> j & 1) || (mem & covered)) continue;
        if (!ops.tick()) return false;
        parts.push_back(static_cast<int>(c));
        if (!partitions_dfs(m, cliques, covered | mem, parts, ops, fn)) return false;
        parts.pop_back();
    }
    return true;
}

// per-part signature product; fn(sig per part) on each full choice
bool sig_product_dfs(const std::vector<CliqueOption>& cliques,
                     const std::vector<int>& parts, size_t idx,
                     std::vector<int>& pick, OpCounter& ops,
                     const std::function<void(const std::vector<int>&)>& fn) {
    if (idx == parts.size()) {
        fn(pick);
        return true;
    }
    const auto& opts = cliques[parts[idx]].sigs;
    for (size_t s = 0; s < opts.size(); ++s) {
        if (!ops.tick()) return false;
        pick.push_back(static_cast<int>(s));
        if (!sig_product_dfs(cliques, parts, idx + 1, pick, ops, fn)) return false;
        pick.pop_back();
    }
    return true;
}

int greedy_sig(const CliqueOption& c) {
    int best = 0;
    for (size_t s = 1; s < c.sigs.size(); ++s)
        if (popcount(c.sigs[s].first) > popcount(c.sigs[best].first))
            best = static_cast<int>(s);
    return best;
}

// local program (4), integral: min over clique partitions and vector
// choices of max_j #{parts with v outside X^(j)}
std::pair<Rat, LocalCert> solve_local_integral(int m,
                                               const std::vector<CliqueOption>& cliques,
                                               const SearchBudget& budget) {
    OpCounter ops{0, budget.max_ops};
    int best_k = m + 1;
    LocalCert best;
    auto eval = [&](const std::vector<int>& parts) {
        std::vector<int> pick;
        sig_product_dfs(cliques, parts, 0, pick, ops, [&](const std::vector<int>& sel) {
            int k = 0;
            for (int j = 0; j < m; ++j) {
                int cnt = 0;
                for (size_t i = 0; i < parts.size(); ++i)
                    if (!(cliques[parts[i]].sigs[sel[i]].first >> j & 1)) ++cnt;
                k = std::max(k, cnt);
            }
            if (k < best_k) {
                best_k = k;
                best.cover.cliques.clear();
                best.cover.vectors.clear();
                best.cover.weights.clear();
                for (size_t i = 0; i < parts.size(); ++i) {
                    best.cover.cliques.push_back(cliques[parts[i]].members);
                    best.cover.vectors.push_back(cliques[parts[i]].sigs[sel[i]].second);
                    best.cover.weights.push_back(Rat(1));
                }
                best.k = k;
            }
        });
    };
    std::vector<int> parts;
    bool complete = partitions_dfs(m, cliques, 0, parts, ops, eval);
    if (complete && best_k <= m) {
        best.exact = true;
        return {Rat(best_k), std::move(best)};
    }
    // greedy fallback: fix one vector per clique, solve the program as an ILP
    LinearProgram p(static_cast<int>(cliques.size()) + 1);
    const int kvar = static_cast<int>(cliques.size());
    p.objective[kvar] = 1;
    p.integral.assign(p.num_vars, true);
    for (size_t c = 0; c < cliques.size(); ++c) p.upper[c] = Rat(1);
    std::vector<int> sel(cliques.size());
    for (size_t c = 0; c < cliques.size(); ++c) sel[c] = greedy_sig(cliques[c]);
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> cover(p.num_vars, Rat(0)), cnt(p.num_vars, Rat(0));
        for (size_t c = 0; c < cliques.size(); ++c) {
            if (cliques[c].members >> j & 1) cover[c] = 1;
            if (!(cliques[c].sigs[sel[c]].first >> j & 1)) cnt[c] = 1;
        }
        cnt[kvar] = -1;
        p.add_constraint(std::move(cover), LinearProgram::Rel::Eq, Rat(1));
        p.add_constraint(std::move(cnt), LinearProgram::Rel::Le, Rat(0));
    }
    LpSolution sol = ilp_solve(p);
    LocalCert cert;
    cert.exact = false;
    cert.k = sol.objective;
    for (size_t c = 0; c < cliques.size(); ++c) {
        if (sol.assignment[c] == 0) continue;
        cert.cover.cliques.push_back(cliques[c].members);
        cert.cover.vectors.push_back(cliques[c].sigs[sel[c]].second);
        cert.cover.weights.push_back(sol.assignment[c]);
    }
    return {sol.objective, std::move(cert)};
}

// full signature choice functions over all cliques (for the LP variants)
bool choice_function_dfs(const std::vector<CliqueOption>& cliques, size_t idx,
                         std::vector<int>& pick, OpCounter& ops,
                         const std::function<void(const std::vector<int>&)>& fn) {
    if (idx == cliques.size()) {
        fn(pick);
        return true;
    }
    for (size_t s = 0; s < cliques[idx].sigs.size(); ++s) {
        if (!ops.tick()) return false;
        pick.push_back(static_cast<int>(s));
        if (!choice_function_dfs(cliques, idx + 1, pick, ops, fn)) return false;
        pick.pop_back();
    }
    return true;
}

LpSolution solve_local_lp(int m, const std::vector<CliqueOption>& cliques,
                          const std::vector<int>& sel) {
    // y <= 1 and k <= m are implied by the coverage equalities
    LinearProgram p(static_cast<int>(cliques.size()) + 1);
    const int kvar = static_cast<int>(cliques.size());
    p.objective[kvar] = 1;
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> cover(p.num_vars, Rat(0)), cnt(p.num_vars, Rat(0));
        for (size_t c = 0; c < cliques.size(); ++c) {
            if (cliques[c].members >> j & 1) cover[c] = 1;
            if (!(cliques[c].sigs[sel[c]].first >> j & 1)) cnt[c] = 1;
        }
        cnt[kvar] = -1;
        p.add_constraint(std::move(cover), LinearProgram::Rel::Eq, Rat(1));
        p.add_constraint(std::move(cnt), LinearProgram::Rel::Le, Rat(0));
    }
    return lp_solve(p);
}

std::pair<Rat, LocalCert> solve_local_fractional(int m,
                                                 const std::vector<CliqueOption>& cliques,
                                                 const SearchBudget& budget) {
    OpCounter ops{0, budget.max_ops};
    std::optional<Rat> best_val;
    std::vector<int> best_sel;
    LpSolution best_sol;
    std::vector<int> pick;
    bool complete = choice_function_dfs(cliques, 0, pick, ops, [&](const std::vector<int>& sel) {
        LpSolution sol = solve_local_lp(m, cliques, sel);
        if (!best_val || sol.objective < *best_val) {
            best_val = sol.objective;
            best_sel = sel;
            best_sol = sol;
        }
    });
    bool exact = complete;
    if (!complete) {
        best_sel.resize(cliques.size());
        for (size_t c = 0; c < cliques.size(); ++c) best_sel[c] = greedy_sig(cliques[c]);
        best_sol = solve_local_lp(m, cliques, best_sel);
        best_val = best_sol.objective;
    }
    LocalCert cert;
    cert.exact = exact;
    cert.k = *best_val;
    for (size_t c = 0; c < cliques.size(); ++c) {
        if (best_sol.assignment[c] == 0) continue;
        cert.cover.cliques.push_back(cliques[c].members);
        cert.cover.vectors.push_back(cliques[c].sigs[best_sel[c]].second);
        cert.cover.weights.push_back(best_sol.assignment[c]);
    }
    return {*best_val, std::move(cert)};
}

}  // namespace

std::pair<Rat, CoverCert> phi(const IccsiInstance& inst, const CliqueCatalog& cat) {
    return solve_cover(inst.m, catalog_options(cat), true);
}

std::pair<Rat, CoverCert> phi_f(const IccsiInstance& inst, const CliqueCatalog& cat) {
    return solve_cover(inst.m, catalog_options(cat), false);
}

std::pair<Rat, LocalCert> phi_l(const IccsiInstance& inst, const CliqueCatalog& cat,
                                const SearchBudget& budget) {
    return solve_local_integral(inst.m, catalog_options(cat), budget);
}

std::pair<Rat, LocalCert> phi_lf(const IccsiInstance& inst, const CliqueCatalog& cat,
                                 const SearchBudget& budget) {
    return solve_local_fractional(inst.m, catalog_options(cat), budget);
}

int d_m(const IccsiInstance& inst, rmask members) {
    if (members == 0) throw PreconditionViolated("empty multicast group");
    const Field& f = inst.field;
    std::vector<fvec> rows;
    for (int j = 0; j < inst.m; ++j)
        if (members >> j & 1) rows.push_back(inst.R.row(j));
    Subspace rm = Subspace::from_rows(FqMatrix::from_rows(f, rows, inst.n));
    int min_overlap = rm.dim();
    for (int j = 0; j < inst.m; ++j) {
        if (!(members >> j & 1)) continue;
        min_overlap =
            std::min(min_overlap, subspace_intersect(rm, inst.side_space(j)).dim());
    }
    return rm.dim() - min_overlap;
}

namespace {

std::pair<Rat, MulticastCert> solve_multicast(const IccsiInstance& inst, bool integral) {
    if (inst.m > 10) throw BudgetExceeded("partition multicast limited to m <= 10");
    const int groups = (1 << inst.m) - 1;
    LinearProgram p(groups);
    for (int g = 1; g <= groups; ++g) {
        p.objective[g - 1] = d_m(inst, static_cast<rmask>(g));
        p.upper[g - 1] = Rat(1);
        p.integral[g - 1] = integral;
    }
    for (int j = 0; j < inst.m; ++j) {
        std::vector<Rat> row(groups, Rat(0));
        for (int g = 1; g <= groups; ++g)
            if (g >> j & 1) row[g - 1] = 1;
        p.add_constraint(std::move(row), LinearProgram::Rel::Eq, Rat(1));
    }
    LpSolution sol = integral ? ilp_solve(p) : lp_solve(p);
    MulticastCert cert;
    for (int g = 1; g <= groups; ++g) {
        if (sol.assignment[g - 1] == 0) continue;
        cert.groups.push_back(static_cast<rmask>(g));
        cert.weights.push_back(sol.assignment[g - 1]);
    }
    return {sol.objective, std::move(cert)};
}

}  // namespace

std::pair<Rat, MulticastCert> phi_p(const IccsiInstance& inst) {
    return solve_multicast(inst, true);
}

std::pair<Rat, MulticastCert> phi_p_f(const IccsiInstance& inst) {
    return solve_multicast(inst, false);
}

namespace {

// set partitions of [m] into arbitrary nonempty groups
bool group_partitions_dfs(int m, rmask covered, std::vector<rmask>& groups,
                          OpCounter& ops,
                          const std::function<void(const std::vector<rmask>&)>& fn) {
    rmask full = (m >= 32 ? ~0u : (1u << m) - 1);
    if (covered == full) {
        fn(groups);
        return true;
    }
    int j = 0;
    while (covered >> j & 1) ++j;
    rmask rest = full & ~covered & ~((1u << (j + 1)) - 1);
    // all subsets of rest, each combined with j
    rmask s = rest;
    for (;;) {
        if (!ops.tick()) return false;
        rmask g = s | (1u << j);
        groups.push_back(g);
        if (!group_partitions_dfs(m, covered | g, groups, ops, fn)) return false;
        groups.pop_back();
        if (s == 0) break;
        s = (s - 1) & rest;
    }
    return true;
}

// integral partitioned local (6): clique partition + vector choice outside,
// group partition inside; t_M counts chosen cliques meeting M with v_C
// outside X^(j), maximized over j in M.
std::pair<Rat, PartitionedLocalCert> solve_part_local_integral(
    int m, const std::vector<CliqueOption>& cliques, const SearchBudget& budget) {
    OpCounter ops{0, budget.max_ops};
    std::optional<Rat> best_val;
    PartitionedLocalCert best;
    auto eval_choice = [&](const std::vector<int>& parts, const std::vector<int>& sel) {
        std::vector<rmask> groups;
        group_partitions_dfs(m, 0, groups, ops, [&](const std::vector<rmask>& gs) {
            Rat total = 0;
            std::vector<Rat> ts;
            for (rmask g : gs) {
                int tm = 0;
                for (int j = 0; j < m; ++j) {
                    if (!(g >> j & 1)) continue;
                    int cnt = 0;
                    for (size_t i = 0; i < parts.size(); ++i) {
                        if (!(cliques[parts[i]].members & g)) continue;
                        if (!(cliques[parts[i]].sigs[sel[i]].first >> j & 1)) ++cnt;
                    }
                    tm = std::max(tm, cnt);
                }
                ts.push_back(Rat(tm));
                total += tm;
            }
            if (!best_val || total < *best_val) {
                best_val = total;
                best = PartitionedLocalCert{};
                for (size_t g = 0; g < gs.size(); ++g) {
                    best.groups.groups.push_back(gs[g]);
                    best.groups.weights.push_back(Rat(1));
                }
                best.t = ts;
                for (size_t i = 0; i < parts.size(); ++i) {
                    best.cover.cliques.push_back(cliques[parts[i]].members);
                    best.cover.vectors.push_back(cliques[parts[i]].sigs[sel[i]].second);
                    best.cover.weights.push_back(Rat(1));
                }
            }
        });
    };
    std::vector<int> parts;
    bool complete = partitions_dfs(m, cliques, 0, parts, ops, [&](const std::vector<int>& pp) {
        std::vector<int> pick;
        sig_product_dfs(cliques, pp, 0, pick, ops,
                        [&](const std::vector<int>& sel) { eval_choice(pp, sel); });
    });
    if (!complete || !best_val) throw BudgetExceeded("partitioned local search budget");
    best.exact = true;
    return {*best_val, std::move(best)};
}

long long det_bareiss(std::vector<std::vector<long long>> a) {
    int n = static_cast<int>(a.size());
    long long prev = 1, sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (a[k][k] == 0) {
            int swap = -1;
            for (int r = k + 1; r < n; ++r)
                if (a[r][k] != 0) {
                    swap = r;
                    break;
                }
            if (swap < 0) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// vertices of {a >= 0 : sum_{M ∋ j} a_M = 1}: all integral partitions, plus
// every basic feasible solution when m is small enough to enumerate bases
std::vector<std::vector<std::pair<rmask, Rat>>> partition_polytope_vertices(int m) {
    std::set<std::vector<std::pair<rmask, Rat>>> verts;
    {
        OpCounter ops{0, 1u << 22};
        std::vector<rmask> groups;
        group_partitions_dfs(m, 0, groups, ops, [&](const std::vector<rmask>& gs) {
            std::vector<std::pair<rmask, Rat>> v;
            for (rmask g : gs) v.push_back({g, Rat(1)});
            std::sort(v.begin(), v.end());
            verts.insert(v);
        });
    }
    if (m <= 5) {
        const int ncols = (1 << m) - 1;
        std::vector<int> cols(m);
        for (int i = 0; i < m; ++i) cols[i] = i + 1;
        for (;;) {
            std::vector<std::vector<long long>> mat(m, std::vector<long long>(m, 0));
            for (int r = 0; r < m; ++r)
                for (int c = 0; c < m; ++c) mat[r][c] = (cols[c] >> r) & 1;
            long long det = det_bareiss(mat);
            if (det != 0) {
                std::vector<long long> dets(m);
                bool feasible = true;
                for (int c = 0; c < m; ++c) {
                    auto mm = mat;
                    for (int r = 0; r < m; ++r) mm[r][c] = 1;
                    dets[c] = det_bareiss(mm);
                    if (dets[c] != 0 && (dets[c] > 0) != (det > 0)) feasible = false;
                }
                if (feasible) {
                    std::vector<std::pair<rmask, Rat>> v;
                    for (int c = 0; c < m; ++c)
                        if (dets[c] != 0)
                            v.push_back({static_cast<rmask>(cols[c]),
                                         Rat(Int(dets[c])) / Rat(Int(det))});
                    std::sort(v.begin(), v.end());
                    verts.insert(v);
                }
            }
            int i = m - 1;
            while (i >= 0 && cols[i] == ncols - m + i + 1) --i;
            if (i < 0) break;
            ++cols[i];
            for (int j = i + 1; j < m; ++j) cols[j] = cols[j - 1] + 1;
        }
    }
    return {verts.begin(), verts.end()};
}

LpSolution solve_part_local_lp(int m, const std::vector<CliqueOption>& cliques,
                               const std::vector<int>& sel,
                               const std::vector<std::pair<rmask, Rat>>& a) {
    const int nc = static_cast<int>(cliques.size());
    const int ng = static_cast<int>(a.size());
    LinearProgram p(nc + ng);  // y <= 1 is implied by the coverage equalities
    for (int g = 0; g < ng; ++g) p.objective[nc + g] = a[g].second;
    for (int j = 0; j < m; ++j) {
        std::vector<Rat> cover(p.num_vars, Rat(0));
        for (int c = 0; c < nc; ++c)
            if (cliques[c].members >> j & 1) cover[c] = 1;
        p.add_constraint(std::move(cover), LinearProgram::Rel::Eq, Rat(1));
    }
    for (int g = 0; g < ng; ++g)
        for (int j = 0; j < m; ++j) {
            if (!(a[g].first >> j & 1)) continue;
            std::vector<Rat> row(p.num_vars, Rat(0));
            for (int c = 0; c < nc; ++c)
                if ((cliques[c].members & a[g].first) &&
                    !(cliques[c].sigs[sel[c]].first >> j & 1))
                    row[c] = 1;
            row[nc + g] = -1;
            p.add_constraint(std::move(row), LinearProgram::Rel::Le, Rat(0));
        }
    return lp_solve(p);
}

std::pair<Rat, PartitionedLocalCert> solve_part_local_fractional(
    int m, const std::vector<CliqueOption>& cliques, const SearchBudget& budget) {
    OpCounter ops{0, budget.max_ops};
    auto vertices = partition_polytope_vertices(m);
    // integral partitions first to seed the incumbent, then light vertices:
    // with every t_M >= 1 the inner optimum is at least sum a_M
    auto weight_sum = [](const std::vector<std::pair<rmask, Rat>>& a) {
        Rat s = 0;
        for (const auto& [g, w] : a) s += w;
        return s;
    };
    std::stable_sort(vertices.begin(), vertices.end(),
                     [&](const auto& x, const auto& y) {
                         bool xi = weight_sum(x) == static_cast<long>(x.size());
                         bool yi = weight_sum(y) == static_cast<long>(y.size());
                         if (xi != yi) return xi;
                         return weight_sum(x) < weight_sum(y);
                     });
    // materialize the vector choice functions (bounded), else fall back to
    // the greedy per-clique choice
    std::vector<std::vector<int>> choices;
    std::vector<int> pick;
    bool complete = choice_function_dfs(
        cliques, 0, pick, ops,
        [&](const std::vector<int>& sel) { choices.push_back(sel); });
    bool exact_flag = complete;
    if (!complete || choices.empty()) {
        std::vector<int> sel(cliques.size());
        for (size_t c = 0; c < cliques.size(); ++c) sel[c] = greedy_sig(cliques[c]);
        choices = {sel};
    }
    std::optional<Rat> best_val;
    PartitionedLocalCert best;
    for (const auto& a : vertices) {
        if (best_val && weight_sum(a) >= *best_val) continue;
        for (const auto& sel : choices) {
            LpSolution sol = solve_part_local_lp(m, cliques, sel, a);
            if (!best_val || sol.objective < *best_val) {
                best_val = sol.objective;
                best = PartitionedLocalCert{};
                best.exact = exact_flag;
                for (const auto& [g, w] : a) {
                    best.groups.groups.push_back(g);
                    best.groups.weights.push_back(w);
                }
                const int nc = static_cast<int>(cliques.size());
                for (int c = 0; c < nc; ++c) {
                    if (sol.assignment[c] == 0) continue;
                    best.cover.cliques.push_back(cliques[c].members);
                    best.cover.vectors.push_back(cliques[c].sigs[sel[c]].second);
                    best.cover.weights.push_back(sol.assignment[c]);
                }
                for (size_t g = 0; g < a.size(); ++g)
                    best.t.push_back(sol.assignment[nc + g]);
            }
        }
    }
    if (!best_val) throw BudgetExceeded("partitioned local fractional search");
    return {*best_val, std::move(best)};
}

}  // namespace

std::pair<Rat, PartitionedLocalCert> phi_p_l(const IccsiInstance& inst,
                                             const CliqueCatalog& cat,
                                             const SearchBudget& budget) {
    return solve_part_local_integral(inst.m, catalog_options(cat), budget);
}

std::pair<Rat, PartitionedLocalCert> phi_p_lf(const IccsiInstance& inst,
                                              const CliqueCatalog& cat,
                                              const SearchBudget& budget) {
    return solve_part_local_fractional(inst.m, catalog_options(cat), budget);
}

int local_k_for(const IccsiInstance& inst, const std::vector<rmask>& cliques,
                const std::vector<fvec>& vectors) {
    if (cliques.size() != vectors.size())
        throw DimensionMismatch("one vector per clique required");
    rmask covered = 0;
    for (rmask c : cliques) {
        if (covered & c) throw PreconditionViolated("cover cliques must be disjoint");
        covered |= c;
    }
    if (covered != (inst.m >= 32 ? ~0u : (1u << inst.m) - 1))
        throw PreconditionViolated("cover must reach every receiver");
    // verify each vector witnesses its clique
    for (size_t c = 0; c < cliques.size(); ++c) {
        if (!inst.sender_space().contains(vectors[c]))
            throw PreconditionViolated("coding vector outside the sender space");
        for (int j = 0; j < inst.m; ++j) {
            if (!(cliques[c] >> j & 1)) continue;
            FqMatrix stacked = FqMatrix::from_rows(inst.field, {vectors[c]}, inst.n)
                                   .stack(inst.V[j]);
            if (!row_combination(stacked, inst.R.row(j)))
                throw PreconditionViolated("coding vector fails a member");
        }
    }
    int k = 0;
    for (int j = 0; j < inst.m; ++j) {
        int cnt = 0;
        for (size_t c = 0; c < cliques.size(); ++c) {
            Echelon side(inst.field, inst.n);
            for (int r = 0; r < inst.V[j].rows(); ++r) side.insert(inst.V[j].row(r));
            if (!side.reduces_to_zero(vectors[c])) ++cnt;
        }
        k = std::max(k, cnt);
    }
    return k;
}

WeakCliqueSet weak_cliques(const IccsiInstance& inst) {
    if (inst.m > 12) throw BudgetExceeded("weak clique enumeration limited to m <= 12");
    const Field& f = inst.field;
    auto line_of = [&](const fvec& v) {
        felem first = 0;
        for (felem x : v)
            if (x != 0) {
                first = x;
                break;
            }
        return first == 0 ? v : (first == 1 ? v : vec_scale(f, f.inv(first), v));
    };
    std::vector<fvec> lines;
    for (int i = 0; i < inst.m; ++i) lines.push_back(line_of(inst.R.row(i)));
    // pairwise compatibility in both directions
    std::vector<rmask> compat(inst.m, 0);
    for (int i = 0; i < inst.m; ++i)
        for (int j = 0; j < inst.m; ++j) {
            if (i == j) continue;
            bool ij = inst.side_space(i).contains(inst.R.row(j)) || lines[i] == lines[j];
            if (ij) compat[i] |= 1u << j;
        }
    WeakCliqueSet out;
    for (rmask c = 1; c < (1u << inst.m); ++c) {
        bool ok = true;
        for (int i = 0; i < inst.m && ok; ++i) {
            if (!(c >> i & 1)) continue;
            rmask others = c & ~(1u << i);
            if ((compat[i] & others) != others) ok = false;
        }
        if (!ok) continue;
        // coding vector: sum of line-distinct requests, first occurrence order
        fvec v(inst.n, 0);
        std::vector<fvec> seen;
        for (int i = 0; i < inst.m; ++i) {
            if (!(c >> i & 1)) continue;
            if (std::find(seen.begin(), seen.end(), lines[i]) != seen.end()) continue;
            seen.push_back(lines[i]);
            v = vec_add(f, v, inst.R.row(i));
        }
        out.cliques.push_back(c);
        out.vectors.push_back(std::move(v));
    }
    return out;
}

namespace {

std::vector<CliqueOption> weak_options(const IccsiInstance& inst,
                                       const WeakCliqueSet& wk) {
    std::vector<CliqueOption> out;
    for (size_t i = 0; i < wk.cliques.size(); ++i) {
        rmask sig = 0;
        for (int j = 0; j < inst.m; ++j)
            if (inst.side_space(j).contains(wk.vectors[i])) sig |= 1u << j;
        out.push_back({wk.cliques[i], {{sig, wk.vectors[i]}}});
    }
    return out;
}

}  // namespace

std::vector<std::string> all_bound_names() {
    return {"phi_p_lf", "phi_p_l", "phi_lf", "phi_l",  "phi_f",   "phi",
            "phi_p_f",  "phi_p",   "wphi_p_lf", "wphi_p_l", "wphi_lf", "wphi_l",
            "wphi_f",   "wphi"};
}

BoundReport compute_bounds(const IccsiInstance& inst,
                           const std::vector<std::string>& params,
                           const SearchBudget& budget) {
    BoundReport rep;
    std::optional<CliqueCatalog> cat;
    std::optional<WeakCliqueSet> weak;
    auto catalog = [&]() -> const CliqueCatalog& {
        if (!cat) cat = enumerate_cliques(inst, budget);
        return *cat;
    };
    auto weakset = [&]() -> const WeakCliqueSet& {
        if (!weak) weak = weak_cliques(inst);
        return *weak;
    };
    for (const std::string& name : all_bound_names()) {
        if (std::find(params.begin(), params.end(), name) == params.end()) continue;
        rep.order.push_back(name);
        if (name == "phi") {
            auto [v, c] = phi(inst, catalog());
            rep.values[name] = v;
            rep.cover_certs[name] = c;
        } else if (name == "phi_f") {
            auto [v, c] = phi_f(inst, catalog());
            rep.values[name] = v;
            rep.cover_certs[name] = c;
        } else if (name == "phi_l") {
            auto [v, c] = phi_l(inst, catalog(), budget);
            rep.values[name] = v;
            rep.local_certs[name] = c;
        } else if (name == "phi_lf") {
            auto [v, c] = phi_lf(inst, catalog(), budget);
            rep.values[name] = v;
            rep.local_certs[name] = c;
        } else if (name == "phi_p") {
            auto [v, c] = phi_p(inst);
            rep.values[name] = v;
            rep.multicast_certs[name] = c;
        } else if (name == "phi_p_f") {
            auto [v, c] = phi_p_f(inst);
            rep.values[name] = v;
            rep.multicast_certs[name] = c;
        } else if (name == "phi_p_l") {
            auto [v, c] = phi_p_l(inst, catalog(), budget);
            rep.values[name] = v;
            rep.part_certs[name] = c;
        } else if (name == "phi_p_lf") {
            auto [v, c] = phi_p_lf(inst, catalog(), budget);
            rep.values[name] = v;
            rep.part_certs[name] = c;
        } else if (name == "wphi") {
            auto [v, c] = solve_cover(inst.m, weak_options(inst, weakset()), true);
            rep.values[name] = v;
            rep.cover_certs[name] = c;
        } else if (name == "wphi_f") {
            auto [v, c] = solve_cover(inst.m, weak_options(inst, weakset()), false);
            rep.values[name] = v;
            rep.cover_certs[name] = c;
        } else if (name == "wphi_l") {
            auto [v, c] = solve_local_integral(inst.m, weak_options(inst, weakset()), budget);
            rep.values[name] = v;
            rep.local_certs[name] = c;
        } else if (name == "wphi_lf") {
            auto [v, c] =
                solve_local_fractional(inst.m, weak_options(inst, weakset()), budget);
            rep.values[name] = v;
            rep.local_certs[name] = c;
        } else if (name == "wphi_p_l") {
            auto [v, c] =
                solve_part_local_integral(inst.m, weak_options(inst, weakset()), budget);
            rep.values[name] = v;
            rep.part_certs[name] = c;
        } else if (name == "wphi_p_lf") {
            auto [v, c] =
                solve_part_local_fractional(inst.m, weak_options(inst, weakset()), budget);
            rep.values[name] = v;
            rep.part_certs[name] = c;
        } else {
            throw ParseError("unknown bound parameter: " + name);
        }
    }
    return rep;
}

namespace {

bool weights_partition(int m, const std::vector<rmask>& sets,
                       const std::vector<Rat>& weights) {
    for (int j = 0; j < m; ++j) {
        Rat s = 0;
        for (size_t i = 0; i < sets.size(); ++i)
            if (sets[i] >> j & 1) s += weights[i];
        if (s != 1) return false;
    }
    return true;
}

bool vector_witnesses(const IccsiInstance& inst, rmask c, const fvec& v) {
    if (!inst.sender_space().contains(v)) return false;
    for (int j = 0; j < inst.m; ++j) {
        if (!(c >> j & 1)) continue;
        FqMatrix stacked =
            FqMatrix::from_rows(inst.field, {v}, inst.n).stack(inst.V[j]);
        if (!row_combination(stacked, inst.R.row(j))) return false;
    }
    return true;
}

bool verify_cover(const IccsiInstance& inst, const CoverCert& c, const Rat& value) {
    if (!weights_partition(inst.m, c.cliques, c.weights)) return false;
    Rat total = 0;
    for (const Rat& w : c.weights) total += w;
    if (total != value) return false;
    for (size_t i = 0; i < c.cliques.size(); ++i)
        if (!vector_witnesses(inst, c.cliques[i], c.vectors[i])) return false;
    return true;
}

bool verify_local(const IccsiInstance& inst, const LocalCert& c, const Rat& value) {
    if (!weights_partition(inst.m, c.cover.cliques, c.cover.weights)) return false;
    if (c.k != value) return false;
    for (size_t i = 0; i < c.cover.cliques.size(); ++i)
        if (!vector_witnesses(inst, c.cover.cliques[i], c.cover.vectors[i])) return false;
    for (int j = 0; j < inst.m; ++j) {
        Rat cnt = 0;
        for (size_t i = 0; i < c.cover.cliques.size(); ++i)
            if (!inst.side_space(j).contains(c.cover.vectors[i]))
                cnt += c.cover.weights[i];
        if (cnt > c.k) return false;
    }
    return true;
}

bool verify_multicast(const IccsiInstance& inst, const MulticastCert& c,
                      const Rat& value) {
    if (!weights_partition(inst.m, c.groups, c.weights)) return false;
    Rat total = 0;
    for (size_t i = 0; i < c.groups.size(); ++i)
        total += c.weights[i] * Rat(d_m(inst, c.groups[i]));
    return total == value;
}

bool verify_part_local(const IccsiInstance& inst, const PartitionedLocalCert& c,
                       const Rat& value) {
    if (!weights_partition(inst.m, c.groups.groups, c.groups.weights)) return false;
    if (!weights_partition(inst.m, c.cover.cliques, c.cover.weights)) return false;
    for (size_t i = 0; i < c.cover.cliques.size(); ++i)
        if (!vector_witnesses(inst, c.cover.cliques[i], c.cover.vectors[i])) return false;
    Rat total = 0;
    for (size_t g = 0; g < c.groups.groups.size(); ++g) {
        rmask gm = c.groups.groups[g];
        for (int j = 0; j < inst.m; ++j) {
            if (!(gm >> j & 1)) continue;
            Rat cnt = 0;
            for (size_t i = 0; i < c.cover.cliques.size(); ++i)
                if ((c.cover.cliques[i] & gm) &&
                    !inst.side_space(j).contains(c.cover.vectors[i]))
                    cnt += c.cover.weights[i];
            if (cnt > c.t[g]) return false;
        }
        total += c.groups.weights[g] * c.t[g];
    }
    return total == value;
}

}  // namespace

bool verify_report(const IccsiInstance& inst, const BoundReport& rep) {
    for (const std::string& name : rep.order) {
        const Rat& v = rep.values.at(name);
        if (rep.cover_certs.count(name)) {
            if (!verify_cover(inst, rep.cover_certs.at(name), v)) return false;
        } else if (rep.local_certs.count(name)) {
            if (!verify_local(inst, rep.local_certs.at(name), v)) return false;
        } else if (rep.multicast_certs.count(name)) {
            if (!verify_multicast(inst, rep.multicast_certs.at(name), v)) return false;
        } else if (rep.part_certs.count(name)) {
            if (!verify_part_local(inst, rep.part_certs.at(name), v)) return false;
        } else {
            return false;
        }
    }
    return true;
}

}  // namespace icbound

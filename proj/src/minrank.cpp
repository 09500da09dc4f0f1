#include "icbound/minrank.hpp"

#include <algorithm>
#include <cstdlib>

namespace icbound {

SearchBudget SearchBudget::standard() {
    SearchBudget b;
    b.max_ops = 1ull << 26;
    if (const char* env = std::getenv("ICBOUND_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) b.max_ops = v;
    }
    return b;
}

FittingPattern FittingPattern::of_digraph(const Digraph& g) {
    FittingPattern p;
    p.rows = p.cols = g.n;
    p.cell.assign(static_cast<size_t>(g.n) * g.n, 0);
    for (int i = 1; i <= g.n; ++i)
        for (int j = 1; j <= g.n; ++j)
            p.at(i - 1, j - 1) = (i == j) ? 1 : (g.has_arc(i, j) ? -1 : 0);
    return p;
}

FittingPattern FittingPattern::of_hypergraph(const Hypergraph& h) {
    FittingPattern p;
    p.rows = static_cast<int>(h.hyperarcs.size());
    p.cols = h.n;
    p.cell.assign(static_cast<size_t>(p.rows) * p.cols, 0);
    for (int i = 0; i < p.rows; ++i) {
        const auto& [tail, head] = h.hyperarcs[i];
        for (int j : head) p.at(i, j - 1) = -1;
        p.at(i, tail - 1) = 1;
    }
    return p;
}

int FittingPattern::free_count() const {
    return static_cast<int>(std::count(cell.begin(), cell.end(), -1));
}

bool FittingPattern::admits(const FqMatrix& m) const {
    if (m.rows() != rows || m.cols() != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) >= 0 && m.at(i, j) != at(i, j)) return false;
    return true;
}

namespace {

struct OpCounter {
    std::uint64_t used = 0, cap = 0;
    void tick(std::uint64_t k = 1) {
        used += k;
        if (used > cap) throw BudgetExceeded("search budget exhausted");
    }
};

// Is there a vector in span(basis) matching all fixed cells of pattern row r?
bool row_completable(const Echelon& ech, const FittingPattern& pat, int r,
                     const Field& f) {
    std::vector<int> fixed_cols;
    for (int c = 0; c < pat.cols; ++c)
        if (pat.at(r, c) >= 0) fixed_cols.push_back(c);
    const auto& basis = ech.rows();
    FqMatrix sys(f, static_cast<int>(fixed_cols.size()), static_cast<int>(basis.size()));
    fvec rhs(fixed_cols.size());
    for (size_t k = 0; k < fixed_cols.size(); ++k) {
        for (size_t b = 0; b < basis.size(); ++b) sys.at(static_cast<int>(k), static_cast<int>(b)) = basis[b][fixed_cols[k]];
        rhs[k] = static_cast<felem>(pat.at(r, fixed_cols[k]));
    }
    return solve(sys, rhs).feasible;
}

fvec complete_row(const Echelon& ech, const FittingPattern& pat, int r, const Field& f) {
    std::vector<int> fixed_cols;
    for (int c = 0; c < pat.cols; ++c)
        if (pat.at(r, c) >= 0) fixed_cols.push_back(c);
    const auto& basis = ech.rows();
    FqMatrix sys(f, static_cast<int>(fixed_cols.size()), static_cast<int>(basis.size()));
    fvec rhs(fixed_cols.size());
    for (size_t k = 0; k < fixed_cols.size(); ++k) {
        for (size_t b = 0; b < basis.size(); ++b) sys.at(static_cast<int>(k), static_cast<int>(b)) = basis[b][fixed_cols[k]];
        rhs[k] = static_cast<felem>(pat.at(r, fixed_cols[k]));
    }
    SolveResult s = solve(sys, rhs);
    if (!s.feasible) throw Error("internal: row expected completable");
    fvec v(pat.cols, 0);
    for (size_t b = 0; b < basis.size(); ++b)
        if (s.particular[b] != 0)
            v = vec_add(f, v, vec_scale(f, s.particular[b], basis[b]));
    return v;
}

// DFS over free entries of the spanning rows (subset), then membership
// checks for the remaining rows. Fills `out` with a full completion on
// success when out != nullptr.
bool spanning_dfs(const FittingPattern& pat, const Field& f,
                  const std::vector<int>& subset, size_t idx, Echelon& ech,
                  std::vector<fvec>& chosen, OpCounter& ops, FqMatrix* out) {
    if (idx == subset.size()) {
        for (int r = 0; r < pat.rows; ++r) {
            if (std::find(subset.begin(), subset.end(), r) != subset.end()) continue;
            ops.tick();
            if (!row_completable(ech, pat, r, f)) return false;
        }
        if (out) {
            for (int r = 0; r < pat.rows; ++r) {
                auto it = std::find(subset.begin(), subset.end(), r);
                fvec v = (it != subset.end()) ? chosen[it - subset.begin()]
                                              : complete_row(ech, pat, r, f);
                out->set_row(r, v);
            }
        }
        return true;
    }
    int r = subset[idx];
    std::vector<int> free_cols;
    for (int c = 0; c < pat.cols; ++c)
        if (pat.at(r, c) < 0) free_cols.push_back(c);
    fvec row(pat.cols, 0);
    for (int c = 0; c < pat.cols; ++c)
        if (pat.at(r, c) >= 0) row[c] = static_cast<felem>(pat.at(r, c));
    const long q = f.q();
    std::vector<felem> assign(free_cols.size(), 0);
    for (;;) {
        ops.tick();
        for (size_t k = 0; k < free_cols.size(); ++k) row[free_cols[k]] = assign[k];
        Echelon saved = ech;
        ech.insert(row);
        chosen.push_back(row);
        if (spanning_dfs(pat, f, subset, idx + 1, ech, chosen, ops, out)) return true;
        chosen.pop_back();
        ech = saved;
        // next assignment in canonical order
        size_t k = free_cols.size();
        while (k > 0) {
            --k;
            if (assign[k] + 1 < q) {
                ++assign[k];
                std::fill(assign.begin() + k + 1, assign.end(), 0);
                break;
            }
            if (k == 0) return false;
        }
        if (free_cols.empty()) return false;
    }
}

bool exists_rank_le(const FittingPattern& pat, const Field& f, int k, OpCounter& ops,
                    FqMatrix* out) {
    k = std::min(k, pat.rows);
    // lexicographic k-subsets of row indices
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    for (;;) {
        Echelon ech(f, pat.cols);
        std::vector<fvec> chosen;
        if (spanning_dfs(pat, f, subset, 0, ech, chosen, ops, out)) return true;
        int i = k - 1;
        while (i >= 0 && subset[i] == pat.rows - k + i) --i;
        if (i < 0) return false;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

}  // namespace

MinrankResult minrank(const FittingPattern& pat, const Field& f,
                      const SearchBudget& budget, int lower_bound) {
    OpCounter ops{0, budget.max_ops};
    int kmax = std::min(pat.rows, pat.cols);
    int value = -1;
    for (int k = std::max(1, lower_bound); k <= kmax; ++k) {
        if (exists_rank_le(pat, f, k, ops, nullptr)) {
            value = k;
            break;
        }
    }
    if (value < 0) throw Error("internal: no fitting matrix found");
    // lexicographically smallest certificate: fix free entries one at a
    // time, smallest value first, keeping rank <= value attainable
    FittingPattern fixed = pat;
    for (int r = 0; r < pat.rows; ++r)
        for (int c = 0; c < pat.cols; ++c) {
            if (fixed.at(r, c) >= 0) continue;
            for (long v = 0; v < f.q(); ++v) {
                fixed.at(r, c) = static_cast<int>(v);
                if (exists_rank_le(fixed, f, value, ops, nullptr)) break;
                fixed.at(r, c) = -1;
            }
            if (fixed.at(r, c) < 0) throw Error("internal: certificate fixing failed");
        }
    FqMatrix cert(f, pat.rows, pat.cols);
    for (int r = 0; r < pat.rows; ++r)
        for (int c = 0; c < pat.cols; ++c) cert.at(r, c) = static_cast<felem>(fixed.at(r, c));
    if (!pat.admits(cert) || rank(cert) != value)
        throw Error("internal: certificate check failed");
    return {value, std::move(cert)};
}

MinrankResult minrank(const Digraph& g, const Field& f, const SearchBudget& budget) {
    int lb = 1;
    if (g.n <= 16) {
        try {
            lb = alpha(g);
        } catch (const TooLarge&) {
            lb = 1;
        }
    }
    return minrank(FittingPattern::of_digraph(g), f, budget, lb);
}

MinrankResult minrank(const Hypergraph& h, const Field& f, const SearchBudget& budget) {
    return minrank(FittingPattern::of_hypergraph(h), f, budget, 1);
}

namespace {

void distribution_dfs(const FittingPattern& pat, const Field& f, int r,
                      const Echelon& ech, std::map<int, std::uint64_t>& hist,
                      OpCounter& ops) {
    if (r == pat.rows) {
        ++hist[ech.rank()];
        return;
    }
    std::vector<int> free_cols;
    fvec row(pat.cols, 0);
    for (int c = 0; c < pat.cols; ++c) {
        if (pat.at(r, c) < 0)
            free_cols.push_back(c);
        else
            row[c] = static_cast<felem>(pat.at(r, c));
    }
    const long q = f.q();
    std::vector<felem> assign(free_cols.size(), 0);
    for (;;) {
        ops.tick();
        for (size_t k = 0; k < free_cols.size(); ++k) row[free_cols[k]] = assign[k];
        Echelon next = ech;
        next.insert(row);
        distribution_dfs(pat, f, r + 1, next, hist, ops);
        size_t k = free_cols.size();
        bool advanced = false;
        while (k > 0) {
            --k;
            if (assign[k] + 1 < q) {
                ++assign[k];
                std::fill(assign.begin() + k + 1, assign.end(), 0);
                advanced = true;
                break;
            }
        }
        if (!advanced) return;
    }
}

}  // namespace

std::map<int, std::uint64_t> rank_distribution(const FittingPattern& pat, const Field& f,
                                               const SearchBudget& budget) {
    // the full histogram enumerates q^free matrices
    long double total = 1;
    for (int i = 0; i < pat.free_count(); ++i) {
        total *= f.q();
        if (total > static_cast<long double>(budget.max_ops))
            throw BudgetExceeded("q^free exceeds the enumeration budget");
    }
    OpCounter ops{0, budget.max_ops * (pat.rows + 1) + 16};
    std::map<int, std::uint64_t> hist;
    Echelon ech(f, pat.cols);
    distribution_dfs(pat, f, 0, ech, hist, ops);
    return hist;
}

std::map<int, std::uint64_t> rank_distribution(const Hypergraph& h, const Field& f,
                                               const SearchBudget& budget) {
    return rank_distribution(FittingPattern::of_hypergraph(h), f, budget);
}

std::map<int, std::uint64_t> rank_distribution(const Digraph& g, const Field& f,
                                               const SearchBudget& budget) {
    return rank_distribution(FittingPattern::of_digraph(g), f, budget);
}

namespace {

// Sorted list of the elements of a subspace (their full vectors).
std::vector<fvec> subspace_elements(const Subspace& s, OpCounter& ops) {
    const Field& f = s.field();
    std::vector<fvec> out;
    int d = s.dim();
    long count = 1;
    for (int i = 0; i < d; ++i) {
        count *= f.q();
        ops.tick(static_cast<std::uint64_t>(count));
    }
    fvec coef(d, 0);
    for (long it = 0; it < count; ++it) {
        fvec v(s.ambient_dim(), 0);
        long idx = it;
        for (int i = 0; i < d; ++i) {
            felem c = static_cast<felem>(idx % f.q());
            idx /= f.q();
            if (c != 0) v = vec_add(f, v, vec_scale(f, c, s.basis().row(i)));
        }
        out.push_back(std::move(v));
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct KappaContext {
    const IccsiInstance* inst;
    std::vector<std::vector<fvec>> coset_rows;  // per receiver: sorted R_i + W_i
    std::vector<Subspace> overlap;              // W_i = X^(i) ∩ X^(S)
};

bool kappa_row_completable(const Echelon& ech, const KappaContext& ctx, int j) {
    // exists w in W_j with R_j + w in span(ech) <=> the affine set meets it
    const Field& f = ctx.inst->field;
    const auto& basis = ech.rows();
    const Subspace& w = ctx.overlap[j];
    int n = ctx.inst->n;
    FqMatrix sys(f, n, static_cast<int>(basis.size()) + w.dim());
    for (int c = 0; c < n; ++c) {
        for (size_t b = 0; b < basis.size(); ++b) sys.at(c, static_cast<int>(b)) = basis[b][c];
        for (int b = 0; b < w.dim(); ++b)
            sys.at(c, static_cast<int>(basis.size()) + b) = f.neg(w.basis().at(b, c));
    }
    return solve(sys, ctx.inst->R.row(j)).feasible;
}

bool kappa_dfs(const KappaContext& ctx, const std::vector<int>& subset, size_t idx,
               Echelon& ech, std::vector<const fvec*>& chosen, OpCounter& ops,
               std::vector<fvec>* out_rows) {
    const int m = ctx.inst->m;
    if (idx == subset.size()) {
        for (int j = 0; j < m; ++j) {
            if (std::find(subset.begin(), subset.end(), j) != subset.end()) continue;
            ops.tick();
            if (!kappa_row_completable(ech, ctx, j)) return false;
        }
        if (out_rows) {
            out_rows->assign(m, fvec());
            for (size_t k = 0; k < subset.size(); ++k)
                (*out_rows)[subset[k]] = *chosen[k];
            for (int j = 0; j < m; ++j) {
                if (!(*out_rows)[j].empty()) continue;
                // smallest coset element whose row lies in the span
                for (const fvec& cand : ctx.coset_rows[j]) {
                    if (ech.reduces_to_zero(cand)) {
                        (*out_rows)[j] = cand;
                        break;
                    }
                }
                if ((*out_rows)[j].empty())
                    throw Error("internal: kappa completion failed");
            }
        }
        return true;
    }
    for (const fvec& cand : ctx.coset_rows[subset[idx]]) {
        ops.tick();
        Echelon saved = ech;
        ech.insert(cand);
        chosen.push_back(&cand);
        if (kappa_dfs(ctx, subset, idx + 1, ech, chosen, ops, out_rows)) return true;
        chosen.pop_back();
        ech = saved;
    }
    return false;
}

bool kappa_rank_le(const KappaContext& ctx, int k, OpCounter& ops,
                   std::vector<fvec>* out_rows) {
    const int m = ctx.inst->m;
    k = std::min(k, m);
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    for (;;) {
        Echelon ech(ctx.inst->field, ctx.inst->n);
        std::vector<const fvec*> chosen;
        if (kappa_dfs(ctx, subset, 0, ech, chosen, ops, out_rows)) return true;
        int i = k - 1;
        while (i >= 0 && subset[i] == m - k + i) --i;
        if (i < 0) return false;
        ++subset[i];
        for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
}

}  // namespace

KappaResult kappa(const IccsiInstance& inst, const SearchBudget& budget) {
    OpCounter ops{0, budget.max_ops};
    const Field& f = inst.field;
    KappaContext ctx{&inst, {}, {}};
    for (int i = 0; i < inst.m; ++i) {
        Subspace w = subspace_intersect(inst.side_space(i), inst.sender_space());
        auto elems = subspace_elements(w, ops);
        std::vector<fvec> rows;
        for (const fvec& e : elems) rows.push_back(vec_add(f, inst.R.row(i), e));
        std::sort(rows.begin(), rows.end());  // canonical certificate order
        ctx.coset_rows.push_back(std::move(rows));
        ctx.overlap.push_back(std::move(w));
    }
    int value = -1;
    std::vector<fvec> rows;
    for (int k = 1; k <= std::min(inst.m, inst.n); ++k) {
        if (kappa_rank_le(ctx, k, ops, &rows)) {
            value = k;
            break;
        }
    }
    if (value < 0) throw Error("internal: kappa search failed");
    FqMatrix a(f, inst.m, inst.n);
    FqMatrix ar(f, inst.m, inst.n);
    for (int i = 0; i < inst.m; ++i) {
        ar.set_row(i, rows[i]);
        a.set_row(i, vec_sub(f, rows[i], inst.R.row(i)));
    }
    FqMatrix reduced = rref(ar);
    FqMatrix encoder(f, value, inst.n);
    for (int i = 0; i < value; ++i) encoder.set_row(i, reduced.row(i));
    if (rank(ar) != value) throw Error("internal: kappa certificate rank mismatch");
    return {value, std::move(a), std::move(encoder)};
}

namespace {

bool covers_all(const std::vector<fvec>& rows, const std::vector<Subspace>& parts,
                const Field& f, int dim) {
    for (const Subspace& u : parts) {
        Echelon ech(f, dim);
        for (int i = 0; i < u.dim(); ++i) ech.insert(u.basis().row(i));
        for (const fvec& r : rows) ech.insert(r);
        if (ech.rank() != dim) return false;
    }
    return true;
}

bool multicast_dfs(std::vector<fvec>& rows, int remaining,
                   const std::vector<fvec>& candidates, size_t start,
                   const std::vector<Subspace>& parts, const Field& f, int dim) {
    if (remaining == 0) return covers_all(rows, parts, f, dim);
    // prune: each new row closes at most one dimension of each deficiency
    int worst = 0;
    for (const Subspace& u : parts) {
        Echelon ech(f, dim);
        for (int i = 0; i < u.dim(); ++i) ech.insert(u.basis().row(i));
        for (const fvec& r : rows) ech.insert(r);
        worst = std::max(worst, dim - ech.rank());
    }
    if (worst > remaining) return false;
    for (size_t c = start; c < candidates.size(); ++c) {
        rows.push_back(candidates[c]);
        if (multicast_dfs(rows, remaining - 1, candidates, c + 1, parts, f, dim))
            return true;
        rows.pop_back();
    }
    return false;
}

}  // namespace

FqMatrix multicast_matrix(const IccsiInstance& inst) {
    const Field& f = inst.field;
    const Subspace& sender = inst.sender_space();
    const int dim = sender.dim();
    std::vector<Subspace> parts;  // coordinates of X^(S) ∩ X^(i) over the sender basis
    int need = 0;
    for (int i = 0; i < inst.m; ++i) {
        Subspace w = subspace_intersect(inst.side_space(i), sender);
        std::vector<fvec> coords;
        for (int r = 0; r < w.dim(); ++r) coords.push_back(sender.coordinates(w.basis().row(r)));
        parts.push_back(Subspace::from_rows(FqMatrix::from_rows(f, coords, dim)));
        need = std::max(need, dim - w.dim());
    }
    std::vector<fvec> rows;
    bool found = false;
    if (f.q() >= dim && need > 0) {  // Vandermonde attempt: points 0..dim-1
        for (int r = 0; r < need; ++r) {
            fvec v(dim);
            for (int j = 0; j < dim; ++j) v[j] = f.pow(static_cast<felem>(j), r);
            rows.push_back(std::move(v));
        }
        found = covers_all(rows, parts, f, dim);
        if (!found) rows.clear();
    }
    if (!found && need > 0) {
        // canonical search over normalized coordinate vectors
        long double cnt = 1;
        for (int i = 0; i < dim; ++i) cnt *= f.q();
        if (cnt > (1 << 20)) throw BudgetExceeded("multicast search space too large");
        std::vector<fvec> candidates;
        long total = 1;
        for (int i = 0; i < dim; ++i) total *= f.q();
        for (long e = 1; e < total; ++e) {
            fvec v(dim);
            long idx = e;
            for (int i = 0; i < dim; ++i) {
                v[i] = static_cast<felem>(idx % f.q());
                idx /= f.q();
            }
            int first = -1;
            for (int i = 0; i < dim; ++i)
                if (v[i] != 0) {
                    first = i;
                    break;
                }
            if (v[first] != 1) continue;  // one representative per line
            candidates.push_back(std::move(v));
        }
        found = multicast_dfs(rows, need, candidates, 0, parts, f, dim);
        if (!found)
            throw FieldTooSmall("no multicast matrix with max(d_S - dim overlap) rows exists");
    }
    FqMatrix l(f, need, inst.n);
    for (int r = 0; r < need; ++r) l.set_row(r, vec_mat(rows[r], sender.basis()));
    return l;
}

FqMatrix multicast_matrix(const Digraph& g, const Field& f) {
    return multicast_matrix(embed_iccsi(from_digraph(g), f));
}

}  // namespace icbound

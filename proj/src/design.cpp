#include "icbound/design.hpp"

#include <algorithm>
#include <array>
#include <set>

namespace icbound {

FqMatrix Design::incidence(const Field& f) const {
    FqMatrix m(f, b(), v);
    for (int i = 0; i < b(); ++i)
        for (int p : blocks[i]) m.at(i, p - 1) = 1;
    return m;
}

namespace {

long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// all t-subsets of [v], calling fn(subset)
template <typename Fn>
void for_each_subset(int v, int t, Fn&& fn) {
    std::vector<int> s(t);
    for (int i = 0; i < t; ++i) s[i] = i + 1;
    if (t == 0) return;
    for (;;) {
        fn(s);
        int i = t - 1;
        while (i >= 0 && s[i] == v - t + i + 1) --i;
        if (i < 0) return;
        ++s[i];
        for (int j = i + 1; j < t; ++j) s[j] = s[j - 1] + 1;
    }
}

}  // namespace

Design validate_design(int v, std::vector<std::vector<int>> blocks, int t) {
    if (blocks.empty()) throw NotADesign("no blocks");
    if (t < 1 || t > v) throw NotADesign("t out of range");
    for (auto& b : blocks) {
        std::sort(b.begin(), b.end());
        if (std::adjacent_find(b.begin(), b.end()) != b.end())
            throw NotADesign("repeated point in a block");
        for (int p : b)
            if (p < 1 || p > v) throw NotADesign("point out of range");
    }
    int k = static_cast<int>(blocks[0].size());
    for (const auto& b : blocks)
        if (static_cast<int>(b.size()) != k) throw NotADesign("non-uniform block size");
    if (k < t) throw NotADesign("block size below t");

    long lambda = -1;
    for_each_subset(v, t, [&](const std::vector<int>& s) {
        long count = 0;
        for (const auto& b : blocks)
            if (std::includes(b.begin(), b.end(), s.begin(), s.end())) ++count;
        if (lambda < 0) lambda = count;
        if (count != lambda) throw NotADesign("lambda is not uniform over t-subsets");
    });
    if (lambda <= 0) throw NotADesign("lambda must be positive");

    Design d;
    d.v = v;
    d.blocks = std::move(blocks);
    d.t = t;
    d.k = k;
    d.lambda = lambda;
    long expect_b = lambda * binom(v, t) / binom(k, t);
    if (expect_b != d.b()) throw NotADesign("block count mismatch");
    d.r = lambda * binom(v - 1, t - 1) / binom(k - 1, t - 1);
    d.order = d.r - lambda;
    return d;
}

Design projective_plane(int r) {
    if (r < 2 || r > 16) throw NotPrimePower("plane order must be a prime power in [2,16]");
    long p = 0;
    int e = 0;
    for (long cand = 2; cand <= r; ++cand) {
        if (!is_prime(cand)) continue;
        long pw = cand;
        int ee = 1;
        while (pw < r) {
            pw *= cand;
            ++ee;
        }
        if (pw == r) {
            p = cand;
            e = ee;
            break;
        }
    }
    if (p == 0) throw NotPrimePower(std::to_string(r) + " is not a prime power");
    Field f = Field::make(p, e);
    // normalized homogeneous triples in increasing encoding order
    std::vector<std::array<felem, 3>> points;
    for (long a = 0; a < r; ++a)
        for (long b = 0; b < r; ++b)
            for (long c = 0; c < r; ++c) {
                std::array<felem, 3> pt = {static_cast<felem>(a), static_cast<felem>(b),
                                           static_cast<felem>(c)};
                felem first = pt[0] ? pt[0] : pt[1] ? pt[1] : pt[2];
                if (first != 1) continue;
                points.push_back(pt);
            }
    std::vector<std::vector<int>> blocks;
    for (const auto& line : points) {  // lines are the dual triples
        std::vector<int> blk;
        for (size_t i = 0; i < points.size(); ++i) {
            felem s = 0;
            for (int c = 0; c < 3; ++c) s = f.add(s, f.mul(line[c], points[i][c]));
            if (s == 0) blk.push_back(static_cast<int>(i) + 1);
        }
        blocks.push_back(std::move(blk));
    }
    return validate_design(static_cast<int>(points.size()), std::move(blocks), 2);
}

int p_rank(const Design& d, long p) {
    if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p));
    Field f = Field::make(p, 1);
    return rank(d.incidence(f));
}

KlemmReport klemm_check(const Design& d, long p) {
    if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p));
    KlemmReport rep;
    rep.p = p;
    rep.clause1_applicable = d.order % p == 0;
    if (!rep.clause1_applicable)
        throw Inapplicable("p does not divide the design order");
    Field f = Field::make(p, 1);
    FqMatrix inc = d.incidence(f);
    rep.rank = rank(inc);
    rep.clause1_holds = 2 * rep.rank <= d.b() + 1;
    rep.clause2_applicable = (d.lambda % p != 0) && (d.order % (p * p) != 0);
    if (rep.clause2_applicable) {
        // dual basis = kernel of the incidence map
        SolveResult s = solve(inc, fvec(inc.rows(), 0));
        rep.dual_contained = true;
        for (const fvec& kvec : s.kernel)
            if (!in_rowspace(kvec, inc)) rep.dual_contained = false;
        rep.rank_ge_half_v = 2 * rep.rank >= d.v;
    }
    return rep;
}

ContainsReport contains_design(const IcsiInstance& inst, const Design& d) {
    if (d.v != inst.n) throw DimensionMismatch("design points must match message count");
    ContainsReport rep;
    if (d.b() > inst.m) return rep;  // |B| <= m required
    rep.contains = true;
    rep.coincides = true;
    for (int i = 0; i < inst.m; ++i) {
        const std::vector<int>& side = inst.side_info[i];
        int w = -1, cw = -1;
        for (int bi = 0; bi < d.b(); ++bi) {
            const auto& blk = d.blocks[bi];
            if (!std::binary_search(blk.begin(), blk.end(), inst.f[i])) continue;
            std::vector<int> rest;
            for (int x : blk)
                if (x != inst.f[i]) rest.push_back(x);
            bool subset = std::includes(side.begin(), side.end(), rest.begin(), rest.end());
            if (subset && w < 0) w = bi;
            if (rest == side && cw < 0) cw = bi;
        }
        rep.witness.push_back(w);
        rep.coincide_witness.push_back(cw);
        if (w < 0) rep.contains = false;
        if (cw < 0) rep.coincides = false;
    }
    return rep;
}

DesignBoundResult design_bound(const IcsiInstance& inst, const Design& d, long p) {
    ContainsReport cr = contains_design(inst, d);
    if (!cr.contains) throw Inapplicable("instance does not contain the design");
    if (d.order % p != 0) throw Inapplicable("p does not divide the design order");
    Field f = Field::make(p, 1);
    FqMatrix inc = d.incidence(f);
    DesignBoundResult res{p_rank(d, p), FqMatrix(f, 0, inst.n)};
    // independent rows among the per-receiver witness blocks
    Echelon ech(f, inst.n);
    std::vector<fvec> rows;
    for (int i = 0; i < inst.m; ++i) {
        fvec row = inc.row(cr.witness[i]);
        if (ech.insert(row)) rows.push_back(row);
    }
    res.encoder = FqMatrix::from_rows(f, rows, inst.n);
    ValidityReport valid = is_valid_code(res.encoder, embed_iccsi(inst, f));
    if (!valid.valid) throw Error("internal: design encoder fails decodability");
    return res;
}

WeightReport weight_checks(const Design& d, long p, const SearchBudget& budget) {
    if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p));
    Field f = Field::make(p, 1);
    FqMatrix inc = d.incidence(f);
    FqMatrix reduced = rref(inc);
    int rk = rank(inc);
    long double total = 1;
    for (int i = 0; i < rk; ++i) {
        total *= p;
        if (total > static_cast<long double>(1ull << 22) ||
            total > static_cast<long double>(budget.max_ops))
            throw BudgetExceeded("p^rank too large to enumerate");
    }
    // scalar multiples of incidence rows (the expected minimal words)
    std::set<fvec> row_multiples;
    for (int i = 0; i < inc.rows(); ++i)
        for (long c = 1; c < p; ++c)
            row_multiples.insert(vec_scale(f, static_cast<felem>(c), inc.row(i)));

    WeightReport rep;
    rep.gap_lo = static_cast<int>(p) + 2;
    rep.gap_hi = static_cast<int>(2 * p) - 1;
    rep.gap_empty = true;
    rep.min_weight = d.v + 1;
    bool min_words_ok = true;
    std::uint64_t count = 1;
    for (int i = 0; i < rk; ++i) count *= static_cast<std::uint64_t>(p);
    rep.codewords = count;
    std::vector<felem> coef(rk, 0);
    for (std::uint64_t it = 0; it < count; ++it) {
        fvec w(d.v, 0);
        std::uint64_t idx = it;
        for (int i = 0; i < rk; ++i) {
            felem c = static_cast<felem>(idx % p);
            idx /= p;
            if (c != 0) w = vec_add(f, w, vec_scale(f, c, reduced.row(i)));
        }
        int wt = 0;
        for (felem x : w)
            if (x != 0) ++wt;
        if (wt == 0) continue;
        if (wt >= rep.gap_lo && wt <= rep.gap_hi) rep.gap_empty = false;
        if (wt < rep.min_weight) {
            rep.min_weight = wt;
            rep.min_weight_words = 1;
            min_words_ok = row_multiples.count(w) > 0;
        } else if (wt == rep.min_weight) {
            ++rep.min_weight_words;
            if (!row_multiples.count(w)) min_words_ok = false;
        }
    }
    rep.min_words_are_row_multiples =
        min_words_ok && rep.min_weight_words == row_multiples.size();
    return rep;
}

SecrecyReport secrecy_check(const IcsiInstance& inst, const Design& d, long p) {
    ContainsReport cr = contains_design(inst, d);
    if (!cr.coincides) throw Inapplicable("instance does not coincide with the design");
    if (d.order % p != 0) throw Inapplicable("p does not divide the design order");
    Field f = Field::make(p, 1);
    FqMatrix inc = d.incidence(f);
    SecrecyReport rep;
    rep.pass = true;
    for (int i = 0; i < inst.m; ++i) {
        std::vector<int> support = inst.side_info[i];
        support.push_back(inst.f[i]);
        std::sort(support.begin(), support.end());
        std::uint64_t combos = 1;
        for (size_t s = 0; s < support.size(); ++s) combos *= static_cast<std::uint64_t>(p);
        for (int j = 1; j <= inst.n; ++j) {
            if (std::binary_search(support.begin(), support.end(), j)) continue;
            ++rep.pairs_checked;
            for (std::uint64_t it = 0; it < combos; ++it) {
                ++rep.vectors_tried;
                fvec u(inst.n, 0);
                std::uint64_t idx = it;
                for (size_t s = 0; s < support.size(); ++s) {
                    u[support[s] - 1] = static_cast<felem>(idx % p);
                    idx /= p;
                }
                u[j - 1] = f.add(u[j - 1], 1);  // u + e_j
                if (in_rowspace(u, inc)) {
                    rep.pass = false;  // would contradict the secrecy theorem
                    return rep;
                }
            }
        }
    }
    return rep;
}

AdversaryReport adversary_check(const Design& d, const std::vector<int>& x_a, long p) {
    AdversaryReport rep;
    std::vector<int> xa = x_a;
    std::sort(xa.begin(), xa.end());
    xa.erase(std::unique(xa.begin(), xa.end()), xa.end());
    rep.size_ok = static_cast<long>(xa.size()) <= 2 * p - 2;
    rep.blocks_ok = true;
    for (const auto& blk : d.blocks) {
        int inter = 0;
        for (int x : xa)
            if (std::binary_search(blk.begin(), blk.end(), x)) ++inter;
        if (inter > p - 1) {
            rep.blocks_ok = false;
            rep.violating_block = blk;
            break;
        }
    }
    if (!rep.size_ok || !rep.blocks_ok) return rep;  // safety not asserted
    Field f = Field::make(p, 1);
    FqMatrix inc = d.incidence(f);
    rep.exhaustive_confirmed = true;
    std::uint64_t combos = 1;
    for (size_t s = 0; s < xa.size(); ++s) combos *= static_cast<std::uint64_t>(p);
    for (int j = 1; j <= d.v; ++j) {
        if (std::binary_search(xa.begin(), xa.end(), j)) continue;
        for (std::uint64_t it = 0; it < combos; ++it) {
            fvec u(d.v, 0);
            std::uint64_t idx = it;
            for (size_t s = 0; s < xa.size(); ++s) {
                u[xa[s] - 1] = static_cast<felem>(idx % p);
                idx /= p;
            }
            u[j - 1] = f.add(u[j - 1], 1);
            if (in_rowspace(u, inc)) {
                rep.exhaustive_confirmed = false;
                rep.safe = false;
                return rep;
            }
        }
    }
    rep.safe = true;
    return rep;
}

}  // namespace icbound

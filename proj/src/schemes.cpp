#include "icbound/schemes.hpp"

#include <algorithm>
#include <functional>
#include <random>

namespace icbound {

bool mds_exists(int s, int k, long q) {
    if (k < 1 || k > s) return false;
    if (k == 1 || k == s || k == s - 1) return true;
    return s <= q + 1;
}

FqMatrix rs_generator(int s, int k, const Field& f) {
    if (k < 1 || k > s) throw DimensionMismatch("need 1 <= k <= s");
    FqMatrix g(f, k, s);
    if (k == s) {
        g = FqMatrix::identity(f, s);
    } else if (k == 1) {
        for (int j = 0; j < s; ++j) g.at(0, j) = 1;
    } else if (k == s - 1) {
        for (int i = 0; i < k; ++i) {
            g.at(i, i) = 1;
            g.at(i, s - 1) = 1;
        }
    } else if (s <= f.q()) {
        for (int j = 0; j < s; ++j)
            for (int i = 0; i < k; ++i) g.at(i, j) = f.pow(static_cast<felem>(j), i);
    } else if (s == f.q() + 1) {
        for (int j = 0; j < s - 1; ++j)
            for (int i = 0; i < k; ++i) g.at(i, j) = f.pow(static_cast<felem>(j), i);
        g.at(k - 1, s - 1) = 1;  // the point at infinity
    } else {
        throw FieldTooSmall("no [s,k] MDS generator over GF(" + std::to_string(f.q()) + ")");
    }
    if (s <= 12) {
        std::vector<int> cols(k);
        for (int i = 0; i < k; ++i) cols[i] = i;
        for (;;) {
            if (rank(g.submatrix_cols(cols)) != k)
                throw Error("internal: generator fails the MDS minor check");
            int i = k - 1;
            while (i >= 0 && cols[i] == s - k + i) --i;
            if (i < 0) break;
            ++cols[i];
            for (int j = i + 1; j < k; ++j) cols[j] = cols[j - 1] + 1;
        }
    }
    return g;
}

namespace {

FqMatrix random_matrix(const Field& f, int rows, int cols, std::uint64_t seed) {
    std::mt19937_64 gen(seed * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull);
    FqMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<felem>(gen() % static_cast<std::uint64_t>(f.q()));
    return m;
}

FqMatrix lift_matrix(const FqMatrix& m, const Field& ext, const std::vector<felem>& map) {
    FqMatrix r(ext, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = map[m.at(i, j)];
    return r;
}

// least common denominator expansion of fractional weights into a multiset
struct Multiset {
    long r = 1;
    std::vector<int> items;  // certificate indices with multiplicity
};

Multiset expand_weights(const std::vector<Rat>& weights, const std::vector<Rat>& extra = {}) {
    std::vector<Rat> all = weights;
    all.insert(all.end(), extra.begin(), extra.end());
    Int lcd = common_denominator(all);
    Multiset ms;
    ms.r = static_cast<long>(lcd);
    for (size_t i = 0; i < weights.size(); ++i) {
        Rat scaled = weights[i] * Rat(lcd);
        if (!is_integer(scaled)) throw Error("internal: lcd expansion failed");
        long mult = static_cast<long>(rat_num(scaled));
        for (long t = 0; t < mult; ++t) ms.items.push_back(static_cast<int>(i));
    }
    return ms;
}

std::optional<fvec> solve_left(const FqMatrix& a, const fvec& w) {
    SolveResult s = solve(a.transpose(), w);
    if (!s.feasible) return std::nullopt;
    return s.particular;
}

Field extension_of(const Field& base, int e) {
    long double q = 1;
    for (int i = 0; i < base.ell() * e; ++i) {
        q *= base.p();
        if (q > (1 << 16)) throw FieldTooSmall("required extension exceeds 2^16");
    }
    return Field::make(base.p(), base.ell() * e);
}

// smallest base extension accepted by the probe
Field find_work_field(const Field& base, const std::function<bool(const Field&)>& ok) {
    for (int e = 1;; ++e) {
        Field cand = e == 1 ? base : extension_of(base, e);
        if (ok(cand)) return cand;
    }
}

struct Setting {
    IccsiInstance inst;
    FqMatrix x;         // n x t over the work field
    FqMatrix x_base;    // the base-field data
    bool extended = false;
};

Setting prepare(const IccsiInstance& base, const Field& work, int t, std::uint64_t seed) {
    FqMatrix xb = random_matrix(base.field, base.n, t, seed);
    if (work == base.field) return {base, xb, xb, false};
    auto map = base.field.embedding_into(work);
    return {lift_instance(base, work), lift_matrix(xb, work, map), xb, true};
}

fvec expected_value(const Setting& s, int receiver) {
    return vec_mat(s.inst.R.row(receiver), s.x);
}

FqMatrix lambda_of(const Setting& s, int receiver) { return s.inst.V[receiver].mul(s.x); }

// dot of a 1 x t row with a t-column of G
felem combine(const Field& f, const fvec& row, const FqMatrix& g, int col) {
    felem acc = 0;
    for (int i = 0; i < g.rows(); ++i) acc = f.add(acc, f.mul(row[i], g.at(i, col)));
    return acc;
}

void require_integral(const std::vector<Rat>& weights) {
    for (const Rat& w : weights)
        if (w != 1) throw PreconditionViolated("integral scheme needs a 0/1 certificate");
}

}  // namespace

SchemeTranscript scheme_clique_cover(const IccsiInstance& inst, const CoverCert& cert,
                                     bool fractional, std::uint64_t x_seed) {
    if (!fractional) {
        require_integral(cert.weights);
        Setting s = prepare(inst, inst.field, 1, x_seed);
        const Field& f = s.inst.field;
        SchemeTranscript tr(f);
        tr.scheme = "clique-cover";
        std::vector<felem> y;
        for (const fvec& v : cert.vectors) y.push_back(vec_mat(v, s.x)[0]);
        for (int j = 0; j < inst.m; ++j) {
            int ci = -1;
            for (size_t c = 0; c < cert.cliques.size(); ++c)
                if (cert.cliques[c] >> j & 1) {
                    ci = static_cast<int>(c);
                    break;
                }
            FqMatrix stacked =
                FqMatrix::from_rows(f, {cert.vectors[ci]}, inst.n).stack(s.inst.V[j]);
            auto comb = solve_left(stacked, s.inst.R.row(j));
            bool ok = false;
            if (comb) {
                FqMatrix lam = lambda_of(s, j);
                felem val = f.mul((*comb)[0], y[ci]);
                for (int r = 0; r < lam.rows(); ++r)
                    val = f.add(val, f.mul((*comb)[r + 1], lam.at(r, 0)));
                ok = val == expected_value(s, j)[0];
            }
            tr.traces.push_back({j, ok});
        }
        tr.words = static_cast<int>(cert.cliques.size());
        tr.subsymbols = tr.words;
        tr.rate = tr.words;
        return tr;
    }
    Multiset ms = expand_weights(cert.weights);
    const int s_len = static_cast<int>(ms.items.size());
    const long r = ms.r;
    Field work = find_work_field(inst.field, [&](const Field& f) {
        return mds_exists(s_len, static_cast<int>(r), f.q());
    });
    Setting s = prepare(inst, work, static_cast<int>(r), x_seed);
    const Field& f = s.inst.field;
    SchemeTranscript tr(f);
    tr.scheme = "clique-cover";
    tr.fractional = true;
    tr.extended = s.extended;
    tr.r1 = r;
    FqMatrix g = rs_generator(s_len, static_cast<int>(r), f);
    std::vector<felem> y;
    for (int i = 0; i < s_len; ++i) {
        fvec vx = vec_mat(cert.vectors[ms.items[i]], s.x);
        y.push_back(combine(f, vx, g, i));
    }
    for (int j = 0; j < inst.m; ++j) {
        std::vector<int> mine;
        for (int i = 0; i < s_len; ++i)
            if (cert.cliques[ms.items[i]] >> j & 1) mine.push_back(i);
        bool ok = static_cast<long>(mine.size()) == r;
        fvec w(mine.size(), 0);
        FqMatrix lam = lambda_of(s, j);
        for (size_t l = 0; l < mine.size() && ok; ++l) {
            const fvec& v = cert.vectors[ms.items[mine[l]]];
            FqMatrix stacked = FqMatrix::from_rows(f, {v}, inst.n).stack(s.inst.V[j]);
            auto comb = solve_left(stacked, s.inst.R.row(j));
            if (!comb) {
                ok = false;
                break;
            }
            // R_j X G^i  =  alpha (v X G^i) + a (Lambda_j G^i)
            felem val = f.mul((*comb)[0], y[mine[l]]);
            for (int rr = 0; rr < lam.rows(); ++rr) {
                felem lg = combine(f, lam.row(rr), g, mine[l]);
                val = f.add(val, f.mul((*comb)[rr + 1], lg));
            }
            w[l] = val;
        }
        if (ok) {
            FqMatrix gt = g.submatrix_cols(mine);
            auto sol = solve_left(gt, w);  // x * Gt = w
            ok = sol && *sol == expected_value(s, j);
        }
        tr.traces.push_back({j, ok});
    }
    tr.words = s_len;
    tr.subsymbols = s_len;
    tr.rate = Rat(s_len, r);
    return tr;
}

SchemeTranscript scheme_local_clique(const IccsiInstance& inst, const LocalCert& cert,
                                     bool fractional, std::uint64_t x_seed) {
    const auto& cover = cert.cover;
    if (!fractional) {
        require_integral(cover.weights);
        const int s_len = static_cast<int>(cover.cliques.size());
        if (!is_integer(cert.k)) throw PreconditionViolated("integral k required");
        const int k = static_cast<int>(rat_num(cert.k));
        Field work = find_work_field(
            inst.field, [&](const Field& f) { return mds_exists(s_len, k, f.q()); });
        Setting s = prepare(inst, work, 1, x_seed);
        const Field& f = s.inst.field;
        SchemeTranscript tr(f);
        tr.scheme = "local-clique";
        tr.extended = s.extended;
        FqMatrix g = rs_generator(s_len, k, f);
        // Y = sum_i (v_i X) G^i, a k-vector
        fvec y(k, 0);
        for (int i = 0; i < s_len; ++i) {
            felem vx = vec_mat(cover.vectors[i], s.x)[0];
            for (int row = 0; row < k; ++row)
                y[row] = f.add(y[row], f.mul(vx, g.at(row, i)));
        }
        for (int j = 0; j < inst.m; ++j) {
            FqMatrix lam = lambda_of(s, j);
            fvec yp = y;
            std::vector<int> unknown;
            bool ok = true;
            for (int i = 0; i < s_len && ok; ++i) {
                // strip the terms the receiver can compute itself
                auto coeff = solve_left(s.inst.V[j], cover.vectors[i]);
                if (coeff) {
                    felem vx = 0;
                    for (int rr = 0; rr < lam.rows(); ++rr)
                        vx = f.add(vx, f.mul((*coeff)[rr], lam.at(rr, 0)));
                    for (int row = 0; row < k; ++row)
                        yp[row] = f.sub(yp[row], f.mul(vx, g.at(row, i)));
                } else {
                    unknown.push_back(i);
                }
            }
            if (static_cast<int>(unknown.size()) > k) ok = false;
            int cj = -1;
            for (size_t c = 0; c < cover.cliques.size(); ++c)
                if (cover.cliques[c] >> j & 1) cj = static_cast<int>(c);
            felem vjx = 0;
            if (ok) {
                FqMatrix gt = g.submatrix_cols(unknown);
                SolveResult sol = solve(gt, yp);
                ok = sol.feasible;
                if (ok) {
                    auto pos = std::find(unknown.begin(), unknown.end(), cj);
                    ok = pos != unknown.end();
                    if (ok) vjx = sol.particular[pos - unknown.begin()];
                }
            }
            if (ok) {
                FqMatrix stacked =
                    FqMatrix::from_rows(f, {cover.vectors[cj]}, inst.n).stack(s.inst.V[j]);
                auto comb = solve_left(stacked, s.inst.R.row(j));
                ok = comb.has_value();
                if (ok) {
                    felem val = f.mul((*comb)[0], vjx);
                    for (int rr = 0; rr < lam.rows(); ++rr)
                        val = f.add(val, f.mul((*comb)[rr + 1], lam.at(rr, 0)));
                    ok = val == expected_value(s, j)[0];
                }
            }
            tr.traces.push_back({j, ok});
        }
        tr.words = s_len;
        tr.subsymbols = k;
        tr.rate = k;
        return tr;
    }
    // fractional: r = lcd(y, k), double MDS construction
    Multiset ms = expand_weights(cover.weights, {cert.k});
    const long r = ms.r;
    const int s_len = static_cast<int>(ms.items.size());
    Rat khat_r = cert.k * Rat(r);
    if (!is_integer(khat_r)) throw Error("internal: k not on the lcd grid");
    const int khat = static_cast<int>(rat_num(khat_r));
    Field work = find_work_field(inst.field, [&](const Field& f) {
        return mds_exists(s_len, khat, f.q()) && mds_exists(s_len, static_cast<int>(r), f.q());
    });
    Setting s = prepare(inst, work, static_cast<int>(r), x_seed);
    const Field& f = s.inst.field;
    SchemeTranscript tr(f);
    tr.scheme = "local-clique";
    tr.fractional = true;
    tr.extended = s.extended;
    tr.r1 = r;
    FqMatrix g = rs_generator(s_len, khat, f);
    FqMatrix h = rs_generator(s_len, static_cast<int>(r), f);
    // Y = sum_i (v_i X H^i) G^i, a khat-vector of sub-symbols
    fvec y(khat, 0);
    std::vector<felem> hterm(s_len, 0);
    for (int i = 0; i < s_len; ++i) {
        fvec vx = vec_mat(cover.vectors[ms.items[i]], s.x);
        hterm[i] = combine(f, vx, h, i);
        for (int row = 0; row < khat; ++row)
            y[row] = f.add(y[row], f.mul(hterm[i], g.at(row, i)));
    }
    for (int j = 0; j < inst.m; ++j) {
        FqMatrix lam = lambda_of(s, j);
        fvec yp = y;
        std::vector<int> unknown, mine;
        bool ok = true;
        for (int i = 0; i < s_len; ++i) {
            if (cover.cliques[ms.items[i]] >> j & 1) mine.push_back(i);
            auto coeff = solve_left(s.inst.V[j], cover.vectors[ms.items[i]]);
            if (coeff) {
                fvec vx(static_cast<int>(r), 0);
                for (int rr = 0; rr < lam.rows(); ++rr)
                    vx = vec_add(f, vx, vec_scale(f, (*coeff)[rr], lam.row(rr)));
                felem term = combine(f, vx, h, i);
                for (int row = 0; row < khat; ++row)
                    yp[row] = f.sub(yp[row], f.mul(term, g.at(row, i)));
            } else {
                unknown.push_back(i);
            }
        }
        ok = static_cast<int>(unknown.size()) <= khat &&
             static_cast<long>(mine.size()) == r;
        fvec rjh(mine.size(), 0);  // R_j X H^i for the receiver's cliques
        if (ok) {
            FqMatrix gt = g.submatrix_cols(unknown);
            SolveResult sol = solve(gt, yp);
            ok = sol.feasible;
            if (ok) {
                for (size_t l = 0; l < mine.size() && ok; ++l) {
                    auto pos = std::find(unknown.begin(), unknown.end(), mine[l]);
                    if (pos == unknown.end()) {
                        ok = false;
                        break;
                    }
                    felem vxh = sol.particular[pos - unknown.begin()];
                    const fvec& v = cover.vectors[ms.items[mine[l]]];
                    FqMatrix stacked =
                        FqMatrix::from_rows(f, {v}, inst.n).stack(s.inst.V[j]);
                    auto comb = solve_left(stacked, s.inst.R.row(j));
                    if (!comb) {
                        ok = false;
                        break;
                    }
                    felem val = f.mul((*comb)[0], vxh);
                    for (int rr = 0; rr < lam.rows(); ++rr) {
                        felem lh = combine(f, lam.row(rr), h, mine[l]);
                        val = f.add(val, f.mul((*comb)[rr + 1], lh));
                    }
                    rjh[l] = val;
                }
            }
        }
        if (ok) {
            FqMatrix ht = h.submatrix_cols(mine);
            auto sol = solve_left(ht, rjh);
            ok = sol && *sol == expected_value(s, j);
        }
        tr.traces.push_back({j, ok});
    }
    tr.words = s_len;
    tr.subsymbols = khat;
    tr.rate = Rat(khat, r);
    return tr;
}

namespace {

IccsiInstance sub_instance(const IccsiInstance& inst, rmask members) {
    const Field& f = inst.field;
    std::vector<fvec> rows;
    std::vector<FqMatrix> v;
    for (int j = 0; j < inst.m; ++j) {
        if (!(members >> j & 1)) continue;
        rows.push_back(inst.R.row(j));
        v.push_back(inst.V[j]);
    }
    FqMatrix rm = FqMatrix::from_rows(f, rows, inst.n);
    return IccsiInstance(f, inst.n, static_cast<int>(rows.size()), 1, rm, std::move(v), rm);
}

}  // namespace

SchemeTranscript scheme_partition_multicast(const IccsiInstance& inst,
                                            const MulticastCert& cert, bool fractional,
                                            std::uint64_t x_seed) {
    Multiset ms = fractional ? expand_weights(cert.weights) : Multiset{};
    if (!fractional) {
        require_integral(cert.weights);
        ms.r = 1;
        for (size_t i = 0; i < cert.groups.size(); ++i)
            ms.items.push_back(static_cast<int>(i));
    }
    const int s_len = static_cast<int>(ms.items.size());
    const long r = ms.r;
    // one work field must admit every group's multicast matrix and the MDS code
    std::vector<FqMatrix> ls;
    Field work = find_work_field(inst.field, [&](const Field& f) {
        if (fractional && !mds_exists(s_len, static_cast<int>(r), f.q())) return false;
        ls.clear();
        try {
            IccsiInstance lifted = f == inst.field ? inst : lift_instance(inst, f);
            for (rmask g : cert.groups) ls.push_back(multicast_matrix(sub_instance(lifted, g)));
        } catch (const FieldTooSmall&) {
            return false;
        } catch (const BudgetExceeded&) {
            return false;
        }
        return true;
    });
    Setting s = prepare(inst, work, static_cast<int>(r), x_seed);
    const Field& f = s.inst.field;
    SchemeTranscript tr(f);
    tr.scheme = "partition-multicast";
    tr.fractional = fractional;
    tr.extended = s.extended;
    tr.r1 = r;
    FqMatrix g = fractional ? rs_generator(s_len, static_cast<int>(r), f) : FqMatrix(f, 0, 0);
    // transmissions: per multiset entry i, the vector L_{M_i} X G^i (or L X)
    std::vector<fvec> words;
    int subsymbols = 0;
    for (int i = 0; i < s_len; ++i) {
        const FqMatrix& l = ls[ms.items[i]];
        FqMatrix lx = l.mul(s.x);  // d x r
        fvec word(l.rows(), 0);
        for (int row = 0; row < l.rows(); ++row)
            word[row] = fractional ? combine(f, lx.row(row), g, i) : lx.at(row, 0);
        subsymbols += l.rows();
        words.push_back(std::move(word));
    }
    for (int j = 0; j < inst.m; ++j) {
        std::vector<int> mine;
        for (int i = 0; i < s_len; ++i)
            if (cert.groups[ms.items[i]] >> j & 1) mine.push_back(i);
        bool ok = static_cast<long>(mine.size()) == r;
        FqMatrix lam = lambda_of(s, j);
        fvec w(mine.size(), 0);
        for (size_t l = 0; l < mine.size() && ok; ++l) {
            const FqMatrix& lm = ls[ms.items[mine[l]]];
            FqMatrix stacked = lm.stack(s.inst.V[j]);
            auto comb = solve_left(stacked, s.inst.R.row(j));
            if (!comb) {
                ok = false;
                break;
            }
            felem val = 0;
            for (int row = 0; row < lm.rows(); ++row)
                val = f.add(val, f.mul((*comb)[row], words[mine[l]][row]));
            if (fractional) {
                for (int rr = 0; rr < lam.rows(); ++rr) {
                    felem lg = combine(f, lam.row(rr), g, mine[l]);
                    val = f.add(val, f.mul((*comb)[lm.rows() + rr], lg));
                }
            } else {
                for (int rr = 0; rr < lam.rows(); ++rr)
                    val = f.add(val, f.mul((*comb)[lm.rows() + rr], lam.at(rr, 0)));
            }
            w[l] = val;
        }
        if (ok) {
            if (fractional) {
                FqMatrix gt = g.submatrix_cols(mine);
                auto sol = solve_left(gt, w);
                ok = sol && *sol == expected_value(s, j);
            } else {
                ok = w[0] == expected_value(s, j)[0];
            }
        }
        tr.traces.push_back({j, ok});
    }
    tr.words = s_len;
    tr.subsymbols = subsymbols;
    tr.rate = Rat(subsymbols, r);
    return tr;
}

SchemeTranscript scheme_partition_multicast_nomds(const IccsiInstance& inst,
                                                  const MulticastCert& cert,
                                                  const std::vector<int>& selection,
                                                  std::uint64_t x_seed) {
    Multiset ms = expand_weights(cert.weights);
    const int s_len = static_cast<int>(ms.items.size());
    const long r = ms.r;
    if (static_cast<int>(selection.size()) != s_len)
        throw DimensionMismatch("one sub-block index per multiset group");
    for (int x : selection)
        if (x < 0 || x >= r) throw PreconditionViolated("sub-block index out of range");
    std::vector<FqMatrix> ls;
    Field work = find_work_field(inst.field, [&](const Field& f) {
        ls.clear();
        try {
            IccsiInstance lifted = f == inst.field ? inst : lift_instance(inst, f);
            for (rmask g : cert.groups) ls.push_back(multicast_matrix(sub_instance(lifted, g)));
        } catch (const FieldTooSmall&) {
            return false;
        }
        return true;
    });
    Setting s = prepare(inst, work, static_cast<int>(r), x_seed);
    const Field& f = s.inst.field;
    SchemeTranscript tr(f);
    tr.scheme = "partition-multicast-nomds";
    tr.fractional = true;
    tr.extended = s.extended;
    tr.r1 = r;
    int subsymbols = 0;
    std::vector<fvec> words;
    for (int i = 0; i < s_len; ++i) {
        const FqMatrix& l = ls[ms.items[i]];
        FqMatrix lx = l.mul(s.x);
        fvec word(l.rows(), 0);
        for (int row = 0; row < l.rows(); ++row) word[row] = lx.at(row, selection[i]);
        subsymbols += l.rows();
        words.push_back(std::move(word));
    }
    for (int j = 0; j < inst.m; ++j) {
        FqMatrix lam = lambda_of(s, j);
        std::vector<bool> have(r, false);
        bool consistent = true;
        for (int i = 0; i < s_len; ++i) {
            if (!(cert.groups[ms.items[i]] >> j & 1)) continue;
            const FqMatrix& lm = ls[ms.items[i]];
            FqMatrix stacked = lm.stack(s.inst.V[j]);
            auto comb = solve_left(stacked, s.inst.R.row(j));
            if (!comb) {
                consistent = false;
                continue;
            }
            felem val = 0;
            for (int row = 0; row < lm.rows(); ++row)
                val = f.add(val, f.mul((*comb)[row], words[i][row]));
            for (int rr = 0; rr < lam.rows(); ++rr)
                val = f.add(val, f.mul((*comb)[lm.rows() + rr], lam.at(rr, selection[i])));
            if (val != expected_value(s, j)[selection[i]]) consistent = false;
            have[selection[i]] = true;
        }
        bool ok = consistent;
        for (long rr = 0; rr < r; ++rr)
            if (!have[rr]) ok = false;  // a sub-packet never arrived
        tr.traces.push_back({j, ok});
    }
    tr.words = s_len;
    tr.subsymbols = subsymbols;
    tr.rate = Rat(subsymbols, r);
    return tr;
}

SchemeTranscript scheme_partitioned_local(const IccsiInstance& inst,
                                          const PartitionedLocalCert& cert,
                                          bool fractional, std::uint64_t x_seed) {
    const auto& cover = cert.cover;
    if (!fractional) {
        require_integral(cert.groups.weights);
        require_integral(cover.weights);
        const int s_len = static_cast<int>(cover.cliques.size());
        std::vector<int> t(cert.t.size());
        for (size_t g = 0; g < cert.t.size(); ++g) {
            if (!is_integer(cert.t[g])) throw PreconditionViolated("integral t required");
            t[g] = static_cast<int>(rat_num(cert.t[g]));
        }
        Field work = find_work_field(inst.field, [&](const Field& f) {
            for (int tg : t)
                if (tg > 0 && !mds_exists(s_len, tg, f.q())) return false;
            return true;
        });
        Setting s = prepare(inst, work, 1, x_seed);
        const Field& f = s.inst.field;
        SchemeTranscript tr(f);
        tr.scheme = "partitioned-local";
        tr.extended = s.extended;
        int subsymbols = 0;
        std::vector<fvec> ywords;
        std::vector<FqMatrix> gs;
        for (size_t gi = 0; gi < cert.groups.groups.size(); ++gi) {
            FqMatrix g = t[gi] > 0 ? rs_generator(s_len, t[gi], f) : FqMatrix(f, 0, s_len);
            fvec y(t[gi], 0);
            for (int i = 0; i < s_len; ++i) {
                if (!(cover.cliques[i] & cert.groups.groups[gi])) continue;
                felem vx = vec_mat(cover.vectors[i], s.x)[0];
                for (int row = 0; row < t[gi]; ++row)
                    y[row] = f.add(y[row], f.mul(vx, g.at(row, i)));
            }
            subsymbols += t[gi];
            ywords.push_back(std::move(y));
            gs.push_back(std::move(g));
        }
        for (int j = 0; j < inst.m; ++j) {
            int gj = -1;
            for (size_t gi = 0; gi < cert.groups.groups.size(); ++gi)
                if (cert.groups.groups[gi] >> j & 1) gj = static_cast<int>(gi);
            FqMatrix lam = lambda_of(s, j);
            const FqMatrix& g = gs[gj];
            fvec yp = ywords[gj];
            std::vector<int> unknown;
            bool ok = true;
            for (int i = 0; i < s_len; ++i) {
                if (!(cover.cliques[i] & cert.groups.groups[gj])) continue;
                auto coeff = solve_left(s.inst.V[j], cover.vectors[i]);
                if (coeff) {
                    felem vx = 0;
                    for (int rr = 0; rr < lam.rows(); ++rr)
                        vx = f.add(vx, f.mul((*coeff)[rr], lam.at(rr, 0)));
                    for (int row = 0; row < t[gj]; ++row)
                        yp[row] = f.sub(yp[row], f.mul(vx, g.at(row, i)));
                } else {
                    unknown.push_back(i);
                }
            }
            int cj = -1;
            for (size_t c = 0; c < cover.cliques.size(); ++c)
                if (cover.cliques[c] >> j & 1) cj = static_cast<int>(c);
            felem vjx = 0;
            ok = static_cast<int>(unknown.size()) <= t[gj];
            if (ok) {
                FqMatrix gt = g.submatrix_cols(unknown);
                SolveResult sol = solve(gt, yp);
                ok = sol.feasible;
                if (ok) {
                    auto pos = std::find(unknown.begin(), unknown.end(), cj);
                    ok = pos != unknown.end();
                    if (ok) vjx = sol.particular[pos - unknown.begin()];
                }
            }
            if (ok) {
                FqMatrix stacked =
                    FqMatrix::from_rows(f, {cover.vectors[cj]}, inst.n).stack(s.inst.V[j]);
                auto comb = solve_left(stacked, s.inst.R.row(j));
                ok = comb.has_value();
                if (ok) {
                    felem val = f.mul((*comb)[0], vjx);
                    for (int rr = 0; rr < lam.rows(); ++rr)
                        val = f.add(val, f.mul((*comb)[rr + 1], lam.at(rr, 0)));
                    ok = val == expected_value(s, j)[0];
                }
            }
            tr.traces.push_back({j, ok});
        }
        tr.words = static_cast<int>(cert.groups.groups.size());
        tr.subsymbols = subsymbols;
        tr.rate = subsymbols;
        return tr;
    }
    // fractional: r1 = lcd(y, t), r2 = lcd(a); X split into r1*r2 sub-blocks
    std::vector<Rat> yt = cover.weights;
    yt.insert(yt.end(), cert.t.begin(), cert.t.end());
    Multiset cms = expand_weights(cover.weights, cert.t);
    Multiset gms = expand_weights(cert.groups.weights);
    const long r1 = cms.r, r2 = gms.r;
    const int s1 = static_cast<int>(cms.items.size());
    const int s2 = static_cast<int>(gms.items.size());
    std::vector<int> that(cert.t.size());
    for (size_t g = 0; g < cert.t.size(); ++g) {
        Rat v = cert.t[g] * Rat(r1);
        if (!is_integer(v)) throw Error("internal: t not on the lcd grid");
        that[g] = static_cast<int>(rat_num(v));
    }
    Field work = find_work_field(inst.field, [&](const Field& f) {
        if (!mds_exists(s1 * s2, static_cast<int>(r1 * r2), f.q())) return false;
        for (int i = 0; i < s2; ++i) {
            int tg = that[gms.items[i]];
            if (tg > 0 && !mds_exists(s1, tg, f.q())) return false;
        }
        return true;
    });
    Setting s = prepare(inst, work, static_cast<int>(r1 * r2), x_seed);
    const Field& f = s.inst.field;
    SchemeTranscript tr(f);
    tr.scheme = "partitioned-local";
    tr.fractional = true;
    tr.extended = s.extended;
    tr.r1 = r1;
    tr.r2 = r2;
    FqMatrix h = rs_generator(s1 * s2, static_cast<int>(r1 * r2), f);
    auto hcol = [&](int k, int i) { return k * s1 + i; };
    int subsymbols = 0;
    std::vector<fvec> ywords;
    std::vector<FqMatrix> gs;
    for (int k = 0; k < s2; ++k) {
        rmask gmask = cert.groups.groups[gms.items[k]];
        int tg = that[gms.items[k]];
        FqMatrix g = tg > 0 ? rs_generator(s1, tg, f) : FqMatrix(f, 0, s1);
        fvec y(tg, 0);
        for (int i = 0; i < s1; ++i) {
            if (!(cover.cliques[cms.items[i]] & gmask)) continue;
            fvec vx = vec_mat(cover.vectors[cms.items[i]], s.x);
            felem term = combine(f, vx, h, hcol(k, i));
            for (int row = 0; row < tg; ++row)
                y[row] = f.add(y[row], f.mul(term, g.at(row, i)));
        }
        subsymbols += tg;
        ywords.push_back(std::move(y));
        gs.push_back(std::move(g));
    }
    for (int j = 0; j < inst.m; ++j) {
        FqMatrix lam = lambda_of(s, j);
        std::vector<int> my_groups, my_cliques;
        for (int k = 0; k < s2; ++k)
            if (cert.groups.groups[gms.items[k]] >> j & 1) my_groups.push_back(k);
        for (int i = 0; i < s1; ++i)
            if (cover.cliques[cms.items[i]] >> j & 1) my_cliques.push_back(i);
        bool ok = static_cast<long>(my_groups.size()) == r2 &&
                  static_cast<long>(my_cliques.size()) == r1;
        std::vector<int> pair_cols;
        fvec rjh;
        for (size_t gl = 0; gl < my_groups.size() && ok; ++gl) {
            int k = my_groups[gl];
            rmask gmask = cert.groups.groups[gms.items[k]];
            int tg = that[gms.items[k]];
            fvec yp = ywords[k];
            std::vector<int> unknown;
            for (int i = 0; i < s1; ++i) {
                if (!(cover.cliques[cms.items[i]] & gmask)) continue;
                auto coeff = solve_left(s.inst.V[j], cover.vectors[cms.items[i]]);
                if (coeff) {
                    fvec vx(static_cast<int>(r1 * r2), 0);
                    for (int rr = 0; rr < lam.rows(); ++rr)
                        vx = vec_add(f, vx, vec_scale(f, (*coeff)[rr], lam.row(rr)));
                    felem term = combine(f, vx, h, hcol(k, i));
                    for (int row = 0; row < tg; ++row)
                        yp[row] = f.sub(yp[row], f.mul(term, gs[k].at(row, i)));
                } else {
                    unknown.push_back(i);
                }
            }
            if (static_cast<int>(unknown.size()) > tg) {
                ok = false;
                break;
            }
            FqMatrix gt = gs[k].submatrix_cols(unknown);
            SolveResult sol = solve(gt, yp);
            if (!sol.feasible) {
                ok = false;
                break;
            }
            for (int ci : my_cliques) {
                auto pos = std::find(unknown.begin(), unknown.end(), ci);
                if (pos == unknown.end()) {
                    ok = false;
                    break;
                }
                felem vxh = sol.particular[pos - unknown.begin()];
                const fvec& v = cover.vectors[cms.items[ci]];
                FqMatrix stacked = FqMatrix::from_rows(f, {v}, inst.n).stack(s.inst.V[j]);
                auto comb = solve_left(stacked, s.inst.R.row(j));
                if (!comb) {
                    ok = false;
                    break;
                }
                felem val = f.mul((*comb)[0], vxh);
                for (int rr = 0; rr < lam.rows(); ++rr) {
                    felem lh = combine(f, lam.row(rr), h, hcol(k, ci));
                    val = f.add(val, f.mul((*comb)[rr + 1], lh));
                }
                pair_cols.push_back(hcol(k, ci));
                rjh.push_back(val);
            }
        }
        if (ok) {
            FqMatrix ht = h.submatrix_cols(pair_cols);
            auto sol = solve_left(ht, rjh);
            ok = sol && *sol == expected_value(s, j);
        }
        tr.traces.push_back({j, ok});
    }
    tr.words = s2;
    tr.subsymbols = subsymbols;
    tr.rate = Rat(subsymbols, r1 * r2);
    return tr;
}

SchemeTranscript run_scheme(const IccsiInstance& inst, const SchemeSpec& spec,
                            std::uint64_t x_seed) {
    switch (spec.kind) {
        case SchemeKind::CliqueCover:
            return scheme_clique_cover(inst, spec.cover, spec.fractional, x_seed);
        case SchemeKind::LocalClique:
            return scheme_local_clique(inst, spec.local, spec.fractional, x_seed);
        case SchemeKind::PartitionMulticast:
            return scheme_partition_multicast(inst, spec.groups, spec.fractional, x_seed);
        case SchemeKind::PartitionedLocal:
            return scheme_partitioned_local(inst, spec.part, spec.fractional, x_seed);
    }
    throw Error("unknown scheme");
}

SimulationReport simulate(const IccsiInstance& inst, const SchemeSpec& spec, int trials,
                          std::uint64_t seed) {
    SimulationReport rep;
    rep.trials = trials;
    for (int t = 0; t < trials; ++t) {
        SchemeTranscript tr = run_scheme(inst, spec, seed + static_cast<std::uint64_t>(t));
        if (t == 0) {
            rep.words = tr.words;
            rep.subsymbols = tr.subsymbols;
            rep.rate = tr.rate;
            rep.extended = tr.extended;
            rep.r1 = tr.r1;
            rep.r2 = tr.r2;
        } else if (rep.subsymbols != tr.subsymbols) {
            throw SchemeFailure("transcript length varies across trials");
        }
        for (const auto& trace : tr.traces)
            if (!trace.ok) ++rep.failures;
    }
    return rep;
}

}  // namespace icbound

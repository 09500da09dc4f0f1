#include "icbound/instance.hpp"

#include <algorithm>
#include <set>

namespace icbound {

IcsiInstance::IcsiInstance(int n_, int m_, int t_, std::vector<int> f_,
                           std::vector<std::vector<int>> side)
    : n(n_), m(m_), t(t_), f(std::move(f_)), side_info(std::move(side)) {
    if (static_cast<int>(f.size()) != m || static_cast<int>(side_info.size()) != m)
        throw DimensionMismatch("f and side_info must have m entries");
    if (t < 1) throw PreconditionViolated("t must be positive");
    for (int i = 0; i < m; ++i) {
        if (f[i] < 1 || f[i] > n) throw PreconditionViolated("demand out of range");
        auto& s = side_info[i];
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (int x : s) {
            if (x < 1 || x > n) throw PreconditionViolated("side info out of range");
            if (x == f[i]) throw PreconditionViolated("f(i) must not lie in X_i");
        }
    }
}

IccsiInstance::IccsiInstance(Field f, int n_, int m_, int t_, FqMatrix vs,
                             std::vector<FqMatrix> v, FqMatrix r)
    : field(std::move(f)), n(n_), m(m_), t(t_), VS(std::move(vs)), V(std::move(v)),
      R(std::move(r)), sender_(Subspace::from_rows(VS)) {
    if (VS.cols() != n || R.cols() != n || R.rows() != m ||
        static_cast<int>(V.size()) != m)
        throw DimensionMismatch("instance matrix shapes");
    if (t < 1) throw PreconditionViolated("t must be positive");
    for (int i = 0; i < m; ++i) {
        if (V[i].cols() != n) throw DimensionMismatch("V^(i) column count");
        if (V[i].field() != field || R.field() != field || VS.field() != field)
            throw DimensionMismatch("field mismatch among instance matrices");
        side_.push_back(Subspace::from_rows(V[i]));
        if (!sender_.contains(R.row(i)))
            throw PreconditionViolated("R_i must lie in the sender space");
        if (side_[i].contains(R.row(i)))
            throw PreconditionViolated("R_i must not lie in X^(i)");
    }
}

int IccsiInstance::m_tilde() const {
    std::set<std::vector<felem>> distinct;
    for (int i = 0; i < m; ++i) distinct.insert(side_[i].basis().entries());
    return static_cast<int>(distinct.size());
}

Hypergraph to_hypergraph(const IcsiInstance& inst) {
    std::vector<std::pair<int, std::vector<int>>> arcs;
    for (int i = 0; i < inst.m; ++i) arcs.push_back({inst.f[i], inst.side_info[i]});
    return Hypergraph(inst.n, std::move(arcs));
}

Digraph to_digraph(const IcsiInstance& inst) {
    if (inst.m != inst.n) throw NotCanonical("m != n");
    for (int i = 0; i < inst.m; ++i)
        if (inst.f[i] != i + 1) throw NotCanonical("f is not the identity");
    std::set<std::pair<int, int>> arcs;
    for (int i = 0; i < inst.m; ++i)
        for (int j : inst.side_info[i]) arcs.insert({i + 1, j});
    return Digraph(inst.n, std::move(arcs));
}

IcsiInstance from_digraph(const Digraph& g) {
    std::vector<int> f(g.n);
    std::vector<std::vector<int>> side(g.n);
    for (int i = 1; i <= g.n; ++i) {
        f[i - 1] = i;
        for (int j = 1; j <= g.n; ++j)
            if (g.has_arc(i, j)) side[i - 1].push_back(j);
    }
    return IcsiInstance(g.n, g.n, 1, std::move(f), std::move(side));
}

IccsiInstance embed_iccsi(const IcsiInstance& inst, const Field& f) {
    FqMatrix vs = FqMatrix::identity(f, inst.n);
    FqMatrix r(f, inst.m, inst.n);
    std::vector<FqMatrix> v;
    for (int i = 0; i < inst.m; ++i) {
        r.at(i, inst.f[i] - 1) = 1;
        FqMatrix vi(f, static_cast<int>(inst.side_info[i].size()), inst.n);
        for (size_t k = 0; k < inst.side_info[i].size(); ++k)
            vi.at(static_cast<int>(k), inst.side_info[i][k] - 1) = 1;
        v.push_back(std::move(vi));
    }
    return IccsiInstance(f, inst.n, inst.m, inst.t, std::move(vs), std::move(v),
                         std::move(r));
}

namespace {

FqMatrix lift_matrix(const FqMatrix& m, const Field& ext, const std::vector<felem>& map) {
    FqMatrix r(ext, m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) r.at(i, j) = map[m.at(i, j)];
    return r;
}

}  // namespace

IccsiInstance lift_instance(const IccsiInstance& inst, const Field& ext) {
    auto map = inst.field.embedding_into(ext);
    std::vector<FqMatrix> v;
    for (const auto& vi : inst.V) v.push_back(lift_matrix(vi, ext, map));
    return IccsiInstance(ext, inst.n, inst.m, inst.t, lift_matrix(inst.VS, ext, map),
                         std::move(v), lift_matrix(inst.R, ext, map));
}

ValidityReport is_valid_code(const FqMatrix& l, const IccsiInstance& inst) {
    const Field& f = inst.field;
    FqMatrix lvs(f, 0, inst.n);
    if (l.cols() == inst.VS.rows()) {
        lvs = l.mul(inst.VS);
    } else if (l.cols() == inst.n) {
        lvs = l;
        for (int i = 0; i < l.rows(); ++i)
            if (!inst.sender_space().contains(l.row(i)))
                throw DimensionMismatch("encoder row outside the sender space");
    } else {
        throw DimensionMismatch("encoder must have d_S or n columns");
    }
    ValidityReport rep(lvs);
    rep.valid = true;
    for (int i = 0; i < inst.m; ++i) {
        FqMatrix stacked = lvs.stack(inst.V[i]);
        auto comb = row_combination(stacked, inst.R.row(i));
        if (!comb) {
            rep.valid = false;
            rep.witnesses.push_back(std::nullopt);
            continue;
        }
        ValidityReport::Witness w;
        w.b.assign(comb->begin(), comb->begin() + lvs.rows());
        w.a.assign(comb->begin() + lvs.rows(), comb->end());
        rep.witnesses.push_back(std::move(w));
    }
    return rep;
}

FqMatrix decode(const ValidityReport& rep, int receiver, const FqMatrix& y,
                const FqMatrix& lambda_i) {
    if (receiver < 0 || receiver >= static_cast<int>(rep.witnesses.size()))
        throw DimensionMismatch("receiver index");
    if (!rep.witnesses[receiver]) throw NotDecodable("no validity witness for receiver");
    const auto& w = *rep.witnesses[receiver];
    const Field& f = y.field();
    if (y.rows() != static_cast<int>(w.b.size()) ||
        lambda_i.rows() != static_cast<int>(w.a.size()))
        throw DimensionMismatch("received word shapes");
    FqMatrix out(f, 1, y.cols());
    for (int c = 0; c < y.cols(); ++c) {
        felem acc = 0;
        for (int r = 0; r < y.rows(); ++r) acc = f.add(acc, f.mul(w.b[r], y.at(r, c)));
        for (int r = 0; r < lambda_i.rows(); ++r)
            acc = f.add(acc, f.mul(w.a[r], lambda_i.at(r, c)));
        out.at(0, c) = acc;
    }
    return out;
}

}  // namespace icbound

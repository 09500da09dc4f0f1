#include <random>

#include "doctest.h"
#include "icbound/json_io.hpp"
#include "icbound/minrank.hpp"

using namespace icbound;

namespace {

IcsiInstance fano_instance() {
    return IcsiInstance(7, 7, 1, {1, 2, 3, 4, 5, 6, 7},
                        {{2, 3}, {6, 7}, {5, 7}, {2, 5}, {1, 6}, {3, 4}, {1, 4}});
}

FqMatrix fano_encoder(const Field& f) {
    // four independent incidence rows of the Fano blocks
    std::vector<std::vector<int>> blocks = {{1, 2, 3}, {2, 6, 7}, {3, 5, 7}, {2, 4, 5}};
    FqMatrix m(f, 4, 7);
    for (int i = 0; i < 4; ++i)
        for (int p : blocks[i]) m.at(i, p - 1) = 1;
    return m;
}

// Lemma-style decodability check, computed the brute-force way: some u
// supported on X_i with u + e_{f(i)} in <L>.
bool icsi_decodable_bruteforce(const FqMatrix& l, const IcsiInstance& inst, int i) {
    const Field& f = l.field();
    long combos = 1;
    for (size_t k = 0; k < inst.side_info[i].size(); ++k) combos *= f.q();
    for (long e = 0; e < combos; ++e) {
        fvec u(inst.n, 0);
        long idx = e;
        for (size_t k = 0; k < inst.side_info[i].size(); ++k) {
            u[inst.side_info[i][k] - 1] = static_cast<felem>(idx % f.q());
            idx /= f.q();
        }
        u[inst.f[i] - 1] = f.add(u[inst.f[i] - 1], 1);
        if (in_rowspace(u, l)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("to_hypergraph") {
    Hypergraph h = to_hypergraph(fano_instance());
    CHECK(h.n == 7);
    CHECK(h.hyperarcs.size() == 7);
    CHECK(h.hyperarcs[0].first == 1);
    CHECK(h.hyperarcs[0].second == std::vector<int>{2, 3});

    IcsiInstance lone(1, 1, 1, {1}, {{}});
    Hypergraph hl = to_hypergraph(lone);
    CHECK(hl.hyperarcs.size() == 1);
    CHECK(hl.hyperarcs[0].second.empty());
}

TEST_CASE("to_digraph") {
    Digraph g = to_digraph(fano_instance());
    CHECK(g.n == 7);
    CHECK(g.has_arc(1, 2));
    CHECK(g.has_arc(1, 3));
    CHECK_FALSE(g.has_arc(1, 4));

    IcsiInstance arcless(3, 3, 1, {1, 2, 3}, {{}, {}, {}});
    CHECK(to_digraph(arcless).arcs.empty());

    IcsiInstance fig4(4, 4, 1, {1, 2, 3, 4}, {{2}, {3, 4}, {1, 4}, {1, 3}});
    Digraph gf = to_digraph(fig4);
    CHECK(gf == Digraph(4, {{1, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 4}, {4, 1}, {4, 3}}));

    IcsiInstance swapped(2, 2, 1, {2, 1}, {{}, {}});
    CHECK_THROWS_AS(to_digraph(swapped), NotCanonical);
}

TEST_CASE("embed_iccsi") {
    Field f2 = Field::make(2, 1);
    IccsiInstance emb = embed_iccsi(fano_instance(), f2);
    CHECK(emb.d_S() == 7);
    for (int i = 0; i < 7; ++i) CHECK(emb.d(i) == 2);
    CHECK(emb.R.row(0) == fvec{1, 0, 0, 0, 0, 0, 0});

    IcsiInstance lone(2, 1, 1, {1}, {{}});
    CHECK(embed_iccsi(lone, f2).V[0].rows() == 0);

    // support condition: v in X^(i) iff supp(v) inside the side set
    IcsiInstance fig4(4, 4, 1, {1, 2, 3, 4}, {{2}, {3, 4}, {1, 4}, {1, 3}});
    IccsiInstance e4 = embed_iccsi(fig4, f2);
    CHECK(e4.side_space(1).contains({0, 0, 1, 1}));
    CHECK_FALSE(e4.side_space(1).contains({0, 1, 1, 0}));
}

TEST_CASE("is_valid_code") {
    Field f2 = Field::make(2, 1);
    IccsiInstance emb = embed_iccsi(fano_instance(), f2);
    CHECK(is_valid_code(FqMatrix::identity(f2, 7), emb).valid);
    CHECK(is_valid_code(fano_encoder(f2), emb).valid);
    CHECK_FALSE(is_valid_code(FqMatrix(f2, 1, 7), emb).valid);  // zero matrix
}

TEST_CASE("decode recovers the request") {
    Field f2 = Field::make(2, 1);
    IccsiInstance emb = embed_iccsi(fano_instance(), f2);
    ValidityReport rep = is_valid_code(fano_encoder(f2), emb);
    REQUIRE(rep.valid);
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 100; ++trial) {
        FqMatrix x(f2, 7, 1);
        for (int i = 0; i < 7; ++i) x.at(i, 0) = static_cast<felem>(gen() % 2);
        FqMatrix y = rep.lvs.mul(x);
        for (int i = 0; i < 7; ++i) {
            FqMatrix lambda = emb.V[i].mul(x);
            FqMatrix got = decode(rep, i, y, lambda);
            CHECK(got.at(0, 0) == x.at(i, 0));
        }
    }
}

TEST_CASE("decode on the single-clique example") {
    Field f2 = Field::make(2, 1);
    FqMatrix vs = FqMatrix::identity(f2, 2);
    IccsiInstance inst(f2, 2, 2, 1, vs, {FqMatrix(f2, 1, 2, {1, 1}), FqMatrix(f2, 1, 2, {0, 0})},
                       FqMatrix::identity(f2, 2));
    FqMatrix l(f2, 1, 2, {0, 1});  // the clique vector v_{1,2} = 01
    ValidityReport rep = is_valid_code(l, inst);
    REQUIRE(rep.valid);
    for (int x1 = 0; x1 < 2; ++x1)
        for (int x2 = 0; x2 < 2; ++x2) {
            FqMatrix x(f2, 2, 1);
            x.at(0, 0) = static_cast<felem>(x1);
            x.at(1, 0) = static_cast<felem>(x2);
            FqMatrix y = rep.lvs.mul(x);
            // receiver 1 adds its side packet X1+X2; receiver 2 reads Y
            CHECK(decode(rep, 0, y, inst.V[0].mul(x)).at(0, 0) == x.at(0, 0));
            CHECK(decode(rep, 1, y, inst.V[1].mul(x)).at(0, 0) == x.at(1, 0));
        }
    CHECK_THROWS_AS(decode(is_valid_code(FqMatrix(f2, 1, 2), inst), 0,
                           FqMatrix(f2, 1, 1), FqMatrix(f2, 1, 1)),
                    NotDecodable);
}

TEST_CASE("embedding preserves decodability") {
    // every encoder with at most 3 rows, checked against the brute-force
    // support-form condition on small instances
    Field f2 = Field::make(2, 1);
    std::vector<IcsiInstance> insts = {
        IcsiInstance(3, 3, 1, {1, 2, 3}, {{2}, {3}, {1}}),
        IcsiInstance(3, 3, 1, {1, 2, 3}, {{2, 3}, {}, {1}}),
        IcsiInstance(4, 4, 1, {1, 2, 3, 4}, {{2}, {3, 4}, {1, 4}, {1, 3}}),
    };
    std::mt19937_64 gen(17);
    for (const IcsiInstance& inst : insts) {
        IccsiInstance emb = embed_iccsi(inst, f2);
        long vecs = 1L << inst.n;
        for (int trial = 0; trial < 60; ++trial) {
            int rows = 1 + static_cast<int>(gen() % 3);
            FqMatrix l(f2, rows, inst.n);
            for (int r = 0; r < rows; ++r) {
                long v = static_cast<long>(gen() % vecs);
                for (int c = 0; c < inst.n; ++c) l.at(r, c) = (v >> c) & 1;
            }
            bool direct = true;
            for (int i = 0; i < inst.m; ++i)
                direct = direct && icsi_decodable_bruteforce(l, inst, i);
            CHECK(direct == is_valid_code(l, emb).valid);
        }
    }
}

TEST_CASE("decode is exhaustive-exact on tiny instances") {
    Field f2 = Field::make(2, 1);
    IcsiInstance inst(3, 3, 1, {1, 2, 3}, {{2}, {3}, {1}});
    IccsiInstance emb = embed_iccsi(inst, f2);
    FqMatrix l(f2, 2, 3, {1, 1, 0, 0, 1, 1});
    ValidityReport rep = is_valid_code(l, emb);
    REQUIRE(rep.valid);
    for (int bits = 0; bits < 8; ++bits) {
        FqMatrix x(f2, 3, 1);
        for (int i = 0; i < 3; ++i) x.at(i, 0) = (bits >> i) & 1;
        FqMatrix y = rep.lvs.mul(x);
        for (int i = 0; i < 3; ++i)
            CHECK(decode(rep, i, y, emb.V[i].mul(x)).at(0, 0) == x.at(i, 0));
    }
}

TEST_CASE("json round trip") {
    IcsiInstance icsi = fano_instance();
    ojson j = icsi_to_json(icsi);
    CHECK(icsi_from_json(j) == icsi);

    Field f4 = Field::make(2, 2);
    FqMatrix vs = FqMatrix::identity(f4, 2);
    IccsiInstance iccsi(f4, 2, 2, 1, vs, {FqMatrix(f4, 1, 2, {2, 1}), FqMatrix(f4, 0, 2)},
                        FqMatrix::identity(f4, 2));
    CHECK(iccsi_from_json(iccsi_to_json(iccsi)) == iccsi);

    Digraph g(4, {{1, 2}, {3, 1}});
    CHECK(digraph_from_json(digraph_to_json(g)) == g);

    Hypergraph h = to_hypergraph(icsi);
    Hypergraph h2 = hypergraph_from_json(hypergraph_to_json(h));
    CHECK(h2.n == h.n);
    CHECK(h2.hyperarcs == h.hyperarcs);
}

TEST_CASE("instance invariants are enforced") {
    CHECK_THROWS_AS(IcsiInstance(3, 1, 1, {1}, {{1, 2}}), PreconditionViolated);
    Field f2 = Field::make(2, 1);
    // R_1 inside X^(1) is rejected
    CHECK_THROWS_AS(IccsiInstance(f2, 2, 1, 1, FqMatrix::identity(f2, 2),
                                  {FqMatrix(f2, 1, 2, {1, 0})}, FqMatrix(f2, 1, 2, {1, 0})),
                    PreconditionViolated);
    // R_1 outside the sender space is rejected
    CHECK_THROWS_AS(IccsiInstance(f2, 2, 1, 1, FqMatrix(f2, 1, 2, {1, 0}),
                                  {FqMatrix(f2, 0, 2)}, FqMatrix(f2, 1, 2, {0, 1})),
                    PreconditionViolated);
}

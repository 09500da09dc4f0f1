#include <random>

#include "doctest.h"
#include "icbound/minrank.hpp"

using namespace icbound;

namespace {

IcsiInstance fano_instance() {
    return IcsiInstance(7, 7, 1, {1, 2, 3, 4, 5, 6, 7},
                        {{2, 3}, {6, 7}, {5, 7}, {2, 5}, {1, 6}, {3, 4}, {1, 4}});
}

Digraph complete(int n) {
    std::set<std::pair<int, int>> arcs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) arcs.insert({i, j});
    return Digraph(n, std::move(arcs));
}

Digraph random_digraph(int n, std::mt19937_64& gen, int density_pct = 40) {
    std::set<std::pair<int, int>> arcs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && static_cast<int>(gen() % 100) < density_pct) arcs.insert({i, j});
    return Digraph(n, std::move(arcs));
}

IccsiInstance random_iccsi(int n, int m, const Field& f, std::mt19937_64& gen) {
    for (;;) {
        FqMatrix vs = FqMatrix::identity(f, n);
        FqMatrix r(f, m, n);
        std::vector<FqMatrix> v;
        for (int i = 0; i < m; ++i) {
            while (is_zero(r.row(i))) {
                fvec row(n);
                for (int j = 0; j < n; ++j)
                    row[j] = static_cast<felem>(gen() % static_cast<std::uint64_t>(f.q()));
                r.set_row(i, row);
            }
            int d = static_cast<int>(gen() % n);
            FqMatrix vi(f, d, n);
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < n; ++j)
                    vi.at(k, j) = static_cast<felem>(gen() % static_cast<std::uint64_t>(f.q()));
            v.push_back(std::move(vi));
        }
        try {
            return IccsiInstance(f, n, m, 1, std::move(vs), std::move(v), std::move(r));
        } catch (const PreconditionViolated&) {
            // a request landed inside its side space; redraw
        }
    }
}

}  // namespace

TEST_CASE("minrank milestones") {
    Field f2 = Field::make(2, 1);
    auto fano = minrank(to_hypergraph(fano_instance()), f2);
    CHECK(fano.value == 4);
    CHECK(FittingPattern::of_hypergraph(to_hypergraph(fano_instance())).admits(fano.certificate));
    CHECK(rank(fano.certificate) == 4);

    Digraph dag(4, {{1, 2}, {2, 3}, {1, 3}});
    for (const Field& f : {f2, Field::make(3, 1)}) CHECK(minrank(dag, f).value == 4);

    for (int n = 2; n <= 4; ++n)
        CHECK(minrank(complete(n), f2).value == 1);
}

TEST_CASE("minrank agrees with plain enumeration") {
    // rank_distribution walks every fitting matrix; its smallest key is an
    // independent route to the minimum
    std::mt19937_64 gen(31);
    Field f2 = Field::make(2, 1), f3 = Field::make(3, 1);
    for (int it = 0; it < 25; ++it) {
        Digraph g = random_digraph(2 + static_cast<int>(gen() % 3), gen,
                                   30 + static_cast<int>(gen() % 50));
        for (const Field& f : {f2, f3}) {
            auto full = rank_distribution(g, f);
            auto mr = minrank(g, f);
            CHECK(mr.value == full.begin()->first);
            CHECK(FittingPattern::of_digraph(g).admits(mr.certificate));
            CHECK(rank(mr.certificate) == mr.value);
        }
    }
}

TEST_CASE("rank distribution") {
    Field f2 = Field::make(2, 1);
    auto fano = rank_distribution(to_hypergraph(fano_instance()), f2);
    std::map<int, std::uint64_t> expect = {{4, 1}, {5, 238}, {6, 6575}, {7, 9570}};
    CHECK(fano == expect);

    auto arcless = rank_distribution(Digraph(2, {}), f2);
    CHECK(arcless == std::map<int, std::uint64_t>{{2, 1}});

    auto two_circuit = rank_distribution(Digraph(2, {{1, 2}, {2, 1}}), f2);
    CHECK(two_circuit == std::map<int, std::uint64_t>{{1, 1}, {2, 3}});

    SearchBudget tiny;
    tiny.max_ops = 4;
    CHECK_THROWS_AS(rank_distribution(to_hypergraph(fano_instance()), f2, tiny),
                    BudgetExceeded);
}

TEST_CASE("kappa") {
    Field f2 = Field::make(2, 1);
    // no side information: kappa = rank(R)
    {
        FqMatrix vs = FqMatrix::identity(f2, 3);
        std::vector<FqMatrix> v(3, FqMatrix(f2, 0, 3));
        FqMatrix r(f2, 3, 3, {1, 0, 0, 1, 1, 0, 0, 1, 0});
        IccsiInstance inst(f2, 3, 3, 1, vs, v, r);
        CHECK(kappa(inst).value == rank(r));
    }
    // the two-receiver counterexample instance
    {
        FqMatrix vs = FqMatrix::identity(f2, 2);
        IccsiInstance inst(f2, 2, 2, 1, vs,
                           {FqMatrix(f2, 1, 2, {1, 1}), FqMatrix(f2, 1, 2, {0, 0})},
                           FqMatrix::identity(f2, 2));
        auto res = kappa(inst);
        CHECK(res.value == 1);
        // certificate rows stay in the allowed spaces and reach rank 1
        FqMatrix ar(f2, 2, 2);
        for (int i = 0; i < 2; ++i) {
            CHECK(inst.side_space(i).contains(res.a.row(i)));
            ar.set_row(i, vec_add(f2, res.a.row(i), inst.R.row(i)));
        }
        CHECK(rank(ar) == 1);
        CHECK(is_valid_code(res.encoder, inst).valid);
    }
    CHECK(kappa(embed_iccsi(fano_instance(), f2)).value == 4);
}

TEST_CASE("kappa equals hypergraph min-rank on embeddings") {
    std::mt19937_64 gen(47);
    Field f2 = Field::make(2, 1);
    for (int it = 0; it < 30; ++it) {
        int n = 2 + static_cast<int>(gen() % 3);
        int m = 1 + static_cast<int>(gen() % 4);
        std::vector<int> f(m);
        std::vector<std::vector<int>> side(m);
        for (int i = 0; i < m; ++i) {
            f[i] = 1 + static_cast<int>(gen() % n);
            for (int j = 1; j <= n; ++j)
                if (j != f[i] && gen() % 2) side[i].push_back(j);
        }
        IcsiInstance inst(n, m, 1, f, side);
        CHECK(kappa(embed_iccsi(inst, f2)).value ==
              minrank(to_hypergraph(inst), f2).value);
    }
}

TEST_CASE("multicast matrix") {
    Field f7 = Field::make(7, 1);
    std::mt19937_64 gen(53);
    for (int it = 0; it < 20; ++it) {
        Digraph g = random_digraph(2 + static_cast<int>(gen() % 4), gen, 60);
        int mindeg = g.n;
        for (int v = 1; v <= g.n; ++v) mindeg = std::min(mindeg, g.out_degree(v));
        FqMatrix l = multicast_matrix(g, f7);
        CHECK(l.rows() == g.n - mindeg);
        CHECK(is_valid_code(l, embed_iccsi(from_digraph(g), f7)).valid);
    }
    // every receiver missing exactly one dimension: a single row suffices
    Digraph nearly = complete(4);
    FqMatrix l = multicast_matrix(nearly, f7);
    CHECK(l.rows() == 1);
}

TEST_CASE("kappa upper bounds") {
    std::mt19937_64 gen(61);
    for (int it = 0; it < 20; ++it) {
        Field f = it % 2 ? Field::make(2, 1) : Field::make(3, 1);
        int n = 2 + static_cast<int>(gen() % 3);
        IccsiInstance inst = random_iccsi(n, 1 + static_cast<int>(gen() % 3), f, gen);
        auto res = kappa(inst);
        CHECK(res.value <= rank(inst.R));
        if (f.q() > inst.m_tilde()) {
            FqMatrix l = multicast_matrix(inst);
            int bound = 0;
            for (int i = 0; i < inst.m; ++i) bound = std::max(bound, n - inst.d(i));
            CHECK(l.rows() <= bound);
            CHECK(is_valid_code(l, inst).valid);
            CHECK(res.value <= l.rows());
        }
    }
}

TEST_CASE("sandwich and circuit packing bounds") {
    std::mt19937_64 gen(71);
    Field f2 = Field::make(2, 1), f3 = Field::make(3, 1);
    for (int it = 0; it < 30; ++it) {
        Digraph g = random_digraph(2 + static_cast<int>(gen() % 4), gen,
                                   20 + static_cast<int>(gen() % 60));
        for (const Field& f : {f2, f3}) {
            int mr = minrank(g, f).value;
            CHECK(alpha(g) <= mr);
            CHECK(mr <= clique_cover_number(g));
            CHECK(mr <= g.n - nu(g));
        }
    }
}

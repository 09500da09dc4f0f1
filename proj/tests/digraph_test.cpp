#include <random>

#include "doctest.h"
#include "icbound/minrank.hpp"

using namespace icbound;

namespace {

Digraph complete(int n) {
    std::set<std::pair<int, int>> arcs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j) arcs.insert({i, j});
    return Digraph(n, std::move(arcs));
}

// the 4-vertex digraph of the contraction example
Digraph contraction_example() {
    return Digraph(4, {{1, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 4}, {4, 1}, {4, 3}});
}

Digraph random_digraph(int n, std::mt19937_64& gen, int density_pct = 40) {
    std::set<std::pair<int, int>> arcs;
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            if (i != j && static_cast<int>(gen() % 100) < density_pct) arcs.insert({i, j});
    return Digraph(n, std::move(arcs));
}

bool fits(const FqMatrix& m, const Digraph& g) {
    return FittingPattern::of_digraph(g).admits(m);
}

}  // namespace

TEST_CASE("acyclicity") {
    CHECK(is_acyclic(Digraph(1, {})));
    CHECK_FALSE(is_acyclic(Digraph(3, {{1, 2}, {2, 3}, {3, 1}})));
    CHECK(is_acyclic(Digraph(3, {{1, 2}, {1, 3}, {2, 3}})));
    // a symmetric digraph is a graph: a lone edge does not count as a circuit
    CHECK(is_acyclic(Digraph(2, {{1, 2}, {2, 1}})));
    std::set<std::pair<int, int>> tri = {{1, 2}, {2, 1}, {2, 3}, {3, 2}, {1, 3}, {3, 1}};
    CHECK_FALSE(is_acyclic(Digraph(3, tri)));
}

TEST_CASE("graph parameters") {
    Digraph dag(4, {{1, 2}, {2, 3}, {1, 4}});
    CHECK(tau(dag) == 0);
    CHECK(nu(dag) == 0);
    CHECK(alpha(dag) == 4);

    Digraph c3(3, {{1, 2}, {2, 3}, {3, 1}});
    CHECK(tau(c3) == 1);
    CHECK(nu(c3) == 1);
    CHECK(alpha(c3) == 2);
    CHECK(clique_cover_number(c3) == 3);  // no 2-clique in a directed 3-cycle

    Digraph k4 = complete(4);
    CHECK(tau(k4) == 3);
    CHECK(nu(k4) == 1);  // graph circuits need >= 3 vertices
    CHECK(clique_cover_number(k4) == 1);

    std::mt19937_64 gen(1);
    CHECK_THROWS_AS(tau(random_digraph(17, gen)), TooLarge);
}

TEST_CASE("parameter invariants on random digraphs") {
    std::mt19937_64 gen(99);
    for (int it = 0; it < 60; ++it) {
        Digraph g = random_digraph(2 + static_cast<int>(gen() % 5), gen,
                                   20 + static_cast<int>(gen() % 60));
        CHECK(alpha(g) + tau(g) == g.n);
        CHECK(nu(g) <= tau(g));
    }
}

TEST_CASE("contract_arc") {
    Digraph g = contraction_example();
    Digraph gp = contract_arc(g, 1, 2);
    CHECK(gp == complete(3));

    Digraph path(2, {{1, 2}});
    Digraph single = contract_arc(path, 1, 2);
    CHECK(single.n == 1);
    CHECK(single.arcs.empty());

    CHECK_THROWS_AS(contract_arc(g, 2, 3), PreconditionViolated);  // out-degree 2
    Digraph pair(2, {{1, 2}, {2, 1}});
    CHECK_THROWS_AS(contract_arc(pair, 1, 2), PreconditionViolated);  // reciprocal arc
    CHECK_THROWS_AS(contract_arc(g, 3, 2), PreconditionViolated);     // not an arc
}

TEST_CASE("contraction preserves min-rank minus one") {
    std::mt19937_64 gen(2024);
    Field f2 = Field::make(2, 1), f3 = Field::make(3, 1);
    int done = 0;
    while (done < 40) {
        Digraph g = random_digraph(2 + static_cast<int>(gen() % 4), gen,
                                   25 + static_cast<int>(gen() % 50));
        int i1 = 0, i2 = 0;
        for (const auto& [u, v] : g.arcs)
            if (g.out_degree(u) == 1 && !g.has_arc(v, u)) {
                i1 = u;
                i2 = v;
                break;
            }
        if (!i1) continue;
        Digraph gp = contract_arc(g, i1, i2);
        for (const Field& f : {f2, f3}) {
            int before = minrank(g, f).value;
            int after = gp.n == 0 ? 0 : minrank(gp, f).value;
            CHECK(before == after + 1);
        }
        ++done;
    }
}

TEST_CASE("decide min-rank n-1") {
    Field f5 = Field::make(5, 1);
    Digraph c3(3, {{1, 2}, {2, 3}, {3, 1}});
    auto yes = decide_minrank_n_minus_1(c3, f5);
    CHECK(yes.kind == TauDecision::MinrankIsNMinus1);
    REQUIRE(yes.certificate);
    CHECK(rank(*yes.certificate) == 2);
    CHECK(fits(*yes.certificate, c3));

    Digraph dag(3, {{1, 2}, {2, 3}});
    CHECK(decide_minrank_n_minus_1(dag, f5).kind == TauDecision::Acyclic);

    auto no = decide_minrank_n_minus_1(complete(4), f5);
    CHECK(no.kind == TauDecision::TauAtLeast2);
    CHECK(no.reason.find("3") != std::string::npos);

    CHECK_THROWS_AS(decide_minrank_n_minus_1(complete(4), Field::make(3, 1)),
                    FieldTooSmall);
}

TEST_CASE("reduce_tau2 on a circuit packing") {
    // a triangle plus a disjoint 2-circuit: tau = 2, nu = 2
    Digraph g(5, {{1, 2}, {2, 3}, {3, 1}, {4, 5}, {5, 4}});
    CHECK(tau(g) == 2);
    Field f7 = Field::make(7, 1);
    FqMatrix m = reduce_tau2(g, f7);
    CHECK(rank(m) == 3);
    CHECK(fits(m, g));
    CHECK(minrank(g, f7).value == 3);  // brute-force agreement
}

TEST_CASE("reduce_tau2 via contraction on the corrected-scheme graph") {
    Digraph fig4 = contraction_example();
    CHECK(tau(fig4) == 2);
    Field f5 = Field::make(5, 1);
    FqMatrix m = reduce_tau2(fig4, f5);
    CHECK(rank(m) == 2);
    CHECK(fits(m, fig4));
    CHECK(minrank(fig4, f5).value == 2);
}

TEST_CASE("reduce_tau2 skips contraction when out-degrees allow") {
    Digraph k3 = complete(3);  // tau = 2, every out-degree 2
    Field f5 = Field::make(5, 1);
    FqMatrix m = reduce_tau2(k3, f5);
    CHECK(rank(m) == 1);
    CHECK(fits(m, k3));
}

TEST_CASE("reduce_tau2 rejects the wrong tau") {
    Field f7 = Field::make(7, 1);
    CHECK_THROWS_AS(reduce_tau2(Digraph(3, {{1, 2}, {2, 3}, {3, 1}}), f7),
                    PreconditionViolated);
    CHECK_THROWS_AS(reduce_tau2(complete(4), f7), PreconditionViolated);
    CHECK_THROWS_AS(reduce_tau2(complete(3), Field::make(2, 1)), FieldTooSmall);
}

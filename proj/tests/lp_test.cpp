#include <optional>
#include <random>

#include "doctest.h"
#include "icbound/lp.hpp"

using namespace icbound;
using LP = LinearProgram;

namespace {

// Oracle for LPs of the form min c x, E x = b, 0 <= x <= 1: enumerate every
// basic solution of the equality system and keep the best feasible one.
std::optional<Rat> lp_vertex_oracle(const LP& p) {
    const int n = p.num_vars;
    const int m = static_cast<int>(p.constraints.size());
    std::optional<Rat> best;
    std::vector<int> cols(m);
    for (int i = 0; i < m; ++i) cols[i] = i;
    auto consider = [&](const std::vector<int>& basis) {
        // solve E_B x_B = b by rational elimination
        std::vector<std::vector<Rat>> a(m, std::vector<Rat>(m + 1));
        for (int r = 0; r < m; ++r) {
            for (int c = 0; c < m; ++c) a[r][c] = p.constraints[r].coeffs[basis[c]];
            a[r][m] = p.constraints[r].rhs;
        }
        for (int c = 0; c < m; ++c) {
            int piv = -1;
            for (int r = c; r < m; ++r)
                if (a[r][c] != 0) {
                    piv = r;
                    break;
                }
            if (piv < 0) return;  // singular
            std::swap(a[c], a[piv]);
            for (int r = 0; r < m; ++r) {
                if (r == c || a[r][c] == 0) continue;
                Rat f = a[r][c] / a[c][c];
                for (int k = c; k <= m; ++k) a[r][k] -= f * a[c][k];
            }
        }
        std::vector<Rat> x(n, Rat(0));
        for (int c = 0; c < m; ++c) {
            Rat v = a[c][m] / a[c][c];
            if (v < 0 || v > 1) return;
            x[basis[c]] = v;
        }
        Rat obj = 0;
        for (int j = 0; j < n; ++j) obj += p.objective[j] * x[j];
        if (!best || obj < *best) best = obj;
    };
    for (;;) {
        consider(cols);
        int i = m - 1;
        while (i >= 0 && cols[i] == n - m + i) --i;
        if (i < 0) break;
        ++cols[i];
        for (int j = i + 1; j < m; ++j) cols[j] = cols[j - 1] + 1;
    }
    return best;
}

struct PartitionProgram {
    int elements = 0;
    std::vector<std::uint32_t> sets;
    std::vector<Rat> costs;
};

LP to_lp(const PartitionProgram& pp, bool integral) {
    LP p(static_cast<int>(pp.sets.size()));
    for (size_t s = 0; s < pp.sets.size(); ++s) {
        p.objective[s] = pp.costs[s];
        p.upper[s] = Rat(1);
        p.integral[s] = integral;
    }
    for (int j = 0; j < pp.elements; ++j) {
        std::vector<Rat> row(pp.sets.size(), Rat(0));
        for (size_t s = 0; s < pp.sets.size(); ++s)
            if (pp.sets[s] >> j & 1) row[s] = 1;
        p.add_constraint(std::move(row), LP::Rel::Eq, Rat(1));
    }
    return p;
}

// exhaustive search over exact covers drawn from the family
std::optional<Rat> partition_oracle(const PartitionProgram& pp, std::uint32_t covered = 0,
                                    Rat cost = Rat(0)) {
    std::uint32_t full = (1u << pp.elements) - 1;
    if (covered == full) return cost;
    int j = 0;
    while (covered >> j & 1) ++j;
    std::optional<Rat> best;
    for (size_t s = 0; s < pp.sets.size(); ++s) {
        if (!(pp.sets[s] >> j & 1) || (pp.sets[s] & covered)) continue;
        auto sub = partition_oracle(pp, covered | pp.sets[s], cost + pp.costs[s]);
        if (sub && (!best || *sub < *best)) best = sub;
    }
    return best;
}

PartitionProgram random_partition_program(std::mt19937_64& gen) {
    PartitionProgram pp;
    pp.elements = 3 + static_cast<int>(gen() % 6);  // up to 8
    std::uint32_t full = (1u << pp.elements) - 1;
    std::set<std::uint32_t> sets;
    for (int j = 0; j < pp.elements; ++j) sets.insert(1u << j);  // keep it feasible
    int extra = 3 + static_cast<int>(gen() % 8);
    for (int e = 0; e < extra; ++e) sets.insert(1 + static_cast<std::uint32_t>(gen()) % full);
    for (std::uint32_t s : sets) {
        pp.sets.push_back(s);
        pp.costs.push_back(Rat(1 + static_cast<long>(gen() % 9)));
    }
    return pp;
}

}  // namespace

TEST_CASE("scalar basics") {
    LP p(1);
    p.objective = {Rat(1)};
    p.add_constraint({Rat(1)}, LP::Rel::Ge, Rat(3));
    CHECK(lp_solve(p).objective == 3);
    CHECK(ilp_solve(p).objective == 3);
}

TEST_CASE("infeasible and unbounded") {
    LP inf(1);
    inf.add_constraint({Rat(1)}, LP::Rel::Ge, Rat(2));
    inf.upper[0] = Rat(1);
    CHECK_THROWS_AS(lp_solve(inf), Infeasible);

    LP unb(1);
    unb.objective = {Rat(-1)};
    CHECK_THROWS_AS(lp_solve(unb), Unbounded);

    LP intinf(1);
    intinf.objective = {Rat(1)};
    intinf.integral = {true};
    intinf.add_constraint({Rat(2)}, LP::Rel::Eq, Rat(1));
    CHECK_THROWS_AS(ilp_solve(intinf), Infeasible);
}

TEST_CASE("fig-4 partition multicast program") {
    // hand-built weights d_M for the four-receiver instance
    std::map<std::uint32_t, int> d = {
        {0b0001, 1}, {0b0010, 1}, {0b0100, 1}, {0b1000, 1},
        {0b0011, 2}, {0b0101, 2}, {0b1001, 2}, {0b0110, 2}, {0b1010, 2}, {0b1100, 1},
        {0b0111, 2}, {0b1011, 2}, {0b1101, 3}, {0b1110, 2}, {0b1111, 3}};
    PartitionProgram pp;
    pp.elements = 4;
    for (const auto& [mask, cost] : d) {
        pp.sets.push_back(mask);
        pp.costs.push_back(Rat(cost));
    }
    LP relaxed = to_lp(pp, false);
    LpSolution lp = lp_solve(relaxed);
    CHECK(lp.objective == Rat(5, 2));  // exact rational, not an approximation
    CHECK(rat_to_string(lp.objective) == "5/2");
    CHECK(ilp_solve(to_lp(pp, true)).objective == 3);
    auto oracle = lp_vertex_oracle(relaxed);
    REQUIRE(oracle);
    CHECK(*oracle == Rat(5, 2));
}

TEST_CASE("five-cycle fractional cover program") {
    // variables: 5 edges then 5 singletons of the cycle cover polytope
    PartitionProgram pp;
    pp.elements = 5;
    for (int i = 0; i < 5; ++i) {
        pp.sets.push_back((1u << i) | (1u << ((i + 1) % 5)));
        pp.costs.push_back(Rat(1));
    }
    for (int i = 0; i < 5; ++i) {
        pp.sets.push_back(1u << i);
        pp.costs.push_back(Rat(1));
    }
    LP relaxed = to_lp(pp, false);
    CHECK(lp_solve(relaxed).objective == Rat(5, 2));
    CHECK(ilp_solve(to_lp(pp, true)).objective == 3);
    auto oracle = lp_vertex_oracle(relaxed);
    REQUIRE(oracle);
    CHECK(*oracle == Rat(5, 2));
}

TEST_CASE("random set-partition programs match the exhaustive oracle") {
    std::mt19937_64 gen(404);
    for (int it = 0; it < 15; ++it) {
        PartitionProgram pp = random_partition_program(gen);
        LpSolution ip = ilp_solve(to_lp(pp, true));
        auto oracle = partition_oracle(pp);
        REQUIRE(oracle);
        CHECK(ip.objective == *oracle);
        CHECK(lp_solve(to_lp(pp, false)).objective <= ip.objective);
    }
}

TEST_CASE("determinism") {
    std::mt19937_64 gen(777);
    for (int it = 0; it < 5; ++it) {
        PartitionProgram pp = random_partition_program(gen);
        LpSolution a = lp_solve(to_lp(pp, false));
        LpSolution b = lp_solve(to_lp(pp, false));
        CHECK(a.assignment == b.assignment);
        LpSolution ia = ilp_solve(to_lp(pp, true));
        LpSolution ib = ilp_solve(to_lp(pp, true));
        CHECK(ia.assignment == ib.assignment);
    }
}

TEST_CASE("mixed relations and bounds") {
    // min x + y  s.t.  x + y >= 3/2, x - y = 1/2, y <= 2
    LP p(2);
    p.objective = {Rat(1), Rat(1)};
    p.upper[1] = Rat(2);
    p.add_constraint({Rat(1), Rat(1)}, LP::Rel::Ge, Rat(3, 2));
    p.add_constraint({Rat(1), Rat(-1)}, LP::Rel::Eq, Rat(1, 2));
    LpSolution s = lp_solve(p);
    CHECK(s.objective == Rat(3, 2));
    CHECK(s.assignment[0] == Rat(1));
    CHECK(s.assignment[1] == Rat(1, 2));
}

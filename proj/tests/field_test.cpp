#include <random>
#include <set>

#include "doctest.h"
#include "icbound/matrix.hpp"

using namespace icbound;

namespace {

FqMatrix fano_incidence(const Field& f) {
    std::vector<std::vector<int>> blocks = {{1, 2, 3}, {2, 6, 7}, {3, 5, 7}, {2, 4, 5},
                                            {1, 5, 6}, {3, 4, 6}, {1, 4, 7}};
    FqMatrix m(f, 7, 7);
    for (int i = 0; i < 7; ++i)
        for (int p : blocks[i]) m.at(i, p - 1) = 1;
    return m;
}

FqMatrix random_mat(const Field& f, int rows, int cols, std::mt19937_64& gen) {
    FqMatrix m(f, rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m.at(i, j) = static_cast<felem>(gen() % static_cast<std::uint64_t>(f.q()));
    return m;
}

// every element of a subspace, by brute-force combination
std::set<fvec> all_elements(const Subspace& s) {
    const Field& f = s.field();
    std::set<fvec> out;
    long combos = 1;
    for (int i = 0; i < s.dim(); ++i) combos *= f.q();
    for (long e = 0; e < combos; ++e) {
        fvec v(s.ambient_dim(), 0);
        long idx = e;
        for (int i = 0; i < s.dim(); ++i) {
            felem c = static_cast<felem>(idx % f.q());
            idx /= f.q();
            if (c) v = vec_add(f, v, vec_scale(f, c, s.basis().row(i)));
        }
        out.insert(v);
    }
    return out;
}

}  // namespace

TEST_CASE("field construction") {
    Field f2 = Field::make(2, 1);
    CHECK(f2.q() == 2);
    CHECK(f2.modulus() == std::vector<int>{0, 1});  // x

    Field f4 = Field::make(2, 2, std::vector<int>{1, 1, 1});
    CHECK(f4.q() == 4);
    // alpha^2 = alpha + 1 with alpha encoded as 2
    CHECK(f4.mul(2, 2) == f4.add(2, 1));
    CHECK(Field::make(2, 2).modulus() == std::vector<int>{1, 1, 1});  // default pick

    Field f3 = Field::make(3, 1);
    CHECK(f3.q() == 3);
    CHECK(f3.mul(2, 2) == 1);

    CHECK_THROWS_AS(Field::make(4, 1), NonPrime);
    CHECK_THROWS_AS(Field::make(2, 2, std::vector<int>{1, 0, 1}), ReduciblePolynomial);
}

TEST_CASE("field arithmetic identities") {
    for (auto [p, ell] : {std::pair<long, int>{2, 3}, {3, 2}, {5, 1}, {2, 4}}) {
        Field f = Field::make(p, ell);
        for (long a = 0; a < f.q(); ++a) {
            felem x = static_cast<felem>(a);
            CHECK(f.add(x, f.neg(x)) == 0);
            if (x != 0) CHECK(f.mul(x, f.inv(x)) == 1);
            CHECK(f.pow(x, f.q() - 1) == (x == 0 ? 0 : 1));
        }
    }
}

TEST_CASE("rank") {
    Field f2 = Field::make(2, 1);
    CHECK(rank(fano_incidence(f2)) == 4);
    CHECK(rank(FqMatrix::identity(Field::make(3, 1), 5)) == 5);
    FqMatrix ones(f2, 3, 3, std::vector<felem>(9, 1));
    CHECK(rank(ones) == 1);

    std::mt19937_64 gen(7);
    for (int it = 0; it < 40; ++it) {
        Field f = it % 2 ? f2 : Field::make(3, 1);
        FqMatrix m = random_mat(f, 1 + static_cast<int>(gen() % 5),
                                1 + static_cast<int>(gen() % 5), gen);
        CHECK(rank(m) == rank(m.transpose()));
    }
}

TEST_CASE("solve and rowspace membership") {
    Field f2 = Field::make(2, 1);
    FqMatrix basis = FqMatrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}}, 3);
    CHECK(in_rowspace({1, 0, 1}, basis));
    CHECK_FALSE(in_rowspace({1, 0, 0}, basis));
    CHECK_FALSE(in_rowspace({1, 0, 0, 0, 0, 0, 0}, fano_incidence(f2)));  // min weight 3

    Field f5 = Field::make(5, 1);
    FqMatrix id = FqMatrix::identity(f5, 4);
    fvec b = {3, 1, 4, 2};
    SolveResult s = solve(id, b);
    REQUIRE(s.feasible);
    CHECK(s.particular == b);
    CHECK(s.kernel.empty());

    std::mt19937_64 gen(11);
    for (int it = 0; it < 30; ++it) {
        Field f = it % 2 ? f2 : f5;
        FqMatrix a = random_mat(f, 3, 4, gen);
        fvec x = random_mat(f, 4, 1, gen).entries();
        fvec rhs = mat_vec(a, x);
        SolveResult sol = solve(a, rhs);
        REQUIRE(sol.feasible);
        CHECK(mat_vec(a, sol.particular) == rhs);
        for (const fvec& k : sol.kernel) CHECK(is_zero(mat_vec(a, k)));
    }
    // inconsistent system
    FqMatrix zero(f2, 2, 2);
    CHECK_FALSE(solve(zero, {1, 0}).feasible);
}

TEST_CASE("rref is idempotent and preserves the row space") {
    std::mt19937_64 gen(13);
    Field f3 = Field::make(3, 1);
    for (int it = 0; it < 20; ++it) {
        FqMatrix m = random_mat(f3, 3, 5, gen);
        FqMatrix r = rref(m);
        CHECK(rref(r) == r);
        for (int i = 0; i < m.rows(); ++i) CHECK(in_rowspace(m.row(i), r));
        CHECK(rank(m) == rank(r));
    }
}

TEST_CASE("subspace sum and intersection") {
    Field f2 = Field::make(2, 1);
    Subspace u = Subspace::from_rows(FqMatrix::from_rows(f2, {{1, 1, 0}, {0, 1, 1}}, 3));
    Subspace w = Subspace::from_rows(FqMatrix::from_rows(f2, {{1, 0, 1}}, 3));
    Subspace inter = subspace_intersect(u, w);
    CHECK(inter.dim() == 1);
    CHECK(inter == w);
    CHECK(subspace_intersect(u, u) == u);

    // dim U + dim W = dim(U+W) + dim(U ∩ W), against exhaustive enumeration
    std::mt19937_64 gen(23);
    for (int it = 0; it < 25; ++it) {
        Subspace a =
            Subspace::from_rows(random_mat(f2, 1 + static_cast<int>(gen() % 4), 6, gen));
        Subspace b =
            Subspace::from_rows(random_mat(f2, 1 + static_cast<int>(gen() % 4), 6, gen));
        Subspace sum = subspace_sum(a, b);
        Subspace meet = subspace_intersect(a, b);
        CHECK(a.dim() + b.dim() == sum.dim() + meet.dim());
        auto ea = all_elements(a), eb = all_elements(b);
        std::set<fvec> expect_meet;
        for (const fvec& v : ea)
            if (eb.count(v)) expect_meet.insert(v);
        CHECK(all_elements(meet) == expect_meet);
        for (const fvec& v : ea) CHECK(sum.contains(v));
        for (const fvec& v : eb) CHECK(sum.contains(v));
    }
}

TEST_CASE("subfield embedding is a ring monomorphism") {
    Field f2 = Field::make(2, 1);
    Field f4 = Field::make(2, 2);
    auto map = f2.embedding_into(f4);
    CHECK(map[0] == 0);
    CHECK(map[1] == 1);
    Field f16 = Field::make(2, 4);
    auto m4 = f4.embedding_into(f16);
    std::set<felem> image;
    for (long a = 0; a < 4; ++a) {
        image.insert(m4[a]);
        for (long b = 0; b < 4; ++b) {
            CHECK(m4[f4.mul(static_cast<felem>(a), static_cast<felem>(b))] ==
                  f16.mul(m4[a], m4[b]));
            CHECK(m4[f4.add(static_cast<felem>(a), static_cast<felem>(b))] ==
                  f16.add(m4[a], m4[b]));
        }
    }
    CHECK(image.size() == 4);
}

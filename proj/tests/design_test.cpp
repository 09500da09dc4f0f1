#include "doctest.h"
#include "icbound/design.hpp"

using namespace icbound;

namespace {

std::vector<std::vector<int>> fano_blocks() {
    return {{1, 2, 3}, {2, 6, 7}, {3, 5, 7}, {2, 4, 5}, {1, 5, 6}, {3, 4, 6}, {1, 4, 7}};
}

IcsiInstance fano_instance() {
    return IcsiInstance(7, 7, 1, {1, 2, 3, 4, 5, 6, 7},
                        {{2, 3}, {6, 7}, {5, 7}, {2, 5}, {1, 6}, {3, 4}, {1, 4}});
}

// an instance that coincides with a design: each block demands its smallest
// point and holds the rest
IcsiInstance instance_of(const Design& d) {
    std::vector<int> f;
    std::vector<std::vector<int>> side;
    for (const auto& blk : d.blocks) {
        f.push_back(blk.front());
        side.push_back({blk.begin() + 1, blk.end()});
    }
    return IcsiInstance(d.v, d.b(), 1, std::move(f), std::move(side));
}

std::vector<std::vector<int>> all_k_subsets(int v, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> s(k);
    for (int i = 0; i < k; ++i) s[i] = i + 1;
    for (;;) {
        out.push_back(s);
        int i = k - 1;
        while (i >= 0 && s[i] == v - k + i + 1) --i;
        if (i < 0) return out;
        ++s[i];
        for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
    }
}

}  // namespace

TEST_CASE("validate_design") {
    Design fano = validate_design(7, fano_blocks(), 2);
    CHECK(fano.k == 3);
    CHECK(fano.lambda == 1);
    CHECK(fano.r == 3);
    CHECK(fano.order == 2);

    Design comp = validate_design(4, all_k_subsets(4, 3), 2);
    CHECK(comp.lambda == 2);
    CHECK(comp.order == 1);

    auto broken = fano_blocks();
    broken.pop_back();
    CHECK_THROWS_AS(validate_design(7, broken, 2), NotADesign);
}

TEST_CASE("projective planes") {
    for (int r : {2, 3, 4}) {
        Design pg = projective_plane(r);
        CHECK(pg.v == r * r + r + 1);
        CHECK(pg.b() == pg.v);
        CHECK(pg.k == r + 1);
        CHECK(pg.lambda == 1);
        CHECK(pg.order == r);
    }
    CHECK_THROWS_AS(projective_plane(6), NotPrimePower);
}

TEST_CASE("p_rank") {
    Design fano = validate_design(7, fano_blocks(), 2);
    CHECK(p_rank(fano, 2) == 4);
    // rows sum to k = 3, so the GF(3) code sits inside the sum-zero hyperplane
    CHECK(p_rank(fano, 3) == 6);
    CHECK(p_rank(fano, 5) == 7);
    CHECK(p_rank(projective_plane(3), 3) == 7);
    // the PG(2,2) built from coordinates has the same 2-rank as the Fano list
    CHECK(p_rank(projective_plane(2), 2) == 4);
}

TEST_CASE("klemm_check") {
    Design fano = validate_design(7, fano_blocks(), 2);
    KlemmReport rep = klemm_check(fano, 2);
    CHECK(rep.clause1_holds);  // 4 <= (7+1)/2
    CHECK(rep.clause2_applicable);
    CHECK(rep.dual_contained);
    CHECK(rep.rank_ge_half_v);

    KlemmReport pg3 = klemm_check(projective_plane(3), 3);
    CHECK(pg3.rank == 7);
    CHECK(pg3.clause1_holds);  // 7 <= (13+1)/2, met with equality
    CHECK(pg3.dual_contained);
    CHECK(pg3.rank_ge_half_v);

    CHECK_THROWS_AS(klemm_check(fano, 3), Inapplicable);

    // complete 2-(4,2,1) design: order 2, rank 3 <= (6+1)/2
    Design pairs = validate_design(4, all_k_subsets(4, 2), 2);
    CHECK(pairs.order == 2);
    KlemmReport kp = klemm_check(pairs, 2);
    CHECK(kp.rank == 3);
    CHECK(kp.clause1_holds);
}

TEST_CASE("contains and coincides") {
    Design fano = validate_design(7, fano_blocks(), 2);
    IcsiInstance inst = fano_instance();
    ContainsReport rep = contains_design(inst, fano);
    CHECK(rep.contains);
    CHECK(rep.coincides);
    for (int i = 0; i < 7; ++i) CHECK(rep.witness[i] == i);  // block i fits receiver i

    IcsiInstance larger(7, 7, 1, {1, 2, 3, 4, 5, 6, 7},
                        {{2, 3, 5}, {6, 7}, {5, 7}, {2, 5}, {1, 6}, {3, 4}, {1, 4}});
    ContainsReport rep2 = contains_design(larger, fano);
    CHECK(rep2.contains);
    CHECK_FALSE(rep2.coincides);

    IcsiInstance off(7, 7, 1, {1, 2, 3, 4, 5, 6, 7},
                     {{2, 4}, {6, 7}, {5, 7}, {2, 5}, {1, 6}, {3, 4}, {1, 4}});
    CHECK_FALSE(contains_design(off, fano).contains);
}

TEST_CASE("design_bound") {
    Design fano = validate_design(7, fano_blocks(), 2);
    IcsiInstance inst = fano_instance();
    DesignBoundResult res = design_bound(inst, fano, 2);
    CHECK(res.bound == 4);
    CHECK(res.encoder.rows() == 4);
    CHECK(2 * res.bound <= fano.b() + 1);
    Field f2 = Field::make(2, 1);
    CHECK(is_valid_code(res.encoder, embed_iccsi(inst, f2)).valid);

    // generic-q comparison: the multicast route gives r^2 + 1 = 5 rows
    Field f11 = Field::make(11, 1);
    FqMatrix l = multicast_matrix(embed_iccsi(inst, f11));
    CHECK(l.rows() == 5);
    CHECK(res.bound < l.rows());

    CHECK_THROWS_AS(design_bound(inst, fano, 3), Inapplicable);

    Design pairs = validate_design(4, all_k_subsets(4, 2), 2);
    IcsiInstance pinst = instance_of(pairs);
    DesignBoundResult pres = design_bound(pinst, pairs, 2);
    CHECK(2 * pres.bound <= pairs.b() + 1);
    CHECK(is_valid_code(pres.encoder, embed_iccsi(pinst, f2)).valid);
}

TEST_CASE("weight_checks") {
    Design fano = validate_design(7, fano_blocks(), 2);
    WeightReport w2 = weight_checks(fano, 2);
    CHECK(w2.min_weight == 3);  // order + 1
    CHECK(w2.min_weight_words == 7);
    CHECK(w2.min_words_are_row_multiples);
    CHECK(w2.gap_empty);  // [4,3] is vacuous
    CHECK(w2.codewords == 16);

    WeightReport w3 = weight_checks(projective_plane(3), 3);
    CHECK(w3.min_weight == 4);
    CHECK(w3.min_weight_words == 26);  // 13 rows, 2 scalars each
    CHECK(w3.min_words_are_row_multiples);
    CHECK(w3.gap_lo == 5);
    CHECK(w3.gap_hi == 5);
    CHECK(w3.gap_empty);
    CHECK(w3.codewords == 2187);  // 3^7
}

TEST_CASE("secrecy_check") {
    Design fano = validate_design(7, fano_blocks(), 2);
    SecrecyReport rep = secrecy_check(fano_instance(), fano, 2);
    CHECK(rep.pass);
    CHECK(rep.pairs_checked == 28);  // 7 receivers x 4 forbidden indices

    Design pg3 = projective_plane(3);
    SecrecyReport rep3 = secrecy_check(instance_of(pg3), pg3, 3);
    CHECK(rep3.pass);
    CHECK(rep3.pairs_checked == 13 * 9);

    // merely containing the design is not enough for the theorem
    IcsiInstance larger(7, 7, 1, {1, 2, 3, 4, 5, 6, 7},
                        {{2, 3, 5}, {6, 7}, {5, 7}, {2, 5}, {1, 6}, {3, 4}, {1, 4}});
    CHECK_THROWS_AS(secrecy_check(larger, fano, 2), Inapplicable);
}

TEST_CASE("adversary_check") {
    Design fano = validate_design(7, fano_blocks(), 2);
    AdversaryReport a1 = adversary_check(fano, {1, 2}, 2);
    CHECK(a1.size_ok);
    CHECK_FALSE(a1.blocks_ok);  // |{1,2} ∩ B1| = 2 > p-1
    REQUIRE(a1.violating_block);
    CHECK(*a1.violating_block == std::vector<int>{1, 2, 3});
    CHECK_FALSE(a1.safe);

    AdversaryReport a2 = adversary_check(fano, {1}, 2);
    CHECK(a2.size_ok);
    CHECK(a2.blocks_ok);
    CHECK(a2.safe);
    CHECK(a2.exhaustive_confirmed);

    AdversaryReport a3 = adversary_check(fano, {}, 2);
    CHECK(a3.safe);

    // a 4-point arc of PG(2,3): within the size cap, no 3 points collinear
    Design pg3 = projective_plane(3);
    std::vector<int> arc;
    for (int cand = 1; cand <= pg3.v && arc.size() < 4; ++cand) {
        arc.push_back(cand);
        bool ok = true;
        for (const auto& blk : pg3.blocks) {
            int inter = 0;
            for (int x : arc)
                if (std::binary_search(blk.begin(), blk.end(), x)) ++inter;
            if (inter > 2) ok = false;
        }
        if (!ok) arc.pop_back();
    }
    REQUIRE(arc.size() == 4);
    AdversaryReport a4 = adversary_check(pg3, arc, 3);
    CHECK(a4.size_ok);
    CHECK(a4.blocks_ok);
    CHECK(a4.safe);
    CHECK(a4.exhaustive_confirmed);
}

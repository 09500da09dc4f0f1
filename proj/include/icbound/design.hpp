#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "icbound/instance.hpp"
#include "icbound/minrank.hpp"

namespace icbound {

/// Validated t-(v,k,lambda) block design.
struct Design {
    int v = 0;
    std::vector<std::vector<int>> blocks;  // sorted subsets of [v]
    int t = 0, k = 0;
    long lambda = 0, r = 0, order = 0;

    int b() const { return static_cast<int>(blocks.size()); }
    FqMatrix incidence(const Field& f) const;  // b x v, 0/1 entries
};

/// Checks the design conditions by counting over all t-subsets.
Design validate_design(int v, std::vector<std::vector<int>> blocks, int t);

/// PG(2, GF(r)): points are normalized homogeneous triples in canonical
/// order, lines their duals; a 2-(r^2+r+1, r+1, 1) design of order r.
Design projective_plane(int r);

int p_rank(const Design& d, long p);

struct KlemmReport {
    long p = 0;
    int rank = 0;
    bool clause1_applicable = false;  // p divides the order
    bool clause1_holds = false;       // 2*rank <= b+1
    bool clause2_applicable = false;  // p !| lambda and p^2 !| order
    bool dual_contained = false;      // C_p(D)^perp subset of C_p(D)
    bool rank_ge_half_v = false;      // 2*rank >= v
};

/// Both clauses of the rank bound, verified computationally.
/// Throws Inapplicable when p does not divide the order.
KlemmReport klemm_check(const Design& d, long p);

struct ContainsReport {
    bool contains = false;
    bool coincides = false;
    std::vector<int> witness;           // containment block per receiver, -1 if none
    std::vector<int> coincide_witness;  // equality block per receiver, -1 if none
};

ContainsReport contains_design(const IcsiInstance& inst, const Design& d);

struct DesignBoundResult {
    int bound = 0;        // rank_p of the design
    FqMatrix encoder;     // independent witness-block incidence rows
};

/// Upper bound rank_p(D) <= (b+1)/2 on the min-rank of the instance's
/// hypergraph, with the witness-row encoder. Throws Inapplicable unless the
/// instance contains the design and p divides the order.
DesignBoundResult design_bound(const IcsiInstance& inst, const Design& d, long p);

struct WeightReport {
    int min_weight = 0;
    std::uint64_t min_weight_words = 0;
    bool min_words_are_row_multiples = false;
    int gap_lo = 0, gap_hi = 0;  // [p+2, 2p-1]
    bool gap_empty = false;
    std::uint64_t codewords = 0;
};

/// Full enumeration of C_p(D): minimum weight, the minimal-word structure,
/// and the weight-gap check for prime-order planes.
WeightReport weight_checks(const Design& d, long p,
                           const SearchBudget& budget = SearchBudget::standard());

struct SecrecyReport {
    bool pass = false;
    int pairs_checked = 0;          // (receiver, forbidden j) pairs
    std::uint64_t vectors_tried = 0;
};

/// For an instance coinciding with a projective plane of order divisible by
/// p: exhaustively confirms no receiver can recover any message outside
/// X_i together with f(i). Throws Inapplicable when the hypotheses fail.
SecrecyReport secrecy_check(const IcsiInstance& inst, const Design& d, long p);

struct AdversaryReport {
    bool size_ok = false;                        // |X_A| <= 2p-2
    bool blocks_ok = false;                      // |X_A ∩ B| <= p-1 for all B
    std::optional<std::vector<int>> violating_block;
    bool safe = false;
    bool exhaustive_confirmed = false;  // no recoverable j found by search
};

/// Evaluates the eavesdropper hypotheses for side information X_A and, when
/// they hold, exhaustively confirms that no message outside X_A is
/// recoverable from the design-row encoder.
AdversaryReport adversary_check(const Design& d, const std::vector<int>& x_a, long p);

}  // namespace icbound

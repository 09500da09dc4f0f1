#pragma once

#include <cstdint>
#include <map>

#include "icbound/instance.hpp"

namespace icbound {

struct SearchBudget {
    std::uint64_t max_ops = 0;
    /// Default budget (2^26 enumeration steps) unless ICBOUND_BUDGET is set.
    static SearchBudget standard();
};

/// Entry constraints of a fitting matrix: cell == -1 is free, any other
/// value is forced. Digraphs force 1 on the diagonal and 0 off the side
/// information; hypergraphs force 1 on tails and 0 outside heads.
struct FittingPattern {
    int rows = 0, cols = 0;
    std::vector<int> cell;  // row-major, -1 or a field element

    static FittingPattern of_digraph(const Digraph& g);
    static FittingPattern of_hypergraph(const Hypergraph& h);

    int at(int r, int c) const { return cell[static_cast<size_t>(r) * cols + c]; }
    int& at(int r, int c) { return cell[static_cast<size_t>(r) * cols + c]; }
    int free_count() const;
    bool admits(const FqMatrix& m) const;
};

struct MinrankResult {
    int value = 0;
    FqMatrix certificate;
};

/// Exact minimum rank over all completions of the pattern, with the
/// lexicographically smallest certificate (row-major entry order, canonical
/// element encoding). `lower_bound` must be a valid bound; 1 always is.
MinrankResult minrank(const FittingPattern& pat, const Field& f,
                      const SearchBudget& budget = SearchBudget::standard(),
                      int lower_bound = 1);
MinrankResult minrank(const Digraph& g, const Field& f,
                      const SearchBudget& budget = SearchBudget::standard());
MinrankResult minrank(const Hypergraph& h, const Field& f,
                      const SearchBudget& budget = SearchBudget::standard());

/// Histogram rank -> count over all q^free completions.
std::map<int, std::uint64_t> rank_distribution(
    const FittingPattern& pat, const Field& f,
    const SearchBudget& budget = SearchBudget::standard());
std::map<int, std::uint64_t> rank_distribution(
    const Hypergraph& h, const Field& f,
    const SearchBudget& budget = SearchBudget::standard());
std::map<int, std::uint64_t> rank_distribution(
    const Digraph& g, const Field& f,
    const SearchBudget& budget = SearchBudget::standard());

struct KappaResult {
    int value = 0;
    FqMatrix a;        // rows A_i in X^(i) ∩ X^(S)
    FqMatrix encoder;  // independent rows of A + R; valid by construction
};

/// ICCSI min-rank: minimum rank of A + R over A with A_i in X^(i) ∩ X^(S).
KappaResult kappa(const IccsiInstance& inst,
                  const SearchBudget& budget = SearchBudget::standard());

/// N x n matrix L with rows in the sender space such that
/// <L> + (X^(S) ∩ X^(i)) = X^(S) for every receiver, where
/// N = max_i (d_S - dim(X^(S) ∩ X^(i))). Every receiver of the instance can
/// then decode any combination in the sender space from L V^(S) X. Tries a
/// Vandermonde (MDS) choice first and falls back to a canonical search;
/// throws FieldTooSmall when no such matrix exists over the field.
FqMatrix multicast_matrix(const IccsiInstance& inst);

/// Digraph form (Prop-style bound n - min out-degree, exact over q > n).
FqMatrix multicast_matrix(const Digraph& g, const Field& f);

}  // namespace icbound

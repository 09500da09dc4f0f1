#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "icbound/matrix.hpp"

namespace icbound {

/// Directed graph on vertices 1..n, no self-loops. A symmetric digraph is
/// treated as an undirected graph where the definitions diverge.
struct Digraph {
    int n = 0;
    std::set<std::pair<int, int>> arcs;

    Digraph() = default;
    Digraph(int n_, std::set<std::pair<int, int>> arcs_);

    bool has_arc(int u, int v) const { return arcs.count({u, v}) > 0; }
    int out_degree(int u) const;
    bool is_graph() const;  // every arc reciprocated

    bool operator==(const Digraph& o) const { return n == o.n && arcs == o.arcs; }
};

struct Hypergraph {
    int n = 0;
    // hyperarc = (tail, head set), tail not in head
    std::vector<std::pair<int, std::vector<int>>> hyperarcs;

    Hypergraph() = default;
    Hypergraph(int n_, std::vector<std::pair<int, std::vector<int>>> arcs);
};

/// Any directed circuit, including 2-circuits; empty if none. Used by the
/// graph-parameter computations, where 2-circuits always count.
std::optional<std::vector<int>> find_circuit(const Digraph& g);

/// Acyclicity in the paper's sense: a symmetric digraph (graph) is acyclic
/// iff it has no circuit on >= 3 vertices; any other digraph is acyclic iff
/// it has no circuit at all.
bool is_acyclic(const Digraph& g);

struct ParamLimits {
    int tau_max_n = 16;
    int nu_max_n = 12;
    int cc_max_n = 12;
};

int tau(const Digraph& g, const ParamLimits& lim = {});
int nu(const Digraph& g, const ParamLimits& lim = {});
int alpha(const Digraph& g, const ParamLimits& lim = {});
int clique_cover_number(const Digraph& g, const ParamLimits& lim = {});

/// Contraction along the arc (i1,i2); requires (i2,i1) absent and
/// out-degree(i1) == 1. Vertices are relabeled to 1..n-1 preserving order.
Digraph contract_arc(const Digraph& g, int i1, int i2);

struct TauDecision {
    enum Kind { MinrankIsNMinus1, Acyclic, TauAtLeast2 } kind;
    std::optional<FqMatrix> certificate;  // rank n-1 witness on yes; rank n-2 when tau == 2
    std::string reason;
};

/// Decides minrk_q(G) == n-1 for q > n by testing tau(G) == 1 in O(n^3).
/// On tau == 2 the returned certificate is the constructive rank n-2 matrix.
TauDecision decide_minrank_n_minus_1(const Digraph& g, const Field& f);

/// Constructive fitting matrix of rank exactly n-2 for tau(G) == 2, q > n:
/// contract/delete until all out-degrees are >= 2, take the multicast
/// solution there, lift back through the reductions. A graph with two
/// disjoint circuits gets the circuit-difference matrix directly.
FqMatrix reduce_tau2(const Digraph& g, const Field& f);

}  // namespace icbound

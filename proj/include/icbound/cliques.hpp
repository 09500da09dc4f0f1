#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "icbound/lp.hpp"
#include "icbound/minrank.hpp"

namespace icbound {

/// Receiver sets are bitmasks over 0..m-1.
using rmask = std::uint32_t;

struct GeneralizedClique {
    rmask members = 0;
    std::vector<fvec> vectors;  // normalized representatives of R(C)
};

/// All generalized-clique structure of an instance: every normalized vector
/// of the sender space with the receiver set it satisfies, the maximal
/// cliques, and the subset-closed clique family used by the covering
/// programs.
struct CliqueCatalog {
    int m = 0;
    std::vector<fvec> normalized;     // canonical order
    std::vector<rmask> satisfies;     // S_v = receivers with R_i in <v> + X^(i)
    std::vector<rmask> signature;     // receivers j with v in X^(j)
    std::vector<rmask> maximal;       // inclusion-maximal satisfier sets
    std::vector<rmask> family;        // all nonempty cliques, ascending mask

    std::vector<fvec> vectors_of(rmask c) const;   // R(C) representatives
    std::vector<GeneralizedClique> maximal_and_singletons() const;
};

CliqueCatalog enumerate_cliques(const IccsiInstance& inst,
                                const SearchBudget& budget = SearchBudget::standard());

struct CoverCert {
    std::vector<rmask> cliques;
    std::vector<fvec> vectors;  // coding vector per clique
    std::vector<Rat> weights;   // all 1 on integral certificates
};

struct LocalCert {
    CoverCert cover;
    Rat k = 0;
    bool exact = true;  // false when the vector choice fell back to greedy
};

struct MulticastCert {
    std::vector<rmask> groups;
    std::vector<Rat> weights;
};

struct PartitionedLocalCert {
    MulticastCert groups;
    CoverCert cover;
    std::vector<Rat> t;  // per group
    bool exact = true;
};

std::pair<Rat, CoverCert> phi(const IccsiInstance& inst, const CliqueCatalog& cat);
std::pair<Rat, CoverCert> phi_f(const IccsiInstance& inst, const CliqueCatalog& cat);
std::pair<Rat, LocalCert> phi_l(const IccsiInstance& inst, const CliqueCatalog& cat,
                                const SearchBudget& budget = SearchBudget::standard());
std::pair<Rat, LocalCert> phi_lf(const IccsiInstance& inst, const CliqueCatalog& cat,
                                 const SearchBudget& budget = SearchBudget::standard());

/// dim<R_M> - min_{j in M} dim(<R_M> ∩ X^(j)).
int d_m(const IccsiInstance& inst, rmask members);

std::pair<Rat, MulticastCert> phi_p(const IccsiInstance& inst);
std::pair<Rat, MulticastCert> phi_p_f(const IccsiInstance& inst);
std::pair<Rat, PartitionedLocalCert> phi_p_l(
    const IccsiInstance& inst, const CliqueCatalog& cat,
    const SearchBudget& budget = SearchBudget::standard());
std::pair<Rat, PartitionedLocalCert> phi_p_lf(
    const IccsiInstance& inst, const CliqueCatalog& cat,
    const SearchBudget& budget = SearchBudget::standard());

/// The count k of the local program for a fixed partition and fixed coding
/// vectors: max over receivers of the cliques whose vector escapes X^(j).
int local_k_for(const IccsiInstance& inst, const std::vector<rmask>& cliques,
                const std::vector<fvec>& vectors);

/// Weak cliques: pairwise R_j in X^(i) or <R_j> = <R_i>, with the fixed
/// coding vector "sum of the line-distinct requests".
struct WeakCliqueSet {
    std::vector<rmask> cliques;   // all weak cliques, ascending mask
    std::vector<fvec> vectors;    // fixed vector per clique
};
WeakCliqueSet weak_cliques(const IccsiInstance& inst);

struct BoundReport {
    std::vector<std::string> order;  // Fig-5 partial order, smaller bounds first
    std::map<std::string, Rat> values;
    std::map<std::string, CoverCert> cover_certs;
    std::map<std::string, LocalCert> local_certs;
    std::map<std::string, MulticastCert> multicast_certs;
    std::map<std::string, PartitionedLocalCert> part_certs;
};

/// Names: phi, phi_f, phi_l, phi_lf, phi_p, phi_p_f, phi_p_l, phi_p_lf and
/// the weak wphi, wphi_f, wphi_l, wphi_lf, wphi_p_l, wphi_p_lf.
std::vector<std::string> all_bound_names();

BoundReport compute_bounds(const IccsiInstance& inst,
                           const std::vector<std::string>& params,
                           const SearchBudget& budget = SearchBudget::standard());

/// Re-verifies every certificate in the report (covers partition the
/// receivers, vectors witness their cliques, weights and counts recompute).
bool verify_report(const IccsiInstance& inst, const BoundReport& rep);

}  // namespace icbound

#pragma once

#include <cstdint>
#include <string>

#include "icbound/cliques.hpp"

namespace icbound {

/// Existence of an [s,k] MDS code over GF(q): always for k in {1, s-1, s},
/// otherwise via (extended) Reed-Solomon codes for s <= q+1.
bool mds_exists(int s, int k, long q);

/// k x s generator with every k columns independent: identity, repetition,
/// parity-check form [I | 1], or a Vandermonde matrix on the canonical
/// evaluation points (extended by the column e_k when s == q+1). The minor
/// property is verified exhaustively for s <= 12.
FqMatrix rs_generator(int s, int k, const Field& f);

struct DecodeTrace {
    int receiver = 0;
    bool ok = false;
};

struct SchemeTranscript {
    std::string scheme;
    bool fractional = false;
    Field work_field;
    bool extended = false;     // scalars lifted to an extension field
    long r1 = 1, r2 = 1;       // sub-block splits (r2 only for partitioned local)
    int words = 0;             // transmitted encodings (cliques / groups)
    int subsymbols = 0;        // transmitted field symbols per sub-block unit
    Rat rate = 0;              // subsymbols / (r1*r2)
    std::vector<DecodeTrace> traces;

    explicit SchemeTranscript(Field f) : work_field(std::move(f)) {}
    bool all_ok() const {
        for (const auto& t : traces)
            if (!t.ok) return false;
        return !traces.empty();
    }
};

SchemeTranscript scheme_clique_cover(const IccsiInstance& inst, const CoverCert& cert,
                                     bool fractional, std::uint64_t x_seed = 0);
SchemeTranscript scheme_local_clique(const IccsiInstance& inst, const LocalCert& cert,
                                     bool fractional, std::uint64_t x_seed = 0);
SchemeTranscript scheme_partition_multicast(const IccsiInstance& inst,
                                            const MulticastCert& cert, bool fractional,
                                            std::uint64_t x_seed = 0);
SchemeTranscript scheme_partitioned_local(const IccsiInstance& inst,
                                          const PartitionedLocalCert& cert,
                                          bool fractional, std::uint64_t x_seed = 0);

/// The uncombined fractional multicast: each group transmits one chosen
/// sub-block instead of an MDS mix. `selection` picks the sub-block
/// (0-based, one entry per multiset group). Receivers that never see one of
/// their sub-blocks fail, as the corrected scheme predicts.
SchemeTranscript scheme_partition_multicast_nomds(const IccsiInstance& inst,
                                                  const MulticastCert& cert,
                                                  const std::vector<int>& selection,
                                                  std::uint64_t x_seed = 0);

enum class SchemeKind { CliqueCover, LocalClique, PartitionMulticast, PartitionedLocal };

struct SchemeSpec {
    SchemeKind kind = SchemeKind::CliqueCover;
    bool fractional = false;
    CoverCert cover;
    LocalCert local;
    MulticastCert groups;
    PartitionedLocalCert part;
};

SchemeTranscript run_scheme(const IccsiInstance& inst, const SchemeSpec& spec,
                            std::uint64_t x_seed);

struct SimulationReport {
    int trials = 0;
    int failures = 0;       // receiver decode mismatches across all trials
    int words = 0;          // per trial
    int subsymbols = 0;     // per trial
    Rat rate = 0;
    bool extended = false;
    long r1 = 1, r2 = 1;
};

/// Runs `trials` random data matrices through the scheme; every receiver
/// must recover R_i X exactly. A nonzero failure count signals a bug, never
/// an expected outcome.
SimulationReport simulate(const IccsiInstance& inst, const SchemeSpec& spec, int trials,
                          std::uint64_t seed);

}  // namespace icbound

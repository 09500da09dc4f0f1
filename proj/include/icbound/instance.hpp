#pragma once

#include <optional>
#include <vector>

#include "icbound/digraph.hpp"
#include "icbound/matrix.hpp"

namespace icbound {

/// Classical index coding instance: n messages, m receivers, receiver i
/// demands message f(i) and holds the messages in side_info[i].
struct IcsiInstance {
    int n = 0, m = 0, t = 1;
    std::vector<int> f;                      // 1-based demands, size m
    std::vector<std::vector<int>> side_info; // subsets of [n], size m

    IcsiInstance() = default;
    IcsiInstance(int n_, int m_, int t_, std::vector<int> f_,
                 std::vector<std::vector<int>> side);

    bool operator==(const IcsiInstance& o) const {
        return n == o.n && m == o.m && t == o.t && f == o.f && side_info == o.side_info;
    }
};

/// Coded-side-information instance: receiver i holds V^(i) X and demands
/// R_i X; the sender can transmit combinations of V^(S) X.
struct IccsiInstance {
    Field field;
    int n = 0, m = 0, t = 1;
    FqMatrix VS;               // d_S x n
    std::vector<FqMatrix> V;   // d_i x n each
    FqMatrix R;                // m x n

    IccsiInstance(Field f, int n_, int m_, int t_, FqMatrix vs,
                  std::vector<FqMatrix> v, FqMatrix r);

    int d_S() const { return sender_.dim(); }
    int d(int i) const { return side_[i].dim(); }  // 0-based receiver
    const Subspace& sender_space() const { return sender_; }
    const Subspace& side_space(int i) const { return side_[i]; }
    /// Number of distinct side-information spaces among the receivers.
    int m_tilde() const;

    bool operator==(const IccsiInstance& o) const {
        return field == o.field && n == o.n && m == o.m && t == o.t && VS == o.VS &&
               V == o.V && R == o.R;
    }

  private:
    Subspace sender_;
    std::vector<Subspace> side_;
};

Hypergraph to_hypergraph(const IcsiInstance& inst);

/// Requires the canonical form m == n, f == id.
Digraph to_digraph(const IcsiInstance& inst);

IcsiInstance from_digraph(const Digraph& g);

/// V^(S) = I_n, R_i = e_{f(i)}, V^(i) rows = unit vectors of the side set.
IccsiInstance embed_iccsi(const IcsiInstance& inst, const Field& f);

/// Entrywise lift of an instance through a subfield embedding.
IccsiInstance lift_instance(const IccsiInstance& inst, const Field& ext);

struct ValidityReport {
    bool valid = false;
    // per receiver: coefficients (b over the rows of L V_S, a over V^(i))
    struct Witness {
        fvec b, a;
    };
    std::vector<std::optional<Witness>> witnesses;
    FqMatrix lvs;  // L V^(S), the transmitted combinations

    explicit ValidityReport(FqMatrix lvs_) : lvs(std::move(lvs_)) {}
};

/// Decodability test of Lemma-style membership R_i in <L V_S> + X^(i).
/// L may have d_S columns (ICCSI coefficients) or n columns (rows already in
/// the ambient space; V_S must then be the identity embedding's row space).
ValidityReport is_valid_code(const FqMatrix& l, const IccsiInstance& inst);

/// R_i X from the received words Y = (L V_S) X and the receiver's side
/// packets Lambda_i = V^(i) X, using the cached witness.
FqMatrix decode(const ValidityReport& rep, int receiver, const FqMatrix& y,
                const FqMatrix& lambda_i);

}  // namespace icbound

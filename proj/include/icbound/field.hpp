#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "icbound/errors.hpp"

namespace icbound {

using felem = std::uint16_t;  // canonical element encoding, valid range [0, q)

/// Finite field GF(p^ell) with a fixed irreducible modulus polynomial.
///
/// Elements are encoded as integers 0..q-1 by base-p packing of the
/// polynomial coefficients (low degree first). The encoding is canonical and
/// file-format stable. Copies share the underlying tables; a Field value is
/// immutable and safe to share across threads.
class Field {
  public:
    /// Builds GF(p^ell). If no modulus is given, the lexicographically
    /// smallest irreducible monic polynomial of degree ell is chosen (for
    /// GF(4) this is x^2+x+1). Coefficients are listed low-to-high and must
    /// include the leading 1.
    static Field make(long p, int ell,
                      std::optional<std::vector<int>> modulus = std::nullopt);

    long p() const { return impl_->p; }
    int ell() const { return impl_->ell; }
    long q() const { return impl_->q; }
    const std::vector<int>& modulus() const { return impl_->modulus; }

    felem zero() const { return 0; }
    felem one() const { return 1; }

    felem add(felem a, felem b) const;
    felem sub(felem a, felem b) const;
    felem neg(felem a) const;
    felem mul(felem a, felem b) const;
    felem inv(felem a) const;
    felem pow(felem a, long e) const;

    /// Reduces an integer mod p into the prime subfield.
    felem from_int(long v) const;

    bool operator==(const Field& o) const {
        return impl_ == o.impl_ ||
               (impl_->p == o.impl_->p && impl_->ell == o.impl_->ell &&
                impl_->modulus == o.impl_->modulus);
    }
    bool operator!=(const Field& o) const { return !(*this == o); }

    /// Monomorphism into an extension field: finds a root of this field's
    /// modulus in `ext` and maps coefficient vectors through it. Throws
    /// FieldTooSmall if no root exists (ext is not an extension).
    std::vector<felem> embedding_into(const Field& ext) const;

  private:
    struct Impl {
        long p = 0;
        int ell = 0;
        long q = 0;
        std::vector<int> modulus;      // low-to-high, monic
        bool tabulated = false;
        std::vector<felem> add_tab, mul_tab, neg_tab, inv_tab;
    };
    std::shared_ptr<const Impl> impl_;

    felem mul_slow(felem a, felem b) const;
};

bool is_prime(long n);

/// Polynomial helpers over GF(p); coefficients low-to-high, trailing zeros ok.
namespace poly {
std::vector<int> trim(std::vector<int> a);
std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, long p);
std::vector<int> mod(std::vector<int> a, const std::vector<int>& m, long p);
bool is_irreducible(const std::vector<int>& f, long p);
}  // namespace poly

}  // namespace icbound

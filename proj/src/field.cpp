#include "icbound/field.hpp"

#include <algorithm>

namespace icbound {

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

namespace poly {

std::vector<int> trim(std::vector<int> a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

std::vector<int> mul(const std::vector<int>& a, const std::vector<int>& b, long p) {
    if (a.empty() || b.empty()) return {};
    std::vector<int> c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = static_cast<int>((c[i + j] + 1LL * a[i] * b[j]) % p);
    return trim(std::move(c));
}

std::vector<int> mod(std::vector<int> a, const std::vector<int>& m, long p) {
    a = trim(std::move(a));
    const std::vector<int> mm = trim(m);
    if (mm.empty()) throw Error("polynomial division by zero");
    // monic divisor assumed
    while (a.size() >= mm.size()) {
        int lead = a.back();
        size_t shift = a.size() - mm.size();
        if (lead != 0) {
            for (size_t i = 0; i < mm.size(); ++i) {
                long v = a[shift + i] - 1LL * lead * mm[i];
                v %= p;
                if (v < 0) v += p;
                a[shift + i] = static_cast<int>(v);
            }
        }
        a.pop_back();
        a = trim(std::move(a));
        if (a.size() < mm.size()) break;
    }
    return a;
}

bool is_irreducible(const std::vector<int>& f, long p) {
    std::vector<int> ff = trim(f);
    if (ff.size() < 2) return false;  // constants are not irreducible
    int deg = static_cast<int>(ff.size()) - 1;
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (int d = 1; 2 * d <= deg; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i) count *= p;
        for (long e = 0; e < count; ++e) {
            std::vector<int> g(d + 1, 0);
            long v = e;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(v % p);
                v /= p;
            }
            g[d] = 1;
            if (mod(ff, g, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace poly

namespace {

std::vector<int> default_modulus(long p, int ell) {
    if (ell == 1) return {0, 1};  // x
    long count = 1;
    for (int i = 0; i < ell; ++i) count *= p;
    for (long e = 0; e < count; ++e) {
        std::vector<int> f(ell + 1, 0);
        long v = e;
        for (int i = 0; i < ell; ++i) {
            f[i] = static_cast<int>(v % p);
            v /= p;
        }
        f[ell] = 1;
        if (poly::is_irreducible(f, p)) return f;
    }
    throw ReduciblePolynomial("no irreducible polynomial found");  // unreachable
}

std::vector<int> decode_elem(felem a, long p, int ell) {
    std::vector<int> c(ell, 0);
    long v = a;
    for (int i = 0; i < ell; ++i) {
        c[i] = static_cast<int>(v % p);
        v /= p;
    }
    return c;
}

felem encode_elem(const std::vector<int>& c, long p, int ell) {
    long v = 0;
    for (int i = ell - 1; i >= 0; --i)
        v = v * p + (i < static_cast<int>(c.size()) ? c[i] : 0);
    return static_cast<felem>(v);
}

constexpr long kTableLimit = 1024;  // build q x q tables up to this size

}  // namespace

Field Field::make(long p, int ell, std::optional<std::vector<int>> modulus) {
    if (!is_prime(p)) throw NonPrime("p = " + std::to_string(p));
    if (ell < 1) throw Error("ell must be >= 1");
    long q = 1;
    for (int i = 0; i < ell; ++i) {
        q *= p;
        if (q > (1L << 16)) throw TooLarge("q exceeds 2^16");
    }
    auto impl = std::make_shared<Impl>();
    impl->p = p;
    impl->ell = ell;
    impl->q = q;
    if (modulus) {
        std::vector<int> m = poly::trim(*modulus);
        for (int& c : m) {
            c %= static_cast<int>(p);
            if (c < 0) c += static_cast<int>(p);
        }
        if (static_cast<int>(m.size()) != ell + 1 || m.back() != 1)
            throw ReduciblePolynomial("modulus must be monic of degree ell");
        if (!poly::is_irreducible(m, p))
            throw ReduciblePolynomial("modulus is not irreducible over GF(p)");
        impl->modulus = m;
    } else {
        impl->modulus = default_modulus(p, ell);
    }

    Field f;
    f.impl_ = impl;
    if (q <= kTableLimit) {
        auto mut = std::const_pointer_cast<Impl>(f.impl_);
        mut->mul_tab.assign(static_cast<size_t>(q) * q, 0);
        mut->inv_tab.assign(q, 0);
        for (long a = 0; a < q; ++a)
            for (long b = a; b < q; ++b) {
                felem v = f.mul_slow(static_cast<felem>(a), static_cast<felem>(b));
                mut->mul_tab[a * q + b] = v;
                mut->mul_tab[b * q + a] = v;
                if (v == 1) {
                    mut->inv_tab[a] = static_cast<felem>(b);
                    mut->inv_tab[b] = static_cast<felem>(a);
                }
            }
        mut->tabulated = true;
    }
    return f;
}

felem Field::add(felem a, felem b) const {
    const long p = impl_->p;
    if (impl_->ell == 1) {
        long s = a + b;
        if (s >= p) s -= p;
        return static_cast<felem>(s);
    }
    long va = a, vb = b, out = 0, mult = 1;
    for (int i = 0; i < impl_->ell; ++i) {
        long s = va % p + vb % p;
        if (s >= p) s -= p;
        out += s * mult;
        mult *= p;
        va /= p;
        vb /= p;
    }
    return static_cast<felem>(out);
}

felem Field::neg(felem a) const {
    const long p = impl_->p;
    long va = a, out = 0, mult = 1;
    for (int i = 0; i < impl_->ell; ++i) {
        long d = va % p;
        out += (d == 0 ? 0 : p - d) * mult;
        mult *= p;
        va /= p;
    }
    return static_cast<felem>(out);
}

felem Field::sub(felem a, felem b) const { return add(a, neg(b)); }

felem Field::mul_slow(felem a, felem b) const {
    auto ca = decode_elem(a, impl_->p, impl_->ell);
    auto cb = decode_elem(b, impl_->p, impl_->ell);
    auto prod = poly::mod(poly::mul(ca, cb, impl_->p), impl_->modulus, impl_->p);
    return encode_elem(prod, impl_->p, impl_->ell);
}

felem Field::mul(felem a, felem b) const {
    if (impl_->tabulated) return impl_->mul_tab[static_cast<size_t>(a) * impl_->q + b];
    return mul_slow(a, b);
}

felem Field::pow(felem a, long e) const {
    if (e < 0) throw Error("negative exponent");
    felem r = 1, base = a;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

felem Field::inv(felem a) const {
    if (a == 0) throw Error("inverse of zero");
    if (impl_->tabulated) return impl_->inv_tab[a];
    return pow(a, impl_->q - 2);
}

felem Field::from_int(long v) const {
    long r = v % impl_->p;
    if (r < 0) r += impl_->p;
    return static_cast<felem>(r);
}

std::vector<felem> Field::embedding_into(const Field& ext) const {
    if (ext.p() != p() || ext.ell() % ell() != 0)
        throw FieldTooSmall("not an extension field");
    // find a root of this modulus in ext
    felem root = 0;
    bool found = false;
    for (long z = 0; z < ext.q(); ++z) {
        felem acc = 0;
        // evaluate modulus at z with coefficients in the prime subfield
        for (int i = static_cast<int>(modulus().size()) - 1; i >= 0; --i) {
            acc = ext.mul(acc, static_cast<felem>(z));
            acc = ext.add(acc, ext.from_int(modulus()[i]));
        }
        if (acc == 0) {
            root = static_cast<felem>(z);
            found = true;
            break;
        }
    }
    if (!found) throw FieldTooSmall("modulus has no root in extension");
    std::vector<felem> map(q(), 0);
    for (long a = 0; a < q(); ++a) {
        auto coeffs = decode_elem(static_cast<felem>(a), p(), ell());
        felem acc = 0;
        for (int i = ell() - 1; i >= 0; --i) {
            acc = ext.mul(acc, root);
            acc = ext.add(acc, ext.from_int(coeffs[i]));
        }
        map[a] = acc;
    }
    return map;
}

}  // namespace icbound

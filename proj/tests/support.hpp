#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "idem/idempotent.hpp"
#include "idem/linalg.hpp"
#include "idem/matrix.hpp"
#include "idem/rings.hpp"

namespace support {

using idem::Matrix;
using idem::Ring;
using idem::RingDescriptor;
using idem::RingValue;
using Rng = std::mt19937_64;

inline Rng rng(std::uint64_t salt) { return Rng(0x5eed'1de4ULL ^ (salt * 0x9e3779b97f4a7c15ULL)); }

inline long uniform(Rng& g, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(g); }

inline Ring Z() { return RingDescriptor::integers(); }
inline Ring Q() { return RingDescriptor::rationals(); }
inline Ring F(std::uint64_t p) { return RingDescriptor::prime_field(p); }
inline Ring Zx() { return RingDescriptor::univariate(Z()); }
inline Ring Qx() { return RingDescriptor::univariate(Q()); }
inline Ring Fx(std::uint64_t p) { return RingDescriptor::univariate(F(p)); }

inline RingValue num(const Ring& r, long v) { return RingValue::from_int(r, v); }
inline RingValue val(const Ring& r, const std::string& text) { return idem::parse_scalar(r, text); }

/// Random scalar of a scalar ring (Z, Fp, Q) with small numerators.
inline RingValue random_scalar(Rng& g, const Ring& r, long bound = 9) {
    if (r->kind() == idem::RingKind::Rationals)
        return RingValue::fraction(r, uniform(g, -bound, bound), uniform(g, 1, bound));
    return num(r, uniform(g, -bound, bound));
}

/// Random univariate polynomial of degree <= max_deg.
inline RingValue random_poly(Rng& g, const Ring& r, int max_deg, long bound = 5) {
    std::vector<RingValue> c;
    int deg = static_cast<int>(uniform(g, -1, max_deg));
    for (int i = 0; i <= deg; ++i) c.push_back(random_scalar(g, r->base(), bound));
    return RingValue::univariate(r, c);
}

inline RingValue random_value(Rng& g, const Ring& r, int max_deg = 2, long bound = 5) {
    return r->kind() == idem::RingKind::UniPoly ? random_poly(g, r, max_deg, bound) : random_scalar(g, r, bound);
}

inline Matrix random_matrix(Rng& g, const Ring& r, std::size_t rows, std::size_t cols, int max_deg = 2,
                            long bound = 5) {
    return Matrix::generate(r, rows, cols, [&](std::size_t, std::size_t) { return random_value(g, r, max_deg, bound); });
}

/// Product of random elementary operations: invertible over any ring.
inline Matrix random_unimodular(Rng& g, const Ring& r, std::size_t n, int steps = 8) {
    Matrix m = Matrix::identity(r, n);
    if (n < 2) return m;
    for (int s = 0; s < steps; ++s) {
        std::size_t i = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n) - 1));
        std::size_t j = static_cast<std::size_t>(uniform(g, 0, static_cast<long>(n) - 2));
        if (j >= i) ++j;
        RingValue k = random_value(g, r, 1, 2);
        Matrix e = Matrix::generate(r, n, n, [&](std::size_t a, std::size_t b) {
            if (a == b) return RingValue::one(r);
            return a == i && b == j ? k : RingValue::zero(r);
        });
        m = e * m;
    }
    return m;
}

/// Every matrix of M_n(F_p) as row-major residue vectors, filtered by E*E = E using plain integer
/// arithmetic (independent of the library's matrix code).
inline std::vector<std::vector<unsigned>> brute_idempotent_residues(std::size_t n, unsigned p) {
    std::size_t cells = n * n;
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < cells; ++i) total *= p;
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> e(cells);
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = cells; i-- > 0;) {
            e[i] = static_cast<unsigned>(c % p);
            c /= p;
        }
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < n && ok; ++j) {
                unsigned s = 0;
                for (std::size_t k = 0; k < n; ++k) s = (s + e[i * n + k] * e[k * n + j]) % p;
                ok = s == e[i * n + j];
            }
        if (ok) out.push_back(e);
    }
    return out;
}

inline std::vector<unsigned> residues(const Matrix& m) {
    std::vector<unsigned> out;
    for (const RingValue& v : m.entries()) out.push_back(static_cast<unsigned>(v.residue()));
    return out;
}

/// Cofactor-expansion determinant (oracle for the library's fraction-free one).
inline RingValue cofactor_det(const Matrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return RingValue::one(m.ring());
    if (n == 1) return m(0, 0);
    RingValue acc = RingValue::zero(m.ring());
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor = Matrix::generate(m.ring(), n - 1, n - 1, [&](std::size_t a, std::size_t b) {
            return m(a + 1, b < j ? b : b + 1);
        });
        RingValue term = m(0, j) * cofactor_det(minor);
        acc = j % 2 == 0 ? acc + term : acc - term;
    }
    return acc;
}

/// All k-subsets of {0..n-1}.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    auto rec = [&](auto&& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

/// gcd of all k x k minors, normalized; zero when every minor vanishes.
inline RingValue minors_gcd(const Matrix& m, std::size_t k) {
    RingValue g = RingValue::zero(m.ring());
    for (const auto& rows : subsets(m.rows(), k))
        for (const auto& cols : subsets(m.cols(), k)) {
            Matrix sub = Matrix::generate(m.ring(), k, k, [&](std::size_t a, std::size_t b) { return m(rows[a], cols[b]); });
            g = idem::euclid_gcd(g, cofactor_det(sub)).g;
        }
    return g;
}

// Reference idempotents over Z, F2[x] and Q[x].

inline Matrix example_a() {
    return Matrix::from_ints(Z(), 4, 4, {6, -2, -3, 7, 15, -5, -9, 21, 21, -7, 15, -35, 9, -3, 6, -14});
}

inline Matrix example_b() {
    return Matrix::from_strings(Fx(2), 4, 4,
                                {"x^3", "x^3+x^2+x", "x^5+x^4+1", "x^3+1",
                                 "x^3+x^2", "x^3+1", "x^5+x^3+x^2", "x^3+x^2",
                                 "x^3+x^2", "x^3+1", "x^3+x+1", "x+1",
                                 "x^5+x^3+x^2", "x^5+x^4+1", "x^5+x^4+x^3+x", "x^3+x"});
}

inline Matrix example_c() {
    return Matrix::from_strings(
        Qx(), 4, 4,
        {"-x^4-x^3-x^2-x", "-x^7-x^6-2*x^5-2*x^4-2*x^3-x^2-x", "-x^6-2*x^5-3*x^4-3*x^3-3*x^2-2*x-1",
         "-x^6-x^5-2*x^4-2*x^3-2*x^2-x-1",
         "x+1", "x^4+x^3+x^2+x+1", "x^3+2*x^2+2*x+1", "x^3+x^2+x+1",
         "x^3+x^2+x+1", "x^6+x^5+2*x^4+2*x^3+2*x^2+x+1", "-x^3-x^2-x", "-x^3-x",
         "-x^3-2*x^2-2*x-1", "-x^6-2*x^5-3*x^4-3*x^3-3*x^2-2*x-1", "x^3+2*x^2+2*x+1", "x^3+x^2+x+1"});
}

} // namespace support

#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "idem/matrix.hpp"

namespace idem {

bool is_idempotent(const Matrix& m);

/// A square matrix verified to satisfy E*E = E, with its rank cached.
/// Rank is taken over the fraction field of the matrix ring.
class Idempotent {
public:
    /// Throws NotIdempotent when m*m != m and InvalidArgument for non-square input.
    explicit Idempotent(Matrix m);

    const Matrix& matrix() const noexcept { return m_; }
    std::size_t size() const noexcept { return m_.rows(); }
    std::size_t rank() const noexcept { return rank_; }
    const Ring& ring() const noexcept { return m_.ring(); }

    friend bool operator==(const Idempotent& a, const Idempotent& b) { return a.m_ == b.m_; }

private:
    Matrix m_;
    std::size_t rank_;
};

/// E = A * diag(I_r, O) * A^-1. A and its inverse live over the fraction field.
struct DiagonalizationWitness {
    Matrix basis;
    Matrix basis_inverse;
    std::size_t rank;

    /// A * diag(I_r, O) * A^-1, i.e. the idempotent being witnessed.
    Matrix reconstruct() const;
    /// A * blockdiag(I_r, lower) * A^-1 for an (n-r)x(n-r) block over the same field.
    Matrix conjugate_lower_block(const Matrix& lower) const;
    /// A^-1 * m * A.
    Matrix to_local(const Matrix& m) const;
};

/// Columns of A: the pivot columns of E (image), then the RREF kernel vectors.
DiagonalizationWitness diagonalize(const Idempotent& e);

/// E(i,j) = s_i * a_j; requires sum s_i a_i = 1 (ConstraintViolated otherwise).
Idempotent rank1_ufd_construct(std::span<const RingValue> s, std::span<const RingValue> a);

/// I_3 - rank1_ufd_construct((s,t,u), (a,b,c)); requires sa + tb + uc = 1.
Idempotent m3_rank2_construct(const RingValue& s, const RingValue& t, const RingValue& u, const RingValue& a,
                              const RingValue& b, const RingValue& c);

/// I - E.
Idempotent complement(const Idempotent& e);

/// 2x2 test over an integral domain: trace 1 and determinant 0.
bool is_rank1_idempotent_2x2(const Matrix& m);

/// The k with A*A = k*A, k != 0, if any. A must be square, nonzero, over a field.
std::optional<RingValue> scaled_idempotent_factor(const Matrix& a);

/// A (x) B for A*A = kA and B*B = k^-1 B; ConstraintViolated when no such k exists.
Idempotent kron_idempotent(const Matrix& a, const Matrix& b);

} // namespace idem

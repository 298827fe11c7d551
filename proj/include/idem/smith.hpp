#pragma once

#include <cstddef>
#include <vector>

#include "idem/idempotent.hpp"

namespace idem {

/// left * source * right = diagonal, with left/right unimodular and the nonzero
/// diagonal entries d_1 | d_2 | ... normalized (positive over Z, monic over K[x]).
/// The inverses of both transforms are tracked alongside, so no fraction-field
/// inversion is needed to undo them.
struct SmithDecomposition {
    Matrix left;
    Matrix diagonal;
    Matrix right;
    Matrix left_inverse;
    Matrix right_inverse;
    std::vector<RingValue> invariant_factors;
};

/// Over Z, Fp[x], Q[x] (and trivially Fp, Q). Pivot: minimal Euclidean norm, ties row-major.
SmithDecomposition smith_normal_form(const Matrix& a);

/// E = S * T and T * S = diag(I_l, O). S keeps only its first l columns and T its first
/// l rows (the rest are zero), so the leading blocks are the C/D and A/B of the block form.
struct IdempotentFactorization {
    Matrix left;
    Matrix right;
    std::size_t ell;
};

IdempotentFactorization idempotent_snf_factor(const Idempotent& e);
/// Same, validating idempotency first (NotIdempotent otherwise).
IdempotentFactorization idempotent_snf_factor(const Matrix& e);

/// Blocks of E = [[C A, C B], [D A, D B]] with A C + B D = I_l.
struct BlockBuilderInput {
    Matrix a; ///< l x l
    Matrix c; ///< l x l
    Matrix b; ///< l x (n - l)
    Matrix d; ///< (n - l) x l
};

/// ConstraintViolated unless A C + B D = I_l.
Idempotent block_build_idempotent(const BlockBuilderInput& input);

/// A = leading l x l block of T, B = rest of its first l rows, C / D = first l columns of S.
BlockBuilderInput blocks_from_factorization(const IdempotentFactorization& f);

/// The 4x4 template from two coprime pairs: A = [[a1, b1], [0, 0]], B = [[0, 0], [a2, b2]],
/// C = [[g1, -b1], [h1, a1]], D = [[b2, g2], [-a2, h2]] where a_i g_i + b_i h_i = 1.
/// Bezout coefficients come from euclid_gcd; ConstraintViolated when a pair is not coprime.
BlockBuilderInput coprime_pair_builder(const RingValue& a1, const RingValue& b1, const RingValue& a2,
                                       const RingValue& b2);
/// Same template with caller-chosen Bezout coefficients (verified).
BlockBuilderInput coprime_pair_builder(const RingValue& a1, const RingValue& b1, const RingValue& a2,
                                       const RingValue& b2, const RingValue& g1, const RingValue& h1,
                                       const RingValue& g2, const RingValue& h2);

} // namespace idem

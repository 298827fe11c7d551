#pragma once

#include <cstddef>
#include <vector>

#include "idem/matrix.hpp"

namespace idem {

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    /// Invertible, with transform * source = reduced.
    Matrix transform;
};

/// Reduced row-echelon form over a field. Non-field inputs are first embedded
/// in their fraction field, so every output lives in fraction_field(m.ring()).
/// Pivot choice: first nonzero entry scanning down the column.
RrefResult rref(const Matrix& m);

std::size_t rank(const Matrix& m);

/// Columns form a basis of the null space (one vector per free column, standard
/// RREF form). Result has cols() rows and cols() - rank columns, over the fraction field.
Matrix kernel_basis(const Matrix& m);

/// Pivot columns of m, embedded in the fraction field.
Matrix image_basis(const Matrix& m);

/// Inverse over the fraction field. SingularMatrix if not full rank.
Matrix invert(const Matrix& m);

/// Determinant computed inside m's own ring (fraction-free elimination), so
/// unimodularity over Z or K[x] can be read off directly.
RingValue determinant(const Matrix& m);

} // namespace idem

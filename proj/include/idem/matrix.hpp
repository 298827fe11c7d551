#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "idem/rings.hpp"

namespace idem {

/// Dense row-major matrix over one ring. Values are immutable; every operation
/// returns a fresh matrix. Zero-sized dimensions are allowed (e.g. an n x 0 kernel basis).
class Matrix {
public:
    /// Zero matrix.
    Matrix(Ring ring, std::size_t rows, std::size_t cols);
    Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<RingValue> entries);

    static Matrix identity(const Ring& ring, std::size_t n);
    static Matrix zero(const Ring& ring, std::size_t rows, std::size_t cols);
    static Matrix from_ints(const Ring& ring, std::size_t rows, std::size_t cols, std::initializer_list<long> values);
    /// Each entry parsed with parse_scalar; handy for fixtures.
    static Matrix from_strings(const Ring& ring, std::size_t rows, std::size_t cols,
                               const std::vector<std::string>& values);
    static Matrix generate(const Ring& ring, std::size_t rows, std::size_t cols,
                           const std::function<RingValue(std::size_t, std::size_t)>& entry);
    static Matrix diagonal(const Ring& ring, const std::vector<RingValue>& diag);
    /// diag(I_r, O) of size n.
    static Matrix unit_block(const Ring& ring, std::size_t n, std::size_t r);

    const Ring& ring() const noexcept { return ring_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool is_zero() const;

    const RingValue& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    std::span<const RingValue> entries() const noexcept { return entries_; }

    Matrix row_range(std::size_t first, std::size_t count) const;
    Matrix col_range(std::size_t first, std::size_t count) const;
    Matrix submatrix(std::size_t row, std::size_t col, std::size_t rows, std::size_t cols) const;
    Matrix column(std::size_t j) const { return col_range(j, 1); }

    RingValue trace() const;

    /// Canonical text "r,c:e00,e01,..." usable as a hash key.
    std::string key() const;
    /// Row-major entries joined by spaces.
    std::string flat_string() const;

    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    Ring ring_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<RingValue> entries_;
};

struct MatrixKeyHash {
    std::size_t operator()(const Matrix& m) const { return std::hash<std::string>{}(m.key()); }
};

enum class MatOp { Add, Sub, Mul };

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(const RingValue& k, const Matrix& a);

Matrix mat_arith(MatOp op, const Matrix& a, const Matrix& b);
Matrix mat_scalar_mul(const RingValue& scalar, const Matrix& a);

/// Entry-wise image in another ring (see embed()).
Matrix embed(const Matrix& m, const Ring& target);
Matrix embed_in_fraction_field(const Matrix& m);

Matrix transpose(const Matrix& a);
/// J_n: ones on the anti-diagonal.
Matrix exchange_matrix(const Ring& ring, std::size_t n);
/// Reflection across the anti-diagonal: result(i,j) = a(n-1-j, n-1-i).
Matrix anti_transpose(const Matrix& a);
/// Kronecker product; block (i,j) of the result is a(i,j) * b.
Matrix kronecker(const Matrix& a, const Matrix& b);

/// 2x2 block layout [[top_left, top_right], [bottom_left, bottom_right]].
struct BlockSpec {
    Matrix top_left;
    Matrix top_right;
    Matrix bottom_left;
    Matrix bottom_right;

    friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

Matrix block_compose(const BlockSpec& spec);
BlockSpec block_split(const Matrix& m, std::size_t row_cut, std::size_t col_cut);
/// [[a, O], [O, b]].
Matrix block_diag(const Matrix& a, const Matrix& b);
/// Columns of a followed by columns of b.
Matrix hstack(const Matrix& a, const Matrix& b);

} // namespace idem

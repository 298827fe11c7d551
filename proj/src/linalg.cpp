#include "idem/linalg.hpp"

#include <utility>

namespace idem {

namespace {

class Work {
public:
    explicit Work(const Matrix& m) : rows_(m.rows()), cols_(m.cols()), data_(m.entries().begin(), m.entries().end()) {}

    RingValue& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(data_[a * cols_ + j], data_[b * cols_ + j]);
    }

    Matrix to_matrix(const Ring& ring) && { return Matrix(ring, rows_, cols_, std::move(data_)); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<RingValue> data_;
};

} // namespace

RrefResult rref(const Matrix& m)
{
    auto field = fraction_field(m.ring());
    auto src = embed(m, field);
    const auto rows = src.rows();
    const auto cols = src.cols();
    // Augment with the identity so the transform falls out of the same elimination.
    Work w(hstack(src, Matrix::identity(field, rows)));
    const auto width = cols + rows;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && w.at(p, c).is_zero())
            ++p;
        if (p == rows)
            continue;
        if (p != r)
            w.swap_rows(p, r);
        auto inv = ring_inverse(w.at(r, c));
        if (!inv.is_one())
            for (std::size_t j = c; j < width; ++j)
                w.at(r, j) = w.at(r, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || w.at(i, c).is_zero())
                continue;
            auto f = w.at(i, c);
            for (std::size_t j = c; j < width; ++j)
                if (!w.at(r, j).is_zero())
                    w.at(i, j) = w.at(i, j) - f * w.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    auto all = std::move(w).to_matrix(field);
    return {all.col_range(0, cols), std::move(pivots), all.col_range(cols, rows)};
}

std::size_t rank(const Matrix& m)
{
    return rref(m).pivots.size();
}

Matrix kernel_basis(const Matrix& m)
{
    auto [reduced, pivots, transform] = rref(m);
    const auto& field = reduced.ring();
    const auto n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    auto zero = RingValue::zero(field);
    auto one = RingValue::one(field);
    return Matrix::generate(field, n, free_cols.size(), [&](std::size_t i, std::size_t k) {
        auto f = free_cols[k];
        if (i == f)
            return one;
        if (!is_pivot[i])
            return zero;
        // Row of the pivot in column i.
        std::size_t row = 0;
        while (pivots[row] != i)
            ++row;
        return -reduced(row, f);
    });
}

Matrix image_basis(const Matrix& m)
{
    auto pivots = rref(m).pivots;
    auto src = embed_in_fraction_field(m);
    return Matrix::generate(src.ring(), src.rows(), pivots.size(), [&](auto i, auto k) { return src(i, pivots[k]); });
}

Matrix invert(const Matrix& m)
{
    if (!m.is_square())
        throw Error(ErrorKind::DimensionMismatch, "cannot invert a non-square matrix");
    auto result = rref(m);
    if (result.pivots.size() != m.rows())
        throw Error(ErrorKind::SingularMatrix, "matrix is singular (rank " + std::to_string(result.pivots.size()) +
                                                   " < " + std::to_string(m.rows()) + ")");
    return result.transform;
}

RingValue determinant(const Matrix& m)
{
    if (!m.is_square())
        throw Error(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
    const auto& ring = m.ring();
    const auto n = m.rows();
    if (n == 0)
        return RingValue::one(ring);
    Work w(m);
    bool negate = false;
    auto prev = RingValue::one(ring);
    // Bareiss fraction-free elimination: every division below is exact.
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (w.at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && w.at(p, k).is_zero())
                ++p;
            if (p == n)
                return RingValue::zero(ring);
            w.swap_rows(p, k);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                auto v = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                auto q = exact_divide(v, prev);
                if (!q)
                    throw Error(ErrorKind::UnsupportedRing, "determinant needs an integral domain, got " + ring->name());
                w.at(i, j) = std::move(*q);
            }
        }
        prev = w.at(k, k);
    }
    auto det = w.at(n - 1, n - 1);
    return negate ? -det : det;
}

} // namespace idem

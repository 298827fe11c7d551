#include "idem/matrix.hpp"

#include <sstream>

namespace idem {

namespace {

void require_dims(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorKind::DimensionMismatch, what);
}

std::string dims(const Matrix& m)
{
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

} // namespace

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, RingValue::zero(ring_))
{
}

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols, std::vector<RingValue> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries))
{
    require_dims(entries_.size() == rows * cols, "expected " + std::to_string(rows * cols) + " entries, got " +
                                                     std::to_string(entries_.size()));
    for (const auto& e : entries_)
        require_same_ring(e.ring(), ring_);
}

Matrix Matrix::identity(const Ring& ring, std::size_t n)
{
    return unit_block(ring, n, n);
}

Matrix Matrix::zero(const Ring& ring, std::size_t rows, std::size_t cols)
{
    return Matrix(ring, rows, cols);
}

Matrix Matrix::from_ints(const Ring& ring, std::size_t rows, std::size_t cols, std::initializer_list<long> values)
{
    std::vector<RingValue> entries;
    entries.reserve(values.size());
    for (long v : values)
        entries.push_back(RingValue::from_int(ring, v));
    return Matrix(ring, rows, cols, std::move(entries));
}

Matrix Matrix::from_strings(const Ring& ring, std::size_t rows, std::size_t cols, const std::vector<std::string>& values)
{
    std::vector<RingValue> entries;
    entries.reserve(values.size());
    for (const auto& v : values)
        entries.push_back(parse_scalar(ring, v));
    return Matrix(ring, rows, cols, std::move(entries));
}

Matrix Matrix::generate(const Ring& ring, std::size_t rows, std::size_t cols,
                        const std::function<RingValue(std::size_t, std::size_t)>& entry)
{
    std::vector<RingValue> entries;
    entries.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            entries.push_back(entry(i, j));
    return Matrix(ring, rows, cols, std::move(entries));
}

Matrix Matrix::diagonal(const Ring& ring, const std::vector<RingValue>& diag)
{
    auto zero = RingValue::zero(ring);
    return generate(ring, diag.size(), diag.size(), [&](auto i, auto j) { return i == j ? diag[i] : zero; });
}

Matrix Matrix::unit_block(const Ring& ring, std::size_t n, std::size_t r)
{
    auto zero = RingValue::zero(ring);
    auto one = RingValue::one(ring);
    return generate(ring, n, n, [&](auto i, auto j) { return i == j && i < r ? one : zero; });
}

bool Matrix::is_zero() const
{
    for (const auto& e : entries_)
        if (!e.is_zero())
            return false;
    return true;
}

Matrix Matrix::submatrix(std::size_t row, std::size_t col, std::size_t nrows, std::size_t ncols) const
{
    require_dims(row + nrows <= rows_ && col + ncols <= cols_, "submatrix out of range for " + dims(*this));
    return generate(ring_, nrows, ncols, [&](auto i, auto j) { return (*this)(row + i, col + j); });
}

Matrix Matrix::row_range(std::size_t first, std::size_t count) const
{
    return submatrix(first, 0, count, cols_);
}

Matrix Matrix::col_range(std::size_t first, std::size_t count) const
{
    return submatrix(0, first, rows_, count);
}

RingValue Matrix::trace() const
{
    require_dims(is_square(), "trace of non-square " + dims(*this));
    auto t = RingValue::zero(ring_);
    for (std::size_t i = 0; i < rows_; ++i)
        t = t + (*this)(i, i);
    return t;
}

std::string Matrix::key() const
{
    std::string out = std::to_string(rows_) + "," + std::to_string(cols_) + ":";
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k)
            out += ',';
        out += entries_[k].str();
    }
    return out;
}

std::string Matrix::flat_string() const
{
    std::string out;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (k)
            out += ' ';
        out += entries_[k].str();
    }
    return out;
}

bool operator==(const Matrix& a, const Matrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_ || !same_ring(a.ring_, b.ring_))
        return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
        if (!(a.entries_[k] == b.entries_[k]))
            return false;
    return true;
}

namespace {

Matrix elementwise(const Matrix& a, const Matrix& b, bool subtract)
{
    require_same_ring(a.ring(), b.ring());
    require_dims(a.rows() == b.rows() && a.cols() == b.cols(), "cannot add " + dims(a) + " and " + dims(b));
    std::vector<RingValue> out;
    out.reserve(a.entries().size());
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        out.push_back(subtract ? a.entries()[k] - b.entries()[k] : a.entries()[k] + b.entries()[k]);
    return Matrix(a.ring(), a.rows(), a.cols(), std::move(out));
}

} // namespace

Matrix operator+(const Matrix& a, const Matrix& b)
{
    return elementwise(a, b, false);
}

Matrix operator-(const Matrix& a, const Matrix& b)
{
    return elementwise(a, b, true);
}

Matrix operator-(const Matrix& a)
{
    return Matrix::generate(a.ring(), a.rows(), a.cols(), [&](auto i, auto j) { return -a(i, j); });
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    require_same_ring(a.ring(), b.ring());
    require_dims(a.cols() == b.rows(), "cannot multiply " + dims(a) + " by " + dims(b));
    std::vector<RingValue> out;
    out.reserve(a.rows() * b.cols());
    auto zero = RingValue::zero(a.ring());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            auto acc = zero;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                const auto& x = a(i, k);
                if (x.is_zero())
                    continue;
                const auto& y = b(k, j);
                if (!y.is_zero())
                    acc = acc + x * y;
            }
            out.push_back(std::move(acc));
        }
    }
    return Matrix(a.ring(), a.rows(), b.cols(), std::move(out));
}

Matrix operator*(const RingValue& k, const Matrix& a)
{
    require_same_ring(k.ring(), a.ring());
    return Matrix::generate(a.ring(), a.rows(), a.cols(), [&](auto i, auto j) { return k * a(i, j); });
}

Matrix mat_arith(MatOp op, const Matrix& a, const Matrix& b)
{
    switch (op) {
    case MatOp::Add: return a + b;
    case MatOp::Sub: return a - b;
    case MatOp::Mul: return a * b;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown matrix op");
}

Matrix mat_scalar_mul(const RingValue& scalar, const Matrix& a)
{
    return scalar * a;
}

Matrix embed(const Matrix& m, const Ring& target)
{
    if (same_ring(m.ring(), target))
        return m;
    return Matrix::generate(target, m.rows(), m.cols(), [&](auto i, auto j) { return embed(m(i, j), target); });
}

Matrix embed_in_fraction_field(const Matrix& m)
{
    return embed(m, fraction_field(m.ring()));
}

Matrix transpose(const Matrix& a)
{
    return Matrix::generate(a.ring(), a.cols(), a.rows(), [&](auto i, auto j) { return a(j, i); });
}

Matrix exchange_matrix(const Ring& ring, std::size_t n)
{
    auto zero = RingValue::zero(ring);
    auto one = RingValue::one(ring);
    return Matrix::generate(ring, n, n, [&](auto i, auto j) { return i + j + 1 == n ? one : zero; });
}

Matrix anti_transpose(const Matrix& a)
{
    require_dims(a.is_square(), "anti-transpose of non-square " + dims(a));
    auto n = a.rows();
    return Matrix::generate(a.ring(), n, n, [&](auto i, auto j) { return a(n - 1 - j, n - 1 - i); });
}

Matrix kronecker(const Matrix& a, const Matrix& b)
{
    require_same_ring(a.ring(), b.ring());
    return Matrix::generate(a.ring(), a.rows() * b.rows(), a.cols() * b.cols(), [&](auto i, auto j) {
        return a(i / b.rows(), j / b.cols()) * b(i % b.rows(), j % b.cols());
    });
}

Matrix block_compose(const BlockSpec& s)
{
    const auto& ring = s.top_left.ring();
    for (const auto* m : {&s.top_right, &s.bottom_left, &s.bottom_right})
        require_same_ring(m->ring(), ring);
    require_dims(s.top_left.rows() == s.top_right.rows() && s.bottom_left.rows() == s.bottom_right.rows() &&
                     s.top_left.cols() == s.bottom_left.cols() && s.top_right.cols() == s.bottom_right.cols(),
                 "incompatible block dimensions " + dims(s.top_left) + " " + dims(s.top_right) + " / " +
                     dims(s.bottom_left) + " " + dims(s.bottom_right));
    auto r0 = s.top_left.rows();
    auto c0 = s.top_left.cols();
    return Matrix::generate(ring, r0 + s.bottom_left.rows(), c0 + s.top_right.cols(), [&](auto i, auto j) {
        if (i < r0)
            return j < c0 ? s.top_left(i, j) : s.top_right(i, j - c0);
        return j < c0 ? s.bottom_left(i - r0, j) : s.bottom_right(i - r0, j - c0);
    });
}

BlockSpec block_split(const Matrix& m, std::size_t row_cut, std::size_t col_cut)
{
    require_dims(row_cut <= m.rows() && col_cut <= m.cols(), "block cut outside " + dims(m));
    auto r1 = m.rows() - row_cut;
    auto c1 = m.cols() - col_cut;
    return {m.submatrix(0, 0, row_cut, col_cut), m.submatrix(0, col_cut, row_cut, c1),
            m.submatrix(row_cut, 0, r1, col_cut), m.submatrix(row_cut, col_cut, r1, c1)};
}

Matrix block_diag(const Matrix& a, const Matrix& b)
{
    require_same_ring(a.ring(), b.ring());
    return block_compose({a, Matrix::zero(a.ring(), a.rows(), b.cols()), Matrix::zero(a.ring(), b.rows(), a.cols()), b});
}

Matrix hstack(const Matrix& a, const Matrix& b)
{
    require_same_ring(a.ring(), b.ring());
    require_dims(a.rows() == b.rows(), "hstack of " + dims(a) + " and " + dims(b));
    return Matrix::generate(a.ring(), a.rows(), a.cols() + b.cols(),
                            [&](auto i, auto j) { return j < a.cols() ? a(i, j) : b(i, j - a.cols()); });
}

} // namespace idem

#include "idem/idempotent.hpp"

#include <algorithm>

#include "idem/linalg.hpp"

namespace idem {

namespace {

// Evaluation at the origin. Rank of an idempotent survives any specialization to a field,
// since neither rank(E) nor rank(I - E) can grow and the two always sum to n.
Matrix constant_terms(const Matrix& m)
{
    const Ring& base = m.ring()->base();
    return Matrix::generate(base, m.rows(), m.cols(), [&](std::size_t i, std::size_t j) {
        const auto& terms = m(i, j).terms();
        if (terms.empty())
            return RingValue::zero(base);
        const PolyTerm& last = terms.back();
        bool constant = std::all_of(last.exps.begin(), last.exps.end(), [](std::uint32_t e) { return e == 0; });
        return constant ? last.coeff : RingValue::zero(base);
    });
}

} // namespace

bool is_idempotent(const Matrix& m)
{
    if (!m.is_square())
        throw Error(ErrorKind::InvalidArgument,
                    "idempotency needs a square matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    return m * m == m;
}

Idempotent::Idempotent(Matrix m) : m_(std::move(m)), rank_(0)
{
    if (!is_idempotent(m_))
        throw Error(ErrorKind::NotIdempotent, "matrix is not idempotent");
    rank_ = m_.ring()->kind() == RingKind::MultiPoly ? idem::rank(constant_terms(m_)) : idem::rank(m_);
}

Matrix DiagonalizationWitness::reconstruct() const
{
    return basis * Matrix::unit_block(basis.ring(), basis.rows(), rank) * basis_inverse;
}

Matrix DiagonalizationWitness::conjugate_lower_block(const Matrix& lower) const
{
    const auto& field = basis.ring();
    return basis * block_diag(Matrix::identity(field, rank), embed(lower, field)) * basis_inverse;
}

Matrix DiagonalizationWitness::to_local(const Matrix& m) const
{
    return basis_inverse * embed(m, basis.ring()) * basis;
}

DiagonalizationWitness diagonalize(const Idempotent& e)
{
    auto a = hstack(image_basis(e.matrix()), kernel_basis(e.matrix()));
    auto inverse = invert(a);
    return {std::move(a), std::move(inverse), e.rank()};
}

namespace {

RingValue dot(std::span<const RingValue> s, std::span<const RingValue> a)
{
    auto acc = RingValue::zero(s.front().ring());
    for (std::size_t i = 0; i < s.size(); ++i)
        acc = acc + s[i] * a[i];
    return acc;
}

} // namespace

Idempotent rank1_ufd_construct(std::span<const RingValue> s, std::span<const RingValue> a)
{
    if (s.empty() || s.size() != a.size())
        throw Error(ErrorKind::DimensionMismatch, "rank-1 construction needs two nonempty vectors of equal length");
    const auto& ring = s.front().ring();
    for (const auto& x : s)
        require_same_ring(x.ring(), ring);
    for (const auto& x : a)
        require_same_ring(x.ring(), ring);
    auto trace = dot(s, a);
    if (!trace.is_one())
        throw Error(ErrorKind::ConstraintViolated, "sum s_i a_i must be 1, got " + trace.str());
    return Idempotent(Matrix::generate(ring, s.size(), s.size(), [&](auto i, auto j) { return s[i] * a[j]; }));
}

Idempotent m3_rank2_construct(const RingValue& s, const RingValue& t, const RingValue& u, const RingValue& a,
                              const RingValue& b, const RingValue& c)
{
    const RingValue left[] = {s, t, u};
    const RingValue right[] = {a, b, c};
    auto rank1 = rank1_ufd_construct(left, right);
    return complement(rank1);
}

Idempotent complement(const Idempotent& e)
{
    return Idempotent(Matrix::identity(e.ring(), e.size()) - e.matrix());
}

bool is_rank1_idempotent_2x2(const Matrix& m)
{
    if (m.rows() != 2 || m.cols() != 2)
        throw Error(ErrorKind::InvalidArgument, "expected a 2x2 matrix");
    return m.trace().is_one() && (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).is_zero();
}

std::optional<RingValue> scaled_idempotent_factor(const Matrix& a)
{
    if (!a.is_square())
        throw Error(ErrorKind::InvalidArgument, "scaled idempotent test needs a square matrix");
    if (!a.ring()->is_field())
        throw Error(ErrorKind::UnsupportedRing, "scaled idempotent test needs a field, got " + a.ring()->name());
    if (a.is_zero())
        throw Error(ErrorKind::InvalidArgument, "scaled idempotent test on the zero matrix");
    auto square = a * a;
    for (std::size_t k = 0; k < a.entries().size(); ++k) {
        const auto& x = a.entries()[k];
        const auto& y = square.entries()[k];
        if (x.is_zero() || y.is_zero())
            continue;
        auto factor = y * ring_inverse(x);
        if (square == factor * a)
            return factor;
        return std::nullopt;
    }
    return std::nullopt;
}

Idempotent kron_idempotent(const Matrix& a, const Matrix& b)
{
    if (a.is_zero() || b.is_zero())
        throw Error(ErrorKind::ConstraintViolated, "Kronecker idempotent needs nonzero factors");
    auto ka = scaled_idempotent_factor(a);
    if (!ka)
        throw Error(ErrorKind::ConstraintViolated, "left factor has no k with A^2 = kA");
    auto kb = scaled_idempotent_factor(b);
    if (!kb)
        throw Error(ErrorKind::ConstraintViolated, "right factor has no k with B^2 = kB");
    if (!(*ka * *kb).is_one())
        throw Error(ErrorKind::ConstraintViolated,
                    "factors scale by " + ka->str() + " and " + kb->str() + ", which are not mutually inverse");
    return Idempotent(kronecker(a, b));
}

} // namespace idem

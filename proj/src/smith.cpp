#include "idem/smith.hpp"

#include <optional>
#include <utility>

namespace idem {

namespace {

bool snf_supported(const Ring& ring)
{
    return ring->is_euclidean() || ring->kind() == RingKind::PrimeField || ring->kind() == RingKind::Rationals;
}

// Fields are Euclidean with every nonzero element of norm 0 and exact division.
mpz_class snf_norm(const RingValue& a)
{
    return a.ring()->is_field() ? mpz_class(0) : euclid_norm(a);
}

DivMod snf_divmod(const RingValue& a, const RingValue& b)
{
    if (b.ring()->is_field())
        return {a * ring_inverse(b), RingValue::zero(a.ring())};
    return euclid_divmod(a, b);
}

RingValue unit_inverse(const RingValue& u)
{
    return *exact_divide(RingValue::one(u.ring()), u);
}

class Dense {
public:
    Dense(std::size_t rows, std::size_t cols, std::vector<RingValue> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
    }
    explicit Dense(const Matrix& m) : Dense(m.rows(), m.cols(), {m.entries().begin(), m.entries().end()}) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    RingValue& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap(at(a, j), at(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap(at(i, a), at(i, b));
    }
    // row_dst += k * row_src
    void add_row(std::size_t dst, std::size_t src, const RingValue& k)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            if (!at(src, j).is_zero())
                at(dst, j) = at(dst, j) + k * at(src, j);
    }
    void add_col(std::size_t dst, std::size_t src, const RingValue& k)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            if (!at(i, src).is_zero())
                at(i, dst) = at(i, dst) + at(i, src) * k;
    }
    void scale_row(std::size_t i, const RingValue& k)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            at(i, j) = at(i, j) * k;
    }
    void scale_col(std::size_t j, const RingValue& k)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            at(i, j) = at(i, j) * k;
    }

    Matrix to_matrix(const Ring& ring) && { return Matrix(ring, rows_, cols_, std::move(data_)); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<RingValue> data_;
};

// D with P, P^-1 on the left and Q, Q^-1 on the right; every elementary
// operation is mirrored so that P * A * Q = D holds throughout.
class SmithState {
public:
    explicit SmithState(const Matrix& a)
        : d_(a), p_(Matrix::identity(a.ring(), a.rows())), p_inv_(Matrix::identity(a.ring(), a.rows())),
          q_(Matrix::identity(a.ring(), a.cols())), q_inv_(Matrix::identity(a.ring(), a.cols()))
    {
    }

    Dense& d() { return d_; }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        d_.swap_rows(a, b);
        p_.swap_rows(a, b);
        p_inv_.swap_cols(a, b);
    }
    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b)
            return;
        d_.swap_cols(a, b);
        q_.swap_cols(a, b);
        q_inv_.swap_rows(a, b);
    }
    void add_row(std::size_t dst, std::size_t src, const RingValue& k)
    {
        d_.add_row(dst, src, k);
        p_.add_row(dst, src, k);
        p_inv_.add_col(src, dst, -k);
    }
    void add_col(std::size_t dst, std::size_t src, const RingValue& k)
    {
        d_.add_col(dst, src, k);
        q_.add_col(dst, src, k);
        q_inv_.add_row(src, dst, -k);
    }
    void scale_row(std::size_t i, const RingValue& unit)
    {
        auto inv = unit_inverse(unit);
        d_.scale_row(i, unit);
        p_.scale_row(i, unit);
        p_inv_.scale_col(i, inv);
    }

    SmithDecomposition finish(const Ring& ring, std::size_t rank) &&
    {
        std::vector<RingValue> factors;
        for (std::size_t i = 0; i < rank; ++i)
            factors.push_back(d_.at(i, i));
        return {std::move(p_).to_matrix(ring), std::move(d_).to_matrix(ring), std::move(q_).to_matrix(ring),
                std::move(p_inv_).to_matrix(ring), std::move(q_inv_).to_matrix(ring), std::move(factors)};
    }

private:
    Dense d_;
    Dense p_;
    Dense p_inv_;
    Dense q_;
    Dense q_inv_;
};

struct Position {
    std::size_t row;
    std::size_t col;
};

} // namespace

SmithDecomposition smith_normal_form(const Matrix& a)
{
    const auto& ring = a.ring();
    if (!snf_supported(ring))
        throw Error(ErrorKind::UnsupportedRing, "Smith normal form needs Z, Fp[x], Q[x], Fp or Q, got " + ring->name());
    SmithState st(a);
    auto& d = st.d();
    const auto rows = a.rows();
    const auto cols = a.cols();
    std::size_t t = 0;
    for (; t < std::min(rows, cols); ++t) {
        // Minimal-norm nonzero entry of the trailing block, ties row-major.
        std::optional<Position> best;
        mpz_class best_norm;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j)
                if (!d.at(i, j).is_zero()) {
                    auto nrm = snf_norm(d.at(i, j));
                    if (!best || nrm < best_norm) {
                        best = Position{i, j};
                        best_norm = nrm;
                    }
                }
        if (!best)
            break;
        st.swap_rows(t, best->row);
        st.swap_cols(t, best->col);

        while (true) {
            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (d.at(i, t).is_zero())
                    continue;
                auto [q, r] = snf_divmod(d.at(i, t), d.at(t, t));
                st.add_row(i, t, -q);
                if (!r.is_zero())
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (d.at(t, j).is_zero())
                    continue;
                auto [q, r] = snf_divmod(d.at(t, j), d.at(t, t));
                st.add_col(j, t, -q);
                if (!r.is_zero())
                    clean = false;
            }
            if (!clean) {
                // A remainder of smaller norm appeared in row or column t; make it the pivot.
                std::optional<Position> next;
                mpz_class next_norm = snf_norm(d.at(t, t));
                for (std::size_t i = t + 1; i < rows; ++i)
                    if (!d.at(i, t).is_zero() && snf_norm(d.at(i, t)) < next_norm) {
                        next = Position{i, t};
                        next_norm = snf_norm(d.at(i, t));
                    }
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!d.at(t, j).is_zero() && snf_norm(d.at(t, j)) < next_norm) {
                        next = Position{t, j};
                        next_norm = snf_norm(d.at(t, j));
                    }
                if (next) {
                    st.swap_rows(t, next->row);
                    st.swap_cols(t, next->col);
                }
                continue;
            }
            // Row and column t are clear; the pivot must divide the trailing block.
            std::optional<std::size_t> offending;
            for (std::size_t i = t + 1; i < rows && !offending; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!d.at(i, j).is_zero() && !snf_divmod(d.at(i, j), d.at(t, t)).remainder.is_zero()) {
                        offending = i;
                        break;
                    }
            if (!offending)
                break;
            st.add_row(t, *offending, RingValue::one(ring));
        }
        auto unit = normalization_unit(d.at(t, t));
        if (!unit.is_one())
            st.scale_row(t, unit_inverse(unit));
    }
    return std::move(st).finish(ring, t);
}

IdempotentFactorization idempotent_snf_factor(const Idempotent& e)
{
    const auto& ring = e.ring();
    const auto n = e.size();
    auto snf = smith_normal_form(e.matrix());
    const auto ell = snf.invariant_factors.size();
    for (const auto& f : snf.invariant_factors)
        if (!f.is_one())
            throw Error(ErrorKind::InvalidArgument, "idempotent with non-unit invariant factor " + f.str());
    auto zero = RingValue::zero(ring);
    auto s = Matrix::generate(ring, n, n, [&](auto i, auto j) { return j < ell ? snf.left_inverse(i, j) : zero; });
    auto t = Matrix::generate(ring, n, n, [&](auto i, auto j) { return i < ell ? snf.right_inverse(i, j) : zero; });
    return {std::move(s), std::move(t), ell};
}

IdempotentFactorization idempotent_snf_factor(const Matrix& e)
{
    return idempotent_snf_factor(Idempotent(e));
}

Idempotent block_build_idempotent(const BlockBuilderInput& in)
{
    const auto& ring = in.a.ring();
    const auto ell = in.a.rows();
    const auto rest = in.b.cols();
    if (in.a.cols() != ell || in.c.rows() != ell || in.c.cols() != ell || in.b.rows() != ell || in.d.rows() != rest ||
        in.d.cols() != ell)
        throw Error(ErrorKind::DimensionMismatch, "block builder needs A, C l x l, B l x (n-l), D (n-l) x l");
    auto gram = in.a * in.c + in.b * in.d;
    if (!(gram == Matrix::identity(ring, ell)))
        throw Error(ErrorKind::ConstraintViolated, "AC + BD must equal the identity");
    return Idempotent(block_compose({in.c * in.a, in.c * in.b, in.d * in.a, in.d * in.b}));
}

BlockBuilderInput blocks_from_factorization(const IdempotentFactorization& f)
{
    const auto n = f.left.rows();
    const auto ell = f.ell;
    return {f.right.submatrix(0, 0, ell, ell), f.left.submatrix(0, 0, ell, ell), f.right.submatrix(0, ell, ell, n - ell),
            f.left.submatrix(ell, 0, n - ell, ell)};
}

BlockBuilderInput coprime_pair_builder(const RingValue& a1, const RingValue& b1, const RingValue& a2,
                                       const RingValue& b2, const RingValue& g1, const RingValue& h1,
                                       const RingValue& g2, const RingValue& h2)
{
    const auto& ring = a1.ring();
    for (const auto* x : {&b1, &a2, &b2, &g1, &h1, &g2, &h2})
        require_same_ring(x->ring(), ring);
    if (!(a1 * g1 + b1 * h1).is_one() || !(a2 * g2 + b2 * h2).is_one())
        throw Error(ErrorKind::ConstraintViolated, "Bezout coefficients must satisfy a_i g_i + b_i h_i = 1");
    auto zero = RingValue::zero(ring);
    auto mat = [&](RingValue w, RingValue x, RingValue y, RingValue z) {
        return Matrix(ring, 2, 2, {std::move(w), std::move(x), std::move(y), std::move(z)});
    };
    return {mat(a1, b1, zero, zero), mat(g1, -b1, h1, a1), mat(zero, zero, a2, b2), mat(b2, g2, -a2, h2)};
}

BlockBuilderInput coprime_pair_builder(const RingValue& a1, const RingValue& b1, const RingValue& a2,
                                       const RingValue& b2)
{
    auto first = euclid_gcd(a1, b1);
    auto second = euclid_gcd(a2, b2);
    if (!first.g.is_one())
        throw Error(ErrorKind::ConstraintViolated, "gcd(" + a1.str() + ", " + b1.str() + ") = " + first.g.str() + ", not 1");
    if (!second.g.is_one())
        throw Error(ErrorKind::ConstraintViolated, "gcd(" + a2.str() + ", " + b2.str() + ") = " + second.g.str() + ", not 1");
    return coprime_pair_builder(a1, b1, a2, b2, first.u, first.v, second.u, second.v);
}

} // namespace idem

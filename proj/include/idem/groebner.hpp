#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "idem/rings.hpp"

namespace idem::gb {

/// Exponent vector with inline storage (no allocation per term).
class Monomial {
public:
    static constexpr std::size_t kMaxVars = 48;

    explicit Monomial(std::size_t num_vars = 0);
    Monomial(std::initializer_list<unsigned> exps);
    explicit Monomial(const std::vector<std::uint32_t>& exps);

    std::size_t num_vars() const noexcept { return n_; }
    unsigned operator[](std::size_t i) const noexcept { return e_[i]; }
    unsigned degree() const noexcept { return deg_; }
    bool is_one() const noexcept { return deg_ == 0; }
    void set(std::size_t i, unsigned e);

    bool divides(const Monomial& other) const noexcept;
    /// True when the two share no variable.
    bool coprime(const Monomial& other) const noexcept;

    friend Monomial operator*(const Monomial& a, const Monomial& b);
    /// Exact quotient; a must be divisible by b.
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend Monomial lcm(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) noexcept;

    std::vector<std::uint32_t> exponents() const;

private:
    std::array<std::uint16_t, kMaxVars> e_{};
    std::uint8_t n_ = 0;
    std::uint32_t deg_ = 0;
};

enum class OrderKind { Lex, GrLex, GrevLex };

/// Monomial order with a variable precedence (precedence[0] is the largest variable).
class MonomialOrder {
public:
    /// Natural precedence x_1 > x_2 > ... > x_n.
    MonomialOrder(OrderKind kind, std::size_t num_vars);
    MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence);

    OrderKind kind() const noexcept { return kind_; }
    std::size_t num_vars() const noexcept { return precedence_.size(); }
    const std::vector<std::size_t>& precedence() const noexcept { return precedence_; }

    std::strong_ordering compare(const Monomial& a, const Monomial& b) const;
    bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

private:
    OrderKind kind_;
    std::vector<std::size_t> precedence_;
};

/// DimensionMismatch if the monomials differ in length from each other or the order.
std::strong_ordering monomial_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b);

struct Term {
    Monomial mono;
    mpq_class coeff;
};

/// Sparse polynomial over Q; terms strictly descending in the order it was built with.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::size_t num_vars) : num_vars_(num_vars) {}
    /// Sorts, merges duplicate monomials and drops zeros.
    Polynomial(std::size_t num_vars, std::vector<Term> terms, const MonomialOrder& order);

    static Polynomial from_sorted(std::size_t num_vars, std::vector<Term> terms);

    std::size_t num_vars() const noexcept { return num_vars_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    const std::vector<Term>& terms() const noexcept { return terms_; }
    const Term& lead() const { return terms_.front(); }
    const Monomial& lead_monomial() const { return terms_.front().mono; }
    unsigned degree() const;

    /// Scaled so the leading coefficient is 1.
    Polynomial monic() const;
    /// Re-sorted for another order.
    Polynomial reorder(const MonomialOrder& order) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);

private:
    std::size_t num_vars_ = 0;
    std::vector<Term> terms_;
};

/// a + k * m * b, all under `order`.
Polynomial add_scaled(const Polynomial& a, const mpq_class& k, const Monomial& m, const Polynomial& b,
                      const MonomialOrder& order);
Polynomial multiply(const Polynomial& a, const Polynomial& b, const MonomialOrder& order);

/// Conversion from/to Q[x1..xn] ring values.
Polynomial from_ring_value(const RingValue& v, const MonomialOrder& order);
RingValue to_ring_value(const Polynomial& p);
/// Parses with the scalar grammar (variables x1..xn).
Polynomial parse_polynomial(std::string_view text, const MonomialOrder& order);

/// Terms in order, variables named by `names` (x1..xn when empty).
std::string format(const Polynomial& p, const std::vector<std::string>& names = {});
std::string format(const Monomial& m, const std::vector<std::string>& names = {});

struct IdealBasis {
    IdealBasis(std::size_t num_vars, std::vector<Polynomial> generators);

    std::size_t num_vars;
    /// Never holds the zero polynomial.
    std::vector<Polynomial> generators;
};

struct GroebnerBasis {
    MonomialOrder order;
    /// Monic and inter-reduced, sorted by ascending leading monomial.
    std::vector<Polynomial> elements;
    std::size_t pairs_reduced = 0;
};

/// Remainder of multivariate division: no term is divisible by a leading monomial of `basis`.
Polynomial poly_reduce(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order);

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order);

struct BuchbergerOptions {
    /// Maximum S-pair reductions before BudgetExceeded.
    std::size_t max_pairs = 200'000;
};

/// Reduced Groebner basis. Pair selection: smallest lcm degree first; pairs are
/// skipped by the coprime-leading-monomial and chain criteria.
GroebnerBasis buchberger(const IdealBasis& ideal, const MonomialOrder& order, const BuchbergerOptions& options = {});

/// Minimal generators of the leading-term ideal, ascending in the basis order.
std::vector<Monomial> leading_term_ideal(const GroebnerBasis& basis);

/// Dimension of V(monomials): num_vars minus the smallest variable set meeting every
/// monomial's support. -1 when a monomial is 1 (empty variety). `max_nodes` caps the search.
int monomial_ideal_dimension(const std::vector<Monomial>& monomials, std::size_t num_vars,
                             std::uint64_t max_nodes = 50'000'000);

/// Generators F_ij = sum_k x_ik x_kj - x_ij of the idempotent variety in variables
/// x_11 > x_12 > ... > x_nn (row-major index i*n + j), plus tr(X) - r when a slice is given.
IdealBasis idempotent_ideal(std::size_t n, std::optional<long> slice = std::nullopt);

/// Variable names x11, x12, ... (x1_1 style when n > 9).
std::vector<std::string> matrix_variable_names(std::size_t n);

struct VarietyDimension {
    int dimension;
    GroebnerBasis basis;
    std::vector<Monomial> leading_monomials;
};

/// Dimension of the idempotent variety of M_n (optionally a trace slice) via
/// grlex Groebner basis -> leading-term ideal -> coordinate-subspace dimension.
VarietyDimension variety_dimension(std::size_t n, std::optional<long> slice = std::nullopt,
                                   const BuchbergerOptions& options = {});

} // namespace idem::gb

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "idem/error.hpp"

namespace idem {

enum class RingKind {
    Integers,
    PrimeField,
    Rationals,
    UniPoly,
    MultiPoly,
    // Fraction field of a univariate polynomial ring over a field. Only
    // reachable through fraction_field(); used for rank over polynomial rings.
    RationalFunctions,
};

class RingDescriptor;
using Ring = std::shared_ptr<const RingDescriptor>;

/// Immutable description of a coefficient ring. Compare with same_ring().
class RingDescriptor {
public:
    static Ring integers();
    static Ring rationals();
    /// Throws InvalidArgument unless p is a prime below 2^32.
    static Ring prime_field(std::uint64_t p);
    /// Polynomial rings take a scalar base (Z, Fp or Q).
    static Ring univariate(const Ring& base);
    static Ring multivariate(const Ring& base, std::size_t num_vars);
    /// base must be a univariate ring over Fp or Q.
    static Ring rational_functions(const Ring& poly_ring);

    RingKind kind() const noexcept { return kind_; }
    std::uint64_t modulus() const noexcept { return modulus_; }
    const Ring& base() const noexcept { return base_; }
    std::size_t num_vars() const noexcept { return num_vars_; }

    bool is_field() const noexcept;
    bool is_polynomial() const noexcept;
    /// Z, Fp[x] and Q[x]: the rings with a division algorithm used by gcd and SNF.
    bool is_euclidean() const noexcept;

    /// Short tag: Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx, or a descriptive form for the rest.
    std::string name() const;

    friend bool operator==(const RingDescriptor& a, const RingDescriptor& b);

private:
    RingDescriptor(RingKind kind, std::uint64_t modulus, Ring base, std::size_t num_vars);

    RingKind kind_;
    std::uint64_t modulus_ = 0;
    Ring base_;
    std::size_t num_vars_ = 0;
};

bool same_ring(const Ring& a, const Ring& b) noexcept;
void require_same_ring(const Ring& a, const Ring& b);

/// Parses a matrix-file ring tag (Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx).
Ring parse_ring_tag(std::string_view tag);

/// The field a ring embeds into: Z -> Q, R[x] -> Frac(K[x]); fields map to themselves.
Ring fraction_field(const Ring& ring);

bool is_prime(std::uint64_t n) noexcept;

struct PolyTerm;
struct PolyData;
struct FractionData;

using Exponents = std::vector<std::uint32_t>;

/// Exact ring element in canonical form; equal payloads <=> equal values.
class RingValue {
public:
    static RingValue zero(const Ring& ring);
    static RingValue one(const Ring& ring);
    static RingValue from_int(const Ring& ring, long value);
    static RingValue from_integer(const Ring& ring, const mpz_class& value);
    /// num/den in Q, or num * den^-1 in any field.
    static RingValue fraction(const Ring& ring, const mpz_class& num, const mpz_class& den);
    /// The variable x (univariate, index 0) or x_{index+1} (multivariate).
    static RingValue variable(const Ring& ring, std::size_t index = 0);
    /// Sum of coeff * x^exps. Coefficients must lie in ring->base(); zeros are dropped.
    static RingValue polynomial(const Ring& ring, std::vector<std::pair<Exponents, RingValue>> terms);
    /// Univariate shorthand: coefficients listed from degree 0 upwards.
    static RingValue univariate(const Ring& ring, const std::vector<RingValue>& coeffs);
    /// Reduced num/den in a rational-function field.
    static RingValue rational_function(const Ring& ring, const RingValue& num, const RingValue& den);

    const Ring& ring() const noexcept { return ring_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const;

    const mpz_class& integer() const;
    std::uint64_t residue() const;
    const mpq_class& rational() const;
    /// Polynomial terms sorted by exponent vector, lexicographically descending.
    const std::vector<PolyTerm>& terms() const;
    const RingValue& numerator() const;
    const RingValue& denominator() const;

    /// Univariate degree; -1 for the zero polynomial.
    long degree() const;
    /// Coefficient of the highest-degree term (univariate), zero of the base if zero.
    RingValue leading_coefficient() const;
    /// Coefficient of x^e (univariate).
    RingValue coefficient(std::uint32_t e) const;

    std::string str() const;

    friend RingValue operator+(const RingValue& a, const RingValue& b);
    friend RingValue operator-(const RingValue& a, const RingValue& b);
    friend RingValue operator*(const RingValue& a, const RingValue& b);
    friend RingValue operator-(const RingValue& a);
    friend bool operator==(const RingValue& a, const RingValue& b);

private:
    using Payload = std::variant<mpz_class, std::uint64_t, mpq_class, std::shared_ptr<const PolyData>,
                                 std::shared_ptr<const FractionData>>;

    RingValue(Ring ring, Payload payload);

    static RingValue make_poly(const Ring& ring, std::vector<PolyTerm> terms);

    friend struct RingOps;

    Ring ring_;
    Payload payload_;
};

struct PolyTerm {
    Exponents exps;
    RingValue coeff;
};

struct PolyData {
    std::vector<PolyTerm> terms;
};

struct FractionData {
    RingValue num;
    RingValue den;
};

enum class ArithOp { Add, Sub, Mul, Neg };

/// Generic entry point; Neg ignores y.
RingValue ring_arith(ArithOp op, const RingValue& x, const RingValue& y);

/// Multiplicative inverse in a field. DivisionByZero on 0, UnsupportedRing outside fields.
RingValue ring_inverse(const RingValue& x);

RingValue pow(const RingValue& x, unsigned long e);

/// a / b when b divides a exactly; nullopt otherwise. DivisionByZero when b = 0.
std::optional<RingValue> exact_divide(const RingValue& a, const RingValue& b);

struct DivMod {
    RingValue quotient;
    RingValue remainder;
};

/// Division with remainder in a Euclidean ring: a = q*b + r with norm(r) < norm(b).
DivMod euclid_divmod(const RingValue& a, const RingValue& b);

/// |a| over Z, degree over K[x]. Only meaningful for nonzero a.
mpz_class euclid_norm(const RingValue& a);

/// Unit u with a = u * normal(a): sign over Z, leading coefficient over K[x], a itself in fields.
RingValue normalization_unit(const RingValue& a);
RingValue normalize(const RingValue& a);

struct Bezout {
    RingValue g;
    RingValue u;
    RingValue v;
};

/// Extended gcd with u*x + v*y = g; g positive over Z, monic over K[x], 0 iff x = y = 0.
Bezout euclid_gcd(const RingValue& x, const RingValue& y);

/// Image of x in fraction_field(x.ring()).
RingValue embed_in_fraction_field(const RingValue& x);
/// Image of x in target, where target is x's ring or a ring it embeds into.
RingValue embed(const RingValue& x, const Ring& target);

/// Parses a scalar in the text grammar. Column numbers in errors are 1-based offsets into text.
RingValue parse_scalar(const Ring& ring, std::string_view text);

} // namespace idem

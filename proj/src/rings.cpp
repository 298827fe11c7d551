#include "idem/rings.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

namespace idem {

// --- errors -----------------------------------------------------------------

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::UnsupportedRing: return "UnsupportedRing";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ConstraintViolated: return "ConstraintViolated";
    case ErrorKind::NotComplementary: return "NotComplementary";
    case ErrorKind::NotComparable: return "NotComparable";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::Parse: return "ParseError";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}

namespace {
std::string position_message(const std::string& message, std::size_t line, std::size_t column)
{
    std::ostringstream os;
    if (line > 0)
        os << "line " << line << ", ";
    if (column > 0)
        os << "column " << column << ": ";
    os << message;
    return os.str();
}
} // namespace

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(ErrorKind::Parse, position_message(message, line, column)), detail_(message), line_(line), column_(column)
{
}

// --- ring descriptors -------------------------------------------------------

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2)
        return false;
    if (n % 2 == 0)
        return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

RingDescriptor::RingDescriptor(RingKind kind, std::uint64_t modulus, Ring base, std::size_t num_vars)
    : kind_(kind), modulus_(modulus), base_(std::move(base)), num_vars_(num_vars)
{
}

Ring RingDescriptor::integers()
{
    static const Ring z{new RingDescriptor(RingKind::Integers, 0, nullptr, 0)};
    return z;
}

Ring RingDescriptor::rationals()
{
    static const Ring q{new RingDescriptor(RingKind::Rationals, 0, nullptr, 0)};
    return q;
}

Ring RingDescriptor::prime_field(std::uint64_t p)
{
    if (p >= (std::uint64_t{1} << 32) || !is_prime(p))
        throw Error(ErrorKind::InvalidArgument, "prime field modulus must be a prime below 2^32, got " + std::to_string(p));
    return Ring{new RingDescriptor(RingKind::PrimeField, p, nullptr, 0)};
}

namespace {
void require_scalar_base(const Ring& base)
{
    if (!base)
        throw Error(ErrorKind::InvalidArgument, "polynomial ring needs a base ring");
    switch (base->kind()) {
    case RingKind::Integers:
    case RingKind::PrimeField:
    case RingKind::Rationals: return;
    default: throw Error(ErrorKind::UnsupportedRing, "polynomial coefficients must be Z, Fp or Q, got " + base->name());
    }
}
} // namespace

Ring RingDescriptor::univariate(const Ring& base)
{
    require_scalar_base(base);
    return Ring{new RingDescriptor(RingKind::UniPoly, 0, base, 1)};
}

Ring RingDescriptor::multivariate(const Ring& base, std::size_t num_vars)
{
    require_scalar_base(base);
    if (num_vars == 0)
        throw Error(ErrorKind::InvalidArgument, "multivariate ring needs at least one variable");
    return Ring{new RingDescriptor(RingKind::MultiPoly, 0, base, num_vars)};
}

Ring RingDescriptor::rational_functions(const Ring& poly_ring)
{
    if (!poly_ring || poly_ring->kind() != RingKind::UniPoly || !poly_ring->base()->is_field())
        throw Error(ErrorKind::UnsupportedRing, "rational functions need a univariate ring over a field");
    return Ring{new RingDescriptor(RingKind::RationalFunctions, 0, poly_ring, 0)};
}

bool RingDescriptor::is_field() const noexcept
{
    return kind_ == RingKind::PrimeField || kind_ == RingKind::Rationals || kind_ == RingKind::RationalFunctions;
}

bool RingDescriptor::is_polynomial() const noexcept
{
    return kind_ == RingKind::UniPoly || kind_ == RingKind::MultiPoly;
}

bool RingDescriptor::is_euclidean() const noexcept
{
    return kind_ == RingKind::Integers || (kind_ == RingKind::UniPoly && base_->is_field());
}

std::string RingDescriptor::name() const
{
    switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "Fp:" + std::to_string(modulus_);
    case RingKind::UniPoly:
        switch (base_->kind()) {
        case RingKind::Integers: return "Zx";
        case RingKind::Rationals: return "Qx";
        case RingKind::PrimeField: return "Fpx:" + std::to_string(base_->modulus());
        default: break;
        }
        return base_->name() + "[x]";
    case RingKind::MultiPoly: return base_->name() + "[x1..x" + std::to_string(num_vars_) + "]";
    case RingKind::RationalFunctions: return "Frac(" + base_->name() + ")";
    }
    return "?";
}

bool operator==(const RingDescriptor& a, const RingDescriptor& b)
{
    if (&a == &b)
        return true;
    if (a.kind_ != b.kind_ || a.modulus_ != b.modulus_ || a.num_vars_ != b.num_vars_)
        return false;
    if (!a.base_ || !b.base_)
        return !a.base_ && !b.base_;
    return *a.base_ == *b.base_;
}

bool same_ring(const Ring& a, const Ring& b) noexcept
{
    return a == b || (a && b && *a == *b);
}

void require_same_ring(const Ring& a, const Ring& b)
{
    if (!same_ring(a, b))
        throw Error(ErrorKind::RingMismatch, "ring mismatch: " + a->name() + " vs " + b->name());
}

Ring parse_ring_tag(std::string_view tag)
{
    auto modulus_after = [&](std::string_view prefix) -> std::uint64_t {
        auto digits = tag.substr(prefix.size());
        if (digits.empty() || digits.size() > 19 || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw ParseError("bad modulus in ring tag '" + std::string(tag) + "'", 1, prefix.size() + 1);
        return std::stoull(std::string(digits));
    };
    if (tag == "Z")
        return RingDescriptor::integers();
    if (tag == "Q")
        return RingDescriptor::rationals();
    if (tag == "Zx")
        return RingDescriptor::univariate(RingDescriptor::integers());
    if (tag == "Qx")
        return RingDescriptor::univariate(RingDescriptor::rationals());
    if (tag.rfind("Fpx:", 0) == 0)
        return RingDescriptor::univariate(RingDescriptor::prime_field(modulus_after("Fpx:")));
    if (tag.rfind("Fp:", 0) == 0)
        return RingDescriptor::prime_field(modulus_after("Fp:"));
    throw ParseError("unknown ring tag '" + std::string(tag) + "' (expected Z, Q, Fp:<p>, Zx, Fpx:<p>, Qx)", 1, 1);
}

Ring fraction_field(const Ring& ring)
{
    switch (ring->kind()) {
    case RingKind::Integers: return RingDescriptor::rationals();
    case RingKind::PrimeField:
    case RingKind::Rationals:
    case RingKind::RationalFunctions: return ring;
    case RingKind::UniPoly: {
        auto base_field = fraction_field(ring->base());
        return RingDescriptor::rational_functions(RingDescriptor::univariate(base_field));
    }
    case RingKind::MultiPoly: break;
    }
    throw Error(ErrorKind::UnsupportedRing, "no fraction-field embedding for " + ring->name());
}

// --- ring values ------------------------------------------------------------

struct RingOps {
    static const mpz_class& z(const RingValue& v) { return std::get<mpz_class>(v.payload_); }
    static std::uint64_t fp(const RingValue& v) { return std::get<std::uint64_t>(v.payload_); }
    static const mpq_class& q(const RingValue& v) { return std::get<mpq_class>(v.payload_); }
    static const PolyData& poly(const RingValue& v) { return *std::get<std::shared_ptr<const PolyData>>(v.payload_); }
    static const FractionData& frac(const RingValue& v)
    {
        return *std::get<std::shared_ptr<const FractionData>>(v.payload_);
    }

    static RingValue make(const Ring& r, RingValue::Payload p) { return RingValue(r, std::move(p)); }

    static RingValue make_fp(const Ring& r, std::uint64_t x) { return RingValue(r, x); }

    static RingValue make_q(const Ring& r, mpq_class x)
    {
        x.canonicalize();
        return RingValue(r, std::move(x));
    }

    static RingValue make_poly(const Ring& r, std::vector<PolyTerm> terms) { return RingValue::make_poly(r, std::move(terms)); }

    static RingValue make_fraction(const Ring& r, RingValue num, RingValue den)
    {
        if (den.is_zero())
            throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
        if (num.is_zero())
            return RingValue(r, std::make_shared<const FractionData>(FractionData{num, RingValue::one(num.ring())}));
        auto g = euclid_gcd(num, den).g;
        if (!g.is_one()) {
            num = *exact_divide(num, g);
            den = *exact_divide(den, g);
        }
        auto lc = den.leading_coefficient();
        if (!lc.is_one()) {
            auto inv = RingValue::polynomial(den.ring(), {{Exponents{0}, ring_inverse(lc)}});
            num = num * inv;
            den = den * inv;
        }
        return RingValue(r, std::make_shared<const FractionData>(FractionData{std::move(num), std::move(den)}));
    }

    static std::vector<PolyTerm> add_terms(const std::vector<PolyTerm>& a, const std::vector<PolyTerm>& b, bool negate_b)
    {
        std::vector<PolyTerm> out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].exps > b[j].exps)) {
                out.push_back(a[i++]);
            } else if (i == a.size() || b[j].exps > a[i].exps) {
                out.push_back({b[j].exps, negate_b ? -b[j].coeff : b[j].coeff});
                ++j;
            } else {
                auto c = negate_b ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
                if (!c.is_zero())
                    out.push_back({a[i].exps, std::move(c)});
                ++i;
                ++j;
            }
        }
        return out;
    }

    static std::vector<PolyTerm> mul_terms(const std::vector<PolyTerm>& a, const std::vector<PolyTerm>& b)
    {
        std::map<Exponents, RingValue, std::greater<>> acc;
        for (const auto& s : a) {
            for (const auto& t : b) {
                Exponents e(s.exps.size());
                for (std::size_t k = 0; k < e.size(); ++k)
                    e[k] = s.exps[k] + t.exps[k];
                auto c = s.coeff * t.coeff;
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(std::move(e), std::move(c));
                else
                    it->second = it->second + c;
            }
        }
        std::vector<PolyTerm> out;
        out.reserve(acc.size());
        for (auto& [e, c] : acc)
            if (!c.is_zero())
                out.push_back({e, c});
        return out;
    }
};

RingValue::RingValue(Ring ring, Payload payload) : ring_(std::move(ring)), payload_(std::move(payload)) {}

RingValue RingValue::make_poly(const Ring& ring, std::vector<PolyTerm> terms)
{
    return RingValue(ring, std::make_shared<const PolyData>(PolyData{std::move(terms)}));
}

RingValue RingValue::zero(const Ring& ring)
{
    return from_int(ring, 0);
}

RingValue RingValue::one(const Ring& ring)
{
    return from_int(ring, 1);
}

RingValue RingValue::from_int(const Ring& ring, long value)
{
    return from_integer(ring, mpz_class(value));
}

RingValue RingValue::from_integer(const Ring& ring, const mpz_class& value)
{
    switch (ring->kind()) {
    case RingKind::Integers: return RingValue(ring, value);
    case RingKind::PrimeField: {
        mpz_class r;
        mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), ring->modulus());
        return RingValue(ring, static_cast<std::uint64_t>(r.get_ui()));
    }
    case RingKind::Rationals: return RingValue(ring, mpq_class(value));
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        auto c = from_integer(ring->base(), value);
        std::vector<PolyTerm> terms;
        if (!c.is_zero())
            terms.push_back({Exponents(ring->num_vars(), 0), std::move(c)});
        return make_poly(ring, std::move(terms));
    }
    case RingKind::RationalFunctions: {
        auto num = from_integer(ring->base(), value);
        return RingValue(ring, std::make_shared<const FractionData>(FractionData{num, one(ring->base())}));
    }
    }
    throw Error(ErrorKind::UnsupportedRing, "unknown ring kind");
}

RingValue RingValue::fraction(const Ring& ring, const mpz_class& num, const mpz_class& den)
{
    if (den == 0)
        throw Error(ErrorKind::DivisionByZero, "fraction with zero denominator");
    switch (ring->kind()) {
    case RingKind::Rationals: return RingOps::make_q(ring, mpq_class(num, den));
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        auto c = fraction(ring->base(), num, den);
        std::vector<PolyTerm> terms;
        if (!c.is_zero())
            terms.push_back({Exponents(ring->num_vars(), 0), std::move(c)});
        return make_poly(ring, std::move(terms));
    }
    default: break;
    }
    auto n = from_integer(ring, num);
    auto d = from_integer(ring, den);
    if (ring->is_field())
        return n * ring_inverse(d);
    auto quotient = exact_divide(n, d);
    if (!quotient)
        throw Error(ErrorKind::InvalidArgument, num.get_str() + "/" + den.get_str() + " is not an element of " + ring->name());
    return *quotient;
}

RingValue RingValue::variable(const Ring& ring, std::size_t index)
{
    if (!ring->is_polynomial() || index >= ring->num_vars())
        throw Error(ErrorKind::InvalidArgument, "no variable " + std::to_string(index) + " in " + ring->name());
    Exponents e(ring->num_vars(), 0);
    e[index] = 1;
    return make_poly(ring, {{std::move(e), one(ring->base())}});
}

RingValue RingValue::polynomial(const Ring& ring, std::vector<std::pair<Exponents, RingValue>> terms)
{
    if (!ring->is_polynomial())
        throw Error(ErrorKind::UnsupportedRing, ring->name() + " is not a polynomial ring");
    std::map<Exponents, RingValue, std::greater<>> acc;
    for (auto& [e, c] : terms) {
        if (e.size() != ring->num_vars())
            throw Error(ErrorKind::InvalidArgument, "exponent vector length does not match variable count");
        require_same_ring(c.ring(), ring->base());
        auto it = acc.find(e);
        if (it == acc.end())
            acc.emplace(e, c);
        else
            it->second = it->second + c;
    }
    std::vector<PolyTerm> out;
    for (auto& [e, c] : acc)
        if (!c.is_zero())
            out.push_back({e, c});
    return make_poly(ring, std::move(out));
}

RingValue RingValue::univariate(const Ring& ring, const std::vector<RingValue>& coeffs)
{
    if (ring->kind() != RingKind::UniPoly)
        throw Error(ErrorKind::UnsupportedRing, ring->name() + " is not a univariate polynomial ring");
    std::vector<std::pair<Exponents, RingValue>> terms;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        terms.emplace_back(Exponents{static_cast<std::uint32_t>(i)}, coeffs[i]);
    return polynomial(ring, std::move(terms));
}

RingValue RingValue::rational_function(const Ring& ring, const RingValue& num, const RingValue& den)
{
    if (ring->kind() != RingKind::RationalFunctions)
        throw Error(ErrorKind::UnsupportedRing, ring->name() + " is not a rational-function field");
    require_same_ring(num.ring(), ring->base());
    require_same_ring(den.ring(), ring->base());
    return RingOps::make_fraction(ring, num, den);
}

bool RingValue::is_zero() const
{
    switch (ring_->kind()) {
    case RingKind::Integers: return RingOps::z(*this) == 0;
    case RingKind::PrimeField: return RingOps::fp(*this) == 0;
    case RingKind::Rationals: return RingOps::q(*this) == 0;
    case RingKind::UniPoly:
    case RingKind::MultiPoly: return RingOps::poly(*this).terms.empty();
    case RingKind::RationalFunctions: return RingOps::frac(*this).num.is_zero();
    }
    return false;
}

bool RingValue::is_one() const
{
    switch (ring_->kind()) {
    case RingKind::Integers: return RingOps::z(*this) == 1;
    case RingKind::PrimeField: return RingOps::fp(*this) == 1;
    case RingKind::Rationals: return RingOps::q(*this) == 1;
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        const auto& t = RingOps::poly(*this).terms;
        return t.size() == 1 && std::all_of(t[0].exps.begin(), t[0].exps.end(), [](auto e) { return e == 0; }) &&
               t[0].coeff.is_one();
    }
    case RingKind::RationalFunctions: {
        const auto& f = RingOps::frac(*this);
        return f.num.is_one() && f.den.is_one();
    }
    }
    return false;
}

bool RingValue::is_unit() const
{
    switch (ring_->kind()) {
    case RingKind::Integers: return abs(RingOps::z(*this)) == 1;
    case RingKind::PrimeField:
    case RingKind::Rationals:
    case RingKind::RationalFunctions: return !is_zero();
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        const auto& t = RingOps::poly(*this).terms;
        return t.size() == 1 && std::all_of(t[0].exps.begin(), t[0].exps.end(), [](auto e) { return e == 0; }) &&
               t[0].coeff.is_unit();
    }
    }
    return false;
}

const mpz_class& RingValue::integer() const
{
    if (ring_->kind() != RingKind::Integers)
        throw Error(ErrorKind::UnsupportedRing, "integer() on " + ring_->name());
    return RingOps::z(*this);
}

std::uint64_t RingValue::residue() const
{
    if (ring_->kind() != RingKind::PrimeField)
        throw Error(ErrorKind::UnsupportedRing, "residue() on " + ring_->name());
    return RingOps::fp(*this);
}

const mpq_class& RingValue::rational() const
{
    if (ring_->kind() != RingKind::Rationals)
        throw Error(ErrorKind::UnsupportedRing, "rational() on " + ring_->name());
    return RingOps::q(*this);
}

const std::vector<PolyTerm>& RingValue::terms() const
{
    if (!ring_->is_polynomial())
        throw Error(ErrorKind::UnsupportedRing, "terms() on " + ring_->name());
    return RingOps::poly(*this).terms;
}

const RingValue& RingValue::numerator() const
{
    if (ring_->kind() != RingKind::RationalFunctions)
        throw Error(ErrorKind::UnsupportedRing, "numerator() on " + ring_->name());
    return RingOps::frac(*this).num;
}

const RingValue& RingValue::denominator() const
{
    if (ring_->kind() != RingKind::RationalFunctions)
        throw Error(ErrorKind::UnsupportedRing, "denominator() on " + ring_->name());
    return RingOps::frac(*this).den;
}

long RingValue::degree() const
{
    if (ring_->kind() != RingKind::UniPoly)
        throw Error(ErrorKind::UnsupportedRing, "degree() on " + ring_->name());
    const auto& t = RingOps::poly(*this).terms;
    return t.empty() ? -1 : static_cast<long>(t.front().exps[0]);
}

RingValue RingValue::leading_coefficient() const
{
    const auto& t = terms();
    return t.empty() ? zero(ring_->base()) : t.front().coeff;
}

RingValue RingValue::coefficient(std::uint32_t e) const
{
    for (const auto& t : terms())
        if (t.exps[0] == e)
            return t.coeff;
    return zero(ring_->base());
}

namespace {

std::string monomial_str(const Exponents& e)
{
    std::string out;
    auto var = [&](std::size_t k) { return e.size() == 1 ? std::string("x") : "x" + std::to_string(k + 1); };
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0)
            continue;
        if (!out.empty())
            out += '*';
        out += var(k);
        if (e[k] > 1)
            out += '^' + std::to_string(e[k]);
    }
    return out;
}

} // namespace

std::string RingValue::str() const
{
    switch (ring_->kind()) {
    case RingKind::Integers: return RingOps::z(*this).get_str();
    case RingKind::PrimeField: return std::to_string(RingOps::fp(*this));
    case RingKind::Rationals: return RingOps::q(*this).get_str();
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        const auto& terms = RingOps::poly(*this).terms;
        if (terms.empty())
            return "0";
        std::string out;
        for (const auto& t : terms) {
            auto mono = monomial_str(t.exps);
            std::string piece;
            if (mono.empty())
                piece = t.coeff.str();
            else if (t.coeff.is_one())
                piece = mono;
            else if ((-t.coeff).is_one())
                piece = "-" + mono;
            else
                piece = t.coeff.str() + "*" + mono;
            if (!out.empty() && piece.front() != '-')
                out += '+';
            out += piece;
        }
        return out;
    }
    case RingKind::RationalFunctions: {
        const auto& f = RingOps::frac(*this);
        if (f.den.is_one())
            return f.num.str();
        return "(" + f.num.str() + ")/(" + f.den.str() + ")";
    }
    }
    return "?";
}

RingValue operator+(const RingValue& a, const RingValue& b)
{
    require_same_ring(a.ring_, b.ring_);
    const auto& r = a.ring_;
    switch (r->kind()) {
    case RingKind::Integers: return RingOps::make(r, mpz_class(RingOps::z(a) + RingOps::z(b)));
    case RingKind::PrimeField: return RingOps::make_fp(r, (RingOps::fp(a) + RingOps::fp(b)) % r->modulus());
    case RingKind::Rationals: return RingOps::make(r, mpq_class(RingOps::q(a) + RingOps::q(b)));
    case RingKind::UniPoly:
    case RingKind::MultiPoly:
        return RingOps::make_poly(r, RingOps::add_terms(RingOps::poly(a).terms, RingOps::poly(b).terms, false));
    case RingKind::RationalFunctions: {
        const auto& x = RingOps::frac(a);
        const auto& y = RingOps::frac(b);
        if (x.den == y.den)
            return RingOps::make_fraction(r, x.num + y.num, x.den);
        return RingOps::make_fraction(r, x.num * y.den + y.num * x.den, x.den * y.den);
    }
    }
    throw Error(ErrorKind::UnsupportedRing, "unknown ring kind");
}

RingValue operator-(const RingValue& a)
{
    const auto& r = a.ring_;
    switch (r->kind()) {
    case RingKind::Integers: return RingOps::make(r, mpz_class(-RingOps::z(a)));
    case RingKind::PrimeField: {
        auto x = RingOps::fp(a);
        return RingOps::make_fp(r, x == 0 ? 0 : r->modulus() - x);
    }
    case RingKind::Rationals: return RingOps::make(r, mpq_class(-RingOps::q(a)));
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        auto terms = RingOps::poly(a).terms;
        for (auto& t : terms)
            t.coeff = -t.coeff;
        return RingOps::make_poly(r, std::move(terms));
    }
    case RingKind::RationalFunctions: {
        const auto& x = RingOps::frac(a);
        return RingOps::make(r, std::make_shared<const FractionData>(FractionData{-x.num, x.den}));
    }
    }
    throw Error(ErrorKind::UnsupportedRing, "unknown ring kind");
}

RingValue operator-(const RingValue& a, const RingValue& b)
{
    require_same_ring(a.ring_, b.ring_);
    const auto& r = a.ring_;
    switch (r->kind()) {
    case RingKind::Integers: return RingOps::make(r, mpz_class(RingOps::z(a) - RingOps::z(b)));
    case RingKind::PrimeField:
        return RingOps::make_fp(r, (RingOps::fp(a) + r->modulus() - RingOps::fp(b)) % r->modulus());
    case RingKind::Rationals: return RingOps::make(r, mpq_class(RingOps::q(a) - RingOps::q(b)));
    case RingKind::UniPoly:
    case RingKind::MultiPoly:
        return RingOps::make_poly(r, RingOps::add_terms(RingOps::poly(a).terms, RingOps::poly(b).terms, true));
    case RingKind::RationalFunctions: return a + (-b);
    }
    throw Error(ErrorKind::UnsupportedRing, "unknown ring kind");
}

RingValue operator*(const RingValue& a, const RingValue& b)
{
    require_same_ring(a.ring_, b.ring_);
    const auto& r = a.ring_;
    switch (r->kind()) {
    case RingKind::Integers: return RingOps::make(r, mpz_class(RingOps::z(a) * RingOps::z(b)));
    case RingKind::PrimeField: {
        auto prod = static_cast<unsigned __int128>(RingOps::fp(a)) * RingOps::fp(b);
        return RingOps::make_fp(r, static_cast<std::uint64_t>(prod % r->modulus()));
    }
    case RingKind::Rationals: return RingOps::make(r, mpq_class(RingOps::q(a) * RingOps::q(b)));
    case RingKind::UniPoly:
    case RingKind::MultiPoly: return RingOps::make_poly(r, RingOps::mul_terms(RingOps::poly(a).terms, RingOps::poly(b).terms));
    case RingKind::RationalFunctions: {
        const auto& x = RingOps::frac(a);
        const auto& y = RingOps::frac(b);
        return RingOps::make_fraction(r, x.num * y.num, x.den * y.den);
    }
    }
    throw Error(ErrorKind::UnsupportedRing, "unknown ring kind");
}

bool operator==(const RingValue& a, const RingValue& b)
{
    if (!same_ring(a.ring_, b.ring_))
        return false;
    switch (a.ring_->kind()) {
    case RingKind::Integers: return RingOps::z(a) == RingOps::z(b);
    case RingKind::PrimeField: return RingOps::fp(a) == RingOps::fp(b);
    case RingKind::Rationals: return RingOps::q(a) == RingOps::q(b);
    case RingKind::UniPoly:
    case RingKind::MultiPoly: {
        const auto& x = RingOps::poly(a).terms;
        const auto& y = RingOps::poly(b).terms;
        if (x.size() != y.size())
            return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x[i].exps != y[i].exps || !(x[i].coeff == y[i].coeff))
                return false;
        return true;
    }
    case RingKind::RationalFunctions: {
        const auto& x = RingOps::frac(a);
        const auto& y = RingOps::frac(b);
        return x.num == y.num && x.den == y.den;
    }
    }
    return false;
}

// --- generic operations -----------------------------------------------------

RingValue ring_arith(ArithOp op, const RingValue& x, const RingValue& y)
{
    switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Sub: return x - y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Neg: return -x;
    }
    throw Error(ErrorKind::InvalidArgument, "unknown arithmetic op");
}

namespace {

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m)
{
    unsigned __int128 result = 1, b = base % m;
    while (e) {
        if (e & 1)
            result = result * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return static_cast<std::uint64_t>(result);
}

} // namespace

RingValue ring_inverse(const RingValue& x)
{
    const auto& r = x.ring();
    if (!r->is_field())
        throw Error(ErrorKind::UnsupportedRing, "inverse requires a field, got " + r->name());
    if (x.is_zero())
        throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    switch (r->kind()) {
    case RingKind::PrimeField: return RingOps::make_fp(r, pow_mod(x.residue(), r->modulus() - 2, r->modulus()));
    case RingKind::Rationals: return RingOps::make_q(r, 1 / x.rational());
    case RingKind::RationalFunctions: return RingOps::make_fraction(r, x.denominator(), x.numerator());
    default: break;
    }
    throw Error(ErrorKind::UnsupportedRing, "inverse requires a field, got " + r->name());
}

RingValue pow(const RingValue& x, unsigned long e)
{
    auto result = RingValue::one(x.ring());
    auto base = x;
    while (e) {
        if (e & 1)
            result = result * base;
        e >>= 1;
        if (e)
            base = base * base;
    }
    return result;
}

namespace {

RingValue monomial_times(const RingValue& coeff, std::uint32_t degree, const Ring& ring)
{
    return RingValue::polynomial(ring, {{Exponents{degree}, coeff}});
}

// Long division of univariate polynomials. When the leading coefficient of b is
// not invertible, each step needs an exact coefficient quotient; returns nullopt
// if that fails.
std::optional<DivMod> poly_long_division(const RingValue& a, const RingValue& b)
{
    const auto& ring = a.ring();
    auto lc_b = b.leading_coefficient();
    auto deg_b = static_cast<std::uint32_t>(b.degree());
    std::optional<RingValue> lc_inv;
    if (ring->base()->is_field())
        lc_inv = ring_inverse(lc_b);
    auto q = RingValue::zero(ring);
    auto r = a;
    while (!r.is_zero() && r.degree() >= static_cast<long>(deg_b)) {
        auto lc_r = r.leading_coefficient();
        std::optional<RingValue> c;
        if (lc_inv)
            c = lc_r * *lc_inv;
        else
            c = exact_divide(lc_r, lc_b);
        if (!c)
            return std::nullopt;
        auto t = monomial_times(*c, static_cast<std::uint32_t>(r.degree()) - deg_b, ring);
        q = q + t;
        r = r - t * b;
    }
    return DivMod{q, r};
}

} // namespace

std::optional<RingValue> exact_divide(const RingValue& a, const RingValue& b)
{
    require_same_ring(a.ring(), b.ring());
    if (b.is_zero())
        throw Error(ErrorKind::DivisionByZero, "division by zero");
    const auto& r = a.ring();
    switch (r->kind()) {
    case RingKind::Integers: {
        if (!mpz_divisible_p(a.integer().get_mpz_t(), b.integer().get_mpz_t()))
            return std::nullopt;
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), a.integer().get_mpz_t(), b.integer().get_mpz_t());
        return RingValue::from_integer(r, q);
    }
    case RingKind::PrimeField:
    case RingKind::Rationals:
    case RingKind::RationalFunctions: return a * ring_inverse(b);
    case RingKind::UniPoly: {
        auto qr = poly_long_division(a, b);
        if (!qr || !qr->remainder.is_zero())
            return std::nullopt;
        return qr->quotient;
    }
    case RingKind::MultiPoly: {
        if (b.is_unit()) {
            auto c = b.terms().front().coeff;
            std::optional<RingValue> ci;
            if (c.ring()->is_field())
                ci = ring_inverse(c);
            else
                ci = exact_divide(RingValue::one(c.ring()), c);
            return a * RingValue::polynomial(r, {{Exponents(r->num_vars(), 0), *ci}});
        }
        break;
    }
    }
    throw Error(ErrorKind::UnsupportedRing, "exact division not implemented for " + r->name());
}

DivMod euclid_divmod(const RingValue& a, const RingValue& b)
{
    require_same_ring(a.ring(), b.ring());
    const auto& r = a.ring();
    if (!r->is_euclidean())
        throw Error(ErrorKind::UnsupportedRing, r->name() + " is not Euclidean here");
    if (b.is_zero())
        throw Error(ErrorKind::DivisionByZero, "division by zero");
    if (r->kind() == RingKind::Integers) {
        mpz_class q, rem;
        mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), a.integer().get_mpz_t(), b.integer().get_mpz_t());
        return {RingValue::from_integer(r, q), RingValue::from_integer(r, rem)};
    }
    return *poly_long_division(a, b);
}

mpz_class euclid_norm(const RingValue& a)
{
    const auto& r = a.ring();
    if (r->kind() == RingKind::Integers)
        return abs(a.integer());
    if (r->kind() == RingKind::UniPoly)
        return mpz_class(a.degree());
    throw Error(ErrorKind::UnsupportedRing, r->name() + " has no Euclidean norm here");
}

RingValue normalization_unit(const RingValue& a)
{
    const auto& r = a.ring();
    switch (r->kind()) {
    case RingKind::Integers: return RingValue::from_int(r, a.integer() < 0 ? -1 : 1);
    case RingKind::PrimeField:
    case RingKind::Rationals:
    case RingKind::RationalFunctions: return a.is_zero() ? RingValue::one(r) : a;
    case RingKind::UniPoly: {
        if (a.is_zero())
            return RingValue::one(r);
        auto lc = a.leading_coefficient();
        if (r->base()->is_field())
            return RingValue::polynomial(r, {{Exponents{0}, lc}});
        // Z[x]: only the sign of the leading coefficient is a unit.
        return RingValue::from_int(r, lc.integer() < 0 ? -1 : 1);
    }
    case RingKind::MultiPoly: break;
    }
    throw Error(ErrorKind::UnsupportedRing, "no unit normalization for " + r->name());
}

RingValue normalize(const RingValue& a)
{
    auto u = normalization_unit(a);
    if (u.is_one())
        return a;
    return *exact_divide(a, u);
}

Bezout euclid_gcd(const RingValue& x, const RingValue& y)
{
    require_same_ring(x.ring(), y.ring());
    const auto& r = x.ring();
    if (!r->is_euclidean())
        throw Error(ErrorKind::UnsupportedRing, "euclid_gcd needs Z, Fp[x] or Q[x], got " + r->name());
    auto r0 = x, r1 = y;
    auto s0 = RingValue::one(r), s1 = RingValue::zero(r);
    auto t0 = RingValue::zero(r), t1 = RingValue::one(r);
    while (!r1.is_zero()) {
        auto [q, rem] = euclid_divmod(r0, r1);
        r0 = std::exchange(r1, rem);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    if (r0.is_zero())
        return {r0, RingValue::zero(r), RingValue::zero(r)};
    auto unit = normalization_unit(r0);
    if (!unit.is_one()) {
        r0 = *exact_divide(r0, unit);
        s0 = *exact_divide(s0, unit);
        t0 = *exact_divide(t0, unit);
    }
    return {r0, s0, t0};
}

RingValue embed(const RingValue& x, const Ring& target)
{
    const auto& source = x.ring();
    if (same_ring(source, target))
        return x;
    switch (target->kind()) {
    case RingKind::Rationals:
        if (source->kind() == RingKind::Integers)
            return RingValue::from_integer(target, x.integer());
        break;
    case RingKind::UniPoly:
    case RingKind::MultiPoly:
        if (source->kind() == target->kind() && source->num_vars() == target->num_vars()) {
            std::vector<std::pair<Exponents, RingValue>> terms;
            for (const auto& t : x.terms())
                terms.emplace_back(t.exps, embed(t.coeff, target->base()));
            return RingValue::polynomial(target, std::move(terms));
        }
        if (!source->is_polynomial())
            return RingValue::polynomial(target, {{Exponents(target->num_vars(), 0), embed(x, target->base())}});
        break;
    case RingKind::RationalFunctions: {
        auto num = embed(x, target->base());
        return RingValue::rational_function(target, num, RingValue::one(target->base()));
    }
    default: break;
    }
    throw Error(ErrorKind::UnsupportedRing, "cannot embed " + source->name() + " into " + target->name());
}

RingValue embed_in_fraction_field(const RingValue& x)
{
    return embed(x, fraction_field(x.ring()));
}

} // namespace idem

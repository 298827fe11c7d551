#include "doctest.h"

#include <set>

#include "idem/error.hpp"
#include "idem/qcount.hpp"
#include "support.hpp"

using namespace idem;
using namespace support;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an idem::Error");
    return ErrorKind::Parse;
}

} // namespace

TEST_CASE("ring_arith examples") {
    CHECK(ring_arith(ArithOp::Mul, num(Z(), 3), num(Z(), 5)) == num(Z(), 15));
    CHECK(ring_arith(ArithOp::Add, num(F(2), 1), num(F(2), 1)).is_zero());
    auto f2x = Fx(2);
    CHECK(ring_arith(ArithOp::Mul, val(f2x, "x+1"), val(f2x, "x^4+x^3+x^2+x+1")) == val(f2x, "x^5+1"));
    CHECK(ring_arith(ArithOp::Neg, num(Z(), 4), RingValue::zero(Z())) == num(Z(), -4));
    CHECK(ring_arith(ArithOp::Sub, val(Q(), "1/2"), val(Q(), "1/3")) == val(Q(), "1/6"));
}

TEST_CASE("mixing rings is a typed error") {
    CHECK(kind_of([] { (void)(num(Z(), 1) + num(Q(), 1)); }) == ErrorKind::RingMismatch);
    CHECK(kind_of([] { (void)(num(F(2), 1) * num(F(3), 1)); }) == ErrorKind::RingMismatch);
    CHECK(kind_of([] { (void)(val(Fx(2), "x") + val(Fx(3), "x")); }) == ErrorKind::RingMismatch);
}

TEST_CASE("ring descriptors") {
    CHECK(kind_of([] { RingDescriptor::prime_field(4); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { RingDescriptor::prime_field(1); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { RingDescriptor::univariate(Zx()); }) == ErrorKind::UnsupportedRing);
    CHECK(Fx(5)->name() == "Fpx:5");
    CHECK(F(7)->name() == "Fp:7");
    CHECK(same_ring(parse_ring_tag("Fpx:3"), Fx(3)));
    CHECK(same_ring(parse_ring_tag("Qx"), Qx()));
    CHECK_FALSE(same_ring(Zx(), Qx()));
    CHECK(same_ring(fraction_field(Z()), Q()));
    CHECK(same_ring(fraction_field(F(5)), F(5)));
    CHECK(fraction_field(Zx())->kind() == RingKind::RationalFunctions);
    CHECK(kind_of([] { parse_ring_tag("R"); }) == ErrorKind::Parse);
}

TEST_CASE("canonical forms") {
    CHECK(RingValue::fraction(Q(), 2, 4) == val(Q(), "1/2"));
    CHECK(RingValue::fraction(Q(), 3, -6).rational() == mpq_class(-1, 2));
    CHECK(RingValue::fraction(Q(), 3, -6).str() == "-1/2");
    CHECK(num(F(5), -1).residue() == 4);
    CHECK(val(F(5), "7").residue() == 2);
    CHECK(val(Fx(2), "x^2+x+x").str() == "x^2");
    CHECK(val(Zx(), "(x+1)^2-x^2-2*x-1").is_zero());
    CHECK(val(Qx(), "1/2*x").str() == "1/2*x");
    auto m = RingDescriptor::multivariate(Q(), 3);
    CHECK(val(m, "2*x1^2*x2+x3").str() == "2*x1^2*x2+x3");
    CHECK(val(m, " x1 * x2 - x2*x1 ").is_zero());
}

TEST_CASE("ring_inverse") {
    CHECK(ring_inverse(num(F(5), 2)) == num(F(5), 3));
    CHECK(ring_inverse(val(Q(), "3/4")) == val(Q(), "4/3"));
    CHECK(kind_of([] { ring_inverse(num(F(2), 0)); }) == ErrorKind::DivisionByZero);
    CHECK(kind_of([] { ring_inverse(num(Z(), 2)); }) == ErrorKind::UnsupportedRing);
    CHECK(kind_of([] { ring_inverse(val(Qx(), "x")); }) == ErrorKind::UnsupportedRing);
}

TEST_CASE("euclid_gcd examples") {
    auto b = euclid_gcd(num(Z(), 12), num(Z(), 18));
    CHECK(b.g == num(Z(), 6));
    CHECK(b.u == num(Z(), -1));
    CHECK(b.v == num(Z(), 1));

    auto f2x = Fx(2);
    CHECK(euclid_gcd(val(f2x, "x^2+x"), val(f2x, "x")).g == val(f2x, "x"));

    auto z = euclid_gcd(num(Z(), 0), num(Z(), 0));
    CHECK(z.g.is_zero());
    CHECK(z.u.is_zero());
    CHECK(z.v.is_zero());

    CHECK(euclid_gcd(num(Z(), -4), num(Z(), 0)).g == num(Z(), 4));
    CHECK(euclid_gcd(val(Qx(), "2*x^2-2"), val(Qx(), "4*x+4")).g == val(Qx(), "x+1"));
    CHECK(kind_of([] { euclid_gcd(num(Q(), 1), num(Q(), 2)); }) == ErrorKind::UnsupportedRing);
    CHECK(kind_of([] { euclid_gcd(val(Zx(), "x"), val(Zx(), "x")); }) == ErrorKind::UnsupportedRing);
}

TEST_CASE("euclid_divmod and exact_divide") {
    auto dm = euclid_divmod(num(Z(), -7), num(Z(), 2));
    CHECK(dm.quotient * num(Z(), 2) + dm.remainder == num(Z(), -7));
    CHECK(kind_of([] { euclid_divmod(num(Z(), 1), num(Z(), 0)); }) == ErrorKind::DivisionByZero);
    CHECK(exact_divide(val(Zx(), "2*x^2+2"), num(Zx(), 2)) == val(Zx(), "x^2+1"));
    CHECK_FALSE(exact_divide(val(Zx(), "x^2+1"), num(Zx(), 2)).has_value());
    CHECK(exact_divide(num(Z(), 6), num(Z(), -3)) == num(Z(), -2));
}

TEST_CASE("gaussian_binomial and idempotent_count examples") {
    CHECK(gaussian_binomial(2, 1, 2) == 3);
    CHECK(gaussian_binomial(3, 1, 2) == 7);
    CHECK(gaussian_binomial(5, 0, 3) == 1);
    CHECK(idempotent_count(2, 1, 2) == 6);
    CHECK(idempotent_count(3, 1, 2) == 28);
    CHECK(idempotent_count(4, 4, 7) == 1);
    CHECK(kind_of([] { gaussian_binomial(2, 3, 2); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { idempotent_count(2, 1, 1); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { idempotent_count(2, 1, 6); }) == ErrorKind::InvalidArgument);
    CHECK(idempotent_count(2, 1, 4) == 20);
    CHECK(gaussian_binomial(2, 1, 6) == 7);
    CHECK(kind_of([] { QCount(1, 2, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: gaussian binomial symmetry") {
    for (unsigned long q : {2UL, 3UL, 5UL})
        for (unsigned n = 0; n <= 8; ++n)
            for (unsigned r = 0; r <= n; ++r) CHECK(gaussian_binomial(n, r, q) == gaussian_binomial(n, n - r, q));
}

TEST_CASE("property: counts match brute force") {
    for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
        mpz_class total = 0;
        for (unsigned r = 0; r <= n; ++r) total += idempotent_count(n, r, p);
        CHECK(total == brute_idempotent_residues(n, p).size());
    }
}

TEST_CASE("property: serialize then parse is the identity") {
    auto g = rng(1);
    std::vector<Ring> rings{Z(), Q(), F(2), F(7), Zx(), Qx(), Fx(2), Fx(5)};
    for (const Ring& r : rings)
        for (int i = 0; i < 200; ++i) {
            RingValue v = random_value(g, r, 4, 50);
            CHECK(parse_scalar(r, v.str()) == v);
        }
    auto m = RingDescriptor::multivariate(Q(), 3);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<Exponents, RingValue>> terms;
        for (int t = 0; t < 4; ++t)
            terms.push_back({{static_cast<std::uint32_t>(uniform(g, 0, 2)), static_cast<std::uint32_t>(uniform(g, 0, 2)),
                              static_cast<std::uint32_t>(uniform(g, 0, 2))},
                             random_scalar(g, Q(), 7)});
        RingValue v = RingValue::polynomial(m, terms);
        CHECK(parse_scalar(m, v.str()) == v);
    }
}

TEST_CASE("property: field axioms on sampled triples") {
    auto g = rng(2);
    for (const Ring& r : {F(7), F(2), Q()}) {
        for (int i = 0; i < 300; ++i) {
            RingValue a = random_scalar(g, r, 20), b = random_scalar(g, r, 20), c = random_scalar(g, r, 20);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK(a - a == RingValue::zero(r));
            if (!a.is_zero()) CHECK(a * ring_inverse(a) == RingValue::one(r));
        }
    }
}

TEST_CASE("property: Bezout identity on random pairs") {
    auto g = rng(3);
    for (const Ring& r : {Z(), Fx(2), Fx(5), Qx()}) {
        for (int i = 0; i < 1000; ++i) {
            RingValue x = random_value(g, r, 5, 1000), y = random_value(g, r, 5, 1000);
            Bezout b = euclid_gcd(x, y);
            REQUIRE(b.u * x + b.v * y == b.g);
            if (b.g.is_zero()) {
                CHECK(x.is_zero());
                CHECK(y.is_zero());
                continue;
            }
            CHECK(exact_divide(x, b.g).has_value());
            CHECK(exact_divide(y, b.g).has_value());
            CHECK(normalize(b.g) == b.g);
        }
    }
}

TEST_CASE("scalar parse errors carry a column") {
    try {
        parse_scalar(Z(), "12+*3");
        FAIL("no error");
    } catch (const ParseError& e) {
        CHECK(e.column() == 4);
    }
    CHECK(kind_of([] { parse_scalar(Z(), "1/2"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_scalar(Z(), ""); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_scalar(Q(), "1/0"); }) == ErrorKind::Parse);
    CHECK(kind_of([] { parse_scalar(Zx(), "x^"); }) == ErrorKind::Parse);
}

#include "doctest.h"

#include <set>

#include "idem/error.hpp"
#include "idem/matrix_io.hpp"
#include "idem/poset.hpp"
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

Idempotent f2(std::initializer_list<long> v) {
    std::size_t n = v.size() == 4 ? 2 : 3;
    return Idempotent(Matrix::from_ints(F(2), n, n, v));
}

SubspaceRep span(std::size_t n, std::initializer_list<long> cols_flat, std::size_t dim) {
    return SubspaceRep{Matrix::from_ints(F(2), n, dim, cols_flat), dim};
}

} // namespace

TEST_CASE("leq examples") {
    Idempotent o(Matrix::zero(F(2), 2, 2));
    for (const Idempotent& f : enumerate_idempotents(2, 2)) {
        CHECK(leq(o, f));
        CHECK(leq(f, f));
    }
    CHECK_FALSE(leq(f2({1, 0, 0, 0}), f2({0, 0, 0, 1})));
    CHECK(leq(f2({1, 0, 0, 0}), f2({1, 0, 0, 1})));
    CHECK(kind_of([] { leq(f2({1, 0, 0, 0}), Idempotent(Matrix::identity(F(2), 3))); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([] { leq(f2({1, 0, 0, 0}), Idempotent(Matrix::identity(F(3), 2))); }) == ErrorKind::RingMismatch);
}

TEST_CASE("covers examples") {
    Idempotent o2(Matrix::zero(F(2), 2, 2));
    CHECK(covers(o2, f2({1, 1, 0, 0})));
    CHECK_FALSE(covers(Idempotent(Matrix::zero(F(2), 3, 3)), Idempotent(Matrix::identity(F(2), 3))));
    CHECK_FALSE(covers(f2({1, 0, 0, 0}), f2({1, 0, 0, 0})));
}

TEST_CASE("enumerate_subspaces") {
    auto lines = enumerate_subspaces(2, 1, 2);
    REQUIRE(lines.size() == 3);
    std::set<std::string> keys;
    for (const auto& s : lines) keys.insert(s.basis.key());
    CHECK(keys == std::set<std::string>{span(2, {1, 0}, 1).basis.key(), span(2, {0, 1}, 1).basis.key(),
                                        span(2, {1, 1}, 1).basis.key()});
    CHECK(enumerate_subspaces(4, 0, 3).size() == 1);
    CHECK(enumerate_subspaces(4, 0, 3)[0].basis.cols() == 0);
    CHECK(enumerate_subspaces(3, 1, 2).size() == 7);
    for (unsigned n = 1; n <= 4; ++n)
        for (unsigned r = 0; r <= n; ++r)
            for (unsigned p : {2u, 3u}) {
                auto subs = enumerate_subspaces(n, r, p);
                CHECK(subs.size() == gaussian_binomial(n, r, p));
                std::set<std::string> distinct;
                for (const auto& s : subs) {
                    CHECK(rank(s.basis) == r);
                    distinct.insert(s.basis.key());
                }
                CHECK(distinct.size() == subs.size());
            }
    CHECK(kind_of([] { enumerate_subspaces(2, 3, 2); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("projection_idempotent") {
    CHECK(projection_idempotent(span(2, {1, 0}, 1), span(2, {0, 1}, 1)).matrix() == Matrix::from_ints(F(2), 2, 2, {1, 0, 0, 0}));
    CHECK(projection_idempotent(span(2, {1, 0}, 1), span(2, {1, 1}, 1)).matrix() == Matrix::from_ints(F(2), 2, 2, {1, 1, 0, 0}));
    CHECK(kind_of([] { projection_idempotent(span(2, {1, 0}, 1), span(2, {1, 0}, 1)); }) == ErrorKind::NotComplementary);
    CHECK(kind_of([] { projection_idempotent(span(2, {1, 0}, 1), span(2, {1, 0, 0, 1}, 2)); }) == ErrorKind::NotComplementary);
}

TEST_CASE("enumerate_idempotents examples") {
    auto one = enumerate_idempotents(1, 2);
    REQUIRE(one.size() == 2);
    CHECK(one[0].matrix().is_zero());
    CHECK(one[1].matrix() == Matrix::identity(F(2), 1));
    CHECK(enumerate_idempotents(2, 2).size() == 8);
    CHECK(enumerate_idempotents(3, 2).size() == 58);
    EnumerationOptions tight;
    tight.max_elements = 100;
    CHECK(kind_of([&] { enumerate_idempotents(3, 3, tight); }) == ErrorKind::BudgetExceeded);
    CHECK(kind_of([] { enumerate_idempotents(2, 4); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("property: layer sizes and brute-force equality") {
    for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {2, 3}, {3, 2}, {1, 5}}) {
        auto all = enumerate_idempotents(n, p);
        std::vector<std::size_t> layer(n + 1, 0);
        for (const auto& e : all) ++layer[e.rank()];
        for (unsigned r = 0; r <= n; ++r) CHECK(idempotent_count(n, r, p) == layer[r]);

        std::set<std::vector<unsigned>> mine, brute;
        for (const auto& e : all) mine.insert(residues(e.matrix()));
        for (const auto& v : brute_idempotent_residues(n, p)) brute.insert(v);
        CHECK(mine.size() == all.size());
        CHECK(mine == brute);

        auto lib = brute_force_idempotents(n, p);
        REQUIRE(lib.size() == all.size());
        for (std::size_t i = 0; i < all.size(); ++i) CHECK(lib[i] == all[i]);
    }
    CHECK(kind_of([] { brute_force_idempotents(3, 3, 1000); }) == ErrorKind::BudgetExceeded);
}

TEST_CASE("enumeration is independent of the worker count") {
    auto base = enumerate_idempotents(3, 3);
    for (unsigned t : {2u, 3u, 8u}) {
        EnumerationOptions o;
        o.threads = t;
        auto other = enumerate_idempotents(3, 3, o);
        REQUIRE(other.size() == base.size());
        for (std::size_t i = 0; i < base.size(); ++i) CHECK(other[i] == base[i]);
    }
}

TEST_CASE("build_hasse examples") {
    auto h1 = build_hasse(1, 2);
    CHECK(h1.size() == 2);
    CHECK(h1.covers().size() == 1);
    auto h2 = build_hasse(2, 2);
    CHECK(h2.size() == 8);
    CHECK(h2.covers().size() == 12);
    auto h3 = build_hasse(3, 2);
    CHECK(h3.size() == 58);
    CHECK(h3.covers().size() == 224);

    for (const auto& [lo, hi] : h3.covers()) CHECK(h3.element(hi).rank == h3.element(lo).rank + 1);
    CHECK(h3.layers().front().size() == 1);
    CHECK(h3.layers().front()[0].idem.matrix().is_zero());
    CHECK(h3.layers().back().size() == 1);
    CHECK(h3.layers().back()[0].idem.matrix() == Matrix::identity(F(2), 3));
    for (std::size_t id = 0; id < h3.size(); ++id) {
        CHECK(h3.element(id).id == id);
        CHECK(h3.find(h3.element(id).idem.matrix()) == id);
    }
    CHECK_FALSE(h3.find(Matrix::from_ints(F(2), 3, 3, {0, 1, 0, 0, 0, 0, 0, 0, 0})).has_value());

    // Each rank-1 node of M_3(F_2) has 6 upper covers; each rank-2 node has 6 lower covers.
    std::vector<std::size_t> up(58, 0), down(58, 0);
    for (const auto& [lo, hi] : h3.covers()) {
        ++up[lo];
        ++down[hi];
    }
    for (const auto& e : h3.layers()[1]) CHECK(up[e.id] == 6);
    for (const auto& e : h3.layers()[2]) CHECK(down[e.id] == 6);
}

TEST_CASE("property: poset axioms, self-duality, cover equivalence") {
    for (std::size_t n = 1; n <= 3; ++n) {
        auto all = enumerate_idempotents(n, 2);
        std::size_t m = all.size();
        std::vector<std::vector<char>> le(m, std::vector<char>(m));
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) le[i][j] = leq(all[i], all[j]);
        for (std::size_t i = 0; i < m; ++i) {
            CHECK(le[i][i]);
            for (std::size_t j = 0; j < m; ++j) {
                if (i != j && le[i][j]) CHECK_FALSE(le[j][i]);
                CHECK(bool(le[i][j]) == leq(complement(all[j]), complement(all[i])));
                if (le[i][j]) {
                    CHECK(all[i].rank() <= all[j].rank());
                    for (std::size_t k = 0; k < m; ++k)
                        if (le[j][k]) CHECK(le[i][k]);
                    bool definitional = i != j;
                    for (std::size_t k = 0; k < m && definitional; ++k)
                        if (k != i && k != j && le[i][k] && le[k][j]) definitional = false;
                    CHECK(definitional == covers(all[i], all[j]));
                }
            }
        }
    }
}

TEST_CASE("property: conjugation is an order isomorphism") {
    auto all = enumerate_idempotents(3, 2);
    auto g = rng(30);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix a = random_unimodular(g, F(2), 3, 10);
        Matrix ai = invert(a);
        auto conj = [&](const Idempotent& e) { return Idempotent(a * e.matrix() * ai); };
        for (std::size_t i = 0; i < all.size(); i += 3)
            for (std::size_t j = 0; j < all.size(); ++j) {
                Idempotent ce = conj(all[i]), cf = conj(all[j]);
                CHECK(leq(all[i], all[j]) == leq(ce, cf));
                CHECK(ce.rank() == all[i].rank());
            }
    }
}

TEST_CASE("property: order equals the block characterization") {
    auto all = enumerate_idempotents(3, 2);
    for (const auto& e : all)
        for (const auto& f : all) CHECK(leq(e, f) == has_upper_block_form(e, f));
    auto q2 = enumerate_idempotents(2, 3);
    for (const auto& e : q2)
        for (const auto& f : q2) CHECK(leq(e, f) == has_upper_block_form(e, f));
}

TEST_CASE("lift_above") {
    auto all = enumerate_idempotents(3, 2);
    for (const auto& e : all) {
        std::size_t k = 3 - e.rank();
        CHECK(lift_above(e, Idempotent(Matrix::zero(F(2), k, k))) == e);
        CHECK(lift_above(e, Idempotent(Matrix::identity(F(2), k))).matrix() == Matrix::identity(F(2), 3));
        for (const auto& t : enumerate_idempotents(std::max<std::size_t>(k, 1), 2)) {
            if (k == 0) break;
            Idempotent f = lift_above(e, t);
            CHECK(leq(e, f));
            CHECK(f.rank() == e.rank() + t.rank());
        }
    }
    Idempotent o3(Matrix::zero(F(2), 3, 3));
    for (const auto& t : all) {
        Idempotent f = lift_above(o3, t);
        CHECK(f == t);
        CHECK(leq(o3, f));
    }
    CHECK(kind_of([&] { lift_above(o3, Idempotent(Matrix::identity(F(2), 2))); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("property: the covers of E are exactly the rank-1 lifts") {
    auto all = enumerate_idempotents(3, 2);
    auto h = build_hasse(3, 2);
    for (const auto& e : all) {
        std::size_t k = 3 - e.rank();
        if (k == 0) continue;
        std::set<std::string> lifted, upper;
        for (const auto& t : enumerate_idempotents(k, 2))
            if (t.rank() == 1) lifted.insert(lift_above(e, t).matrix().key());
        std::size_t id = *h.find(e.matrix());
        for (const auto& [lo, hi] : h.covers())
            if (lo == id) upper.insert(h.element(hi).idem.matrix().key());
        CHECK(lifted == upper);
    }
}

TEST_CASE("interval examples") {
    auto h2 = build_hasse(2, 2);
    auto h3 = build_hasse(3, 2);
    Idempotent e = h3.element(5).idem;
    auto single = interval(e, e, h3);
    REQUIRE(single.size() == 1);
    CHECK(single[0].idem == e);
    CHECK(interval(Idempotent(Matrix::zero(F(2), 2, 2)), Idempotent(Matrix::identity(F(2), 2)), h2).size() == 8);
    Idempotent o3(Matrix::zero(F(2), 3, 3));
    for (const auto& f : h3.layers()[2]) CHECK(interval(o3, f.idem, h3).size() == 8);
    CHECK(kind_of([&] { interval(f2({1, 0, 0, 0}), f2({0, 0, 0, 1}), h2); }) == ErrorKind::NotComparable);
    CHECK(kind_of([&] { interval(Idempotent(Matrix::zero(F(3), 2, 2)), Idempotent(Matrix::identity(F(3), 2)), h2); }) ==
          ErrorKind::RingMismatch);
}

TEST_CASE("interval isomorphism witness") {
    Idempotent o2(Matrix::zero(F(2), 2, 2)), i2(Matrix::identity(F(2), 2));
    auto id = interval_iso_witness(o2, i2);
    CHECK(id.dimension() == 2);
    for (const auto& g : enumerate_idempotents(2, 2)) {
        CHECK(id.forward(g) == g);
        CHECK(id.backward(g) == g);
    }

    auto h3 = build_hasse(3, 2);
    Idempotent e = h3.layers()[1][0].idem;
    auto point = interval_iso_witness(e, e);
    CHECK(point.dimension() == 0);
    CHECK(point.forward(e).size() == 0);
    CHECK(point.backward(point.forward(e)) == e);
    CHECK(kind_of([&] { interval_iso_witness(h3.layers()[1][0].idem, h3.layers()[1][1].idem); }) ==
          ErrorKind::NotComparable);
    auto w = interval_iso_witness(h3.layers()[0][0].idem, h3.layers()[2][0].idem);
    CHECK(kind_of([&] { w.forward(h3.layers()[3][0].idem); }) == ErrorKind::NotComparable);
}

TEST_CASE("trace congruence: tr(E) = rank(E) mod p") {
    for (auto [n, p] : std::vector<std::pair<unsigned, unsigned>>{{1, 2}, {2, 2}, {3, 2}, {2, 3}, {3, 3}, {2, 5}})
        for (const auto& e : enumerate_idempotents(n, p)) CHECK(e.matrix().trace().residue() == e.rank() % p);
    for (const Matrix& m : {example_a(), example_c()}) {
        Idempotent e(m);
        CHECK(e.matrix().trace() == RingValue::from_int(m.ring(), static_cast<long>(e.rank())));
    }
}

TEST_CASE("DOT and JSON export") {
    auto h = build_hasse(2, 2);
    std::string dot = to_dot(h);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot == to_dot(build_hasse(2, 2)));
    std::size_t nodes = 0, edges = 0, same = 0;
    for (std::size_t pos = 0; (pos = dot.find("[label=", pos)) != std::string::npos; ++pos) ++nodes;
    for (std::size_t pos = 0; (pos = dot.find(" -> ", pos)) != std::string::npos; ++pos) ++edges;
    for (std::size_t pos = 0; (pos = dot.find("rank=same", pos)) != std::string::npos; ++pos) ++same;
    CHECK(nodes == 8);
    CHECK(edges == 12);
    CHECK(same == 3);
    auto j = to_json(h);
    CHECK(j["n"] == 2);
    CHECK(j["p"] == 2);
    CHECK(j["layers"].size() == 3);
    CHECK(j["covers"].size() == 12);
    CHECK(j["layers"][1].size() == 6);
    CHECK(matrix_from_json(j["layers"][2][0]["matrix"]) == Matrix::identity(F(2), 2));
    CHECK(j["layers"][2][0]["id"] == 7);
}

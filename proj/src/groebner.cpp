#include "idem/groebner.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>

#include "idem/error.hpp"

namespace idem::gb {

namespace {

constexpr unsigned kMaxExponent = std::numeric_limits<std::uint16_t>::max();

void check_vars(std::size_t n) {
    if (n > Monomial::kMaxVars)
        throw Error(ErrorKind::InvalidArgument,
                    "at most " + std::to_string(Monomial::kMaxVars) + " variables supported, got " + std::to_string(n));
}

void check_same_vars(const Monomial& a, const Monomial& b) {
    if (a.num_vars() != b.num_vars())
        throw Error(ErrorKind::DimensionMismatch, "monomials in " + std::to_string(a.num_vars()) + " and " +
                                                      std::to_string(b.num_vars()) + " variables");
}

} // namespace

Monomial::Monomial(std::size_t num_vars) {
    check_vars(num_vars);
    n_ = static_cast<std::uint8_t>(num_vars);
}

Monomial::Monomial(std::initializer_list<unsigned> exps) : Monomial(exps.size()) {
    std::size_t i = 0;
    for (unsigned e : exps) set(i++, e);
}

Monomial::Monomial(const std::vector<std::uint32_t>& exps) : Monomial(exps.size()) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
}

void Monomial::set(std::size_t i, unsigned e) {
    if (i >= n_) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
    if (e > kMaxExponent) throw Error(ErrorKind::InvalidArgument, "exponent too large");
    deg_ = deg_ - e_[i] + e;
    e_[i] = static_cast<std::uint16_t>(e);
}

bool Monomial::divides(const Monomial& other) const noexcept {
    if (deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] > other.e_[i]) return false;
    return true;
}

bool Monomial::coprime(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < n_; ++i)
        if (e_[i] != 0 && other.e_[i] != 0) return false;
    return true;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
    check_same_vars(a, b);
    Monomial r = a;
    for (std::size_t i = 0; i < a.n_; ++i) {
        unsigned e = unsigned{a.e_[i]} + b.e_[i];
        if (e > kMaxExponent) throw Error(ErrorKind::InvalidArgument, "exponent overflow");
        r.e_[i] = static_cast<std::uint16_t>(e);
    }
    r.deg_ = a.deg_ + b.deg_;
    return r;
}

Monomial operator/(const Monomial& a, const Monomial& b) {
    check_same_vars(a, b);
    if (!b.divides(a)) throw Error(ErrorKind::InvalidArgument, "monomial quotient is not exact");
    Monomial r = a;
    for (std::size_t i = 0; i < a.n_; ++i) r.e_[i] = static_cast<std::uint16_t>(a.e_[i] - b.e_[i]);
    r.deg_ = a.deg_ - b.deg_;
    return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
    check_same_vars(a, b);
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, std::max(a.e_[i], b.e_[i]));
    return r;
}

bool operator==(const Monomial& a, const Monomial& b) noexcept {
    if (a.n_ != b.n_ || a.deg_ != b.deg_) return false;
    for (std::size_t i = 0; i < a.n_; ++i)
        if (a.e_[i] != b.e_[i]) return false;
    return true;
}

std::vector<std::uint32_t> Monomial::exponents() const {
    return std::vector<std::uint32_t>(e_.begin(), e_.begin() + n_);
}

MonomialOrder::MonomialOrder(OrderKind kind, std::size_t num_vars) : kind_(kind), precedence_(num_vars) {
    check_vars(num_vars);
    std::iota(precedence_.begin(), precedence_.end(), std::size_t{0});
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<std::size_t> precedence)
    : kind_(kind), precedence_(std::move(precedence)) {
    check_vars(precedence_.size());
    std::vector<bool> seen(precedence_.size(), false);
    for (std::size_t v : precedence_) {
        if (v >= precedence_.size() || seen[v])
            throw Error(ErrorKind::InvalidArgument, "variable precedence must be a permutation");
        seen[v] = true;
    }
}

std::strong_ordering MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    if (kind_ != OrderKind::Lex && a.degree() != b.degree()) return a.degree() <=> b.degree();
    if (kind_ == OrderKind::GrevLex) {
        for (auto it = precedence_.rbegin(); it != precedence_.rend(); ++it)
            if (a[*it] != b[*it]) return b[*it] <=> a[*it];
        return std::strong_ordering::equal;
    }
    for (std::size_t v : precedence_)
        if (a[v] != b[v]) return a[v] <=> b[v];
    return std::strong_ordering::equal;
}

std::strong_ordering monomial_compare(const MonomialOrder& order, const Monomial& a, const Monomial& b) {
    check_same_vars(a, b);
    if (a.num_vars() != order.num_vars())
        throw Error(ErrorKind::DimensionMismatch, "monomial length does not match the order");
    return order.compare(a, b);
}

Polynomial::Polynomial(std::size_t num_vars, std::vector<Term> terms, const MonomialOrder& order)
    : num_vars_(num_vars) {
    for (const Term& t : terms)
        if (t.mono.num_vars() != num_vars) throw Error(ErrorKind::DimensionMismatch, "term has wrong variable count");
    std::sort(terms.begin(), terms.end(),
              [&](const Term& x, const Term& y) { return order.compare(x.mono, y.mono) > 0; });
    for (Term& t : terms) {
        t.coeff.canonicalize();
        if (!terms_.empty() && terms_.back().mono == t.mono) {
            terms_.back().coeff += t.coeff;
            if (terms_.back().coeff == 0) terms_.pop_back();
        } else if (t.coeff != 0) {
            terms_.push_back(std::move(t));
        }
    }
}

Polynomial Polynomial::from_sorted(std::size_t num_vars, std::vector<Term> terms) {
    Polynomial p(num_vars);
    p.terms_ = std::move(terms);
    return p;
}

unsigned Polynomial::degree() const {
    unsigned d = 0;
    for (const Term& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

Polynomial Polynomial::monic() const {
    if (terms_.empty() || terms_.front().coeff == 1) return *this;
    mpq_class inv = 1 / terms_.front().coeff;
    Polynomial r = *this;
    for (Term& t : r.terms_) t.coeff *= inv;
    return r;
}

Polynomial Polynomial::reorder(const MonomialOrder& order) const { return Polynomial(num_vars_, terms_, order); }

bool operator==(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars_ != b.num_vars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
}

namespace {

// a[ia..] + k * m * b[ib..], both inputs sorted descending.
std::vector<Term> merge_scaled(const std::vector<Term>& a, std::size_t ia, const mpq_class& k, const Monomial& m,
                               const std::vector<Term>& b, std::size_t ib, const MonomialOrder& order) {
    std::vector<Term> out;
    out.reserve(a.size() - ia + b.size() - ib);
    Term scratch{Monomial(m.num_vars()), 0};
    bool have = false;
    auto load = [&] {
        if (ib < b.size()) {
            scratch.mono = b[ib].mono * m;
            scratch.coeff = b[ib].coeff * k;
            have = true;
        } else {
            have = false;
        }
    };
    load();
    while (ia < a.size() && have) {
        auto c = order.compare(a[ia].mono, scratch.mono);
        if (c > 0) {
            out.push_back(a[ia++]);
        } else if (c < 0) {
            out.push_back(scratch);
            ++ib;
            load();
        } else {
            mpq_class s = a[ia].coeff + scratch.coeff;
            if (s != 0) out.push_back(Term{a[ia].mono, std::move(s)});
            ++ia;
            ++ib;
            load();
        }
    }
    for (; ia < a.size(); ++ia) out.push_back(a[ia]);
    while (have) {
        out.push_back(scratch);
        ++ib;
        load();
    }
    return out;
}

void check_poly_vars(const Polynomial& a, const Polynomial& b) {
    if (a.num_vars() != b.num_vars()) throw Error(ErrorKind::DimensionMismatch, "polynomials in different rings");
}

} // namespace

Polynomial add_scaled(const Polynomial& a, const mpq_class& k, const Monomial& m, const Polynomial& b,
                      const MonomialOrder& order) {
    check_poly_vars(a, b);
    if (k == 0) return a;
    return Polynomial::from_sorted(a.num_vars(), merge_scaled(a.terms(), 0, k, m, b.terms(), 0, order));
}

Polynomial multiply(const Polynomial& a, const Polynomial& b, const MonomialOrder& order) {
    check_poly_vars(a, b);
    std::vector<Term> all;
    all.reserve(a.terms().size() * b.terms().size());
    for (const Term& x : a.terms())
        for (const Term& y : b.terms()) all.push_back(Term{x.mono * y.mono, x.coeff * y.coeff});
    return Polynomial(a.num_vars(), std::move(all), order);
}

Polynomial from_ring_value(const RingValue& v, const MonomialOrder& order) {
    const Ring& ring = v.ring();
    if (ring->kind() != RingKind::MultiPoly)
        throw Error(ErrorKind::UnsupportedRing, "expected a multivariate polynomial, got " + ring->name());
    RingKind base = ring->base()->kind();
    if (base != RingKind::Rationals && base != RingKind::Integers)
        throw Error(ErrorKind::UnsupportedRing, "Groebner bases are computed over Q, got " + ring->name());
    if (ring->num_vars() != order.num_vars())
        throw Error(ErrorKind::DimensionMismatch, "order has " + std::to_string(order.num_vars()) +
                                                      " variables, polynomial ring has " +
                                                      std::to_string(ring->num_vars()));
    std::vector<Term> terms;
    for (const PolyTerm& t : v.terms()) {
        mpq_class c = base == RingKind::Rationals ? t.coeff.rational() : mpq_class(t.coeff.integer());
        terms.push_back(Term{Monomial(t.exps), std::move(c)});
    }
    return Polynomial(order.num_vars(), std::move(terms), order);
}

RingValue to_ring_value(const Polynomial& p) {
    Ring q = RingDescriptor::rationals();
    Ring ring = RingDescriptor::multivariate(q, p.num_vars());
    std::vector<std::pair<Exponents, RingValue>> terms;
    for (const Term& t : p.terms())
        terms.emplace_back(t.mono.exponents(), RingValue::fraction(q, t.coeff.get_num(), t.coeff.get_den()));
    return RingValue::polynomial(ring, std::move(terms));
}

Polynomial parse_polynomial(std::string_view text, const MonomialOrder& order) {
    Ring ring = RingDescriptor::multivariate(RingDescriptor::rationals(), order.num_vars());
    return from_ring_value(parse_scalar(ring, text), order);
}

std::string format(const Monomial& m, const std::vector<std::string>& names) {
    if (m.is_one()) return "1";
    std::string out;
    for (std::size_t i = 0; i < m.num_vars(); ++i) {
        if (m[i] == 0) continue;
        if (!out.empty()) out += '*';
        out += i < names.size() ? names[i] : "x" + std::to_string(i + 1);
        if (m[i] > 1) out += "^" + std::to_string(m[i]);
    }
    return out;
}

std::string format(const Polynomial& p, const std::vector<std::string>& names) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const Term& t : p.terms()) {
        mpq_class mag = abs(t.coeff);
        bool negative = t.coeff < 0;
        if (out.empty()) {
            if (negative) out += '-';
        } else {
            out += negative ? '-' : '+';
        }
        if (t.mono.is_one()) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str() + "*";
            out += format(t.mono, names);
        }
    }
    return out;
}

IdealBasis::IdealBasis(std::size_t vars, std::vector<Polynomial> gens) : num_vars(vars) {
    check_vars(vars);
    for (Polynomial& g : gens) {
        if (g.num_vars() != vars) throw Error(ErrorKind::DimensionMismatch, "generator in the wrong ring");
        if (!g.is_zero()) generators.push_back(std::move(g));
    }
}

namespace {

const Polynomial* find_reducer(const Monomial& m, const std::vector<Polynomial>& basis) {
    for (const Polynomial& g : basis)
        if (!g.is_zero() && g.lead_monomial().divides(m)) return &g;
    return nullptr;
}

} // namespace

Polynomial poly_reduce(const Polynomial& f, const std::vector<Polynomial>& basis, const MonomialOrder& order) {
    for (const Polynomial& g : basis) check_poly_vars(f, g);
    std::vector<Term> rem;
    std::vector<Term> work = f.terms();
    std::size_t pos = 0;
    while (pos < work.size()) {
        const Term& lt = work[pos];
        const Polynomial* g = find_reducer(lt.mono, basis);
        if (g == nullptr) {
            rem.push_back(lt);
            ++pos;
            continue;
        }
        mpq_class k = -lt.coeff / g->lead().coeff;
        Monomial m = lt.mono / g->lead_monomial();
        work = merge_scaled(work, pos + 1, k, m, g->terms(), 1, order);
        pos = 0;
    }
    return Polynomial::from_sorted(f.num_vars(), std::move(rem));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, const MonomialOrder& order) {
    check_poly_vars(f, g);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.num_vars());
    Monomial l = lcm(f.lead_monomial(), g.lead_monomial());
    Polynomial a = Polynomial::from_sorted(
        f.num_vars(), merge_scaled({}, 0, 1 / f.lead().coeff, l / f.lead_monomial(), f.terms(), 0, order));
    return add_scaled(a, -1 / g.lead().coeff, l / g.lead_monomial(), g, order);
}

namespace {

struct Pair {
    std::size_t i;
    std::size_t j;
    Monomial lcm;
};

class PairTable {
public:
    void grow(std::size_t n) {
        for (auto& row : state_) row.resize(n, 0);
        state_.resize(n, std::vector<char>(n, 0));
    }
    bool pending(std::size_t i, std::size_t j) const { return state_[i][j] != 0; }
    void set(std::size_t i, std::size_t j, bool v) { state_[i][j] = state_[j][i] = v ? 1 : 0; }

private:
    std::vector<std::vector<char>> state_;
};

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> g, const MonomialOrder& order) {
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j || !g[j].lead_monomial().divides(g[i].lead_monomial())) continue;
            redundant = !(g[j].lead_monomial() == g[i].lead_monomial()) || j < i;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced.push_back(poly_reduce(minimal[i], others, order).monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.compare(a.lead_monomial(), b.lead_monomial()) < 0;
    });
    return reduced;
}

} // namespace

GroebnerBasis buchberger(const IdealBasis& ideal, const MonomialOrder& order, const BuchbergerOptions& options) {
    if (ideal.num_vars != order.num_vars())
        throw Error(ErrorKind::DimensionMismatch, "ideal and order disagree on the number of variables");
    std::vector<Polynomial> g;
    std::vector<Pair> pairs;
    PairTable table;
    GroebnerBasis result{order, {}, 0};

    auto add = [&](Polynomial h) {
        h = h.monic();
        std::size_t k = g.size();
        g.push_back(std::move(h));
        table.grow(g.size());
        for (std::size_t i = 0; i < k; ++i) {
            pairs.push_back(Pair{i, k, lcm(g[i].lead_monomial(), g[k].lead_monomial())});
            table.set(i, k, true);
        }
    };
    auto unit_ideal = [&] {
        Monomial one(ideal.num_vars);
        result.elements = {Polynomial::from_sorted(ideal.num_vars, {Term{one, 1}})};
        return result;
    };

    for (const Polynomial& f : ideal.generators) {
        Polynomial r = poly_reduce(f.reorder(order), g, order);
        if (r.is_zero()) continue;
        if (r.lead_monomial().is_one()) return unit_ideal();
        add(std::move(r));
    }

    while (!pairs.empty()) {
        auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
            if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
            auto c = order.compare(a.lcm, b.lcm);
            if (c != 0) return c < 0;
            return std::tie(a.j, a.i) < std::tie(b.j, b.i);
        });
        Pair p = *best;
        *best = std::move(pairs.back());
        pairs.pop_back();
        table.set(p.i, p.j, false);

        const Monomial& li = g[p.i].lead_monomial();
        const Monomial& lj = g[p.j].lead_monomial();
        if (li.coprime(lj)) continue;
        bool chain = false;
        for (std::size_t k = 0; k < g.size() && !chain; ++k) {
            if (k == p.i || k == p.j) continue;
            chain = g[k].lead_monomial().divides(p.lcm) && !table.pending(p.i, k) && !table.pending(p.j, k);
        }
        if (chain) continue;

        if (++result.pairs_reduced > options.max_pairs)
            throw Error(ErrorKind::BudgetExceeded,
                        "Buchberger exceeded " + std::to_string(options.max_pairs) + " S-pair reductions");
        Polynomial r = poly_reduce(s_polynomial(g[p.i], g[p.j], order), g, order);
        if (r.is_zero()) continue;
        if (r.lead_monomial().is_one()) return unit_ideal();
        add(std::move(r));
    }
    result.elements = reduce_basis(std::move(g), order);
    return result;
}

std::vector<Monomial> leading_term_ideal(const GroebnerBasis& basis) {
    std::vector<Monomial> lts;
    for (const Polynomial& p : basis.elements) lts.push_back(p.lead_monomial());
    std::vector<Monomial> minimal;
    for (std::size_t i = 0; i < lts.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < lts.size() && !redundant; ++j)
            redundant = j != i && lts[j].divides(lts[i]) && (!(lts[j] == lts[i]) || j < i);
        if (!redundant) minimal.push_back(lts[i]);
    }
    std::sort(minimal.begin(), minimal.end(),
              [&](const Monomial& a, const Monomial& b) { return basis.order.compare(a, b) < 0; });
    return minimal;
}

namespace {

struct HittingSearch {
    const std::vector<std::uint64_t>& supports;
    std::uint64_t max_nodes;
    std::uint64_t nodes = 0;

    bool hit(std::uint64_t chosen, std::size_t budget) {
        if (++nodes > max_nodes)
            throw Error(ErrorKind::BudgetExceeded, "hitting-set search exceeded " + std::to_string(max_nodes) + " nodes");
        auto missed = std::find_if(supports.begin(), supports.end(), [&](std::uint64_t s) { return (s & chosen) == 0; });
        if (missed == supports.end()) return true;
        if (budget == 0) return false;
        for (std::uint64_t rest = *missed; rest != 0; rest &= rest - 1)
            if (hit(chosen | (rest & -rest), budget - 1)) return true;
        return false;
    }
};

} // namespace

int monomial_ideal_dimension(const std::vector<Monomial>& monomials, std::size_t num_vars, std::uint64_t max_nodes) {
    check_vars(num_vars);
    std::vector<std::uint64_t> supports;
    for (const Monomial& m : monomials) {
        if (m.num_vars() != num_vars) throw Error(ErrorKind::DimensionMismatch, "monomial in the wrong ring");
        std::uint64_t s = 0;
        for (std::size_t i = 0; i < num_vars; ++i)
            if (m[i] != 0) s |= std::uint64_t{1} << i;
        if (s == 0) return -1;
        supports.push_back(s);
    }
    std::sort(supports.begin(), supports.end());
    supports.erase(std::unique(supports.begin(), supports.end()), supports.end());
    std::vector<std::uint64_t> minimal;
    for (std::uint64_t s : supports) {
        bool superset = std::any_of(supports.begin(), supports.end(),
                                    [&](std::uint64_t t) { return t != s && (t & s) == t; });
        if (!superset) minimal.push_back(s);
    }
    std::sort(minimal.begin(), minimal.end(), [](std::uint64_t a, std::uint64_t b) {
        int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
        return pa != pb ? pa < pb : a < b;
    });
    HittingSearch search{minimal, max_nodes};
    for (std::size_t k = 0; k <= num_vars; ++k)
        if (search.hit(0, k)) return static_cast<int>(num_vars - k);
    return 0;
}

IdealBasis idempotent_ideal(std::size_t n, std::optional<long> slice) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "matrix size must be positive");
    std::size_t vars = n * n;
    check_vars(vars);
    MonomialOrder order(OrderKind::GrLex, vars);
    auto var = [&](std::size_t i, std::size_t j) {
        Monomial m(vars);
        m.set(i * n + j, 1);
        return m;
    };
    std::vector<Polynomial> gens;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Term> terms;
            for (std::size_t k = 0; k < n; ++k) terms.push_back(Term{var(i, k) * var(k, j), 1});
            terms.push_back(Term{var(i, j), -1});
            gens.emplace_back(vars, std::move(terms), order);
        }
    }
    if (slice) {
        std::vector<Term> terms;
        for (std::size_t i = 0; i < n; ++i) terms.push_back(Term{var(i, i), 1});
        terms.push_back(Term{Monomial(vars), mpq_class(-*slice)});
        gens.emplace_back(vars, std::move(terms), order);
    }
    return IdealBasis(vars, std::move(gens));
}

std::vector<std::string> matrix_variable_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j)
            names.push_back("x" + std::to_string(i) + (n > 9 ? "_" : "") + std::to_string(j));
    return names;
}

VarietyDimension variety_dimension(std::size_t n, std::optional<long> slice, const BuchbergerOptions& options) {
    IdealBasis ideal = idempotent_ideal(n, slice);
    MonomialOrder order(OrderKind::GrLex, ideal.num_vars);
    GroebnerBasis basis = buchberger(ideal, order, options);
    std::vector<Monomial> lts = leading_term_ideal(basis);
    int dim = monomial_ideal_dimension(lts, ideal.num_vars);
    return VarietyDimension{dim, std::move(basis), std::move(lts)};
}

} // namespace idem::gb

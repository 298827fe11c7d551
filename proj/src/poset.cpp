#include "idem/poset.hpp"

#include <algorithm>
#include <thread>

#include "idem/linalg.hpp"
#include "idem/matrix_io.hpp"
#include "idem/qcount.hpp"

namespace idem {

bool leq(const Idempotent& e, const Idempotent& f)
{
    const auto& a = e.matrix();
    const auto& b = f.matrix();
    return a * b == a && b * a == a;
}

bool covers(const Idempotent& e, const Idempotent& f)
{
    return f.rank() == e.rank() + 1 && leq(e, f);
}

bool has_upper_block_form(const Idempotent& e, const Idempotent& f)
{
    if (f.rank() < e.rank())
        return false;
    auto witness = diagonalize(e);
    auto local = witness.to_local(f.matrix());
    auto blocks = block_split(local, e.rank(), e.rank());
    const auto& field = local.ring();
    return blocks.top_left == Matrix::identity(field, e.rank()) && blocks.top_right.is_zero() &&
           blocks.bottom_left.is_zero() && is_idempotent(blocks.bottom_right);
}

namespace {

void for_each_combination(std::size_t n, std::size_t r, const std::function<void(const std::vector<std::size_t>&)>& f)
{
    std::vector<std::size_t> pick(r);
    for (std::size_t i = 0; i < r; ++i)
        pick[i] = i;
    while (true) {
        f(pick);
        std::size_t i = r;
        while (i > 0 && pick[i - 1] == n - r + i - 1)
            --i;
        if (i == 0)
            return;
        ++pick[i - 1];
        for (std::size_t j = i; j < r; ++j)
            pick[j] = pick[j - 1] + 1;
    }
}

// Row-major residues; the sort key for node ids.
std::vector<std::uint64_t> residues(const Matrix& m)
{
    std::vector<std::uint64_t> out;
    out.reserve(m.entries().size());
    for (const auto& e : m.entries())
        out.push_back(e.residue());
    return out;
}

void sort_by_rank_then_entries(std::vector<Idempotent>& items)
{
    std::vector<std::pair<std::vector<std::uint64_t>, std::size_t>> keys;
    keys.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        auto k = residues(items[i].matrix());
        k.insert(k.begin(), items[i].rank());
        keys.emplace_back(std::move(k), i);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<Idempotent> sorted;
    sorted.reserve(items.size());
    for (const auto& [k, i] : keys)
        sorted.push_back(std::move(items[i]));
    items = std::move(sorted);
}

std::uint64_t total_idempotents(std::size_t n, std::uint64_t p)
{
    mpz_class total = 0;
    for (std::size_t r = 0; r <= n; ++r)
        total += idempotent_count(static_cast<unsigned>(n), static_cast<unsigned>(r), p);
    return total.fits_ulong_p() ? total.get_ui() : UINT64_MAX;
}

} // namespace

std::vector<SubspaceRep> enumerate_subspaces(std::size_t n, std::size_t r, std::uint64_t p)
{
    if (r > n)
        throw Error(ErrorKind::InvalidArgument, "subspace dimension exceeds ambient dimension");
    auto field = RingDescriptor::prime_field(p);
    std::vector<SubspaceRep> out;
    if (r == 0) {
        out.push_back({Matrix::zero(field, n, 0), 0});
        return out;
    }
    for_each_combination(n, r, [&](const std::vector<std::size_t>& pivots) {
        // Column k has a 1 at row pivots[k], zeros above it and in the other pivot
        // rows; rows below pivots[k] that are not pivots are free.
        std::vector<std::pair<std::size_t, std::size_t>> free_slots;
        std::vector<bool> is_pivot(n, false);
        for (auto c : pivots)
            is_pivot[c] = true;
        for (std::size_t k = 0; k < r; ++k)
            for (std::size_t row = pivots[k] + 1; row < n; ++row)
                if (!is_pivot[row])
                    free_slots.emplace_back(row, k);
        std::vector<std::uint64_t> digits(free_slots.size(), 0);
        while (true) {
            std::vector<RingValue> entries(n * r, RingValue::zero(field));
            for (std::size_t k = 0; k < r; ++k)
                entries[pivots[k] * r + k] = RingValue::one(field);
            for (std::size_t s = 0; s < free_slots.size(); ++s)
                entries[free_slots[s].first * r + free_slots[s].second] = RingValue::from_int(field, static_cast<long>(digits[s]));
            out.push_back({Matrix(field, n, r, std::move(entries)), r});
            std::size_t s = free_slots.size();
            while (s > 0 && digits[s - 1] == p - 1)
                digits[--s] = 0;
            if (s == 0)
                break;
            ++digits[s - 1];
        }
    });
    return out;
}

Idempotent projection_idempotent(const SubspaceRep& image, const SubspaceRep& kernel)
{
    const auto n = image.basis.rows();
    if (kernel.basis.rows() != n)
        throw Error(ErrorKind::DimensionMismatch, "image and kernel live in different ambient spaces");
    if (image.dim + kernel.dim != n)
        throw Error(ErrorKind::NotComplementary, "subspace dimensions do not add up to " + std::to_string(n));
    auto a = hstack(image.basis, kernel.basis);
    Matrix inverse = [&] {
        try {
            return invert(a);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::SingularMatrix)
                throw Error(ErrorKind::NotComplementary, "image and kernel intersect nontrivially");
            throw;
        }
    }();
    const auto& field = inverse.ring();
    return Idempotent(embed(a, field) * Matrix::unit_block(field, n, image.dim) * inverse);
}

std::vector<Idempotent> enumerate_idempotents(std::size_t n, std::uint64_t p, const EnumerationOptions& options)
{
    if (n == 0)
        throw Error(ErrorKind::InvalidArgument, "matrix size must be positive");
    auto field = RingDescriptor::prime_field(p);
    auto total = total_idempotents(n, p);
    if (total > options.max_elements)
        throw Error(ErrorKind::BudgetExceeded, "M_" + std::to_string(n) + "(F_" + std::to_string(p) + ") has " +
                                                   std::to_string(total) + " idempotents, budget is " +
                                                   std::to_string(options.max_elements));
    std::vector<Idempotent> out;
    out.reserve(total);
    for (std::size_t r = 0; r <= n; ++r) {
        auto images = enumerate_subspaces(n, r, p);
        auto kernels = enumerate_subspaces(n, n - r, p);
        auto work = [&](std::size_t first, std::size_t step, std::vector<Idempotent>& sink) {
            for (std::size_t i = first; i < images.size(); i += step) {
                for (const auto& k : kernels) {
                    if (rank(hstack(images[i].basis, k.basis)) != n)
                        continue;
                    sink.push_back(projection_idempotent(images[i], k));
                }
            }
        };
        const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(options.threads, images.size()));
        std::vector<std::vector<Idempotent>> parts(workers);
        if (workers == 1) {
            work(0, 1, parts[0]);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t w = 0; w < workers; ++w)
                pool.emplace_back([&, w] { work(w, workers, parts[w]); });
            for (auto& t : pool)
                t.join();
        }
        for (auto& part : parts)
            for (auto& e : part)
                out.push_back(std::move(e));
    }
    sort_by_rank_then_entries(out);
    return out;
}

std::vector<Idempotent> brute_force_idempotents(std::size_t n, std::uint64_t p, std::uint64_t max_matrices)
{
    auto field = RingDescriptor::prime_field(p);
    mpz_class count;
    mpz_ui_pow_ui(count.get_mpz_t(), p, n * n);
    if (count > max_matrices)
        throw Error(ErrorKind::BudgetExceeded, "brute force over " + count.get_str() + " matrices exceeds budget " +
                                                   std::to_string(max_matrices));
    std::vector<Idempotent> out;
    std::vector<std::uint64_t> digits(n * n, 0);
    std::vector<RingValue> values;
    for (std::uint64_t v = 0; v < p; ++v)
        values.push_back(RingValue::from_int(field, static_cast<long>(v)));
    while (true) {
        std::vector<RingValue> entries;
        entries.reserve(n * n);
        for (auto d : digits)
            entries.push_back(values[d]);
        Matrix m(field, n, n, std::move(entries));
        if (is_idempotent(m))
            out.emplace_back(std::move(m));
        std::size_t s = digits.size();
        while (s > 0 && digits[s - 1] == p - 1)
            digits[--s] = 0;
        if (s == 0)
            break;
        ++digits[s - 1];
    }
    sort_by_rank_then_entries(out);
    return out;
}

HasseDiagram::HasseDiagram(std::size_t n, std::uint64_t p, std::vector<std::vector<PosetElement>> layers,
                           std::vector<std::pair<std::size_t, std::size_t>> covers)
    : n_(n), p_(p), layers_(std::move(layers)), covers_(std::move(covers))
{
    for (const auto& layer : layers_)
        for (const auto& e : layer)
            elements_.push_back(&e);
    std::sort(elements_.begin(), elements_.end(), [](auto* a, auto* b) { return a->id < b->id; });
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i]->id != i)
            throw Error(ErrorKind::InvalidArgument, "Hasse diagram ids must be dense");
        index_.emplace(elements_[i]->idem.matrix().key(), i);
    }
    std::sort(covers_.begin(), covers_.end());
}

std::optional<std::size_t> HasseDiagram::find(const Matrix& m) const
{
    auto it = index_.find(m.key());
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

HasseDiagram build_hasse(std::size_t n, std::uint64_t p, const EnumerationOptions& options)
{
    auto all = enumerate_idempotents(n, p, options);
    std::vector<std::vector<PosetElement>> layers(n + 1);
    for (std::size_t id = 0; id < all.size(); ++id) {
        auto r = all[id].rank();
        layers[r].push_back({id, std::move(all[id]), r});
    }
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t r = 0; r < n; ++r)
        for (const auto& lower : layers[r])
            for (const auto& upper : layers[r + 1])
                if (leq(lower.idem, upper.idem))
                    edges.emplace_back(lower.id, upper.id);
    return HasseDiagram(n, p, std::move(layers), std::move(edges));
}

Idempotent lift_above(const Idempotent& e, const Idempotent& t)
{
    if (t.size() + e.rank() != e.size())
        throw Error(ErrorKind::DimensionMismatch, "lower block must have size " + std::to_string(e.size() - e.rank()) +
                                                      ", got " + std::to_string(t.size()));
    return Idempotent(diagonalize(e).conjugate_lower_block(t.matrix()));
}

std::vector<PosetElement> interval(const Idempotent& e, const Idempotent& f, const HasseDiagram& diagram)
{
    if (!diagram.find(e.matrix()) || !diagram.find(f.matrix()))
        throw Error(ErrorKind::InvalidArgument, "interval endpoints must be elements of the diagram");
    if (!leq(e, f))
        throw Error(ErrorKind::NotComparable, "interval endpoints are not comparable");
    std::vector<PosetElement> out;
    for (std::size_t r = e.rank(); r <= f.rank(); ++r)
        for (const auto& g : diagram.layers()[r])
            if (leq(e, g.idem) && leq(g.idem, f))
                out.push_back(g);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    return out;
}

namespace {

Idempotent checked_pair(const Idempotent& e, const Idempotent& f)
{
    if (!leq(e, f))
        throw Error(ErrorKind::NotComparable, "interval endpoints are not comparable");
    return e;
}

Idempotent lower_block_of(const DiagonalizationWitness& w, const Idempotent& f)
{
    auto local = w.to_local(f.matrix());
    auto k = w.rank;
    return Idempotent(local.submatrix(k, k, local.rows() - k, local.cols() - k));
}

} // namespace

IntervalIsomorphism::IntervalIsomorphism(const Idempotent& e, const Idempotent& f)
    : lower_(checked_pair(e, f)), upper_(f), outer_(diagonalize(e)), delta_(f.rank() - e.rank())
{
    inner_ = diagonalize(lower_block_of(outer_, f));
}

Idempotent IntervalIsomorphism::forward(const Idempotent& g) const
{
    if (!leq(lower_, g) || !leq(g, upper_))
        throw Error(ErrorKind::NotComparable, "element lies outside the interval");
    auto s = lower_block_of(outer_, g);
    auto local = inner_->to_local(s.matrix());
    auto v = local.submatrix(0, 0, delta_, delta_);
    if (!local.submatrix(0, delta_, local.rows(), local.cols() - delta_).is_zero() ||
        !local.submatrix(delta_, 0, local.rows() - delta_, delta_).is_zero())
        throw Error(ErrorKind::InvalidArgument, "element does not reduce to the leading block");
    return Idempotent(v);
}

Idempotent IntervalIsomorphism::backward(const Idempotent& v) const
{
    if (v.size() != delta_)
        throw Error(ErrorKind::DimensionMismatch, "expected a " + std::to_string(delta_) + "x" + std::to_string(delta_) +
                                                      " idempotent");
    const auto& field = inner_->basis.ring();
    auto rest = inner_->basis.rows() - delta_;
    auto padded = block_diag(embed(v.matrix(), field), Matrix::zero(field, rest, rest));
    auto s = inner_->basis * padded * inner_->basis_inverse;
    return Idempotent(outer_.conjugate_lower_block(s));
}

IntervalIsomorphism interval_iso_witness(const Idempotent& e, const Idempotent& f)
{
    return IntervalIsomorphism(e, f);
}

std::string to_dot(const HasseDiagram& diagram)
{
    std::string out = "digraph hasse_n" + std::to_string(diagram.n()) + "_p" + std::to_string(diagram.p()) + " {\n";
    out += "  rankdir=BT;\n";
    for (std::size_t r = 0; r < diagram.layers().size(); ++r) {
        out += "  subgraph rank_" + std::to_string(r) + " {\n    rank=same;\n";
        for (const auto& e : diagram.layers()[r])
            out += "    n" + std::to_string(e.id) + " [label=\"" + e.idem.matrix().flat_string() + "\"];\n";
        out += "  }\n";
    }
    for (const auto& [lo, hi] : diagram.covers())
        out += "  n" + std::to_string(lo) + " -> n" + std::to_string(hi) + ";\n";
    out += "}\n";
    return out;
}

nlohmann::json to_json(const HasseDiagram& diagram)
{
    auto layers = nlohmann::json::array();
    for (const auto& layer : diagram.layers()) {
        auto items = nlohmann::json::array();
        for (const auto& e : layer)
            items.push_back({{"id", e.id}, {"rank", e.rank}, {"matrix", matrix_to_json(e.idem.matrix())}});
        layers.push_back(std::move(items));
    }
    auto edges = nlohmann::json::array();
    for (const auto& [lo, hi] : diagram.covers())
        edges.push_back({lo, hi});
    return {{"n", diagram.n()}, {"p", diagram.p()}, {"layers", std::move(layers)}, {"covers", std::move(edges)}};
}

} // namespace idem

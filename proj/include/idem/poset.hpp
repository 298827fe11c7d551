#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "idem/idempotent.hpp"

namespace idem {

/// E <= F iff EF = E = FE.
bool leq(const Idempotent& e, const Idempotent& f);

/// E <= F with rank(F) = rank(E) + 1.
bool covers(const Idempotent& e, const Idempotent& f);

/// Independent route to E <= F: with E = A diag(I_r, O) A^-1, the conjugate
/// A^-1 F A must have the shape [[I_r, O], [O, T]] with T idempotent.
bool has_upper_block_form(const Idempotent& e, const Idempotent& f);

/// Subspace of F_p^n stored as an n x dim basis in reduced column-echelon form,
/// which is unique per subspace.
struct SubspaceRep {
    Matrix basis;
    std::size_t dim;
};

/// All r-dimensional subspaces of F_p^n, ordered by pivot set then free entries.
std::vector<SubspaceRep> enumerate_subspaces(std::size_t n, std::size_t r, std::uint64_t p);

/// Projection onto `image` along `kernel`. NotComplementary unless the two
/// subspaces span F^n with trivial intersection.
Idempotent projection_idempotent(const SubspaceRep& image, const SubspaceRep& kernel);

struct EnumerationOptions {
    /// Refuse when the number of idempotents would exceed this.
    std::uint64_t max_elements = 1'000'000;
    /// Workers splitting the image subspaces; output is identical for any value.
    unsigned threads = 1;
};

/// Every idempotent of M_n(F_p) exactly once, ordered by (rank, row-major entries).
std::vector<Idempotent> enumerate_idempotents(std::size_t n, std::uint64_t p, const EnumerationOptions& options = {});

/// Oracle: all p^(n^2) matrices filtered by E*E = E, same ordering. Refuses past max_matrices.
std::vector<Idempotent> brute_force_idempotents(std::size_t n, std::uint64_t p, std::uint64_t max_matrices = 10'000'000);

struct PosetElement {
    std::size_t id;
    Idempotent idem;
    std::size_t rank;
};

/// Rank-layered idempotents of M_n(F_p) with the cover relation as edges.
/// Ids are dense and follow (rank, row-major entries) order.
class HasseDiagram {
public:
    HasseDiagram(std::size_t n, std::uint64_t p, std::vector<std::vector<PosetElement>> layers,
                 std::vector<std::pair<std::size_t, std::size_t>> covers);

    std::size_t n() const noexcept { return n_; }
    std::uint64_t p() const noexcept { return p_; }
    const std::vector<std::vector<PosetElement>>& layers() const noexcept { return layers_; }
    /// (lower id, upper id), sorted.
    const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }

    std::size_t size() const noexcept { return elements_.size(); }
    const PosetElement& element(std::size_t id) const { return *elements_.at(id); }
    std::optional<std::size_t> find(const Matrix& m) const;

private:
    std::size_t n_;
    std::uint64_t p_;
    std::vector<std::vector<PosetElement>> layers_;
    std::vector<std::pair<std::size_t, std::size_t>> covers_;
    std::vector<const PosetElement*> elements_;
    std::unordered_map<std::string, std::size_t> index_;
};

/// Covers are only searched between consecutive rank layers.
HasseDiagram build_hasse(std::size_t n, std::uint64_t p, const EnumerationOptions& options = {});

/// F = A * blockdiag(I_rank(E), T) * A^-1 with A from diagonalize(E); E <= F always.
Idempotent lift_above(const Idempotent& e, const Idempotent& t);

/// Elements G of the diagram with E <= G <= F. NotComparable unless E <= F.
std::vector<PosetElement> interval(const Idempotent& e, const Idempotent& f, const HasseDiagram& diagram);

/// Explicit order isomorphism [E, F] -> idempotents of M_d(F), d = rank F - rank E.
/// G is conjugated into local coordinates of E, its lower-right block is conjugated
/// into local coordinates of F's block, and the leading d x d block is read off.
class IntervalIsomorphism {
public:
    IntervalIsomorphism(const Idempotent& e, const Idempotent& f);

    std::size_t dimension() const noexcept { return delta_; }
    /// NotComparable when g is outside [E, F].
    Idempotent forward(const Idempotent& g) const;
    Idempotent backward(const Idempotent& v) const;

private:
    Idempotent lower_;
    Idempotent upper_;
    DiagonalizationWitness outer_;
    std::optional<DiagonalizationWitness> inner_;
    std::size_t delta_;
};

IntervalIsomorphism interval_iso_witness(const Idempotent& e, const Idempotent& f);

/// DOT digraph: one rank=same subgraph per layer, label = row-major entries, edges lower -> upper.
std::string to_dot(const HasseDiagram& diagram);
/// {"n", "p", "layers": [[{"id", "rank", "matrix"}...]...], "covers": [[lower, upper]...]}.
nlohmann::json to_json(const HasseDiagram& diagram);

} // namespace idem

#ifndef MOOREHOM_GROUPOID_HPP
#define MOOREHOM_GROUPOID_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "moorehom/complex.hpp"

namespace moore {

using ArrowId = uint32_t;
inline constexpr ArrowId kNoArrow = std::numeric_limits<ArrowId>::max();
inline constexpr size_t kDefaultNerveBudget = 1'000'000;

/// A violated groupoid axiom, or malformed groupoid data.
class GroupoidError : public std::runtime_error {
  public:
    GroupoidError(std::string axiom, std::vector<ArrowId> witnesses, const std::string& detail);
    std::string axiom;
    std::vector<ArrowId> witnesses;
};

class BudgetError : public std::runtime_error {
  public:
    BudgetError(size_t degree, size_t total, size_t budget);
    size_t degree;
};

/// Finite discrete groupoid with an explicit composition table.
///
/// Arrows are 0..arrow_count()-1; units are a subset of the arrows.
/// compose(g, d) is defined iff source(g) == range(d). Construction only
/// checks that indices are in range; the axioms are checked by
/// validate_groupoid().
class FiniteGroupoid {
  public:
    FiniteGroupoid() = default;
    FiniteGroupoid(size_t arrows, std::vector<ArrowId> units, std::vector<ArrowId> source,
                   std::vector<ArrowId> range, std::vector<ArrowId> inverse,
                   const std::vector<std::array<ArrowId, 3>>& compose_triples);

    size_t arrow_count() const noexcept { return source_.size(); }
    size_t unit_count() const noexcept { return units_.size(); }
    /// Unit arrow ids in increasing order.
    const std::vector<ArrowId>& units() const noexcept { return units_; }
    bool is_unit(ArrowId a) const { return unit_pos_.at(a) != kNoArrow; }
    /// Position of a unit within units(); throws for non-units.
    size_t unit_position(ArrowId u) const;

    ArrowId source(ArrowId a) const { return source_.at(a); }
    ArrowId range(ArrowId a) const { return range_.at(a); }
    ArrowId inverse(ArrowId a) const { return inverse_.at(a); }
    /// g . d, or kNoArrow when source(g) != range(d).
    ArrowId compose(ArrowId g, ArrowId d) const { return table_[static_cast<size_t>(g) * arrow_count() + d]; }

    const std::vector<ArrowId>& sources() const noexcept { return source_; }
    const std::vector<ArrowId>& ranges() const noexcept { return range_; }
    const std::vector<ArrowId>& inverses() const noexcept { return inverse_; }
    std::vector<std::array<ArrowId, 3>> compose_triples() const;

    /// Original arrow ids carried through reductions (identity for fresh groupoids).
    const std::vector<int64_t>& labels() const noexcept { return labels_; }
    void set_labels(std::vector<int64_t> labels);

    friend bool operator==(const FiniteGroupoid& a, const FiniteGroupoid& b) = default;

  private:
    std::vector<ArrowId> units_;
    std::vector<ArrowId> unit_pos_;
    std::vector<ArrowId> source_, range_, inverse_;
    std::vector<ArrowId> table_;
    std::vector<int64_t> labels_;
};

/// Exhaustively checks every groupoid axiom; throws GroupoidError naming the
/// first violated axiom with witness arrows.
void validate_groupoid(const FiniteGroupoid& G);

namespace presets {
/// k points, identity arrows only.
FiniteGroupoid units(size_t k);
/// Z/m as a one-object groupoid; arrow g is the residue g.
FiniteGroupoid one_object_cyclic(size_t m);
/// Pair groupoid on k points; arrow i*k + j goes from j to i (range i, source j).
FiniteGroupoid pair(size_t k);
/// Transformation groupoid of Z/m acting on {0..k-1} through the permutation
/// `perm` (perm[x] is the image of x); arrow g*k + x is (g, x) with source x.
FiniteGroupoid action(size_t m, const std::vector<size_t>& perm);
FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b);
}  // namespace presets

/// Subset of the unit space, as sorted unit arrow ids.
struct UnitSubset {
    std::vector<ArrowId> members;

    static UnitSubset all(const FiniteGroupoid& G);
    /// From positions in G.units(); throws GroupoidError on out-of-range positions.
    static UnitSubset from_positions(const FiniteGroupoid& G, const std::vector<size_t>& positions);
    bool contains(ArrowId u) const;
    bool empty() const noexcept { return members.empty(); }
    std::vector<size_t> positions(const FiniteGroupoid& G) const;

    friend UnitSubset operator|(const UnitSubset& a, const UnitSubset& b);
    friend UnitSubset operator&(const UnitSubset& a, const UnitSubset& b);
    friend UnitSubset operator-(const UnitSubset& a, const UnitSubset& b);
    friend bool operator==(const UnitSubset& a, const UnitSubset& b) = default;
};

/// Composable n-tuples in lexicographic order; degree 0 stores each unit as a 1-tuple.
struct NerveLevel {
    size_t degree = 0;
    size_t width = 1;
    std::vector<ArrowId> flat;

    size_t size() const { return width ? flat.size() / width : 0; }
    std::span<const ArrowId> tuple(size_t i) const { return {flat.data() + i * width, width}; }
};

/// Ranks composable tuples without a lookup table, by counting the tuples
/// that precede each prefix.
class NerveIndex {
  public:
    NerveIndex(const FiniteGroupoid& G, size_t degree);
    size_t degree() const noexcept { return degree_; }
    /// |G_degree|, saturating at SIZE_MAX.
    size_t size() const noexcept { return size_; }
    /// Lexicographic rank of a composable tuple of this degree.
    size_t rank(std::span<const ArrowId> tuple) const;

  private:
    const FiniteGroupoid* G_;
    size_t degree_;
    size_t size_ = 0;
    // counts_[L][unit position]: composable L-tuples whose first range is that unit
    std::vector<std::vector<size_t>> counts_;
    // before_all_[L][a]: sum of counts_[L][s(d)] over arrows d < a
    // before_range_[L][a]: same sum restricted to d with range(d) == range(a)
    std::vector<std::vector<size_t>> before_all_, before_range_;
};

size_t nerve_size(const FiniteGroupoid& G, size_t n);
NerveLevel nerve(const FiniteGroupoid& G, size_t n);
/// d_i on a composable n-tuple (n >= 1, 0 <= i <= n); d_0(γ) = s(γ), d_1(γ) = r(γ) for n = 1.
std::vector<ArrowId> face(const FiniteGroupoid& G, size_t n, size_t i, std::span<const ArrowId> tuple);
/// Matrix of (d_i)_* : Z^{G_n} -> Z^{G_{n-1}} in the lexicographic bases.
IntegerMatrix pushforward_matrix(const FiniteGroupoid& G, size_t n, size_t i);

struct MooreOptions {
    Integer modulus;  ///< 0 for Z coefficients
    size_t budget = kDefaultNerveBudget;
    bool labels = false;
};

/// Unnormalized Moore complex up to degree N, ∂_n = Σ (-1)^i (d_i)_*.
/// With a modulus q the face contributions are accumulated in Z/q.
FreeChainComplex moore_complex(const FiniteGroupoid& G, size_t N, const MooreOptions& options = {});

std::vector<UnitSubset> orbits(const FiniteGroupoid& G);
/// An arrow with exactly one endpoint in U, if any.
std::optional<ArrowId> saturation_witness(const FiniteGroupoid& G, const UnitSubset& U);
bool is_saturated(const FiniteGroupoid& G, const UnitSubset& U);

struct Reduction {
    FiniteGroupoid groupoid;
    std::vector<ArrowId> embedding;  ///< reduced arrow -> ambient arrow
};

/// G|_U: arrows with source and range in U, order preserved.
Reduction reduce(const FiniteGroupoid& G, const UnitSubset& U);
FiniteGroupoid reduction(const FiniteGroupoid& G, const UnitSubset& U);

std::string tuple_label(std::span<const ArrowId> tuple);

}  // namespace moore

#endif  // MOOREHOM_GROUPOID_HPP

#ifndef MOOREHOM_MV_HPP
#define MOOREHOM_MV_HPP

#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "moorehom/groupoid.hpp"

namespace moore {

/// Invalid cover; `witness` is an arrow leaving a non-saturated set.
class MvError : public std::runtime_error {
  public:
    MvError(const std::string& what, std::optional<ArrowId> witness = std::nullopt);
    std::optional<ArrowId> witness;
};

struct MvDecomposition {
    FiniteGroupoid ambient;
    UnitSubset U1, U2, U12;
    Reduction piece1, piece2, piece12;
};

/// Requires U1 ∪ U2 = all units and both sets saturated.
MvDecomposition decompose(const FiniteGroupoid& G, const UnitSubset& U1, const UnitSubset& U2);

/// Position in the ambient nerve of each tuple of the reduced groupoid's nerve.
std::vector<size_t> ambient_positions(const FiniteGroupoid& G, const Reduction& R, size_t n);
/// Matrix of extension by zero from G|small to G|big (both reductions of G,
/// small ⊆ big).
IntegerMatrix inclusion_matrix(const FiniteGroupoid& G, const Reduction& small, const Reduction& big, size_t n);

struct SesDegreeCheck {
    bool alpha_chain = false;    ///< α ∂ = (∂ ⊕ ∂) α
    bool beta_chain = false;     ///< β (∂ ⊕ ∂) = ∂ β
    bool alpha_injective = false;
    bool beta_surjective = false;
    bool exact_middle = false;   ///< ker β = im α as lattices
    bool ok() const { return alpha_chain && beta_chain && alpha_injective && beta_surjective && exact_middle; }
};

/// 0 -> C(G|U12) -α-> C(G|U1) ⊕ C(G|U2) -β-> C(G) -> 0 up to degree N.
struct MvChainSes {
    size_t max_degree = 0;
    FreeChainComplex C12, C1, C2, C;
    FreeChainComplex C1plus2;  ///< C1 ⊕ C2, first block C1
    std::vector<IntegerMatrix> alpha, beta;  ///< indexed by degree 0..N
    /// Per degree: positions of G|U12 tuples inside the G|U1 and G|U2 nerves.
    std::vector<std::vector<size_t>> pos12_in1, pos12_in2;
    /// Per degree: positions of G|U1 and G|U2 tuples inside the ambient nerve.
    std::vector<std::vector<size_t>> pos1, pos2;
    std::vector<std::vector<bool>> in12_of2;  ///< G|U2 tuple lies over U12
    std::vector<SesDegreeCheck> checks;
};

struct MvOptions {
    Integer modulus;  ///< 0 for Z coefficients
    size_t budget = kDefaultNerveBudget;
};

/// Builds α, β and verifies every degree; throws std::logic_error if any
/// check fails.
MvChainSes chain_ses(const MvDecomposition& D, size_t N, const MvOptions& opts = {});
std::vector<SesDegreeCheck> check_ses(const MvChainSes& S);

/// (η1, η2): η1 restricts to G|U1, η2 is η on G|U2 off U12 and 0 over U12.
IntVector canonical_lift(const MvChainSes& S, size_t n, std::span<const Integer> x);

struct ConnectingResult {
    size_t degree = 0;  ///< degree of the input cycle
    IntVector chain;    ///< a in C_{n-1}(G|U12) with α(a) = ∂b
    IntVector class_coords;  ///< class of a in H_{n-1}(G|U12)
    bool is_boundary = true;
};

/// Zig-zag through the canonical lift. Throws MvError("not a cycle").
ConnectingResult connecting(const MvChainSes& S, size_t n, std::span<const Integer> cycle);
/// Same zig-zag through b + α(u) for a random u; true iff the two outputs
/// differ by a boundary of C(G|U12) and have the same class.
bool alternative_lift_agrees(const MvChainSes& S, size_t n, std::span<const Integer> cycle, std::mt19937_64& rng);
/// A lift b with ∂b = 0, built as b - α(u) where ∂u = a; nullopt if the
/// connecting class is nonzero.
std::optional<IntVector> cycle_lift(const MvChainSes& S, size_t n, std::span<const Integer> cycle);

struct LesNode {
    std::string label;
    PresentedGroup presentation;
    FinAbGroup group;
    IntegerMatrix representatives;  ///< chain-level generators
};

struct LesMap {
    std::string label;
    GroupHom hom;
};

struct LongExactSequence {
    std::vector<LesNode> nodes;  ///< H_{N-1}(12), H_{N-1}(1)⊕H_{N-1}(2), H_{N-1}(G), ..., H_0(G), 0
    std::vector<LesMap> maps;    ///< maps[i] : nodes[i] -> nodes[i+1]
    /// Per node: trivial middle homology; nullopt at the two ends.
    std::vector<std::optional<bool>> exact_at;
    size_t connecting_checked = 0;
    bool connecting_boundaries = true;  ///< every zig-zag output is a boundary
    bool lift_independent = true;       ///< randomized alternative lifts agree
    bool cycle_lifts = true;            ///< every cycle admits a cycle lift
    bool all_exact() const;
    bool ok() const { return all_exact() && connecting_boundaries && lift_independent && cycle_lifts; }
};

struct LesOptions {
    Integer modulus;
    size_t budget = kDefaultNerveBudget;
    uint64_t seed = 1;
};

LongExactSequence long_exact_sequence(const MvDecomposition& D, size_t N, const LesOptions& opts = {});

/// Map on homology induced by a chain map: classifies the image of each
/// source generator in the target.
GroupHom induced_map(const HomologyResult& source, const HomologyResult& target, const IntegerMatrix& chain_map);

/// D' = (U1 ∪ extra, U2) for a saturated extra ⊆ U2. The inclusions give a
/// ladder from the LES of D to that of D'; true iff every square commutes in
/// degrees 0..N-1.
bool naturality_ladder(const MvDecomposition& D, const MvDecomposition& Dprime, size_t N, const MvOptions& opts = {});

}  // namespace moore

#endif  // MOOREHOM_MV_HPP

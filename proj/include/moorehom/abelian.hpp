#ifndef MOOREHOM_ABELIAN_HPP
#define MOOREHOM_ABELIAN_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "moorehom/lattice.hpp"
#include "moorehom/matrix.hpp"
#include "moorehom/smith.hpp"

namespace moore {

/// Errors raised by the group layer (mismatched nodes, nonzero composites,
/// incompatible homomorphisms).
class AlgebraError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Isomorphism type of a finitely generated abelian group:
/// Z^rank + Z/t_1 + ... + Z/t_k with 2 <= t_1 | t_2 | ... | t_k.
class FinAbGroup {
  public:
    FinAbGroup() = default;

    /// Normalizes arbitrary cyclic summands: Z/0 becomes a Z summand, Z/1 is
    /// dropped, and the rest is rewritten as invariant factors.
    static FinAbGroup from_summands(size_t free_rank, const IntVector& cyclic_orders);
    static FinAbGroup free(size_t rank) { return from_summands(rank, {}); }
    static FinAbGroup cyclic(const Integer& order) { return from_summands(0, {order}); }
    static FinAbGroup trivial() { return {}; }

    size_t rank() const noexcept { return rank_; }
    const IntVector& torsion() const noexcept { return torsion_; }
    bool is_trivial() const noexcept { return rank_ == 0 && torsion_.empty(); }
    bool is_finite() const noexcept { return rank_ == 0; }
    /// Group order when finite.
    std::optional<Integer> order() const;
    /// Number of elements killed by k (finite groups only): prod gcd(k, t_i).
    Integer count_killed_by(const Integer& k) const;
    /// Prime-power cyclic orders, ascending (torsion part only).
    IntVector primary_decomposition() const;

    /// `0`, `Z`, `Z^2 ⊕ Z/6`, ...; primary form splits torsion into prime powers.
    std::string to_string(bool primary = false) const;
    /// Inverse of to_string (either form); also accepts `+` as the separator.
    static FinAbGroup parse(const std::string& text);

    friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) = default;

  private:
    size_t rank_ = 0;
    IntVector torsion_;
};

/// Iso type of Z^rows / columnspan(M).
FinAbGroup group_of(const IntegerMatrix& M);
FinAbGroup tensor(const FinAbGroup& g, const FinAbGroup& a);
FinAbGroup tor1(const FinAbGroup& g, const FinAbGroup& a);
FinAbGroup direct_sum(const std::vector<FinAbGroup>& groups);

/// coker(relations) with relations a (generators x r) integer matrix.
struct PresentedGroup {
    size_t generators = 0;
    IntegerMatrix relations;

    PresentedGroup() = default;
    PresentedGroup(size_t gens, IntegerMatrix rels);

    /// Z/d_1 + ... + Z/d_k on k generators (d = 0 gives a free generator).
    static PresentedGroup diagonal(const IntVector& orders);
    static PresentedGroup direct_sum(const std::vector<PresentedGroup>& parts);

    FinAbGroup group() const { return group_of(relations); }
    Lattice relation_lattice() const { return Lattice::span(relations); }
    /// Whether the integer vector represents the zero element.
    bool is_zero(std::span<const Integer> element) const;

    friend bool operator==(const PresentedGroup& a, const PresentedGroup& b) = default;
};

/// Homomorphism of presented groups given on generators.
class GroupHom {
  public:
    /// Throws AlgebraError if the matrix does not carry source relations into
    /// the target relation lattice.
    GroupHom(PresentedGroup source, PresentedGroup target, IntegerMatrix matrix);

    const PresentedGroup& source() const noexcept { return source_; }
    const PresentedGroup& target() const noexcept { return target_; }
    const IntegerMatrix& matrix() const noexcept { return matrix_; }
    IntVector apply(std::span<const Integer> element) const { return matrix_.apply(element); }
    bool is_zero() const;

  private:
    PresentedGroup source_;
    PresentedGroup target_;
    IntegerMatrix matrix_;
};

/// K / B for lattices B <= K <= Z^n, with explicit generators.
///
/// The Smith form of B in K-coordinates picks a basis of K adapted to B;
/// basis vectors whose order is 1 lie in B and are dropped, the rest become
/// generators (torsion first, then free) of a diagonal presentation.
class Subquotient {
  public:
    /// Throws AlgebraError if some column of `sub_generators` is not in `K`.
    Subquotient(Lattice K, const IntegerMatrix& sub_generators);

    const FinAbGroup& group() const noexcept { return group_; }
    const PresentedGroup& presentation() const noexcept { return presentation_; }
    /// ambient x generators
    const IntegerMatrix& representatives() const noexcept { return reps_; }
    /// Order of each presentation generator (0 for free ones).
    const IntVector& generator_orders() const noexcept { return orders_; }
    const Lattice& numerator() const noexcept { return K_; }

    /// Class of v in the presentation, torsion coordinates reduced into
    /// [0, order); nullopt if v is not in K.
    std::optional<IntVector> classify(std::span<const Integer> v) const;
    /// v in B (v must lie in K; throws AlgebraError otherwise).
    bool is_trivial_class(std::span<const Integer> v) const;

  private:
    Lattice K_;
    IntegerMatrix to_adapted_;  // U: adapted coordinates from Hermite coordinates
    std::vector<size_t> kept_;  // adapted coordinates that survive
    IntVector orders_;
    IntegerMatrix reps_;
    FinAbGroup group_;
    PresentedGroup presentation_;
};

/// ker(g) / im(f) at the shared node.
FinAbGroup middle_homology(const GroupHom& f, const GroupHom& g);

}  // namespace moore

#endif  // MOOREHOM_ABELIAN_HPP

#pragma once

#include "spaceform/isometry.hpp"

#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace spaceform {

/// How a group is enumerated and how quotient operations search it.
///  - Finite: the full word closure; must stabilize within the cutoff.
///  - Lattice: pure flat translations; quotient queries use an exact integer box search.
///  - AffineFlat: flat affine generators; queries search the word ball and flag
///    when the ball's outer shell still reaches into the query radius.
///  - Hyperbolic: infinite hyperbolic groups, same windowed search as AffineFlat.
enum class GroupKind { Finite, Lattice, AffineFlat, Hyperbolic };

std::string_view to_string(GroupKind kind);
GroupKind group_kind_from_string(std::string_view name);

inline constexpr int kDefaultFiniteWordLength = 20;

class DiscreteGroup {
public:
    /// Inverses of generators are appended (skipping those already present).
    /// Generator i carries the one-letter word {i}.
    DiscreteGroup(ModelSpace space, std::vector<Isometry> generators, GroupKind kind,
                  int max_word_length = kDefaultFiniteWordLength);

    const ModelSpace& space() const noexcept { return space_; }
    GroupKind kind() const noexcept { return kind_; }
    int max_word_length() const noexcept { return max_word_length_; }

    /// Generators as supplied followed by appended inverses.
    const std::vector<Isometry>& generators() const noexcept { return generators_; }
    int input_generator_count() const noexcept { return input_count_; }
    /// Index of the generator inverse to generator `i`.
    int inverse_index(int i) const { return inverse_index_[static_cast<size_t>(i)]; }

    /// Breadth-first closure ordered by (word length, lexicographic word),
    /// identity first, deduplicated at 1e-8 entrywise. Built once, then shared.
    /// Throws NotClosed for a finite group that does not stabilize.
    const std::vector<Isometry>& elements() const;

    /// Lattice kind: n x rank matrix whose columns are the supplied translations.
    Matrix lattice_basis() const;

    /// Word of the lattice element sum_i c_i * basis_i.
    std::vector<int> lattice_word(const Eigen::VectorXi& coefficients) const;

    /// Lattice kind: every coefficient vector c with |B c - target| <= radius,
    /// found by an integer box search whose bounds come from the rows of the
    /// pseudo-inverse of B. Ordered lexicographically in c.
    std::vector<Eigen::VectorXi> lattice_points_near(const Vector& target, double radius) const;

    /// Lattice kind: the translation isometry for coefficients c, word attached.
    Isometry lattice_element(const Eigen::VectorXi& coefficients) const;

private:
    struct Closure;

    Isometry identity_element() const;

    ModelSpace space_;
    std::vector<Isometry> generators_;
    std::vector<int> inverse_index_;
    int input_count_ = 0;
    GroupKind kind_;
    int max_word_length_;
    std::shared_ptr<Closure> closure_;
};

std::vector<Isometry> enumerate(const DiscreteGroup& group);

enum class SphericalFamily { Cyclic, BinaryDihedral, BinaryTetrahedral, BinaryOctahedral, BinaryIcosahedral };

/// Finite subgroups of the unit quaternions acting on S^3 by left twists.
/// Orders: m, 4m, 24, 48, 120.
DiscreteGroup finite_spherical_group(SphericalFamily family, int m = 1,
                                     const ModelSpace& space = ModelSpace::spherical(3));

/// Parses "2T", "2O", "2I", "C<m>", "cyclic:<m>", "2D<m>", "dihedral:<m>".
DiscreteGroup finite_spherical_group(std::string_view name, const ModelSpace& space = ModelSpace::spherical(3));

/// Smallest minimal_displacement over enumerated non-identity elements.
double minimal_group_displacement(const DiscreteGroup& group);

} // namespace spaceform

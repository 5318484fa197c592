#pragma once

#include "spaceform/discrete_group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace spaceform {

struct VerificationReport;

/// A verified quotient X_k / Gamma. Construct through verify_space_form.
class SpaceForm {
public:
    const ModelSpace& space() const noexcept { return group_.space(); }
    const DiscreteGroup& group() const noexcept { return group_; }
    double displacement_bound() const noexcept { return r_; }
    const AmbientPoint& base() const noexcept { return base_; }

private:
    SpaceForm(DiscreteGroup group, double r, AmbientPoint base)
        : group_(std::move(group)), r_(r), base_(std::move(base)) {}

    friend VerificationReport verify_space_form(const DiscreteGroup&, double, std::optional<AmbientPoint>);

    DiscreteGroup group_;
    double r_;
    AmbientPoint base_;
};

/// Why a candidate group was rejected.
struct Violation {
    enum class Reason { FixedPoint, Displacement, OrbitAccumulation };
    Reason reason;
    Isometry element;
    double displacement = 0.0;
    std::optional<AmbientPoint> fixed_point;
    std::string message;
};

std::string_view to_string(Violation::Reason reason);

struct VerificationReport {
    std::optional<SpaceForm> form;
    std::optional<Violation> violation;

    bool verified() const noexcept { return form.has_value(); }
};

/// Checks that every non-identity element is fixed-point free and displaces
/// every point by at least r, and that the orbit of the base point inside the
/// ball of radius 3r is r-separated. Rejection is a value, not an exception.
VerificationReport verify_space_form(const DiscreteGroup& group, double r,
                                     std::optional<AmbientPoint> base = std::nullopt);

/// Throws InvalidArgument carrying the violation message unless verified.
SpaceForm require_space_form(const DiscreteGroup& group, double r, std::optional<AmbientPoint> base = std::nullopt);

/// Canonical orbit representative in the Dirichlet domain of the base point.
struct QuotientPoint {
    AmbientPoint rep;
};

/// One translate g y of a query point together with its distance to the anchor.
struct Image {
    Isometry element;
    AmbientPoint point;
    double dist;
};

/// Every g with d(anchor, g y) <= radius, ordered by (distance, word).
/// Lattice groups are searched exactly; finite groups exhaustively; windowed
/// groups throw WindowInsufficient when the enumeration shell reaches the ball.
std::vector<Image> images_within(const SpaceForm& form, const AmbientPoint& anchor, const AmbientPoint& y,
                                 double radius);

/// The translate of y nearest to the anchor (ties: smaller word first).
Image nearest_image(const SpaceForm& form, const AmbientPoint& anchor, const AmbientPoint& y);

double quotient_distance(const SpaceForm& form, const AmbientPoint& x, const AmbientPoint& y);

/// Dirichlet canonicalization; boundary ties go to the lexicographically
/// largest coordinates.
QuotientPoint reduce(const SpaceForm& form, const AmbientPoint& x);

/// Lifts a path in the quotient to the cover starting at `start`; each step
/// picks the translate nearest the previous lifted point. Steps must be
/// shorter than r/2.
std::vector<AmbientPoint> lift_path(const SpaceForm& form, const std::vector<QuotientPoint>& path,
                                    const AmbientPoint& start);

/// The deck element g with g x = y, if any.
std::optional<Isometry> deck_transformation(const SpaceForm& form, const AmbientPoint& x, const AmbientPoint& y);

/// Flat lattice: |det basis|; spherical: vol(S^n_k) / |Gamma|.
double volume(const SpaceForm& form);

/// Monte Carlo volume of the Dirichlet domain of the base point: uniform
/// samples on the sphere, or in a box around the lattice cell, counted when no
/// orbit translate of the base is strictly closer.
double estimate_volume(const SpaceForm& form, long samples, std::uint64_t seed);

} // namespace spaceform

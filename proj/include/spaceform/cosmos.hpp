#pragma once

#include "spaceform/quotient.hpp"

#include <string>
#include <vector>

namespace spaceform {

struct Star {
    std::string id;
    AmbientPoint position;
    double luminosity;
};

struct StarCatalog {
    std::vector<Star> stars;
};

/// Throws unless ids are unique, luminosities positive and every position is
/// already its own canonical representative.
void validate_catalog(const SpaceForm& form, const StarCatalog& catalog);

struct GhostImage {
    std::string source_id;
    std::vector<int> word;
    Vector direction;   ///< components in the observer's tangent frame; zero if undefined
    double dist;
    double flux;        ///< luminosity / geodesic-sphere area; zero if undefined
    AmbientPoint position;
    bool flagged;       ///< image coincides with the observer, direction undefined
};

/// Every image g p with d(observer, g p) <= horizon, ordered by
/// (dist, source_id, word). Stars are searched independently on up to
/// `threads` workers; the merged order does not depend on the thread count.
std::vector<GhostImage> enumerate_images(const SpaceForm& form, const AmbientPoint& observer,
                                         const StarCatalog& catalog, double horizon, int threads = 1);

struct VolumeCheck {
    bool pass;
    double margin; ///< quotient volume / ball volume
    double form_volume;
    double ball_volume;
};

VolumeCheck volume_bound_check(const SpaceForm& form, double system_radius);

struct ShellSum {
    double radius;
    Vector partial;
};

struct GravityResult {
    Vector force; ///< ambient tangent vector at the test point
    std::vector<ShellSum> trace;
    int images = 0;
};

/// Newtonian image sum (G = 1): sum over images of the source within `cutoff`
/// of m / d^2 along the unit tangent from the test point toward the image.
/// Images are added in (distance, word) order; each trace entry closes a
/// shell of equal distance.
GravityResult gravitational_field(const SpaceForm& form, const AmbientPoint& source, double mass,
                                  const AmbientPoint& test, double cutoff);

/// arctan(sinh(b / k)): limiting parallax of arbitrarily distant stars in
/// hyperbolic space of radius k.
double parallax_floor(double baseline, double k);

struct CurvatureBounds {
    double elliptic;
    double hyperbolic;
};

/// Lower bounds on the curvature radius consistent with a smallest measured
/// parallax p_min over baseline b. Hyperbolic: the k at which the parallax
/// floor equals p_min. Elliptic: the k at which the Euclidean distance
/// b / tan(p_min) equals the elliptic diameter pi k / 2.
CurvatureBounds curvature_radius_bound(double min_parallax, double baseline);

} // namespace spaceform

#pragma once

#include "spaceform/isometry.hpp"
#include "spaceform/quaternion.hpp"

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace spaceform {

/// Great circle on S^3 through `point` with unit tangent `direction`.
struct GeodesicLine {
    Quaternion point;
    Quaternion direction;

    /// Normalizes both and checks tangency.
    static GeodesicLine make(const Quaternion& point, const Quaternion& direction);

    Quaternion at(double s) const { return std::cos(s) * point + std::sin(s) * direction; }
};

/// Distance from x to the nearest point of the great circle `line`.
double distance_to_line(const Quaternion& x, const GeodesicLine& line);

/// One-parameter twist group s -> exp(s u) x (left) or x exp(s u) (right).
/// Its orbits are Clifford parallels; one of them is the line it was built from.
struct CliffordFamily {
    TwistSide side;
    Quaternion generator; ///< unit imaginary u

    Quaternion apply(double s, const Quaternion& x) const;
    Isometry twist(double s) const;
    /// The parallel (orbit) through x.
    GeodesicLine parallel_through(const Quaternion& x) const;
    std::vector<Quaternion> sample_parallel(const Quaternion& x, int samples) const;
};

CliffordFamily clifford_parallel_family(const GeodesicLine& line, TwistSide side);

/// x(s,t) = exp(s u) x0 exp(t v): the ruled flat torus swept by left parallels
/// of one line through the points of a second, intersecting line.
class CliffordSurface {
public:
    CliffordSurface(const Quaternion& x0, const Quaternion& u, const Quaternion& v);

    const Quaternion& base() const noexcept { return x0_; }
    const Quaternion& u() const noexcept { return u_; }
    const Quaternion& v() const noexcept { return v_; }

    Quaternion at(double s, double t) const;
    /// The same point evaluated with the opposite association, (exp(su) x0) exp(tv).
    Quaternion at_right_first(double s, double t) const;

    CliffordFamily left_family() const { return {TwistSide::Left, u_}; }
    CliffordFamily right_family() const { return {TwistSide::Right, v_}; }

private:
    Quaternion x0_, u_, v_;
};

/// Surface through the common point of l and l' containing both as parameter
/// curves (t = 0 traces l, s = 0 traces l'). Throws if the lines do not meet.
CliffordSurface clifford_surface(const GeodesicLine& l, const GeodesicLine& l_prime);

using Parametrization = std::function<Eigen::VectorXd(double, double)>;

struct FirstFundamentalForm {
    double E;
    double F;
    double G;
    bool degenerate; ///< EG - F^2 below 1e-10 * EG
};

/// First fundamental form from fourth-order central differences of the
/// embedding with step h in [1e-6, 1e-2].
FirstFundamentalForm induced_metric(const Parametrization& surface, double s, double t, double h);
FirstFundamentalForm induced_metric(const CliffordSurface& surface, double s, double t, double h);

/// Intrinsic Gaussian curvature from the Brioschi formula. Metric coefficients
/// come from steps of size h; their derivatives from fourth-order stencils on
/// the coarser step sqrt(h) (clamped to [h, 0.05]).
double gauss_curvature(const Parametrization& surface, double s, double t, double h = 1e-4);
double gauss_curvature(const CliffordSurface& surface, double s, double t, double h = 1e-4);

Parametrization as_parametrization(const CliffordSurface& surface);

/// h(q) = imaginary part of conj(q) i q, a point of S^2.
Eigen::Vector3d hopf_map(const Quaternion& q);

/// A unit quaternion q0 with hopf_map(q0) = base.
Quaternion hopf_section(const Eigen::Vector3d& base);

struct HopfFiber {
    Eigen::Vector3d base;
    Quaternion start;                ///< hopf_section(base)
    std::vector<Quaternion> samples; ///< exp(theta_m i) start, theta_m = 2 pi m / N

    Quaternion at(double theta) const { return Quaternion::exp_imaginary(Quaternion::i(), theta) * start; }
};

HopfFiber hopf_fiber(const Eigen::Vector3d& base, int samples);

/// Stereographic projection of S^3 minus `pole` onto R^3 in the oriented frame
/// (j pole, i pole, k pole).
Eigen::Vector3d stereographic(const Quaternion& x, const Quaternion& pole);

/// Discrete Gauss double integral over two closed polygons (segment midpoints
/// and chords). Rows are summed in a fixed order, so the value does not depend
/// on the thread count.
double gauss_linking_sum(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b,
                         int threads = 1);

struct LinkingResult {
    int value;       ///< nearest integer
    double raw;      ///< Gauss sum before rounding
    double residual; ///< |raw - value|
    Quaternion pole; ///< projection pole that was used
};

/// Linking number of two closed curves on S^3. The pole is the candidate from
/// the 48 binary-octahedral quaternions farthest from both curves.
LinkingResult linking_number(const std::vector<Quaternion>& c1, const std::vector<Quaternion>& c2, int threads = 1);

/// Linking number of two distinct Hopf fibers, each resampled with N points.
/// Fibers oriented by increasing theta link with +1.
LinkingResult linking_number(const HopfFiber& f1, const HopfFiber& f2, int samples, int threads = 1);

} // namespace spaceform

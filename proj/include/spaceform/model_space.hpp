#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace spaceform {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

class Isometry;

enum class Curvature : int { Hyperbolic = -1, Flat = 0, Spherical = 1 };

std::string_view to_string(Curvature c);
Curvature curvature_from_string(std::string_view name);

/// Absolute tolerance used for every on-model check.
inline constexpr double kTolerance = 1e-9;

/// One of the three simply connected constant-curvature geometries, realized
/// as the quadric a(x,x) = s k^2 in R^{n+1} (the hyperplane x0 = 1 when flat).
/// The bilinear form is a(x,y) = s k^2 x0 y0 + x1 y1 + ... + xn yn.
class ModelSpace {
public:
    ModelSpace(int dim, Curvature curvature, double radius = 1.0);

    static ModelSpace spherical(int dim, double radius = 1.0) { return {dim, Curvature::Spherical, radius}; }
    static ModelSpace flat(int dim) { return {dim, Curvature::Flat, 1.0}; }
    static ModelSpace hyperbolic(int dim, double radius = 1.0) { return {dim, Curvature::Hyperbolic, radius}; }

    int dim() const noexcept { return dim_; }
    int ambient_dim() const noexcept { return dim_ + 1; }
    Curvature curvature() const noexcept { return curvature_; }
    int sign() const noexcept { return static_cast<int>(curvature_); }
    double radius() const noexcept { return radius_; }
    bool is_flat() const noexcept { return curvature_ == Curvature::Flat; }

    /// Value of a(x,x) on the model: s k^2.
    double level() const noexcept { return sign() * radius_ * radius_; }

    /// Diagonal Gram matrix of the form a.
    Matrix gram() const;

    /// (1, 0, ..., 0).
    Vector base_point() const;

    /// Lifts flat coordinates (x1..xn) onto the hyperplane x0 = 1.
    Vector from_flat(const Vector& coords) const;

    bool operator==(const ModelSpace& other) const noexcept;
    bool operator!=(const ModelSpace& other) const noexcept { return !(*this == other); }

private:
    int dim_;
    Curvature curvature_;
    double radius_;
};

/// A point of the model, stored in ambient (Weierstrass) coordinates.
struct AmbientPoint {
    Vector x;
};

struct TangentVector {
    AmbientPoint base;
    Vector v;
};

double bilinear_form(const ModelSpace& space, const Vector& x, const Vector& y);

/// True when `x` satisfies the model invariant within kTolerance (scaled for
/// far-out hyperbolic points).
bool on_model(const ModelSpace& space, const Vector& x);

/// Throws InvalidPoint unless `p` lies on the model.
void require_point(const ModelSpace& space, const AmbientPoint& p);

/// Rescales `x` back onto the quadric (resets x0 = 1 when flat).
AmbientPoint project_to_model(const ModelSpace& space, Vector x);

double distance(const ModelSpace& space, const AmbientPoint& x, const AmbientPoint& y);

/// Point at arclength `t` along the geodesic leaving `v.base` in direction `v.v`.
/// The direction is normalized to unit a-length first.
AmbientPoint geodesic_point(const ModelSpace& space, const TangentVector& v, double t);

/// Unit initial tangent of the geodesic from `p` toward `q`.
Vector tangent_toward(const ModelSpace& space, const AmbientPoint& p, const AmbientPoint& q);

/// Deterministic a-orthonormal frame of the tangent space at `p`
/// (coordinate axes projected and Gram-Schmidt'ed, in axis order).
std::vector<Vector> tangent_frame(const ModelSpace& space, const AmbientPoint& p);

/// An orientation-preserving isometry carrying `p` to the base point.
Isometry weierstrass_chart(const ModelSpace& space, const AmbientPoint& p);

/// Volume of a geodesic ball of radius r (n = 3 only).
double ball_volume(const ModelSpace& space, double r);

/// Area of the geodesic sphere of radius r (any n).
double sphere_area(const ModelSpace& space, double r);

/// Annual-parallax angle of a star at distance `dist` seen across a baseline `baseline`
/// perpendicular to the line of sight: the right angle sits at the observer and
/// the parallax is pi/2 minus the angle at the far end of the baseline.
double parallax(const ModelSpace& space, double baseline, double dist);

} // namespace spaceform

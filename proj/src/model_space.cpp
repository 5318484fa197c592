#include "spaceform/model_space.hpp"

#include "spaceform/errors.hpp"
#include "spaceform/isometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace spaceform {

namespace {

constexpr double kPi = std::numbers::pi;

void require_length(const ModelSpace& space, const Vector& v, const char* what) {
    if (v.size() != space.ambient_dim()) {
        throw DimensionMismatch(std::string(what) + ": expected " + std::to_string(space.ambient_dim()) +
                                " coordinates, got " + std::to_string(v.size()));
    }
}

// Scale for the on-model residual; grows with coordinate size so that far
// hyperbolic points are not rejected for cancellation error alone.
double residual_scale(const ModelSpace& space, const Vector& x) {
    return std::max({1.0, space.radius() * space.radius(), x.squaredNorm()});
}

// Squared a-norm of the chord between two points of a curved model, which is
// 2 k^2 (1 - cos(d/k)) on the sphere and 2 k^2 (cosh(d/k) - 1) on the sheet.
double chord2(const ModelSpace& space, const Vector& x, const Vector& y) {
    const Vector diff = x - y;
    return bilinear_form(space, diff, diff);
}

} // namespace

std::string_view to_string(Curvature c) {
    switch (c) {
    case Curvature::Spherical: return "spherical";
    case Curvature::Flat: return "flat";
    case Curvature::Hyperbolic: return "hyperbolic";
    }
    return "unknown";
}

Curvature curvature_from_string(std::string_view name) {
    if (name == "spherical") return Curvature::Spherical;
    if (name == "flat") return Curvature::Flat;
    if (name == "hyperbolic") return Curvature::Hyperbolic;
    throw InvalidArgument("unknown space kind '" + std::string(name) + "'");
}

ModelSpace::ModelSpace(int dim, Curvature curvature, double radius)
    : dim_(dim), curvature_(curvature), radius_(curvature == Curvature::Flat ? 1.0 : radius) {
    if (dim < 1) throw InvalidArgument("model space dimension must be >= 1");
    if (curvature != Curvature::Flat && !(radius > 0.0 && std::isfinite(radius))) {
        throw InvalidArgument("curvature radius k must be positive and finite");
    }
}

Matrix ModelSpace::gram() const {
    Matrix g = Matrix::Identity(ambient_dim(), ambient_dim());
    g(0, 0) = level();
    return g;
}

Vector ModelSpace::base_point() const {
    Vector p = Vector::Zero(ambient_dim());
    p[0] = 1.0;
    return p;
}

Vector ModelSpace::from_flat(const Vector& coords) const {
    if (coords.size() != dim_) throw DimensionMismatch("flat coordinates must have length n");
    Vector p(ambient_dim());
    p[0] = 1.0;
    p.tail(dim_) = coords;
    return p;
}

bool ModelSpace::operator==(const ModelSpace& other) const noexcept {
    return dim_ == other.dim_ && curvature_ == other.curvature_ && radius_ == other.radius_;
}

double bilinear_form(const ModelSpace& space, const Vector& x, const Vector& y) {
    require_length(space, x, "bilinear_form");
    require_length(space, y, "bilinear_form");
    const double k = space.radius();
    return space.sign() * k * k * x[0] * y[0] + x.tail(space.dim()).dot(y.tail(space.dim()));
}

bool on_model(const ModelSpace& space, const Vector& x) {
    if (x.size() != space.ambient_dim() || !x.allFinite()) return false;
    if (space.is_flat()) return x[0] == 1.0;
    const double residual = std::abs(bilinear_form(space, x, x) - space.level());
    if (residual > kTolerance * residual_scale(space, x)) return false;
    if (space.curvature() == Curvature::Hyperbolic && !(x[0] > 0.0)) return false;
    return true;
}

void require_point(const ModelSpace& space, const AmbientPoint& p) {
    require_length(space, p.x, "point");
    if (!on_model(space, p.x)) {
        throw InvalidPoint("point does not lie on the " + std::string(to_string(space.curvature())) + " model");
    }
}

AmbientPoint project_to_model(const ModelSpace& space, Vector x) {
    require_length(space, x, "project_to_model");
    if (space.is_flat()) {
        x[0] = 1.0;
        return {std::move(x)};
    }
    const double q = bilinear_form(space, x, x) / space.level();
    const int n = space.dim();
    if (space.curvature() == Curvature::Spherical) {
        if (!(q > 0.0)) throw InvalidPoint("cannot project the zero vector onto the sphere");
        x /= std::sqrt(q);
        return {std::move(x)};
    }
    // Far out on the hyperboloid a(x,x) loses all its digits to cancellation,
    // so a vector that is null to rounding is taken at face value.
    const double k = space.radius();
    const double scale = k * k * x[0] * x[0] + x.tail(n).squaredNorm();
    if (q > 0.0) {
        x /= std::sqrt(q);
    } else if (std::abs(q) * k * k > 1e-12 * scale) {
        throw InvalidPoint("cannot project a vector of wrong causal type onto the model");
    }
    if (x[0] < 0.0) x = -x;
    x[0] = std::sqrt(1.0 + x.tail(n).squaredNorm() / (k * k));
    return {std::move(x)};
}

double distance(const ModelSpace& space, const AmbientPoint& x, const AmbientPoint& y) {
    require_point(space, x);
    require_point(space, y);
    const int n = space.dim();
    if (space.is_flat()) return (x.x.tail(n) - y.x.tail(n)).norm();

    const double k = space.radius();
    const double k2 = k * k;
    const double c = bilinear_form(space, x.x, y.x) / space.level();
    if (space.curvature() == Curvature::Spherical) {
        if (c > 1.0 + kTolerance || c < -1.0 - kTolerance) {
            throw InvalidPoint("spherical cosine out of range");
        }
        // Chord against antichord: stable near 0 and pi alike, exact for orthogonal points.
        const Vector sum = x.x + y.x;
        const double minus = std::sqrt(std::max(0.0, chord2(space, x.x, y.x)));
        const double plus = std::sqrt(std::max(0.0, bilinear_form(space, sum, sum)));
        return 2.0 * k * std::atan2(minus, plus);
    }
    if (c < 1.0 - kTolerance) throw InvalidPoint("hyperbolic cosh argument below 1");
    const double h = std::sqrt(std::max(0.0, chord2(space, x.x, y.x) / k2)) / 2.0;
    return 2.0 * k * std::asinh(h);
}

AmbientPoint geodesic_point(const ModelSpace& space, const TangentVector& tv, double t) {
    const AmbientPoint& p = tv.base;
    require_point(space, p);
    require_length(space, tv.v, "tangent");
    Vector v = tv.v;
    if (space.is_flat()) {
        if (std::abs(v[0]) > kTolerance) throw InvalidArgument("flat tangent must have v0 = 0");
        v[0] = 0.0;
    } else if (std::abs(bilinear_form(space, p.x, v)) > kTolerance * residual_scale(space, p.x) * std::max(1.0, v.norm())) {
        throw InvalidArgument("vector is not tangent to the model at the base point");
    }
    const double len2 = bilinear_form(space, v, v);
    if (!(len2 > 0.0) || v.norm() == 0.0) throw InvalidArgument("zero tangent vector");
    v /= std::sqrt(len2);

    if (space.is_flat()) return {p.x + t * v};

    const double k = space.radius();
    const double s = t / k;
    Vector x = space.curvature() == Curvature::Spherical
                   ? Vector(std::cos(s) * p.x + k * std::sin(s) * v)
                   : Vector(std::cosh(s) * p.x + k * std::sinh(s) * v);
    return project_to_model(space, std::move(x));
}

Vector tangent_toward(const ModelSpace& space, const AmbientPoint& p, const AmbientPoint& q) {
    require_point(space, p);
    require_point(space, q);
    Vector v;
    if (space.is_flat()) {
        v = q.x - p.x;
        v[0] = 0.0;
    } else {
        v = q.x - (bilinear_form(space, p.x, q.x) / space.level()) * p.x;
    }
    const double len2 = bilinear_form(space, v, v);
    if (!(len2 > 1e-24 * std::max(1.0, q.x.squaredNorm()))) {
        throw DegenerateGeometry("geodesic direction undefined (coincident or antipodal points)");
    }
    return v / std::sqrt(len2);
}

std::vector<Vector> tangent_frame(const ModelSpace& space, const AmbientPoint& p) {
    require_point(space, p);
    const int dim = space.ambient_dim();
    std::vector<Vector> frame;
    frame.reserve(space.dim());
    // Axis order 1..n first, then axis 0, so the base-point frame is the coordinate frame.
    for (int step = 0; step < dim && static_cast<int>(frame.size()) < space.dim(); ++step) {
        const int axis = (step + 1) % dim;
        Vector e = Vector::Unit(dim, axis);
        if (space.is_flat()) {
            if (axis == 0) continue;
        } else {
            e -= (bilinear_form(space, p.x, e) / space.level()) * p.x;
        }
        for (const Vector& f : frame) e -= bilinear_form(space, f, e) * f;
        const double len2 = bilinear_form(space, e, e);
        if (len2 < 1e-12) continue;
        frame.push_back(e / std::sqrt(len2));
    }
    return frame;
}

Isometry weierstrass_chart(const ModelSpace& space, const AmbientPoint& p) {
    require_point(space, p);
    const int n = space.dim();
    const int dim = space.ambient_dim();

    if (space.is_flat()) return Isometry::translation(space, -p.x.tail(n));

    // Work in scaled coordinates u = S x / k, S = diag(k, 1, ..., 1), where the
    // form becomes diag(s, 1, ..., 1) and the model is the unit sphere or sheet.
    const double k = space.radius();
    Matrix scale = Matrix::Identity(dim, dim);
    scale(0, 0) = k;
    Matrix unscale = Matrix::Identity(dim, dim);
    unscale(0, 0) = 1.0 / k;

    Vector u = scale * p.x / k;
    Vector e0 = Vector::Unit(dim, 0);
    Vector w = u - e0;
    if (w.norm() < 1e-15) return Isometry::identity(space);

    Matrix eta = Matrix::Identity(dim, dim);
    eta(0, 0) = space.sign();
    // Reflection through the a-orthogonal complement of w swaps u and e0.
    const double ww = w.dot(eta * w);
    Matrix reflect = Matrix::Identity(dim, dim) - 2.0 * w * (eta * w).transpose() / ww;
    // A second reflection in the last axis fixes e0 and restores orientation.
    Matrix flip = Matrix::Identity(dim, dim);
    flip(dim - 1, dim - 1) = -1.0;
    Matrix b = flip * reflect;
    return Isometry::from_matrix(space, unscale * b * scale);
}

double ball_volume(const ModelSpace& space, double r) {
    if (space.dim() != 3) throw Unsupported("ball_volume is implemented for n = 3 only");
    if (r < 0.0) throw InvalidArgument("ball radius must be nonnegative");
    const double k = space.radius();
    switch (space.curvature()) {
    case Curvature::Flat: return 4.0 / 3.0 * kPi * r * r * r;
    case Curvature::Spherical:
        if (r > kPi * k + kTolerance) throw InvalidArgument("spherical ball radius exceeds pi k");
        r = std::min(r, kPi * k);
        return 2.0 * kPi * k * k * r - kPi * k * k * k * std::sin(2.0 * r / k);
    case Curvature::Hyperbolic: return kPi * k * k * k * std::sinh(2.0 * r / k) - 2.0 * kPi * k * k * r;
    }
    return 0.0;
}

double sphere_area(const ModelSpace& space, double r) {
    const int n = space.dim();
    // Area of the unit (n-1)-sphere.
    const double unit = 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
    const double k = space.radius();
    double rho = r;
    if (space.curvature() == Curvature::Spherical) rho = k * std::sin(r / k);
    if (space.curvature() == Curvature::Hyperbolic) rho = k * std::sinh(r / k);
    return unit * std::pow(rho, n - 1);
}

double parallax(const ModelSpace& space, double baseline, double dist) {
    if (!(baseline > 0.0) || !(dist > baseline)) {
        throw DegenerateGeometry("parallax requires 0 < baseline < distance");
    }
    const double k = space.radius();
    switch (space.curvature()) {
    case Curvature::Flat: return std::atan2(baseline, dist);
    case Curvature::Spherical:
        if (dist >= kPi * k / 2.0) throw DegenerateGeometry("spherical parallax requires distance < pi k / 2");
        return std::atan2(std::sin(baseline / k), std::tan(dist / k));
    case Curvature::Hyperbolic: return std::atan2(std::sinh(baseline / k), std::tanh(dist / k));
    }
    return 0.0;
}

} // namespace spaceform

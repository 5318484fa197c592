#include "spaceform/quotient.hpp"

#include "spaceform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace spaceform {

namespace {

double point_tolerance(const ModelSpace& space) { return kTolerance * std::max(1.0, space.radius()); }

bool image_less(const Image& a, const Image& b) {
    if (a.dist != b.dist) return a.dist < b.dist;
    return a.element.word() < b.element.word();
}

// Lexicographic comparison with coordinates closer than kTolerance treated as equal.
bool lex_greater(const Vector& a, const Vector& b) {
    for (int i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) <= kTolerance) continue;
        return a[i] > b[i];
    }
    return false;
}

bool windowed(const DiscreteGroup& group) {
    return group.kind() == GroupKind::AffineFlat || group.kind() == GroupKind::Hyperbolic;
}

Image make_image(const SpaceForm& form, const Isometry& g, const AmbientPoint& anchor, const AmbientPoint& y) {
    AmbientPoint p = project_to_model(form.space(), g.apply(y).x);
    const double d = distance(form.space(), anchor, p);
    return {g, std::move(p), d};
}

Vector lattice_target(const SpaceForm& form, const AmbientPoint& anchor, const AmbientPoint& y) {
    const int n = form.space().dim();
    return anchor.x.tail(n) - y.x.tail(n);
}

} // namespace

std::string_view to_string(Violation::Reason reason) {
    switch (reason) {
    case Violation::Reason::FixedPoint: return "fixed_point";
    case Violation::Reason::Displacement: return "displacement";
    case Violation::Reason::OrbitAccumulation: return "orbit_accumulation";
    }
    return "unknown";
}

VerificationReport verify_space_form(const DiscreteGroup& group, double r, std::optional<AmbientPoint> base) {
    const ModelSpace& space = group.space();
    if (!(r > 0.0)) throw InvalidArgument("displacement bound r must be positive");
    AmbientPoint center = base ? *base : AmbientPoint{space.base_point()};
    require_point(space, center);
    const double tol = point_tolerance(space);

    std::vector<Isometry> checked;
    if (group.kind() == GroupKind::Lattice) {
        for (const auto& c : group.lattice_points_near(Vector::Zero(space.dim()), 3.0 * r)) {
            checked.push_back(group.lattice_element(c));
        }
    } else {
        checked = group.elements();
    }

    VerificationReport report;
    for (const Isometry& g : checked) {
        if (g.is_identity()) continue;
        if (auto fp = fixed_point(g, space)) {
            report.violation = Violation{Violation::Reason::FixedPoint, g, 0.0, fp, "element has a fixed point"};
            return report;
        }
        const double md = minimal_displacement(g, space);
        if (md < r - tol) {
            report.violation = Violation{Violation::Reason::Displacement, g, md, std::nullopt,
                                         "element displaces some point by less than r"};
            return report;
        }
    }

    // Desk-scale discontinuity: the orbit of the base inside B(base, 3r) is r-separated.
    std::vector<std::pair<const Isometry*, AmbientPoint>> orbit;
    for (const Isometry& g : checked) {
        AmbientPoint p = project_to_model(space, g.apply(center).x);
        if (distance(space, center, p) <= 3.0 * r + tol) orbit.emplace_back(&g, std::move(p));
    }
    for (size_t a = 0; a < orbit.size(); ++a) {
        for (size_t b = a + 1; b < orbit.size(); ++b) {
            const double d = distance(space, orbit[a].second, orbit[b].second);
            if (d < r - tol) {
                report.violation = Violation{Violation::Reason::OrbitAccumulation, *orbit[b].first, d, std::nullopt,
                                             "orbit of the base point is not r-separated"};
                return report;
            }
        }
    }

    report.form = SpaceForm(group, r, std::move(center));
    return report;
}

SpaceForm require_space_form(const DiscreteGroup& group, double r, std::optional<AmbientPoint> base) {
    VerificationReport report = verify_space_form(group, r, std::move(base));
    if (!report.verified()) {
        throw InvalidArgument("group rejected as space form: " + report.violation->message);
    }
    return std::move(*report.form);
}

std::vector<Image> images_within(const SpaceForm& form, const AmbientPoint& anchor, const AmbientPoint& y,
                                 double radius) {
    const ModelSpace& space = form.space();
    require_point(space, anchor);
    require_point(space, y);
    const DiscreteGroup& group = form.group();
    const double limit = radius + point_tolerance(space) * 1e-3;

    std::vector<Image> out;
    if (group.kind() == GroupKind::Lattice) {
        for (const auto& c : group.lattice_points_near(lattice_target(form, anchor, y), radius)) {
            Image img = make_image(form, group.lattice_element(c), anchor, y);
            if (img.dist <= limit) out.push_back(std::move(img));
        }
    } else {
        const bool check_shell = windowed(group);
        for (const Isometry& g : group.elements()) {
            Image img = make_image(form, g, anchor, y);
            if (img.dist > limit) continue;
            if (check_shell && static_cast<int>(g.word().size()) >= group.max_word_length()) {
                throw WindowInsufficient("word-length window " + std::to_string(group.max_word_length()) +
                                         " does not cover radius " + std::to_string(radius));
            }
            out.push_back(std::move(img));
        }
    }
    std::sort(out.begin(), out.end(), image_less);
    return out;
}

Image nearest_image(const SpaceForm& form, const AmbientPoint& anchor, const AmbientPoint& y) {
    const ModelSpace& space = form.space();
    const DiscreteGroup& group = form.group();
    double bound = 0.0;
    if (group.kind() == GroupKind::Lattice) {
        require_point(space, anchor);
        require_point(space, y);
        // Rounding the real coefficients gives an upper bound; the box search is exact below it.
        const Matrix basis = group.lattice_basis();
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(basis);
        const Vector t = lattice_target(form, anchor, y);
        const Vector real_coeffs = cod.solve(t);
        Eigen::VectorXi rounded(real_coeffs.size());
        for (int i = 0; i < real_coeffs.size(); ++i) rounded[i] = static_cast<int>(std::lround(real_coeffs[i]));
        bound = make_image(form, group.lattice_element(rounded), anchor, y).dist;
    } else {
        bound = std::numeric_limits<double>::infinity();
        for (const Isometry& g : group.elements()) bound = std::min(bound, make_image(form, g, anchor, y).dist);
    }
    std::vector<Image> found = images_within(form, anchor, y, bound);
    if (found.empty()) throw WindowInsufficient("no image found within the search window");
    return std::move(found.front());
}

double quotient_distance(const SpaceForm& form, const AmbientPoint& x, const AmbientPoint& y) {
    return nearest_image(form, x, y).dist;
}

QuotientPoint reduce(const SpaceForm& form, const AmbientPoint& x) {
    const Image nearest = nearest_image(form, form.base(), x);
    const double cutoff = nearest.dist + kTolerance;
    const std::vector<Image> ties = images_within(form, form.base(), x, cutoff);
    const Image* best = &nearest;
    for (const Image& img : ties) {
        if (img.dist <= cutoff && lex_greater(img.point.x, best->point.x)) best = &img;
    }
    return {best->point};
}

std::vector<AmbientPoint> lift_path(const SpaceForm& form, const std::vector<QuotientPoint>& path,
                                    const AmbientPoint& start) {
    if (path.empty()) return {};
    const ModelSpace& space = form.space();
    const double tol = point_tolerance(space);
    if (quotient_distance(form, start, path.front().rep) > tol) {
        throw InvalidArgument("lift start does not project to the first path point");
    }
    const double max_step = form.displacement_bound() / 2.0;
    std::vector<AmbientPoint> lifted{start};
    lifted.reserve(path.size());
    for (size_t i = 1; i < path.size(); ++i) {
        const double step = quotient_distance(form, path[i - 1].rep, path[i].rep);
        if (step >= max_step) {
            throw InvalidArgument("path step " + std::to_string(i) + " is not shorter than r/2; lift is ambiguous");
        }
        lifted.push_back(nearest_image(form, lifted.back(), path[i].rep).point);
    }
    return lifted;
}

std::optional<Isometry> deck_transformation(const SpaceForm& form, const AmbientPoint& x, const AmbientPoint& y) {
    Image img = nearest_image(form, y, x);
    if (img.dist > point_tolerance(form.space())) return std::nullopt;
    return std::move(img.element);
}

double volume(const SpaceForm& form) {
    const ModelSpace& space = form.space();
    const DiscreteGroup& group = form.group();
    switch (space.curvature()) {
    case Curvature::Flat: {
        if (group.kind() != GroupKind::Lattice) {
            if (group.kind() == GroupKind::Finite) throw InfiniteVolume("finite group acting on flat space");
            throw Unsupported("volume of affine-flat quotients is not implemented");
        }
        const Matrix basis = group.lattice_basis();
        if (basis.cols() < space.dim()) throw InfiniteVolume("lattice rank is below the dimension");
        return std::abs(basis.determinant());
    }
    case Curvature::Spherical: {
        const int n = space.dim();
        const double k = space.radius();
        const double total = 2.0 * std::pow(std::numbers::pi, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0) * std::pow(k, n);
        return total / static_cast<double>(group.elements().size());
    }
    case Curvature::Hyperbolic: throw Unsupported("hyperbolic quotient volume is not implemented");
    }
    return 0.0;
}

double estimate_volume(const SpaceForm& form, long samples, std::uint64_t seed) {
    if (samples < 1) throw InvalidArgument("sample count must be positive");
    const ModelSpace& space = form.space();
    const int n = space.dim();
    const AmbientPoint& base = form.base();
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal;
    long inside = 0;

    if (space.curvature() == Curvature::Spherical) {
        std::vector<Vector> orbit;
        for (const Isometry& g : form.group().elements()) {
            if (!g.is_identity()) orbit.push_back(g.apply(base.x));
        }
        const Vector gb = space.gram() * base.x;
        Vector x(n + 1);
        for (long s = 0; s < samples; ++s) {
            // Uniform on the unit sphere in scaled coordinates, then mapped back.
            for (int i = 0; i <= n; ++i) x[i] = normal(engine);
            x /= x.norm();
            x.tail(n) *= space.radius();
            const double own = gb.dot(x);
            bool closest = true;
            for (const Vector& o : orbit) {
                if (bilinear_form(space, o, x) > own) {
                    closest = false;
                    break;
                }
            }
            inside += closest;
        }
        const double total = volume(form) * static_cast<double>(form.group().elements().size());
        return total * static_cast<double>(inside) / static_cast<double>(samples);
    }

    if (space.is_flat() && form.group().kind() == GroupKind::Lattice) {
        const Matrix basis = form.group().lattice_basis();
        if (basis.cols() < n) throw InfiniteVolume("lattice rank is below the dimension");
        // The Dirichlet cell lies inside the ball of radius half the basis length sum.
        double half = 0.0;
        for (int c = 0; c < basis.cols(); ++c) half += 0.5 * basis.col(c).norm();
        std::uniform_real_distribution<double> box(-half, half);
        Vector offset(n);
        for (long s = 0; s < samples; ++s) {
            for (int i = 0; i < n; ++i) offset[i] = box(engine);
            const double own = offset.norm();
            bool closest = true;
            for (const Eigen::VectorXi& c : form.group().lattice_points_near(-offset, own)) {
                if (c.isZero()) continue;
                if ((basis * c.cast<double>() + offset).norm() < own) {
                    closest = false;
                    break;
                }
            }
            inside += closest;
        }
        return std::pow(2.0 * half, n) * static_cast<double>(inside) / static_cast<double>(samples);
    }
    throw Unsupported("volume estimates need a spherical form or a flat lattice");
}

} // namespace spaceform

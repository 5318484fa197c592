#include "spaceform/cosmos.hpp"

#include "spaceform/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <thread>

namespace spaceform {

namespace {

constexpr double kCoincident = 1e-12;

Vector frame_components(const ModelSpace& space, const std::vector<Vector>& frame, const Vector& v) {
    Vector out(static_cast<int>(frame.size()));
    for (size_t i = 0; i < frame.size(); ++i) out[static_cast<int>(i)] = bilinear_form(space, v, frame[i]);
    return out;
}

} // namespace

void validate_catalog(const SpaceForm& form, const StarCatalog& catalog) {
    std::set<std::string> ids;
    for (const Star& star : catalog.stars) {
        if (!ids.insert(star.id).second) throw InvalidArgument("duplicate star id '" + star.id + "'");
        if (!(star.luminosity > 0.0)) throw InvalidArgument("star '" + star.id + "' needs positive luminosity");
        require_point(form.space(), star.position);
        const QuotientPoint rep = reduce(form, star.position);
        if ((rep.rep.x - star.position.x).cwiseAbs().maxCoeff() > 1e-9) {
            throw InvalidArgument("star '" + star.id + "' is not in canonical (reduced) position");
        }
    }
}

std::vector<GhostImage> enumerate_images(const SpaceForm& form, const AmbientPoint& observer,
                                         const StarCatalog& catalog, double horizon, int threads) {
    if (!(horizon > 0.0)) throw InvalidArgument("horizon must be positive");
    const ModelSpace& space = form.space();
    require_point(space, observer);
    const std::vector<Vector> frame = tangent_frame(space, observer);

    const size_t count = catalog.stars.size();
    std::vector<std::vector<GhostImage>> per_star(count);
    auto work = [&](size_t index) {
        const Star& star = catalog.stars[index];
        for (Image& img : images_within(form, observer, star.position, horizon)) {
            GhostImage ghost{star.id, img.element.word(), Vector::Zero(space.dim()), img.dist, 0.0, img.point, false};
            if (img.dist <= kCoincident) {
                ghost.flagged = true;
            } else {
                ghost.direction = frame_components(space, frame, tangent_toward(space, observer, img.point));
                ghost.flux = star.luminosity / sphere_area(space, img.dist);
            }
            per_star[index].push_back(std::move(ghost));
        }
    };

    const size_t workers = std::min(count, static_cast<size_t>(std::clamp(threads, 1, 64)));
    if (workers <= 1) {
        for (size_t i = 0; i < count; ++i) work(i);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        for (size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (size_t i = w; i < count; i += workers) work(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors) {
            if (err) std::rethrow_exception(err);
        }
    }

    std::vector<GhostImage> out;
    for (auto& batch : per_star) {
        for (auto& ghost : batch) out.push_back(std::move(ghost));
    }
    std::sort(out.begin(), out.end(), [](const GhostImage& a, const GhostImage& b) {
        if (a.dist != b.dist) return a.dist < b.dist;
        if (a.source_id != b.source_id) return a.source_id < b.source_id;
        return a.word < b.word;
    });
    return out;
}

VolumeCheck volume_bound_check(const SpaceForm& form, double system_radius) {
    const double v = volume(form);
    const double ball = ball_volume(form.space(), system_radius);
    return {v > ball, v / ball, v, ball};
}

GravityResult gravitational_field(const SpaceForm& form, const AmbientPoint& source, double mass,
                                  const AmbientPoint& test, double cutoff) {
    const ModelSpace& space = form.space();
    if (space.curvature() == Curvature::Hyperbolic) throw Unsupported("gravity sums need a flat or spherical form");
    if (!(cutoff > 0.0)) throw InvalidArgument("cutoff radius must be positive");

    const std::vector<Image> images = images_within(form, test, source, cutoff);
    GravityResult result{Vector::Zero(space.ambient_dim()), {}, 0};
    for (size_t i = 0; i < images.size(); ++i) {
        const Image& img = images[i];
        if (img.dist <= kCoincident) throw DegenerateGeometry("test point lies in the orbit of the source");
        result.force += (mass / (img.dist * img.dist)) * tangent_toward(space, test, img.point);
        ++result.images;
        const bool shell_closes = i + 1 == images.size() || images[i + 1].dist - img.dist > kTolerance;
        if (shell_closes) result.trace.push_back({img.dist, result.force});
    }
    return result;
}

double parallax_floor(double baseline, double k) {
    if (!(baseline > 0.0) || !(k > 0.0)) throw InvalidArgument("baseline and k must be positive");
    return std::atan(std::sinh(baseline / k));
}

CurvatureBounds curvature_radius_bound(double min_parallax, double baseline) {
    if (!(min_parallax > 0.0 && min_parallax < std::numbers::pi / 2.0)) {
        throw InvalidArgument("minimum parallax must lie in (0, pi/2)");
    }
    if (!(baseline > 0.0)) throw InvalidArgument("baseline must be positive");
    const double t = std::tan(min_parallax);
    return {2.0 * baseline / (std::numbers::pi * t), baseline / std::asinh(t)};
}

} // namespace spaceform

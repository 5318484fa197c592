// Runs the fourteen acceptance scenarios and prints one PASS/FAIL line each.
// Every check compares the library against an oracle written here.

#include "spaceform/clifford_hopf.hpp"
#include "spaceform/cosmos.hpp"
#include "spaceform/errors.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include <unistd.h>

using namespace spaceform;
using spaceform::testing::kPi;
using spaceform::testing::longhand_product;
using spaceform::testing::Rng;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<int>(xs.size()));
    int i = 0;
    for (double x : xs) v[i++] = x;
    return v;
}

const ModelSpace kE3 = ModelSpace::flat(3);

AmbientPoint flat(double a, double b, double c) { return {kE3.from_flat(vec({a, b, c}))}; }

SpaceForm cubic_torus() {
    DiscreteGroup lattice(kE3,
                          {Isometry::translation(kE3, vec({1, 0, 0})), Isometry::translation(kE3, vec({0, 1, 0})),
                           Isometry::translation(kE3, vec({0, 0, 1}))},
                          GroupKind::Lattice, 4);
    return require_space_form(lattice, 1.0);
}

SpaceForm elliptic_space() { return require_space_form(finite_spherical_group("C2"), kPi); }

double stdev(const std::vector<double>& xs) {
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double acc = 0.0;
    for (double x : xs) acc += (x - mean) * (x - mean);
    return std::sqrt(acc / static_cast<double>(xs.size()));
}

double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).vec().norm(); }

std::vector<Eigen::Vector4d> quaternion_closure(const std::vector<Eigen::Vector4d>& gens) {
    std::vector<Eigen::Vector4d> elements{Eigen::Vector4d(1, 0, 0, 0)};
    for (size_t i = 0; i < elements.size() && elements.size() < 1000; ++i) {
        for (const auto& g : gens) {
            const Eigen::Vector4d p = longhand_product(elements[i], g);
            const bool seen = std::any_of(elements.begin(), elements.end(),
                                          [&](const Eigen::Vector4d& e) { return (e - p).cwiseAbs().maxCoeff() < 1e-8; });
            if (!seen) elements.push_back(p);
        }
    }
    return elements;
}

// 1. Clifford flatness and the sphere control.
Outcome clifford_flatness() {
    Outcome o;
    const CliffordSurface surf(Quaternion::one(), Quaternion::i(), Quaternion::j());
    double worst = 0.0;
    for (int a = 0; a < 32; ++a) {
        for (int b = 0; b < 32; ++b) worst = std::max(worst, std::abs(gauss_curvature(surf, 2 * kPi * a / 32, 2 * kPi * b / 32)));
    }
    const Parametrization sphere = [](double s, double t) {
        Eigen::VectorXd x(3);
        x << std::cos(s) * std::cos(t), std::cos(s) * std::sin(t), std::sin(s);
        return x;
    };
    double sphere_err = 0.0;
    for (int a = 0; a < 8; ++a) {
        for (int b = 0; b < 8; ++b) {
            const double lat = -1.2 + 2.4 * a / 7.0, lon = 2 * kPi * b / 8;
            sphere_err = std::max(sphere_err, std::abs(gauss_curvature(sphere, lat, lon) - 1.0));
        }
    }
    o.detail << "max|K| = " << worst << ", sphere |K-1| = " << sphere_err;
    o.require(worst <= 1e-6, "flatness");
    o.require(sphere_err <= 1e-4, "sphere control");
    return o;
}

// 2. Torus identification.
Outcome torus_identification() {
    Outcome o;
    const CliffordSurface surf(Quaternion::one(), Quaternion::i(), Quaternion::j());
    double worst = 0.0;
    for (int a = 0; a < 16; ++a) {
        for (int b = 0; b < 16; ++b) {
            const double s = 2 * kPi * a / 16, t = 2 * kPi * b / 16;
            worst = std::max({worst, qdist(surf.at(s + 2 * kPi, t), surf.at(s, t)), qdist(surf.at(s, t + 2 * kPi), surf.at(s, t))});
        }
    }
    o.detail << "max period defect = " << worst;
    o.require(worst <= 1e-12, "periodicity");
    return o;
}

// 3. Twist commutation.
Outcome twist_commutation() {
    Outcome o;
    Rng rng(3);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Quaternion u = rng.unit_imaginary(), v = rng.unit_imaginary();
        const double s = rng.uniform(0, 2 * kPi), t = rng.uniform(0, 2 * kPi);
        const Isometry l = left_twist(Quaternion::exp_imaginary(u, s));
        const Isometry r = right_twist(Quaternion::exp_imaginary(v, t));
        worst = std::max(worst, (compose(l, r).matrix() - compose(r, l).matrix()).cwiseAbs().maxCoeff());
    }
    o.detail << "max matrix difference = " << worst;
    o.require(worst <= 1e-12, "commutation");
    return o;
}

// 4. Constant displacement of twists.
Outcome constant_displacement() {
    Outcome o;
    Rng rng(4);
    const ModelSpace s3 = ModelSpace::spherical(3);
    double worst_sd = 0.0, worst_mean = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        const Quaternion q = rng.unit_quaternion();
        const Isometry g = left_twist(q);
        std::vector<double> ds;
        for (int i = 0; i < 100; ++i) {
            const AmbientPoint x{rng.unit_quaternion().vec()};
            ds.push_back(distance(s3, x, g.apply(x)));
        }
        const double mean = std::accumulate(ds.begin(), ds.end(), 0.0) / 100.0;
        worst_sd = std::max(worst_sd, stdev(ds));
        worst_mean = std::max(worst_mean, std::abs(mean - std::acos(std::clamp(q.w, -1.0, 1.0))));
        worst_mean = std::max(worst_mean, std::abs(minimal_displacement(g, s3) - mean));
    }
    o.detail << "max stdev = " << worst_sd << ", max |mean - arccos Re q| = " << worst_mean;
    o.require(worst_sd <= 1e-10, "stdev");
    o.require(worst_mean <= 1e-10, "mean");
    return o;
}

// 5. Quotient distance against brute force, and the triangle inequality.
Outcome quotient_oracle() {
    Outcome o;
    const SpaceForm torus = cubic_torus();
    Rng rng(5);
    // Points in the unit cell, so the 7^3 window of translates always holds the nearest one.
    auto random_point = [&] { return flat(rng.uniform(0, 1), rng.uniform(0, 1), rng.uniform(0, 1)); };
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const AmbientPoint x = random_point(), y = random_point();
        double best = std::numeric_limits<double>::infinity();
        for (int a = -3; a <= 3; ++a) {
            for (int b = -3; b <= 3; ++b) {
                for (int c = -3; c <= 3; ++c) {
                    const Eigen::Vector3d d(y.x[1] + a - x.x[1], y.x[2] + b - x.x[2], y.x[3] + c - x.x[3]);
                    best = std::min(best, d.norm());
                }
            }
        }
        // Shifting a representative by a lattice vector must not change anything.
        const AmbientPoint far = flat(x.x[1] + 5, x.x[2] - 7, x.x[3] + 2);
        worst = std::max({worst, std::abs(quotient_distance(torus, x, y) - best),
                          std::abs(quotient_distance(torus, far, y) - best)});
    }
    int triangle_violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const AmbientPoint x = reduce(torus, random_point()).rep;
        const AmbientPoint y = reduce(torus, random_point()).rep;
        const AmbientPoint z = reduce(torus, random_point()).rep;
        if (quotient_distance(torus, x, y) > quotient_distance(torus, x, z) + quotient_distance(torus, z, y) + 1e-9) {
            ++triangle_violations;
        }
    }
    o.detail << "max |d - brute force| = " << worst << ", triangle violations = " << triangle_violations;
    o.require(worst <= 1e-12, "brute force");
    o.require(triangle_violations == 0, "triangle inequality");
    return o;
}

// 6. Lift then project, and the unit loop.
Outcome covering_round_trip() {
    Outcome o;
    Rng rng(6);
    double worst = 0.0;
    for (const SpaceForm& form : {cubic_torus(), elliptic_space()}) {
        const ModelSpace& space = form.space();
        const double step = 0.45 * form.displacement_bound();
        for (int trial = 0; trial < 100; ++trial) {
            std::vector<AmbientPoint> walk{rng.point(space, 1.0)};
            for (int i = 0; i < 10; ++i) {
                Vector v = Vector::Zero(space.ambient_dim());
                for (const auto& e : tangent_frame(space, walk.back())) v += rng.normal() * e;
                walk.push_back(geodesic_point(space, {walk.back(), v}, rng.uniform(0.0, step)));
            }
            std::vector<QuotientPoint> path;
            for (const auto& w : walk) path.push_back(reduce(form, w));
            const auto lifted = lift_path(form, path, walk.front());
            for (size_t i = 0; i < walk.size(); ++i) {
                worst = std::max(worst, (reduce(form, lifted[i]).rep.x - path[i].rep.x).cwiseAbs().maxCoeff());
                // The walk itself is a lift, and lifts are unique.
                worst = std::max(worst, (lifted[i].x - walk[i].x).cwiseAbs().maxCoeff());
            }
        }
    }
    const SpaceForm torus = cubic_torus();
    std::vector<QuotientPoint> loop;
    for (double x : {0.0, 0.25, 0.5, 0.75, 0.0}) loop.push_back(reduce(torus, flat(x, 0, 0)));
    const auto lifted = lift_path(torus, loop, flat(0, 0, 0));
    const auto deck = deck_transformation(torus, lifted.front(), lifted.back());
    const bool e1 = deck && (deck->translation_part() - vec({1, 0, 0})).norm() < 1e-12;
    o.detail << "max round-trip defect = " << worst << ", loop end = (" << lifted.back().x[1] << ", " << lifted.back().x[2]
             << ", " << lifted.back().x[3] << "), deck = " << (e1 ? "e1" : "other");
    o.require(worst <= 1e-9, "round trip");
    o.require(e1, "unit loop deck element");
    return o;
}

// 7. Finite subgroups of S^3: orders and freeness.
Outcome spherical_inventory() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    struct Case {
        std::string name;
        size_t order;
    };
    std::vector<Case> cases;
    for (int m = 1; m <= 12; ++m) cases.push_back({"C" + std::to_string(m), static_cast<size_t>(m)});
    for (int m = 1; m <= 6; ++m) cases.push_back({"2D" + std::to_string(m), static_cast<size_t>(4 * m)});
    cases.push_back({"2T", 24});
    cases.push_back({"2O", 48});
    cases.push_back({"2I", 120});
    int verified = 0;
    for (const Case& c : cases) {
        const DiscreteGroup g = finite_spherical_group(c.name);
        std::vector<Eigen::Vector4d> gens;
        for (int i = 0; i < g.input_generator_count(); ++i) gens.push_back(g.generators()[static_cast<size_t>(i)].twist()->q.vec());
        const size_t brute = quaternion_closure(gens).size();
        const bool ok_order = g.elements().size() == c.order && brute == c.order;
        o.require(ok_order, c.name + " order " + std::to_string(g.elements().size()));
        const double r = c.order > 1 ? minimal_group_displacement(g) : kPi;
        if (verify_space_form(g, r).verified()) ++verified;
        else o.require(false, c.name + " not free");
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.detail << cases.size() << " groups, orders match, " << verified << " verified free, " << seconds << " s";
    o.require(seconds <= 60.0, "runtime");
    return o;
}

// 8. Even-dimension obstruction on S^2.
Outcome even_dimension() {
    Outcome o;
    const ModelSpace s2 = ModelSpace::spherical(2);
    Rng rng(8);
    int elements_checked = 0, accepted = 0;
    auto rotation = [&](const Eigen::Vector3d& axis, double angle) {
        return Isometry::from_matrix(s2, Matrix(Eigen::Matrix3d(Eigen::AngleAxisd(angle, axis.normalized()))));
    };
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Vector3d axis = rng.unit3();
        std::vector<Isometry> gens{rotation(axis, 2 * kPi / rng.integer(2, 8))};
        // Every other group also gets a half turn about a perpendicular axis (dihedral).
        if (trial % 2) gens.push_back(rotation(axis.unitOrthogonal(), kPi));
        const DiscreteGroup g(s2, gens, GroupKind::Finite);
        for (const Isometry& e : g.elements()) {
            if (e.is_identity()) continue;
            ++elements_checked;
            const auto fp = fixed_point(e, s2);
            // Oracle: the returned point really is fixed.
            const bool fixed = fp && (e.apply(*fp).x - fp->x).norm() < 1e-9;
            o.require(fixed, "rotation without fixed point");
        }
        if (verify_space_form(g, 1e-3).verified()) ++accepted;
    }
    const Isometry minus = Isometry::from_matrix(s2, -Matrix::Identity(3, 3));
    const bool minus_free = !has_fixed_point(minus, s2);
    const bool pm_accepted = verify_space_form(DiscreteGroup(s2, {minus}, GroupKind::Finite), kPi).verified();
    const bool mixed_rejected =
        !verify_space_form(DiscreteGroup(s2, {minus, rotation({0, 0, 1}, kPi)}, GroupKind::Finite), 1e-3).verified();
    o.detail << elements_checked << " rotations all fixed, -I free = " << minus_free << ", rotation groups accepted = "
             << accepted << ", {+-I} accepted = " << pm_accepted;
    o.require(minus_free, "-I has no fixed point");
    o.require(accepted == 0, "rotation groups rejected");
    o.require(pm_accepted, "{+-I} accepted");
    o.require(mixed_rejected, "{+-I} x rotation rejected");
    return o;
}

// 9. Hopf linking.
Outcome hopf_linking() {
    Outcome o;
    const HopfFiber f1 = hopf_fiber({1, 0, 0}, 8), f2 = hopf_fiber({-1, 0, 0}, 8);
    const LinkingResult r512 = linking_number(f1, f2, 512);
    const LinkingResult r1024 = linking_number(f1, f2, 1024);
    // Unlinked control: two small circles around far-apart centers.
    std::vector<Quaternion> c1, c2;
    for (int m = 0; m < 512; ++m) {
        const double th = 2 * kPi * m / 512;
        c1.push_back((Quaternion::one() + 0.2 * (std::cos(th) * Quaternion::i() + std::sin(th) * Quaternion::j())).normalized());
        c2.push_back((Quaternion::k() + 0.2 * (std::cos(th) * Quaternion::i() + std::sin(th) * Quaternion::j())).normalized());
    }
    const LinkingResult control = linking_number(c1, c2);
    o.detail << "N=512: " << r512.value << " (residual " << r512.residual << "), N=1024 residual " << r1024.residual
             << ", control " << control.value << " (residual " << control.residual << ")";
    o.require(r512.value == 1 && r512.residual < 0.05, "linking at 512");
    o.require(r1024.residual < r512.residual, "residual shrinks");
    o.require(control.value == 0 && control.residual < 0.05, "unlinked control");
    return o;
}

// 10. Ghost images in the cubic torus.
Outcome ghost_images() {
    Outcome o;
    const SpaceForm torus = cubic_torus();
    const auto images = enumerate_images(torus, flat(0, 0, 0), {{{"s", flat(0.5, 0, 0), 1.0}}}, 1.6);
    std::vector<double> brute;
    for (int a = -4; a <= 4; ++a) {
        for (int b = -4; b <= 4; ++b) {
            for (int c = -4; c <= 4; ++c) {
                const double d = Eigen::Vector3d(0.5 + a, b, c).norm();
                if (d <= 1.6) brute.push_back(d);
            }
        }
    }
    std::sort(brute.begin(), brute.end());
    int n05 = 0, n112 = 0, n15 = 0;
    bool match = images.size() == brute.size();
    for (size_t i = 0; i < images.size(); ++i) {
        if (match && std::abs(images[i].dist - brute[i]) > 1e-12) match = false;
        if (std::abs(images[i].dist - 0.5) < 1e-12) ++n05;
        if (std::abs(images[i].dist - std::sqrt(1.25)) < 1e-12) ++n112;
        if (std::abs(images[i].dist - 1.5) < 1e-12) ++n15;
    }
    o.detail << images.size() << " images: 0.5 x" << n05 << ", sqrt(1.25) x" << n112 << ", 1.5 x" << n15;
    o.require(images.size() == 20 && match, "brute force");
    o.require(n05 == 2 && n112 == 8 && n15 == 10, "shell counts");
    return o;
}

// 11. Monte Carlo volumes and the volume criterion.
Outcome volume_criterion() {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    Rng rng(11);
    auto monte_carlo = [&](const std::vector<Eigen::Vector4d>& group, long samples) {
        long inside = 0;
        for (long s = 0; s < samples; ++s) {
            const Eigen::Vector4d x = rng.unit_quaternion().vec();
            // In the Dirichlet domain of 1 iff no g*1 = g is closer, i.e. <x, g> <= x_0.
            bool closest = true;
            for (const auto& g : group) {
                if (g.dot(x) > x[0] + 1e-15) {
                    closest = false;
                    break;
                }
            }
            inside += closest;
        }
        return 2 * kPi * kPi * static_cast<double>(inside) / static_cast<double>(samples);
    };
    const auto pm = quaternion_closure({Eigen::Vector4d(-1, 0, 0, 0)});
    const double phi = (1 + std::sqrt(5.0)) / 2;
    const auto icosa = quaternion_closure({Eigen::Vector4d(phi / 2, 0.5 / phi, 0.5, 0), Eigen::Vector4d(0, 1, 0, 0)});
    const double mc_elliptic = monte_carlo(pm, 1000000);
    const double mc_icosa = monte_carlo(icosa, 1000000);
    const double v_elliptic = volume(elliptic_space());
    const double v_icosa = volume(require_space_form(finite_spherical_group("2I"), 0.5));
    const double e1 = std::abs(mc_elliptic / v_elliptic - 1.0), e2 = std::abs(mc_icosa / v_icosa - 1.0);

    // Closed-form comparisons for the three worked examples.
    const bool torus_small = volume_bound_check(cubic_torus(), 0.3).pass == (1.0 > 4 * kPi * 0.027 / 3);
    const bool torus_large = volume_bound_check(cubic_torus(), 1.0).pass == (1.0 > 4 * kPi / 3);
    const bool poincare =
        volume_bound_check(require_space_form(finite_spherical_group("2I"), 0.5), 0.5).pass == (2 * kPi * kPi / 120 > kPi - kPi * std::sin(1.0));
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.detail << "|Gamma| = " << pm.size() << "/" << icosa.size() << ", MC relative errors " << e1 << ", " << e2
             << ", volume checks " << (torus_small && torus_large && poincare ? "agree" : "disagree") << ", " << seconds << " s";
    o.require(icosa.size() == 120, "2I closure");
    o.require(e1 <= 0.01 && e2 <= 0.01, "Monte Carlo within 1%");
    o.require(torus_small && torus_large && poincare, "volume checks");
    o.require(seconds <= 60.0, "runtime");
    return o;
}

// 12. Parallax limits and curvature bounds.
Outcome parallax_limits() {
    Outcome o;
    double worst_limit = 0.0;
    for (auto [b, d] : {std::pair{0.01, 1.0}, std::pair{0.3, 2.0}, std::pair{1.0, 5.0}}) {
        const double euclid = std::atan2(b, d);
        for (const ModelSpace& s : {ModelSpace::spherical(3, 1e6), ModelSpace::hyperbolic(3, 1e6)}) {
            worst_limit = std::max(worst_limit, std::abs(parallax(s, b, d) / euclid - 1.0));
        }
    }
    double worst_bound = 0.0;
    double prev_h = 0.0, prev_e = 0.0;
    bool monotone = true, floor_positive = true;
    for (double p : {1e-3, 1e-4, 1e-5}) {
        double lo = 1e-3, hi = 1e12;
        for (int it = 0; it < 400; ++it) {
            const double mid = std::sqrt(lo * hi);
            const double far = parallax(ModelSpace::hyperbolic(3, mid), 1.0, 1e3 * mid);
            floor_positive = floor_positive && far > 0.0;
            (far > p ? lo : hi) = mid;
        }
        const CurvatureBounds bounds = curvature_radius_bound(p, 1.0);
        worst_bound = std::max(worst_bound, std::abs(bounds.hyperbolic / lo - 1.0));
        monotone = monotone && bounds.hyperbolic > prev_h && bounds.elliptic > prev_e;
        prev_h = bounds.hyperbolic;
        prev_e = bounds.elliptic;
    }
    o.detail << "max Euclidean-limit deviation = " << worst_limit << ", bisection mismatch = " << worst_bound
             << ", monotone = " << monotone;
    o.require(worst_limit <= 1e-6, "Euclidean limit");
    o.require(floor_positive, "positive floor");
    o.require(worst_bound <= 1e-6, "bisection");
    o.require(monotone, "monotone");
    return o;
}

// 13. Gravity anisotropy in the cubic torus.
Outcome gravity_anisotropy() {
    Outcome o;
    const SpaceForm torus = cubic_torus();
    const double c = 0.25 / std::sqrt(3.0);
    auto relative = [&] {
        const GravityResult axis = gravitational_field(torus, flat(0, 0, 0), 1.0, flat(0.25, 0, 0), 8.0);
        const GravityResult diag = gravitational_field(torus, flat(0, 0, 0), 1.0, flat(c, c, c), 8.0);
        return std::abs(axis.force.norm() - diag.force.norm()) / axis.force.norm();
    };
    const double first = relative(), second = relative();
    const GravityResult plus = gravitational_field(torus, flat(0, 0, 0), 1.0, flat(0.25, 0, 0), 8.0);
    const GravityResult minus = gravitational_field(torus, flat(0, 0, 0), 1.0, flat(-0.25, 0, 0), 8.0);
    Vector mirrored = minus.force;
    mirrored[1] = -mirrored[1];
    const double mirror = (mirrored - plus.force).cwiseAbs().maxCoeff();
    o.detail << "relative anisotropy = " << first << " (rerun identical: " << (first == second) << "), mirror defect = " << mirror;
    o.require(first > 0.0, "anisotropy");
    o.require(first == second, "reproducible");
    o.require(mirror <= 1e-9, "mirror symmetry");
    return o;
}

// 14. CLI determinism.
#ifdef SPACEFORM_CLI_PATH
std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome cli_determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("spaceform_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const std::string torus = (dir / "torus.json").string();
    const std::string ell = (dir / "elliptic.json").string();
    const std::string stars = (dir / "stars.json").string();
    std::ofstream(torus) << R"({"space":{"kind":"flat","dim":3},"group":{"kind":"lattice","generators":[{"b":[1,0,0]},{"b":[0,1,0]},{"b":[0,0,1]}],"max_word_length":4},"r":1})";
    std::ofstream(ell) << R"({"space":{"kind":"spherical","dim":3,"k":1},"group":{"kind":"C2"},"r":3.141592653589793})";
    std::ofstream(stars) << R"({"stars":[{"id":"s","pos":[0.5,0,0],"lum":1}]})";

    const std::vector<std::pair<std::string, std::string>> commands = {
        {"dist", R"(dist --space '{"kind":"spherical","dim":3,"k":1}' --x 1,0,0,0 --y 0,1,0,0)"},
        {"geodesic", R"(geodesic --space '{"kind":"hyperbolic","dim":3,"k":1}' --x 1,0,0,0 --v 0,1,0,0 --t 0.5)"},
        {"parallax", R"(parallax --space '{"kind":"spherical","dim":3,"k":1}' --baseline 0.01 --dist 1)"},
        {"group enumerate", "group enumerate --kind 2I"},
        {"quotient-dist", "quotient-dist --form " + torus + " --x 0,0,0 --y 0.5,0.5,0.5"},
        {"reduce", "reduce --form " + torus + " --x 1.25,-0.5,3"},
        {"lift", "lift --form " + torus + " --path '0,0,0;0.25,0,0;0.5,0,0;0.75,0,0;0,0,0'"},
        {"volume", "volume --form " + ell + " --samples 20000"},
        {"clifford-surface", "clifford-surface --u i --v j --grid 32"},
        {"hopf-link", "hopf-link --base1 1,0,0 --base2=-1,0,0 --samples 512"},
        {"cosmos images", "cosmos images --form " + torus + " --catalog " + stars + " --observer 0,0,0 --horizon 1.6"},
        {"cosmos gravity", "cosmos gravity --form " + torus + " --source 0,0,0 --test 0.25,0,0 --cutoff 8"},
        {"cosmos volume-check", "cosmos volume-check --form " + torus + " --radius 0.3"},
        {"cosmos parallax-bound", "cosmos parallax-bound --pmin 1e-4 --baseline 1"},
    };
    int identical = 0;
    for (size_t i = 0; i < commands.size(); ++i) {
        std::string outputs[3];
        bool ran = true;
        for (int run = 0; run < 3; ++run) {
            const fs::path out = dir / ("out" + std::to_string(i) + "_" + std::to_string(run));
            const std::string threads = run == 2 ? "4" : "1";
            const std::string cmd = std::string(SPACEFORM_CLI_PATH) + " --threads " + threads + " --seed 7 --out " +
                                    out.string() + " " + commands[i].second + " 2>/dev/null";
            ran = ran && std::system(cmd.c_str()) == 0;
            outputs[run] = slurp(out);
        }
        const bool same = ran && !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
        if (same) ++identical;
        o.require(same, commands[i].first);
        if (commands[i].first == "dist") o.require(outputs[0] == "1.5707963267948966\n", "dist prints pi/2");
        if (commands[i].first == "group enumerate") {
            o.require(outputs[0].rfind("120\n", 0) == 0 && std::count(outputs[0].begin(), outputs[0].end(), '\n') == 121,
                      "2I listing");
        }
        if (commands[i].first == "cosmos images") {
            o.require(std::count(outputs[0].begin(), outputs[0].end(), '{') == 20, "20 images");
        }
    }
    fs::remove_all(dir);
    o.detail << identical << "/" << commands.size() << " subcommands byte-identical across reruns and 1 vs 4 threads";
    return o;
}
#endif

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const std::vector<Criterion> criteria = {
        {"Clifford flatness", clifford_flatness},
        {"Torus identification", torus_identification},
        {"Twist commutation", twist_commutation},
        {"Constant displacement", constant_displacement},
        {"Quotient oracle equivalence", quotient_oracle},
        {"Covering round trip", covering_round_trip},
        {"Spherical space-form inventory", spherical_inventory},
        {"Even-dimension obstruction", even_dimension},
        {"Hopf linking", hopf_linking},
        {"Ghost images", ghost_images},
        {"Volume criterion", volume_criterion},
        {"Parallax limits", parallax_limits},
        {"Gravity anisotropy", gravity_anisotropy},
#ifdef SPACEFORM_CLI_PATH
        {"CLI determinism", cli_determinism},
#endif
    };
    int failures = 0;
    int index = 0;
    for (const Criterion& c : criteria) {
        ++index;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        failures += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << c.name << ": " << o.detail.str() << std::endl;
    }
#ifndef SPACEFORM_CLI_PATH
    std::cout << "SKIP  14. CLI determinism: built without the CLI" << std::endl;
#endif
    std::cout << (failures ? "acceptance: " + std::to_string(failures) + " criteria failed" : "acceptance: all criteria passed")
              << std::endl;
    return failures ? 1 : 0;
}

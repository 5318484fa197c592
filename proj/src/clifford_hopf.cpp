#include "spaceform/clifford_hopf.hpp"

#include "spaceform/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace spaceform {

namespace {

constexpr double kPi = std::numbers::pi;

Quaternion require_unit(const Quaternion& q, const char* what) {
    if (q.norm2() == 0.0) throw InvalidArgument(std::string(what) + " must be nonzero");
    return q.normalized();
}

Quaternion unit_imaginary(const Quaternion& q, const char* what) {
    if (std::abs(q.w) > 1e-9 * std::max(1.0, q.norm())) throw InvalidArgument(std::string(what) + " must be purely imaginary");
    return require_unit(q.imaginary(), what);
}

// Fourth-order central stencils: offsets -2..2.
constexpr std::array<double, 5> kFirst = {1.0, -8.0, 0.0, 8.0, -1.0};     // / 12h
constexpr std::array<double, 5> kSecond = {-1.0, 16.0, -30.0, 16.0, -1.0}; // / 12h^2

} // namespace

GeodesicLine GeodesicLine::make(const Quaternion& point, const Quaternion& direction) {
    const Quaternion p = require_unit(point, "line point");
    const Quaternion d = require_unit(direction, "line direction");
    if (std::abs(dot(p, d)) > 1e-9) throw InvalidArgument("line direction is not tangent at its point");
    return {p, d};
}

double distance_to_line(const Quaternion& x, const GeodesicLine& line) {
    const double a = dot(x, line.point);
    const double b = dot(x, line.direction);
    const double c = std::min(1.0, std::sqrt(a * a + b * b) / x.norm());
    // The in-plane component closest to x makes angle arccos(c) with it; use
    // the out-of-plane component for accuracy near 0.
    const Quaternion in_plane = a * line.point + b * line.direction;
    const double out = (x - in_plane).norm() / x.norm();
    return std::atan2(out, c);
}

Quaternion CliffordFamily::apply(double s, const Quaternion& x) const {
    const Quaternion e = Quaternion::exp_imaginary(generator, s);
    return side == TwistSide::Left ? e * x : x * e;
}

Isometry CliffordFamily::twist(double s) const {
    const Quaternion e = Quaternion::exp_imaginary(generator, s);
    return side == TwistSide::Left ? left_twist(e) : right_twist(e);
}

GeodesicLine CliffordFamily::parallel_through(const Quaternion& x) const {
    const Quaternion p = require_unit(x, "point");
    return GeodesicLine::make(p, side == TwistSide::Left ? generator * p : p * generator);
}

std::vector<Quaternion> CliffordFamily::sample_parallel(const Quaternion& x, int samples) const {
    if (samples < 1) throw InvalidArgument("sample count must be positive");
    std::vector<Quaternion> out;
    out.reserve(static_cast<size_t>(samples));
    for (int m = 0; m < samples; ++m) out.push_back(apply(2.0 * kPi * m / samples, x));
    return out;
}

CliffordFamily clifford_parallel_family(const GeodesicLine& line, TwistSide side) {
    // exp(s u) p = cos s p + sin s (u p) traces the line when u p = d, i.e. u = d conj(p);
    // on the right, p exp(s u) needs p u = d, i.e. u = conj(p) d.
    const Quaternion u = side == TwistSide::Left ? line.direction * line.point.conj() : line.point.conj() * line.direction;
    return {side, unit_imaginary(u, "family generator")};
}

CliffordSurface::CliffordSurface(const Quaternion& x0, const Quaternion& u, const Quaternion& v)
    : x0_(require_unit(x0, "surface base point")), u_(unit_imaginary(u, "u")), v_(unit_imaginary(v, "v")) {}

Quaternion CliffordSurface::at(double s, double t) const {
    return Quaternion::exp_imaginary(u_, s) * (x0_ * Quaternion::exp_imaginary(v_, t));
}

Quaternion CliffordSurface::at_right_first(double s, double t) const {
    return (Quaternion::exp_imaginary(u_, s) * x0_) * Quaternion::exp_imaginary(v_, t);
}

CliffordSurface clifford_surface(const GeodesicLine& l, const GeodesicLine& l_prime) {
    Eigen::Matrix4d m;
    m.col(0) = l.point.vec();
    m.col(1) = l.direction.vec();
    m.col(2) = -l_prime.point.vec();
    m.col(3) = -l_prime.direction.vec();
    Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullV);
    if (svd.singularValues()[3] > 1e-9) throw InvalidArgument("lines do not intersect");
    const Eigen::Vector4d c = svd.matrixV().col(3);

    const Quaternion x0 = (c[0] * l.point + c[1] * l.direction).normalized();
    auto tangent_at = [&](const GeodesicLine& line) {
        const double angle = std::atan2(dot(x0, line.direction), dot(x0, line.point));
        return (-std::sin(angle)) * line.point + std::cos(angle) * line.direction;
    };
    const Quaternion d = tangent_at(l);
    const Quaternion d_prime = tangent_at(l_prime);
    return {x0, d * x0.conj(), x0.conj() * d_prime};
}

Parametrization as_parametrization(const CliffordSurface& surface) {
    return [surface](double s, double t) -> Eigen::VectorXd { return surface.at(s, t).vec(); };
}

FirstFundamentalForm induced_metric(const Parametrization& surface, double s, double t, double h) {
    if (!(h >= 1e-6 && h <= 1e-2)) throw InvalidArgument("finite-difference step must lie in [1e-6, 1e-2]");
    Eigen::VectorXd xs, xt;
    for (int i = 0; i < 5; ++i) {
        if (i == 2) continue;
        const double off = (i - 2) * h;
        const Eigen::VectorXd ps = surface(s + off, t);
        const Eigen::VectorXd pt = surface(s, t + off);
        if (xs.size() == 0) {
            xs = Eigen::VectorXd::Zero(ps.size());
            xt = Eigen::VectorXd::Zero(pt.size());
        }
        xs += kFirst[static_cast<size_t>(i)] * ps;
        xt += kFirst[static_cast<size_t>(i)] * pt;
    }
    xs /= 12.0 * h;
    xt /= 12.0 * h;
    const double e = xs.squaredNorm();
    const double f = xs.dot(xt);
    const double g = xt.squaredNorm();
    return {e, f, g, e * g - f * f <= 1e-10 * std::max(e * g, std::numeric_limits<double>::min())};
}

FirstFundamentalForm induced_metric(const CliffordSurface& surface, double s, double t, double h) {
    return induced_metric(as_parametrization(surface), s, t, h);
}

double gauss_curvature(const Parametrization& surface, double s, double t, double h) {
    const double step = std::clamp(std::sqrt(h), h, 0.05);

    // Metric on a 5 x 5 stencil around (s, t).
    std::array<std::array<FirstFundamentalForm, 5>, 5> grid{};
    for (int a = 0; a < 5; ++a) {
        for (int b = 0; b < 5; ++b) {
            grid[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                induced_metric(surface, s + (a - 2) * step, t + (b - 2) * step, h);
        }
    }
    const FirstFundamentalForm& center = grid[2][2];
    if (center.degenerate) throw DegenerateGeometry("surface metric is degenerate");

    using Field = double FirstFundamentalForm::*;
    auto d_s = [&](Field f) {
        double acc = 0.0;
        for (size_t a = 0; a < 5; ++a) acc += kFirst[a] * (grid[a][2].*f);
        return acc / (12.0 * step);
    };
    auto d_t = [&](Field f) {
        double acc = 0.0;
        for (size_t b = 0; b < 5; ++b) acc += kFirst[b] * (grid[2][b].*f);
        return acc / (12.0 * step);
    };
    auto d_ss = [&](Field f) {
        double acc = 0.0;
        for (size_t a = 0; a < 5; ++a) acc += kSecond[a] * (grid[a][2].*f);
        return acc / (12.0 * step * step);
    };
    auto d_tt = [&](Field f) {
        double acc = 0.0;
        for (size_t b = 0; b < 5; ++b) acc += kSecond[b] * (grid[2][b].*f);
        return acc / (12.0 * step * step);
    };
    auto d_st = [&](Field f) {
        double acc = 0.0;
        for (size_t a = 0; a < 5; ++a) {
            for (size_t b = 0; b < 5; ++b) acc += kFirst[a] * kFirst[b] * (grid[a][b].*f);
        }
        return acc / (144.0 * step * step);
    };

    const Field E = &FirstFundamentalForm::E;
    const Field F = &FirstFundamentalForm::F;
    const Field G = &FirstFundamentalForm::G;
    const double e = center.E, f = center.F, g = center.G;
    const double e_s = d_s(E), e_t = d_t(E), e_tt = d_tt(E);
    const double f_s = d_s(F), f_t = d_t(F), f_st = d_st(F);
    const double g_s = d_s(G), g_t = d_t(G), g_ss = d_ss(G);

    Eigen::Matrix3d m1;
    m1 << -0.5 * e_tt + f_st - 0.5 * g_ss, 0.5 * e_s, f_s - 0.5 * e_t,
          f_t - 0.5 * g_s, e, f,
          0.5 * g_t, f, g;
    Eigen::Matrix3d m2;
    m2 << 0.0, 0.5 * e_t, 0.5 * g_s,
          0.5 * e_t, e, f,
          0.5 * g_s, f, g;
    const double w = e * g - f * f;
    return (m1.determinant() - m2.determinant()) / (w * w);
}

double gauss_curvature(const CliffordSurface& surface, double s, double t, double h) {
    return gauss_curvature(as_parametrization(surface), s, t, h);
}

Eigen::Vector3d hopf_map(const Quaternion& q) { return (q.conj() * Quaternion::i() * q).imaginary_vec(); }

Quaternion hopf_section(const Eigen::Vector3d& base) {
    const double len = base.norm();
    if (std::abs(len - 1.0) > 1e-9) throw InvalidArgument("Hopf base point must be a unit 3-vector");
    const Eigen::Vector3d b = base / len;
    // r i conj(r) = b for the half-angle rotation r taking e1 to b; then q = conj(r).
    Quaternion r;
    if (1.0 + b.x() < 1e-12) {
        r = Quaternion::j();
    } else {
        r = Quaternion(1.0 + b.x(), 0.0, -b.z(), b.y()).normalized();
    }
    return r.conj();
}

HopfFiber hopf_fiber(const Eigen::Vector3d& base, int samples) {
    if (samples < 8) throw InvalidArgument("a Hopf fiber needs at least 8 samples");
    HopfFiber fiber{base.normalized(), hopf_section(base), {}};
    fiber.samples.reserve(static_cast<size_t>(samples));
    for (int m = 0; m < samples; ++m) fiber.samples.push_back(fiber.at(2.0 * kPi * m / samples));
    return fiber;
}

Eigen::Vector3d stereographic(const Quaternion& x, const Quaternion& pole) {
    const double c = dot(x, pole);
    const double denom = 1.0 - c;
    if (denom < 1e-12) throw DegenerateGeometry("point coincides with the projection pole");
    // Handedness fixed so that theta-oriented Hopf fibers link with +1.
    const Quaternion a = Quaternion::j() * pole;
    const Quaternion b = Quaternion::i() * pole;
    const Quaternion e = Quaternion::k() * pole;
    return Eigen::Vector3d(dot(x, a), dot(x, b), dot(x, e)) / denom;
}

double gauss_linking_sum(const std::vector<Eigen::Vector3d>& a, const std::vector<Eigen::Vector3d>& b, int threads) {
    if (a.size() < 3 || b.size() < 3) throw InvalidArgument("closed curves need at least 3 vertices");
    const size_t na = a.size();
    const size_t nb = b.size();
    std::vector<Eigen::Vector3d> ma(na), da(na), mb(nb), db(nb);
    for (size_t i = 0; i < na; ++i) {
        const Eigen::Vector3d& next = a[(i + 1) % na];
        ma[i] = 0.5 * (a[i] + next);
        da[i] = next - a[i];
    }
    for (size_t j = 0; j < nb; ++j) {
        const Eigen::Vector3d& next = b[(j + 1) % nb];
        mb[j] = 0.5 * (b[j] + next);
        db[j] = next - b[j];
    }

    std::vector<double> rows(na, 0.0);
    auto work = [&](size_t begin, size_t end) {
        for (size_t i = begin; i < end; ++i) {
            double acc = 0.0;
            for (size_t j = 0; j < nb; ++j) {
                const Eigen::Vector3d r = ma[i] - mb[j];
                const double len = r.norm();
                if (len == 0.0) throw DegenerateGeometry("curves intersect");
                acc += r.dot(da[i].cross(db[j])) / (len * len * len);
            }
            rows[i] = acc;
        }
    };
    const size_t workers = static_cast<size_t>(std::clamp(threads, 1, 64));
    if (workers == 1) {
        work(0, na);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(workers);
        const size_t chunk = (na + workers - 1) / workers;
        for (size_t w = 0; w < workers; ++w) {
            const size_t begin = std::min(na, w * chunk);
            const size_t end = std::min(na, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    work(begin, end);
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
    double total = 0.0;
    for (double r : rows) total += r;
    return total / (4.0 * kPi);
}

LinkingResult linking_number(const std::vector<Quaternion>& c1, const std::vector<Quaternion>& c2, int threads) {
    // Candidate poles: the 48 elements of the binary octahedral group.
    std::vector<Quaternion> candidates;
    for (int axis = 0; axis < 4; ++axis) {
        for (double sign : {1.0, -1.0}) {
            Eigen::Vector4d v = Eigen::Vector4d::Zero();
            v[axis] = sign;
            candidates.push_back(Quaternion::from_vector(v));
        }
    }
    for (int mask = 0; mask < 16; ++mask) {
        candidates.emplace_back(mask & 1 ? -0.5 : 0.5, mask & 2 ? -0.5 : 0.5, mask & 4 ? -0.5 : 0.5,
                                mask & 8 ? -0.5 : 0.5);
    }
    const double h = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            for (double sa : {1.0, -1.0}) {
                for (double sb : {1.0, -1.0}) {
                    Eigen::Vector4d v = Eigen::Vector4d::Zero();
                    v[a] = sa * h;
                    v[b] = sb * h;
                    candidates.push_back(Quaternion::from_vector(v));
                }
            }
        }
    }

    Quaternion pole;
    double best = -1.0;
    for (const Quaternion& p : candidates) {
        double nearest = std::numeric_limits<double>::infinity();
        for (const auto* curve : {&c1, &c2}) {
            for (const Quaternion& x : *curve) nearest = std::min(nearest, sphere_distance(x, p));
        }
        if (nearest > best) {
            best = nearest;
            pole = p;
        }
    }
    if (best < 1e-3) throw DegenerateGeometry("no projection pole clear of both curves");

    std::vector<Eigen::Vector3d> a, b;
    a.reserve(c1.size());
    b.reserve(c2.size());
    for (const Quaternion& x : c1) a.push_back(stereographic(x.normalized(), pole));
    for (const Quaternion& x : c2) b.push_back(stereographic(x.normalized(), pole));
    const double raw = gauss_linking_sum(a, b, threads);
    const int value = static_cast<int>(std::lround(raw));
    return {value, raw, std::abs(raw - value), pole};
}

LinkingResult linking_number(const HopfFiber& f1, const HopfFiber& f2, int samples, int threads) {
    if ((f1.base - f2.base).norm() < 1e-9) throw InvalidArgument("linking number needs fibers over distinct base points");
    const HopfFiber a = hopf_fiber(f1.base, samples);
    const HopfFiber b = hopf_fiber(f2.base, samples);
    return linking_number(a.samples, b.samples, threads);
}

} // namespace spaceform

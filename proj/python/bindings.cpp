#include "spaceform/clifford_hopf.hpp"
#include "spaceform/cosmos.hpp"
#include "spaceform/errors.hpp"
#include "spaceform/io.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace spaceform;
using nlohmann::json;

namespace {

AmbientPoint point(const ModelSpace& space, const Vector& coords) {
    return io::point_from_json(space, json(std::vector<double>(coords.data(), coords.data() + coords.size())));
}

Quaternion quat(const Eigen::Vector4d& q) { return {q[0], q[1], q[2], q[3]}; }

py::dict ghost_dict(const GhostImage& g) {
    py::dict d;
    d["source"] = g.source_id;
    d["word"] = g.word;
    d["dist"] = g.dist;
    d["position"] = g.position.x;
    return d;
}

} // namespace

PYBIND11_MODULE(_spaceform, m) {
    m.doc() = "Spherical, flat and hyperbolic space forms";

    // Error kinds ride along as an attribute so Python callers can branch on them.
    static const py::handle error = py::exception<Error>(m, "SpaceformError", PyExc_ValueError).release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
            exc.attr("kind") = e.kind();
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    py::class_<ModelSpace>(m, "ModelSpace")
        .def_static("spherical", &ModelSpace::spherical, py::arg("dim"), py::arg("k") = 1.0)
        .def_static("flat", &ModelSpace::flat, py::arg("dim"))
        .def_static("hyperbolic", &ModelSpace::hyperbolic, py::arg("dim"), py::arg("k") = 1.0)
        .def_static("from_json", [](const std::string& text) { return io::space_from_json(io::load_json(text)); })
        .def_property_readonly("dim", &ModelSpace::dim)
        .def_property_readonly("k", &ModelSpace::radius)
        .def_property_readonly("kind", [](const ModelSpace& s) { return std::string(to_string(s.curvature())); })
        .def("__repr__", [](const ModelSpace& s) { return "ModelSpace(" + io::to_json(s).dump() + ")"; });

    m.def("distance", [](const ModelSpace& s, const Vector& x, const Vector& y) { return distance(s, point(s, x), point(s, y)); },
          py::arg("space"), py::arg("x"), py::arg("y"));
    m.def(
        "geodesic",
        [](const ModelSpace& s, const Vector& x, const Vector& v, double t) { return geodesic_point(s, {point(s, x), v}, t).x; },
        py::arg("space"), py::arg("x"), py::arg("v"), py::arg("t"));
    m.def("parallax", &parallax, py::arg("space"), py::arg("baseline"), py::arg("dist"));
    m.def("ball_volume", &ball_volume, py::arg("space"), py::arg("r"));

    m.def(
        "group_elements",
        [](const std::string& name) {
            const DiscreteGroup g = finite_spherical_group(name);
            Eigen::MatrixXd rows(static_cast<Eigen::Index>(g.elements().size()), 4);
            for (size_t i = 0; i < g.elements().size(); ++i) {
                rows.row(static_cast<Eigen::Index>(i)) = g.elements()[i].twist()->q.vec().transpose();
            }
            return rows;
        },
        py::arg("kind"), "Unit quaternions of a finite subgroup of S^3, one per row, in enumeration order.");

    py::class_<SpaceForm>(m, "SpaceForm")
        .def_static("load", [](const std::string& text) { return io::form_from_json(io::load_json(text)); },
                    py::arg("text_or_path"))
        .def_property_readonly("space", &SpaceForm::space)
        .def_property_readonly("r", &SpaceForm::displacement_bound)
        .def("distance", [](const SpaceForm& f, const Vector& x, const Vector& y) {
            return quotient_distance(f, point(f.space(), x), point(f.space(), y));
        })
        .def("reduce", [](const SpaceForm& f, const Vector& x) { return reduce(f, point(f.space(), x)).rep.x; })
        .def(
            "lift",
            [](const SpaceForm& f, const std::vector<Vector>& path, std::optional<Vector> start) {
                if (path.empty()) throw InvalidArgument("empty path");
                std::vector<QuotientPoint> q;
                for (const auto& p : path) q.push_back(reduce(f, point(f.space(), p)));
                const AmbientPoint s = start ? point(f.space(), *start) : q.front().rep;
                std::vector<Vector> out;
                for (const auto& l : lift_path(f, q, s)) out.push_back(l.x);
                return out;
            },
            py::arg("path"), py::arg("start") = py::none())
        .def("volume", [](const SpaceForm& f) { return volume(f); })
        .def("estimate_volume", &estimate_volume, py::arg("samples"), py::arg("seed") = 0)
        .def(
            "volume_check",
            [](const SpaceForm& f, double radius) {
                const VolumeCheck c = volume_bound_check(f, radius);
                py::dict d;
                d["pass"] = c.pass;
                d["margin"] = c.margin;
                d["form_volume"] = c.form_volume;
                d["ball_volume"] = c.ball_volume;
                return d;
            },
            py::arg("radius"))
        .def(
            "images",
            [](const SpaceForm& f, const std::string& catalog, const Vector& observer, double horizon, int threads) {
                const StarCatalog c = io::catalog_from_json(f.space(), io::load_json(catalog));
                py::list out;
                for (const auto& g : enumerate_images(f, point(f.space(), observer), c, horizon, threads)) out.append(ghost_dict(g));
                return out;
            },
            py::arg("catalog"), py::arg("observer"), py::arg("horizon"), py::arg("threads") = 1)
        .def(
            "gravity",
            [](const SpaceForm& f, const Vector& source, const Vector& test, double cutoff, double mass) {
                return gravitational_field(f, point(f.space(), source), mass, point(f.space(), test), cutoff).force;
            },
            py::arg("source"), py::arg("test"), py::arg("cutoff"), py::arg("mass") = 1.0);

    m.def(
        "clifford_curvature",
        [](const Eigen::Vector4d& u, const Eigen::Vector4d& v, double s, double t, double h) {
            return gauss_curvature(CliffordSurface(Quaternion::one(), quat(u), quat(v)), s, t, h);
        },
        py::arg("u"), py::arg("v"), py::arg("s"), py::arg("t"), py::arg("h") = 1e-4);
    m.def("hopf_map", [](const Eigen::Vector4d& q) { return hopf_map(quat(q)); }, py::arg("q"));
    m.def(
        "linking_number",
        [](const Eigen::Vector3d& b1, const Eigen::Vector3d& b2, int samples, int threads) {
            const LinkingResult r = linking_number(hopf_fiber(b1, samples), hopf_fiber(b2, samples), samples, threads);
            py::dict d;
            d["value"] = r.value;
            d["raw"] = r.raw;
            d["residual"] = r.residual;
            return d;
        },
        py::arg("base1"), py::arg("base2"), py::arg("samples") = 512, py::arg("threads") = 1);
    m.def(
        "curvature_radius_bound",
        [](double p_min, double baseline) {
            const CurvatureBounds b = curvature_radius_bound(p_min, baseline);
            return py::make_tuple(b.elliptic, b.hyperbolic);
        },
        py::arg("p_min"), py::arg("baseline"));
}

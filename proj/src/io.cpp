#include "spaceform/io.hpp"

#include "spaceform/errors.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace spaceform::io {

namespace {

Vector vector_from_json(const json& j) {
    if (!j.is_array()) throw InvalidArgument("expected a JSON array of numbers");
    Vector v(static_cast<int>(j.size()));
    for (size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw InvalidArgument("expected a JSON array of numbers");
        v[static_cast<int>(i)] = j[i].get<double>();
    }
    return v;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw InvalidArgument("expected a matrix as an array of rows");
    const size_t rows = j.size();
    const size_t cols = j[0].size();
    Matrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (size_t r = 0; r < rows; ++r) {
        const Vector row = vector_from_json(j[r]);
        if (static_cast<size_t>(row.size()) != cols) throw InvalidArgument("ragged matrix rows");
        m.row(static_cast<int>(r)) = row.transpose();
    }
    return m;
}

json vector_to_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json matrix_to_json(const Matrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
    return out;
}

bool is_spherical_family(const std::string& kind) {
    return kind == "2T" || kind == "2O" || kind == "2I" || kind.rfind("cyclic:", 0) == 0 ||
           kind.rfind("dihedral:", 0) == 0 || kind.rfind("2D", 0) == 0 ||
           (kind.size() > 1 && kind[0] == 'C' && std::isdigit(static_cast<unsigned char>(kind[1])));
}

Isometry generator_from_json(const ModelSpace& space, const json& g, TwistSide side) {
    if (g.is_object()) {
        const int n = space.dim();
        const Matrix a = g.contains("A") ? matrix_from_json(g.at("A")) : Matrix(Matrix::Identity(n, n));
        const Vector b = g.contains("b") ? vector_from_json(g.at("b")) : Vector(Vector::Zero(n));
        return Isometry::flat_affine(space, a, b);
    }
    if (g.is_array() && !g.empty() && g[0].is_array()) return Isometry::from_matrix(space, matrix_from_json(g));
    if (g.is_array() && g.size() == 4) {
        const Quaternion q = Quaternion::from_vector(Eigen::Vector4d(vector_from_json(g)));
        return side == TwistSide::Left ? left_twist(q, space) : right_twist(q, space);
    }
    throw InvalidArgument("unrecognized generator: " + g.dump());
}

} // namespace

ModelSpace space_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("space must be a JSON object");
    const Curvature c = curvature_from_string(j.at("kind").get<std::string>());
    const int dim = j.at("dim").get<int>();
    const double k = j.contains("k") ? j.at("k").get<double>() : 1.0;
    return {dim, c, k};
}

json to_json(const ModelSpace& space) {
    return {{"kind", std::string(to_string(space.curvature()))}, {"dim", space.dim()}, {"k", space.radius()}};
}

AmbientPoint point_from_json(const ModelSpace& space, const json& j) {
    Vector v = vector_from_json(j);
    if (space.is_flat() && v.size() == space.dim()) v = space.from_flat(v);
    AmbientPoint p{std::move(v)};
    require_point(space, p);
    return p;
}

json to_json(const AmbientPoint& p) { return vector_to_json(p.x); }

DiscreteGroup group_from_json(const ModelSpace& space, const json& j) {
    if (!j.is_object()) throw InvalidArgument("group must be a JSON object");
    const std::string kind = j.at("kind").get<std::string>();
    if (is_spherical_family(kind)) return finite_spherical_group(kind, space);

    const GroupKind gk = group_kind_from_string(kind);
    const TwistSide side = j.value("twist", std::string("left")) == "right" ? TwistSide::Right : TwistSide::Left;
    std::vector<Isometry> gens;
    for (const json& g : j.value("generators", json::array())) gens.push_back(generator_from_json(space, g, side));
    int max_len = kDefaultFiniteWordLength;
    if (j.contains("max_word_length")) {
        max_len = j.at("max_word_length").get<int>();
    } else if (gk == GroupKind::AffineFlat || gk == GroupKind::Hyperbolic) {
        throw InvalidArgument("max_word_length is required for " + kind + " groups");
    }
    return {space, std::move(gens), gk, max_len};
}

json to_json(const Isometry& g) {
    json out = {{"word", g.word()}, {"orientation", g.orientation()}};
    if (g.twist()) {
        const Quaternion& q = g.twist()->q;
        out["quaternion"] = {q.w, q.x, q.y, q.z};
        out["twist"] = g.twist()->side == TwistSide::Left ? "left" : "right";
    } else if (g.space().is_flat()) {
        out["A"] = matrix_to_json(g.linear_part());
        out["b"] = vector_to_json(g.translation_part());
    } else {
        out["matrix"] = matrix_to_json(g.matrix());
    }
    return out;
}

VerificationReport form_report_from_json(const json& j) {
    if (!j.is_object()) throw InvalidArgument("form must be a JSON object");
    const ModelSpace space = space_from_json(j.at("space"));
    const DiscreteGroup group = group_from_json(space, j.at("group"));
    std::optional<AmbientPoint> base;
    if (j.contains("base")) base = point_from_json(space, j.at("base"));
    return verify_space_form(group, j.at("r").get<double>(), base);
}

SpaceForm form_from_json(const json& j) {
    VerificationReport report = form_report_from_json(j);
    if (!report.verified()) throw InvalidArgument("group rejected as space form: " + report.violation->message);
    return std::move(*report.form);
}

json to_json(const SpaceForm& form, const json& group_json) {
    return {{"space", to_json(form.space())},
            {"group", group_json},
            {"r", form.displacement_bound()},
            {"base", to_json(form.base())}};
}

json to_json(const Violation& v) {
    json out = {{"reason", std::string(to_string(v.reason))},
                {"message", v.message},
                {"element", to_json(v.element)},
                {"displacement", v.displacement}};
    if (v.fixed_point) out["fixed_point"] = to_json(*v.fixed_point);
    return out;
}

StarCatalog catalog_from_json(const ModelSpace& space, const json& j) {
    StarCatalog catalog;
    for (const json& s : j.at("stars")) {
        catalog.stars.push_back({s.at("id").get<std::string>(), point_from_json(space, s.at("pos")),
                                 s.at("lum").get<double>()});
    }
    return catalog;
}

json to_json(const StarCatalog& catalog) {
    json stars = json::array();
    for (const Star& s : catalog.stars) stars.push_back({{"id", s.id}, {"pos", to_json(s.position)}, {"lum", s.luminosity}});
    return {{"stars", stars}};
}

json to_json(const GhostImage& image) {
    return {{"source_id", image.source_id}, {"word", image.word},
            {"direction", vector_to_json(image.direction)}, {"dist", image.dist},
            {"flux", image.flux}, {"position", to_json(image.position)},
            {"flagged", image.flagged}};
}

json load_json(const std::string& text_or_path) {
    const auto first = text_or_path.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text_or_path[first] == '{' || text_or_path[first] == '[')) {
        return json::parse(text_or_path);
    }
    std::ifstream in(text_or_path);
    if (!in) throw InvalidArgument("cannot open '" + text_or_path + "'");
    return json::parse(in);
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) throw InvalidArgument("cannot format number");
    return {buf.data(), ptr};
}

} // namespace spaceform::io

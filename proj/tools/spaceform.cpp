#include "spaceform/clifford_hopf.hpp"
#include "spaceform/cosmos.hpp"
#include "spaceform/errors.hpp"
#include "spaceform/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace spaceform;
using io::json;

namespace {

struct Globals {
    std::string out;
    std::string format = "auto";
    std::uint64_t seed = 1;
    double tol = 1e-9;
    int threads = 1;
};

// A domain failure that already carries its structured report.
struct Rejected : std::runtime_error {
    json report;
    explicit Rejected(json r) : std::runtime_error("rejected"), report(std::move(r)) {}
};

std::vector<double> parse_numbers(const std::string& text) {
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '[') return json::parse(text).get<std::vector<double>>();
    std::vector<double> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw CLI::ValidationError("expected comma-separated numbers, got '" + text + "'");
        }
    }
    return out;
}

Vector to_vector(const std::vector<double>& xs) { return Eigen::Map<const Vector>(xs.data(), static_cast<int>(xs.size())); }

// Points within --tol of the model are snapped onto it; anything farther is an error.
AmbientPoint parse_point(const ModelSpace& space, const std::string& text, double tol) {
    Vector x = to_vector(parse_numbers(text));
    if (space.is_flat() && x.size() == space.dim()) x = space.from_flat(x);
    if (x.size() != space.ambient_dim()) {
        throw DimensionMismatch("point needs " + std::to_string(space.ambient_dim()) + " coordinates");
    }
    if (!space.is_flat()) {
        const double residual = std::abs(bilinear_form(space, x, x) - space.level());
        const double scale = std::max({1.0, space.level() * space.level(), x.squaredNorm()});
        if (residual <= tol * scale) x = project_to_model(space, x).x;
    }
    AmbientPoint p{std::move(x)};
    require_point(space, p);
    return p;
}

std::vector<AmbientPoint> parse_path(const ModelSpace& space, const std::string& text, double tol) {
    std::vector<AmbientPoint> out;
    const auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] != '[' && text.find(';') == std::string::npos) {
        // A file holding a JSON array of points.
        for (const json& p : io::load_json(text)) out.push_back(parse_point(space, p.dump(), tol));
        return out;
    }
    if (first != std::string::npos && text[first] == '[') {
        for (const json& p : json::parse(text)) out.push_back(parse_point(space, p.dump(), tol));
        return out;
    }
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ';')) out.push_back(parse_point(space, item, tol));
    return out;
}

Quaternion parse_quaternion(const std::string& text) {
    if (text == "1") return Quaternion::one();
    if (text == "i") return Quaternion::i();
    if (text == "j") return Quaternion::j();
    if (text == "k") return Quaternion::k();
    const std::vector<double> v = parse_numbers(text);
    if (v.size() == 3) return {0.0, v[0], v[1], v[2]};
    if (v.size() == 4) return {v[0], v[1], v[2], v[3]};
    throw CLI::ValidationError("expected 1, i, j, k or a 3- or 4-component quaternion, got '" + text + "'");
}

Eigen::Vector3d parse_vec3(const std::string& text) {
    const std::vector<double> v = parse_numbers(text);
    if (v.size() != 3) throw CLI::ValidationError("expected three components, got '" + text + "'");
    return {v[0], v[1], v[2]};
}

std::string csv_row(std::initializer_list<double> xs) {
    std::string row;
    for (double x : xs) {
        if (!row.empty()) row += ',';
        row += io::format_real(x);
    }
    return row;
}

std::string join(const Vector& v, char sep = ',') {
    std::string row;
    for (int i = 0; i < v.size(); ++i) {
        if (i) row += sep;
        row += io::format_real(v[i]);
    }
    return row;
}

std::string join_word(const std::vector<int>& word) {
    std::string s;
    for (size_t i = 0; i < word.size(); ++i) s += (i ? " " : "") + std::to_string(word[i]);
    return s;
}

json vector_json(const Vector& v) {
    json out = json::array();
    for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

SpaceForm load_form(const std::string& source) {
    const json j = io::load_json(source);
    VerificationReport report = io::form_report_from_json(j);
    if (!report.verified()) throw Rejected({{"error", "space_form_rejected"}, {"violation", io::to_json(*report.violation)}});
    return std::move(*report.form);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void require_format(const Globals& g, std::initializer_list<const char*> allowed) {
    if (g.format == "auto") return;
    for (const char* a : allowed) {
        if (g.format == a) return;
    }
    throw CLI::ValidationError("--format " + g.format + " is not available for this subcommand");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constant-curvature geometry, space forms and their observable consequences."};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--out", g.out, "Write output to this file instead of stdout");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"auto", "json", "csv"}));
    app.add_option("--seed", g.seed, "Seed for sampled estimates");
    app.add_option("--tol", g.tol, "Snap input points within this tolerance onto the model")->check(CLI::NonNegativeNumber);
    app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1, 64));

    std::string output;
    std::function<void()> action;

    // dist
    std::string space_src = R"({"kind":"spherical","dim":3,"k":1})", x_src, y_src, v_src;
    double t_param = 0.0;
    auto* dist = app.add_subcommand("dist", "Geodesic distance in a model space");
    dist->add_option("--space", space_src, "Model space JSON or file")->required();
    dist->add_option("--x", x_src)->required();
    dist->add_option("--y", y_src)->required();
    dist->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const ModelSpace space = io::space_from_json(io::load_json(space_src));
            const double d = distance(space, parse_point(space, x_src, g.tol), parse_point(space, y_src, g.tol));
            output = io::format_real(d) + "\n";
        };
    });

    auto* geo = app.add_subcommand("geodesic", "Point at arclength t along a geodesic");
    geo->add_option("--space", space_src)->required();
    geo->add_option("--x", x_src, "Start point")->required();
    geo->add_option("--v", v_src, "Tangent direction")->required();
    geo->add_option("--t", t_param, "Arclength")->required();
    geo->callback([&] {
        action = [&] {
            require_format(g, {"json", "csv"});
            const ModelSpace space = io::space_from_json(io::load_json(space_src));
            const AmbientPoint p = geodesic_point(space, {parse_point(space, x_src, g.tol), to_vector(parse_numbers(v_src))}, t_param);
            output = g.format == "csv" ? join(p.x) + "\n" : dump(io::to_json(p));
        };
    });

    double baseline = 0.0, star_dist = 0.0;
    auto* plx = app.add_subcommand("parallax", "Parallax angle of a star across a baseline");
    plx->add_option("--space", space_src)->required();
    plx->add_option("--baseline", baseline)->required();
    plx->add_option("--dist", star_dist)->required();
    plx->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const ModelSpace space = io::space_from_json(io::load_json(space_src));
            output = io::format_real(parallax(space, baseline, star_dist)) + "\n";
        };
    });

    // group enumerate
    std::string group_kind, group_src;
    std::string group_space = R"({"kind":"spherical","dim":3,"k":1})";
    auto* group = app.add_subcommand("group", "Discrete isometry groups");
    group->require_subcommand(1);
    group->fallthrough();
    auto* enumerate_cmd = group->add_subcommand("enumerate", "Enumerate a group: order, then one element per row");
    auto* kind_opt = enumerate_cmd->add_option("--kind", group_kind, "Named spherical family: 2T, 2O, 2I, C<m>, 2D<m>");
    enumerate_cmd->add_option("--group", group_src, "Group JSON or file")->excludes(kind_opt);
    enumerate_cmd->add_option("--space", group_space, "Model space for --group");
    enumerate_cmd->callback([&] {
        action = [&] {
            require_format(g, {"json", "csv"});
            const ModelSpace space = io::space_from_json(io::load_json(group_space));
            if (group_kind.empty() && group_src.empty()) throw CLI::ValidationError("give --kind or --group");
            const DiscreteGroup grp = group_kind.empty() ? io::group_from_json(space, io::load_json(group_src))
                                                         : finite_spherical_group(group_kind, space);
            const auto& elems = grp.elements();
            if (g.format == "json") {
                json arr = json::array();
                for (const Isometry& e : elems) arr.push_back(io::to_json(e));
                output = dump({{"order", elems.size()}, {"elements", arr}});
                return;
            }
            output = std::to_string(elems.size()) + "\n";
            for (const Isometry& e : elems) {
                if (e.twist()) {
                    output += join(e.twist()->q.vec()) + "\n";
                } else {
                    output += join(Eigen::Map<const Vector>(Matrix(e.matrix().transpose()).data(), e.matrix().size())) + "\n";
                }
            }
        };
    });

    // quotients
    std::string form_src;
    auto* qdist = app.add_subcommand("quotient-dist", "Distance in a space form");
    qdist->add_option("--form", form_src, "Space-form JSON or file")->required();
    qdist->add_option("--x", x_src)->required();
    qdist->add_option("--y", y_src)->required();
    qdist->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const SpaceForm form = load_form(form_src);
            output = io::format_real(quotient_distance(form, parse_point(form.space(), x_src, g.tol),
                                                       parse_point(form.space(), y_src, g.tol))) + "\n";
        };
    });

    auto* red = app.add_subcommand("reduce", "Canonical representative in the Dirichlet domain");
    red->add_option("--form", form_src)->required();
    red->add_option("--x", x_src)->required();
    red->callback([&] {
        action = [&] {
            require_format(g, {"json", "csv"});
            const SpaceForm form = load_form(form_src);
            const QuotientPoint q = reduce(form, parse_point(form.space(), x_src, g.tol));
            output = g.format == "csv" ? join(q.rep.x) + "\n" : dump(io::to_json(q.rep));
        };
    });

    std::string path_src, start_src;
    auto* lift = app.add_subcommand("lift", "Lift a quotient path to the cover");
    lift->add_option("--form", form_src)->required();
    lift->add_option("--path", path_src, "Points separated by ';', a JSON array, or a file")->required();
    lift->add_option("--start", start_src, "Lift of the first point (default: the first point itself)");
    lift->callback([&] {
        action = [&] {
            require_format(g, {"json", "csv"});
            const SpaceForm form = load_form(form_src);
            std::vector<QuotientPoint> path;
            for (const AmbientPoint& p : parse_path(form.space(), path_src, g.tol)) path.push_back(reduce(form, p));
            if (path.empty()) throw CLI::ValidationError("empty path");
            const AmbientPoint start = start_src.empty() ? path.front().rep : parse_point(form.space(), start_src, g.tol);
            const auto lifted = lift_path(form, path, start);
            const auto deck = deck_transformation(form, lifted.front(), lifted.back());
            if (g.format == "csv") {
                for (const auto& p : lifted) output += join(p.x) + "\n";
                return;
            }
            json pts = json::array();
            for (const auto& p : lifted) pts.push_back(io::to_json(p));
            output = dump({{"lifted", pts}, {"deck", deck ? io::to_json(*deck) : json(nullptr)}});
        };
    });

    long mc_samples = 0;
    auto* vol = app.add_subcommand("volume", "Volume of a space form");
    vol->add_option("--form", form_src)->required();
    vol->add_option("--samples", mc_samples, "Also estimate the Dirichlet-domain volume by Monte Carlo")->check(CLI::PositiveNumber);
    vol->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const SpaceForm form = load_form(form_src);
            const double v = volume(form);
            if (mc_samples == 0) {
                output = io::format_real(v) + "\n";
                return;
            }
            const double est = estimate_volume(form, mc_samples, g.seed);
            output = dump({{"volume", v}, {"estimate", est}, {"samples", mc_samples}, {"seed", g.seed}});
        };
    });

    // clifford-surface
    std::string u_src = "i", v_axis = "j", x0_src = "1";
    int grid = 32;
    double step = 1e-4;
    auto* surf = app.add_subcommand("clifford-surface", "Sample x(s,t) = exp(su) x0 exp(tv) with its metric and curvature");
    surf->add_option("--u", u_src, "Left axis: i, j, k or three components");
    surf->add_option("--v", v_axis, "Right axis");
    surf->add_option("--x0", x0_src, "Base point quaternion");
    surf->add_option("--grid", grid, "Samples per parameter over [0, 2 pi)")->check(CLI::Range(1, 4096));
    surf->add_option("--step", step, "Finite-difference step");
    surf->callback([&] {
        action = [&] {
            require_format(g, {"csv", "json"});
            const CliffordSurface s(parse_quaternion(x0_src), parse_quaternion(u_src), parse_quaternion(v_axis));
            const double two_pi = 2.0 * std::acos(-1.0);
            json rows = json::array();
            if (g.format != "json") output = "s,t,x0,x1,x2,x3,E,F,G,K\n";
            for (int a = 0; a < grid; ++a) {
                for (int b = 0; b < grid; ++b) {
                    const double ss = two_pi * a / grid, tt = two_pi * b / grid;
                    const Quaternion x = s.at(ss, tt);
                    const FirstFundamentalForm m = induced_metric(s, ss, tt, step);
                    const double k = gauss_curvature(s, ss, tt, step);
                    if (g.format == "json") {
                        rows.push_back({{"s", ss}, {"t", tt}, {"x", {x.w, x.x, x.y, x.z}}, {"E", m.E}, {"F", m.F}, {"G", m.G}, {"K", k}});
                    } else {
                        output += csv_row({ss, tt, x.w, x.x, x.y, x.z, m.E, m.F, m.G, k}) + "\n";
                    }
                }
            }
            if (g.format == "json") output = dump(rows);
        };
    });

    std::string base1_src, base2_src;
    int link_samples = 512;
    auto* link = app.add_subcommand("hopf-link", "Linking number of two Hopf fibers");
    link->add_option("--base1", base1_src, "Base point on S^2")->required();
    link->add_option("--base2", base2_src)->required();
    link->add_option("--samples", link_samples, "Samples per fiber")->check(CLI::Range(8, 1 << 16));
    link->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const LinkingResult r = linking_number(hopf_fiber(parse_vec3(base1_src), 8), hopf_fiber(parse_vec3(base2_src), 8),
                                                   link_samples, g.threads);
            output = dump({{"linking_number", r.value}, {"residual", r.residual}, {"raw", r.raw},
                           {"pole", {r.pole.w, r.pole.x, r.pole.y, r.pole.z}}, {"samples", link_samples}});
        };
    });

    // cosmos
    auto* cosmos = app.add_subcommand("cosmos", "Observable consequences of a space form");
    cosmos->require_subcommand(1);
    cosmos->fallthrough();

    std::string catalog_src, observer_src;
    double horizon = 0.0;
    auto* images = cosmos->add_subcommand("images", "Ghost images of a star catalog");
    images->add_option("--form", form_src)->required();
    images->add_option("--catalog", catalog_src, "Catalog JSON or file")->required();
    images->add_option("--observer", observer_src)->required();
    images->add_option("--horizon", horizon)->required();
    images->callback([&] {
        action = [&] {
            require_format(g, {"json", "csv"});
            const SpaceForm form = load_form(form_src);
            const StarCatalog catalog = io::catalog_from_json(form.space(), io::load_json(catalog_src));
            validate_catalog(form, catalog);
            const auto ghosts = enumerate_images(form, parse_point(form.space(), observer_src, g.tol), catalog, horizon, g.threads);
            if (g.format == "csv") {
                output = "source_id,word,dist,flux,direction,flagged\n";
                for (const GhostImage& gi : ghosts) {
                    output += gi.source_id + "," + join_word(gi.word) + "," + io::format_real(gi.dist) + "," +
                              io::format_real(gi.flux) + "," + join(gi.direction, ' ') + "," + (gi.flagged ? "1" : "0") + "\n";
                }
                return;
            }
            json arr = json::array();
            for (const GhostImage& gi : ghosts) arr.push_back(io::to_json(gi));
            output = dump(arr);
        };
    });

    std::string source_src, test_src;
    double cutoff = 0.0, mass = 1.0;
    auto* grav = cosmos->add_subcommand("gravity", "Newtonian image sum at a test point");
    grav->add_option("--form", form_src)->required();
    grav->add_option("--source", source_src)->required();
    grav->add_option("--test", test_src)->required();
    grav->add_option("--cutoff", cutoff)->required();
    grav->add_option("--mass", mass);
    grav->callback([&] {
        action = [&] {
            require_format(g, {"json", "csv"});
            const SpaceForm form = load_form(form_src);
            const GravityResult r = gravitational_field(form, parse_point(form.space(), source_src, g.tol), mass,
                                                        parse_point(form.space(), test_src, g.tol), cutoff);
            if (g.format == "csv") {
                output = "radius,partial\n";
                for (const ShellSum& sh : r.trace) output += io::format_real(sh.radius) + "," + join(sh.partial, ' ') + "\n";
                return;
            }
            json trace = json::array();
            for (const ShellSum& sh : r.trace) trace.push_back({{"radius", sh.radius}, {"partial", vector_json(sh.partial)}});
            output = dump({{"force", vector_json(r.force)}, {"magnitude", r.force.norm()}, {"images", r.images}, {"trace", trace}});
        };
    });

    double system_radius = 0.0;
    auto* vcheck = cosmos->add_subcommand("volume-check", "Compare the form's volume with a ball of the system radius");
    vcheck->add_option("--form", form_src)->required();
    vcheck->add_option("--radius", system_radius)->required();
    vcheck->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const VolumeCheck c = volume_bound_check(load_form(form_src), system_radius);
            output = dump({{"pass", c.pass}, {"margin", c.margin}, {"form_volume", c.form_volume}, {"ball_volume", c.ball_volume}});
        };
    });

    double pmin = 0.0;
    auto* pbound = cosmos->add_subcommand("parallax-bound", "Curvature-radius bounds from a smallest measured parallax");
    pbound->add_option("--pmin", pmin)->required();
    pbound->add_option("--baseline", baseline)->required();
    pbound->callback([&] {
        action = [&] {
            require_format(g, {"json"});
            const CurvatureBounds b = curvature_radius_bound(pmin, baseline);
            output = dump({{"elliptic", b.elliptic}, {"hyperbolic", b.hyperbolic}});
        };
    });

    auto fail = [](int code, const std::string& kind, const std::string& message) {
        std::cerr << json{{"error", kind}, {"message", message}}.dump() << "\n";
        return code;
    };

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    }

    try {
        action();
        if (g.out.empty()) {
            std::cout << output;
        } else {
            std::ofstream file(g.out, std::ios::binary);
            if (!file) return fail(2, "usage", "cannot write '" + g.out + "'");
            file << output;
        }
    } catch (const Rejected& r) {
        std::cerr << r.report.dump() << "\n";
        return 1;
    } catch (const Error& e) {
        return fail(1, e.kind(), e.what());
    } catch (const CLI::ParseError& e) {
        return fail(2, "usage", e.what());
    } catch (const json::exception& e) {
        return fail(2, "parse", e.what());
    }
    return 0;
}

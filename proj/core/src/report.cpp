#include "flagflow/report.hpp"

#include "flagflow/analysis.hpp"
#include "flagflow/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace flagflow {

std::string format_number(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

namespace {

std::string fixed(double value, int digits = 6)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, value);
    std::string s = buf;
    if (s == "-0.000000") {
        s = "0.000000";
    }
    return s;
}

std::string json_pair(double a, double b)
{
    return "[" + format_number(a) + ", " + format_number(b) + "]";
}

std::string stability_color(Stability s)
{
    switch (s) {
    case Stability::StableNode:
    case Stability::StableFocus: return "#1f6f3f";
    case Stability::Saddle: return "#b03a2e";
    case Stability::UnstableNode:
    case Stability::UnstableFocus: return "#7d3c98";
    default: return "#555555";
    }
}

std::string polyline(const std::vector<DiscPoint>& pts)
{
    std::string out;
    for (const auto& p : pts) {
        if (!out.empty()) {
            out += ' ';
        }
        out += fixed(p.u) + "," + fixed(p.v);
    }
    return out;
}

std::vector<DiscPoint> ray_curve(const FlagModel& model, Ray ray)
{
    std::vector<DiscPoint> pts;
    constexpr int kSamples = 240;
    for (int i = 0; i < kSamples; ++i) {
        const double tau = static_cast<double>(i) / kSamples;
        pts.push_back(ray_disc_image(model, ray, tau / (1.0 - tau)));
    }
    pts.push_back(ray_disc_image(model, ray, 1e12));
    return pts;
}

} // namespace

std::string render_portrait(const FlagModel& model, const PortraitOptions& opts, const IntegrationConfig& cfg)
{
    if (opts.width_px < 100 || opts.n_stream_seeds < 0) {
        throw ParameterError("portrait width must be >= 100 px and the seed count nonnegative");
    }
    const NamedEquilibria named = named_equilibria(model);
    const int w = opts.width_px;
    const double margin = std::round(w * 0.08);
    const double scale = w - 2 * margin;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w << "\" height=\"" << w
        << "\" viewBox=\"0 0 " << w << " " << w << "\">\n"
        << "<title>Poincare disc, family " << family_name(model.family) << ", m=" << model.m
        << ", k=" << model.k << "</title>\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << w << "\" fill=\"#ffffff\"/>\n"
        << "<g id=\"disc\" transform=\"translate(" << margin << "," << margin + scale << ") scale(" << scale
        << "," << -scale << ")\" fill=\"none\" stroke-linecap=\"round\">\n";

    // Quadrant frame: axes plus the equator arc.
    svg << "<polyline class=\"axis\" points=\"0,1 0,0 1,0\" stroke=\"#999999\" stroke-width=\"1\" "
           "vector-effect=\"non-scaling-stroke\"/>\n";
    if (opts.draw_equator) {
        std::vector<DiscPoint> arc;
        for (int i = 0; i <= 180; ++i) {
            const double a = (std::numbers::pi / 2) * i / 180.0;
            arc.push_back({std::cos(a), std::sin(a)});
        }
        svg << "<polyline class=\"equator\" points=\"" << polyline(arc)
            << "\" stroke=\"#000000\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>\n";
    }

    // Streamlines.
    svg << "<g class=\"streamlines\" stroke=\"#4a6fa5\" stroke-width=\"0.8\">\n";
    const double min_gap = 0.5 / scale;
    for (int i = 0; i < opts.n_stream_seeds; ++i) {
        const double angle = (std::numbers::pi / 2) * (i + 0.5) / opts.n_stream_seeds;
        const double radius = i % 2 == 0 ? 0.35 : 0.7;
        const auto seed = disc_to_plane({radius * std::cos(angle), radius * std::sin(angle)});
        try {
            const Trajectory traj = integrate_compactified(model, seed[0], seed[1], cfg);
            std::vector<DiscPoint> pts;
            for (const auto& s : traj.samples) {
                if (pts.empty() || disc_distance(pts.back(), s.disc) >= min_gap) {
                    pts.push_back(s.disc);
                }
            }
            if (disc_distance(pts.back(), traj.samples.back().disc) > 0.0) {
                pts.push_back(traj.samples.back().disc);
            }
            svg << "<polyline class=\"streamline\" points=\"" << polyline(pts)
                << "\" vector-effect=\"non-scaling-stroke\"/>\n";
        } catch (const Error& e) {
            svg << "<!-- streamline " << i << " omitted: " << e.what() << " -->\n";
        }
    }
    svg << "</g>\n";

    if (opts.draw_rays) {
        const std::array<std::pair<Ray, const char*>, 3> rays{
            {{Ray::Gamma1, "gamma1"}, {Ray::Gamma2, "gamma2"}, {Ray::Gamma3, "gamma3"}}};
        for (const auto& [ray, name] : rays) {
            svg << "<polyline class=\"ray\" id=\"" << name << "\" points=\"" << polyline(ray_curve(model, ray))
                << "\" stroke=\"#d35400\" stroke-width=\"2\" vector-effect=\"non-scaling-stroke\"/>\n";
        }
    }

    for (const Equilibrium& eq : named.all()) {
        svg << "<circle class=\"equilibrium\" id=\"" << eq.name << "\" data-class=\""
            << stability_name(eq.classification) << "\" cx=\"" << format_number(eq.disc.u) << "\" cy=\""
            << format_number(eq.disc.v) << "\" r=\"" << fixed(6.0 / scale) << "\" fill=\""
            << stability_color(eq.classification) << "\" stroke=\"none\"/>\n";
    }
    svg << "</g>\n";

    if (opts.labels) {
        svg << "<g class=\"labels\" font-family=\"sans-serif\" font-size=\"" << std::max(10, w / 50)
            << "\" fill=\"#000000\">\n";
        for (const Equilibrium& eq : named.all()) {
            const double px = margin + eq.disc.u * scale + 8;
            const double py = margin + (1.0 - eq.disc.v) * scale - 8;
            svg << "<text x=\"" << fixed(px, 2) << "\" y=\"" << fixed(py, 2) << "\">" << eq.name << " ("
                << stability_name(eq.classification) << ")</text>\n";
        }
        svg << "</g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string export_equilibria(const FlagModel& model)
{
    const NamedEquilibria named = named_equilibria(model);
    std::string out = "[\n";
    bool first = true;
    for (const Equilibrium& eq : named.all()) {
        if (!first) {
            out += ",\n";
        }
        first = false;
        out += "  {\"name\": \"" + eq.name + "\", \"chart\": \"" + std::string(chart_name(eq.chart)) +
               "\", \"z1\": " + format_number(eq.z1) + ", \"sphere\": [" + format_number(eq.sphere.y1) + ", " +
               format_number(eq.sphere.y2) + ", " + format_number(eq.sphere.y3) +
               "], \"disc\": " + json_pair(eq.disc.u, eq.disc.v) + ", \"eigenvalues\": [";
        for (std::size_t i = 0; i < 2; ++i) {
            out += (i == 0 ? "" : ", ");
            out += "{\"re\": " + format_number(eq.eigenvalues[i].real()) +
                   ", \"im\": " + format_number(eq.eigenvalues[i].imag()) + "}";
        }
        out += "], \"class\": \"" + std::string(stability_name(eq.classification)) + "\"}";
    }
    out += "\n]\n";
    return out;
}

std::string export_rays(const FlagModel& model)
{
    std::string out = "[\n";
    bool first = true;
    for (const RayDirection& r : invariant_rays(polynomial_field(model))) {
        if (!first) {
            out += ",\n";
        }
        first = false;
        const auto slope = r.slope();
        out += "  {\"direction\": " + json_pair(r.a, r.b) +
               ", \"slope_x_over_y\": " + (slope ? format_number(*slope) : std::string("null")) + "}";
    }
    out += "\n]\n";
    return out;
}

std::string export_model(const FlagModel& model)
{
    using nlohmann::ordered_json;
    const auto terms = [](const Poly2& p) {
        ordered_json arr = ordered_json::array();
        for (const auto& [e, c] : p.terms()) {
            arr.push_back({{"i", e.first}, {"j", e.second}, {"c", c.str()}});
        }
        return arr;
    };
    const RawCoefficients rc = raw_coefficients(model);
    const VectorField vf = polynomial_field(model);
    const auto raw = raw_system_str(model);
    const FibrationInfo fib = fibration_info(model);

    ordered_json j;
    j["family"] = std::string(family_name(model.family));
    j["m"] = model.m;
    j["k"] = model.k;
    j["n"] = model.n;
    j["strict"] = model.strict;
    j["warnings"] = model.warnings;
    j["raw"] = {{"x", raw[0]}, {"y", raw[1]}};
    j["raw_coefficients"] = {{"a", rc.a.str()}, {"b", rc.b.str()}, {"c", rc.c.str()}, {"e", rc.e.str()}};
    j["polynomial"] = {{"x", vf.p1.str()}, {"y", vf.p2.str()}};
    j["polynomial_terms"] = {{"x", terms(vf.p1)}, {"y", terms(vf.p2)}};
    j["gamma1_slope"] = gamma1_slope(model).str();
    j["gamma2_slope"] = gamma2_slope(model).str();
    j["fibration"] = {{"dim_m1", fib.dim_m1},
                      {"dim_m2", fib.dim_m2},
                      {"fiber", fib.fiber_label},
                      {"base", fib.base_label},
                      {"total", fib.total_label}};
    return j.dump(2) + "\n";
}

std::string export_trajectory(const Trajectory& traj)
{
    std::string out = traj.raw ? "t,u,v,chart,z1,z2,x,y\n" : "t,u,v,chart,z1,z2\n";
    for (const auto& s : traj.samples) {
        out += format_number(s.t) + "," + format_number(s.disc.u) + "," + format_number(s.disc.v) + "," +
               std::string(chart_name(s.chart)) + "," + format_number(s.z1) + "," + format_number(s.z2);
        if (traj.raw) {
            const auto xy = s.plane.value_or(std::array<double, 2>{s.z1, s.z2});
            out += "," + format_number(xy[0]) + "," + format_number(xy[1]);
        }
        out += "\n";
    }
    return out;
}

std::string export_basin(const BasinGrid& grid)
{
    std::string out = "x,y,region,expected,verdict,omega,final_u,final_v,final_distance,consistent,error\n";
    for (const auto& cell : grid.cells) {
        out += format_number(cell.x) + "," + format_number(cell.y) + ",";
        if (cell.result) {
            const BasinResult& r = *cell.result;
            out += std::string(region_name(r.geometric)) + "," + std::string(expected_limit(r.geometric)) + "," +
                   std::string(verdict_name(r.dynamic.verdict)) + "," + r.dynamic.equilibrium + "," +
                   format_number(r.dynamic.final_disc.u) + "," + format_number(r.dynamic.final_disc.v) + "," +
                   format_number(r.dynamic.final_distance) + "," + (r.consistent ? "true" : "false") + ",";
        } else {
            std::string msg = cell.error;
            for (char& c : msg) {
                if (c == ',' || c == '\n') {
                    c = ';';
                }
            }
            out += ",,,,,,,false," + msg;
        }
        out += "\n";
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) {
            throw ParameterError("cannot open '" + tmp.string() + "' for writing");
        }
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) {
            throw ParameterError("failed writing '" + tmp.string() + "'");
        }
    }
    std::filesystem::rename(tmp, path);
}

} // namespace flagflow

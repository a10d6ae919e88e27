#include "cli.hpp"

#include "flagflow/flagflow.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <regex>
#include <sstream>

namespace flagflow::cli {

namespace {

struct Common {
    std::string family = "I";
    int m = 0;
    int k = 0;
    bool no_strict = false;
    IntegrationConfig cfg;
    std::string out;
    bool json = false;
};

void add_common(CLI::App* sub, Common& c)
{
    sub->add_option("--family", c.family, "model family: I or II")->capture_default_str();
    sub->add_option("--m", c.m, "parameter m")->required();
    sub->add_option("--k", c.k, "parameter k")->required();
    sub->add_flag("--no-strict", c.no_strict, "accept parameters outside the analysed ranges");
    sub->add_option("--rtol", c.cfg.rtol, "relative tolerance")->capture_default_str();
    sub->add_option("--atol", c.cfg.atol, "absolute tolerance")->capture_default_str();
    sub->add_option("--t-max", c.cfg.t_max, "integration time limit")->capture_default_str();
    sub->add_option("--capture", c.cfg.capture_radius, "capture radius on the disc")->capture_default_str();
    sub->add_option("--out", c.out, "write data to FILE instead of standard output");
    sub->add_flag("--json", c.json, "JSON output");
}

FlagModel build_model(const Common& c, std::ostream& err)
{
    FlagModel model = make_model(parse_family(c.family), c.m, c.k, !c.no_strict);
    for (const auto& w : model.warnings) {
        err << "warning: " << w << "\n";
    }
    return model;
}

void emit(const Common& c, const std::string& payload, std::ostream& out)
{
    if (c.out.empty()) {
        out << payload;
    } else {
        write_file_atomic(c.out, payload);
    }
}

std::string num(double v) { return format_number(v); }

std::string model_text(const FlagModel& model)
{
    std::ostringstream s;
    const auto raw = raw_system_str(model);
    const VectorField vf = polynomial_field(model);
    const FibrationInfo fib = fibration_info(model);
    s << "family " << family_name(model.family) << ", m = " << model.m << ", k = " << model.k
      << ", n = " << model.n << (model.strict ? " (strict)" : " (non-strict)") << "\n";
    s << "raw system:\n  " << raw[0] << "\n  " << raw[1] << "\n";
    s << "polynomial field (raw system times y^2):\n  x' = " << vf.p1.str() << "\n  y' = " << vf.p2.str()
      << "\n";
    for (ChartId chart : {ChartId::U1, ChartId::U2}) {
        const VectorField cf = compactified_field(vf, chart);
        s << "chart " << chart_name(chart) << ":\n  z1' = " << cf.p1.str("z1", "z2")
          << "\n  z2' = " << cf.p2.str("z1", "z2") << "\n";
    }
    s << "invariant lines x/y: gamma1 = " << gamma1_slope(model).str() << ", gamma2 = " << gamma2_slope(model).str()
      << ", gamma3 = x-axis\n";
    s << "fibration: " << fib.fiber_label << " -> " << fib.total_label << " -> " << fib.base_label
      << " (dim m1 = " << fib.dim_m1 << ", dim m2 = " << fib.dim_m2 << ")\n";
    return s.str();
}

std::string equilibria_text(const FlagModel& model)
{
    std::ostringstream s;
    s << "name chart z1 u v eig1 eig2 class\n";
    for (const Equilibrium& eq : named_equilibria(model).all()) {
        s << eq.name << " " << chart_name(eq.chart) << " " << num(eq.z1) << " " << num(eq.disc.u) << " "
          << num(eq.disc.v);
        for (const auto& l : eq.eigenvalues) {
            s << " " << num(l.real());
            if (l.imag() != 0.0) {
                s << (l.imag() > 0 ? "+" : "") << num(l.imag()) << "i";
            }
        }
        s << " " << stability_name(eq.classification) << "\n";
    }
    return s.str();
}

std::string rays_text(const FlagModel& model)
{
    std::ostringstream s;
    s << "a b x/y\n";
    for (const RayDirection& r : invariant_rays(polynomial_field(model))) {
        const auto slope = r.slope();
        s << num(r.a) << " " << num(r.b) << " " << (slope ? num(*slope) : std::string("inf")) << "\n";
    }
    return s.str();
}

std::string flow_summary_json(const FlagModel& model, double x0, double y0, const Trajectory& traj)
{
    const auto& o = traj.omega;
    std::string s = "{\n  \"seed\": [" + num(x0) + ", " + num(y0) + "],\n";
    try {
        const Region r = sector_of(model, x0, y0);
        s += "  \"region\": \"" + std::string(region_name(r)) + "\",\n  \"expected\": \"" +
             std::string(expected_limit(r)) + "\",\n";
    } catch (const ParameterError&) {
        s += "  \"region\": null,\n  \"expected\": null,\n";
    }
    s += "  \"raw\": " + std::string(traj.raw ? "true" : "false") + ",\n";
    s += "  \"verdict\": \"" + std::string(verdict_name(o.verdict)) + "\",\n";
    s += "  \"omega\": " + (o.equilibrium.empty() ? std::string("null") : "\"" + o.equilibrium + "\"") + ",\n";
    s += "  \"final_disc\": [" + num(o.final_disc.u) + ", " + num(o.final_disc.v) + "],\n";
    s += "  \"final_distance\": " + num(o.final_distance) + ",\n";
    s += "  \"termination\": \"" + std::string(termination_name(traj.termination)) + "\",\n";
    s += "  \"steps\": " + std::to_string(traj.steps) + ",\n";
    s += "  \"samples\": " + std::to_string(traj.samples.size());
    if (traj.raw && !traj.samples.empty() && traj.samples.back().plane) {
        const auto xy = *traj.samples.back().plane;
        s += ",\n  \"final_metric\": [" + num(xy[0]) + ", " + num(xy[1]) + "],\n";
        s += "  \"final_ratio_y_over_x\": " + num(xy[1] / xy[0]);
    }
    s += "\n}\n";
    return s;
}

void flow_summary_text(const FlagModel& model, double x0, double y0, const Trajectory& traj, std::ostream& err)
{
    const auto& o = traj.omega;
    err << "seed (" << num(x0) << ", " << num(y0) << ")";
    try {
        const Region r = sector_of(model, x0, y0);
        err << ": region " << region_name(r) << ", expected " << expected_limit(r);
    } catch (const ParameterError&) {
        err << ": region undefined";
    }
    err << "\nverdict " << verdict_name(o.verdict);
    if (!o.equilibrium.empty()) {
        err << " (" << o.equilibrium << ")";
    }
    err << ", final disc (" << num(o.final_disc.u) << ", " << num(o.final_disc.v) << "), distance "
        << num(o.final_distance) << "\ntermination " << termination_name(traj.termination) << " after "
        << traj.steps << " steps, " << traj.samples.size() << " samples\n";
    if (traj.raw && !traj.samples.empty() && traj.samples.back().plane) {
        const auto xy = *traj.samples.back().plane;
        err << "final lambda1 = " << num(xy[0]) << ", lambda2 = " << num(xy[1]) << ", ratio y/x = "
            << num(xy[1] / xy[0]) << " (collapse interpretation: see documentation note)\n";
    }
}

GridSpec parse_grid(const std::string& text, double xmin, double xmax, double ymin, double ymax)
{
    static const std::regex re(R"(^\s*(\d+)\s*[xX]\s*(\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re)) {
        throw ParameterError("--grid expects NXxNY, got '" + text + "'");
    }
    GridSpec g;
    try {
        g.nx = std::stoi(m[1]);
        g.ny = std::stoi(m[2]);
    } catch (const std::exception&) {
        throw ParameterError("--grid counts out of range: '" + text + "'");
    }
    g.x_lo = xmin;
    g.x_hi = xmax;
    g.y_lo = ymin;
    g.y_hi = ymax;
    return g;
}

int exit_for(const Error& e) { return e.kind() == ErrorKind::Parameter ? kExitParameter : kExitNumerical; }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Ricci-flow phase portraits on the Poincare disc for two flag-manifold families", "flagflow"};
    app.require_subcommand(1);

    Common c;
    auto* cmd_model = app.add_subcommand("model", "print the raw, polynomial and chart systems");
    auto* cmd_eq = app.add_subcommand("equilibria", "equilibria at infinity with eigenvalues and classes");
    auto* cmd_rays = app.add_subcommand("rays", "invariant rays through the origin");
    auto* cmd_flow = app.add_subcommand("flow", "integrate one trajectory (CSV samples, summary on stderr)");
    auto* cmd_basin = app.add_subcommand("basin", "classify a grid of initial metrics");
    auto* cmd_portrait = app.add_subcommand("portrait", "SVG phase portrait on the disc");
    for (auto* sub : {cmd_model, cmd_eq, cmd_rays, cmd_flow, cmd_basin, cmd_portrait}) {
        add_common(sub, c);
    }

    double x0 = 0.0;
    double y0 = 0.0;
    bool raw = false;
    cmd_flow->add_option("--x0", x0, "initial lambda1")->required();
    cmd_flow->add_option("--y0", y0, "initial lambda2")->required();
    cmd_flow->add_flag("--raw", raw, "integrate the unrescaled system in (x, y)");

    std::string grid = "10x10";
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 5.0;
    double ymax = 5.0;
    unsigned threads = 0;
    cmd_basin->add_option("--grid", grid, "NXxNY")->capture_default_str();
    cmd_basin->add_option("--xmin", xmin, "grid covers (xmin, xmax]")->capture_default_str();
    cmd_basin->add_option("--xmax", xmax)->capture_default_str();
    cmd_basin->add_option("--ymin", ymin, "grid covers (ymin, ymax]")->capture_default_str();
    cmd_basin->add_option("--ymax", ymax)->capture_default_str();
    cmd_basin->add_option("--threads", threads, "worker threads (0: all cores)")->capture_default_str();

    PortraitOptions popts;
    bool no_rays = false;
    bool no_equator = false;
    bool no_labels = false;
    cmd_portrait->add_option("--width", popts.width_px, "image width in pixels")->capture_default_str();
    cmd_portrait->add_option("--seeds", popts.n_stream_seeds, "number of streamlines")->capture_default_str();
    cmd_portrait->add_flag("--no-rays", no_rays);
    cmd_portrait->add_flag("--no-equator", no_equator);
    cmd_portrait->add_flag("--no-labels", no_labels);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        std::replace(msg.begin(), msg.end(), '\n', ' ');
        err << "error: " << msg << "\n";
        return kExitParameter;
    }

    try {
        const FlagModel model = build_model(c, err);
        c.cfg.validate();
        if (*cmd_model) {
            emit(c, c.json ? export_model(model) : model_text(model), out);
        } else if (*cmd_eq) {
            emit(c, c.json ? export_equilibria(model) : equilibria_text(model), out);
        } else if (*cmd_rays) {
            emit(c, c.json ? export_rays(model) : rays_text(model), out);
        } else if (*cmd_flow) {
            const Trajectory traj =
                raw ? integrate_raw(model, x0, y0, c.cfg) : integrate_compactified(model, x0, y0, c.cfg);
            if (c.json) {
                emit(c, flow_summary_json(model, x0, y0, traj), out);
            } else {
                emit(c, export_trajectory(traj), out);
                flow_summary_text(model, x0, y0, traj, err);
            }
        } else if (*cmd_basin) {
            const BasinGrid result = basin_sweep(model, parse_grid(grid, xmin, xmax, ymin, ymax), c.cfg, threads);
            emit(c, export_basin(result), out);
            std::size_t consistent = 0;
            std::size_t failed = 0;
            for (const auto& cell : result.cells) {
                consistent += cell.result && cell.result->consistent ? 1 : 0;
                failed += cell.result ? 0 : 1;
            }
            err << result.cells.size() << " cells, " << consistent << " consistent, " << failed << " failed\n";
            if (failed > 0) {
                err << "error: " << failed << " cells failed to integrate\n";
                return kExitNumerical;
            }
        } else if (*cmd_portrait) {
            popts.draw_rays = !no_rays;
            popts.draw_equator = !no_equator;
            popts.labels = !no_labels;
            emit(c, render_portrait(model, popts, c.cfg), out);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitParameter;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

} // namespace flagflow::cli

#include "flagflow/flow.hpp"

#include "dopri5.hpp"
#include "flagflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace flagflow {

using detail::State;

void IntegrationConfig::validate() const
{
    if (!(rtol > 0.0) || !(atol > 0.0) || !(t_max > 0.0) || !(capture_radius > 0.0) ||
        !(chart_switch_threshold > 1.0) || !(dense_spacing > 0.0)) {
        throw ParameterError("integration tolerances, t_max, capture radius and dense spacing must be "
                             "positive and the chart switch threshold > 1");
    }
    if (!(capture_radius < 1e-2)) {
        throw ParameterError("capture radius must be below 1e-2");
    }
    if (max_steps == 0) {
        throw ParameterError("max_steps must be positive");
    }
}

std::string_view verdict_name(Verdict v)
{
    switch (v) {
    case Verdict::Converged: return "converged";
    case Verdict::MaxTime: return "max_time";
    case Verdict::StepLimit: return "step_limit";
    }
    return "?";
}

std::string_view termination_name(Termination t)
{
    switch (t) {
    case Termination::Captured: return "captured";
    case Termination::MaxTime: return "max_time";
    case Termination::StepLimit: return "step_limit";
    case Termination::Escaped: return "escaped";
    case Termination::Collapsed: return "collapsed";
    }
    return "?";
}

std::string_view region_name(Region r)
{
    switch (r) {
    case Region::R1: return "R1";
    case Region::R2: return "R2";
    case Region::R3: return "R3";
    case Region::OnGamma1: return "on_gamma1";
    case Region::OnGamma2: return "on_gamma2";
    case Region::OnAxis: return "on_axis";
    }
    return "?";
}

namespace {

constexpr double kMinStep = 1e-15;
constexpr double kRawLow = 1e-9;
constexpr double kRawHigh = 1e12;
constexpr int kArcSubsamples = 16;
constexpr std::size_t kMaxDensePoints = 2'000'000;

/// Evaluates a Poly2 in doubles without per-call allocation.
class FastPoly {
public:
    FastPoly() = default;
    explicit FastPoly(const Poly2& p)
    {
        for (const auto& [e, c] : p.terms()) {
            terms_.push_back({e.first, e.second, c.to_double()});
        }
    }

    double operator()(double x, double y) const
    {
        double sum = 0.0;
        for (const auto& t : terms_) {
            double v = t.c;
            for (unsigned i = 0; i < t.i; ++i) {
                v *= x;
            }
            for (unsigned j = 0; j < t.j; ++j) {
                v *= y;
            }
            sum += v;
        }
        return sum;
    }

private:
    struct Term {
        unsigned i;
        unsigned j;
        double c;
    };
    std::vector<Term> terms_;
};

struct FastField {
    FastPoly p1;
    FastPoly p2;
    State operator()(const State& z) const { return {p1(z[0], z[1]), p2(z[0], z[1])}; }
};

struct Segment {
    ChartId chart;
    double t0;
    double h;
    double theta_end;
    std::array<State, 5> rc;
};

struct Target {
    std::string name;
    DiscPoint disc;
};

/// Chart-aware callbacks for the stepping loop.
struct System {
    std::function<State(ChartId, const State&)> rhs;
    std::function<DiscPoint(ChartId, const State&)> to_disc;
    std::function<ChartId(ChartId, const State&)> next_chart;
    std::function<std::optional<Termination>(ChartId, const State&)> stop;
    std::function<State(ChartId, const State&)> sanitize;
};

struct EngineResult {
    Trajectory traj;
    std::vector<Segment> segments;
};

std::optional<double> nearest_target(const std::vector<Target>& targets, const DiscPoint& d,
                                     double radius, std::size_t* which = nullptr)
{
    std::optional<double> best;
    for (std::size_t i = 0; i < targets.size(); ++i) {
        const double dist = disc_distance(targets[i].disc, d);
        if (dist <= radius && (!best || dist < *best)) {
            best = dist;
            if (which != nullptr) {
                *which = i;
            }
        }
    }
    return best;
}

TrajectorySample make_sample(const System& sys, double t, ChartId chart, const State& z, bool raw)
{
    TrajectorySample s;
    s.t = t;
    s.chart = chart;
    s.z1 = z[0];
    s.z2 = z[1];
    s.disc = sys.to_disc(chart, z);
    if (raw) {
        s.plane = z;
    }
    return s;
}

EngineResult run(const System& sys, ChartId chart, State z, const std::vector<Target>& targets,
                 const IntegrationConfig& cfg, bool raw)
{
    EngineResult out;
    Trajectory& traj = out.traj;
    traj.raw = raw;

    double t = 0.0;
    traj.samples.push_back(make_sample(sys, t, chart, z, raw));
    if (nearest_target(targets, traj.samples.back().disc, cfg.capture_radius)) {
        traj.termination = Termination::Captured;
        return out;
    }

    State k1 = sys.rhs(chart, z);
    double h = 1e-3;
    std::size_t attempts = 0;

    while (true) {
        if (attempts >= cfg.max_steps) {
            traj.termination = Termination::StepLimit;
            break;
        }
        if (t >= cfg.t_max) {
            traj.termination = Termination::MaxTime;
            break;
        }
        h = std::min(h, cfg.t_max - t);
        ++attempts;

        const auto f = [&](const State& s) { return sys.rhs(chart, s); };
        const detail::Dopri5Step step = detail::dopri5_step(f, z, k1, h, cfg.rtol, cfg.atol);
        const bool finite = std::isfinite(step.error) && std::isfinite(step.y1[0]) &&
                            std::isfinite(step.y1[1]);
        if (!finite || step.error > 1.0) {
            const double fac = finite ? std::max(0.2, 0.9 * std::pow(step.error, -0.2)) : 0.2;
            h *= fac;
            if (h < kMinStep) {
                throw StepUnderflowError("step size fell below 1e-15 at t = " + std::to_string(t));
            }
            continue;
        }

        Segment seg{chart, t, h, 1.0, step.rcont};
        const double t_end = t + h;
        State z_new = step.y1;
        const DiscPoint d_new = sys.to_disc(chart, z_new);

        std::size_t which = 0;
        if (nearest_target(targets, d_new, cfg.capture_radius, &which)) {
            // Place the final sample on the capture circle.
            const auto dist_at = [&](double theta) {
                return disc_distance(targets[which].disc,
                                     sys.to_disc(chart, detail::dense_eval(step.rcont, theta)));
            };
            double lo = 0.0;
            double hi = 1.0;
            for (int i = 0; i < 80 && hi - lo > 1e-16; ++i) {
                const double mid = 0.5 * (lo + hi);
                if (dist_at(mid) <= cfg.capture_radius) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            seg.theta_end = hi;
            out.segments.push_back(seg);
            const State z_cap = hi < 1.0 ? detail::dense_eval(step.rcont, hi) : z_new;
            const double t_cap = t + hi * h;
            if (t_cap > t) {
                traj.samples.push_back(make_sample(sys, t_cap, chart, z_cap, raw));
            }
            traj.termination = Termination::Captured;
            break;
        }

        out.segments.push_back(seg);
        t = t_end;
        if (sys.sanitize) {
            z_new = sys.sanitize(chart, z_new);
        }
        z = z_new;
        traj.samples.push_back(make_sample(sys, t, chart, z, raw));

        if (sys.stop) {
            if (auto reason = sys.stop(chart, z)) {
                traj.termination = *reason;
                break;
            }
        }

        bool refresh = z != step.y1;
        if (sys.next_chart) {
            const ChartId next = sys.next_chart(chart, z);
            if (next != chart) {
                const ChartPoint moved = chart_transition({chart, z[0], z[1]}, next);
                chart = next;
                z = {moved.z1, moved.z2};
                refresh = true;
            }
        }
        k1 = refresh ? sys.rhs(chart, z) : step.k7;

        const double fac = step.error == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(step.error, -0.2), 0.2, 5.0);
        h *= fac;
    }
    traj.steps = attempts;
    return out;
}

/// Adds arc-uniform dense-output samples between the adaptive ones.
void densify(Trajectory& traj, const std::vector<Segment>& segments, const System& sys,
             const IntegrationConfig& cfg)
{
    if (segments.empty()) {
        return;
    }
    struct Knot {
        std::size_t seg;
        double theta;
        double s;
    };
    std::vector<Knot> knots;
    knots.reserve(segments.size() * kArcSubsamples + 1);
    double s = 0.0;
    DiscPoint prev{};
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const Segment& seg = segments[i];
        for (int q = (i == 0 ? 0 : 1); q <= kArcSubsamples; ++q) {
            const double theta = seg.theta_end * q / kArcSubsamples;
            const DiscPoint d = sys.to_disc(seg.chart, detail::dense_eval(seg.rc, theta));
            if (!knots.empty()) {
                s += disc_distance(prev, d);
            }
            knots.push_back({i, theta, s});
            prev = d;
        }
    }
    const double length = s;
    if (!(length > 0.0)) {
        return;
    }
    const auto wanted = static_cast<double>(cfg.min_dense_points);
    const double by_spacing = std::ceil(length / cfg.dense_spacing) + 1.0;
    const auto count = static_cast<std::size_t>(
        std::min(static_cast<double>(kMaxDensePoints), std::max(wanted, by_spacing)));

    std::vector<TrajectorySample> dense;
    dense.reserve(count);
    std::size_t k = 0;
    for (std::size_t n = 0; n < count; ++n) {
        const double target = length * static_cast<double>(n) / static_cast<double>(count - 1);
        while (k + 1 < knots.size() && knots[k + 1].s < target) {
            ++k;
        }
        if (k + 1 >= knots.size()) {
            break;
        }
        const Knot& a = knots[k];
        const Knot& b = knots[k + 1];
        // Adjacent knots in different segments meet at a shared point; use b's segment.
        const std::size_t seg_index = b.seg;
        const double theta_a = a.seg == b.seg ? a.theta : 0.0;
        const double w = b.s > a.s ? std::clamp((target - a.s) / (b.s - a.s), 0.0, 1.0) : 0.0;
        const double theta = theta_a + w * (b.theta - theta_a);
        const Segment& seg = segments[seg_index];
        const State z = detail::dense_eval(seg.rc, theta);
        dense.push_back(make_sample(sys, seg.t0 + theta * seg.h, seg.chart, z, false));
    }

    std::vector<TrajectorySample> merged;
    merged.reserve(traj.samples.size() + dense.size());
    std::merge(traj.samples.begin(), traj.samples.end(), dense.begin(), dense.end(),
               std::back_inserter(merged),
               [](const TrajectorySample& a, const TrajectorySample& b) { return a.t < b.t; });
    std::vector<TrajectorySample> strict;
    strict.reserve(merged.size());
    for (auto& sample : merged) {
        if (strict.empty() || sample.t > strict.back().t) {
            strict.push_back(std::move(sample));
        }
    }
    // Keep the exact terminal sample.
    if (!strict.empty() && strict.back().t == traj.samples.back().t) {
        strict.back() = traj.samples.back();
    }
    traj.samples = std::move(strict);
}

std::vector<Target> capture_targets(const NamedEquilibria& named, bool allow_saddle)
{
    std::vector<Target> targets;
    for (const Equilibrium& eq : named.all()) {
        if (is_attracting(eq.classification) ||
            (allow_saddle && eq.classification == Stability::Saddle)) {
            targets.push_back({eq.name, eq.disc});
        }
    }
    return targets;
}

ChartId seed_chart(double x, double y, double threshold)
{
    if (std::max(std::abs(x), std::abs(y)) <= threshold) {
        return ChartId::U3;
    }
    return x >= y ? ChartId::U1 : ChartId::U2;
}

void require_positive_seed(double x0, double y0)
{
    if (!(x0 > 0.0) || !(y0 > 0.0) || !std::isfinite(x0) || !std::isfinite(y0)) {
        throw DomainError("initial metric must satisfy x0 > 0 and y0 > 0");
    }
}

} // namespace

Trajectory integrate_compactified(const FlagModel& model, double x0, double y0,
                                  const IntegrationConfig& cfg)
{
    cfg.validate();
    require_positive_seed(x0, y0);

    const VectorField vf = polynomial_field(model);
    const std::array<FastField, 3> fields{
        FastField{FastPoly(compactified_field(vf, ChartId::U1).p1), FastPoly(compactified_field(vf, ChartId::U1).p2)},
        FastField{FastPoly(compactified_field(vf, ChartId::U2).p1), FastPoly(compactified_field(vf, ChartId::U2).p2)},
        FastField{FastPoly(vf.p1), FastPoly(vf.p2)}};
    const auto field_of = [&fields](ChartId c) -> const FastField& {
        switch (c) {
        case ChartId::U1: return fields[0];
        case ChartId::U2: return fields[1];
        default: return fields[2];
        }
    };

    const double threshold = cfg.chart_switch_threshold;
    System sys;
    sys.rhs = [&](ChartId c, const State& z) { return field_of(c)(z); };
    sys.to_disc = [](ChartId c, const State& z) {
        SpherePoint s = chart_to_sphere({c, z[0], z[1]});
        s.y3 = std::max(s.y3, 0.0);
        return disc_projection(s);
    };
    sys.sanitize = [](ChartId c, const State& z) {
        // The equator is invariant; never step past it.
        if (c != ChartId::U3 && z[1] < 0.0) {
            return State{z[0], 0.0};
        }
        return z;
    };
    sys.next_chart = [threshold](ChartId c, const State& z) {
        if (c == ChartId::U3) {
            if (std::max(std::abs(z[0]), std::abs(z[1])) > threshold) {
                return z[0] >= z[1] ? ChartId::U1 : ChartId::U2;
            }
            return c;
        }
        if (std::abs(z[0]) > threshold) {
            return c == ChartId::U1 ? ChartId::U2 : ChartId::U1;
        }
        if (std::abs(z[1]) > threshold) {
            return ChartId::U3;
        }
        return c;
    };

    const NamedEquilibria named = named_equilibria(model);
    const auto targets = capture_targets(named, on_gamma2(model, x0, y0));

    const ChartId start = seed_chart(x0, y0, threshold);
    const ChartPoint seed = chart_transition({ChartId::U3, x0, y0}, start);
    EngineResult res = run(sys, start, {seed.z1, seed.z2}, targets, cfg, false);
    densify(res.traj, res.segments, sys, cfg);

    const auto all = named.all();
    res.traj.omega = omega_limit(res.traj, all, cfg);
    return std::move(res.traj);
}

Trajectory integrate_raw(const FlagModel& model, double x0, double y0, const IntegrationConfig& cfg)
{
    cfg.validate();
    require_positive_seed(x0, y0);

    System sys;
    sys.rhs = [&model](ChartId, const State& z) -> State {
        if (!(z[0] > 0.0) || !(z[1] > 0.0)) {
            return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
        }
        return raw_rhs(model, z[0], z[1]);
    };
    sys.to_disc = [](ChartId, const State& z) { return disc_projection(central_projection(z[0], z[1])); };
    sys.stop = [](ChartId, const State& z) -> std::optional<Termination> {
        if (z[0] < kRawLow || z[1] < kRawLow) {
            return Termination::Collapsed;
        }
        if (std::abs(z[0]) > kRawHigh || std::abs(z[1]) > kRawHigh) {
            return Termination::Escaped;
        }
        return std::nullopt;
    };

    const NamedEquilibria named = named_equilibria(model);
    const auto targets = capture_targets(named, on_gamma2(model, x0, y0));
    EngineResult res = run(sys, ChartId::U3, {x0, y0}, targets, cfg, true);

    const auto all = named.all();
    res.traj.omega = omega_limit(res.traj, all, cfg);
    return std::move(res.traj);
}

OmegaLimit omega_limit(const Trajectory& traj, std::span<const Equilibrium> equilibria,
                       const IntegrationConfig& cfg)
{
    if (traj.samples.empty()) {
        throw EmptyTrajectoryError("omega limit of an empty trajectory");
    }
    OmegaLimit out;
    out.final_disc = traj.samples.back().disc;
    out.final_distance = std::numeric_limits<double>::infinity();
    const Equilibrium* best = nullptr;
    for (const Equilibrium& eq : equilibria) {
        if (!is_attracting(eq.classification) && eq.classification != Stability::Saddle) {
            continue;
        }
        const double d = disc_distance(eq.disc, out.final_disc);
        if (d < out.final_distance) {
            out.final_distance = d;
            best = &eq;
        }
    }
    if (best != nullptr && out.final_distance <= cfg.capture_radius) {
        out.verdict = Verdict::Converged;
        out.equilibrium = best->name;
    } else {
        out.verdict = traj.termination == Termination::StepLimit ? Verdict::StepLimit : Verdict::MaxTime;
    }
    return out;
}

Region sector_of(const FlagModel& model, const Rational& x, const Rational& y)
{
    if (x.sign() <= 0 || y.sign() <= 0) {
        throw DomainError("sector_of requires x > 0 and y > 0");
    }
    const Rational s1 = gamma1_slope(model);
    const Rational s2 = gamma2_slope(model);
    if (!(s1 < s2)) {
        throw ParameterError("invariant lines are not ordered for these parameters; regions undefined");
    }
    const Rational r = x / y;
    if (r < s1) {
        return Region::R1;
    }
    if (r == s1) {
        return Region::OnGamma1;
    }
    if (r < s2) {
        return Region::R2;
    }
    if (r == s2) {
        return Region::OnGamma2;
    }
    return Region::R3;
}

Region sector_of(const FlagModel& model, double x, double y)
{
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
        throw DomainError("sector_of requires x > 0 and y > 0");
    }
    return sector_of(model, Rational::from_double(x), Rational::from_double(y));
}

bool on_gamma2(const FlagModel& model, double x, double y)
{
    const double s2 = gamma2_slope(model).to_double();
    return std::abs(x / y - s2) <= 1e-12 * s2;
}

double angular_distance_to_gamma2(const FlagModel& model, double x, double y)
{
    const double s2 = gamma2_slope(model).to_double();
    return std::abs(std::atan2(y, x) - std::atan2(1.0, s2));
}

std::string_view expected_limit(Region r)
{
    switch (r) {
    case Region::R1:
    case Region::R2:
    case Region::OnGamma1: return "p1";
    case Region::OnGamma2: return "p2";
    case Region::R3:
    case Region::OnAxis: return "p3";
    }
    return "";
}

BasinResult classify_basin(const FlagModel& model, double x0, double y0, const IntegrationConfig& cfg)
{
    BasinResult out;
    out.geometric = sector_of(model, x0, y0);
    out.dynamic = integrate_compactified(model, x0, y0, cfg).omega;
    out.consistent = out.dynamic.verdict == Verdict::Converged &&
                     out.dynamic.equilibrium == expected_limit(out.geometric);
    return out;
}

double orbit_deviation(const Trajectory& raw, const Trajectory& compactified)
{
    if (raw.samples.empty() || compactified.samples.empty()) {
        throw EmptyTrajectoryError("orbit deviation needs two nonempty trajectories");
    }
    const auto& poly = compactified.samples;

    const auto point_segment = [](const DiscPoint& p, const DiscPoint& a, const DiscPoint& b) {
        const double dx = b.u - a.u;
        const double dy = b.v - a.v;
        const double len2 = dx * dx + dy * dy;
        double w = 0.0;
        if (len2 > 0.0) {
            w = std::clamp(((p.u - a.u) * dx + (p.v - a.v) * dy) / len2, 0.0, 1.0);
        }
        return std::hypot(p.u - (a.u + w * dx), p.v - (a.v + w * dy));
    };

    // Bounding boxes over chunks of consecutive segments for pruning.
    constexpr std::size_t kChunk = 64;
    struct Box {
        std::size_t first;
        std::size_t last; // vertex index, inclusive
        double u0, u1, v0, v1;
    };
    std::vector<Box> boxes;
    for (std::size_t first = 0; first < poly.size(); first += kChunk) {
        const std::size_t last = std::min(poly.size() - 1, first + kChunk);
        Box b{first, last, poly[first].disc.u, poly[first].disc.u, poly[first].disc.v, poly[first].disc.v};
        for (std::size_t i = first; i <= last; ++i) {
            b.u0 = std::min(b.u0, poly[i].disc.u);
            b.u1 = std::max(b.u1, poly[i].disc.u);
            b.v0 = std::min(b.v0, poly[i].disc.v);
            b.v1 = std::max(b.v1, poly[i].disc.v);
        }
        boxes.push_back(b);
        if (last == poly.size() - 1) {
            break;
        }
    }

    double worst = 0.0;
    for (const auto& sample : raw.samples) {
        const std::array<double, 2> xy = sample.plane ? *sample.plane : std::array<double, 2>{sample.z1, sample.z2};
        const DiscPoint p = raw.raw ? disc_projection(central_projection(xy[0], xy[1])) : sample.disc;
        double best = std::numeric_limits<double>::infinity();
        for (const Box& b : boxes) {
            const double du = std::max({b.u0 - p.u, 0.0, p.u - b.u1});
            const double dv = std::max({b.v0 - p.v, 0.0, p.v - b.v1});
            if (std::hypot(du, dv) >= best) {
                continue;
            }
            if (b.first == b.last) {
                best = std::min(best, disc_distance(p, poly[b.first].disc));
                continue;
            }
            for (std::size_t i = b.first; i < b.last; ++i) {
                best = std::min(best, point_segment(p, poly[i].disc, poly[i + 1].disc));
            }
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace flagflow

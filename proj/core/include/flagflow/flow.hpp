#pragma once

#include "flagflow/analysis.hpp"
#include "flagflow/compactify.hpp"
#include "flagflow/models.hpp"
#include "flagflow/rational.hpp"

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flagflow {

struct IntegrationConfig {
    double rtol = 1e-9;
    double atol = 1e-12;
    /// In rescaled (polynomial) time for compactified runs, original time for raw runs.
    double t_max = 1e3;
    /// Disc distance at which a trajectory counts as converged.
    double capture_radius = 1e-6;
    /// Largest |z1|, |z2| tolerated before changing charts.
    double chart_switch_threshold = 2.0;
    std::size_t max_steps = 1'000'000;
    /// Arc-uniform dense-output points merged into compactified trajectories:
    /// max(min_dense_points, arc_length / dense_spacing).
    std::size_t min_dense_points = 200;
    double dense_spacing = 1e-3;

    /// Throws ParameterError unless tolerances are positive and capture_radius < 1e-2.
    void validate() const;
};

enum class Verdict { Converged, MaxTime, StepLimit };
std::string_view verdict_name(Verdict v);

struct OmegaLimit {
    Verdict verdict = Verdict::MaxTime;
    /// Equilibrium name when converged.
    std::string equilibrium;
    DiscPoint final_disc;
    /// Distance to the nearest candidate equilibrium.
    double final_distance = 0.0;
};

enum class Termination {
    Captured,   ///< reached the capture circle of a target equilibrium
    MaxTime,
    StepLimit,
    Escaped,    ///< raw run: a coordinate exceeded 1e12
    Collapsed,  ///< raw run: a coordinate dropped below 1e-9
};
std::string_view termination_name(Termination t);

struct TrajectorySample {
    double t = 0.0;
    DiscPoint disc;
    ChartId chart = ChartId::U3;
    double z1 = 0.0;
    double z2 = 0.0;
    /// (x, y) = (lambda1, lambda2) for raw runs.
    std::optional<std::array<double, 2>> plane;
};

struct Trajectory {
    std::vector<TrajectorySample> samples;
    OmegaLimit omega;
    Termination termination = Termination::MaxTime;
    bool raw = false;
    std::size_t steps = 0;
};

/// Integrates the compactified polynomial field from the plane point (x0, y0)
/// with an adaptive Dormand-Prince 5(4) pair, moving between U3, U1 and U2.
/// Stops on the capture circle of a stable equilibrium (of the saddle p2 too
/// when the seed lies on gamma2 to 1e-12), at t_max, or after max_steps.
Trajectory integrate_compactified(const FlagModel& model, double x0, double y0,
                                  const IntegrationConfig& cfg = {});

/// Integrates the unrescaled rational system in (x, y). Stops when a
/// coordinate leaves [1e-9, 1e12], on capture, at t_max or after max_steps.
Trajectory integrate_raw(const FlagModel& model, double x0, double y0,
                         const IntegrationConfig& cfg = {});

/// Converged(name) iff the last sample is within capture_radius of an
/// attracting equilibrium or a saddle among `equilibria`.
OmegaLimit omega_limit(const Trajectory& traj, std::span<const Equilibrium> equilibria,
                       const IntegrationConfig& cfg);

enum class Region { R1, R2, R3, OnGamma1, OnGamma2, OnAxis };
std::string_view region_name(Region r);

/// Sector of the open first quadrant by exact comparison of x/y against the
/// gamma1 and gamma2 slopes: R1 above gamma1, R2 between, R3 below gamma2.
Region sector_of(const FlagModel& model, const Rational& x, const Rational& y);
Region sector_of(const FlagModel& model, double x, double y);

/// True when x/y is within a relative 1e-12 of the gamma2 slope.
bool on_gamma2(const FlagModel& model, double x, double y);

/// Angle between (x, y) and the gamma2 direction, radians.
double angular_distance_to_gamma2(const FlagModel& model, double x, double y);

/// Name of the equilibrium the basin classification assigns to a region.
std::string_view expected_limit(Region r);

struct BasinResult {
    Region geometric = Region::R2;
    OmegaLimit dynamic;
    bool consistent = false;
};

BasinResult classify_basin(const FlagModel& model, double x0, double y0,
                           const IntegrationConfig& cfg = {});

/// Seeds x_i = x_lo + (i+1)(x_hi - x_lo)/nx, i = 0..nx-1 (same for y), i.e.
/// the grid covers (x_lo, x_hi] x (y_lo, y_hi].
struct GridSpec {
    double x_lo = 0.0;
    double x_hi = 5.0;
    double y_lo = 0.0;
    double y_hi = 5.0;
    int nx = 10;
    int ny = 10;
};

struct BasinCell {
    double x = 0.0;
    double y = 0.0;
    std::optional<BasinResult> result;
    /// Non-empty when the cell's integration failed.
    std::string error;
};

struct BasinGrid {
    GridSpec spec;
    /// Row-major: cells[j * nx + i] is (x_i, y_j).
    std::vector<BasinCell> cells;
};

/// Classifies every grid seed. Cells run concurrently on up to `threads`
/// workers (0: hardware concurrency); the output order does not depend on it.
BasinGrid basin_sweep(const FlagModel& model, const GridSpec& grid,
                      const IntegrationConfig& cfg = {}, unsigned threads = 0);

/// Max over raw samples (projected to the disc) of the distance to the
/// polyline through the compactified trajectory's disc samples.
double orbit_deviation(const Trajectory& raw, const Trajectory& compactified);

} // namespace flagflow

#pragma once

#include "flagflow/flow.hpp"
#include "flagflow/models.hpp"

#include <filesystem>
#include <string>

namespace flagflow {

struct PortraitOptions {
    int width_px = 800;
    int n_stream_seeds = 24;
    bool draw_rays = true;
    bool draw_equator = true;
    bool labels = true;
};

/// SVG 1.1 phase portrait on the first quadrant of the Poincare disc:
/// equator arc, images of gamma1/gamma2/gamma3, classified equilibria and
/// forward streamlines. Disc geometry is written in disc units inside a
/// single transformed group, so marker coordinates are exact disc points.
/// Output is a pure function of the inputs.
std::string render_portrait(const FlagModel& model, const PortraitOptions& opts = {},
                            const IntegrationConfig& cfg = {});

/// JSON array of the named equilibria at infinity, descending disc angle;
/// numbers printed with 17 significant digits.
std::string export_equilibria(const FlagModel& model);

/// JSON array of invariant ray directions with their slopes.
std::string export_rays(const FlagModel& model);

/// JSON description of the model: exact raw and polynomial coefficients,
/// invariant slopes and fibration metadata.
std::string export_model(const FlagModel& model);

/// CSV "t,u,v,chart,z1,z2[,x,y]" (x, y only for raw trajectories), LF endings.
std::string export_trajectory(const Trajectory& traj);

/// CSV, one row per grid cell in row-major order.
std::string export_basin(const BasinGrid& grid);

/// printf("%.17g").
std::string format_number(double value);

/// Writes `path` through a temporary sibling and a rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace flagflow

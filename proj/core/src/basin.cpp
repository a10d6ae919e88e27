#include "flagflow/errors.hpp"
#include "flagflow/flow.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

namespace flagflow {

BasinGrid basin_sweep(const FlagModel& model, const GridSpec& grid, const IntegrationConfig& cfg,
                      unsigned threads)
{
    if (grid.nx < 1 || grid.ny < 1) {
        throw ParameterError("basin grid needs nx >= 1 and ny >= 1");
    }
    if (!(grid.x_hi > grid.x_lo) || !(grid.y_hi > grid.y_lo) || grid.x_lo < 0.0 || grid.y_lo < 0.0 ||
        !std::isfinite(grid.x_hi) || !std::isfinite(grid.y_hi)) {
        throw ParameterError("basin grid ranges must be nonempty subsets of the open first quadrant");
    }
    cfg.validate();

    BasinGrid out;
    out.spec = grid;
    const auto nx = static_cast<std::size_t>(grid.nx);
    const auto ny = static_cast<std::size_t>(grid.ny);
    out.cells.resize(nx * ny);
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            BasinCell& cell = out.cells[j * nx + i];
            cell.x = grid.x_lo + static_cast<double>(i + 1) * (grid.x_hi - grid.x_lo) / grid.nx;
            cell.y = grid.y_lo + static_cast<double>(j + 1) * (grid.y_hi - grid.y_lo) / grid.ny;
        }
    }

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t idx = next++; idx < out.cells.size(); idx = next++) {
            BasinCell& cell = out.cells[idx];
            try {
                cell.result = classify_basin(model, cell.x, cell.y, cfg);
            } catch (const Error& e) {
                cell.error = e.what();
            }
        }
    };

    unsigned count = threads != 0 ? threads : std::max(1U, std::thread::hardware_concurrency());
    count = static_cast<unsigned>(std::min<std::size_t>(count, out.cells.size()));
    if (count <= 1) {
        worker();
        return out;
    }
    std::vector<std::jthread> pool;
    pool.reserve(count);
    for (unsigned t = 0; t < count; ++t) {
        pool.emplace_back(worker);
    }
    pool.clear();
    return out;
}

} // namespace flagflow

#ifndef RETFIELDS_SAMPLER_HPP
#define RETFIELDS_SAMPLER_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "retfields/trajectory.hpp"

namespace retfields {

/// One grid axis: `count` evenly spaced values from min to max inclusive
/// (count == 1 takes just min).
struct AxisSpec {
    double min = 0.0;
    double max = 0.0;
    long count = 1;
};

/// Cartesian product grid over (x1, x2, x3, t), t varying fastest.
/// `quantities` is any subset of
///   tau T u z phi   (scalars)   e v a E B A   (three components each).
struct GridSpec {
    AxisSpec x1, x2, x3, t;
    std::vector<std::string> quantities{"tau", "T", "e", "v", "a", "u", "z",
                                        "E",   "B", "A", "phi"};
    long max_points = 100000000; // refuse larger grids up front
};

enum class OutputFormat { csv, jsonl };

struct SampleOptions {
    double tolerance = 1e-12;
    double scale = 1.0; // multiplies the charge-linear outputs E, B, A, phi
    int threads = 0;    // 0 = all hardware threads (RETFIELDS_THREADS overrides)
    OutputFormat format = OutputFormat::csv;
    long chunk = 8192; // rows evaluated per parallel batch
};

/// Stream the field table for `grid` to `os`. Values are written with 17
/// significant digits so they round-trip exactly. Rows whose field point
/// lies on the trajectory (delay <= tolerance) are emitted with status
/// "on_trajectory" and empty field columns instead of aborting the run.
/// Output order follows the grid regardless of thread count.
void sample_grid(const Trajectory& traj, const GridSpec& grid, const SampleOptions& opt,
                 std::ostream& os);

} // namespace retfields

#endif

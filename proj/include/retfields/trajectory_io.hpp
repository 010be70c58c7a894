#ifndef RETFIELDS_TRAJECTORY_IO_HPP
#define RETFIELDS_TRAJECTORY_IO_HPP

#include <string>

#include <json.hpp>

#include "retfields/trajectory.hpp"

namespace retfields {

// JSON trajectory descriptions. The "kind" key selects the parameter set:
//   static            position
//   uniform           position, velocity
//   circular          center, radius, omega [, phase]
//   linear-oscillation center, axis, amplitude, omega [, phase]
//   piecewise-cubic   knots, positions, velocities (parallel arrays)
// A "metadata" object is allowed anywhere and ignored on load. Malformed
// input raises config_error with the JSON path of the offending field.

Trajectory parse_trajectory(const nlohmann::json& j, const std::string& root = "$");

Trajectory load_trajectory(const std::string& path);

nlohmann::json trajectory_to_json(const Trajectory& traj);

/// Serialize to `path`, merging `metadata` (if non-null) under "metadata".
void save_trajectory(const Trajectory& traj, const std::string& path,
                     const nlohmann::json& metadata = nullptr);

} // namespace retfields

#endif

#include "retfields/trajectory_io.hpp"

#include <fstream>

#include "retfields/errors.hpp"

namespace retfields {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& path, const char* key)
{
    if (!j.contains(key))
        throw config_error(path + "." + key, "missing required field");
    const json& v = j.at(key);
    if (!v.is_number())
        throw config_error(path + "." + key, "expected a number");
    return v.get<double>();
}

double optional_number(const json& j, const std::string& path, const char* key, double fallback)
{
    if (!j.contains(key))
        return fallback;
    const json& v = j.at(key);
    if (!v.is_number())
        throw config_error(path + "." + key, "expected a number");
    return v.get<double>();
}

Vec3 parse_vec3(const json& v, const std::string& path)
{
    if (!v.is_array() || v.size() != 3)
        throw config_error(path, "expected an array of 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (!v.at(i).is_number())
            throw config_error(path + "[" + std::to_string(i) + "]", "expected a number");
        out[i] = v.at(i).get<double>();
    }
    return out;
}

Vec3 require_vec3(const json& j, const std::string& path, const char* key)
{
    if (!j.contains(key))
        throw config_error(path + "." + key, "missing required field");
    return parse_vec3(j.at(key), path + "." + key);
}

json vec3_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

} // namespace

Trajectory parse_trajectory(const json& j, const std::string& root)
{
    if (!j.is_object())
        throw config_error(root, "expected a JSON object describing a trajectory");
    if (!j.contains("kind"))
        throw config_error(root + ".kind", "missing required field");
    if (!j.at("kind").is_string())
        throw config_error(root + ".kind", "expected a string");
    const std::string kind = j.at("kind").get<std::string>();

    try {
        if (kind == "static")
            return Trajectory::static_point(require_vec3(j, root, "position"));
        if (kind == "uniform")
            return Trajectory::uniform(require_vec3(j, root, "position"),
                                       require_vec3(j, root, "velocity"));
        if (kind == "circular")
            return Trajectory::circular(require_vec3(j, root, "center"),
                                        require_number(j, root, "radius"),
                                        require_number(j, root, "omega"),
                                        optional_number(j, root, "phase", 0.0));
        if (kind == "linear-oscillation")
            return Trajectory::linear_oscillation(require_vec3(j, root, "center"),
                                                  require_vec3(j, root, "axis"),
                                                  require_number(j, root, "amplitude"),
                                                  require_number(j, root, "omega"),
                                                  optional_number(j, root, "phase", 0.0));
        if (kind == "piecewise-cubic") {
            for (const char* key : {"knots", "positions", "velocities"})
                if (!j.contains(key) || !j.at(key).is_array())
                    throw config_error(root + "." + key, "missing or non-array field");
            const json& kn = j.at("knots");
            const json& ps = j.at("positions");
            const json& vs = j.at("velocities");
            if (ps.size() != kn.size() || vs.size() != kn.size())
                throw config_error(root + ".knots",
                                   "knots, positions and velocities must have equal lengths");
            std::vector<double> knots;
            std::vector<Vec3> positions, velocities;
            for (std::size_t i = 0; i < kn.size(); ++i) {
                const std::string idx = "[" + std::to_string(i) + "]";
                if (!kn.at(i).is_number())
                    throw config_error(root + ".knots" + idx, "expected a number");
                knots.push_back(kn.at(i).get<double>());
                positions.push_back(parse_vec3(ps.at(i), root + ".positions" + idx));
                velocities.push_back(parse_vec3(vs.at(i), root + ".velocities" + idx));
            }
            return Trajectory::piecewise_cubic(std::move(knots), std::move(positions),
                                               std::move(velocities));
        }
    } catch (const std::invalid_argument& e) {
        // structural validation from the Trajectory factories
        throw config_error(root, e.what());
    }
    throw config_error(root + ".kind",
                       "unknown kind '" + kind +
                           "' (expected static, uniform, circular, linear-oscillation or "
                           "piecewise-cubic)");
}

Trajectory load_trajectory(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw config_error("$", "cannot open trajectory file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error("$", std::string("invalid JSON: ") + e.what());
    }
    return parse_trajectory(j);
}

json trajectory_to_json(const Trajectory& traj)
{
    return std::visit(
        [](const auto& p) -> json {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, StaticPath>) {
                return {{"kind", "static"}, {"position", vec3_to_json(p.position)}};
            } else if constexpr (std::is_same_v<P, UniformPath>) {
                return {{"kind", "uniform"},
                        {"position", vec3_to_json(p.position)},
                        {"velocity", vec3_to_json(p.velocity)}};
            } else if constexpr (std::is_same_v<P, CircularPath>) {
                return {{"kind", "circular"},
                        {"center", vec3_to_json(p.center)},
                        {"radius", p.radius},
                        {"omega", p.omega},
                        {"phase", p.phase}};
            } else if constexpr (std::is_same_v<P, OscillationPath>) {
                return {{"kind", "linear-oscillation"},
                        {"center", vec3_to_json(p.center)},
                        {"axis", vec3_to_json(p.axis)},
                        {"amplitude", p.amplitude},
                        {"omega", p.omega},
                        {"phase", p.phase}};
            } else {
                static_assert(std::is_same_v<P, CubicSplinePath>);
                json kn = json::array(), ps = json::array(), vs = json::array();
                for (std::size_t i = 0; i < p.knots.size(); ++i) {
                    kn.push_back(p.knots[i]);
                    ps.push_back(vec3_to_json(p.positions[i]));
                    vs.push_back(vec3_to_json(p.velocities[i]));
                }
                return {{"kind", "piecewise-cubic"},
                        {"knots", std::move(kn)},
                        {"positions", std::move(ps)},
                        {"velocities", std::move(vs)}};
            }
        },
        traj.rep());
}

void save_trajectory(const Trajectory& traj, const std::string& path, const json& metadata)
{
    json j = trajectory_to_json(traj);
    if (!metadata.is_null())
        j["metadata"] = metadata;
    std::ofstream out(path);
    if (!out)
        throw config_error("$", "cannot write trajectory file '" + path + "'");
    out << j.dump(2) << "\n";
}

} // namespace retfields

#ifndef RETFIELDS_ERRORS_HPP
#define RETFIELDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace retfields {

/// Trajectory violates the speed limit (sup |w| >= 1 in units of c), so
/// retarded times are not guaranteed to exist or be unique.
class not_admissible_error : public std::runtime_error {
public:
    explicit not_admissible_error(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-point solve hit the iteration cap before the certified error
/// dropped below tolerance.
class iteration_limit_error : public std::runtime_error {
public:
    explicit iteration_limit_error(const std::string& what) : std::runtime_error(what) {}
};

/// Field point lies on (or within tolerance of) the trajectory itself:
/// the delay T vanishes and the fields are singular there.
class outside_domain_error : public std::runtime_error {
public:
    explicit outside_domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed configuration input. `path` locates the offending field,
/// e.g. "$.velocity[2]".
class config_error : public std::runtime_error {
public:
    config_error(const std::string& path_, const std::string& what)
        : std::runtime_error("config error at " + path_ + ": " + what), path(path_)
    {
    }
    std::string path;
};

} // namespace retfields

#endif

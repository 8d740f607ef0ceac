#ifndef FRDEALIAS_ERRORS_HPP
#define FRDEALIAS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace frdealias {

/// Nodal state failed the rho > 0, P > 0 admissibility check.
class admissibility_error : public std::runtime_error {
public:
    admissibility_error(std::string msg, int element = -1, int node = -1)
        : std::runtime_error(std::move(msg)), element(element), node(node) {}
    int element;
    int node;
};

/// Non-finite values detected during time integration.
class blowup_error : public std::runtime_error {
public:
    blowup_error(std::string msg, long step = -1, int stage = -1, int element = -1)
        : std::runtime_error(std::move(msg)), step(step), stage(stage), element(element) {}
    long step;
    int stage;
    int element;
};

/// Structured parse/validation failure (mesh files, run configs).
class parse_error : public std::runtime_error {
public:
    parse_error(std::string msg, int line = -1)
        : std::runtime_error(std::move(msg)), line(line) {}
    int line;
};

} // namespace frdealias

#endif

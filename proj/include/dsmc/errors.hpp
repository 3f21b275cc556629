#pragma once

#include <stdexcept>
#include <string>

namespace dsmc {

/// Scenario file or scenario content is invalid.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// A simulated state left the configured magnitude bound.
class divergence_error : public std::runtime_error {
public:
    divergence_error(const std::string& what, double time)
        : std::runtime_error(what), time_(time) {}

    double time() const { return time_; }

private:
    double time_;
};

}  // namespace dsmc

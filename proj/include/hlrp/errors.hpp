#pragma once

#include <stdexcept>
#include <string>

namespace hlrp {

// Error taxonomy used across the library. The CLI maps these onto exit
// codes (config -> 2, numeric/divergence -> 3, io -> 4).
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& msg) : std::runtime_error("shape error: " + msg) {}
};

struct ModeError : std::runtime_error {
    explicit ModeError(const std::string& msg) : std::runtime_error("mode error: " + msg) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& term, const std::string& msg)
        : std::runtime_error("numeric error [" + term + "]: " + msg), term(term) {}
    std::string term;
};

struct ArgumentError : std::runtime_error {
    explicit ArgumentError(const std::string& msg) : std::runtime_error("argument error: " + msg) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& msg) : std::runtime_error("io error: " + msg) {}
};

struct TrainingError : std::runtime_error {
    TrainingError(const std::string& msg, int epoch, int task)
        : std::runtime_error("training error: " + msg + " (epoch " + std::to_string(epoch) +
                             ", task " + std::to_string(task) + ")"),
          epoch(epoch), task(task) {}
    int epoch;
    int task;
};

}  // namespace hlrp

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qualia {

// Base class for all engine errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A numeric or semantic argument outside its documented domain.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// Consciousness state id outside 1..10.
class InvalidState : public Error {
public:
    using Error::Error;
};

// Action descriptor with no entry in the rule table.
class UnknownAction : public Error {
public:
    using Error::Error;
};

// Fusion could not pick a single label (exact confidence tie).
class AmbiguousObservation : public Error {
public:
    using Error::Error;
};

// Plan construction failed (e.g. empty means).
class PlanError : public Error {
public:
    using Error::Error;
};

// Operation on an agent in the wrong lifecycle phase (e.g. cycling a dead agent).
class LifecycleError : public Error {
public:
    using Error::Error;
};

// Text input rejected; carries 1-based line and column of the first error.
class ParseError : public Error {
public:
    ParseError(const std::string& message, int line, int column)
        : Error(message + " (line " + std::to_string(line) + ", column " +
                std::to_string(column) + ")"),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// Configuration rejected; carries every offending key, not just the first.
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::vector<std::string> keys)
        : Error(message + ": " + join(keys)), keys_(std::move(keys)) {}

    const std::vector<std::string>& keys() const { return keys_; }

private:
    static std::string join(const std::vector<std::string>& keys) {
        std::string out;
        for (const auto& k : keys) {
            if (!out.empty()) out += ", ";
            out += k;
        }
        return out;
    }

    std::vector<std::string> keys_;
};

}  // namespace qualia

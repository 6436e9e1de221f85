#pragma once

#include <stdexcept>
#include <string>

namespace icx {

/// Input text could not be parsed; `line` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// A structural rule was violated (self-loop, duplicate arc, nonpositive weight, ...).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operation requires strong connectivity (or a usable giant component).
class TopologyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The inverse system cannot be built; `node` names a node with no incoming arc.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(int node, const std::string& what)
        : std::runtime_error(what), node_(node) {}
    int node() const { return node_; }

private:
    int node_;
};

/// epsilon at or above the admissible maximum for the instance.
class EpsilonError : public std::runtime_error {
public:
    EpsilonError(double epsilon_max, const std::string& what)
        : std::runtime_error(what), epsilon_max_(epsilon_max) {}
    double epsilon_max() const { return epsilon_max_; }

private:
    double epsilon_max_;
};

/// Iteration budget exhausted before reaching the tolerance.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double residual, long iterations, const std::string& what)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    long iterations() const { return iterations_; }

private:
    double residual_;
    long iterations_;
};

} // namespace icx

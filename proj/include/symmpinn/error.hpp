#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace symmpinn {

/// Base class for every error raised by the library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A primitive was evaluated outside its domain (log of a non-positive
/// value, division by zero).
class domain_error : public error {
public:
    domain_error(std::string primitive, std::ptrdiff_t node_index)
        : error("domain error in '" + primitive + "'" +
                (node_index >= 0 ? " at node " + std::to_string(node_index) : std::string{})),
          primitive_(std::move(primitive)), node_index_(node_index) {}

    const std::string& primitive() const noexcept { return primitive_; }
    /// -1 when the value was not recorded on a tape.
    std::ptrdiff_t node_index() const noexcept { return node_index_; }

private:
    std::string primitive_;
    std::ptrdiff_t node_index_;
};

class tape_mismatch : public error {
public:
    tape_mismatch() : error("variable belongs to a different tape") {}
};

class config_error : public error {
public:
    config_error(std::string field, const std::string& what)
        : error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

class numeric_error : public error {
public:
    numeric_error(std::size_t layer, const std::string& what)
        : error("layer " + std::to_string(layer) + ": " + what), layer_(layer) {}

    std::size_t layer() const noexcept { return layer_; }

private:
    std::size_t layer_;
};

class quadrature_error : public error {
public:
    quadrature_error(double estimate, double achieved_tol)
        : error("quadrature did not converge (estimate " + std::to_string(estimate) +
                ", last difference " + std::to_string(achieved_tol) + ")"),
          estimate_(estimate) {}

    double estimate() const noexcept { return estimate_; }

private:
    double estimate_;
};

class oracle_domain_error : public error {
public:
    using error::error;
};

class training_diverged : public error {
public:
    training_diverged(std::size_t iteration, const std::string& what)
        : error("training diverged at iteration " + std::to_string(iteration) + ": " + what),
          iteration_(iteration) {}

    std::size_t iteration() const noexcept { return iteration_; }

private:
    std::size_t iteration_;
};

} // namespace symmpinn

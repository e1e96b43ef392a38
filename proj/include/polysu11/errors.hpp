#pragma once

#include <stdexcept>
#include <string>

namespace polysu11 {

// gamma-function pole hit (nonpositive integer argument)
struct PoleError : std::domain_error {
    explicit PoleError(const std::string& what) : std::domain_error(what) {}
};

// series evaluated outside its disk of convergence
struct DivergenceError : std::domain_error {
    explicit DivergenceError(const std::string& what) : std::domain_error(what) {}
};

// iteration/quadrature failed to reach the requested tolerance
struct NonconvergenceError : std::runtime_error {
    explicit NonconvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// a factor product that must be positive came out <= 0
struct NonpositiveFactorError : std::runtime_error {
    explicit NonpositiveFactorError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace polysu11

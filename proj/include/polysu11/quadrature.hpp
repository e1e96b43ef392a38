#pragma once

#include <functional>

namespace polysu11 {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; // sum of accepted panel estimates (conservative)
    int evaluations = 0;
    int max_depth = 0;
};

// Adaptive Gauss-Kronrod 7/15. Panels bisect until the embedded |K15 - G7|
// estimate fits a width-proportional share of abs_tol + rel_tol * |I|.
// Endpoint singularities are the caller's problem (substitute first).
QuadratureResult integrate_gk(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol = 1e-12, double rel_tol = 1e-10,
                              int max_depth = 28);

} // namespace polysu11

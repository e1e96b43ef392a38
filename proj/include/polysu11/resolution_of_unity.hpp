#pragma once

#include "polysu11/algebra.hpp"
#include "polysu11/coherent_states.hpp"
#include "polysu11/special_functions.hpp"

#include <memory>
#include <vector>

namespace polysu11 {

// Radial density rho(t) whose power moments resolve the identity over the
// coherent family: int rho(t) t^n dt = ([nu_n]!)^2 / [phi_n]! with nu = phi
// for the lowering family and nu_n = n chi_n for the displacement family.
// The kernel is a Gamma-product Mellin transform evaluated on a shared
// contour cache; p = 1 collapses to Bessel-K / beta closed forms.
struct WeightFunctionSpec {
    StateFamily family = StateFamily::lowering_eigenstate;
    AlgebraSpec algebra;
    double alpha_p = 1.0; // kernel argument scale t / alpha_p
    double log_prefactor = 0.0;
    double support_hi = 0.0; // finite only for the displacement disk case
    bool bessel_closed = false;
    bool beta_closed = false;
    MeijerSpec kernel;
    std::shared_ptr<MeijerEvaluator> evaluator;
};

// Throws std::domain_error when the density does not exist in this form:
// complex deformation roots, or the displacement disk case with 2k <= 1.
WeightFunctionSpec make_weight_spec(const StructureSequence& seq, StateFamily family);

double weight_density(const WeightFunctionSpec& ws, double t);

// log of the exact moment ([nu_n]!)^2 / [phi_n]!
double moment_target_log(const StructureSequence& seq, StateFamily family, int n);

// int rho(t) t^n dt by adaptive panels: t = u^4 head + octave blocks on an
// infinite support, endpoint substitution t = hi - u^2 on a finite one.
double moment_quadrature(const WeightFunctionSpec& ws, int n);

// max over n <= max_n of |quadrature / exact - 1|
double unity_defect(const StructureSequence& seq, StateFamily family, int max_n);

// Densities of the cubic worked case on a uniform t grid, one block per
// gamma (each must lie in (0, 1/2)). Deterministic: same call, same bytes.
struct WeightTableRow {
    double gamma = 0.0, t = 0.0, rho = 0.0;
};
std::vector<WeightTableRow> weight_table(StateFamily family, const std::vector<double>& gammas,
                                         double tmax, int steps);

} // namespace polysu11

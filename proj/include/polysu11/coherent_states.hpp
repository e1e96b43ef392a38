#pragma once

#include "polysu11/algebra.hpp"

#include <complex>
#include <vector>

namespace polysu11 {

// The two coherent families over a deformed lowest-weight module:
//  - lowering_eigenstate ("bg" in the CLI): eigenvectors of K-, coefficients
//    zeta^n / sqrt([phi_n]!). Entire in zeta for every deformation.
//  - displacement ("p" in the CLI): deformed-exponential orbit of the vacuum,
//    coefficients sqrt((2k)_n / (n! [chi_n]!)) zeta^n. Disk |zeta|^2 < alpha_1
//    for the undeformed (p = 1) algebra, entire for p >= 2.
enum class StateFamily { lowering_eigenstate, displacement };

struct CoherentState {
    StateFamily family = StateFamily::lowering_eigenstate;
    std::complex<double> zeta;
    double k = 0.0;
    std::vector<std::complex<double>> coeff; // normalized; index n runs 0..N
    double norm_sq = 0.0;                    // sum |unnormalized|^2
    double tail_bound = 0.0;                 // certified dropped mass / norm_sq
};

// Ratio-recurrence expansion in linear arithmetic, truncated once a geometric
// majorant certifies the dropped |coefficient|^2 mass below rel_tol.
CoherentState build_state(const StructureSequence& seq, StateFamily family,
                          std::complex<double> zeta, double rel_tol = 1e-14,
                          int nmax = AlgebraSpec::default_nmax);

// Squared normalization by direct accumulation of the defining series
// (the phi/chi recurrences; no hypergeometric machinery).
double normalization_series(const StructureSequence& seq, StateFamily family, double zeta_sq,
                            double rel_tol = 1e-14, int nmax = AlgebraSpec::default_nmax);

// Same quantity through its hypergeometric evaluation: Bessel-I/power forms
// for p = 1, generalized series over the deformation roots for p >= 2.
double normalization_closed_form(const StructureSequence& seq, StateFamily family,
                                 double zeta_sq);

// Radius of the |zeta|^2 disk on which the family is defined (inf when entire)
// and its finite-n estimator (the n-th coefficient-ratio), which converges to
// the radius for the disk case and diverges for the entire ones.
double radius_sq(const StructureSequence& seq, StateFamily family);
double convergence_ratio(const StructureSequence& seq, StateFamily family, long n);

std::complex<double> inner_product(const CoherentState& bra, const CoherentState& ket);

// sup_n |(K. state)_n - zeta * state_n| over truncation-safe indices:
// minus_defect vanishes for the lowering family; plus_defect does not (the
// raising operator has no normalizable eigenvectors here).
struct EigenDefects {
    double minus_defect = 0.0;
    double plus_defect = 0.0;
};
EigenDefects lowering_eigendefect(const StructureSequence& seq, const CoherentState& state);

// Evolution under the compact generator: coeff_n picks up exp(-i (k+n) t);
// the family label rotates to zeta exp(-i t). Exact, no re-expansion.
CoherentState time_evolve(const CoherentState& state, double t);

} // namespace polysu11

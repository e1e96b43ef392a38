#pragma once

#include "polysu11/algebra.hpp"

#include <Eigen/Dense>

namespace polysu11 {

// Truncated lowest-weight module on |k,0> .. |k,nmax>: K0 diagonal k+n,
// K+ subdiagonal sqrt(phi_{n+1}), K- superdiagonal sqrt(phi_n).
struct RepMatrices {
    Eigen::MatrixXd K0, Kplus, Kminus;
    int nmax = 0;
};

RepMatrices build_rep(const StructureSequence& seq, int nmax);

// Defining-identity residuals at finite truncation. All defects are the max
// over interior entries (indices < nmax, where truncation cannot leak in) of
// |L - R| / max(1, |L| + |R|) — a relative reading wherever the entries are
// large, absolute near zero.
struct StructureDefects {
    double commutator = 0.0;     // [K+,K-] vs Phi(K0(K0-1)) - Phi(K0(K0+1))
    double casimir_lower = 0.0;  // K+K- vs Phi(K0(K0-1)) - Phi(k(k-1))
    double casimir_upper = 0.0;  // K-K+ vs Phi(K0(K0+1)) - Phi(k(k-1))
    double adjoint = 0.0;        // K- vs K+ transposed
    double casimir_eigenvalue = 0.0; // Phi(k(k-1))
};

double commutator_defect(const RepMatrices& rep, const StructureSequence& seq);
StructureDefects structure_defects(const RepMatrices& rep, const StructureSequence& seq);

} // namespace polysu11

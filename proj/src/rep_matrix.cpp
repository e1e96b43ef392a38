#include "polysu11/rep_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace polysu11 {

namespace {

// max over the top-left interior block of |L-R| / max(1, |L|+|R|)
double normalized_defect(const Eigen::MatrixXd& L, const Eigen::MatrixXd& R, int interior) {
    double worst = 0.0;
    for (int i = 0; i < interior; ++i)
        for (int j = 0; j < interior; ++j) {
            const double scale = std::max(1.0, std::abs(L(i, j)) + std::abs(R(i, j)));
            worst = std::max(worst, std::abs(L(i, j) - R(i, j)) / scale);
        }
    return worst;
}

Eigen::MatrixXd phi_of_k0_shift(const StructureSequence& seq, int dim, int shift) {
    // Phi(K0 (K0 + shift)) as a diagonal matrix, shift in {-1, +1}
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n) {
        const double k0 = seq.spec().k + n;
        d(n, n) = eval_structure_function(seq.spec(), k0 * (k0 + shift));
    }
    return d;
}

} // namespace

RepMatrices build_rep(const StructureSequence& seq, int nmax) {
    if (nmax < 0)
        throw std::invalid_argument("build_rep: nmax must be nonnegative");
    const int dim = nmax + 1;
    RepMatrices rep;
    rep.nmax = nmax;
    rep.K0 = Eigen::MatrixXd::Zero(dim, dim);
    rep.Kplus = Eigen::MatrixXd::Zero(dim, dim);
    rep.Kminus = Eigen::MatrixXd::Zero(dim, dim);
    for (int n = 0; n < dim; ++n)
        rep.K0(n, n) = seq.spec().k + n;
    for (int n = 0; n + 1 < dim; ++n) {
        const double step = std::sqrt(seq.phi(n + 1));
        rep.Kplus(n + 1, n) = step;
        rep.Kminus(n, n + 1) = step;
    }
    return rep;
}

double commutator_defect(const RepMatrices& rep, const StructureSequence& seq) {
    const int dim = rep.nmax + 1;
    const Eigen::MatrixXd lhs = rep.Kplus * rep.Kminus - rep.Kminus * rep.Kplus;
    const Eigen::MatrixXd rhs = phi_of_k0_shift(seq, dim, -1) - phi_of_k0_shift(seq, dim, +1);
    return normalized_defect(lhs, rhs, rep.nmax);
}

StructureDefects structure_defects(const RepMatrices& rep, const StructureSequence& seq) {
    const int dim = rep.nmax + 1;
    StructureDefects out;
    out.commutator = commutator_defect(rep, seq);

    const double k = seq.spec().k;
    out.casimir_eigenvalue = eval_structure_function(seq.spec(), k * (k - 1.0));
    const Eigen::MatrixXd invariant =
        out.casimir_eigenvalue * Eigen::MatrixXd::Identity(dim, dim);

    // compare products against diagonals of like magnitude; assembling the
    // O(1) invariant directly would bury it under roundoff of O(n^{2p}) terms
    out.casimir_lower = normalized_defect(rep.Kplus * rep.Kminus,
                                          phi_of_k0_shift(seq, dim, -1) - invariant, rep.nmax);
    out.casimir_upper = normalized_defect(rep.Kminus * rep.Kplus,
                                          phi_of_k0_shift(seq, dim, +1) - invariant, rep.nmax);

    out.adjoint = (rep.Kminus - rep.Kplus.transpose()).cwiseAbs().maxCoeff();
    return out;
}

} // namespace polysu11

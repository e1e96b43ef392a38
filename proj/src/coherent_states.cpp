#include "polysu11/coherent_states.hpp"

#include "polysu11/errors.hpp"
#include "polysu11/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polysu11 {

namespace {

using cplx = std::complex<double>;

// first index past which chi_n is provably nondecreasing: every root factor
// |n - a|^2 grows once n exceeds Re a
int chi_monotone_gate(const StructureSequence& seq) {
    double re_max = 0.0;
    for (const cplx& a : seq.roots())
        re_max = std::max(re_max, a.real());
    return int(std::ceil(re_max)) + 1;
}

// |t_{n+1}|^2 / |t_n|^2 for the squared-coefficient series
double step_ratio_sq(const StructureSequence& seq, StateFamily family, double zsq, int n) {
    if (family == StateFamily::lowering_eigenstate)
        return zsq / seq.phi(n + 1);
    const double k = seq.spec().k;
    return zsq * (2.0 * k + n) / ((n + 1.0) * seq.chi(n + 1));
}

// rigorous sup of step_ratio_sq over indices >= n (n past the monotone gate)
double tail_ratio_bound(const StructureSequence& seq, StateFamily family, double zsq, int n) {
    if (family == StateFamily::lowering_eigenstate)
        return zsq / seq.phi(n + 1); // phi strictly increases on the lattice
    const double k = seq.spec().k;
    // (2k+m)/(m+1) is monotone toward 1; chi_{m+1} is nondecreasing past the gate
    return zsq * std::max((2.0 * k + n) / (n + 1.0), 1.0) / seq.chi(n + 1);
}

void require_inside_disk(const StructureSequence& seq, StateFamily family, double zsq) {
    if (family == StateFamily::displacement && seq.spec().p == 1 &&
        zsq >= seq.spec().alpha[0])
        throw DivergenceError(
            "displacement family: |zeta|^2 at or beyond the convergence disk");
}

} // namespace

CoherentState build_state(const StructureSequence& seq, StateFamily family, cplx zeta,
                          double rel_tol, int nmax) {
    const double zsq = std::norm(zeta);
    require_inside_disk(seq, family, zsq);

    CoherentState st;
    st.family = family;
    st.zeta = zeta;
    st.k = seq.spec().k;
    st.coeff = {cplx(1.0, 0.0)};
    st.norm_sq = 1.0;
    if (zsq == 0.0)
        return st;

    const int gate = std::max(1, chi_monotone_gate(seq));
    const double k = seq.spec().k;
    double sum = 1.0, comp = 0.0;
    cplx u(1.0, 0.0);
    for (int n = 1; n <= nmax; ++n) {
        if (family == StateFamily::lowering_eigenstate)
            u *= zeta / std::sqrt(seq.phi(n));
        else
            u *= zeta * std::sqrt((2.0 * k + n - 1.0) / (n * seq.chi(n)));
        st.coeff.push_back(u);

        const double w = std::norm(u);
        const double y = w - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        if (n >= gate) {
            const double rbar = tail_ratio_bound(seq, family, zsq, n);
            if (rbar < 1.0) {
                const double tail = w * rbar / (1.0 - rbar);
                if (tail <= rel_tol * sum) {
                    st.norm_sq = sum;
                    st.tail_bound = tail / sum;
                    const double inv = 1.0 / std::sqrt(sum);
                    for (cplx& c : st.coeff)
                        c *= inv;
                    return st;
                }
            }
        }
    }
    throw NonconvergenceError("build_state: no tail certificate within the truncation cap");
}

double normalization_series(const StructureSequence& seq, StateFamily family, double zeta_sq,
                            double rel_tol, int nmax) {
    if (zeta_sq < 0.0)
        throw std::domain_error("normalization_series: |zeta|^2 must be nonnegative");
    require_inside_disk(seq, family, zeta_sq);
    if (zeta_sq == 0.0)
        return 1.0;

    const int gate = std::max(1, chi_monotone_gate(seq));
    double term = 1.0, sum = 1.0, comp = 0.0;
    for (int n = 1; n <= 4 * nmax; ++n) {
        term *= step_ratio_sq(seq, family, zeta_sq, n - 1);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (n >= gate) {
            const double rbar = tail_ratio_bound(seq, family, zeta_sq, n);
            if (rbar < 1.0 && term * rbar / (1.0 - rbar) <= rel_tol * sum)
                return sum;
        }
    }
    throw NonconvergenceError("normalization_series: no tail certificate within the cap");
}

double normalization_closed_form(const StructureSequence& seq, StateFamily family,
                                 double zeta_sq) {
    if (zeta_sq < 0.0)
        throw std::domain_error("normalization_closed_form: |zeta|^2 must be nonnegative");
    require_inside_disk(seq, family, zeta_sq);
    if (zeta_sq == 0.0)
        return 1.0;

    const AlgebraSpec& spec = seq.spec();
    const double two_k = 2.0 * spec.k;
    const double z = zeta_sq / spec.alpha.back();

    if (spec.p == 1) {
        if (family == StateFamily::lowering_eigenstate) {
            // 0F1(2k; z) through the modified Bessel function
            const double root = std::sqrt(z);
            return std::exp(std::lgamma(two_k) + (0.5 - spec.k) * std::log(z)) *
                   bessel_modified(BesselKind::I, two_k - 1.0, 2.0 * root);
        }
        return std::pow(1.0 - z, -two_k);
    }

    // p >= 2: the roots enter as conjugate-closed lower parameters 1 - a_i
    std::vector<cplx> lower{cplx(two_k, 0.0)};
    std::vector<cplx> upper;
    for (const cplx& a : seq.roots())
        lower.push_back(cplx(1.0, 0.0) - a);
    if (family == StateFamily::displacement) {
        // leading 2k moves upstairs for the displacement family
        upper.push_back(lower.front());
        lower.erase(lower.begin());
    }
    const PfqResultC r = pfq(upper, lower, cplx(z, 0.0));
    if (std::abs(r.value.imag()) > 1e-10 * std::max(1.0, std::abs(r.value.real())))
        throw NonconvergenceError(
            "normalization_closed_form: conjugate closure lost in the series");
    return r.value.real();
}

double radius_sq(const StructureSequence& seq, StateFamily family) {
    if (family == StateFamily::displacement && seq.spec().p == 1)
        return seq.spec().alpha[0];
    return std::numeric_limits<double>::infinity();
}

double convergence_ratio(const StructureSequence& seq, StateFamily family, long n) {
    if (n < 0 || n >= (1L << 30))
        throw std::domain_error("convergence_ratio: index out of range");
    // |u_n / u_{n+1}|^2 at zeta = 1: the Cauchy-Hadamard estimate of radius_sq
    const double k = seq.spec().k;
    const double x = double(n);
    const double chi_next = seq.chi(int(n) + 1);
    if (family == StateFamily::lowering_eigenstate)
        return (x + 1.0) * (2.0 * k + x) * chi_next; // = phi_{n+1}, unbounded
    return (x + 1.0) * chi_next / (2.0 * k + x);     // -> alpha_1 when p = 1
}

std::complex<double> inner_product(const CoherentState& bra, const CoherentState& ket) {
    const std::size_t n = std::min(bra.coeff.size(), ket.coeff.size());
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        acc += std::conj(bra.coeff[i]) * ket.coeff[i];
    return acc;
}

EigenDefects lowering_eigendefect(const StructureSequence& seq, const CoherentState& state) {
    EigenDefects out;
    const std::size_t top = state.coeff.size() - 1; // last retained index
    for (std::size_t n = 0; n < top; ++n) {
        const double step = std::sqrt(seq.phi(int(n) + 1));
        out.minus_defect = std::max(
            out.minus_defect, std::abs(step * state.coeff[n + 1] - state.zeta * state.coeff[n]));
    }
    // raising comparison: coefficient of |n> in K+ state is sqrt(phi_n) c_{n-1}
    out.plus_defect = std::abs(state.zeta * state.coeff[0]);
    for (std::size_t n = 1; n < top; ++n) {
        const double step = std::sqrt(seq.phi(int(n)));
        out.plus_defect = std::max(
            out.plus_defect, std::abs(step * state.coeff[n - 1] - state.zeta * state.coeff[n]));
    }
    return out;
}

CoherentState time_evolve(const CoherentState& state, double t) {
    CoherentState out = state;
    out.zeta = state.zeta * std::polar(1.0, -t);
    for (std::size_t n = 0; n < out.coeff.size(); ++n)
        out.coeff[n] *= std::polar(1.0, -(state.k + double(n)) * t);
    return out;
}

} // namespace polysu11

#include "polysu11/resolution_of_unity.hpp"

#include "polysu11/errors.hpp"
#include "polysu11/quadrature.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace polysu11 {

WeightFunctionSpec make_weight_spec(const StructureSequence& seq, StateFamily family) {
    const AlgebraSpec& spec = seq.spec();
    WeightFunctionSpec ws;
    ws.family = family;
    ws.algebra = spec;
    ws.alpha_p = spec.alpha.back();
    ws.support_hi = std::numeric_limits<double>::infinity();
    const double two_k = 2.0 * spec.k;

    std::vector<double> real_roots;
    for (const std::complex<double>& a : seq.roots()) {
        if (a.imag() != 0.0)
            throw std::domain_error(
                "weight density: complex deformation roots have no real Gamma-product kernel");
        real_roots.push_back(a.real()); // a < 1 whenever the spec validates
    }

    if (spec.p == 1) {
        if (family == StateFamily::lowering_eigenstate) {
            ws.bessel_closed = true;
            return ws;
        }
        if (!(two_k > 1.0))
            throw std::domain_error(
                "weight density: the displacement disk case needs 2k > 1");
        ws.beta_closed = true;
        ws.support_hi = spec.alpha[0];
        return ws;
    }

    ws.kernel.b = {0.0};
    double lp = -std::log(ws.alpha_p);
    for (double a : real_roots) {
        ws.kernel.b.push_back(-a);
        lp -= std::lgamma(1.0 - a);
    }
    if (family == StateFamily::lowering_eigenstate) {
        ws.kernel.b.push_back(two_k - 1.0);
        lp -= std::lgamma(two_k);
    } else {
        ws.kernel.a = {two_k - 1.0};
        lp += std::lgamma(two_k);
    }
    ws.log_prefactor = lp;
    ws.evaluator = std::make_shared<MeijerEvaluator>(ws.kernel);
    return ws;
}

double weight_density(const WeightFunctionSpec& ws, double t) {
    if (!(t > 0.0))
        throw std::domain_error("weight_density: t must be positive");
    if (t >= ws.support_hi)
        return 0.0;
    const double two_k = 2.0 * ws.algebra.k;
    if (ws.bessel_closed) {
        const double a1 = ws.algebra.alpha[0];
        const double z = t / a1;
        return 2.0 * std::pow(z, 0.5 * (two_k - 1.0)) *
               bessel_modified(BesselKind::K, two_k - 1.0, 2.0 * std::sqrt(z)) /
               (a1 * std::tgamma(two_k));
    }
    if (ws.beta_closed) {
        const double a1 = ws.algebra.alpha[0];
        return (two_k - 1.0) * std::pow(1.0 - t / a1, two_k - 2.0) / a1;
    }
    return std::exp(ws.log_prefactor) * (*ws.evaluator)(t / ws.alpha_p);
}

double moment_target_log(const StructureSequence& seq, StateFamily family, int n) {
    if (n < 0)
        throw std::domain_error("moment_target_log: need n >= 0");
    if (family == StateFamily::lowering_eigenstate)
        return seq.log_factorial(FactorialKind::phi, n);
    return std::lgamma(n + 1.0) + seq.log_factorial(FactorialKind::chi, n) -
           pochhammer_log_pos(2.0 * seq.spec().k, n);
}

double moment_quadrature(const WeightFunctionSpec& ws, int n) {
    if (n < 0)
        throw std::domain_error("moment_quadrature: need n >= 0");
    const auto f = [&](double t) { return weight_density(ws, t) * std::pow(t, double(n)); };

    if (std::isfinite(ws.support_hi)) {
        const double hi = ws.support_hi;
        const double head = integrate_gk(f, 0.0, 0.5 * hi, 1e-250, 1e-9).value;
        // t = hi - u^2 absorbs the (1 - t/hi)^{2k-2} endpoint
        const double top = integrate_gk(
                               [&](double u) { return 2.0 * u * f(hi - u * u); }, 0.0,
                               std::sqrt(0.5 * hi), 1e-250, 1e-9)
                               .value;
        return head + top;
    }

    // t = u^4 regularizes the t^beta behaviour of the kernel near zero
    double acc = integrate_gk(
                     [&](double u) {
                         const double t = u * u * u * u;
                         return 4.0 * u * u * u * f(t);
                     },
                     0.0, 1.0, 1e-250, 1e-9)
                     .value;
    double prev = std::numeric_limits<double>::infinity();
    for (int m = 0; m < 44; ++m) {
        const double lo = std::ldexp(1.0, m);
        const double block = integrate_gk(f, lo, 2.0 * lo, 1e-250, 1e-9).value;
        acc += block;
        // stop only on the decaying side of the integrand's peak
        if (block <= prev && std::abs(block) <= 1e-10 * std::abs(acc))
            return acc;
        prev = block;
    }
    throw NonconvergenceError("moment_quadrature: tail blocks did not decay");
}

double unity_defect(const StructureSequence& seq, StateFamily family, int max_n) {
    const WeightFunctionSpec ws = make_weight_spec(seq, family);
    double worst = 0.0;
    for (int n = 0; n <= max_n; ++n) {
        const double quad = moment_quadrature(ws, n);
        const double target = moment_target_log(seq, family, n);
        worst = std::max(worst, std::abs(quad * std::exp(-target) - 1.0));
    }
    return worst;
}

std::vector<WeightTableRow> weight_table(StateFamily family, const std::vector<double>& gammas,
                                         double tmax, int steps) {
    if (steps < 2)
        throw std::invalid_argument("weight_table: need at least two grid points");
    if (!(tmax > 1e-3))
        throw std::invalid_argument("weight_table: tmax must exceed the 1e-3 grid origin");
    std::vector<WeightTableRow> rows;
    rows.reserve(gammas.size() * std::size_t(steps));
    for (double g : gammas) {
        const StructureSequence seq(cubic_deformation(g));
        const WeightFunctionSpec ws = make_weight_spec(seq, family);
        for (int i = 0; i < steps; ++i) {
            const double t = 1e-3 + (tmax - 1e-3) * double(i) / double(steps - 1);
            rows.push_back({g, t, weight_density(ws, t)});
        }
    }
    return rows;
}

} // namespace polysu11

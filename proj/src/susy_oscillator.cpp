#include "polysu11/susy_oscillator.hpp"

#include "polysu11/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace polysu11 {

namespace {

void require_level(int n) {
    if (n < 0)
        throw std::invalid_argument("susy_oscillator: level index must be nonnegative");
}

// eigenvalue-count Sturm sequence of the Dirichlet tridiagonal
int count_below(const std::vector<double>& diag, double off_sq, double lambda) {
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < diag.size(); ++i) {
        d = diag[i] - lambda - (i ? off_sq / d : 0.0);
        if (d < 0.0)
            ++count;
        if (std::abs(d) < 1e-300)
            d = std::copysign(1e-300, d);
    }
    return count;
}

std::vector<double> dirichlet_levels(const std::function<double(double)>& potential,
                                     double r_max, int points, int levels) {
    const double h = r_max / points;
    const double off = -0.5 / (h * h);
    std::vector<double> diag(points - 1);
    for (int i = 1; i < points; ++i)
        diag[i - 1] = 1.0 / (h * h) + potential(i * h);

    std::vector<double> out(levels);
    for (int m = 0; m < levels; ++m) {
        double hi = 1.0;
        while (count_below(diag, off * off, hi) <= m)
            hi *= 2.0;
        double lo = 0.0;
        while (hi - lo > 1e-12 * std::max(1.0, hi)) {
            const double mid = 0.5 * (lo + hi);
            if (count_below(diag, off * off, mid) <= m)
                lo = mid;
            else
                hi = mid;
        }
        out[m] = 0.5 * (lo + hi);
    }
    return out;
}

double up_sq(const OscillatorParams& par, int n) {
    return energy_level(par, n) * (n + 1.0) * (n + par.gamma + 1.5) *
           energy_level(par, n + 1);
}

double down_sq(const OscillatorParams& par, int n) {
    if (n == 0)
        return 0.0;
    return energy_level(par, n) * n * (n + par.gamma + 0.5) * energy_level(par, n - 1);
}

} // namespace

OscillatorParams cubic_oscillator(double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::domain_error("cubic_oscillator: gamma must lie in (0, 1/2)");
    return {gamma, -gamma - 0.5};
}

ValidityReport check_validity(const OscillatorParams& par) {
    ValidityReport rep;
    rep.g = par.gamma + par.epsilon + 0.5;
    rep.convergent = par.epsilon * (1.0 + 2.0 * par.gamma) + 2.0 > 0.0;
    rep.cubic = std::abs(rep.g) < 1e-12 && 3.0 - 4.0 * par.gamma * (par.gamma + 1.0) > 0.0 &&
                par.gamma > 0.0 && par.gamma < 0.5;
    return rep;
}

PartnerPotentials partner_potentials(const OscillatorParams& par, double x) {
    if (!(x > 0.0))
        throw std::domain_error("partner_potentials: x must be positive");
    const double a = 0.5 * (1.0 - par.epsilon);
    const double b = par.gamma + 1.5;
    PartnerPotentials pot;
    pot.U = x + (par.gamma + 1.0) / x;
    pot.f = kummer_log_derivative(a, b, x);
    pot.f_prime = kummer_log_derivative_prime(a, b, x);
    pot.W = pot.U + pot.f;
    pot.V_plus = 0.5 * x * x + 0.5 * par.gamma * (par.gamma + 1.0) / (x * x) + par.gamma +
                 par.epsilon + 0.5;
    pot.V_minus = 0.5 * x * x + 0.5 * (par.gamma + 1.0) * (par.gamma + 2.0) / (x * x) +
                  par.gamma + par.epsilon - 0.5 - pot.f_prime;
    return pot;
}

double energy_level(const OscillatorParams& par, int n) {
    require_level(n);
    return 2.0 * n + 2.0 * par.gamma + 2.0 + par.epsilon;
}

LadderAmplitudes ladder_amplitudes(const OscillatorParams& par, int n) {
    require_level(n);
    return {std::sqrt(up_sq(par, n)), std::sqrt(down_sq(par, n))};
}

double bracket_diagonal(const OscillatorParams& par, int n) {
    require_level(n);
    return down_sq(par, n) - up_sq(par, n);
}

double bracket_polynomial(const OscillatorParams& par, double d) {
    const double g = par.gamma + par.epsilon + 0.5;
    const double cm1 = (2.0 * par.gamma + 1.0) / 2.0; // 2c - 1 with c = (2 gamma + 3)/4
    return -2.0 * (g * g - cm1 * cm1 + 1.0) * d + 12.0 * g * d * d - 16.0 * d * d * d;
}

GridSpectrum radial_grid_levels(const std::function<double(double)>& potential,
                                const GridSpectrumOptions& opt) {
    if (!(opt.r_max > 0.0) || opt.points < 16 || opt.levels < 1 ||
        opt.levels >= opt.points / 4)
        throw std::invalid_argument("radial_grid_levels: bad grid options");
    const std::vector<double> coarse =
        dirichlet_levels(potential, opt.r_max, opt.points, opt.levels);
    const std::vector<double> fine =
        dirichlet_levels(potential, opt.r_max, 2 * opt.points, opt.levels);
    GridSpectrum spectrum;
    spectrum.levels.resize(opt.levels);
    for (int m = 0; m < opt.levels; ++m) {
        spectrum.levels[m] = (4.0 * fine[m] - coarse[m]) / 3.0;
        spectrum.refinement_shift =
            std::max(spectrum.refinement_shift, std::abs(fine[m] - coarse[m]));
    }
    return spectrum;
}

GridSpectrum grid_spectrum(const OscillatorParams& par, Partner which,
                           const GridSpectrumOptions& opt) {
    const double gamma = par.gamma, epsilon = par.epsilon;
    if (which == Partner::plus) {
        const double g = gamma + epsilon + 0.5;
        return radial_grid_levels(
            [=](double x) {
                return 0.5 * x * x + 0.5 * gamma * (gamma + 1.0) / (x * x) + g;
            },
            opt);
    }
    const double a = 0.5 * (1.0 - epsilon);
    const double b = gamma + 1.5;
    return radial_grid_levels(
        [=](double x) {
            return 0.5 * x * x + 0.5 * (gamma + 1.0) * (gamma + 2.0) / (x * x) + gamma +
                   epsilon - 0.5 - kummer_log_derivative_prime(a, b, x);
        },
        opt);
}

} // namespace polysu11

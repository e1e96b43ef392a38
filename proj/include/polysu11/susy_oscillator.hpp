#pragma once

#include "polysu11/algebra.hpp"

#include <functional>
#include <vector>

namespace polysu11 {

// Broken-SUSY modified radial oscillator. The superpotential splits as
// W(x) = U(x) + f(x) with shape-invariant U(x) = x + (gamma+1)/x and
// f = d/dx log 1F1((1-epsilon)/2, gamma+3/2; -x^2); the partner spectra
// coincide, E_n = 2n + 2 gamma + 2 + epsilon.
struct OscillatorParams {
    double gamma = 0.25;
    double epsilon = -0.75;
};

// epsilon pinned to -gamma - 1/2 so the quadratic term of the ladder bracket
// vanishes and the pair closes the cubic deformed algebra; gamma in (0, 1/2)
OscillatorParams cubic_oscillator(double gamma);

struct ValidityReport {
    double g = 0.0;          // gamma + epsilon + 1/2: constant shift of V_+
    bool convergent = false; // epsilon (1 + 2 gamma) + 2 > 0: 1F1 stays positive
    bool cubic = false;      // g = 0, 3 - 4 gamma (gamma+1) > 0, 0 < gamma < 1/2
};
ValidityReport check_validity(const OscillatorParams& par);

struct PartnerPotentials {
    double U = 0.0;
    double f = 0.0;
    double f_prime = 0.0;
    double W = 0.0;       // U + f
    double V_plus = 0.0;  // x^2/2 + gamma (gamma+1)/(2 x^2) + g
    double V_minus = 0.0; // x^2/2 + (gamma+1)(gamma+2)/(2 x^2) + gamma + epsilon - 1/2 - f'
};
PartnerPotentials partner_potentials(const OscillatorParams& par, double x);

// E_n = 2n + 2 gamma + 2 + epsilon, shared by both partners
double energy_level(const OscillatorParams& par, int n);

// moduli of the second-order ladder matrix elements on the lower-partner
// tower: up(n) = sqrt(E_n (n+1)(n + gamma + 3/2) E_{n+1}), down(0) = 0
struct LadderAmplitudes {
    double up = 0.0;
    double down = 0.0;
};
LadderAmplitudes ladder_amplitudes(const OscillatorParams& par, int n);

// diagonal of the ladder bracket on level n, once telescoped from the
// amplitudes and once from the closed cubic polynomial in the half-energy
// d = E_n / 2; the two agree identically in the parameters
double bracket_diagonal(const OscillatorParams& par, int n);
double bracket_polynomial(const OscillatorParams& par, double d);

enum class Partner { plus, minus };

struct GridSpectrumOptions {
    double r_max = 12.0; // Dirichlet box edge; keep r_max^2 <= 600 for V_-
    int points = 4000;   // subintervals of (0, r_max)
    int levels = 6;
};

struct GridSpectrum {
    std::vector<double> levels;    // Richardson-extrapolated h -> h/2
    double refinement_shift = 0.0; // max |E(h/2) - E(h)|: resolution gauge
};

// lowest levels of -psi''/2 + V psi with psi(0) = psi(r_max) = 0 on a uniform
// second-order grid, eigenvalues located by Sturm bisection
GridSpectrum radial_grid_levels(const std::function<double(double)>& potential,
                                const GridSpectrumOptions& opt = {});
GridSpectrum grid_spectrum(const OscillatorParams& par, Partner which,
                           const GridSpectrumOptions& opt = {});

} // namespace polysu11

#pragma once

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

namespace polysu11 {

// Principal-branch log Gamma via a 9-term Lanczos kernel; reflection below
// Re z = 1/2. Throws PoleError at nonpositive integers. Relative accuracy is
// ~1e-14 in the right half-plane (the recurrence test pins 1e-13).
std::complex<double> log_gamma(std::complex<double> z);

template <typename Scalar>
struct PfqResultT {
    Scalar value;
    double tail_bound; // certified relative bound on the neglected tail
    int terms;         // number of terms actually summed
};
using PfqResult = PfqResultT<double>;
using PfqResultC = PfqResultT<std::complex<double>>;

// Generalized hypergeometric pFq by direct series with term recurrence and
// compensated summation. Stops once a geometric majorant certifies the tail
// below rel_tol. Throws PoleError for nonpositive-integer lower parameters,
// DivergenceError outside the disk of convergence (|z| >= 1 when p = q+1,
// any z != 0 when p > q+1), NonconvergenceError at the term cap.
PfqResult pfq(const std::vector<double>& a, const std::vector<double>& b, double z,
              double rel_tol = 1e-14, int max_terms = 200000);

// Same series with conjugate-closed complex parameter lists (needed when the
// deformation roots form complex pairs; the sum itself is then real).
PfqResultC pfq(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b, std::complex<double> z,
               double rel_tol = 1e-14, int max_terms = 200000);

enum class BesselKind { I, K };

// Modified Bessel functions for real order. I_nu: ascending series (nu > -1,
// x >= 0). K_nu: quadrature of the even integrand exp(-x cosh t) cosh(nu t)
// with step halving (any real nu via K_{-nu} = K_nu, x > 0).
double bessel_modified(BesselKind kind, double nu, double x);

// G^{q,0}_{r,q}(z | a_1..a_r ; b_1..b_q), the Mellin-Barnes class whose
// Mellin transform is prod_j Gamma(b_j + s) / prod_i Gamma(a_i + s).
struct MeijerSpec {
    std::vector<double> a; // upper parameter list (size r)
    std::vector<double> b; // lower parameter list (size q)
};

// q >= 1 and q > r required for the contour route; the single q = r = 1 case
// is admitted and dispatched to its closed kernel z^b (1-z)^{a-b-1}/Gamma(a-b)
// supported on 0 < z < 1. Everything else throws std::invalid_argument.
void validate(const MeijerSpec& ms);

// Vertical-line Mellin-Barnes evaluator. The abscissa is placed per octave
// band of z at max(c0, z_band^{1/(q-r)}) — right of all Gamma(b_j+s) poles and
// near the saddle of |Gamma-product * z^{-s}| so the superexponential decay at
// large z is captured without catastrophic cancellation. Grids are refined
// (T doubling, h halving) against fixed band-edge probes, so results are
// bit-stable regardless of evaluation order; the refined grids are cached.
class MeijerEvaluator {
  public:
    explicit MeijerEvaluator(MeijerSpec ms);

    double operator()(double z) const; // throws NonconvergenceError on failure
    const MeijerSpec& spec() const { return ms_; }

  private:
    struct Grid {
        double c = 0.0, h = 0.0, T = 0.0;
        double log_scale = 0.0;              // log |F(c)|; stored F is scaled by it
        std::vector<std::complex<double>> F; // F(c + i j h) / exp(log_scale), j = 0..M
        double abs_mass = 0.0;               // h/pi * (|F_0|/2 + sum_j |F_j|), scaled
    };

    Grid build_grid(int band) const;
    const Grid& grid_for(int band) const;
    // trapezoid sum of Re[F(s) e^{-i t ln z}] / pi on the cached grid,
    // omitting the z^{-c} prefactor; stride 2 gives the coarse-h check sum
    double reduced_sum(const Grid& g, double logz, int stride) const;

    MeijerSpec ms_;
    bool beta_case_ = false;
    int decay_ = 0;    // q - r
    double c_floor_ = 1.0;

    mutable std::map<int, Grid> cache_;
    mutable std::mutex mutex_;
};

// One-shot convenience wrapper (tests, spot checks).
double meijer_g(const MeijerSpec& ms, double z);

// f(x) = d/dx log 1F1(a, b; -x^2) and its x-derivative. Both are evaluated
// through ratios of the Kummer-transformed series 1F1(b-a, b+m; x^2), which
// have positive terms throughout the oscillator domain — the exponential
// factors cancel in the ratios, so there is no alternating-series
// cancellation at large x. Guarded for x^2 <= 700.
double kummer_log_derivative(double a, double b, double x);
double kummer_log_derivative_prime(double a, double b, double x);

} // namespace polysu11

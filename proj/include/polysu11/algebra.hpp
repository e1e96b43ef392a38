#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace polysu11 {

// Deformed su(1,1) defined by a polynomial structure function
//   Phi(x) = sum_{r=1..p} alpha_r x^r,  alpha_1 > 0, alpha_p != 0, k > 0,
// with commutation relations
//   [K0, K+-] = +-K+-,   [K+, K-] = Phi(K0(K0-1)) - Phi(K0(K0+1)).
// The lowest-weight representation lives on n = 0, 1, ... with
//   phi_n = Phi((k+n)(k+n-1)) - Phi(k(k-1)) = n (2k+n-1) chi_n.
struct AlgebraSpec {
    int p = 1;                 // polynomial degree of Phi
    std::vector<double> alpha; // alpha[r-1] multiplies x^r
    double k = 1.0;            // lowest weight, K0|k,0> = k|k,0>

    static constexpr int default_nmax = 256;
};

// Throws std::invalid_argument unless: p >= 1, alpha matches p, alpha_1 > 0,
// alpha_p != 0, k > 0, and Phi is increasing along the representation lattice
// (dPhi/dx > 0 sampled on 1024 points of [(k+1)k, (k+nmax)(k+nmax-1)], plus
// phi_1 > 0; Phi may dip between k(k-1) and (k+1)k without harming positivity).
void validate(const AlgebraSpec& spec, int nmax = AlgebraSpec::default_nmax);

// Phi(x) by Horner; domain is x >= -1/4 (the range of m(m-1) over real m).
double eval_structure_function(const AlgebraSpec& spec, double x);
double eval_structure_function_derivative(const AlgebraSpec& spec, double x);

// phi_n = Phi((k+n)(k+n-1)) - Phi(k(k-1)), n >= 0 (phi_0 = 0).
double structure_factor(const AlgebraSpec& spec, int n);

// chi_n = sum_{r=1..p} sum_{s=1..r} alpha_r [k(k-1)]^{r-s} [(k+n)(k+n-1)]^{s-1},
// a polynomial of degree 2p-2 in n with leading coefficient alpha_p.
// chi_0 is the direct evaluation at n = 0 (equals Phi'(k(k-1))), which may be
// negative; only chi_n for n >= 1 ever enters a factorial.
double deformation_factor(const AlgebraSpec& spec, int n);

// Ascending coefficients of chi_n as a polynomial in n (length 2p-1).
std::vector<double> deformation_polynomial(const AlgebraSpec& spec);

// The 2p-2 roots a_i of chi_n = alpha_p prod_i (n - a_i), conjugate-closed,
// Newton-polished, sorted by (Re, Im). Each root is validated by substitution
// into the double sum: |chi(a_i)| <= 1e-9 * (sum of term magnitudes).
std::vector<std::complex<double>> deformation_roots(const AlgebraSpec& spec);

// The p = 2 deformation realized by the conditionally solvable radial
// oscillator family: alpha = {3/4 - gamma(gamma+1), 4}, k = (2 gamma + 3)/4.
// The bracket is cubic in K0; real deformation roots require gamma < 1/2.
AlgebraSpec cubic_deformation(double gamma);

// log (z)_n = log Gamma(z+n) - log Gamma(z) accumulated as sum of factor logs
// (exp of it equals the direct product for any n). Returns nullopt when some
// factor z+j, 0 <= j < n, is exactly zero.
std::optional<std::complex<double>> pochhammer_log(std::complex<double> z, int n);

// Real fast path, requires z > 0.
double pochhammer_log_pos(double z, int n);

enum class FactorialKind { phi, chi };

// Cached-free view over the factor sequences of one spec; all methods are pure.
class StructureSequence {
  public:
    explicit StructureSequence(AlgebraSpec spec);

    const AlgebraSpec& spec() const { return spec_; }
    const std::vector<std::complex<double>>& roots() const { return roots_; }

    double phi(int n) const;
    double chi(int n) const;

    // alpha_p prod_i (n - a_i); residual imaginary part must vanish.
    double chi_from_roots(int n) const;

    // log [phi_n]! = sum_{l=1..n} log phi_l   (phi_l > 0 enforced)
    // log [chi_n]! = sum_{l=1..n} log chi_l   (chi_l > 0 enforced)
    double log_factorial(FactorialKind kind, int n) const;

    // log [chi_n]! = n log alpha_p + sum_i log (1-a_i)_n via the root
    // factorization; throws NonpositiveFactorError when the (necessarily real)
    // product fails to be positive.
    double log_chi_factorial_from_roots(int n) const;

  private:
    AlgebraSpec spec_;
    std::vector<std::complex<double>> roots_;
};

} // namespace polysu11

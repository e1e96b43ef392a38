#include "polysu11/algebra.hpp"
#include "polysu11/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace polysu11 {

namespace {

double lattice_point(const AlgebraSpec& spec, int n) {
    const double m = spec.k + n;
    return m * (m - 1.0);
}

// chi_n double sum evaluated at a (possibly complex) index.
std::complex<double> chi_double_sum(const AlgebraSpec& spec, std::complex<double> n,
                                    double* magnitude = nullptr) {
    const double A = spec.k * (spec.k - 1.0);
    const std::complex<double> X = (spec.k + n) * (spec.k + n - 1.0);
    // xpows[s-1] = X^{s-1}
    std::vector<std::complex<double>> xpows(spec.p, 1.0);
    for (int s = 2; s <= spec.p; ++s) xpows[s - 1] = xpows[s - 2] * X;
    std::complex<double> total = 0.0;
    double mag = 0.0;
    for (int r = 1; r <= spec.p; ++r) {
        double apow = 1.0; // A^{r-s}, s descending from r
        for (int s = r; s >= 1; --s) {
            const std::complex<double> term = spec.alpha[r - 1] * apow * xpows[s - 1];
            total += term;
            mag += std::abs(term);
            apow *= A;
        }
    }
    if (magnitude) *magnitude = mag;
    return total;
}

// real-index version avoiding the division trick (X may vanish at n = 1-k etc.)
double chi_double_sum_real(const AlgebraSpec& spec, int n) {
    const double A = spec.k * (spec.k - 1.0);
    const double m = spec.k + n;
    const double X = m * (m - 1.0);
    double total = 0.0;
    for (int r = 1; r <= spec.p; ++r) {
        double inner = 0.0;
        double apow = 1.0;
        for (int s = r; s >= 1; --s) {
            // A^{r-s} X^{s-1}
            double xpow = 1.0;
            for (int i = 0; i < s - 1; ++i) xpow *= X;
            inner += apow * xpow;
            apow *= A;
        }
        total += spec.alpha[r - 1] * inner;
    }
    return total;
}

std::vector<std::complex<double>> polynomial_roots(const std::vector<double>& coeffs) {
    // roots of c0 + c1 n + ... + cd n^d via the companion matrix
    int d = static_cast<int>(coeffs.size()) - 1;
    while (d > 0 && coeffs[d] == 0.0) --d;
    if (d <= 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -coeffs[i] / coeffs[d];
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(d);
    for (int i = 0; i < d; ++i) roots[i] = solver.eigenvalues()[i];
    return roots;
}

std::complex<double> polyval(const std::vector<double>& c, std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
    return v;
}

std::complex<double> polyval_derivative(const std::vector<double>& c, std::complex<double> x) {
    std::complex<double> v = 0.0;
    for (int i = static_cast<int>(c.size()) - 1; i >= 1; --i) v = v * x + double(i) * c[i];
    return v;
}

} // namespace

void validate(const AlgebraSpec& spec, int nmax) {
    std::ostringstream oss;
    if (spec.p < 1) throw std::invalid_argument("algebra spec: p must be >= 1");
    if (static_cast<int>(spec.alpha.size()) != spec.p)
        throw std::invalid_argument("algebra spec: alpha must have exactly p entries");
    if (!(spec.alpha.front() > 0.0))
        throw std::invalid_argument("algebra spec: alpha_1 must be positive");
    if (spec.alpha.back() == 0.0)
        throw std::invalid_argument("algebra spec: alpha_p must be nonzero");
    if (!(spec.k > 0.0)) throw std::invalid_argument("algebra spec: k must be positive");

    // increasing along the representation lattice: phi_1 > 0 and dPhi/dx > 0
    // on [(k+1)k, (k+nmax)(k+nmax-1)]. Phi may decrease between k(k-1) and
    // (k+1)k without breaking phi_n > 0.
    if (!(structure_factor(spec, 1) > 0.0))
        throw std::invalid_argument("algebra spec: phi_1 <= 0, representation does not exist");
    const double lo = lattice_point(spec, 1);
    const double hi = lattice_point(spec, nmax);
    constexpr int grid = 1024;
    for (int i = 0; i < grid; ++i) {
        const double x = lo + (hi - lo) * i / (grid - 1);
        if (!(eval_structure_function_derivative(spec, x) > 0.0)) {
            oss << "algebra spec: dPhi/dx <= 0 at x = " << x
                << "; structure function not increasing on the lattice";
            throw std::invalid_argument(oss.str());
        }
    }
}

double eval_structure_function(const AlgebraSpec& spec, double x) {
    if (x < -0.25)
        throw std::domain_error("structure function: x < -1/4 is outside m(m-1) range");
    double v = 0.0;
    for (int r = spec.p; r >= 1; --r) v = (v + spec.alpha[r - 1]) * x;
    return v;
}

double eval_structure_function_derivative(const AlgebraSpec& spec, double x) {
    double v = 0.0;
    for (int r = spec.p; r >= 1; --r) v = v * x + r * spec.alpha[r - 1];
    return v;
}

double structure_factor(const AlgebraSpec& spec, int n) {
    if (n < 0) throw std::domain_error("structure factor: n must be >= 0");
    if (n == 0) return 0.0;
    return eval_structure_function(spec, lattice_point(spec, n)) -
           eval_structure_function(spec, lattice_point(spec, 0));
}

double deformation_factor(const AlgebraSpec& spec, int n) {
    if (n < 0) throw std::domain_error("deformation factor: n must be >= 0");
    return chi_double_sum_real(spec, n);
}

std::vector<double> deformation_polynomial(const AlgebraSpec& spec) {
    // chi as a polynomial in n: accumulate powers of Q(n) = n^2 + (2k-1) n + A
    const double A = spec.k * (spec.k - 1.0);
    const std::vector<double> Q = {A, 2.0 * spec.k - 1.0, 1.0};
    std::vector<double> qpow = {1.0};                  // Q^0
    std::vector<double> coeffs(2 * spec.p - 1, 0.0);   // degree 2p-2
    for (int s = 1; s <= spec.p; ++s) {
        // contribution of X^{s-1} with weight w_s = sum_{r=s..p} alpha_r A^{r-s}
        double w = 0.0;
        double apow = 1.0;
        for (int r = s; r <= spec.p; ++r) {
            w += spec.alpha[r - 1] * apow;
            apow *= A;
        }
        for (std::size_t i = 0; i < qpow.size(); ++i) coeffs[i] += w * qpow[i];
        if (s < spec.p) {
            // qpow *= Q
            std::vector<double> next(qpow.size() + 2, 0.0);
            for (std::size_t i = 0; i < qpow.size(); ++i)
                for (std::size_t j = 0; j < 3; ++j) next[i + j] += qpow[i] * Q[j];
            qpow.swap(next);
        }
    }
    return coeffs;
}

AlgebraSpec cubic_deformation(double gamma) {
    if (!(gamma > 0.0 && gamma < 0.5))
        throw std::domain_error("cubic_deformation: gamma must lie in (0, 1/2)");
    return {2, {0.75 - gamma * (gamma + 1.0), 4.0}, 0.25 * (2.0 * gamma + 3.0)};
}

std::vector<std::complex<double>> deformation_roots(const AlgebraSpec& spec) {
    if (spec.p == 1) return {};
    const std::vector<double> coeffs = deformation_polynomial(spec);
    std::vector<std::complex<double>> roots = polynomial_roots(coeffs);

    // Newton-polish against the exact coefficients
    for (auto& r : roots) {
        for (int it = 0; it < 6; ++it) {
            const std::complex<double> f = polyval(coeffs, r);
            const std::complex<double> df = polyval_derivative(coeffs, r);
            if (std::abs(df) == 0.0) break;
            const std::complex<double> step = f / df;
            r -= step;
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(r))) break;
        }
    }

    // enforce conjugate closure: collapse tiny imaginary parts, then rebuild
    // complex roots from the Im > 0 representatives
    std::vector<std::complex<double>> cleaned;
    std::vector<std::complex<double>> upper;
    for (auto& r : roots) {
        if (std::abs(r.imag()) <= 1e-10 * (1.0 + std::abs(r.real())))
            cleaned.emplace_back(r.real(), 0.0);
        else if (r.imag() > 0.0)
            upper.push_back(r);
    }
    for (const auto& u : upper) {
        cleaned.push_back(u);
        cleaned.push_back(std::conj(u));
    }
    if (cleaned.size() != roots.size())
        throw NonconvergenceError("deformation roots: conjugate pairing failed");

    std::sort(cleaned.begin(), cleaned.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });

    // validate by substitution into the double sum
    for (const auto& r : cleaned) {
        double mag = 0.0;
        const std::complex<double> residual = chi_double_sum(spec, r, &mag);
        if (std::abs(residual) > 1e-9 * std::max(mag, 1.0))
            throw NonconvergenceError("deformation roots: root fails double-sum residual check");
    }
    return cleaned;
}

std::optional<std::complex<double>> pochhammer_log(std::complex<double> z, int n) {
    if (n < 0) throw std::domain_error("pochhammer: n must be >= 0");
    std::complex<double> acc = 0.0;
    for (int j = 0; j < n; ++j) {
        const std::complex<double> factor = z + double(j);
        if (factor == std::complex<double>(0.0, 0.0)) return std::nullopt;
        acc += std::log(factor);
    }
    return acc;
}

double pochhammer_log_pos(double z, int n) {
    if (n < 0) throw std::domain_error("pochhammer: n must be >= 0");
    if (!(z > 0.0)) throw std::domain_error("pochhammer: fast path requires z > 0");
    return std::lgamma(z + n) - std::lgamma(z);
}

StructureSequence::StructureSequence(AlgebraSpec spec) : spec_(std::move(spec)) {
    validate(spec_);
    roots_ = deformation_roots(spec_);
}

double StructureSequence::phi(int n) const { return structure_factor(spec_, n); }

double StructureSequence::chi(int n) const { return deformation_factor(spec_, n); }

double StructureSequence::chi_from_roots(int n) const {
    if (spec_.p == 1) return spec_.alpha[0];
    std::complex<double> prod = spec_.alpha.back();
    for (const auto& a : roots_) prod *= (std::complex<double>(n, 0.0) - a);
    if (std::abs(prod.imag()) > 1e-10 * (1.0 + std::abs(prod)))
        throw NonconvergenceError("chi from roots: nonreal product");
    return prod.real();
}

double StructureSequence::log_factorial(FactorialKind kind, int n) const {
    if (n < 0) throw std::domain_error("generalized factorial: n must be >= 0");
    double acc = 0.0;
    for (int l = 1; l <= n; ++l) {
        const double factor = (kind == FactorialKind::phi) ? phi(l) : chi(l);
        if (!(factor > 0.0))
            throw NonpositiveFactorError("generalized factorial: nonpositive factor at l = " +
                                         std::to_string(l));
        acc += std::log(factor);
    }
    return acc;
}

double StructureSequence::log_chi_factorial_from_roots(int n) const {
    if (n < 0) throw std::domain_error("generalized factorial: n must be >= 0");
    if (n == 0) return 0.0;
    // [chi_n]! = alpha_p^n prod_i (1 - a_i)_n; the total is real positive for a
    // valid spec even when individual real-root factors are negative, so track
    // everything in complex logs and demand the imaginary part is a multiple
    // of 2 pi.
    std::complex<double> acc = double(n) * std::log(std::complex<double>(spec_.alpha.back(), 0.0));
    for (const auto& a : roots_) {
        const auto term = pochhammer_log(std::complex<double>(1.0, 0.0) - a, n);
        if (!term) throw NonpositiveFactorError("chi factorial: zero factor in root product");
        acc += *term;
    }
    constexpr double tau = 6.283185307179586476925;
    const double frac = std::remainder(acc.imag(), tau);
    if (std::abs(frac) > 1e-8 * (1.0 + std::abs(acc)))
        throw NonpositiveFactorError("chi factorial: root product not positive");
    return acc.real();
}

} // namespace polysu11

#include "polysu11/special_functions.hpp"

#include "polysu11/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace polysu11 {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double half_log_two_pi = 0.91893853320467274178;

// Godfrey's coefficients for g = 7, 9 terms.
constexpr double lanczos_c[9] = {
    0.99999999999980993,    676.5203681218851,      -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6,  1.5056327351493116e-7,
};

bool nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }
bool nonpositive_integer(const std::complex<double>& z) {
    return z.imag() == 0.0 && nonpositive_integer(z.real());
}

double abs_of(double x) { return std::abs(x); }
double abs_of(const std::complex<double>& z) { return std::abs(z); }

// Rigorous sup over m' >= m of the term ratio |t_{m'+1}/t_{m'}|, assuming
// m exceeds every parameter magnitude: |a+m'| <= m'+|a| and |b+m'| >= m'-|b|,
// and each such bound factor decreases monotonically toward 1 on [m, inf).
template <typename Scalar>
double ratio_majorant(const std::vector<Scalar>& a, const std::vector<Scalar>& b, double az,
                      int m) {
    double r = az;
    for (const auto& ai : a)
        r *= m + abs_of(ai);
    for (const auto& bj : b) {
        const double d = m - abs_of(bj);
        if (d <= 0.0)
            return std::numeric_limits<double>::infinity();
        r /= d;
    }
    return r / (m + 1.0);
}

template <typename Scalar>
PfqResultT<Scalar> pfq_impl(const std::vector<Scalar>& a, const std::vector<Scalar>& b, Scalar z,
                            double rel_tol, int max_terms) {
    for (const auto& bj : b)
        if (nonpositive_integer(bj))
            throw PoleError("pfq: lower parameter is a nonpositive integer");
    const double az = abs_of(z);
    if (az == 0.0)
        return {Scalar(1.0), 0.0, 1};
    if (a.size() > b.size() + 1)
        throw DivergenceError("pfq: series diverges for p > q+1 and z != 0");
    if (a.size() == b.size() + 1 && az >= 1.0)
        throw DivergenceError("pfq: |z| >= 1 is outside the p = q+1 convergence disk");

    double gate = 8.0;
    for (const auto& ai : a)
        gate = std::max(gate, 2.0 * abs_of(ai) + 8.0);
    for (const auto& bj : b)
        gate = std::max(gate, 2.0 * abs_of(bj) + 8.0);

    Scalar sum(1.0), comp(0.0), term(1.0);
    for (int n = 0; n + 1 < max_terms; ++n) {
        Scalar step(1.0);
        for (const auto& ai : a)
            step *= ai + Scalar(double(n));
        for (const auto& bj : b)
            step /= bj + Scalar(double(n));
        term *= step * z / Scalar(double(n + 1));

        const Scalar y = term - comp; // compensated summation
        const Scalar t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        const int m = n + 1; // index of the term just added
        if (term == Scalar(0.0))
            return {sum, 0.0, m + 1}; // a truncating upper parameter: sum is exact
        if (m >= gate) {
            const double rbar = ratio_majorant(a, b, az, m);
            if (rbar < 1.0) {
                const double tail = abs_of(term) * rbar / (1.0 - rbar);
                const double scale = std::max(abs_of(sum), 1e-300);
                if (tail <= rel_tol * scale)
                    return {sum, tail / scale, m + 1};
            }
        }
    }
    throw NonconvergenceError("pfq: no tail certificate within the term cap");
}

double log_cosh(double u) {
    u = std::abs(u);
    if (u > 20.0)
        return u + std::log1p(std::exp(-2.0 * u)) - 0.69314718055994530942;
    return std::log(std::cosh(u));
}

} // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0.0 && nonpositive_integer(z.real()))
        throw PoleError("log_gamma: pole at a nonpositive integer");
    if (z.real() < 0.5) {
        // reflection: imaginary part comes out modulo 2*pi; exp() is exact
        const std::complex<double> s = std::sin(pi * z);
        return std::log(pi) - std::log(s) - log_gamma(1.0 - z);
    }
    std::complex<double> x = lanczos_c[0];
    for (int i = 1; i < 9; ++i)
        x += lanczos_c[i] / (z - 1.0 + double(i));
    const std::complex<double> t = z + 6.5;
    return half_log_two_pi + (z - 0.5) * std::log(t) - t + std::log(x);
}

PfqResult pfq(const std::vector<double>& a, const std::vector<double>& b, double z,
              double rel_tol, int max_terms) {
    return pfq_impl(a, b, z, rel_tol, max_terms);
}

PfqResultC pfq(const std::vector<std::complex<double>>& a,
               const std::vector<std::complex<double>>& b, std::complex<double> z,
               double rel_tol, int max_terms) {
    return pfq_impl(a, b, z, rel_tol, max_terms);
}

double bessel_modified(BesselKind kind, double nu, double x) {
    if (kind == BesselKind::I) {
        if (!(nu > -1.0))
            throw std::domain_error("bessel I: ascending series needs nu > -1");
        if (x < 0.0)
            throw std::domain_error("bessel I: need x >= 0");
        if (x == 0.0) {
            if (nu == 0.0)
                return 1.0;
            if (nu > 0.0)
                return 0.0;
            throw std::domain_error("bessel I: divergent at x = 0 for nu < 0");
        }
        const double q = 0.25 * x * x;
        double term = 1.0, sum = 1.0;
        for (int m = 1; m <= 40000; ++m) {
            term *= q / (m * (nu + m));
            sum += term;
            if (term <= 1e-17 * sum)
                return std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0)) * sum;
        }
        throw NonconvergenceError("bessel I: series stalled");
    }

    if (!(x > 0.0))
        throw std::domain_error("bessel K: need x > 0");
    const double anu = std::abs(nu); // K_{-nu} = K_nu
    const auto trap = [&](double h) {
        // int_0^inf exp(-x cosh t) cosh(nu t) dt, trapezoid on the half line
        double s = 0.5 * std::exp(-x);
        for (int j = 1; j <= 400000; ++j) {
            const double t = j * h;
            const double e = -x * std::cosh(t) + log_cosh(anu * t);
            if (t > 1.0 && e < std::log(std::max(s, 1e-300)) - 46.0)
                break;
            s += std::exp(e);
        }
        return s * h;
    };
    double prev = trap(0.25);
    for (double h = 0.125; h >= 1.0 / 512.0; h *= 0.5) {
        const double cur = trap(h);
        if (std::abs(cur - prev) <= 1e-13 * std::max(std::abs(cur), 1e-300))
            return cur;
        prev = cur;
    }
    throw NonconvergenceError("bessel K: trapezoid refinement stalled");
}

void validate(const MeijerSpec& ms) {
    const std::size_t q = ms.b.size(), r = ms.a.size();
    if (q < 1)
        throw std::invalid_argument("meijer: need at least one lower parameter");
    if (q == 1 && r == 1)
        return; // closed beta-type kernel
    if (r >= q)
        throw std::invalid_argument("meijer: contour route needs fewer upper than lower parameters");
}

MeijerEvaluator::MeijerEvaluator(MeijerSpec ms) : ms_(std::move(ms)) {
    validate(ms_);
    beta_case_ = (ms_.b.size() == 1 && ms_.a.size() == 1);
    decay_ = int(ms_.b.size()) - int(ms_.a.size());
    const double bmin = *std::min_element(ms_.b.begin(), ms_.b.end());
    // 0.25 to the right of the rightmost pole of prod Gamma(b_j + s); hugging
    // the pole front keeps z^{-c} small so tiny z does not cancel away
    c_floor_ = 0.25 - bmin;
}

MeijerEvaluator::Grid MeijerEvaluator::build_grid(int band) const {
    Grid g;
    const double zhi = std::ldexp(1.0, band + 1);
    const double log_zlo = band * 0.69314718055994530942;
    const double log_zhi = (band + 1) * 0.69314718055994530942;
    // saddle abscissa ~ z^{1/(q-r)} once z is large; pole-hugging otherwise
    g.c = std::max(c_floor_, std::pow(zhi, 1.0 / decay_));
    g.T = 40.0;
    g.h = 0.05;

    const auto fill = [&]() {
        const int M = int(std::ceil(g.T / g.h));
        g.F.assign(std::size_t(M) + 1, {});
        std::complex<double> le0(0.0, 0.0);
        for (double bj : ms_.b)
            le0 += log_gamma(std::complex<double>(g.c + bj, 0.0));
        for (double ai : ms_.a)
            le0 -= log_gamma(std::complex<double>(g.c + ai, 0.0));
        g.log_scale = le0.real(); // |F| peaks on the real axis; scaled F stays <= 1
        g.F[0] = 1.0;
        double mass = 0.5;
        for (int j = 1; j <= M; ++j) {
            const std::complex<double> s(g.c, j * g.h);
            std::complex<double> le(0.0, 0.0);
            for (double bj : ms_.b)
                le += log_gamma(s + bj);
            for (double ai : ms_.a)
                le -= log_gamma(s + ai);
            g.F[std::size_t(j)] = std::exp(le - g.log_scale);
            mass += std::abs(g.F[std::size_t(j)]);
        }
        g.abs_mass = mass * g.h / pi;
    };
    const auto tail_fraction = [&]() {
        const std::size_t M = g.F.size();
        const std::size_t start = M - std::max<std::size_t>(M / 10, 1);
        double tail = 0.0, total = 0.0;
        for (std::size_t j = 0; j < M; ++j) {
            const double aj = std::abs(g.F[j]);
            total += aj;
            if (j >= start)
                tail += aj;
        }
        return tail / std::max(total, 1e-300);
    };
    const auto probe_ok = [&](double logz) {
        const double s1 = reduced_sum(g, logz, 1);
        const double s2 = reduced_sum(g, logz, 2);
        return std::abs(s1 - s2) <= 1e-10 * std::abs(s1) + 1e-11 * g.abs_mass;
    };

    fill();
    while (tail_fraction() > 1e-11) {
        if (g.T >= 2560.0)
            throw NonconvergenceError("meijer: contour tail not closing");
        g.T *= 2.0;
        fill();
    }
    // refine the step against both octave edges; grids depend only on the
    // band index, so results are bit-stable across call orders and threads
    while (!(probe_ok(log_zlo) && probe_ok(log_zhi))) {
        if (g.h <= 1e-4)
            throw NonconvergenceError("meijer: contour step refinement stalled");
        g.h *= 0.5;
        fill();
    }
    return g;
}

const MeijerEvaluator::Grid& MeijerEvaluator::grid_for(int band) const {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto it = cache_.find(band);
        if (it != cache_.end())
            return it->second;
    }
    Grid g = build_grid(band); // deterministic, so a racing rebuild is identical
    std::lock_guard<std::mutex> lock(mutex_);
    return cache_.emplace(band, std::move(g)).first->second;
}

double MeijerEvaluator::reduced_sum(const Grid& g, double logz, int stride) const {
    double acc = 0.5 * g.F[0].real();
    const std::complex<double> rot = std::polar(1.0, -stride * g.h * logz);
    std::complex<double> cur(1.0, 0.0);
    int steps = 0;
    for (std::size_t j = std::size_t(stride); j < g.F.size(); j += std::size_t(stride)) {
        cur *= rot;
        if (++steps % 128 == 0) // resync the rotation recurrence
            cur = std::polar(1.0, -double(j) * g.h * logz);
        acc += (g.F[j] * cur).real();
    }
    return acc * g.h * stride / pi;
}

double MeijerEvaluator::operator()(double z) const {
    if (!(z > 0.0))
        throw std::domain_error("meijer: argument must be positive");
    if (beta_case_) {
        if (z >= 1.0)
            return 0.0;
        const double d = ms_.a[0] - ms_.b[0];
        if (nonpositive_integer(d))
            return 0.0; // 1/Gamma kills the kernel
        return std::exp(ms_.b[0] * std::log(z) + (d - 1.0) * std::log1p(-z) - std::lgamma(d));
    }
    int exp2 = 0;
    std::frexp(z, &exp2);
    const Grid& g = grid_for(exp2 - 1); // 2^band <= z < 2^{band+1}
    const double logz = std::log(z);
    const double s1 = reduced_sum(g, logz, 1);
    const double s2 = reduced_sum(g, logz, 2);
    if (std::abs(s1 - s2) > 1e-8 * std::abs(s1) + 1e-9 * g.abs_mass)
        throw NonconvergenceError("meijer: cached grid failed the interior accuracy check");
    const double as = std::abs(s1);
    if (as == 0.0)
        return 0.0;
    const double out = std::exp(g.log_scale - g.c * logz + std::log(as));
    return s1 > 0.0 ? out : -out;
}

double meijer_g(const MeijerSpec& ms, double z) { return MeijerEvaluator(ms)(z); }

namespace {

// ratio 1F1(b-a, b+shift; x^2) / 1F1(b-a, b; x^2); the Kummer transform makes
// both series positive-term for b > a, so the ratio is cancellation-free
double kummer_ratio(double a, double b, double t, int shift, double denom) {
    return pfq({b - a}, {b + double(shift)}, t).value / denom;
}

double kummer_base(double a, double b, double x, double& t) {
    if (!(b > 0.0))
        throw std::domain_error("kummer log-derivative: need b > 0");
    t = x * x;
    if (t > 600.0)
        throw std::domain_error("kummer log-derivative: x^2 > 600 overflows the series");
    const double m0 = pfq({b - a}, {b}, t).value;
    if (!(m0 > 0.0))
        throw NonpositiveFactorError("kummer log-derivative: 1F1(b-a, b; x^2) is not positive");
    return m0;
}

} // namespace

double kummer_log_derivative(double a, double b, double x) {
    double t = 0.0;
    const double m0 = kummer_base(a, b, x, t);
    const double r1 = kummer_ratio(a, b, t, 1, m0);
    return -2.0 * x * (a / b) * r1;
}

double kummer_log_derivative_prime(double a, double b, double x) {
    double t = 0.0;
    const double m0 = kummer_base(a, b, x, t);
    const double r1 = kummer_ratio(a, b, t, 1, m0);
    const double r2 = kummer_ratio(a, b, t, 2, m0);
    const double ab = a / b;
    return -2.0 * ab * r1 + 4.0 * t * ab * ((a + 1.0) / (b + 1.0)) * r2 - 4.0 * t * ab * ab * r1 * r1;
}

} // namespace polysu11

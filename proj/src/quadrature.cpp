#include "polysu11/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace polysu11 {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 abscissae).
// xgk[1], xgk[3], xgk[5], xgk[7] are the embedded Gauss nodes.
constexpr double xgk[8] = {0.991455371120813, 0.949107912342759, 0.864864423359769,
                           0.741531185599394, 0.586087235467691, 0.405845151377397,
                           0.207784955007898, 0.0};
constexpr double wgk[8] = {0.022935322010529, 0.063092092629979, 0.104790010322250,
                           0.140653259715525, 0.169004726639267, 0.190350578064785,
                           0.204432940075298, 0.209482141084728};
constexpr double wg[4] = {0.129484966168870, 0.279705391489277, 0.381830050505119,
                          0.417959183673469};

struct Panel {
    double value = 0.0;
    double error = 0.0;
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi, int& evals) {
    const double mid = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(mid);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * xgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += wgk[i] * fsum;
        if (i % 2 == 1)
            gauss += wg[i / 2] * fsum;
    }
    evals += 15;
    return {kron * half, std::abs(kron - gauss) * std::abs(half)};
}

} // namespace

QuadratureResult integrate_gk(const std::function<double(double)>& f, double lo, double hi,
                              double abs_tol, double rel_tol, int max_depth) {
    if (!(lo < hi))
        throw std::invalid_argument("integrate_gk: need lo < hi");
    QuadratureResult out;
    const Panel whole = eval_panel(f, lo, hi, out.evaluations);
    const double budget = abs_tol + rel_tol * std::abs(whole.value);

    struct Item {
        double lo, hi;
        Panel p;
        int depth;
    };
    std::vector<Item> stack{{lo, hi, whole, 0}};
    const double width = hi - lo;
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        const double share = budget * (it.hi - it.lo) / width;
        if (it.p.error <= share || it.depth >= max_depth) {
            out.value += it.p.value;
            out.error_estimate += it.p.error;
            out.max_depth = std::max(out.max_depth, it.depth);
            continue;
        }
        const double mid = 0.5 * (it.lo + it.hi);
        stack.push_back({it.lo, mid, eval_panel(f, it.lo, mid, out.evaluations), it.depth + 1});
        stack.push_back({mid, it.hi, eval_panel(f, mid, it.hi, out.evaluations), it.depth + 1});
    }
    return out;
}

} // namespace polysu11

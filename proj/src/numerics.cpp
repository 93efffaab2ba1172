#include "ncfffd/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace ncfffd {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0) && !(rel_tol > 0.0))
        throw std::invalid_argument("Tolerance: abs_tol or rel_tol must be positive");
    if (max_iter < 1)
        throw std::invalid_argument("Tolerance: max_iter must be >= 1");
}

namespace {

// Series expansion of P(a,x), converges fast for x < a+1.
double gamma_p_series(double a, double x) {
    const double gln = std::lgamma(a);
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int n = 0; n < 500; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-16)
            return sum * std::exp(-x + a * std::log(x) - gln);
    }
    throw std::runtime_error("reg_gamma: series did not converge");
}

// Lentz continued fraction for Q(a,x), converges fast for x >= a+1.
double gamma_q_cf(double a, double x) {
    const double gln = std::lgamma(a);
    const double fpmin = std::numeric_limits<double>::min() / 1e-16;
    double b = x + 1.0 - a;
    double c = 1.0 / fpmin;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::fabs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return h * std::exp(-x + a * std::log(x) - gln);
    }
    throw std::runtime_error("reg_gamma: continued fraction did not converge");
}

void check_gamma_args(double a, double x) {
    if (std::isnan(a) || std::isnan(x) || std::isinf(a))
        throw std::invalid_argument("reg_gamma: non-finite argument");
    if (a <= 0.0)
        throw std::invalid_argument("reg_gamma: shape must be positive");
    if (x < 0.0)
        throw std::invalid_argument("reg_gamma: argument must be nonnegative");
}

}  // namespace

double reg_gamma_lower(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double p = (x < a + 1.0) ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
    return clamp01(p);
}

double reg_gamma_upper(double a, double x) {
    check_gamma_args(a, x);
    if (x == 0.0) return 1.0;
    if (std::isinf(x)) return 0.0;
    const double q = (x < a + 1.0) ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
    return clamp01(q);
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   const Tolerance& tol) {
    tol.validate();
    if (!(lo < hi))
        throw std::invalid_argument("bisect_root: invalid bracket");
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::invalid_argument("bisect_root: no sign change over bracket");
    for (int i = 0; i < tol.max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        const double width = hi - lo;
        if (width < tol.abs_tol || width < tol.rel_tol * std::fabs(mid))
            return 0.5 * (lo + hi);
    }
    throw std::runtime_error("bisect_root: no convergence within max_iter");
}

}  // namespace ncfffd

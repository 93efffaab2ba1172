#pragma once

#include <functional>
#include <limits>

namespace ncfffd {

struct Tolerance {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    int max_iter = 200;

    void validate() const;
};

// Regularized incomplete gamma functions.
//   reg_gamma_lower(a, x) = P(a, x) = gamma(a, x) / Gamma(a)
//   reg_gamma_upper(a, x) = Q(a, x) = Gamma(a, x) / Gamma(a)
// Requires a > 0 and x >= 0; x = +inf is accepted and maps to P = 1, Q = 0.
double reg_gamma_lower(double a, double x);
double reg_gamma_upper(double a, double x);

// Root of f on [lo, hi]; f(lo) and f(hi) must differ in sign.
double bisect_root(const std::function<double(double)>& f, double lo, double hi,
                   const Tolerance& tol = Tolerance{});

inline double clamp01(double p) {
    if (p < 0.0) return 0.0;
    if (p > 1.0) return 1.0;
    return p;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace ncfffd

#include "ncfffd/relay.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfffd/numerics.hpp"

namespace ncfffd {

std::pair<double, double> omegas(const SystemConfig& cfg, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw std::invalid_argument("omegas: alpha must lie in (0,1)");
    const double n_o = cfg.noise_energy();
    const double si = cfg.lambda_linear() * (1.0 + alpha) / 2.0;
    const double omega0 = si + n_o;
    const double omega1 = cfg.sigma2_AC * (1.0 - alpha) + si + n_o;
    return {omega0, omega1};
}

double charlie_threshold(double omega0, double omega1, int n_c) {
    if (!(omega0 > 0.0) || !(omega1 > 0.0))
        throw std::invalid_argument("charlie_threshold: variances must be positive");
    if (omega0 == omega1) throw std::domain_error("charlie_threshold: degenerate variances");
    return n_c * (omega0 * omega1 / (omega0 - omega1)) * std::log(omega0 / omega1);
}

CrossoverProbs crossover_probs(const SystemConfig& cfg, double alpha) {
    return crossover_probs(cfg, alpha, cfg.N_C);
}

CrossoverProbs crossover_probs(const SystemConfig& cfg, double alpha, int n_c) {
    const auto [omega0, omega1] = omegas(cfg, alpha);
    const double nu = charlie_threshold(omega0, omega1, n_c);
    CrossoverProbs out;
    out.p01 = reg_gamma_upper(static_cast<double>(n_c), nu / omega0);
    out.p10 = reg_gamma_lower(static_cast<double>(n_c), nu / omega1);
    out.p00 = 1.0 - out.p01;
    out.p11 = 1.0 - out.p10;
    return out;
}

}  // namespace ncfffd

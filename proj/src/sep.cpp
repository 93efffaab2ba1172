#include "ncfffd/sep.hpp"

#include <cmath>
#include <stdexcept>

#include "ncfffd/numerics.hpp"

namespace ncfffd {

double pairwise_threshold(double s_a, double s_b, int n_b) {
    if (!(s_a > 0.0) || !(s_b > 0.0))
        throw std::invalid_argument("pairwise_threshold: levels must be positive");
    if (s_a == s_b) throw std::domain_error("pairwise_threshold: degenerate levels");
    return n_b * (s_a * s_b / (s_b - s_a)) * std::log(s_b / s_a);
}

std::vector<double> pairwise_thresholds(const std::vector<double>& s, int n_b) {
    std::vector<double> rho(s.size() - 1);
    for (size_t l = 0; l + 1 < s.size(); ++l) rho[l] = pairwise_threshold(s[l], s[l + 1], n_b);
    return rho;
}

double level_error(double scale, int l, const std::vector<double>& thresholds, int n_b) {
    const int last = static_cast<int>(thresholds.size());  // = 2M-1
    if (scale < 0.0 && scale >= -1e-12) scale = 0.0;  // boundary round-off
    if (scale < 0.0) throw std::invalid_argument("level_error: negative scale");
    double p = 0.0;
    const double nb = static_cast<double>(n_b);
    if (l >= 1) p += reg_gamma_lower(nb, scale > 0.0 ? thresholds[l - 1] / scale : kInf);
    if (l <= last - 1) p += reg_gamma_upper(nb, scale > 0.0 ? thresholds[l] / scale : kInf);
    return clamp01(p);
}

std::vector<std::pair<double, double>> per_level_errors(const SumLevels& levels, int n_b) {
    const auto rho = pairwise_thresholds(levels.s, n_b);
    std::vector<std::pair<double, double>> out(levels.size());
    for (int l = 0; l < levels.size(); ++l)
        out[l] = {level_error(levels.s[l], l, rho, n_b), level_error(levels.s_bar[l], l, rho, n_b)};
    return out;
}

namespace {

struct Assembled {
    double exact;
    double upper;
    double approx;
};

// Combines per-level terms with the crossover model over the i=0 / i=1
// index partitions.
Assembled assemble(const std::vector<std::pair<double, double>>& terms, const CrossoverProbs& cp,
                   int m) {
    double exact = 0.0, upper = 0.0, approx = 0.0;
    for (int j = 1; j <= m; ++j) {
        const int l0 = index_from_pair(0, j, m) - 1;
        const int l1 = index_from_pair(1, j, m) - 1;
        exact += cp.p00 * terms[l0].first + cp.p01 * terms[l0].second;
        exact += cp.p11 * terms[l1].first + cp.p10 * terms[l1].second;
        upper += cp.p00 * terms[l0].first + cp.p11 * terms[l1].first;
        approx += terms[l0].first + terms[l1].first;
    }
    upper += m * (cp.p01 + cp.p10);
    const double inv = 1.0 / (2.0 * m);
    return {clamp01(exact * inv), clamp01(upper * inv), clamp01(approx * inv)};
}

}  // namespace

SepBreakdown sep_exact(const Constellation& c, const SystemConfig& cfg) {
    const auto levels = build_sum_levels(c, cfg.noise_energy());
    SepBreakdown out;
    out.thresholds = pairwise_thresholds(levels.s, cfg.N_B);
    out.per_level.resize(levels.size());
    for (int l = 0; l < levels.size(); ++l)
        out.per_level[l] = {level_error(levels.s[l], l, out.thresholds, cfg.N_B),
                            level_error(levels.s_bar[l], l, out.thresholds, cfg.N_B)};
    out.crossovers = crossover_probs(cfg, c.alpha);
    const auto a = assemble(out.per_level, out.crossovers, cfg.M);
    out.p_e = a.exact;
    out.p_e_prime = a.upper;
    out.p_e_approx = a.approx;
    return out;
}

double sep_upper(const Constellation& c, const SystemConfig& cfg) {
    return sep_exact(c, cfg).p_e_prime;
}

double sep_approx(const SumLevels& levels, int n_b) {
    const auto terms = per_level_errors(levels, n_b);
    double sum = 0.0;
    for (const auto& t : terms) sum += t.first;
    return clamp01(sum / static_cast<double>(terms.size()));
}

double sep_approx_levels(const std::vector<double>& s, int n_b) {
    const auto rho = pairwise_thresholds(s, n_b);
    double sum = 0.0;
    for (int l = 0; l < static_cast<int>(s.size()); ++l) sum += level_error(s[l], l, rho, n_b);
    return clamp01(sum / static_cast<double>(s.size()));
}

double sep_exact_levels(const std::vector<double>& s, double alpha, const SystemConfig& cfg,
                        int n_c) {
    const int m = static_cast<int>(s.size()) / 2;
    const double direct = 1.0 - alpha;
    std::vector<double> s_bar(s.size());
    for (int j = 1; j <= m; ++j) {
        const int l0 = index_from_pair(0, j, m) - 1;
        const int l1 = index_from_pair(1, j, m) - 1;
        s_bar[l0] = s[l1] - direct;  // = eta_j + N_o; zero at the feasibility boundary
        s_bar[l1] = s[l0] + direct;
    }
    const auto rho = pairwise_thresholds(s, cfg.N_B);
    std::vector<std::pair<double, double>> terms(s.size());
    for (int l = 0; l < static_cast<int>(s.size()); ++l)
        terms[l] = {level_error(s[l], l, rho, cfg.N_B),
                    level_error(std::max(0.0, s_bar[l]), l, rho, cfg.N_B)};
    const auto cp = crossover_probs(cfg, alpha, n_c);
    return assemble(terms, cp, m).exact;
}

}  // namespace ncfffd

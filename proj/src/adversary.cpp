#include "ncfffd/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ncfffd/numerics.hpp"
#include "ncfffd/relay.hpp"
#include "ncfffd/rng.hpp"

namespace ncfffd {

void EdParams::validate() const {
    if (L < 1) throw std::invalid_argument("ed: L must be >= 1");
    if (L > 1000) throw std::invalid_argument("ed: binomial weights underflow beyond L = 1000");
    if (tau < 0.0) throw std::invalid_argument("ed: tau must be >= 0");
    if (!(n_tilde > 0.0)) throw std::invalid_argument("ed: effective noise must be positive");
    if (partial_d < 0.0) throw std::invalid_argument("ed: partial_d must be >= 0");
}

void CdParams::validate() const {
    if (k < 1) throw std::invalid_argument("cd: k must be >= 1");
    if (L <= k) throw std::invalid_argument("cd: need L > k");
    if (tau_cd < 0.0) throw std::invalid_argument("cd: tau_cd must be >= 0");
}

namespace {

// Binomial weights C(L,l)/2^L by recurrence; exact in double for L <= ~1000.
std::vector<double> half_binomial(int L) {
    std::vector<double> w(L + 1);
    w[0] = std::pow(0.5, L);
    for (int l = 0; l < L; ++l) w[l + 1] = w[l] * static_cast<double>(L - l) / (l + 1);
    return w;
}

// Tail masses of the frame-average mixture: the l = 0 term is the atom at
// zero (never above a positive threshold; below-or-equal whenever the
// threshold is nonnegative).
double upper_tail(int L, double a_scale, double threshold) {
    const auto w = half_binomial(L);
    const double arg = (L / a_scale) * threshold;
    if (arg <= 0.0) return 1.0;
    double acc = 0.0;
    for (int l = 1; l <= L; ++l) acc += w[l] * reg_gamma_upper(l, arg);
    return acc;
}

double lower_tail(int L, double a_scale, double threshold) {
    if (threshold < 0.0) return 0.0;
    const auto w = half_binomial(L);
    const double arg = (L / a_scale) * threshold;
    double acc = w[0];  // the atom
    if (arg > 0.0)
        for (int l = 1; l <= L; ++l) acc += w[l] * reg_gamma_lower(l, arg);
    return acc;
}

}  // namespace

double ed_pfa(const EdParams& p) {
    p.validate();
    const double e = p.expected_energy();
    return clamp01(upper_tail(p.L, 1.0, e + p.tau) + lower_tail(p.L, 1.0, e - p.tau));
}

double ed_pmd(const EdParams& p, double alpha) {
    p.validate();
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::invalid_argument("ed_pmd: alpha in (0,1)");
    const double a_scale = alpha + (1.0 - alpha) * (1.0 + p.partial_d);
    const double e = p.expected_energy();
    return clamp01(1.0 - upper_tail(p.L, a_scale, e + p.tau) -
                   lower_tail(p.L, a_scale, e - p.tau));
}

double pdf_vl(int L, double a_scale, double energy) {
    if (L < 1) throw std::invalid_argument("pdf_vl: L must be >= 1");
    if (!(a_scale > 0.0)) throw std::invalid_argument("pdf_vl: scale must be positive");
    if (!(energy > 0.0)) throw std::invalid_argument("pdf_vl: density defined for energy > 0");
    const auto w = half_binomial(L);
    const double rate = L / a_scale;
    double acc = 0.0;
    for (int l = 1; l <= L; ++l) {
        // rate^l * e^{-rate x} * x^{l-1} / (l-1)!
        const double log_term =
            l * std::log(rate) - rate * energy + (l - 1) * std::log(energy) - std::lgamma(l);
        acc += w[l] * std::exp(log_term);
    }
    return acc;
}

double pdf_ul(int L, double energy) { return pdf_vl(L, 1.0, energy); }

double cdf_vl(int L, double a_scale, double energy) {
    if (energy < 0.0) return 0.0;
    return clamp01(lower_tail(L, a_scale, energy));
}

std::vector<int> m_sequence(int degree, std::uint32_t taps, std::uint32_t seed, std::size_t n) {
    if (degree < 2 || degree > 31) throw std::invalid_argument("m_sequence: degree out of range");
    if (seed == 0) throw std::invalid_argument("m_sequence: seed must be nonzero");
    const std::uint32_t mask = (1u << degree) - 1;
    if ((seed & mask) == 0) throw std::invalid_argument("m_sequence: seed must be nonzero in-register");
    std::uint32_t state = seed & mask;
    std::vector<int> out(n);
    for (std::size_t t = 0; t < n; ++t) {
        out[t] = static_cast<int>(state & 1u);
        const std::uint32_t fb = static_cast<std::uint32_t>(__builtin_popcount(state & taps) & 1);
        state = (state >> 1) | (fb << (degree - 1));
    }
    return out;
}

GoldConfig GoldConfig::default_degree10() {
    GoldConfig g;
    g.register_degree = 10;
    g.taps_a = (1u << 3) | 1u;                                        // x^10 + x^3 + 1
    g.taps_b = (1u << 9) | (1u << 8) | (1u << 6) | (1u << 3) | (1u << 2) | 1u;
    g.seed_a = 1;
    g.seed_b = 2;
    return g;
}

GoldConfig GoldConfig::default_degree5() {
    GoldConfig g;
    g.register_degree = 5;
    g.taps_a = (1u << 2) | 1u;                                        // x^5 + x^2 + 1
    g.taps_b = (1u << 4) | (1u << 3) | (1u << 2) | 1u;
    g.seed_a = 1;
    g.seed_b = 1;
    return g;
}

std::vector<int> gold_bits(const GoldConfig& g, std::size_t n) {
    const auto a = m_sequence(g.register_degree, g.taps_a, g.seed_a, n);
    const auto b = m_sequence(g.register_degree, g.taps_b, g.seed_b, n);
    std::vector<int> out(n);
    for (std::size_t t = 0; t < n; ++t) out[t] = a[t] ^ b[t];
    return out;
}

double ksg_mi(const std::vector<double>& u, const std::vector<double>& v, int k) {
    const int n = static_cast<int>(u.size());
    if (u.size() != v.size()) throw std::invalid_argument("ksg_mi: length mismatch");
    if (k < 1 || k >= n) throw std::invalid_argument("ksg_mi: need 1 <= k < L");

    // digamma at integer arguments via the harmonic recurrence
    std::vector<double> psi(n + 2);
    psi[1] = -0.57721566490153286060651209008240;
    for (int t = 1; t <= n; ++t) psi[t + 1] = psi[t] + 1.0 / t;

    double acc = 0.0;
    std::vector<std::pair<double, int>> dist(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            dist[j] = {std::max(std::fabs(u[i] - u[j]), std::fabs(v[i] - v[j])), j};
        dist[i].first = kInf;
        // pair ordering resolves distance ties by sample index
        std::nth_element(dist.begin(), dist.begin() + (k - 1), dist.end());
        const double eps = dist[k - 1].first;
        int n_u = 0, n_v = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            if (std::fabs(u[i] - u[j]) < eps) ++n_u;
            if (std::fabs(v[i] - v[j]) < eps) ++n_v;
        }
        acc += psi[n_u + 1] + psi[n_v + 1];
    }
    return psi[k] + psi[n] - acc / n;
}

namespace {

constexpr std::uint64_t kStreamCd = 0xC0DE;
constexpr std::uint64_t kStreamBaseline = 0xBA5E;

// Pre-attack helper constellation: M equally likely energies with unit mean.
double own_ask_energy(Rng& rng, int m) {
    if (m == 1) return 1.0;
    const int j = static_cast<int>(rng.below(static_cast<std::uint32_t>(m)));
    return 2.0 * j / (m - 1);
}

}  // namespace

double cd_baseline_mi(const SystemConfig& cfg, const CdParams& p, std::uint64_t seed, int frames) {
    p.validate();
    const double n_tilde = cfg.noise_energy();
    const double gain_cd = 1.0 + cfg.partial_d;
    double acc = 0.0;
    for (int f = 0; f < frames; ++f) {
        Rng rng = Rng::substream(seed, kStreamBaseline, f);
        std::vector<double> u(p.L), v(p.L);
        for (int t = 0; t < p.L; ++t) {
            const double x = rng.bit() ? 1.0 : 0.0;
            u[t] = rng.exponential(x + n_tilde);
            v[t] = rng.exponential(gain_cd * own_ask_energy(rng, cfg.M) + n_tilde);
        }
        acc += ksg_mi(u, v, p.k);
    }
    return acc / frames;
}

std::vector<double> cd_frame_mi(const SystemConfig& cfg, const Constellation& c, const CdParams& p,
                                CdMode mode, int trials, std::uint64_t seed) {
    cfg.validate();
    p.validate();
    if (trials < 1) throw std::invalid_argument("cd_frame_mi: trials must be >= 1");
    const double n_tilde = cfg.noise_energy();
    const double alpha = c.alpha;
    const double a_scale = alpha + (1.0 - alpha) * (1.0 + cfg.partial_d);
    const double gain_cd = 1.0 + cfg.partial_d;
    const auto cp = crossover_probs(cfg, alpha);
    const auto gold =
        gold_bits(GoldConfig::default_degree10(), static_cast<std::size_t>(trials) * p.L);

    std::vector<double> out(trials);
    for (int f = 0; f < trials; ++f) {
        Rng rng = Rng::substream(seed, kStreamCd, f);
        std::vector<double> u(p.L), v(p.L);
        for (int t = 0; t < p.L; ++t) {
            const int i = rng.bit() ? 1 : 0;
            const int j = static_cast<int>(rng.below(static_cast<std::uint32_t>(cfg.M)));
            const double flip = rng.uniform();
            const int i_hat = (i == 0) ? (flip < cp.p01 ? 1 : 0) : (flip < cp.p10 ? 0 : 1);
            const double e_c = std::max(0.0, i_hat == 0 ? c.eps[j] : c.eta[j]);
            const int b = (mode == CdMode::Repetition)
                              ? i
                              : gold[static_cast<std::size_t>(f) * p.L + t];
            u[t] = rng.exponential(a_scale * b + n_tilde);
            v[t] = rng.exponential((1.0 - alpha) * i + gain_cd * e_c + n_tilde);
        }
        out[f] = ksg_mi(u, v, p.k);
    }
    return out;
}

double cd_detect(const SystemConfig& cfg, const Constellation& c, const CdParams& p, CdMode mode,
                 int trials, std::uint64_t seed) {
    const double baseline = std::isnan(p.baseline_mi)
                                ? cd_baseline_mi(cfg, p, seed ^ 0x9e3779b97f4a7c15ULL, 1000)
                                : p.baseline_mi;
    const auto mi = cd_frame_mi(cfg, c, p, mode, trials, seed);
    int hits = 0;
    for (double e : mi)
        if (std::fabs(baseline - e) >= p.tau_cd) ++hits;
    return static_cast<double>(hits) / trials;
}

}  // namespace ncfffd

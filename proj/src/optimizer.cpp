#include "ncfffd/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "ncfffd/numerics.hpp"
#include "ncfffd/relay.hpp"
#include "ncfffd/rng.hpp"
#include "ncfffd/sep.hpp"

namespace ncfffd {

void TlgdParams::validate() const {
    if (!(delta_pe > 0.0) || !(delta_eta1 > 0.0))
        throw std::invalid_argument("tlgd: resolutions must be positive");
    if (!(alpha_init > 0.0) || !(alpha_init < 1.0))
        throw std::invalid_argument("tlgd: alpha_init must lie in (0,1)");
    if (max_outer < 1 || max_inner < 1) throw std::invalid_argument("tlgd: iteration caps");
}

namespace {

constexpr double kEdge = 1e-6;  // keeps brackets off degenerate boundaries

struct M2Terms {
    double q23_s2, q34_s3, p23_s3, p34_s4;  // the four level terms of the objective
};

// Levels for M = 2 with eps1 = 0 and eps2 eliminated by the energy constraint.
bool m2_levels(double n_o, double eta1, double eta2, double alpha, double out[4]) {
    out[0] = n_o;
    out[1] = 1.0 - alpha + eta1 + n_o;
    out[2] = 1.0 - alpha + eta2 + n_o;
    out[3] = 2.0 * (1.0 + alpha) - eta1 - eta2 + n_o;
    return out[0] < out[1] && out[1] < out[2];
}

bool m2_terms(const SystemConfig& cfg, double eta1, double eta2, double alpha, M2Terms& t) {
    double s[4];
    if (!m2_levels(cfg.noise_energy(), eta1, eta2, alpha, s)) return false;
    // eta2 near the constraint boundary can push s3 past s4; the threshold
    // expression is symmetric in its arguments, so the terms still evaluate.
    if (!(s[3] > 0.0) || s[3] == s[2]) return false;
    const double nb = cfg.N_B;
    const double r23 = pairwise_threshold(s[1], s[2], cfg.N_B);
    const double r34 = pairwise_threshold(s[2], s[3], cfg.N_B);
    t.q23_s2 = reg_gamma_upper(nb, r23 / s[1]);
    t.q34_s3 = reg_gamma_upper(nb, r34 / s[2]);
    t.p23_s3 = reg_gamma_lower(nb, r23 / s[2]);
    t.p34_s4 = reg_gamma_lower(nb, r34 / s[3]);
    return true;
}

constexpr double kBigObjective = 1e9;

}  // namespace

double tlgd_objective(const SystemConfig& cfg, double eta1, double eta2, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0) || !(eta2 > eta1) || eta1 < 0.0) return kBigObjective;
    M2Terms t;
    if (!m2_terms(cfg, eta1, eta2, alpha, t)) return kBigObjective;
    const auto cp = crossover_probs(cfg, alpha);
    return 0.25 * (cp.p00 * t.p34_s4 + cp.p11 * (t.q23_s2 + t.q34_s3 + t.p23_s3) +
                   2.0 * (cp.p01 + cp.p10));
}

double eta2_term_gap(const SystemConfig& cfg, double eta1, double eta2, double alpha) {
    M2Terms t;
    if (!m2_terms(cfg, eta1, eta2, alpha, t)) return kBigObjective;
    return (t.q34_s3 + t.p34_s4) - (t.q23_s2 + t.p23_s3);
}

double alpha_term_gap(const SystemConfig& cfg, double eta1, double eta2, double alpha) {
    M2Terms t;
    if (!m2_terms(cfg, eta1, eta2, alpha, t)) return kBigObjective;
    const auto cp = crossover_probs(cfg, alpha);
    return 2.0 * (cp.p01 + cp.p10) -
           (cp.p00 * t.p34_s4 + cp.p11 * (t.q23_s2 + t.q34_s3 + t.p23_s3));
}

namespace {

// Root of f on [lo, hi] located by a coarse sign scan plus bisection.
// Returns NaN when no sign change exists on the interval.
double scan_root(const std::function<double(double)>& f, double lo, double hi) {
    constexpr int kCells = 64;
    double x0 = lo, f0 = f(lo);
    for (int k = 1; k <= kCells; ++k) {
        const double x1 = lo + (hi - lo) * k / kCells;
        const double f1 = f(x1);
        if (f0 == 0.0) return x0;
        if ((f0 > 0.0) != (f1 > 0.0))
            return bisect_root(f, x0, x1, Tolerance{1e-11, 0.0, 200});
        x0 = x1;
        f0 = f1;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

constexpr double kGolden = 0.6180339887498949;

double golden_min(const std::function<double(double)>& f, double lo, double hi, double xatol,
                  double* fmin) {
    double a = lo, b = hi;
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > xatol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = f(x2);
        }
    }
    const double xm = 0.5 * (a + b);
    const double fm = f(xm);
    if (fmin) *fmin = fm;
    return xm;
}

// Scan + golden refinement; robust when the section is not unimodal.
double line_min(const std::function<double(double)>& f, double lo, double hi, double xatol,
                double* fmin) {
    constexpr int kCells = 32;
    int best = 0;
    double fbest = kBigObjective;
    for (int k = 0; k <= kCells; ++k) {
        const double x = lo + (hi - lo) * k / kCells;
        const double fx = f(x);
        if (fx < fbest) {
            fbest = fx;
            best = k;
        }
    }
    const double a = lo + (hi - lo) * std::max(0, best - 1) / kCells;
    const double b = lo + (hi - lo) * std::min(kCells, best + 1) / kCells;
    return golden_min(f, a, b, xatol, fmin);
}

}  // namespace

OptimizerResult tlgd(const SystemConfig& cfg, const TlgdParams& params) {
    cfg.validate();
    params.validate();
    if (cfg.M != 2) throw std::invalid_argument("tlgd: applicable to M = 2 only");

    const double dpe = params.delta_pe;
    double eta1 = 0.0;
    double alpha = params.alpha_init;
    double eta2 = params.eta2_init > 0.0 ? params.eta2_init : 1.0 + params.alpha_init / 2.0;

    auto obj = [&](double h1, double h2, double a) { return tlgd_objective(cfg, h1, h2, a); };

    // Inner loop: steepest of the two conditional moves, each located at its
    // term intersection. A move is accepted only when it lowers the objective
    // by at least dpe; when neither intersection qualifies, a direct line
    // search takes over before termination is declared.
    auto inner = [&](double h1, double& h2, double& a) {
        double cur = obj(h1, h2, a);
        for (int it = 0; it < params.max_inner; ++it) {
            const double h2_hi = 1.0 + a - 0.5 * h1 - kEdge;
            double h2_cand = std::numeric_limits<double>::quiet_NaN();
            if (h2_hi > h1 + 2 * kEdge)
                h2_cand = scan_root([&](double x) { return eta2_term_gap(cfg, h1, x, a); },
                                    h1 + kEdge, h2_hi);
            const double pe_h2 = std::isnan(h2_cand) ? kBigObjective : obj(h1, h2_cand, a);
            const double a_cand = scan_root(
                [&](double x) { return alpha_term_gap(cfg, h1, h2, x); }, 1e-4, 1.0 - 1e-4);
            const double pe_a = std::isnan(a_cand) ? kBigObjective : obj(h1, h2, a_cand);

            const bool a_ok = cur - pe_a >= dpe;
            const bool h2_ok = cur - pe_h2 >= dpe;
            if (a_ok && (!h2_ok || pe_a <= pe_h2 + dpe)) {
                a = a_cand;
                cur = pe_a;
                continue;
            }
            if (h2_ok) {
                h2 = h2_cand;
                cur = pe_h2;
                continue;
            }
            // Intersections exhausted; polish each coordinate directly.
            double f_h2 = kBigObjective, f_a = kBigObjective;
            double x_h2 = h2, x_a = a;
            if (h2_hi > h1 + 2 * kEdge)
                x_h2 = line_min([&](double x) { return obj(h1, x, a); }, h1 + kEdge, h2_hi, 1e-10,
                                &f_h2);
            x_a = line_min([&](double x) { return obj(h1, h2, x); }, 1e-4, 1.0 - 1e-4, 1e-10, &f_a);
            if (f_a <= f_h2 + dpe && cur - f_a >= dpe) {
                a = x_a;
                cur = f_a;
                continue;
            }
            if (cur - f_h2 >= dpe) {
                h2 = x_h2;
                cur = f_h2;
                continue;
            }
            // Descent at resolution dpe is exhausted; polish the coordinate
            // pair down to round-off so the stall gap cannot exceed dpe.
            for (int round = 0; round < 300; ++round) {
                const double before = cur;
                const double hi = 1.0 + a - 0.5 * h1 - kEdge;
                if (hi > h1 + 2 * kEdge) {
                    double fm = cur;
                    const double xm =
                        line_min([&](double x) { return obj(h1, x, a); }, h1 + kEdge, hi, 1e-11, &fm);
                    if (fm < cur) {
                        h2 = xm;
                        cur = fm;
                    }
                }
                double fm = cur;
                const double xm =
                    line_min([&](double x) { return obj(h1, h2, x); }, 1e-4, 1.0 - 1e-4, 1e-11, &fm);
                if (fm < cur) {
                    a = xm;
                    cur = fm;
                }
                if (before - cur < 1e-11) break;
            }
            return cur;
        }
        throw std::runtime_error("tlgd: inner loop did not converge");
    };

    OptimizerResult result;
    double pe_prev = obj(eta1, eta2, alpha);
    double best_eta1 = eta1, best_eta2 = eta2, best_alpha = alpha;
    bool improved_once = false;
    bool done = false;
    for (int outer = 0; outer < params.max_outer && !done; ++outer) {
        const double pe_iota = inner(eta1, eta2, alpha);
        result.trace.push_back({outer, eta1, eta2, alpha, pe_iota});
        if (pe_iota - pe_prev <= -dpe) {
            pe_prev = pe_iota;
            best_eta1 = eta1;
            best_eta2 = eta2;
            best_alpha = alpha;
            improved_once = true;
            eta1 += params.delta_eta1;
            if (eta1 >= 1.0 + alpha - 0.5 * eta1 - 2 * kEdge) done = true;  // grid exhausted
        } else if (improved_once && pe_iota - pe_prev >= dpe) {
            eta1 = best_eta1;  // step back to the last improving grid point
            eta2 = best_eta2;
            alpha = best_alpha;
            done = true;
        } else {
            best_eta1 = eta1;
            best_eta2 = eta2;
            best_alpha = alpha;
            pe_prev = std::min(pe_prev, pe_iota);
            done = true;
        }
    }
    if (!done) throw std::runtime_error("tlgd: outer loop hit iteration cap");

    Constellation c;
    c.alpha = best_alpha;
    c.eps = {0.0, 2.0 * (1.0 + best_alpha) - best_eta1 - best_eta2};
    c.eta = {best_eta1, best_eta2};
    result.constellation = c;
    result.n_c_required = 0;
    const auto breakdown = sep_exact(c, cfg);
    result.achieved_sep = breakdown.p_e;
    result.achieved_sep_approx = breakdown.p_e_approx;
    return result;
}

std::vector<double> optimize_sum_levels(int m, int n_b, double noise_energy) {
    if (m < 1 || (m & (m - 1)) != 0) throw std::invalid_argument("optimize_sum_levels: bad M");
    if (n_b < 1) throw std::invalid_argument("optimize_sum_levels: bad N_B");
    if (!(noise_energy > 0.0)) throw std::invalid_argument("optimize_sum_levels: bad noise energy");

    const int n = 2 * m;
    const double total = n * (1.0 + noise_energy);  // sum of levels under the mean constraint
    if (n == 2) return {noise_energy, 2.0 + noise_energy};

    const double budget = total - n * noise_energy;  // = 2M, split across levels 2..2M
    auto evaluate = [&](const std::vector<double>& s) { return sep_approx_levels(s, n_b); };

    std::vector<double> best_s;
    double best_val = kInf;
    Rng seed_rng(0x5eedULL);
    for (int seed = 0; seed < 8; ++seed) {
        std::vector<double> w(n - 1);
        if (seed == 0) {
            for (int k = 0; k < n - 1; ++k) {
                const double t = static_cast<double>(k + 1) / (n - 1);
                w[k] = t * t;
            }
        } else {
            for (auto& x : w) x = seed_rng.uniform_pos();
            std::sort(w.begin(), w.end());
        }
        // cumulative sums of w give increasing contributions; rescale them so
        // the contributions of levels 2..2M sum to the full budget
        std::vector<double> s(n);
        s[0] = noise_energy;
        double run = 0.0, total_run = 0.0;
        for (int k = 1; k < n; ++k) {
            run += w[k - 1];
            s[k] = run;
            total_run += run;
        }
        for (int k = 1; k < n; ++k) s[k] = noise_energy + budget * s[k] / total_run;
        double cur = evaluate(s);
        for (int sweep = 0; sweep < 300; ++sweep) {
            bool improved = false;
            for (int k = 1; k < n - 1; ++k) {
                const double c = s[k] + s[n - 1];
                const double gap = 1e-9 * (1.0 + c);
                const double lo = s[k - 1] + gap;
                const double hi =
                    (k < n - 2) ? std::min(s[k + 1] - gap, c - s[n - 2] - gap) : 0.5 * (c - gap);
                if (!(hi > lo)) continue;
                double fm = kInf;
                const double xm = line_min(
                    [&](double x) {
                        std::vector<double> t = s;
                        t[k] = x;
                        t[n - 1] = c - x;
                        return evaluate(t);
                    },
                    lo, hi, 1e-11 * (1.0 + c), &fm);
                if (fm < cur - 1e-14) {
                    s[k] = xm;
                    s[n - 1] = c - xm;
                    cur = fm;
                    improved = true;
                }
            }
            if (!improved) break;
        }
        if (cur < best_val) {
            best_val = cur;
            best_s = s;
        }
    }
    if (best_s.empty()) throw std::runtime_error("optimize_sum_levels: no feasible solution");
    return best_s;
}

namespace {

OptimizerResult backtrack_from_levels(const SystemConfig& cfg, const std::vector<double>& s_star,
                                      double alpha, double level_noise, double delta_re,
                                      int n_c_cap) {
    const int m = cfg.M;
    OptimizerResult result;
    Constellation c;
    c.alpha = alpha;
    c.eps.resize(m);
    c.eta.resize(m);
    for (int j = 1; j <= m; ++j) {
        c.eps[j - 1] = s_star[index_from_pair(0, j, m) - 1] - level_noise;
        c.eta[j - 1] = s_star[index_from_pair(1, j, m) - 1] - (1.0 - alpha) - level_noise;
    }
    result.constellation = c;

    const double pe_approx_star = sep_approx_levels(s_star, cfg.N_B);
    result.achieved_sep_approx = pe_approx_star;

    double pe_eval = 1.0;
    int n_c = 1;
    for (;; ++n_c) {
        if (n_c > n_c_cap)
            throw std::runtime_error("energy backtracking: antenna search exceeded cap of " +
                                     std::to_string(n_c_cap));
        pe_eval = sep_exact_levels(s_star, alpha, cfg, n_c);
        result.trace.push_back({n_c, c.eta[0], c.eta[std::min(1, m - 1)], alpha, pe_eval});
        if (std::fabs(pe_approx_star - pe_eval) / pe_approx_star < delta_re) break;
    }
    result.n_c_required = n_c;
    result.achieved_sep = pe_eval;
    return result;
}

}  // namespace

OptimizerResult eb(const SystemConfig& cfg, double delta_re, int n_c_cap) {
    cfg.validate();
    if (!(delta_re > 0.0) || delta_re >= 1.0) throw std::invalid_argument("eb: bad delta_re");
    const double n_o = cfg.noise_energy();
    const auto s_star = optimize_sum_levels(cfg.M, cfg.N_B, n_o);
    if (s_star[1] >= 1.0)
        throw std::domain_error("eb: infeasible at this SNR (second level >= 1)");
    const double alpha = 1.0 - s_star[1];
    return backtrack_from_levels(cfg, s_star, alpha, n_o, delta_re, n_c_cap);
}

OptimizerResult dt_eb(const SystemConfig& cfg, double delta_re, double delta_dt, int n_c_cap) {
    cfg.validate();
    if (!(delta_re > 0.0) || delta_re >= 1.0) throw std::invalid_argument("dt_eb: bad delta_re");
    if (!(delta_dt > 0.0) || delta_dt >= 1.0) throw std::invalid_argument("dt_eb: bad delta_dt");
    const double n_o = cfg.noise_energy();
    const double n_o_eff = n_o * (1.0 + delta_dt);  // direct-link budget folded into the noise
    const auto s_star = optimize_sum_levels(cfg.M, cfg.N_B, n_o_eff);
    const double alpha = 1.0 - delta_dt * n_o;
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::domain_error("dt_eb: infeasible split factor");
    return backtrack_from_levels(cfg, s_star, alpha, n_o_eff, delta_re, n_c_cap);
}

void to_json(nlohmann::json& j, const OptimizerResult& r) {
    nlohmann::json trace = nlohmann::json::array();
    for (const auto& row : r.trace)
        trace.push_back({{"iter", row.iter},
                         {"eta1", row.eta1},
                         {"eta2", row.eta2},
                         {"alpha", row.alpha},
                         {"objective", row.objective}});
    j = nlohmann::json{{"constellation", r.constellation},
                       {"n_c_required", r.n_c_required},
                       {"achieved_sep", r.achieved_sep},
                       {"achieved_sep_approx", r.achieved_sep_approx},
                       {"trace", trace}};
}

void from_json(const nlohmann::json& j, OptimizerResult& r) {
    j.at("constellation").get_to(r.constellation);
    r.n_c_required = j.value("n_c_required", 0);
    r.achieved_sep = j.value("achieved_sep", 0.0);
    r.achieved_sep_approx = j.value("achieved_sep_approx", 0.0);
    r.trace.clear();
    if (j.contains("trace"))
        for (const auto& row : j.at("trace"))
            r.trace.push_back({row.value("iter", 0), row.value("eta1", 0.0),
                               row.value("eta2", 0.0), row.value("alpha", 0.0),
                               row.value("objective", 0.0)});
}

}  // namespace ncfffd

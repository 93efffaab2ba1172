#include "ncfffd/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "ncfffd/numerics.hpp"
#include "ncfffd/rng.hpp"

namespace ncfffd {

namespace {

constexpr std::uint64_t kBlockTrials = 8192;
constexpr std::uint64_t kStreamLink = 0xA11CE;

struct Tallies {
    std::uint64_t joint_err = 0, alice_err = 0, charlie_err = 0;
    std::uint64_t relay01 = 0, relay10 = 0;  // helper decode errors, split by sent bit
    std::uint64_t sent0 = 0, sent1 = 0;
    std::uint64_t joint_err_alt = 0, alice_err_alt = 0, charlie_err_alt = 0;  // second decoder

    void operator+=(const Tallies& o) {
        joint_err += o.joint_err;
        alice_err += o.alice_err;
        charlie_err += o.charlie_err;
        relay01 += o.relay01;
        relay10 += o.relay10;
        sent0 += o.sent0;
        sent1 += o.sent1;
        joint_err_alt += o.joint_err_alt;
        alice_err_alt += o.alice_err_alt;
        charlie_err_alt += o.charlie_err_alt;
    }
};

// Squared norm of the sum of independent mean-zero complex Gaussian vectors
// with per-component variances vars[0..m). Each vector is drawn
// componentwise so the superposition is formed before the energy is taken.
double received_energy(Rng& rng, int n, const double* vars, int m) {
    double sd[4];
    for (int s = 0; s < m; ++s) sd[s] = std::sqrt(0.5 * vars[s]);
    double acc = 0.0;
    for (int k = 0; k < n; ++k) {
        double re = 0.0, im = 0.0;
        for (int s = 0; s < m; ++s) {
            re += sd[s] * rng.normal();
            im += sd[s] * rng.normal();
        }
        acc += re * re + im * im;
    }
    return acc;
}

struct JmapTables {
    std::vector<double> log_w_dom, log_w_com;  // mixture log-weights per index
    std::vector<double> inv_dom, inv_com;      // 1/scale (complementary may be degenerate)
    std::vector<double> log_dom, log_com;      // -n_b * log(scale)
    std::vector<bool> com_degenerate;
    int n_b = 0;

    JmapTables(const SumLevels& levels, const CrossoverProbs& cp, int nb) : n_b(nb) {
        const int n = levels.size();
        const int m = n / 2;
        log_w_dom.resize(n);
        log_w_com.resize(n);
        inv_dom.resize(n);
        inv_com.resize(n);
        log_dom.resize(n);
        log_com.resize(n);
        com_degenerate.resize(n);
        for (int l = 1; l <= n; ++l) {
            const int i = pair_from_index(l, m).first;
            const double w_dom = (i == 0) ? cp.p00 : cp.p11;
            const double w_com = (i == 0) ? cp.p01 : cp.p10;
            log_w_dom[l - 1] = w_dom > 0.0 ? std::log(w_dom) : -kInf;
            log_w_com[l - 1] = w_com > 0.0 ? std::log(w_com) : -kInf;
            inv_dom[l - 1] = 1.0 / levels.s[l - 1];
            log_dom[l - 1] = -nb * std::log(levels.s[l - 1]);
            const double sb = levels.s_bar[l - 1];
            com_degenerate[l - 1] = !(sb > 0.0);
            inv_com[l - 1] = com_degenerate[l - 1] ? 0.0 : 1.0 / sb;
            log_com[l - 1] = com_degenerate[l - 1] ? 0.0 : -nb * std::log(sb);
        }
    }

    int decode(double energy) const {
        int best = 0;
        double best_ll = -kInf;
        const int n = static_cast<int>(inv_dom.size());
        for (int l = 0; l < n; ++l) {
            const double a = log_w_dom[l] + log_dom[l] - energy * inv_dom[l];
            double b;
            if (com_degenerate[l])
                b = (energy == 0.0 && log_w_com[l] > -kInf) ? kInf : -kInf;
            else
                b = log_w_com[l] + log_com[l] - energy * inv_com[l];
            const double hi = std::max(a, b);
            const double ll =
                std::isinf(hi) ? hi : hi + std::log1p(std::exp(std::min(a, b) - hi));
            if (ll > best_ll) {
                best_ll = ll;
                best = l;
            }
        }
        return best + 1;
    }
};

struct SimContext {
    SystemConfig cfg;
    Constellation c;
    SumLevels levels;
    std::vector<double> thresholds;
    JmapTables jmap;
    double nu;          // helper detection threshold
    double n_o;
    double direct;      // 1 - alpha
    double si_var;      // residual self-interference variance at the helper
    int delay = 0;
    bool both = false;  // tally JD and JMAP on the same draws
    Decoder primary = Decoder::JD;

    SimContext(const SystemConfig& cfg_, const Constellation& c_, const CrossoverProbs& cp,
               double threshold_noise)
        : cfg(cfg_),
          c(c_),
          levels(build_sum_levels(
              c_, std::isnan(threshold_noise) ? cfg_.noise_energy() : threshold_noise)),
          thresholds(pairwise_thresholds(levels.s, cfg_.N_B)),
          jmap(levels, cp, cfg_.N_B),
          n_o(cfg_.noise_energy()),
          direct(1.0 - c_.alpha),
          si_var(cfg_.lambda_linear() * (1.0 + c_.alpha) / 2.0) {
        const auto om = omegas(cfg_, c_.alpha);
        nu = charlie_threshold(om.first, om.second, cfg_.N_C);
    }

    int jd_decode(double energy) const {
        const auto it = std::upper_bound(thresholds.begin(), thresholds.end(), energy);
        return static_cast<int>(it - thresholds.begin()) + 1;
    }
};

void run_block(const SimContext& ctx, std::uint64_t seed, std::uint64_t block,
               std::uint64_t n_trials, Tallies& t) {
    Rng rng = Rng::substream(seed, kStreamLink, block);
    const int m = ctx.cfg.M;
    for (std::uint64_t k = 0; k < n_trials; ++k) {
        const int i_sym = rng.bit() ? 1 : 0;   // symbol carried by the relay path
        const int i_cur = ctx.delay >= 1 ? (rng.bit() ? 1 : 0) : i_sym;
        const int j_sym = static_cast<int>(rng.below(static_cast<std::uint32_t>(m))) + 1;

        // helper reception: victim signal + self-interference + noise
        const double charlie_vars[3] = {ctx.direct * (i_sym == 1 ? 1.0 : 0.0) * ctx.cfg.sigma2_AC,
                                        ctx.si_var, ctx.n_o};
        const double rc2 = received_energy(rng, ctx.cfg.N_C, charlie_vars, 3);
        const int i_hat_c = rc2 > ctx.nu ? 1 : 0;
        if (i_sym == 0) {
            ++t.sent0;
            if (i_hat_c == 1) ++t.relay01;
        } else {
            ++t.sent1;
            if (i_hat_c == 0) ++t.relay10;
        }

        const double e_c = (i_hat_c == 0 ? ctx.c.eps[j_sym - 1] : ctx.c.eta[j_sym - 1]);
        const double direct_var = ctx.direct * (i_cur == 1 ? 1.0 : 0.0) * ctx.cfg.sigma2_AB;
        double rb2;
        if (e_c >= 0.0) {
            const double bob_vars[3] = {direct_var, e_c * ctx.cfg.sigma2_CB, ctx.n_o};
            rb2 = received_energy(rng, ctx.cfg.N_B, bob_vars, 3);
        } else {
            // feasibility-boundary level (e_c in [-N_o, 0)): the helper+noise
            // contribution degenerates to variance e_c + N_o >= 0
            const double bob_vars[2] = {direct_var, std::max(0.0, e_c + ctx.n_o)};
            rb2 = received_energy(rng, ctx.cfg.N_B, bob_vars, 2);
        }

        const int l_true = index_from_pair(i_sym, j_sym, m);
        auto score = [&](int l_hat, bool alt) {
            const auto [ih, jh] = pair_from_index(l_hat, m);
            if (!alt) {
                if (l_hat != l_true) ++t.joint_err;
                if (ih != i_sym) ++t.alice_err;
                if (jh != j_sym) ++t.charlie_err;
            } else {
                if (l_hat != l_true) ++t.joint_err_alt;
                if (ih != i_sym) ++t.alice_err_alt;
                if (jh != j_sym) ++t.charlie_err_alt;
            }
        };
        if (ctx.both) {
            score(ctx.jd_decode(rb2), false);
            score(ctx.jmap.decode(rb2), true);
        } else if (ctx.primary == Decoder::JD) {
            score(ctx.jd_decode(rb2), false);
        } else {
            score(ctx.jmap.decode(rb2), false);
        }
    }
}

Tallies run_all(const SimContext& ctx, const SimOptions& opt) {
    const std::uint64_t n_blocks = (opt.trials + kBlockTrials - 1) / kBlockTrials;
    const int threads = std::max(1, opt.threads);
    std::vector<Tallies> partial(n_blocks);
    if (threads == 1 || n_blocks == 1) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) {
            const std::uint64_t n =
                std::min<std::uint64_t>(kBlockTrials, opt.trials - b * kBlockTrials);
            run_block(ctx, opt.seed, b, n, partial[b]);
        }
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::uint64_t b = next.fetch_add(1);
                if (b >= n_blocks) return;
                const std::uint64_t n =
                    std::min<std::uint64_t>(kBlockTrials, opt.trials - b * kBlockTrials);
                run_block(ctx, opt.seed, b, n, partial[b]);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    Tallies total;
    for (const auto& p : partial) total += p;  // block order, independent of scheduling
    return total;
}

SimReport make_report(const Tallies& t, const SimOptions& opt, bool alt) {
    SimReport r;
    r.trials = opt.trials;
    r.seed = opt.seed;
    const double n = static_cast<double>(opt.trials);
    const auto rate = [n](std::uint64_t k) { return static_cast<double>(k) / n; };
    r.joint_ser = rate(alt ? t.joint_err_alt : t.joint_err);
    r.alice_ber = rate(alt ? t.alice_err_alt : t.alice_err);
    r.charlie_ser = rate(alt ? t.charlie_err_alt : t.charlie_err);
    r.relay_p01 = t.sent0 ? static_cast<double>(t.relay01) / t.sent0 : 0.0;
    r.relay_p10 = t.sent1 ? static_cast<double>(t.relay10) / t.sent1 : 0.0;
    const auto se = [n](double p) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / n); };
    r.joint_std_err = se(r.joint_ser);
    r.alice_std_err = se(r.alice_ber);
    r.charlie_std_err = se(r.charlie_ser);
    return r;
}

void check_inputs(const SystemConfig& cfg, const Constellation& c, const SimOptions& opt) {
    cfg.validate();
    if (opt.trials < 1) throw std::invalid_argument("simulate: trials must be >= 1");
    if (c.order() != cfg.M) throw std::invalid_argument("simulate: constellation order mismatch");
    const double n_o = cfg.noise_energy();
    for (int j = 0; j < c.order(); ++j)
        if (c.eps[j] + n_o < -1e-12 || c.eta[j] + n_o < -1e-12)
            throw std::invalid_argument("simulate: transmit level below the physical boundary");
}

}  // namespace

SimReport simulate(const SystemConfig& cfg, const Constellation& c, const SimOptions& opt) {
    check_inputs(cfg, c, opt);
    SimContext ctx(cfg, c, crossover_probs(cfg, c.alpha), opt.threshold_noise);
    ctx.primary = opt.decoder;
    const Tallies t = run_all(ctx, opt);
    return make_report(t, opt, false);
}

SimReport simulate_delayed(const SystemConfig& cfg, const Constellation& c,
                           const SimOptions& opt) {
    check_inputs(cfg, c, opt);
    SimContext ctx(cfg, c, crossover_probs(cfg, c.alpha), opt.threshold_noise);
    ctx.primary = opt.decoder;
    ctx.delay = cfg.delay_n;
    const Tallies t = run_all(ctx, opt);
    return make_report(t, opt, false);
}

std::pair<SimReport, SimReport> simulate_both(const SystemConfig& cfg, const Constellation& c,
                                              const SimOptions& opt) {
    check_inputs(cfg, c, opt);
    SimContext ctx(cfg, c, crossover_probs(cfg, c.alpha), opt.threshold_noise);
    ctx.both = true;
    const Tallies t = run_all(ctx, opt);
    return {make_report(t, opt, false), make_report(t, opt, true)};
}

std::pair<int, int> jmap_decode(double energy, const SumLevels& levels,
                                const CrossoverProbs& cross, int n_b) {
    if (energy < 0.0) throw std::invalid_argument("jmap_decode: negative energy");
    JmapTables tables(levels, cross, n_b);
    return pair_from_index(tables.decode(energy), levels.size() / 2);
}

void to_json(nlohmann::json& j, const SimReport& r) {
    j = nlohmann::json{{"trials", r.trials},
                       {"joint_ser", r.joint_ser},
                       {"alice_ber", r.alice_ber},
                       {"charlie_ser", r.charlie_ser},
                       {"relay_p01", r.relay_p01},
                       {"relay_p10", r.relay_p10},
                       {"joint_std_err", r.joint_std_err},
                       {"alice_std_err", r.alice_std_err},
                       {"charlie_std_err", r.charlie_std_err},
                       {"seed", r.seed}};
}

}  // namespace ncfffd

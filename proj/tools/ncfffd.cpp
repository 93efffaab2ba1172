// Command-line front end: constellation design, closed-form and Monte Carlo
// evaluation, adversary detector curves, parameter sweeps, and the bundled
// golden-table check. Every command is deterministic under a fixed seed.
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ncfffd/adversary.hpp"
#include "ncfffd/model.hpp"
#include "ncfffd/optimizer.hpp"
#include "ncfffd/sep.hpp"
#include "ncfffd/simulator.hpp"

using nlohmann::json;
using namespace ncfffd;

namespace {

constexpr std::uint64_t kDefaultSeed = 12345;
constexpr const char* kCsvSchema = "# schema=ncfffd.csv.v1";

enum ExitCode { kOk = 0, kValidation = 2, kNumeric = 3, kGoldenMismatch = 4 };

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17e", x);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (!path.parent_path().empty()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << content;
}

std::uint64_t env_seed() {
    if (const char* s = std::getenv("NCFFFD_SEED")) return std::strtoull(s, nullptr, 10);
    return kDefaultSeed;
}

struct CommonArgs {
    std::string config_path;
    std::string constellation_path;
    std::string out_dir = ".";
    std::uint64_t seed = env_seed();
    int jobs = 1;
};

SystemConfig load_config(const CommonArgs& a, const json& overrides) {
    SystemConfig cfg;
    if (!a.config_path.empty()) {
        std::ifstream in(a.config_path);
        if (!in) throw std::invalid_argument("config file not found: " + a.config_path);
        json j;
        in >> j;
        cfg = (j.contains("system") ? j.at("system") : j).get<SystemConfig>();
    }
    json merged;
    to_json(merged, cfg);
    for (auto& [k, v] : overrides.items())
        if (!v.is_null()) merged[k] = v;
    cfg = merged.get<SystemConfig>();
    cfg.validate();
    return cfg;
}

Constellation load_constellation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("constellation file not found: " + path);
    json j;
    in >> j;
    if (j.contains("constellation")) return j.at("constellation").get<Constellation>();
    return j.get<Constellation>();
}

std::string trace_csv(const OptimizerResult& r) {
    std::ostringstream out;
    out << kCsvSchema << "\niter,eta1,eta2,alpha,objective\n";
    for (const auto& row : r.trace)
        out << row.iter << ',' << fmt(row.eta1) << ',' << fmt(row.eta2) << ',' << fmt(row.alpha)
            << ',' << fmt(row.objective) << '\n';
    return out.str();
}

OptimizerResult design(const std::string& algo, const SystemConfig& cfg, const TlgdParams& tp,
                       double delta_re, double delta_dt, int nc_cap) {
    if (algo == "tlgd") return tlgd(cfg, tp);
    if (algo == "eb") return eb(cfg, delta_re, nc_cap);
    if (algo == "dt-eb") return dt_eb(cfg, delta_re, delta_dt, nc_cap);
    throw std::invalid_argument("unknown algo: " + algo);
}

struct GoldenRow {
    double snr_db;
    int n_c, n_b;
    double eps1, eps2, eta1, eta2, alpha;
    double p_jmap, p_jd;
};

// Bundled golden operating points: {eps1, eps2, eta1, eta2, alpha} with the
// published JMAP (simulated) and JD (closed-form) reference error rates.
const std::vector<GoldenRow> kGoldens = {
    {5.0, 1, 8, 0.0, 2.6421, 1e-6, 0.3052, 0.4736, 3.06e-1, 3.23e-1},
    {14.0, 1, 8, 0.0, 3.0750, 1e-6, 0.5554, 0.8152, 8.32e-2, 8.42e-2},
    {25.0, 1, 8, 0.0, 3.4008, 1e-6, 0.4382, 0.9195, 1.88e-2, 1.90e-2},
    {5.0, 2, 4, 0.0, 2.7135, 1e-6, 0.4334, 0.5734, 3.735e-1, 3.782e-1},
    {14.0, 2, 4, 0.0, 3.1645, 1e-6, 0.5353, 0.8499, 1.32e-1, 1.33e-1},
    {25.0, 2, 4, 0.0, 3.6082, 1e-6, 0.3228, 0.9655, 2.43e-2, 2.47e-2},
};

int run_goldens(const CommonArgs& args, std::uint64_t trials, const std::string& golden_file) {
    std::vector<GoldenRow> rows = kGoldens;
    if (!golden_file.empty()) {
        std::ifstream in(golden_file);
        if (!in) throw std::invalid_argument("golden file not found: " + golden_file);
        json j;
        in >> j;
        rows.clear();
        for (const auto& r : j.at("rows"))
            rows.push_back({r.at("snr_db"), r.at("N_C"), r.at("N_B"), r.at("eps1"), r.at("eps2"),
                            r.at("eta1"), r.at("eta2"), r.at("alpha"), r.at("p_jmap"),
                            r.at("p_jd")});
    }
    std::ostringstream out;
    out << kCsvSchema
        << "\nsnr_db,N_C,N_B,p_jd_closed,p_jd_printed,jd_rel_err,jd_pass,p_jmap_sim,"
           "p_jmap_printed,jmap_sigmas,jmap_pass,decoder_rel_err,decoder_rel_bound,rel_pass\n";
    bool all_pass = true;
    for (const auto& g : rows) {
        SystemConfig cfg;
        cfg.snr_db = g.snr_db;
        cfg.N_C = g.n_c;
        cfg.N_B = g.n_b;
        cfg.M = 2;
        Constellation c{{g.eps1, g.eps2}, {g.eta1, g.eta2}, g.alpha};
        const double p_jd_closed = sep_exact(c, cfg).p_e;
        const double jd_rel = std::fabs(p_jd_closed - g.p_jd) / g.p_jd;
        const bool jd_pass = jd_rel <= 0.02;

        SimOptions opt;
        opt.trials = trials;
        opt.seed = args.seed;
        opt.threads = args.jobs;
        const auto both = simulate_both(cfg, c, opt);
        const SimReport& jmap_sim = both.second;
        const double sigma = std::sqrt(g.p_jmap * (1.0 - g.p_jmap) / static_cast<double>(trials));
        const double jmap_sigmas = std::fabs(jmap_sim.joint_ser - g.p_jmap) / sigma;
        const bool jmap_pass = jmap_sigmas <= 3.0;

        const double rel = std::fabs(jmap_sim.joint_ser - p_jd_closed) / jmap_sim.joint_ser;
        const double rel_bound = 5.55e-2 + 3.0 * jmap_sim.joint_std_err / jmap_sim.joint_ser;
        const bool rel_pass = rel <= rel_bound;

        all_pass = all_pass && jd_pass && jmap_pass && rel_pass;
        std::printf(
            "golden snr=%4.1f N_C=%d N_B=%d | JD closed %.4e vs %.3e (%.2f%%) %s | JMAP sim "
            "%.4e vs %.3e (%.1f sigma) %s | decoders %.4f<=%.4f %s\n",
            g.snr_db, g.n_c, g.n_b, p_jd_closed, g.p_jd, 100 * jd_rel, jd_pass ? "PASS" : "FAIL",
            jmap_sim.joint_ser, g.p_jmap, jmap_sigmas, jmap_pass ? "PASS" : "FAIL", rel, rel_bound,
            rel_pass ? "PASS" : "FAIL");
        out << fmt(g.snr_db) << ',' << g.n_c << ',' << g.n_b << ',' << fmt(p_jd_closed) << ','
            << fmt(g.p_jd) << ',' << fmt(jd_rel) << ',' << (jd_pass ? 1 : 0) << ','
            << fmt(jmap_sim.joint_ser) << ',' << fmt(g.p_jmap) << ',' << fmt(jmap_sigmas) << ','
            << (jmap_pass ? 1 : 0) << ',' << fmt(rel) << ',' << fmt(rel_bound) << ','
            << (rel_pass ? 1 : 0) << '\n';
    }
    write_file(std::filesystem::path(args.out_dir) / "goldens.csv", out.str());
    return all_pass ? kOk : kGoldenMismatch;
}

int run_sweep(const CommonArgs& args, const TlgdParams& tp) {
    std::ifstream in(args.config_path);
    if (!in) throw std::invalid_argument("sweep config not found: " + args.config_path);
    json spec;
    in >> spec;
    const std::string kind = spec.value("kind", "sep");
    SystemConfig base;
    if (spec.contains("system")) base = spec.at("system").get<SystemConfig>();

    if (!spec.contains("axes") || spec.at("axes").empty())
        throw std::invalid_argument("sweep: axes must be declared and nonempty");
    std::vector<std::pair<std::string, std::vector<double>>> axes;
    for (auto& [name, vals] : spec.at("axes").items()) {
        if (!vals.is_array() || vals.empty())
            throw std::invalid_argument("sweep: axis " + name + " must be a nonempty list");
        axes.emplace_back(name, vals.get<std::vector<double>>());
    }

    std::size_t total = 1;
    for (auto& [name, v] : axes) total *= v.size();

    const std::string algo = spec.value("algo", "eb");
    const double delta_re = spec.value("delta_re", 1e-2);
    const double delta_dt = spec.value("delta_dt", 1e-1);
    const int nc_cap = spec.value("nc_cap", 512);
    const std::uint64_t trials = spec.value("trials", 100000ULL);
    const bool delayed = spec.value("delayed", false);
    const std::string decoder = spec.value("decoder", "jd");
    const int sim_threads = spec.value("sim_threads", 1);

    struct Point {
        std::string row;
    };
    std::vector<Point> points(total);

    auto run_point = [&](std::size_t idx) {
        SystemConfig cfg = base;
        std::map<std::string, double> coords;
        std::size_t rem = idx;
        for (auto it = axes.rbegin(); it != axes.rend(); ++it) {
            const auto& [name, vals] = *it;
            const double v = vals[rem % vals.size()];
            rem /= vals.size();
            coords[name] = v;
            if (name == "snr_db")
                cfg.snr_db = v;
            else if (name == "N_B")
                cfg.N_B = static_cast<int>(v);
            else if (name == "N_C")
                cfg.N_C = static_cast<int>(v);
            else if (name == "M")
                cfg.M = static_cast<int>(v);
        }
        std::ostringstream row;
        for (auto& [name, vals] : axes) row << fmt(coords[name]) << ',';
        try {
            if (kind == "sep") {
                const auto result = design(algo, cfg, tp, delta_re, delta_dt, nc_cap);
                if (result.n_c_required > 0) cfg.N_C = result.n_c_required;
                const auto& c = result.constellation;
                const auto breakdown = sep_exact(c, cfg);
                SimOptions opt;
                opt.trials = trials;
                opt.seed = args.seed + idx;
                opt.threads = sim_threads;
                opt.decoder = decoder == "jmap" ? Decoder::JMAP : Decoder::JD;
                if (algo == "dt-eb")  // the receiver thresholds at the design floor
                    opt.threshold_noise = cfg.noise_energy() * (1.0 + delta_dt);
                const SimReport rep =
                    delayed ? simulate_delayed(cfg, c, opt) : simulate(cfg, c, opt);
                row << cfg.N_C << ',' << fmt(breakdown.p_e) << ',' << fmt(breakdown.p_e_prime)
                    << ',' << fmt(breakdown.p_e_approx) << ',' << fmt(rep.joint_ser) << ','
                    << fmt(rep.joint_std_err) << ",ok";
            } else if (kind == "detector") {
                const auto result = design(algo, cfg, tp, delta_re, delta_dt, nc_cap);
                EdParams ed;
                ed.L = static_cast<int>(coords.count("L") ? coords["L"] : 10);
                ed.tau = coords.count("tau") ? coords["tau"] : 0.1;
                ed.n_tilde = cfg.noise_energy();
                ed.partial_d = cfg.partial_d;
                const double pfa = ed_pfa(ed);
                const double pmd = ed_pmd(ed, result.constellation.alpha);
                double pdcd = std::numeric_limits<double>::quiet_NaN();
                if (coords.count("tau_cd")) {
                    CdParams cd;
                    cd.k = spec.value("cd_k", 2);
                    cd.L = spec.value("cd_L", 150);
                    cd.tau_cd = coords["tau_cd"];
                    const std::string mode = spec.value("mode", "gold");
                    pdcd = cd_detect(cfg, result.constellation, cd,
                                     mode == "repetition" ? CdMode::Repetition : CdMode::Gold,
                                     static_cast<int>(trials), args.seed + idx);
                }
                row << fmt(pfa) << ',' << fmt(pmd) << ',' << fmt(pdcd) << ',' << args.seed + idx
                    << ",ok";
            } else {
                throw std::invalid_argument("sweep: unknown kind " + kind);
            }
        } catch (const std::exception& e) {
            std::string msg = e.what();
            for (auto& ch : msg)
                if (ch == ',' || ch == '\n') ch = ';';
            row << "error:" << msg;
        }
        points[idx].row = row.str();
    };

    const int jobs = std::max(1, args.jobs);
    if (jobs == 1 || total == 1) {
        for (std::size_t i = 0; i < total; ++i) run_point(i);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= total) return;
                run_point(i);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    std::ostringstream out;
    out << kCsvSchema << '\n';
    for (auto& [name, vals] : axes) out << name << ',';
    if (kind == "sep")
        out << "n_c,sep_exact,sep_upper,sep_approx,simulated_ser,std_err,status\n";
    else
        out << "p_fa,p_md,p_d_cd,seed,status\n";
    for (const auto& pt : points) out << pt.row << '\n';
    const std::string name = spec.value("name", std::string("sweep_") + kind);
    write_file(std::filesystem::path(args.out_dir) / (name + ".csv"), out.str());
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-coherent fast-forward relay constellation designer"};
    app.require_subcommand(1);

    CommonArgs args;
    app.add_option("--seed", args.seed, "master RNG seed (default from NCFFFD_SEED or 12345)");
    app.add_option("--out-dir", args.out_dir, "output directory");
    app.add_option("--jobs", args.jobs, "worker threads");

    json ov;
    auto add_overrides = [&](CLI::App* cmd) {
        cmd->add_option_function<int>("--m", [&ov](int v) { ov["M"] = v; });
        cmd->add_option_function<int>("--nb", [&ov](int v) { ov["N_B"] = v; });
        cmd->add_option_function<int>("--nc", [&ov](int v) { ov["N_C"] = v; });
        cmd->add_option_function<double>("--snr-db", [&ov](double v) { ov["snr_db"] = v; });
        cmd->add_option_function<double>("--lambda-db", [&ov](double v) { ov["lambda_db"] = v; });
        cmd->add_option_function<double>("--sigma2-ac", [&ov](double v) { ov["sigma2_AC"] = v; });
        cmd->add_option_function<double>("--partial-d", [&ov](double v) { ov["partial_d"] = v; });
        cmd->add_option_function<int>("--delay-n", [&ov](int v) { ov["delay_n"] = v; });
        cmd->add_option("--config", args.config_path, "JSON config file");
    };

    auto* opt_cmd = app.add_subcommand("optimize", "design a constellation");
    std::string algo = "eb";
    TlgdParams tp;
    double delta_re = 1e-2, delta_dt = 1e-1;
    int nc_cap = 512;
    opt_cmd->add_option("--algo", algo)->check(CLI::IsMember({"tlgd", "eb", "dt-eb"}));
    opt_cmd->add_option("--delta-re", delta_re);
    opt_cmd->add_option("--delta-dt", delta_dt);
    opt_cmd->add_option("--nc-cap", nc_cap);
    opt_cmd->add_option("--delta-pe", tp.delta_pe);
    opt_cmd->add_option("--delta-eta1", tp.delta_eta1);
    opt_cmd->add_option("--alpha-init", tp.alpha_init);
    opt_cmd->add_option("--eta2-init", tp.eta2_init);
    add_overrides(opt_cmd);

    auto* eval_cmd = app.add_subcommand("evaluate", "closed-form error report");
    add_overrides(eval_cmd);
    eval_cmd->add_option("--constellation", args.constellation_path)->required();

    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo error report");
    std::uint64_t trials = 1'000'000;
    std::string decoder = "jd";
    bool delayed = false;
    double threshold_noise = std::numeric_limits<double>::quiet_NaN();
    sim_cmd->add_option("--trials", trials);
    sim_cmd->add_option("--decoder", decoder)->check(CLI::IsMember({"jd", "jmap"}));
    sim_cmd->add_flag("--delayed", delayed, "use the relay-delay signal model");
    sim_cmd->add_option("--threshold-noise", threshold_noise,
                        "noise floor for the receiver's thresholds (delay-tolerant designs)");
    add_overrides(sim_cmd);
    sim_cmd->add_option("--constellation", args.constellation_path)->required();

    auto* det_cmd = app.add_subcommand("detect", "adversary detector curves");
    std::vector<int> ed_l{10};
    std::vector<double> ed_tau{0.1};
    std::vector<double> cd_tau;
    std::string cd_mode = "gold";
    int cd_k = 2, cd_frames = 200, cd_len = 150;
    det_cmd->add_option("--ed-l", ed_l, "energy-detector frame lengths");
    det_cmd->add_option("--ed-tau", ed_tau, "energy-detector tolerances");
    det_cmd->add_option("--cd-tau", cd_tau, "correlation-detector resolutions");
    det_cmd->add_option("--cd-mode", cd_mode)->check(CLI::IsMember({"gold", "repetition"}));
    det_cmd->add_option("--cd-k", cd_k);
    det_cmd->add_option("--cd-frames", cd_frames);
    det_cmd->add_option("--cd-l", cd_len);
    add_overrides(det_cmd);
    det_cmd->add_option("--constellation", args.constellation_path)->required();

    auto* sweep_cmd = app.add_subcommand("sweep", "cartesian experiment sweep");
    sweep_cmd->add_option("--config", args.config_path, "sweep spec JSON")->required();

    auto* gold_cmd = app.add_subcommand("goldens", "reference-table reproduction check");
    std::uint64_t gold_trials = 1'000'000;
    std::string golden_file;
    gold_cmd->add_option("--trials", gold_trials);
    gold_cmd->add_option("--golden-file", golden_file, "override the bundled rows");

    // global options may appear after the subcommand
    for (auto* sc : {opt_cmd, eval_cmd, sim_cmd, det_cmd, sweep_cmd, gold_cmd}) sc->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*opt_cmd) {
            const SystemConfig cfg = load_config(args, ov);
            if (algo == "tlgd" && cfg.M != 2) {
                std::cerr << "error: tlgd supports M = 2 only\n";
                return kValidation;
            }
            const OptimizerResult result = design(algo, cfg, tp, delta_re, delta_dt, nc_cap);
            json out;
            to_json(out, result);
            out["system"] = cfg;
            out["algo"] = algo;
            write_file(std::filesystem::path(args.out_dir) / "constellation.json",
                       out.dump(2) + "\n");
            write_file(std::filesystem::path(args.out_dir) / "trace.csv", trace_csv(result));
            std::printf("%s: alpha=%.6f n_c=%d sep=%.6e approx=%.6e\n", algo.c_str(),
                        result.constellation.alpha, result.n_c_required, result.achieved_sep,
                        result.achieved_sep_approx);
        } else if (*eval_cmd) {
            const SystemConfig cfg = load_config(args, ov);
            const Constellation c = load_constellation(args.constellation_path);
            const auto violations = validate_constellation(c, cfg);
            if (!violations.empty()) {
                for (const auto& v : violations) std::cerr << "constraint violated: " << v << "\n";
                return kValidation;
            }
            const auto b = sep_exact(c, cfg);
            json out{{"sep_exact", b.p_e},     {"sep_upper", b.p_e_prime},
                     {"sep_approx", b.p_e_approx}, {"thresholds", b.thresholds},
                     {"p01", b.crossovers.p01},    {"p10", b.crossovers.p10},
                     {"system", cfg},              {"constellation", c}};
            write_file(std::filesystem::path(args.out_dir) / "evaluation.json", out.dump(2) + "\n");
            std::printf("sep_exact=%.6e sep_upper=%.6e sep_approx=%.6e\n", b.p_e, b.p_e_prime,
                        b.p_e_approx);
        } else if (*sim_cmd) {
            const SystemConfig cfg = load_config(args, ov);
            const Constellation c = load_constellation(args.constellation_path);
            SimOptions opt;
            opt.trials = trials;
            opt.seed = args.seed;
            opt.threads = args.jobs;
            opt.decoder = decoder == "jmap" ? Decoder::JMAP : Decoder::JD;
            opt.threshold_noise = threshold_noise;
            const SimReport rep = delayed ? simulate_delayed(cfg, c, opt) : simulate(cfg, c, opt);
            json out;
            to_json(out, rep);
            out["system"] = cfg;
            write_file(std::filesystem::path(args.out_dir) / "simreport.json", out.dump(2) + "\n");
            std::printf("joint_ser=%.6e alice_ber=%.6e charlie_ser=%.6e\n", rep.joint_ser,
                        rep.alice_ber, rep.charlie_ser);
        } else if (*det_cmd) {
            const SystemConfig cfg = load_config(args, ov);
            const Constellation c = load_constellation(args.constellation_path);
            std::ostringstream out;
            out << kCsvSchema << "\nL,tau,mode,p_fa,p_md,p_d_cd,seed\n";
            for (int L : ed_l)
                for (double tau : ed_tau) {
                    EdParams ed;
                    ed.L = L;
                    ed.tau = tau;
                    ed.n_tilde = cfg.noise_energy();
                    ed.partial_d = cfg.partial_d;
                    out << L << ',' << fmt(tau) << ",ed," << fmt(ed_pfa(ed)) << ','
                        << fmt(ed_pmd(ed, c.alpha)) << ",," << args.seed << '\n';
                }
            if (!cd_tau.empty()) {
                CdParams cd;
                cd.k = cd_k;
                cd.L = cd_len;
                const auto mode = cd_mode == "repetition" ? CdMode::Repetition : CdMode::Gold;
                const double baseline =
                    cd_baseline_mi(cfg, cd, args.seed ^ 0x9e3779b97f4a7c15ULL, 1000);
                const auto mi = cd_frame_mi(cfg, c, cd, mode, cd_frames, args.seed);
                for (double t : cd_tau) {
                    int hits = 0;
                    for (double e : mi)
                        if (std::fabs(baseline - e) >= t) ++hits;
                    out << cd_len << ',' << fmt(t) << ',' << cd_mode << ",,,"
                        << fmt(static_cast<double>(hits) / cd_frames) << ',' << args.seed << '\n';
                }
            }
            write_file(std::filesystem::path(args.out_dir) / "detector.csv", out.str());
        } else if (*sweep_cmd) {
            return run_sweep(args, tp);
        } else if (*gold_cmd) {
            return run_goldens(args, gold_trials, golden_file);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::domain_error& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kNumeric;
    }
    return kOk;
}

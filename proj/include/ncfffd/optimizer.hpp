#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncfffd/model.hpp"

namespace ncfffd {

struct TraceRow {
    int iter = 0;
    double eta1 = 0.0;
    double eta2 = 0.0;
    double alpha = 0.0;
    double objective = 0.0;
};

struct OptimizerResult {
    Constellation constellation;
    int n_c_required = 0;  // antenna search output; 0 when not applicable
    double achieved_sep = 0.0;
    double achieved_sep_approx = 0.0;
    std::vector<TraceRow> trace;
};

struct TlgdParams {
    double delta_pe = 1e-5;    // objective resolution
    double delta_eta1 = 1e-3;  // eta1 grid step
    double eta2_init = -1.0;   // < 0 selects 1 + alpha_init/2
    double alpha_init = 0.5;
    int max_outer = 3000;
    int max_inner = 500;

    void validate() const;
};

// Objective used by the two-layer descent (M = 2): the upper bound with the
// smallest dominant term dropped.
double tlgd_objective(const SystemConfig& cfg, double eta1, double eta2, double alpha);

// Signed gap (increasing - decreasing terms) of the objective, whose unique
// zero locates the conditional optimum in eta2 (resp. alpha).
double eta2_term_gap(const SystemConfig& cfg, double eta1, double eta2, double alpha);
double alpha_term_gap(const SystemConfig& cfg, double eta1, double eta2, double alpha);

// Two-layer greedy descent over (eta1, eta2, alpha) for M = 2.
OptimizerResult tlgd(const SystemConfig& cfg, const TlgdParams& params = TlgdParams{});

// Minimizes the dominant-term error average over strictly increasing level
// sets with fixed mean contribution, first level pinned to the noise floor.
std::vector<double> optimize_sum_levels(int m, int n_b, double noise_energy);

// Energy backtracking: sum-level optimum, split factor from the feasibility
// boundary of the complementary set, and the smallest antenna count whose
// evaluated error sits within delta_re of the large-antenna limit.
OptimizerResult eb(const SystemConfig& cfg, double delta_re = 1e-2, int n_c_cap = 512);

// Delay-tolerant variant: direct-link energy capped at delta_dt * N_o and
// levels designed at the correspondingly inflated noise floor.
OptimizerResult dt_eb(const SystemConfig& cfg, double delta_re = 1e-2, double delta_dt = 1e-1,
                      int n_c_cap = 512);

void to_json(nlohmann::json& j, const OptimizerResult& r);
void from_json(const nlohmann::json& j, OptimizerResult& r);

}  // namespace ncfffd

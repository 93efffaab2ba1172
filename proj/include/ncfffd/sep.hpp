#pragma once

#include <vector>

#include "ncfffd/model.hpp"
#include "ncfffd/relay.hpp"

namespace ncfffd {

struct SepBreakdown {
    double p_e = 0.0;         // exact joint symbol-error probability
    double p_e_prime = 0.0;   // upper bound (complementary terms replaced by 1)
    double p_e_approx = 0.0;  // large-N_C limit: dominant terms only
    std::vector<std::pair<double, double>> per_level;  // (dominant, complementary) error terms
    std::vector<double> thresholds;                    // rho_{l,l+1}, from the dominant set
    CrossoverProbs crossovers;
};

// Energy-detection threshold separating hypotheses with per-antenna
// variances s_a < s_b at an n_b-antenna receiver.
double pairwise_threshold(double s_a, double s_b, int n_b);

std::vector<double> pairwise_thresholds(const std::vector<double>& s, int n_b);

// Probability that a level with variance `scale` falls outside the decision
// interval (thresholds[l-1], thresholds[l]] assigned to position l (0-based).
// scale = 0 is the degenerate zero-energy limit.
double level_error(double scale, int l, const std::vector<double>& thresholds, int n_b);

std::vector<std::pair<double, double>> per_level_errors(const SumLevels& levels, int n_b);

SepBreakdown sep_exact(const Constellation& c, const SystemConfig& cfg);
double sep_upper(const Constellation& c, const SystemConfig& cfg);
double sep_approx(const SumLevels& levels, int n_b);

// Same quantities driven directly by a dominant level set and a split factor,
// with the complementary set implied by the index map. Used by the
// energy-backtracking antenna search.
double sep_approx_levels(const std::vector<double>& s, int n_b);
double sep_exact_levels(const std::vector<double>& s, double alpha, const SystemConfig& cfg,
                        int n_c);

}  // namespace ncfffd

#pragma once

#include "ncfffd/model.hpp"

namespace ncfffd {

// Helper-side OOK decoding error model. p00/p11 are the complements of
// p01/p10 by construction.
struct CrossoverProbs {
    double p01 = 0.0;  // victim sent 0, helper decoded 1
    double p10 = 0.0;  // victim sent 1, helper decoded 0
    double p00 = 1.0;
    double p11 = 1.0;
};

// Received-energy variances at the helper for victim symbol 0 and 1.
std::pair<double, double> omegas(const SystemConfig& cfg, double alpha);

// ML energy-detection threshold; lies strictly between N_C*omega0 and N_C*omega1.
double charlie_threshold(double omega0, double omega1, int n_c);

CrossoverProbs crossover_probs(const SystemConfig& cfg, double alpha);

// Variant with an explicit antenna count (used by antenna-search loops).
CrossoverProbs crossover_probs(const SystemConfig& cfg, double alpha, int n_c);

}  // namespace ncfffd

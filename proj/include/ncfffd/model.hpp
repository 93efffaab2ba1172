#pragma once

#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace ncfffd {

// Link and hardware parameters shared by every analytic and Monte Carlo path.
// Energies are dimensionless, normalized to unit average energy per band.
struct SystemConfig {
    int N_C = 1;              // receive antennas at the helper
    int N_B = 8;              // receive antennas at the base station
    int M = 2;                // helper constellation size, power of two
    double snr_db = 14.0;     // SNR = 1/N_o
    double lambda_db = -50.0; // residual self-interference at the helper, dB
    double sigma2_AC = 4.0;   // victim-to-helper channel variance
    double sigma2_AB = 1.0;
    double sigma2_CB = 1.0;
    double partial_d = 0.0;   // helper-to-adversary variance offset
    int delay_n = 0;          // relay delay in symbols

    double noise_energy() const;      // N_o = 10^(-snr_db/10)
    double lambda_linear() const;     // 10^(lambda_db/10); -inf dB maps to 0
    void validate() const;            // throws std::invalid_argument
};

// Victim/helper energy levels. eps[j] is sent when the helper decoded a 0,
// eta[j] when it decoded a 1; alpha is the victim's energy split factor.
struct Constellation {
    std::vector<double> eps;
    std::vector<double> eta;
    double alpha = 0.5;

    int order() const { return static_cast<int>(eps.size()); }
};

// The 2M received-energy hypotheses at the base station. `s` is the dominant
// set (helper decoded correctly), strictly increasing; `s_bar` the
// complementary set, index-aligned with `s`.
struct SumLevels {
    std::vector<double> s;
    std::vector<double> s_bar;

    int size() const { return static_cast<int>(s.size()); }
};

// Bijective map between the transmit pair (i, j) and the level index l.
// i in {0,1}, j in 1..M, l in 1..2M. l mod 4 <= 1 exactly when i = 0.
int index_from_pair(int i, int j, int m);
std::pair<int, int> pair_from_index(int l, int m);

SumLevels build_sum_levels(const Constellation& c, double noise_energy);

// Names of every violated design constraint; empty means feasible.
std::vector<std::string> validate_constellation(const Constellation& c, const SystemConfig& cfg);

void to_json(nlohmann::json& j, const SystemConfig& cfg);
void from_json(const nlohmann::json& j, SystemConfig& cfg);
void to_json(nlohmann::json& j, const Constellation& c);
void from_json(const nlohmann::json& j, Constellation& c);

}  // namespace ncfffd

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "ncfffd/model.hpp"
#include "ncfffd/relay.hpp"
#include "ncfffd/sep.hpp"

namespace ncfffd {

enum class Decoder { JD, JMAP };

struct SimReport {
    std::uint64_t trials = 0;
    double joint_ser = 0.0;    // P(decoded pair != sent pair)
    double alice_ber = 0.0;    // P(decoded victim bit != sent bit) at the base station
    double charlie_ser = 0.0;  // P(decoded helper symbol != sent symbol)
    double relay_p01 = 0.0;    // measured helper crossovers
    double relay_p10 = 0.0;
    double joint_std_err = 0.0;
    double alice_std_err = 0.0;
    double charlie_std_err = 0.0;
    std::uint64_t seed = 0;
};

struct SimOptions {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 12345;
    Decoder decoder = Decoder::JD;
    int threads = 1;  // trials are block-partitioned; results do not depend on this
    // Noise floor used when deriving the decoder's hypothesis levels and
    // thresholds; NaN selects the config's. Delay-tolerant designs budget the
    // direct-link interference here, so their receivers threshold at the
    // inflated floor.
    double threshold_noise = std::numeric_limits<double>::quiet_NaN();
};

SimReport simulate(const SystemConfig& cfg, const Constellation& c, const SimOptions& opt);

// Imperfect fast-forwarding: the helper's multiplexed level carries the
// victim's symbol from delay_n slots ago while the victim's current symbol
// interferes on the direct link. delay_n = 0 reproduces simulate() exactly.
SimReport simulate_delayed(const SystemConfig& cfg, const Constellation& c, const SimOptions& opt);

// Both decoders on identical channel draws (shared received energies).
std::pair<SimReport, SimReport> simulate_both(const SystemConfig& cfg, const Constellation& c,
                                              const SimOptions& opt);

// Joint decoding of a received energy against the full Gaussian-mixture
// likelihood. Returns (victim bit, helper symbol 1..M).
std::pair<int, int> jmap_decode(double energy, const SumLevels& levels, const CrossoverProbs& cross,
                                int n_b);

void to_json(nlohmann::json& j, const SimReport& r);

}  // namespace ncfffd

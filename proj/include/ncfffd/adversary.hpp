#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ncfffd/model.hpp"

namespace ncfffd {

// Energy detector at the adversary: frame average of per-symbol energies
// compared against the pre-attack expectation within tolerance tau.
struct EdParams {
    int L = 10;             // frame length in symbols
    double tau = 0.1;       // detection tolerance
    double n_tilde = 1e-2;  // effective noise: AWGN plus residual self-interference
    double partial_d = 0.0;

    double expected_energy() const { return n_tilde + 0.5; }
    void validate() const;
};

// Correlation detector: per-frame mutual-information estimate compared
// against a long-term pre-attack baseline within resolution tau_cd.
struct CdParams {
    int k = 2;                 // nearest-neighbour order
    int L = 150;               // samples per frame
    double tau_cd = 0.05;
    double baseline_mi = std::numeric_limits<double>::quiet_NaN();  // NaN: estimate internally

    void validate() const;
};

struct GoldConfig {
    int register_degree = 10;
    std::uint32_t taps_a = 0;  // feedback masks; bit k = coefficient of x^k
    std::uint32_t taps_b = 0;
    std::uint32_t seed_a = 1;
    std::uint32_t seed_b = 2;

    // Preferred pair x^10+x^3+1 / x^10+x^9+x^8+x^6+x^3+x^2+1 with seeds
    // chosen so one period is balanced.
    static GoldConfig default_degree10();
    // x^5+x^2+1 / x^5+x^4+x^3+x^2+1.
    static GoldConfig default_degree5();
};

struct DetectorReport {
    int L = 0;
    double tau = 0.0;
    std::string mode;
    double p_fa = 0.0;
    double p_md = 0.0;
    double p_d_cd = 0.0;
    std::uint64_t seed = 0;
};

double ed_pfa(const EdParams& p);
double ed_pmd(const EdParams& p, double alpha);

// Frame-average energy densities (continuous part; an atom of weight 2^-L
// sits at zero). pdf_ul is the pre-attack special case A = 1.
double pdf_ul(int L, double energy);
double pdf_vl(int L, double a_scale, double energy);
double cdf_vl(int L, double a_scale, double energy);  // includes the atom

std::vector<int> gold_bits(const GoldConfig& g, std::size_t n);
std::vector<int> m_sequence(int degree, std::uint32_t taps, std::uint32_t seed, std::size_t n);

// KSG nearest-neighbour mutual information estimate in nats; max-norm joint
// neighbourhoods, strict inner counts, ties broken by sample index.
double ksg_mi(const std::vector<double>& u, const std::vector<double>& v, int k);

enum class CdMode { Gold, Repetition };

double cd_detect(const SystemConfig& cfg, const Constellation& c, const CdParams& p, CdMode mode,
                 int trials, std::uint64_t seed);

// Frame MI estimates under the countermeasure; cd_detect thresholds these.
std::vector<double> cd_frame_mi(const SystemConfig& cfg, const Constellation& c, const CdParams& p,
                                CdMode mode, int trials, std::uint64_t seed);
double cd_baseline_mi(const SystemConfig& cfg, const CdParams& p, std::uint64_t seed,
                      int frames = 1000);

}  // namespace ncfffd

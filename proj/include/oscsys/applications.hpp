#pragma once

// Monte-Carlo harnesses for range-Doppler estimation and multi-user
// (CDMA) symbol recovery on top of the correlation machinery.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oscsys/correlation_analysis.hpp"

namespace oscsys {

// Generator for trial `trial` of a run seeded with `seed`; independent of the
// order in which trials are executed.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Circularly-symmetric complex Gaussian noise with total energy 10^(-snr/10)
// relative to a unit-energy signal.
void add_noise(Signal& f, double snr_db, std::mt19937_64& rng);

std::vector<Signal> random_unit_codebook(std::uint32_t p, std::size_t count, std::uint64_t seed);

struct RadarEstimate {
  std::uint32_t tau;   // estimated delay τ0
  std::uint32_t w;     // estimated Doppler w0
  double peak;         // |m_{φ,e}| at the estimate
  double second_peak;  // largest |m_{φ,e}| elsewhere
  bool ambiguous;      // second_peak within tie tolerance of peak
};

// Grid search over V for the echo e = π(τ0, w0, ·)φ. The coefficient peaks at
// (-τ0, -w0); ties resolve to the smallest (τ, w) estimate.
RadarEstimate radar_estimate(const Signal& phi, const Signal& echo, double tie_tolerance = 1e-9);

struct RadarScenario {
  Signal signal;
  std::uint32_t tau0 = 0;
  std::uint32_t w0 = 0;
  std::optional<double> snr_db;  // nullopt: noiseless
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

struct RadarReport {
  std::size_t trials = 0;
  std::size_t successes = 0;
  std::size_t ambiguous_trials = 0;
  double success_rate = 0.0;
  double mean_peak_to_sidelobe = 0.0;  // over trials with a nonzero sidelobe
};

RadarReport radar_simulate(const RadarScenario& scenario);

enum class Distortion { sync, async, phase, full };

const char* to_string(Distortion d) noexcept;
// Throws std::invalid_argument for unknown names.
Distortion distortion_from_string(const std::string& name);

struct CdmaScenario {
  std::vector<Signal> codebook;
  std::size_t users = 1;
  std::uint32_t constellation = 4;  // symbols are N-th roots of unity
  Distortion distortion = Distortion::sync;
  std::optional<double> snr_db;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  bool blind = false;  // receiver searches V instead of knowing h_i
};

struct CdmaReport {
  std::vector<double> user_ser;  // per user slot
  double aggregate_ser = 0.0;
  std::size_t symbols = 0;
  std::size_t errors = 0;
  double max_interference = 0.0;    // max |statistic - b_i|
  double interference_bound = 0.0;  // (J-1)·4/√p + 1e-9, sync and noiseless only
  bool interference_bound_applies = false;
  bool interference_bound_holds = true;
};

// Per trial: J distinct codewords, uniform symbols b_i, distortions h_i per
// scenario, u = Σ b_i π(h_i) φ_i (+ noise); b_i is decoded from
// conj(m_{φ_i,u}(h_i^-1)) = <π(h_i^-1) u, φ_i>.
CdmaReport cdma_simulate(const CdmaScenario& scenario);

struct StabilityReport {
  bool stable = false;
  bool auto_stable = false;
  bool cross_stable = false;
  double epsilon = 0.0;
  BoundReport bounds;
};

StabilityReport stability_check(const SignalSystem& system, double epsilon,
                                std::size_t pair_budget = 100000, std::uint64_t seed = 0);

}  // namespace oscsys

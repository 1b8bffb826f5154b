#pragma once

// Matrix coefficients m_{φ,ϕ}(τ,w) = <φ, π(τ,w,0) ϕ> over the time-frequency
// plane, and brute-force checks of the correlation and supremum bounds.
//
// The inner product is <f, g> = Σ_t f(t) conj(g(t)). The z coordinate only
// multiplies a coefficient by ψ(-z), so tables are stored at z = 0.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oscsys/heisenberg_system.hpp"
#include "oscsys/oscillator_system.hpp"

namespace oscsys {

Complex inner_product(const Signal& f, const Signal& g);

Complex matrix_coefficient(const Signal& phi, const Signal& psi, const FpElement& tau,
                           const FpElement& w);
Complex matrix_coefficient(const Signal& phi, const Signal& psi, const HeisenbergElement& h);

struct AmbiguityTable {
  std::uint32_t p = 0;
  Matrix values;  // values(τ, w) = m(τ, w, 0)
  std::string owner;

  Complex operator()(std::uint32_t tau, std::uint32_t w) const { return values(tau, w); }
  Eigen::MatrixXd magnitude() const { return values.cwiseAbs(); }
  // max |m(v)| over v ≠ 0
  double max_off_peak() const;
};

AmbiguityTable cross_ambiguity_table(const Signal& phi, const Signal& psi);
AmbiguityTable ambiguity_table(const Signal& phi);

struct Papr {
  double peak;   // max_t |φ(t)|
  double ratio;  // p · peak² / ‖φ‖²
};
Papr papr(const Signal& phi);

enum class BoundMode {
  thumbtack,     // generic ceilings on off-peak auto, cross, supremum
  line_pattern,  // Heisenberg: exact line indicators, unimodularity off W
};

struct BoundThresholds {
  BoundMode mode = BoundMode::thumbtack;
  double auto_corr = 1.0;
  double cross = 1.0;
  double supremum = 1.0;
  double slack = 1e-9;
};

// 2/√p, 4/√p, 2/√p for oscillator families; line-pattern mode with 1/√p for
// the Heisenberg family.
BoundThresholds default_thresholds(Family family, std::uint32_t p, double slack = 1e-9);

struct BoundReport {
  std::uint32_t p = 0;
  Family family = Family::oscillator;
  BoundThresholds thresholds;

  std::vector<double> auto_off_peak;  // per signal
  std::vector<double> supremum;       // per signal
  double max_peak_deviation = 0.0;    // max |A_φ(0) - 1|
  double max_auto = 0.0;
  std::size_t worst_auto = 0;
  double max_sup = 0.0;
  std::size_t worst_sup = 0;

  double max_cross = 0.0;
  std::pair<std::size_t, std::size_t> worst_cross{0, 0};
  std::size_t pairs_checked = 0;
  bool pairs_sampled = false;
  std::uint64_t seed = 0;

  // line-pattern mode only
  double line_pattern_deviation = 0.0;  // max ||A_φ(v)| - 1_L(v)|
  double unimodular_deviation = 0.0;    // max ||φ(t)| - 1/√p|, lines other than W
  double same_line_deviation = 0.0;     // distance of same-line |m| from a coset indicator

  bool auto_pass = false;
  bool cross_pass = false;
  bool sup_pass = false;

  bool passed() const noexcept { return auto_pass && cross_pass && sup_pass; }
};

// Checks every signal, and all unordered pairs when their number is at most
// pair_budget, otherwise pair_budget pairs drawn uniformly with `seed`.
BoundReport verify_bounds(const SignalSystem& system, std::size_t pair_budget,
                          std::uint64_t seed = 0,
                          std::optional<BoundThresholds> thresholds = std::nullopt);

struct InnerProductReport {
  std::size_t pairs = 0;
  double bound = 0.0;
  double max_inner = 0.0;
  std::uint64_t seed = 0;
  bool passed = false;
};

// |<φ, φ'>| ≤ 4/√p + slack over `samples` seeded pairs of distinct signals.
InnerProductReport verify_extended_inner_products(const ExtendedSystem& system,
                                                  std::size_t samples, std::uint64_t seed,
                                                  double slack = 1e-9);

}  // namespace oscsys

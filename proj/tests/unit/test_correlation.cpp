#include <random>

#include "doctest.h"
#include "oscsys/correlation_analysis.hpp"
#include "oscsys/heisenberg_system.hpp"
#include "oscsys/oscillator_system.hpp"

using namespace oscsys;

namespace {

Signal random_unit(std::uint32_t p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Signal f(p);
  for (auto& x : f) x = Complex(n(rng), n(rng));
  return f / f.norm();
}

}  // namespace

TEST_CASE("inner product convention") {
  Signal f(3), g(3);
  f << Complex(0, 1), 0, 0;
  g << 1, 0, 0;
  CHECK(inner_product(f, g) == Complex(0, 1));  // linear in the first slot
  CHECK(inner_product(g, f) == Complex(0, -1));
  CHECK_THROWS_AS(inner_product(f, Signal(4)), std::invalid_argument);
}

TEST_CASE("tables agree with direct matrix coefficients") {
  const std::uint32_t p = 7;
  const Signal f = random_unit(p, 1), g = random_unit(p, 2);
  const AmbiguityTable t = cross_ambiguity_table(f, g);
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      const Complex direct = inner_product(f, pi({p, tau, w, 0}).matrix * g);
      CHECK(std::abs(t(tau, w) - direct) < 1e-12);
      CHECK(std::abs(matrix_coefficient(f, g, FpElement(tau, p), FpElement(w, p)) - direct) < 1e-12);
      for (std::uint32_t z = 0; z < p; ++z) {
        CHECK(std::abs(std::abs(matrix_coefficient(f, g, {p, tau, w, z})) - std::abs(direct)) < 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(matrix_coefficient(f, Signal(5), FpElement(0, 7), FpElement(0, 7)), std::invalid_argument);
}

TEST_CASE("ambiguity table identities") {
  const std::uint32_t p = 11;
  const Signal f = random_unit(p, 5);
  const AmbiguityTable a = ambiguity_table(f);
  CHECK(std::abs(a(0, 0) - 1.0) < 1e-12);
  CHECK(std::abs(a.magnitude().array().square().sum() - p) < 1e-9);
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      CHECK(std::abs(std::abs(a(tau, w)) - std::abs(a((p - tau) % p, (p - w) % p))) < 1e-12);
    }
  }
}

TEST_CASE("special signals") {
  const std::uint32_t p = 7;
  const AmbiguityTable d = ambiguity_table(Signal::Unit(p, 0));
  const Signal flat = Signal::Constant(p, 1 / std::sqrt(7.0));
  const AmbiguityTable c = ambiguity_table(flat);
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      CHECK(std::abs(std::abs(d(tau, w)) - (tau == 0 ? 1.0 : 0.0)) < 1e-12);
      CHECK(std::abs(std::abs(c(tau, w)) - (w == 0 ? 1.0 : 0.0)) < 1e-12);
    }
  }
  CHECK(papr(flat).peak == doctest::Approx(1 / std::sqrt(7.0)));
  CHECK(papr(flat).ratio == doctest::Approx(1.0));
  CHECK(papr(Signal::Unit(p, 0)).ratio == doctest::Approx(7.0));
  for (const Signal& f : torus_basis(standard_torus(p)).signals) {
    CHECK(papr(f).peak == doctest::Approx(1 / std::sqrt(6.0)));
  }
}

TEST_CASE("echo coefficient is a translated ambiguity function") {
  const std::uint32_t p = 11;
  const Signal phi = oscillator_system(p).signals[40];
  const HeisenbergElement h0{p, 3, 2, 0};
  const Signal echo = apply_pi(h0, phi);
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      const HeisenbergElement h{p, tau, w, 0};
      CHECK(std::abs(std::abs(matrix_coefficient(phi, echo, h)) -
                     std::abs(matrix_coefficient(phi, phi, h * h0))) < 1e-12);
    }
  }
}

TEST_CASE("heisenberg bounds") {
  const BoundReport r = verify_bounds(heisenberg_system(5), 1000);
  CHECK(r.passed());
  CHECK(r.max_cross == doctest::Approx(1 / std::sqrt(5.0)).epsilon(1e-9));
  CHECK(r.line_pattern_deviation < 1e-9);
  CHECK(r.unimodular_deviation < 1e-9);
  CHECK(r.same_line_deviation < 1e-9);

  // thumbtack ceilings do not hold for chirps
  const BoundReport t = verify_bounds(heisenberg_system(7), 0, 0, default_thresholds(Family::split, 7));
  CHECK_FALSE(t.auto_pass);
  CHECK(t.max_auto == doctest::Approx(1.0));
}

// The 2/√p ceiling on the off-peak ambiguity of split-torus characters fails
// at p = 7; the exact maximum comes from a direct character sum.
TEST_CASE("split oscillator bounds at p = 7") {
  const std::uint32_t p = 7;
  const BoundReport r = verify_bounds(split_system(p), 100000);
  CHECK_FALSE(r.pairs_sampled);
  CHECK(r.cross_pass);
  CHECK(r.sup_pass);
  CHECK_FALSE(r.auto_pass);

  // independent oracle: max over nontrivial χ ≠ σ of |Σ χ(t) conj χ(t+τ) ψ(-wt)| / (p-1)
  double oracle = 0.0;
  for (const auto& chi : enumerate_mult_characters(p)) {
    if (chi.index() == 0 || chi.index() == (p - 1) / 2) continue;
    for (std::uint32_t tau = 0; tau < p; ++tau) {
      for (std::uint32_t w = 0; w < p; ++w) {
        if (tau == 0 && w == 0) continue;
        Complex s{0, 0};
        for (std::uint32_t t = 1; t < p; ++t) {
          if ((t + tau) % p == 0) continue;
          s += chi.at(t) * std::conj(chi.at((t + tau) % p)) * std::conj(additive_character(FpElement(w * t, p)));
        }
        oracle = std::max(oracle, std::abs(s) / (p - 1));
      }
    }
  }
  CHECK(r.max_auto == doctest::Approx(oracle).epsilon(1e-12));
  CHECK(oracle > 2 / std::sqrt(7.0));
  CHECK(oracle < 2 * std::sqrt(7.0) / 6);
}

TEST_CASE("non-split oscillator bounds") {
  for (std::uint32_t p : {5u, 7u, 11u}) CHECK(verify_bounds(nonsplit_system(p), 20000, 9).passed());
}

TEST_CASE("pair sampling is seeded") {
  const SignalSystem s = oscillator_system(7);
  const BoundReport a = verify_bounds(s, 500, 42), b = verify_bounds(s, 500, 42);
  CHECK(a.pairs_sampled);
  CHECK(a.pairs_checked == 500);
  CHECK(a.max_cross == b.max_cross);
  CHECK(a.worst_cross == b.worst_cross);
  for (double x : a.auto_off_peak) CHECK(x <= 1 + 1e-9);
}

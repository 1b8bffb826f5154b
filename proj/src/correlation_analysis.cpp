#include "oscsys/correlation_analysis.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace oscsys {

Complex inner_product(const Signal& f, const Signal& g) {
  if (f.size() != g.size()) throw std::invalid_argument("signal lengths differ");
  return g.dot(f);  // Eigen conjugates the left operand
}

Complex matrix_coefficient(const Signal& phi, const Signal& psi, const HeisenbergElement& h) {
  if (phi.size() != h.p || psi.size() != h.p) {
    throw std::invalid_argument("signal length differs from p");
  }
  return inner_product(phi, apply_pi(h, psi));
}

Complex matrix_coefficient(const Signal& phi, const Signal& psi, const FpElement& tau,
                           const FpElement& w) {
  if (tau.modulus() != w.modulus()) throw std::invalid_argument("mixed moduli");
  return matrix_coefficient(phi, psi, HeisenbergElement{tau.modulus(), tau.value(), w.value(), 0});
}

namespace {

// Unphased table Σ_t φ(t) conj(ϕ(t+τ)) conj(ψ(wt)); m(τ,w) = ψ(-½τw) · entry.
template <class Sink>
void scan_table(const Signal& phi, const Signal& psi, const std::vector<Complex>& chars,
                Sink&& sink) {
  const auto p = static_cast<std::uint32_t>(phi.size());
  if (psi.size() != phi.size()) throw std::invalid_argument("signal lengths differ");
  std::vector<Complex> x(p);
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t t = 0; t < p; ++t) x[t] = phi(t) * std::conj(psi((t + tau) % p));
    for (std::uint32_t w = 0; w < p; ++w) {
      Complex acc{0.0, 0.0};
      std::uint32_t idx = 0;
      for (std::uint32_t t = 0; t < p; ++t) {
        acc += x[t] * std::conj(chars[idx]);
        idx += w;
        if (idx >= p) idx -= p;
      }
      sink(tau, w, acc);
    }
  }
}

// max |m(v)| over v, or over v ≠ 0 when skip_origin.
double max_magnitude(const Signal& phi, const Signal& psi, const std::vector<Complex>& chars,
                     bool skip_origin) {
  double best = 0.0;
  scan_table(phi, psi, chars, [&](std::uint32_t tau, std::uint32_t w, Complex v) {
    if (skip_origin && tau == 0 && w == 0) return;
    best = std::max(best, std::abs(v));
  });
  return best;
}

}  // namespace

double AmbiguityTable::max_off_peak() const {
  double best = 0.0;
  for (Eigen::Index tau = 0; tau < values.rows(); ++tau) {
    for (Eigen::Index w = 0; w < values.cols(); ++w) {
      if (tau == 0 && w == 0) continue;
      best = std::max(best, std::abs(values(tau, w)));
    }
  }
  return best;
}

AmbiguityTable cross_ambiguity_table(const Signal& phi, const Signal& psi) {
  const auto p = static_cast<std::uint32_t>(phi.size());
  require_odd_prime(p);
  const auto chars = additive_character_table(p);
  const std::uint32_t half = inv_mod(2, p);
  AmbiguityTable table{p, Matrix(p, p), {}};
  scan_table(phi, psi, chars, [&](std::uint32_t tau, std::uint32_t w, Complex v) {
    table.values(tau, w) = std::conj(chars[mul_mod(half, mul_mod(tau, w, p), p)]) * v;
  });
  return table;
}

AmbiguityTable ambiguity_table(const Signal& phi) { return cross_ambiguity_table(phi, phi); }

Papr papr(const Signal& phi) {
  const double peak = phi.cwiseAbs().maxCoeff();
  return {peak, static_cast<double>(phi.size()) * peak * peak / phi.squaredNorm()};
}

BoundThresholds default_thresholds(Family family, std::uint32_t p, double slack) {
  const double root = std::sqrt(static_cast<double>(p));
  if (family == Family::heisenberg) {
    return {BoundMode::line_pattern, 1.0, 1.0 / root, 1.0 / root, slack};
  }
  return {BoundMode::thumbtack, 2.0 / root, 4.0 / root, 2.0 / root, slack};
}

namespace {

const Line* line_of(const SignalSystem& sys, std::size_t i) {
  const auto& g = sys.groups.at(sys.provenance.at(i).group);
  return g.line ? &*g.line : nullptr;
}

// Distance of |m| from the indicator of the coset through its largest entry.
double coset_pattern_deviation(const AmbiguityTable& table, const Line& line) {
  const Eigen::MatrixXd mag = table.magnitude();
  Eigen::Index t0 = 0, w0 = 0;
  mag.maxCoeff(&t0, &w0);
  const std::uint32_t p = table.p;
  double dev = 0.0;
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      const bool on = line.contains(mod(static_cast<std::int64_t>(tau) - t0, p),
                                    mod(static_cast<std::int64_t>(w) - w0, p));
      dev = std::max(dev, std::abs(mag(tau, w) - (on ? 1.0 : 0.0)));
    }
  }
  return dev;
}

}  // namespace

BoundReport verify_bounds(const SignalSystem& system, std::size_t pair_budget, std::uint64_t seed,
                          std::optional<BoundThresholds> thresholds) {
  const std::uint32_t p = system.p;
  const std::size_t n = system.size();
  BoundReport r;
  r.p = p;
  r.family = system.family;
  r.thresholds = thresholds.value_or(default_thresholds(system.family, p));
  r.seed = seed;
  const bool line_mode = r.thresholds.mode == BoundMode::line_pattern;
  const double slack = r.thresholds.slack;
  const double unit = 1.0 / std::sqrt(static_cast<double>(p));
  const auto chars = additive_character_table(p);

  r.auto_off_peak.resize(n);
  r.supremum.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Signal& phi = system.signals[i];
    const AmbiguityTable a = ambiguity_table(phi);
    r.max_peak_deviation = std::max(r.max_peak_deviation, std::abs(a(0, 0) - 1.0));
    r.auto_off_peak[i] = a.max_off_peak();
    r.supremum[i] = papr(phi).peak;
    if (r.auto_off_peak[i] > r.max_auto || i == 0) {
      r.max_auto = r.auto_off_peak[i];
      r.worst_auto = i;
    }
    if (r.supremum[i] > r.max_sup || i == 0) {
      r.max_sup = r.supremum[i];
      r.worst_sup = i;
    }
    if (line_mode) {
      const Line* line = line_of(system, i);
      if (!line) throw std::invalid_argument("line-pattern check needs line provenance");
      const Eigen::MatrixXd mag = a.magnitude();
      for (std::uint32_t tau = 0; tau < p; ++tau) {
        for (std::uint32_t w = 0; w < p; ++w) {
          const double ind = line->contains(tau, w) ? 1.0 : 0.0;
          r.line_pattern_deviation = std::max(r.line_pattern_deviation, std::abs(mag(tau, w) - ind));
        }
      }
      const bool is_w_line = line->direction[0] == 0;
      if (!is_w_line) {
        for (Eigen::Index t = 0; t < phi.size(); ++t) {
          r.unimodular_deviation = std::max(r.unimodular_deviation, std::abs(std::abs(phi(t)) - unit));
        }
      }
    }
  }

  auto check_pair = [&](std::size_t i, std::size_t j) {
    ++r.pairs_checked;
    if (line_mode) {
      const Line* li = line_of(system, i);
      const Line* lj = line_of(system, j);
      if (*li == *lj) {
        const AmbiguityTable m = cross_ambiguity_table(system.signals[i], system.signals[j]);
        r.same_line_deviation = std::max(r.same_line_deviation, coset_pattern_deviation(m, *li));
        return;
      }
    }
    const double mx = max_magnitude(system.signals[i], system.signals[j], chars, false);
    if (mx > r.max_cross) {
      r.max_cross = mx;
      r.worst_cross = {i, j};
    }
  };

  const std::size_t total_pairs = n < 2 ? 0 : n * (n - 1) / 2;
  if (total_pairs <= pair_budget) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) check_pair(i, j);
    }
  } else {
    r.pairs_sampled = true;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < pair_budget; ++k) {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      check_pair(std::min(i, j), std::max(i, j));
    }
  }

  // A_φ(0) = 1 is an identity, not a bound; it keeps its own rounding allowance.
  const bool peak_ok = r.max_peak_deviation <= std::max(slack, 1e-9);
  if (line_mode) {
    r.auto_pass = peak_ok && r.line_pattern_deviation <= slack;
    r.sup_pass = r.unimodular_deviation <= slack;
    r.cross_pass = r.max_cross <= r.thresholds.cross + slack && r.same_line_deviation <= slack;
  } else {
    r.auto_pass = peak_ok && r.max_auto <= r.thresholds.auto_corr + slack;
    r.sup_pass = r.max_sup <= r.thresholds.supremum + slack;
    r.cross_pass = r.max_cross <= r.thresholds.cross + slack;
  }
  return r;
}

InnerProductReport verify_extended_inner_products(const ExtendedSystem& system,
                                                  std::size_t samples, std::uint64_t seed,
                                                  double slack) {
  InnerProductReport r;
  r.bound = 4.0 / std::sqrt(static_cast<double>(system.modulus()));
  r.seed = seed;
  const std::size_t n = system.size();
  if (n >= 2) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      while (j == i) j = pick(rng);
      r.max_inner = std::max(r.max_inner, std::abs(inner_product(system.at(i), system.at(j))));
      ++r.pairs;
    }
  }
  r.passed = r.max_inner <= r.bound + slack;
  return r;
}

}  // namespace oscsys

#include "oscsys/applications.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace oscsys {

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32U)};
  return std::mt19937_64(seq);
}

void add_noise(Signal& f, double snr_db, std::mt19937_64& rng) {
  const double variance = std::pow(10.0, -snr_db / 10.0) / static_cast<double>(f.size());
  std::normal_distribution<double> gauss(0.0, std::sqrt(variance / 2.0));
  for (Eigen::Index t = 0; t < f.size(); ++t) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    f(t) += Complex{re, im};
  }
}

std::vector<Signal> random_unit_codebook(std::uint32_t p, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<Signal> book;
  book.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Signal f(p);
    for (std::uint32_t t = 0; t < p; ++t) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      f(t) = Complex{re, im};
    }
    f.normalize();
    book.push_back(std::move(f));
  }
  return book;
}

RadarEstimate radar_estimate(const Signal& phi, const Signal& echo, double tie_tolerance) {
  const auto p = static_cast<std::uint32_t>(phi.size());
  const Eigen::MatrixXd mag = cross_ambiguity_table(phi, echo).magnitude();
  const double peak = mag.maxCoeff();

  // Among near-maximal cells choose the smallest estimate (-τ, -w).
  bool found = false;
  std::uint32_t best_tau = 0, best_w = 0;
  for (std::uint32_t tau = 0; tau < p && !found; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      const std::uint32_t cell_tau = (p - tau) % p;
      const std::uint32_t cell_w = (p - w) % p;
      if (mag(cell_tau, cell_w) >= peak - tie_tolerance) {
        best_tau = tau;
        best_w = w;
        found = true;
        break;
      }
    }
  }

  double second = 0.0;
  const std::uint32_t chosen_tau = (p - best_tau) % p;
  const std::uint32_t chosen_w = (p - best_w) % p;
  for (std::uint32_t tau = 0; tau < p; ++tau) {
    for (std::uint32_t w = 0; w < p; ++w) {
      if (tau == chosen_tau && w == chosen_w) continue;
      second = std::max(second, mag(tau, w));
    }
  }
  return {best_tau, best_w, mag(chosen_tau, chosen_w), second, second >= peak - tie_tolerance};
}

RadarReport radar_simulate(const RadarScenario& s) {
  if (s.trials < 1) throw std::invalid_argument("radar scenario needs at least one trial");
  const auto p = static_cast<std::uint32_t>(s.signal.size());
  require_odd_prime(p);
  const Signal clean = apply_pi({p, s.tau0 % p, s.w0 % p, 0}, s.signal);

  RadarReport report;
  report.trials = s.trials;
  double ratio_sum = 0.0;
  std::size_t ratio_count = 0;
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    Signal echo = clean;
    if (s.snr_db) {
      auto rng = trial_rng(s.seed, trial);
      add_noise(echo, *s.snr_db, rng);
    }
    const RadarEstimate est = radar_estimate(s.signal, echo);
    if (est.tau == s.tau0 % p && est.w == s.w0 % p) ++report.successes;
    if (est.ambiguous) ++report.ambiguous_trials;
    if (est.second_peak > 0) {
      ratio_sum += est.peak / est.second_peak;
      ++ratio_count;
    }
  }
  report.success_rate = static_cast<double>(report.successes) / static_cast<double>(s.trials);
  report.mean_peak_to_sidelobe = ratio_count ? ratio_sum / static_cast<double>(ratio_count) : 0.0;
  return report;
}

const char* to_string(Distortion d) noexcept {
  switch (d) {
    case Distortion::sync: return "sync";
    case Distortion::async: return "async";
    case Distortion::phase: return "phase";
    case Distortion::full: return "full";
  }
  return "unknown";
}

Distortion distortion_from_string(const std::string& name) {
  for (Distortion d : {Distortion::sync, Distortion::async, Distortion::phase, Distortion::full}) {
    if (name == to_string(d)) return d;
  }
  throw std::invalid_argument("unknown scenario '" + name + "'");
}

namespace {

std::uint32_t nearest_symbol(Complex z, std::uint32_t n) {
  double turns = std::arg(z) / kTwoPi * static_cast<double>(n);
  auto k = static_cast<std::int64_t>(std::llround(turns));
  return static_cast<std::uint32_t>(((k % n) + n) % n);
}

}  // namespace

CdmaReport cdma_simulate(const CdmaScenario& s) {
  const std::size_t J = s.users;
  if (J == 0) throw std::invalid_argument("CDMA scenario needs at least one user");
  if (J > s.codebook.size()) {
    throw std::invalid_argument("users (" + std::to_string(J) + ") exceed codebook size (" +
                                std::to_string(s.codebook.size()) + ")");
  }
  if (s.constellation < 2) throw std::invalid_argument("constellation order must be at least 2");
  const auto p = static_cast<std::uint32_t>(s.codebook.front().size());
  require_odd_prime(p);

  CdmaReport report;
  report.user_ser.assign(J, 0.0);
  report.interference_bound_applies = s.distortion == Distortion::sync && !s.snr_db && !s.blind;
  report.interference_bound =
      static_cast<double>(J - 1) * 4.0 / std::sqrt(static_cast<double>(p)) + 1e-9;

  std::vector<std::size_t> user_errors(J, 0);
  std::vector<std::size_t> order(s.codebook.size());
  for (std::size_t trial = 0; trial < s.trials; ++trial) {
    auto rng = trial_rng(s.seed, trial);

    // Partial Fisher-Yates: first J entries are the chosen codewords.
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t k = 0; k < J; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, order.size() - 1);
      std::swap(order[k], order[pick(rng)]);
    }

    std::uniform_int_distribution<std::uint32_t> symbol(0, s.constellation - 1);
    std::uniform_int_distribution<std::uint32_t> residue(0, p - 1);
    std::vector<std::uint32_t> sent(J);
    std::vector<HeisenbergElement> shifts(J);
    Signal u = Signal::Zero(p);
    for (std::size_t i = 0; i < J; ++i) {
      sent[i] = symbol(rng);
      std::uint32_t tau = 0, w = 0;
      if (s.distortion == Distortion::async || s.distortion == Distortion::full) tau = residue(rng);
      if (s.distortion == Distortion::phase || s.distortion == Distortion::full) w = residue(rng);
      shifts[i] = {p, tau, w, 0};
      const Complex b = std::polar(1.0, kTwoPi * sent[i] / s.constellation);
      u += b * apply_pi(shifts[i], s.codebook[order[i]]);
    }
    if (s.snr_db) add_noise(u, *s.snr_db, rng);

    for (std::size_t i = 0; i < J; ++i) {
      const Signal& phi = s.codebook[order[i]];
      Complex stat;
      if (s.blind) {
        const AmbiguityTable m = cross_ambiguity_table(phi, u);
        Eigen::Index at = 0, aw = 0;
        m.values.cwiseAbs().maxCoeff(&at, &aw);
        stat = std::conj(m(static_cast<std::uint32_t>(at), static_cast<std::uint32_t>(aw)));
      } else {
        stat = inner_product(apply_pi(shifts[i].inverse(), u), phi);
      }
      const Complex b = std::polar(1.0, kTwoPi * sent[i] / s.constellation);
      report.max_interference = std::max(report.max_interference, std::abs(stat - b));
      if (nearest_symbol(stat, s.constellation) != sent[i]) ++user_errors[i];
    }
  }

  report.symbols = J * s.trials;
  for (std::size_t i = 0; i < J; ++i) {
    report.errors += user_errors[i];
    report.user_ser[i] = static_cast<double>(user_errors[i]) / static_cast<double>(s.trials);
  }
  report.aggregate_ser = static_cast<double>(report.errors) / static_cast<double>(report.symbols);
  if (report.interference_bound_applies) {
    report.interference_bound_holds = report.max_interference <= report.interference_bound;
  }
  return report;
}

StabilityReport stability_check(const SignalSystem& system, double epsilon,
                                std::size_t pair_budget, std::uint64_t seed) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  BoundThresholds t;
  t.mode = BoundMode::thumbtack;
  t.auto_corr = epsilon;
  t.cross = epsilon;
  t.supremum = std::numeric_limits<double>::infinity();
  t.slack = 0.0;

  StabilityReport r;
  r.epsilon = epsilon;
  r.bounds = verify_bounds(system, pair_budget, seed, t);
  r.auto_stable = r.bounds.auto_pass;
  r.cross_stable = r.bounds.cross_pass;
  r.stable = r.auto_stable && r.cross_stable;
  return r;
}

}  // namespace oscsys

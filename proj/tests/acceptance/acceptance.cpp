// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oscsys/applications.hpp"
#include "oscsys/correlation_analysis.hpp"
#include "oscsys/heisenberg_system.hpp"
#include "oscsys/oscillator_system.hpp"
#include "oscsys/sl2_group.hpp"
#include "oscsys/weil_repr.hpp"

using namespace oscsys;

namespace {

constexpr double kSlack = 1e-9;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

double inv_sqrt(std::uint32_t p) { return 1.0 / std::sqrt(static_cast<double>(p)); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

Outcome heisenberg_exactness() {
  Outcome o;
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const BoundReport r = verify_bounds(heisenberg_system(p), 0);
    const double dev = std::max(r.line_pattern_deviation, r.max_peak_deviation);
    o.detail << " p=" << p << " dev=" << fmt(dev);
    o.require(dev <= 1e-9 && r.auto_pass, "line pattern p=" + std::to_string(p));
  }
  return o;
}

Outcome heisenberg_cross() {
  Outcome o;
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const SignalSystem sys = heisenberg_system(p);
    const BoundReport r = verify_bounds(sys, sys.size() * sys.size());
    o.detail << " p=" << p << " max=" << fmt(r.max_cross) << "/" << fmt(inv_sqrt(p))
             << " coset_dev=" << fmt(r.same_line_deviation);
    o.require(!r.pairs_sampled && r.max_cross <= inv_sqrt(p) + kSlack,
              "distinct lines p=" + std::to_string(p));
    o.require(r.same_line_deviation <= 1e-9, "same line p=" + std::to_string(p));
  }
  return o;
}

Outcome oscillator_auto() {
  Outcome o;
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const double bound = 2.0 * inv_sqrt(p);
    for (const auto& sys : {split_system(p), nonsplit_system(p)}) {
      const BoundReport r = verify_bounds(sys, 0);
      const bool ok = r.max_peak_deviation <= kSlack && r.max_auto <= bound + kSlack;
      o.detail << " " << to_string(sys.family) << "@" << p << "=" << fmt(r.max_auto) << "/"
               << fmt(bound);
      o.require(ok, std::string(to_string(sys.family)) + " p=" + std::to_string(p));
    }
  }
  return o;
}

Outcome oscillator_cross() {
  Outcome o;
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const SignalSystem sys = oscillator_system(p);
    const std::size_t all = sys.size() * (sys.size() - 1) / 2;
    const std::size_t budget = p <= 7 ? all : 100000;
    const BoundReport r = verify_bounds(sys, budget, 20240601);
    const double bound = 4.0 * inv_sqrt(p);
    o.detail << " p=" << p << " pairs=" << r.pairs_checked << (r.pairs_sampled ? "s" : "")
             << " max=" << fmt(r.max_cross) << "/" << fmt(bound);
    o.require(r.pairs_checked >= std::min(all, std::size_t{100000}), "pair count");
    o.require(r.max_cross <= bound + kSlack, "bound p=" + std::to_string(p));
  }
  return o;
}

Outcome supremum() {
  Outcome o;
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const BoundReport r = verify_bounds(oscillator_system(p), 0);
    const double bound = 2.0 * inv_sqrt(p);
    o.require(r.max_sup <= bound + kSlack, "sup p=" + std::to_string(p));

    const double flat = 1.0 / std::sqrt(static_cast<double>(p - 1));
    double dev = 0.0;
    for (const Signal& f : torus_basis(standard_torus(p)).signals) {
      dev = std::max(dev, std::abs(f(0)));
      for (std::uint32_t t = 1; t < p; ++t) dev = std::max(dev, std::abs(std::abs(f(t)) - flat));
    }
    o.require(dev <= 1e-9, "B_A flat p=" + std::to_string(p));
    o.detail << " p=" << p << " sup=" << fmt(r.max_sup) << "/" << fmt(bound)
             << " B_A_dev=" << fmt(dev);
  }
  return o;
}

Outcome fourier_closure() {
  Outcome o;
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const FourierClosureReport r = fourier_closure_check(oscillator_system(p), 1e-6);
    o.detail << " p=" << p << " " << r.matched << "/" << r.total
             << " min=" << fmt(r.min_overlap);
    o.require(r.passed() && r.min_overlap >= 1.0 - 1e-6, "closure p=" + std::to_string(p));
  }
  return o;
}

Outcome counts() {
  Outcome o;
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    const std::size_t tori = p * (p + 1) / 2;
    const SignalSystem split = split_system(p);
    const SignalSystem osc = oscillator_system(p);
    o.require(enumerate_tori(p, TorusKind::split).size() == tori, "split tori");
    o.require(split.size() == (p - 2) * tori, "split signals");
    o.require(heisenberg_system(p).size() == p * (p + 1), "heisenberg signals");
    if (p <= 7) {
      std::size_t visited = 0;
      extended_system(p, osc).for_each([&](const ExtendedSystem::Index&, const Signal&) { ++visited; });
      o.require(visited == std::size_t{p} * p * osc.size(), "extended enumeration");
    }
    o.detail << " p=" << p << ":" << tori << "/" << split.size() << "/" << std::size_t{p} * p * osc.size();
  }
  o.require(split_system(5).size() == 45 && split_system(7).size() == 140, "worked examples");
  return o;
}

Outcome projectivity() {
  Outcome o;
  double worst = 0.0;
  auto check = [&](const SL2Element& g, const SL2Element& h) {
    const Matrix lhs = rho(g).matrix * rho(h).matrix;
    worst = std::max(worst, best_unimodular_scalar(lhs, rho(g * h).matrix).residual);
  };
  const auto sp3 = enumerate_sl2(3);
  for (const auto& g : sp3) {
    for (const auto& h : sp3) check(g, h);
  }
  std::size_t pairs = sp3.size() * sp3.size();
  for (std::uint32_t p : {5u, 7u, 11u}) {
    const auto sp = enumerate_sl2(p);
    std::mt19937_64 rng(p);
    std::uniform_int_distribution<std::size_t> pick(0, sp.size() - 1);
    for (int k = 0; k < 10000; ++k) check(sp[pick(rng)], sp[pick(rng)]);
    pairs += 10000;
  }
  o.detail << " pairs=" << pairs << " worst=" << fmt(worst);
  o.require(worst <= 1e-9, "residual");
  return o;
}

// Every transported vector must be matched one-to-one by the projector basis of
// its own torus.
Outcome cross_construction() {
  Outcome o;
  double worst = 1.0;
  std::size_t groups = 0;
  for (std::uint32_t p : {5u, 7u}) {
    for (const auto& sys : {split_system(p), nonsplit_system(p)}) {
      for (const SignalGroup& g : sys.groups) {
        const TorusBasis oracle = torus_basis(*g.torus);
        o.require(oracle.signals.size() == g.members.size(), "basis size");
        std::vector<bool> used(oracle.signals.size(), false);
        for (std::size_t m : g.members) {
          double best = 0.0;
          std::size_t arg = 0;
          for (std::size_t j = 0; j < oracle.signals.size(); ++j) {
            const double ov = std::abs(inner_product(sys.signals[m], oracle.signals[j]));
            if (ov > best) best = ov, arg = j;
          }
          o.require(!used[arg], "duplicate match");
          used[arg] = true;
          worst = std::min(worst, best);
        }
        ++groups;
      }
    }
  }
  o.detail << " tori=" << groups << " min_overlap=" << fmt(worst);
  o.require(worst >= 1.0 - 1e-6, "overlap");
  return o;
}

Outcome radar() {
  Outcome o;
  const std::uint32_t p = 13;
  const SignalSystem sys = oscillator_system(p);
  std::size_t hits = 0, total = 0;
  for (std::size_t k = 0; k < 10; ++k) {
    const Signal& phi = sys.signals[k * sys.size() / 10];
    for (std::uint32_t tau = 0; tau < p; ++tau) {
      for (std::uint32_t w = 0; w < p; ++w) {
        const RadarReport r = radar_simulate({phi, tau, w, std::nullopt, 1, 0});
        hits += r.successes;
        ++total;
      }
    }
  }
  const Signal flat = Signal::Constant(p, Complex(inv_sqrt(p), 0.0));
  const RadarEstimate e = radar_estimate(flat, apply_pi({p, 3, 0, 0}, flat));
  o.detail << " recovered=" << hits << "/" << total << " constant_ambiguous=" << e.ambiguous;
  o.require(hits == total, "recovery");
  o.require(e.ambiguous, "constant signal");
  return o;
}

Outcome cdma() {
  Outcome o;
  const std::uint32_t p = 13;
  const SignalSystem sys = oscillator_system(p);
  CdmaScenario sc;
  sc.codebook = sys.signals;
  sc.users = 4;
  sc.distortion = Distortion::full;
  sc.trials = 2000;
  sc.seed = 7;
  const CdmaReport osc = cdma_simulate(sc);
  sc.codebook = random_unit_codebook(p, sys.size(), 11);
  const CdmaReport rnd = cdma_simulate(sc);

  sc.codebook = sys.signals;
  sc.distortion = Distortion::sync;
  const CdmaReport sync = cdma_simulate(sc);

  o.detail << " ser_osc=" << fmt(osc.aggregate_ser) << " ser_random=" << fmt(rnd.aggregate_ser)
           << " sync_interference=" << fmt(sync.max_interference) << "/"
           << fmt(sync.interference_bound);
  o.require(osc.aggregate_ser < rnd.aggregate_ser, "comparative SER");
  o.require(sync.interference_bound_applies && sync.interference_bound_holds, "sync bound");
  return o;
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i], sy += y[i], sxx += x[i] * x[i], sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Outcome complexity() {
  Outcome o;
  std::vector<double> lp, lt, lmodel;
  for (std::uint32_t p : {7u, 11u, 13u, 17u}) {
    double best = 1e300;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = std::chrono::steady_clock::now();
      const SignalSystem sys = split_system(p);
      const auto t1 = std::chrono::steady_clock::now();
      best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
      if (sys.size() == 0) o.require(false, "empty system");
    }
    const double dp = p;
    lp.push_back(std::log(dp));
    lt.push_back(std::log(best));
    lmodel.push_back(std::log(dp * dp * dp * dp * std::log(dp)));
    o.detail << " t(" << p << ")=" << fmt(best) << "s";
  }
  const double measured = least_squares_slope(lp, lt);
  const double model = least_squares_slope(lp, lmodel);
  const double ratio = measured / model;
  o.detail << " slope=" << fmt(measured) << " model=" << fmt(model);
  o.require(ratio >= 1.0 / 3.0 && ratio <= 3.0, "slope ratio " + fmt(ratio));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"heisenberg auto-correlation is the line indicator", heisenberg_exactness},
      {"heisenberg cross-correlation", heisenberg_cross},
      {"oscillator auto-correlation <= 2/sqrt(p)", oscillator_auto},
      {"oscillator cross-correlation <= 4/sqrt(p)", oscillator_cross},
      {"supremum <= 2/sqrt(p), B_A flat at 1/sqrt(p-1)", supremum},
      {"fourier closure", fourier_closure},
      {"counts", counts},
      {"weil representation is projective", projectivity},
      {"transported bases match projector bases", cross_construction},
      {"radar recovery", radar},
      {"cdma oscillator vs random codebook", cdma},
      {"generation time growth", complexity},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << index << ". " << name << ":" << o.detail.str()
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}

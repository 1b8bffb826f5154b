#include <numeric>

#include "doctest.h"
#include "oscsys/correlation_analysis.hpp"
#include "oscsys/heisenberg_system.hpp"
#include "oscsys/oscillator_system.hpp"

using namespace oscsys;

namespace {

double orthonormal_defect(const std::vector<Signal>& v) {
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      d = std::max(d, std::abs(inner_product(v[i], v[j]) - (i == j ? 1.0 : 0.0)));
    }
  }
  return d;
}

std::vector<Signal> members(const SignalSystem& s, const SignalGroup& g) {
  std::vector<Signal> out;
  for (std::size_t m : g.members) out.push_back(s.signals[m]);
  return out;
}

}  // namespace

TEST_CASE("rank census") {
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    const auto split = rank_census(standard_torus(p));
    CHECK(std::accumulate(split.begin(), split.end(), 0) == int(p));
    CHECK(std::count(split.begin(), split.end(), 1) == int(p - 2));
    CHECK(std::count(split.begin(), split.end(), 2) == 1);
    CHECK(split[(p - 1) / 2] == 2);
    CHECK(split[0] == 1);

    const auto ns = rank_census(nonsplit_standard_torus(p));
    CHECK(ns.size() == p + 1);
    CHECK(std::accumulate(ns.begin(), ns.end(), 0) == int(p));
    CHECK(std::count(ns.begin(), ns.end(), 1) == int(p));
    CHECK(std::count(ns.begin(), ns.end(), 0) == 1);
  }
  CHECK_THROWS_AS(character_projector(standard_torus(5), 4), std::out_of_range);
}

TEST_CASE("projectors are orthogonal projectors") {
  const Torus t = enumerate_tori(7, TorusKind::nonsplit)[5];
  const auto ops = aligned_torus_operators(t);
  Matrix total = Matrix::Zero(7, 7);
  for (std::size_t j = 0; j < t.size(); ++j) {
    const Matrix proj = character_projector(ops, j);
    CHECK(projector_defect(proj) < 1e-9);
    total += proj;
  }
  CHECK((total - Matrix::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("standard torus basis is the normalized multiplicative characters") {
  for (std::uint32_t p : {5u, 7u, 13u}) {
    const TorusBasis b = torus_basis(standard_torus(p));
    REQUIRE(b.signals.size() == p - 2);
    CHECK(orthonormal_defect(b.signals) < 1e-9);
    for (const Signal& f : b.signals) {
      CHECK(std::abs(f(0)) < 1e-12);
      // f must be proportional to some nontrivial, non-quadratic character
      double best = 0.0;
      for (const auto& chi : enumerate_mult_characters(p)) {
        Signal c = Signal::Zero(p);
        for (std::uint32_t t = 1; t < p; ++t) c(t) = chi.at(t) / std::sqrt(double(p - 1));
        best = std::max(best, std::abs(inner_product(f, c)));
      }
      CHECK(best > 1 - 1e-9);
    }
  }
  CHECK(torus_basis(nonsplit_standard_torus(7)).signals.size() == 7);
}

TEST_CASE("system counts") {
  CHECK(split_system(5).size() == 45);
  CHECK(split_system(7).size() == 140);
  CHECK(nonsplit_system(3).size() == 9);
  CHECK(nonsplit_system(7).size() == 147);
  CHECK(oscillator_system(5).size() == 95);
  const SignalSystem o = oscillator_system(7);
  CHECK(o.size() == 287);
  CHECK(o.groups.size() == 28 + 21);
  CHECK(extended_system(5, oscillator_system(5)).size() == 2375);
}

TEST_CASE("every group is orthonormal and distinct tori do not share signals") {
  for (std::uint32_t p : {5u, 7u}) {
    const SignalSystem s = oscillator_system(p);
    std::vector<std::size_t> group_of(s.size());
    for (std::size_t g = 0; g < s.groups.size(); ++g) {
      CHECK(orthonormal_defect(members(s, s.groups[g])) < 1e-9);
      for (std::size_t m : s.groups[g].members) group_of[m] = g;
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(std::abs(s.signals[i].norm() - 1.0) < 1e-9);
      for (std::size_t j = i + 1; j < s.size(); ++j) {
        if (group_of[i] != group_of[j]) {
          worst = std::max(worst, std::abs(inner_product(s.signals[i], s.signals[j])));
        }
      }
    }
    CHECK(worst < 1 - 1e-6);
  }
}

TEST_CASE("signals are eigenvectors of their torus") {
  const std::uint32_t p = 7;
  const SignalSystem s = oscillator_system(p);
  for (std::size_t g = 0; g < s.groups.size(); g += 5) {
    const Torus& t = *s.groups[g].torus;
    for (std::size_t m : s.groups[g].members) {
      for (const auto& e : t.elements) {
        const Signal img = apply_rho(e, s.signals[m]);
        const Complex lambda = inner_product(img, s.signals[m]);
        CHECK(std::abs(std::abs(lambda) - 1.0) < 1e-9);
        CHECK((img - lambda * s.signals[m]).cwiseAbs().maxCoeff() < 1e-9);
      }
    }
  }
}

TEST_CASE("conjugation covariance against projector bases") {
  const std::uint32_t p = 5;
  const SignalSystem s = split_system(p);
  for (const SignalGroup& g : s.groups) {
    const TorusBasis oracle = torus_basis(*g.torus);
    for (std::size_t m : g.members) {
      double best = 0.0;
      for (const Signal& f : oracle.signals) best = std::max(best, std::abs(inner_product(s.signals[m], f)));
      CHECK(best > 1 - 1e-6);
    }
    CHECK(s.provenance[g.members[0]].element.has_value());
  }
}

TEST_CASE("fourier closure") {
  for (std::uint32_t p : {5u, 7u}) {
    for (const auto& sys : {split_system(p), nonsplit_system(p), oscillator_system(p)}) {
      const FourierClosureReport r = fourier_closure_check(sys);
      CHECK(r.passed());
      CHECK(r.min_overlap > 1 - 1e-6);
      CHECK(r.failures.empty());
      if (r.weyl_torus) CHECK(r.weyl_torus_fixed == r.weyl_torus_size);
    }
  }
  // B_A is Fourier-stable
  const SignalSystem s = split_system(7);
  const FourierClosureReport r = fourier_closure_check(s);
  for (std::size_t m : s.groups[0].members) {
    const long target = r.permutation[m];
    REQUIRE(target >= 0);
    CHECK(std::find(s.groups[0].members.begin(), s.groups[0].members.end(), std::size_t(target)) !=
          s.groups[0].members.end());
  }
}

TEST_CASE("weyl torus kind depends on p") {
  // w has order 4, so it lies in a split torus iff 4 | p-1
  CHECK(weyl_torus_kind(oscillator_system(5)) == TorusKind::split);
  CHECK(weyl_torus_kind(oscillator_system(7)) == TorusKind::nonsplit);
  CHECK(weyl_torus_kind(split_system(7)) == std::nullopt);
}

TEST_CASE("extended system") {
  const SignalSystem base = oscillator_system(5);
  const ExtendedSystem e = extended_system(5, base);
  CHECK((e.at(3 * 25) - base.signals[3]).cwiseAbs().maxCoeff() == 0.0);
  const auto idx = e.locate(3 * 25 + 2 * 5 + 4);
  CHECK(idx.base == 3);
  CHECK(idx.tau == 2);
  CHECK(idx.w == 4);
  const Signal f = e.at(3 * 25 + 2 * 5 + 4);
  for (std::uint32_t t = 0; t < 5; ++t) {
    CHECK(std::abs(f(t) - additive_character(FpElement(4 * t, 5)) * base.signals[3]((t + 2) % 5)) < 1e-12);
  }
  CHECK_THROWS_AS(e.at(e.size()), std::out_of_range);
  CHECK_THROWS_AS(extended_system(5, heisenberg_system(5)), std::invalid_argument);
  CHECK_THROWS_AS(extended_system(7, base), std::invalid_argument);
  const InnerProductReport r = verify_extended_inner_products(e, 5000, 3);
  CHECK(r.passed);
  CHECK(r.pairs == 5000);
}

TEST_CASE("generation is deterministic") {
  const SignalSystem a = oscillator_system(7), b = oscillator_system(7);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.signals[i] == b.signals[i]);
}

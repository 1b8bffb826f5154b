#pragma once

// Oscillator signals: character vectors of the maximal tori of SL2(F_p) under
// the Weil representation.
//
// A torus T is cyclic, so its operators are the powers of ρ(generator). Since
// ρ is only projective, ρ(generator) is first rescaled by a unimodular μ with
// (μ ρ(generator))^|T| = I; after that k ↦ (μ ρ(generator))^k is a genuine
// representation of T and the group-averaged projectors
//
//   P_j = |T|^-1 Σ_k exp(-2πi jk/|T|) (μ ρ(generator))^k
//
// are exact orthogonal projectors onto the character spaces. The choice of μ
// rotates the character labels but not the set of character spaces.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "oscsys/signal_system.hpp"

namespace oscsys {

// (μ ρ(generator))^k for k = 0..|T|-1.
std::vector<Matrix> aligned_torus_operators(const Torus& torus);

Matrix character_projector(const Torus& torus, std::size_t chi_index);
Matrix character_projector(const std::vector<Matrix>& aligned_ops, std::size_t chi_index);

// Rank of every character projector, indexed by character.
std::vector<int> rank_census(const Torus& torus);

struct TorusBasis {
  std::vector<Signal> signals;
  std::vector<std::size_t> characters;  // character index of each signal
};

// One unit vector per character space of dimension exactly one.
TorusBasis torus_basis(const Torus& torus);

// B_A transported to every split torus gAg^-1, g ∈ torus_representatives(p).
SignalSystem split_system(std::uint32_t p);
// B_{T_ns} transported to every non-split torus by its conjugating witness.
SignalSystem nonsplit_system(std::uint32_t p);
SignalSystem oscillator_system(std::uint32_t p);

// All translates M_w L_τ φ of a base system, enumerated lazily. Index i maps
// to base signal i / p², τ = (i % p²) / p, w = i % p.
class ExtendedSystem {
 public:
  struct Index {
    std::size_t base;
    std::uint32_t tau;
    std::uint32_t w;
  };

  explicit ExtendedSystem(const SignalSystem& base);

  std::uint32_t modulus() const noexcept { return base_->p; }
  std::size_t size() const noexcept;
  Index locate(std::size_t i) const;
  Signal at(std::size_t i) const;
  Signal translate(std::size_t base_index, std::uint32_t tau, std::uint32_t w) const;
  const SignalSystem& base() const noexcept { return *base_; }

  // Visits every signal in index order; f(const Index&, const Signal&).
  template <class Visitor>
  void for_each(Visitor&& visit) const {
    const std::uint32_t p = modulus();
    for (std::size_t b = 0; b < base_->size(); ++b) {
      for (std::uint32_t tau = 0; tau < p; ++tau) {
        for (std::uint32_t w = 0; w < p; ++w) visit(Index{b, tau, w}, translate(b, tau, w));
      }
    }
  }

 private:
  const SignalSystem* base_;
  std::vector<Complex> psi_;
};

ExtendedSystem extended_system(std::uint32_t p, const SignalSystem& base);

// Kind of a torus containing the Weyl element, or nullopt if the system has none.
std::optional<TorusKind> weyl_torus_kind(const SignalSystem& system);

struct FourierClosureReport {
  std::size_t total = 0;
  std::size_t matched = 0;
  double min_overlap = 1.0;         // worst best-match overlap seen
  std::vector<long> permutation;    // matched signal index per signal, -1 if none
  std::vector<std::size_t> failures;
  std::optional<TorusKind> weyl_torus;
  std::size_t weyl_torus_fixed = 0;  // signals of B_{T_w} mapped to themselves
  std::size_t weyl_torus_size = 0;

  bool passed() const noexcept { return matched == total; }
};

// For every φ ∈ B_T, looks for the element of B_{wTw^-1} with
// |<ρ(w)φ, φ'>| ≥ 1 - tolerance.
FourierClosureReport fourier_closure_check(const SignalSystem& system, double tolerance = 1e-6);

}  // namespace oscsys

#pragma once

// The Heisenberg group H = V × F_p, its representation π on C(F_p), and the
// chirp system built from the character bases of the p+1 lines in V.

#include <cstdint>
#include <vector>

#include "oscsys/signal_system.hpp"

namespace oscsys {

struct HeisenbergElement {
  std::uint32_t p;
  std::uint32_t tau;
  std::uint32_t w;
  std::uint32_t z;

  // (τ,w,z)(τ',w',z') = (τ+τ', w+w', z+z'+½(τw'-τ'w))
  HeisenbergElement operator*(const HeisenbergElement& o) const;
  HeisenbergElement inverse() const noexcept;
  bool operator==(const HeisenbergElement&) const noexcept = default;
};

// π(τ,w,z) = ψ(½τw + z) M_w L_τ, with L_τ f(t) = f(t+τ), M_w f(t) = ψ(wt) f(t).
// The sign of the ½τw term is the one that makes π multiplicative for the
// group law above under this shift convention (L_τ M_w = ψ(τw) M_w L_τ).
UnitaryOperator pi(const HeisenbergElement& h);
Signal apply_pi(const HeisenbergElement& h, const Signal& f);

std::vector<Line> enumerate_lines(std::uint32_t p);

// Orthonormal basis of common eigenvectors of π(l, 0), l ∈ L, where entry j
// satisfies π(s·d, 0) φ_j = ψ(js) φ_j for the line direction d.
std::vector<Signal> line_basis(const Line& line);

SignalSystem heisenberg_system(std::uint32_t p);

}  // namespace oscsys

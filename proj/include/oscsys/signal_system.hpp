#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "oscsys/sl2_group.hpp"
#include "oscsys/weil_repr.hpp"

namespace oscsys {

enum class Family { heisenberg, split, nonsplit, oscillator, extended };

const char* to_string(Family f) noexcept;
// Throws std::invalid_argument for unknown names.
Family family_from_string(const std::string& name);

// Line through the origin of V = F_p × F_p, stored by canonical direction
// (1, m) or (0, 1).
struct Line {
  std::uint32_t p;
  std::array<std::uint32_t, 2> direction;

  // s · direction for s = 0..p-1.
  std::vector<std::array<std::uint32_t, 2>> points() const;
  bool contains(std::uint32_t tau, std::uint32_t w) const noexcept;
  bool operator==(const Line&) const noexcept = default;
};

enum class GroupKind { line, split_torus, nonsplit_torus };

const char* to_string(GroupKind k) noexcept;

// One orthonormal batch of signals: the basis of a line or of a torus.
struct SignalGroup {
  GroupKind kind;
  std::optional<Line> line;
  std::optional<Torus> torus;
  std::vector<std::size_t> members;  // indices into SignalSystem::signals
};

struct Provenance {
  Family family;          // family of the batch the signal was generated in
  std::size_t group;      // index into SignalSystem::groups
  std::size_t character;  // character index within the group
  std::optional<SL2Element> element;  // transporting element g ∈ R, if any
};

struct SignalSystem {
  std::uint32_t p = 0;
  Family family = Family::heisenberg;
  std::vector<Signal> signals;
  std::vector<Provenance> provenance;
  std::vector<SignalGroup> groups;

  std::size_t size() const noexcept { return signals.size(); }
};

// Scales f so that its first coordinate with |f(t)| > 1e-6 is real and positive.
void normalize_phase(Signal& f);

// Trace of an orthogonal projector, rounded to the nearest integer.
int projector_rank(const Matrix& projector);

// max |P² - P| and max |P^H - P|.
double projector_defect(const Matrix& projector);

// Unit vector spanning the image of a rank-1 projector: the first column whose
// norm is at least half the largest column norm, normalized and phase-fixed.
Signal rank_one_image(const Matrix& projector);

}  // namespace oscsys

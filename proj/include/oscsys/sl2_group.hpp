#pragma once

// SL2(F_p): elements, Bruhat factorization and the maximal tori.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "oscsys/finite_field.hpp"

namespace oscsys {

// 2x2 matrix [[m11, m12], [m21, m22]] over F_p with determinant 1.
class SL2Element {
 public:
  // Throws std::invalid_argument if the determinant is not 1 mod p.
  SL2Element(std::uint32_t p, std::int64_t m11, std::int64_t m12, std::int64_t m21,
             std::int64_t m22);

  static SL2Element identity(std::uint32_t p);
  static SL2Element weyl(std::uint32_t p);                        // [[0,1],[-1,0]]
  static SL2Element diagonal(std::uint32_t p, std::uint32_t a);   // diag(a, a^-1)
  static SL2Element lower_unipotent(std::uint32_t p, std::uint32_t u);  // [[1,0],[u,1]]

  std::uint32_t modulus() const noexcept { return p_; }
  std::uint32_t a() const noexcept { return m_[0]; }
  std::uint32_t b() const noexcept { return m_[1]; }
  std::uint32_t c() const noexcept { return m_[2]; }
  std::uint32_t d() const noexcept { return m_[3]; }
  FpElement m11() const { return {m_[0], p_}; }
  FpElement m12() const { return {m_[1], p_}; }
  FpElement m21() const { return {m_[2], p_}; }
  FpElement m22() const { return {m_[3], p_}; }
  const std::array<std::uint32_t, 4>& entries() const noexcept { return m_; }

  SL2Element operator*(const SL2Element& o) const;
  SL2Element inverse() const;
  SL2Element pow(std::uint64_t e) const;
  bool is_identity() const noexcept;

  // Injective code m11·p³ + m12·p² + m21·p + m22, used for ordering/keys.
  std::uint64_t code() const noexcept;

  // Acts on column vectors (τ, w).
  std::array<std::uint32_t, 2> apply(std::uint32_t t, std::uint32_t w) const noexcept;

  std::string to_string() const;

  bool operator==(const SL2Element& o) const noexcept = default;
  auto operator<=>(const SL2Element& o) const noexcept { return code() <=> o.code(); }

 private:
  struct Unchecked {};
  SL2Element(Unchecked, std::uint32_t p, std::array<std::uint32_t, 4> m) : p_(p), m_(m) {}

  std::uint32_t p_;
  std::array<std::uint32_t, 4> m_;
};

std::uint64_t order(const SL2Element& g);

// Every element of SL2(F_p), sorted by code(). p(p²-1) elements.
std::vector<SL2Element> enumerate_sl2(std::uint32_t p);

// g = [[1,0],[u,1]] · diag(a, a^-1)
struct LowerCell {
  std::uint32_t u;
  std::uint32_t a;
};
// g = [[1,0],[u2,1]] · diag(a, a^-1) · w · [[1,0],[u1,1]]
struct BigCell {
  std::uint32_t u2;
  std::uint32_t a;
  std::uint32_t u1;
};

struct BruhatFactors {
  std::uint32_t p;
  std::variant<LowerCell, BigCell> cell;

  bool is_lower_cell() const noexcept { return std::holds_alternative<LowerCell>(cell); }
  SL2Element recompose() const;
};

BruhatFactors bruhat_decompose(const SL2Element& g);

// Representatives g = [[1,b],[c,1+bc]] of the split tori gAg^-1, one per torus.
// For b ≠ 0 the pair (b,c) ~ (-b, c+b^-1) describes the same torus; the
// lexicographically smaller pair is kept.
std::vector<SL2Element> torus_representatives(std::uint32_t p);

enum class TorusKind { split, nonsplit };

const char* to_string(TorusKind kind) noexcept;

struct Torus {
  std::vector<SL2Element> elements;  // sorted by code()
  SL2Element generator;
  TorusKind kind;
  SL2Element witness;  // elements == witness · base · witness^-1

  std::uint32_t modulus() const noexcept { return generator.modulus(); }
  std::size_t size() const noexcept { return elements.size(); }
  bool contains(const SL2Element& g) const;
  // Canonical identity of the element set: the sorted element codes.
  std::vector<std::uint64_t> key() const;
  // generator^k, k = 0..size-1.
  std::vector<SL2Element> cyclic_powers() const;
};

// g·T·g^-1, keeping the generator/witness chain.
Torus conjugate(const Torus& t, const SL2Element& g);

// A = {diag(a, a^-1)}, generated by diag(r, r^-1) for the smallest primitive root r.
Torus standard_torus(std::uint32_t p);

// δ with B((t,w),(t',w')) = tt' + δww' anisotropic: 1 when -1 is a
// non-square mod p, otherwise the smallest non-residue.
std::uint32_t nonsplit_form_coefficient(std::uint32_t p);

// Stabilizer in SL2 of the anisotropic form above; p+1 elements.
Torus nonsplit_standard_torus(std::uint32_t p);

std::vector<Torus> enumerate_tori(std::uint32_t p, TorusKind kind);

}  // namespace oscsys

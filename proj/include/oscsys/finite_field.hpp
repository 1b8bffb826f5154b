#pragma once

// Arithmetic in the prime field F_p and its character groups.
//
// Everything downstream (group matrices, time indices, chirp exponents) is an
// element of F_p for an odd prime p. Two flavours are provided: the FpElement
// value type, which carries its modulus and checks mixing, and a handful of
// raw uint32_t helpers used in inner loops where the modulus is already known.

#include <complex>
#include <cstdint>
#include <vector>

namespace oscsys {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Throws std::invalid_argument("<p> is not an odd prime") unless p is an odd
// prime.
void require_odd_prime(std::uint32_t p);
bool is_odd_prime(std::uint32_t p) noexcept;

// Raw modular helpers. Inputs may be any integer; results are in [0, p).
std::uint32_t mod(std::int64_t x, std::uint32_t p) noexcept;
std::uint32_t mul_mod(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept;
std::uint32_t pow_mod(std::uint32_t x, std::uint64_t e, std::uint32_t p) noexcept;
// Throws std::domain_error for x ≡ 0.
std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p);

class FpElement {
 public:
  FpElement(std::int64_t value, std::uint32_t p);

  std::uint32_t value() const noexcept { return value_; }
  std::uint32_t modulus() const noexcept { return p_; }
  bool is_zero() const noexcept { return value_ == 0; }

  FpElement operator+(const FpElement& o) const;
  FpElement operator-(const FpElement& o) const;
  FpElement operator*(const FpElement& o) const;
  FpElement operator-() const;
  FpElement& operator+=(const FpElement& o) { return *this = *this + o; }
  FpElement& operator-=(const FpElement& o) { return *this = *this - o; }
  FpElement& operator*=(const FpElement& o) { return *this = *this * o; }

  // Multiplicative inverse; throws std::domain_error for zero.
  FpElement inv() const;
  FpElement pow(std::uint64_t e) const;

  bool operator==(const FpElement& o) const noexcept = default;

 private:
  void check_same_field(const FpElement& o) const;

  std::uint32_t value_;
  std::uint32_t p_;
};

// Legendre symbol σ(a) = a^{(p-1)/2} mapped to ±1. Throws std::domain_error
// for a = 0.
int legendre(const FpElement& a);
int legendre(std::uint32_t a, std::uint32_t p);

// Smallest generator of F_p^×.
std::uint32_t primitive_root(std::uint32_t p);

// ψ(t) = exp(2πi t / p).
Complex additive_character(const FpElement& t);

// Table of ψ(k) for k = 0..p-1, for hot loops that index by residue.
std::vector<Complex> additive_character_table(std::uint32_t p);

// Smallest quadratic non-residue mod p.
std::uint32_t smallest_nonresidue(std::uint32_t p);

// χ_k(g^j) = exp(2πi k j / (p-1)) for the smallest primitive root g.
class MultiplicativeCharacter {
 public:
  MultiplicativeCharacter(std::uint32_t p, std::uint32_t index);

  std::uint32_t index() const noexcept { return index_; }
  std::uint32_t modulus() const noexcept { return p_; }

  // Value at x ∈ F_p^×; throws std::domain_error for x = 0.
  Complex operator()(const FpElement& x) const;
  Complex at(std::uint32_t x) const;

  // Values ordered by powers of the primitive root: table()[j] = χ(g^j).
  const std::vector<Complex>& table() const noexcept { return table_; }

 private:
  std::uint32_t p_;
  std::uint32_t index_;
  std::vector<Complex> table_;
  std::vector<std::uint32_t> log_;  // discrete log, log_[x] for x in [1, p)
};

// All p-1 characters, index 0 trivial, index (p-1)/2 the Legendre character.
std::vector<MultiplicativeCharacter> enumerate_mult_characters(std::uint32_t p);

}  // namespace oscsys

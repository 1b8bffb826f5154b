#include "oscsys/finite_field.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscsys {

namespace {

Complex root_of_unity(std::uint64_t k, std::uint64_t n) {
  k %= n;
  const double angle = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

bool is_odd_prime(std::uint32_t p) noexcept {
  if (p < 3 || p % 2 == 0) return false;
  for (std::uint32_t d = 3; static_cast<std::uint64_t>(d) * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

void require_odd_prime(std::uint32_t p) {
  if (!is_odd_prime(p)) {
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  }
}

std::uint32_t mod(std::int64_t x, std::uint32_t p) noexcept {
  const std::int64_t r = x % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t mul_mod(std::uint32_t x, std::uint32_t y, std::uint32_t p) noexcept {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(x) * y % p);
}

std::uint32_t pow_mod(std::uint32_t x, std::uint64_t e, std::uint32_t p) noexcept {
  std::uint64_t base = x % p;
  std::uint64_t result = 1 % p;
  while (e > 0) {
    if (e & 1U) result = result * base % p;
    base = base * base % p;
    e >>= 1U;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t inv_mod(std::uint32_t x, std::uint32_t p) {
  x %= p;
  if (x == 0) throw std::domain_error("inverse of 0 in F_" + std::to_string(p));
  // Extended Euclid on (x, p).
  std::int64_t old_r = x, r = p, old_s = 1, s = 0;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  return mod(old_s, p);
}

FpElement::FpElement(std::int64_t value, std::uint32_t p) : value_(0), p_(p) {
  if (p < 3 || p % 2 == 0) {
    throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  }
  value_ = mod(value, p);
}

void FpElement::check_same_field(const FpElement& o) const {
  if (p_ != o.p_) {
    throw std::invalid_argument("mixed moduli: F_" + std::to_string(p_) + " and F_" +
                                std::to_string(o.p_));
  }
}

FpElement FpElement::operator+(const FpElement& o) const {
  check_same_field(o);
  return {static_cast<std::int64_t>(value_) + o.value_, p_};
}

FpElement FpElement::operator-(const FpElement& o) const {
  check_same_field(o);
  return {static_cast<std::int64_t>(value_) - o.value_, p_};
}

FpElement FpElement::operator*(const FpElement& o) const {
  check_same_field(o);
  return {mul_mod(value_, o.value_, p_), p_};
}

FpElement FpElement::operator-() const { return {-static_cast<std::int64_t>(value_), p_}; }

FpElement FpElement::inv() const { return {inv_mod(value_, p_), p_}; }

FpElement FpElement::pow(std::uint64_t e) const { return {pow_mod(value_, e, p_), p_}; }

int legendre(std::uint32_t a, std::uint32_t p) {
  a %= p;
  if (a == 0) throw std::domain_error("Legendre symbol undefined at 0");
  return pow_mod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int legendre(const FpElement& a) { return legendre(a.value(), a.modulus()); }

std::uint32_t primitive_root(std::uint32_t p) {
  require_odd_prime(p);
  // Prime factors of p-1.
  std::vector<std::uint32_t> factors;
  std::uint32_t n = p - 1;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      factors.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) factors.push_back(n);

  for (std::uint32_t g = 2; g < p; ++g) {
    bool generator = true;
    for (std::uint32_t q : factors) {
      if (pow_mod(g, (p - 1) / q, p) == 1) {
        generator = false;
        break;
      }
    }
    if (generator) return g;
  }
  return 1;  // p = 2 only; unreachable after require_odd_prime
}

Complex additive_character(const FpElement& t) {
  return root_of_unity(t.value(), t.modulus());
}

std::vector<Complex> additive_character_table(std::uint32_t p) {
  std::vector<Complex> table(p);
  for (std::uint32_t k = 0; k < p; ++k) table[k] = root_of_unity(k, p);
  return table;
}

std::uint32_t smallest_nonresidue(std::uint32_t p) {
  require_odd_prime(p);
  for (std::uint32_t a = 2; a < p; ++a) {
    if (legendre(a, p) == -1) return a;
  }
  return 0;  // unreachable for odd p
}

MultiplicativeCharacter::MultiplicativeCharacter(std::uint32_t p, std::uint32_t index)
    : p_(p), index_(index), table_(p - 1), log_(p, 0) {
  require_odd_prime(p);
  if (index >= p - 1) throw std::out_of_range("character index out of range");
  const std::uint32_t g = primitive_root(p);
  std::uint32_t x = 1;
  for (std::uint32_t j = 0; j + 1 < p; ++j) {
    log_[x] = j;
    table_[j] = root_of_unity(static_cast<std::uint64_t>(index) * j, p - 1);
    x = mul_mod(x, g, p);
  }
}

Complex MultiplicativeCharacter::at(std::uint32_t x) const {
  x %= p_;
  if (x == 0) throw std::domain_error("multiplicative character undefined at 0");
  return table_[log_[x]];
}

Complex MultiplicativeCharacter::operator()(const FpElement& x) const {
  if (x.modulus() != p_) throw std::invalid_argument("character evaluated in wrong field");
  return at(x.value());
}

std::vector<MultiplicativeCharacter> enumerate_mult_characters(std::uint32_t p) {
  require_odd_prime(p);
  std::vector<MultiplicativeCharacter> out;
  out.reserve(p - 1);
  for (std::uint32_t k = 0; k + 1 < p; ++k) out.emplace_back(p, k);
  return out;
}

}  // namespace oscsys

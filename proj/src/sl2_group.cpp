#include "oscsys/sl2_group.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace oscsys {

SL2Element::SL2Element(std::uint32_t p, std::int64_t m11, std::int64_t m12, std::int64_t m21,
                       std::int64_t m22)
    : p_(p), m_{mod(m11, p), mod(m12, p), mod(m21, p), mod(m22, p)} {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument(std::to_string(p) + " is not an odd prime");
  const std::uint32_t det = mod(static_cast<std::int64_t>(mul_mod(m_[0], m_[3], p)) -
                                    static_cast<std::int64_t>(mul_mod(m_[1], m_[2], p)),
                                p);
  if (det != 1 % p) {
    throw std::invalid_argument("matrix " + to_string() + " has determinant " +
                                std::to_string(det) + ", not 1");
  }
}

SL2Element SL2Element::identity(std::uint32_t p) { return {p, 1, 0, 0, 1}; }

SL2Element SL2Element::weyl(std::uint32_t p) { return {p, 0, 1, -1, 0}; }

SL2Element SL2Element::diagonal(std::uint32_t p, std::uint32_t a) {
  return {p, a, 0, 0, inv_mod(a, p)};
}

SL2Element SL2Element::lower_unipotent(std::uint32_t p, std::uint32_t u) {
  return {p, 1, 0, u, 1};
}

SL2Element SL2Element::operator*(const SL2Element& o) const {
  if (p_ != o.p_) throw std::invalid_argument("mixed moduli in SL2 product");
  const std::uint64_t p = p_;
  const auto& x = m_;
  const auto& y = o.m_;
  return {Unchecked{},
          p_,
          {static_cast<std::uint32_t>((std::uint64_t{x[0]} * y[0] + std::uint64_t{x[1]} * y[2]) % p),
           static_cast<std::uint32_t>((std::uint64_t{x[0]} * y[1] + std::uint64_t{x[1]} * y[3]) % p),
           static_cast<std::uint32_t>((std::uint64_t{x[2]} * y[0] + std::uint64_t{x[3]} * y[2]) % p),
           static_cast<std::uint32_t>((std::uint64_t{x[2]} * y[1] + std::uint64_t{x[3]} * y[3]) % p)}};
}

SL2Element SL2Element::inverse() const {
  return {Unchecked{}, p_, {m_[3], (p_ - m_[1]) % p_, (p_ - m_[2]) % p_, m_[0]}};
}

SL2Element SL2Element::pow(std::uint64_t e) const {
  SL2Element result = identity(p_);
  SL2Element base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

bool SL2Element::is_identity() const noexcept {
  return m_[0] == 1 && m_[1] == 0 && m_[2] == 0 && m_[3] == 1;
}

std::uint64_t SL2Element::code() const noexcept {
  const std::uint64_t p = p_;
  return ((std::uint64_t{m_[0]} * p + m_[1]) * p + m_[2]) * p + m_[3];
}

std::array<std::uint32_t, 2> SL2Element::apply(std::uint32_t t, std::uint32_t w) const noexcept {
  const std::uint64_t p = p_;
  return {static_cast<std::uint32_t>((std::uint64_t{m_[0]} * t + std::uint64_t{m_[1]} * w) % p),
          static_cast<std::uint32_t>((std::uint64_t{m_[2]} * t + std::uint64_t{m_[3]} * w) % p)};
}

std::string SL2Element::to_string() const {
  std::ostringstream os;
  os << "[[" << m_[0] << "," << m_[1] << "],[" << m_[2] << "," << m_[3] << "]]";
  return os.str();
}

std::uint64_t order(const SL2Element& g) {
  SL2Element x = g;
  std::uint64_t n = 1;
  while (!x.is_identity()) {
    x = x * g;
    ++n;
  }
  return n;
}

std::vector<SL2Element> enumerate_sl2(std::uint32_t p) {
  require_odd_prime(p);
  std::vector<SL2Element> out;
  out.reserve(static_cast<std::size_t>(p) * (static_cast<std::size_t>(p) * p - 1));
  for (std::uint32_t a = 0; a < p; ++a) {
    if (a == 0) {
      // ad - bc = 1 forces c = -b^-1, d free.
      for (std::uint32_t b = 1; b < p; ++b) {
        const std::uint32_t c = (p - inv_mod(b, p)) % p;
        for (std::uint32_t d = 0; d < p; ++d) out.emplace_back(p, 0, b, c, d);
      }
    } else {
      const std::uint32_t a_inv = inv_mod(a, p);
      for (std::uint32_t b = 0; b < p; ++b) {
        for (std::uint32_t c = 0; c < p; ++c) {
          const std::uint32_t d = mul_mod((1 + mul_mod(b, c, p)) % p, a_inv, p);
          out.emplace_back(p, a, b, c, d);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

SL2Element BruhatFactors::recompose() const {
  if (const auto* lower = std::get_if<LowerCell>(&cell)) {
    return SL2Element::lower_unipotent(p, lower->u) * SL2Element::diagonal(p, lower->a);
  }
  const auto& big = std::get<BigCell>(cell);
  return SL2Element::lower_unipotent(p, big.u2) * SL2Element::diagonal(p, big.a) *
         SL2Element::weyl(p) * SL2Element::lower_unipotent(p, big.u1);
}

BruhatFactors bruhat_decompose(const SL2Element& g) {
  const std::uint32_t p = g.modulus();
  if (g.b() == 0) {
    // [[a,0],[u·a, a^-1]]
    return {p, LowerCell{mul_mod(g.c(), inv_mod(g.a(), p), p), g.a()}};
  }
  // u2·a·w·u1 = [[a·u1, a], [u2·a·u1 - a^-1, u2·a]]
  const std::uint32_t b_inv = inv_mod(g.b(), p);
  return {p, BigCell{mul_mod(g.d(), b_inv, p), g.b(), mul_mod(g.a(), b_inv, p)}};
}

std::vector<SL2Element> torus_representatives(std::uint32_t p) {
  require_odd_prime(p);
  std::vector<SL2Element> reps;
  reps.reserve(static_cast<std::size_t>(p) * (p + 1) / 2);
  for (std::uint32_t b = 0; b < p; ++b) {
    for (std::uint32_t c = 0; c < p; ++c) {
      if (b != 0) {
        const std::pair<std::uint32_t, std::uint32_t> self{b, c};
        const std::pair<std::uint32_t, std::uint32_t> partner{p - b, (c + inv_mod(b, p)) % p};
        if (partner < self) continue;
      }
      reps.emplace_back(p, 1, b, c, 1 + static_cast<std::int64_t>(mul_mod(b, c, p)));
    }
  }
  return reps;
}

const char* to_string(TorusKind kind) noexcept {
  return kind == TorusKind::split ? "split" : "nonsplit";
}

bool Torus::contains(const SL2Element& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

std::vector<std::uint64_t> Torus::key() const {
  std::vector<std::uint64_t> k;
  k.reserve(elements.size());
  for (const auto& e : elements) k.push_back(e.code());
  return k;
}

std::vector<SL2Element> Torus::cyclic_powers() const {
  std::vector<SL2Element> powers;
  powers.reserve(elements.size());
  SL2Element x = SL2Element::identity(modulus());
  for (std::size_t k = 0; k < elements.size(); ++k) {
    powers.push_back(x);
    x = x * generator;
  }
  return powers;
}

Torus conjugate(const Torus& t, const SL2Element& g) {
  const SL2Element g_inv = g.inverse();
  Torus out{{}, g * t.generator * g_inv, t.kind, g * t.witness};
  out.elements.reserve(t.elements.size());
  for (const auto& e : t.elements) out.elements.push_back(g * e * g_inv);
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

Torus standard_torus(std::uint32_t p) {
  const std::uint32_t r = primitive_root(p);
  Torus t{{}, SL2Element::diagonal(p, r), TorusKind::split, SL2Element::identity(p)};
  for (std::uint32_t a = 1; a < p; ++a) t.elements.push_back(SL2Element::diagonal(p, a));
  std::sort(t.elements.begin(), t.elements.end());
  return t;
}

std::uint32_t nonsplit_form_coefficient(std::uint32_t p) {
  require_odd_prime(p);
  return legendre(p - 1, p) == -1 ? 1 : smallest_nonresidue(p);
}

Torus nonsplit_standard_torus(std::uint32_t p) {
  const std::uint32_t delta = nonsplit_form_coefficient(p);
  // g preserves B(u,v) = uᵀ D v with D = diag(1, δ) iff gᵀ D g = D.
  std::vector<SL2Element> elements;
  for (const auto& g : enumerate_sl2(p)) {
    const std::uint32_t a = g.a(), b = g.b(), c = g.c(), d = g.d();
    const std::uint32_t e11 = (mul_mod(a, a, p) + mul_mod(delta, mul_mod(c, c, p), p)) % p;
    const std::uint32_t e12 = (mul_mod(a, b, p) + mul_mod(delta, mul_mod(c, d, p), p)) % p;
    const std::uint32_t e22 = (mul_mod(b, b, p) + mul_mod(delta, mul_mod(d, d, p), p)) % p;
    if (e11 == 1 && e12 == 0 && e22 == delta) elements.push_back(g);
  }
  const std::uint64_t n = elements.size();
  for (const auto& g : elements) {
    if (order(g) == n) {
      return {std::move(elements), g, TorusKind::nonsplit, SL2Element::identity(p)};
    }
  }
  throw std::logic_error("non-split torus for p=" + std::to_string(p) + " is not cyclic");
}

std::vector<Torus> enumerate_tori(std::uint32_t p, TorusKind kind) {
  std::vector<Torus> tori;
  if (kind == TorusKind::split) {
    const Torus base = standard_torus(p);
    for (const auto& g : torus_representatives(p)) tori.push_back(conjugate(base, g));
    return tori;
  }
  // Every non-central element lies in exactly one maximal torus, so a torus is
  // new iff its conjugated generator has not been seen.
  const Torus base = nonsplit_standard_torus(p);
  std::unordered_set<std::uint64_t> seen;
  for (const auto& g : enumerate_sl2(p)) {
    const SL2Element h = g * base.generator * g.inverse();
    if (seen.contains(h.code())) continue;
    Torus t = conjugate(base, g);
    for (const auto& e : t.elements) {
      const bool central = e.b() == 0 && e.c() == 0 && (e.a() == 1 || e.a() == p - 1);
      if (!central) seen.insert(e.code());
    }
    tori.push_back(std::move(t));
  }
  return tori;
}

}  // namespace oscsys

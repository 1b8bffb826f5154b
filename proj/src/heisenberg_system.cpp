#include "oscsys/heisenberg_system.hpp"

#include <sstream>
#include <stdexcept>

namespace oscsys {

HeisenbergElement HeisenbergElement::operator*(const HeisenbergElement& o) const {
  if (p != o.p) throw std::invalid_argument("mixed moduli in Heisenberg product");
  const std::int64_t twist =
      static_cast<std::int64_t>(mul_mod(tau, o.w, p)) - static_cast<std::int64_t>(mul_mod(o.tau, w, p));
  const std::uint32_t half_twist = mul_mod(mod(twist, p), inv_mod(2, p), p);
  return {p, (tau + o.tau) % p, (w + o.w) % p,
          static_cast<std::uint32_t>((std::uint64_t{z} + o.z + half_twist) % p)};
}

HeisenbergElement HeisenbergElement::inverse() const noexcept {
  return {p, (p - tau) % p, (p - w) % p, (p - z) % p};
}

namespace {

// Phase exponent of π(τ,w,z) at time t: ½τw + z + wt.
std::uint32_t pi_exponent(const HeisenbergElement& h, std::uint32_t half, std::uint32_t t) {
  const std::uint32_t p = h.p;
  const std::uint64_t e = std::uint64_t{mul_mod(half, mul_mod(h.tau, h.w, p), p)} + h.z + mul_mod(h.w, t, p);
  return static_cast<std::uint32_t>(e % p);
}

}  // namespace

Signal apply_pi(const HeisenbergElement& h, const Signal& f) {
  const std::uint32_t p = h.p;
  if (f.size() != p) throw std::invalid_argument("signal length differs from p");
  const auto psi = additive_character_table(p);
  const std::uint32_t half = inv_mod(2, p);
  Signal out(p);
  for (std::uint32_t t = 0; t < p; ++t) out(t) = psi[pi_exponent(h, half, t)] * f((t + h.tau) % p);
  return out;
}

UnitaryOperator pi(const HeisenbergElement& h) {
  const std::uint32_t p = h.p;
  const auto psi = additive_character_table(p);
  const std::uint32_t half = inv_mod(2, p);
  Matrix m = Matrix::Zero(p, p);
  for (std::uint32_t t = 0; t < p; ++t) m(t, (t + h.tau) % p) = psi[pi_exponent(h, half, t)];
  std::ostringstream label;
  label << "pi(" << h.tau << "," << h.w << "," << h.z << ")";
  return {std::move(m), label.str()};
}

std::vector<Line> enumerate_lines(std::uint32_t p) {
  require_odd_prime(p);
  std::vector<Line> lines;
  lines.reserve(p + 1);
  for (std::uint32_t m = 0; m < p; ++m) lines.push_back({p, {1, m}});
  lines.push_back({p, {0, 1}});
  return lines;
}

std::vector<Signal> line_basis(const Line& line) {
  const std::uint32_t p = line.p;
  const auto psi = additive_character_table(p);

  // π restricted to a line is an honest homomorphism s ↦ π(s·d, 0).
  std::vector<Matrix> ops;
  ops.reserve(p);
  for (std::uint32_t s = 0; s < p; ++s) {
    ops.push_back(pi({p, mul_mod(s, line.direction[0], p), mul_mod(s, line.direction[1], p), 0}).matrix);
  }

  std::vector<Signal> basis;
  basis.reserve(p);
  for (std::uint32_t j = 0; j < p; ++j) {
    Matrix proj = Matrix::Zero(p, p);
    for (std::uint32_t s = 0; s < p; ++s) proj += std::conj(psi[mul_mod(j, s, p)]) * ops[s];
    proj /= static_cast<double>(p);
    const int rank = projector_rank(proj);
    if (rank != 1 || projector_defect(proj) > 1e-9) {
      std::ostringstream msg;
      msg << "line (" << line.direction[0] << "," << line.direction[1] << ") character " << j
          << ": projector rank " << rank << ", defect " << projector_defect(proj);
      throw std::logic_error(msg.str());
    }
    basis.push_back(rank_one_image(proj));
  }
  return basis;
}

SignalSystem heisenberg_system(std::uint32_t p) {
  SignalSystem sys;
  sys.p = p;
  sys.family = Family::heisenberg;
  for (const Line& line : enumerate_lines(p)) {
    const std::size_t group = sys.groups.size();
    SignalGroup g{GroupKind::line, line, std::nullopt, {}};
    auto basis = line_basis(line);
    for (std::size_t j = 0; j < basis.size(); ++j) {
      g.members.push_back(sys.signals.size());
      sys.signals.push_back(std::move(basis[j]));
      sys.provenance.push_back({Family::heisenberg, group, j, std::nullopt});
    }
    sys.groups.push_back(std::move(g));
  }
  return sys;
}

}  // namespace oscsys

#include "oscsys/signal_system.hpp"

#include <cmath>
#include <stdexcept>

namespace oscsys {

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::heisenberg: return "heisenberg";
    case Family::split: return "split";
    case Family::nonsplit: return "nonsplit";
    case Family::oscillator: return "oscillator";
    case Family::extended: return "extended";
  }
  return "unknown";
}

Family family_from_string(const std::string& name) {
  for (Family f : {Family::heisenberg, Family::split, Family::nonsplit, Family::oscillator,
                   Family::extended}) {
    if (name == to_string(f)) return f;
  }
  throw std::invalid_argument("unknown family '" + name + "'");
}

const char* to_string(GroupKind k) noexcept {
  switch (k) {
    case GroupKind::line: return "line";
    case GroupKind::split_torus: return "split";
    case GroupKind::nonsplit_torus: return "nonsplit";
  }
  return "unknown";
}

std::vector<std::array<std::uint32_t, 2>> Line::points() const {
  std::vector<std::array<std::uint32_t, 2>> pts;
  pts.reserve(p);
  for (std::uint32_t s = 0; s < p; ++s) {
    pts.push_back({mul_mod(s, direction[0], p), mul_mod(s, direction[1], p)});
  }
  return pts;
}

bool Line::contains(std::uint32_t tau, std::uint32_t w) const noexcept {
  // (τ, w) ∥ (d0, d1)  ⇔  τ·d1 - w·d0 = 0
  return mul_mod(tau % p, direction[1], p) == mul_mod(w % p, direction[0], p);
}

void normalize_phase(Signal& f) {
  for (Eigen::Index t = 0; t < f.size(); ++t) {
    const double mag = std::abs(f(t));
    if (mag > 1e-6) {
      f *= std::conj(f(t)) / mag;
      f(t) = Complex{f(t).real(), 0.0};
      return;
    }
  }
}

int projector_rank(const Matrix& projector) {
  return static_cast<int>(std::lround(projector.trace().real()));
}

double projector_defect(const Matrix& projector) {
  const double idempotence = (projector * projector - projector).cwiseAbs().maxCoeff();
  const double hermitian = (projector.adjoint() - projector).cwiseAbs().maxCoeff();
  return std::max(idempotence, hermitian);
}

Signal rank_one_image(const Matrix& projector) {
  const Eigen::VectorXd norms = projector.colwise().norm().transpose();
  const double largest = norms.maxCoeff();
  if (!(largest > 0)) throw std::logic_error("projector has empty image");
  for (Eigen::Index k = 0; k < norms.size(); ++k) {
    if (norms(k) >= 0.5 * largest) {
      Signal v = projector.col(k) / norms(k);
      normalize_phase(v);
      return v;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace oscsys

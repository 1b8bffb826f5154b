#include "oscsys/oscillator_system.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oscsys {

std::vector<Matrix> aligned_torus_operators(const Torus& torus) {
  const std::size_t n = torus.size();
  const std::uint32_t p = torus.modulus();
  Matrix base = rho(torus.generator).matrix;

  Matrix full = Matrix::Identity(p, p);
  for (std::size_t k = 0; k < n; ++k) full = full * base;
  const Complex lambda = full.trace() / static_cast<double>(p);
  if ((full - lambda * Matrix::Identity(p, p)).cwiseAbs().maxCoeff() > 1e-8) {
    throw std::logic_error("rho(generator)^|T| is not scalar for generator " +
                           torus.generator.to_string());
  }
  base *= std::polar(1.0, -std::arg(lambda) / static_cast<double>(n));

  std::vector<Matrix> ops;
  ops.reserve(n);
  ops.push_back(Matrix::Identity(p, p));
  for (std::size_t k = 1; k < n; ++k) ops.push_back(ops.back() * base);
  return ops;
}

Matrix character_projector(const std::vector<Matrix>& aligned_ops, std::size_t chi_index) {
  const std::size_t n = aligned_ops.size();
  if (chi_index >= n) throw std::out_of_range("character index out of range");
  Matrix proj = Matrix::Zero(aligned_ops[0].rows(), aligned_ops[0].cols());
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = -kTwoPi * static_cast<double>((chi_index * k) % n) / static_cast<double>(n);
    proj += std::polar(1.0, angle) * aligned_ops[k];
  }
  return proj / static_cast<double>(n);
}

Matrix character_projector(const Torus& torus, std::size_t chi_index) {
  return character_projector(aligned_torus_operators(torus), chi_index);
}

namespace {

void check_rank(int rank, const Torus& torus, std::size_t j) {
  if (rank < 0 || rank > 2) {
    std::ostringstream msg;
    msg << "character " << j << " of torus generated by " << torus.generator.to_string()
        << " has projector rank " << rank;
    throw std::logic_error(msg.str());
  }
}

void check_orthonormal(const Matrix& columns, const std::string& what) {
  const double defect = unitarity_defect(columns);
  if (defect > 1e-9) {
    std::ostringstream msg;
    msg << what << " is not orthonormal (defect " << defect << ")";
    throw std::logic_error(msg.str());
  }
}

}  // namespace

std::vector<int> rank_census(const Torus& torus) {
  const auto ops = aligned_torus_operators(torus);
  std::vector<int> ranks;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    ranks.push_back(projector_rank(character_projector(ops, j)));
    check_rank(ranks.back(), torus, j);
  }
  return ranks;
}

TorusBasis torus_basis(const Torus& torus) {
  const auto ops = aligned_torus_operators(torus);
  TorusBasis basis;
  for (std::size_t j = 0; j < ops.size(); ++j) {
    const Matrix proj = character_projector(ops, j);
    const int rank = projector_rank(proj);
    check_rank(rank, torus, j);
    if (projector_defect(proj) > 1e-9) {
      throw std::logic_error("character projector " + std::to_string(j) + " is not a projector");
    }
    if (rank != 1) continue;
    basis.signals.push_back(rank_one_image(proj));
    basis.characters.push_back(j);
  }
  return basis;
}

namespace {

// Emits ρ(g)B for each g, one group per g, with torus = g·base·g^-1.
void transport_basis(SignalSystem& sys, Family family, GroupKind kind, const Torus& base_torus,
                     const TorusBasis& base_basis, const std::vector<SL2Element>& elements) {
  const std::uint32_t p = sys.p;
  Matrix basis_columns(p, base_basis.signals.size());
  for (std::size_t j = 0; j < base_basis.signals.size(); ++j) basis_columns.col(j) = base_basis.signals[j];

  for (const SL2Element& g : elements) {
    Matrix cols = basis_columns;
    apply_rho(g, cols);
    check_orthonormal(cols, "transported basis rho" + g.to_string() + " B");

    const std::size_t group = sys.groups.size();
    SignalGroup sg{kind, std::nullopt, conjugate(base_torus, g), {}};
    for (Eigen::Index j = 0; j < cols.cols(); ++j) {
      Signal s = cols.col(j);
      normalize_phase(s);
      sg.members.push_back(sys.signals.size());
      sys.signals.push_back(std::move(s));
      sys.provenance.push_back({family, group, base_basis.characters[j], g});
    }
    sys.groups.push_back(std::move(sg));
  }
}

}  // namespace

SignalSystem split_system(std::uint32_t p) {
  require_odd_prime(p);
  SignalSystem sys;
  sys.p = p;
  sys.family = Family::split;
  const Torus a = standard_torus(p);
  transport_basis(sys, Family::split, GroupKind::split_torus, a, torus_basis(a),
                  torus_representatives(p));
  return sys;
}

SignalSystem nonsplit_system(std::uint32_t p) {
  require_odd_prime(p);
  SignalSystem sys;
  sys.p = p;
  sys.family = Family::nonsplit;
  const Torus base = nonsplit_standard_torus(p);
  std::vector<SL2Element> witnesses;
  for (const Torus& t : enumerate_tori(p, TorusKind::nonsplit)) witnesses.push_back(t.witness);
  transport_basis(sys, Family::nonsplit, GroupKind::nonsplit_torus, base, torus_basis(base),
                  witnesses);
  return sys;
}

SignalSystem oscillator_system(std::uint32_t p) {
  SignalSystem sys = split_system(p);
  SignalSystem ns = nonsplit_system(p);
  sys.family = Family::oscillator;
  const std::size_t signal_offset = sys.signals.size();
  const std::size_t group_offset = sys.groups.size();
  for (auto& g : ns.groups) {
    for (auto& m : g.members) m += signal_offset;
    sys.groups.push_back(std::move(g));
  }
  for (std::size_t i = 0; i < ns.signals.size(); ++i) {
    Provenance prov = ns.provenance[i];
    prov.group += group_offset;
    sys.signals.push_back(std::move(ns.signals[i]));
    sys.provenance.push_back(std::move(prov));
  }
  return sys;
}

ExtendedSystem::ExtendedSystem(const SignalSystem& base)
    : base_(&base), psi_(additive_character_table(base.p)) {}

std::size_t ExtendedSystem::size() const noexcept {
  const std::size_t p = base_->p;
  return p * p * base_->size();
}

ExtendedSystem::Index ExtendedSystem::locate(std::size_t i) const {
  if (i >= size()) throw std::out_of_range("extended signal index out of range");
  const std::size_t p = base_->p;
  const std::size_t r = i % (p * p);
  return {i / (p * p), static_cast<std::uint32_t>(r / p), static_cast<std::uint32_t>(r % p)};
}

Signal ExtendedSystem::at(std::size_t i) const {
  const Index idx = locate(i);
  return translate(idx.base, idx.tau, idx.w);
}

Signal ExtendedSystem::translate(std::size_t base_index, std::uint32_t tau, std::uint32_t w) const {
  const std::uint32_t p = base_->p;
  const Signal& f = base_->signals.at(base_index);
  Signal out(p);
  for (std::uint32_t t = 0; t < p; ++t) out(t) = psi_[mul_mod(w, t, p)] * f((t + tau) % p);
  return out;
}

ExtendedSystem extended_system(std::uint32_t p, const SignalSystem& base) {
  if (base.p != p) throw std::invalid_argument("base system is over a different field");
  if (base.family == Family::heisenberg || base.family == Family::extended) {
    throw std::invalid_argument("extended system requires an oscillator base");
  }
  return ExtendedSystem(base);
}

std::optional<TorusKind> weyl_torus_kind(const SignalSystem& system) {
  const SL2Element w = SL2Element::weyl(system.p);
  for (const auto& g : system.groups) {
    if (g.torus && g.torus->contains(w)) return g.torus->kind;
  }
  return std::nullopt;
}

FourierClosureReport fourier_closure_check(const SignalSystem& system, double tolerance) {
  const std::uint32_t p = system.p;
  const SL2Element w = SL2Element::weyl(p);

  std::map<std::vector<std::uint64_t>, std::size_t> by_key;
  for (std::size_t gi = 0; gi < system.groups.size(); ++gi) {
    if (system.groups[gi].torus) by_key.emplace(system.groups[gi].torus->key(), gi);
  }

  FourierClosureReport report;
  report.total = system.size();
  report.permutation.assign(system.size(), -1);
  report.weyl_torus = weyl_torus_kind(system);

  for (std::size_t gi = 0; gi < system.groups.size(); ++gi) {
    const SignalGroup& group = system.groups[gi];
    if (!group.torus) {
      for (auto m : group.members) report.failures.push_back(m);
      continue;
    }
    const auto target = by_key.find(conjugate(*group.torus, w).key());
    const bool fixes_weyl = group.torus->contains(w);
    if (fixes_weyl) report.weyl_torus_size += group.members.size();

    for (std::size_t m : group.members) {
      double best = 0.0;
      long best_index = -1;
      if (target != by_key.end()) {
        const Signal image = apply_rho(w, system.signals[m]);
        for (std::size_t cand : system.groups[target->second].members) {
          const double overlap = std::abs(system.signals[cand].dot(image));
          if (overlap > best) {
            best = overlap;
            best_index = static_cast<long>(cand);
          }
        }
      }
      report.min_overlap = std::min(report.min_overlap, best);
      if (best >= 1.0 - tolerance) {
        ++report.matched;
        report.permutation[m] = best_index;
        if (fixes_weyl && best_index == static_cast<long>(m)) ++report.weyl_torus_fixed;
      } else {
        report.failures.push_back(m);
      }
    }
  }
  return report;
}

}  // namespace oscsys

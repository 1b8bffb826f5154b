#pragma once

// The Weil representation of SL2(F_p) on C(F_p), realized projectively from
// three families of generator operators:
//
//   S_a f(t) = σ(a) f(a^-1 t)                 diag(a, a^-1)
//   M_u f(t) = ψ(-(u/2) t²) f(t)              [[1,0],[u,1]]
//   F   f(w) = p^-1/2 Σ_t ψ(wt) f(t)          w = [[0,1],[-1,0]]
//
// ρ(g) is assembled along the Bruhat factorization of g, so ρ(g)ρ(h) equals
// ρ(gh) only up to a unimodular scalar. No normalization constant is applied
// to F; every quantity consumed downstream is invariant under such scalars.

#include <string>

#include <Eigen/Dense>

#include "oscsys/finite_field.hpp"
#include "oscsys/sl2_group.hpp"

namespace oscsys {

using Matrix = Eigen::MatrixXcd;
using Signal = Eigen::VectorXcd;

struct UnitaryOperator {
  Matrix matrix;
  std::string label;

  Signal operator()(const Signal& f) const { return matrix * f; }
};

UnitaryOperator op_scaling(const FpElement& a);  // throws std::domain_error for a = 0
UnitaryOperator op_chirp(const FpElement& u);
UnitaryOperator op_fourier(std::uint32_t p);
UnitaryOperator rho(const SL2Element& g);

// Matrix-free application to every column of `columns` (a single signal is a
// one-column matrix). Scaling and chirp cost O(p) per column, Fourier O(p²).
void apply_scaling(std::uint32_t a, Matrix& columns);
void apply_chirp(std::uint32_t u, Matrix& columns);
void apply_fourier(Matrix& columns);
void apply_rho(const SL2Element& g, Matrix& columns);

Signal apply_rho(const SL2Element& g, const Signal& f);

// max_ij |(U^H U - I)_ij|
double unitarity_defect(const Matrix& u);

// Unimodular λ minimizing ‖x - λ y‖ and the resulting max-entry residual.
struct ScalarFit {
  Complex lambda;
  double residual;
};
ScalarFit best_unimodular_scalar(const Matrix& x, const Matrix& y);

}  // namespace oscsys

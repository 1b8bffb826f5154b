#include "oscsys/weil_repr.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace oscsys {

namespace {

// Exponent -(u/2)t² of the chirp as a residue.
std::vector<std::uint32_t> chirp_exponents(std::uint32_t u, std::uint32_t p) {
  const std::uint32_t coeff = mod(-static_cast<std::int64_t>(mul_mod(u, inv_mod(2, p), p)), p);
  std::vector<std::uint32_t> e(p);
  for (std::uint32_t t = 0; t < p; ++t) e[t] = mul_mod(coeff, mul_mod(t, t, p), p);
  return e;
}

}  // namespace

void apply_scaling(std::uint32_t a, Matrix& columns) {
  const auto p = static_cast<std::uint32_t>(columns.rows());
  const std::uint32_t a_inv = inv_mod(a, p);
  const double sign = legendre(a, p);
  Matrix out(columns.rows(), columns.cols());
  for (std::uint32_t t = 0; t < p; ++t) out.row(t) = sign * columns.row(mul_mod(a_inv, t, p));
  columns = std::move(out);
}

void apply_chirp(std::uint32_t u, Matrix& columns) {
  const auto p = static_cast<std::uint32_t>(columns.rows());
  if (u % p == 0) return;
  const auto psi = additive_character_table(p);
  const auto e = chirp_exponents(u % p, p);
  for (std::uint32_t t = 0; t < p; ++t) columns.row(t) *= psi[e[t]];
}

void apply_fourier(Matrix& columns) {
  columns = op_fourier(static_cast<std::uint32_t>(columns.rows())).matrix * columns;
}

void apply_rho(const SL2Element& g, Matrix& columns) {
  if (columns.rows() != g.modulus()) throw std::invalid_argument("signal length differs from p");
  const BruhatFactors f = bruhat_decompose(g);
  if (const auto* lower = std::get_if<LowerCell>(&f.cell)) {
    apply_scaling(lower->a, columns);
    apply_chirp(lower->u, columns);
    return;
  }
  const auto& big = std::get<BigCell>(f.cell);
  apply_chirp(big.u1, columns);
  apply_fourier(columns);
  apply_scaling(big.a, columns);
  apply_chirp(big.u2, columns);
}

Signal apply_rho(const SL2Element& g, const Signal& f) {
  Matrix m = f;
  apply_rho(g, m);
  return m.col(0);
}

UnitaryOperator op_scaling(const FpElement& a) {
  if (a.is_zero()) throw std::domain_error("scaling by 0 is not in the torus");
  Matrix m = Matrix::Identity(a.modulus(), a.modulus());
  apply_scaling(a.value(), m);
  return {std::move(m), "S_" + std::to_string(a.value())};
}

UnitaryOperator op_chirp(const FpElement& u) {
  Matrix m = Matrix::Identity(u.modulus(), u.modulus());
  apply_chirp(u.value(), m);
  return {std::move(m), "M_" + std::to_string(u.value())};
}

UnitaryOperator op_fourier(std::uint32_t p) {
  const auto psi = additive_character_table(p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(p));
  Matrix m(p, p);
  for (std::uint32_t w = 0; w < p; ++w) {
    for (std::uint32_t t = 0; t < p; ++t) m(w, t) = scale * psi[mul_mod(w, t, p)];
  }
  return {std::move(m), "F"};
}

UnitaryOperator rho(const SL2Element& g) {
  const std::uint32_t p = g.modulus();
  const BruhatFactors f = bruhat_decompose(g);
  std::string label;
  if (const auto* lower = std::get_if<LowerCell>(&f.cell)) {
    label = "M_" + std::to_string(lower->u) + " S_" + std::to_string(lower->a);
  } else {
    const auto& big = std::get<BigCell>(f.cell);
    label = "M_" + std::to_string(big.u2) + " S_" + std::to_string(big.a) + " F M_" +
            std::to_string(big.u1);
  }
  Matrix m = Matrix::Identity(p, p);
  apply_rho(g, m);
  return {std::move(m), "rho" + g.to_string() + " = " + label};
}

double unitarity_defect(const Matrix& u) {
  const Matrix gram = u.adjoint() * u;
  return (gram - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

ScalarFit best_unimodular_scalar(const Matrix& x, const Matrix& y) {
  const Complex overlap = (y.adjoint() * x).trace();  // <y, x>_F
  const Complex lambda = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
  return {lambda, (x - lambda * y).cwiseAbs().maxCoeff()};
}

}  // namespace oscsys

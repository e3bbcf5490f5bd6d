#include "geomech/heisenberg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geomech {

namespace {

const Complex kI(0.0, 1.0);

void require_square_pair(const CMatrix& a, const CMatrix& b, const char* what) {
  require_dim(a.cols(), a.rows(), what);
  require_dim(b.rows(), a.rows(), what);
  require_dim(b.cols(), a.rows(), what);
}

double scale_of(const CMatrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

AntiHermitianElement::AntiHermitianElement(CMatrix matrix, double tol) : m_(std::move(matrix)) {
  require_dim(m_.cols(), m_.rows(), "AntiHermitianElement");
  if (residual() > tol * scale_of(m_)) throw std::invalid_argument("matrix is not anti-Hermitian");
}

DualElement::DualElement(CMatrix matrix, double tol) : m_(std::move(matrix)) {
  require_dim(m_.cols(), m_.rows(), "DualElement");
  if (residual() > tol * scale_of(m_)) throw std::invalid_argument("matrix is not Hermitian");
}

DualElement to_dual(const AntiHermitianElement& a) { return DualElement(kI * a.matrix()); }

AntiHermitianElement to_algebra(const DualElement& xi) { return AntiHermitianElement(-kI * xi.matrix()); }

StateFunctional::StateFunctional(CMatrix density, double tol) : rho_(std::move(density)) {
  require_dim(rho_.cols(), rho_.rows(), "StateFunctional");
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) throw std::invalid_argument("density is not Hermitian");
  if (std::abs(rho_.trace() - Complex(1.0)) > tol) throw std::invalid_argument("density trace is not 1");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(rho_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) throw std::invalid_argument("density is not positive semidefinite");
}

double pairing(const DualElement& xi, const AntiHermitianElement& a) {
  require_square_pair(xi.matrix(), a.matrix(), "pairing");
  return ((kI / 2.0) * (a.matrix() * xi.matrix()).trace()).real();
}

CMatrix jordan_product(const CMatrix& a, const CMatrix& b) {
  require_square_pair(a, b, "jordan_product");
  return 0.5 * (a * b + b * a);
}

CMatrix half_commutator(const CMatrix& a, const CMatrix& b) {
  require_square_pair(a, b, "half_commutator");
  return 0.5 * (a * b - b * a);
}

CMatrix lie_product(const CMatrix& a, const CMatrix& b, double hbar) {
  require_square_pair(a, b, "lie_product");
  return (kI / hbar) * (a * b - b * a);
}

double tensor_R(const StateFunctional& omega, const CMatrix& a, const CMatrix& b) {
  require_square_pair(omega.density(), a, "tensor_R");
  require_square_pair(omega.density(), b, "tensor_R");
  return (0.5 * (omega.density() * (a * b + b * a)).trace()).real();
}

double tensor_Lambda(const StateFunctional& omega, const CMatrix& a, const CMatrix& b) {
  require_square_pair(omega.density(), a, "tensor_Lambda");
  require_square_pair(omega.density(), b, "tensor_Lambda");
  return ((omega.density() * (a * b - b * a)).trace() / (2.0 * kI)).real();
}

StateFunctional momentum_map(const CVector& psi) { return StateFunctional(ray_projector(psi).matrix()); }

Observable heisenberg_evolve(const Observable& h, const Observable& a, double t, double hbar) {
  require_dim(a.dim(), h.dim(), "heisenberg_evolve");
  const CMatrix u = propagator(h, t, hbar);
  return Observable(u.adjoint() * a.matrix() * u);
}

CMatrix hamiltonian_derivation(const Observable& h, const Observable& a, double hbar) {
  require_dim(a.dim(), h.dim(), "hamiltonian_derivation");
  return lie_product(h.matrix(), a.matrix(), hbar);
}

double jordan_lie_associator_residual(const CMatrix& a, const CMatrix& b, const CMatrix& c) {
  const CMatrix lhs = jordan_product(jordan_product(a, b), c) - jordan_product(a, jordan_product(b, c));
  const CMatrix rhs = -half_commutator(half_commutator(a, c), b);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

double jordan_lie_associator_residual_hbar(const CMatrix& a, const CMatrix& b, const CMatrix& c, double hbar) {
  const CMatrix lhs = jordan_product(jordan_product(a, b), c) - jordan_product(a, jordan_product(b, c));
  const CMatrix rhs = (hbar * hbar / 4.0) * lie_product(lie_product(a, c, hbar), b, hbar);
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace geomech

#include "geomech/schrodinger.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geomech {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

Observable::Observable(CMatrix matrix, double tol) : m_(std::move(matrix)) {
  require_dim(m_.cols(), m_.rows(), "Observable: square matrix");
  if (m_.rows() < 1) throw DimensionError("Observable: empty matrix");
  if (!m_.allFinite()) throw NumericalError("Observable: non-finite entries");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw std::invalid_argument("Observable: matrix is not Hermitian");
  m_ = 0.5 * (m_ + m_.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_);
  if (solver.info() != Eigen::Success) throw NumericalError("Observable: eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Observable Observable::identity(int n) { return Observable(CMatrix::Identity(n, n)); }

Observable Observable::pauli_x() {
  CMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return Observable(m);
}

Observable Observable::pauli_y() {
  CMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return Observable(m);
}

Observable Observable::pauli_z() {
  CMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return Observable(m);
}

double Observable::hermiticity_residual() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

double Observable::eigen_residual() const {
  const CMatrix r = m_ * eigenvectors_ - eigenvectors_ * eigenvalues_.cast<Complex>().asDiagonal();
  return r.cwiseAbs().maxCoeff();
}

double expectation(const Observable& a, const CVector& psi) {
  require_dim(psi.size(), a.dim(), "expectation");
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0)) throw DomainError("expectation: zero state");
  return psi.dot(a.matrix() * psi).real() / n2;
}

double expectation(const Observable& a, const QuantumState& psi) { return expectation(a, psi.amplitudes()); }

double quadratic_function(const CMatrix& a, const Vector& v) {
  const CVector psi = complexify(v);
  require_dim(psi.size(), a.rows(), "quadratic_function");
  return 0.5 * psi.dot(a * psi).real();
}

Vector quadratic_gradient(const CMatrix& a, const Vector& v) {
  const CVector psi = complexify(v);
  require_dim(psi.size(), a.rows(), "quadratic_gradient");
  return realify(a * psi);
}

Vector schrodinger_vector_field(const Observable& h, const QuantumState& psi, double hbar) {
  require_dim(psi.dim(), h.dim(), "schrodinger_vector_field");
  return realify((-kI / hbar) * (h.matrix() * psi.amplitudes()));
}

CMatrix propagator(const Observable& h, double t, double hbar) {
  const Vector& e = h.eigenvalues();
  CVector phases(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) phases[k] = std::exp(-kI * e[k] * t / hbar);
  return h.eigenvectors() * phases.asDiagonal() * h.eigenvectors().adjoint();
}

QuantumState evolve(const Observable& h, const QuantumState& psi0, double t, double hbar) {
  require_dim(psi0.dim(), h.dim(), "evolve");
  if (t == 0.0) return psi0;
  // Rotate into the eigenbasis, apply phases, rotate back.
  const CMatrix& v = h.eigenvectors();
  CVector c = v.adjoint() * psi0.amplitudes();
  for (Eigen::Index k = 0; k < c.size(); ++k) c[k] *= std::exp(-kI * h.eigenvalues()[k] * t / hbar);
  return QuantumState::unit(v * c);
}

std::vector<MeasurementOutcome> measure(const Observable& a, const QuantumState& psi, double degeneracy_tol) {
  require_dim(psi.dim(), a.dim(), "measure");
  const CVector overlaps = a.eigenvectors().adjoint() * psi.amplitudes();
  std::vector<MeasurementOutcome> out;
  const Vector& e = a.eigenvalues();
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    const double p = std::norm(overlaps[k]);
    if (!out.empty() && std::abs(e[k] - out.back().eigenvalue) <= degeneracy_tol * std::max(1.0, std::abs(e[k]))) {
      out.back().probability += p;
    } else {
      out.push_back({e[k], p});
    }
  }
  return out;
}

}  // namespace geomech

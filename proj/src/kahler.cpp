#include "geomech/kahler.hpp"

#include <algorithm>
#include <cmath>

namespace geomech {

Vector realify(const CVector& z) {
  const auto n = z.size();
  Vector v(2 * n);
  v.head(n) = z.real();
  v.tail(n) = z.imag();
  return v;
}

CVector complexify(const Vector& v) {
  if (v.size() % 2 != 0) throw DimensionError("complexify: odd real dimension");
  const auto n = v.size() / 2;
  CVector z(n);
  for (Eigen::Index k = 0; k < n; ++k) z[k] = Complex(v[k], v[n + k]);
  return z;
}

Matrix realify_operator(const CMatrix& a) {
  const auto n = a.rows();
  require_dim(a.cols(), n, "realify_operator: square matrix");
  Matrix m(2 * n, 2 * n);
  m.topLeftCorner(n, n) = a.real();
  m.topRightCorner(n, n) = -a.imag();
  m.bottomLeftCorner(n, n) = a.imag();
  m.bottomRightCorner(n, n) = a.real();
  return m;
}

KahlerSpace::KahlerSpace(int complex_dim) : n_(complex_dim) {
  if (complex_dim < 1) throw DimensionError("KahlerSpace: complex dimension must be positive");
  const int n = complex_dim;
  g_ = Matrix::Identity(2 * n, 2 * n);
  omega_ = Matrix::Zero(2 * n, 2 * n);
  omega_.topRightCorner(n, n) = Matrix::Identity(n, n);
  omega_.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  j_ = Matrix::Zero(2 * n, 2 * n);
  j_.topRightCorner(n, n) = -Matrix::Identity(n, n);
  j_.bottomLeftCorner(n, n) = Matrix::Identity(n, n);
}

Matrix KahlerSpace::contravariant_metric() const { return g_.inverse(); }

Matrix KahlerSpace::contravariant_symplectic() const { return -omega_.inverse(); }

double KahlerSpace::g(const Vector& x, const Vector& y) const {
  require_dim(x.size(), real_dim(), "KahlerSpace::g");
  require_dim(y.size(), real_dim(), "KahlerSpace::g");
  return x.dot(g_ * y);
}

double KahlerSpace::omega(const Vector& x, const Vector& y) const {
  require_dim(x.size(), real_dim(), "KahlerSpace::omega");
  require_dim(y.size(), real_dim(), "KahlerSpace::omega");
  return x.dot(omega_ * y);
}

double KahlerSpace::G(const Vector& a, const Vector& b) const {
  require_dim(a.size(), real_dim(), "KahlerSpace::G");
  require_dim(b.size(), real_dim(), "KahlerSpace::G");
  return a.dot(contravariant_metric() * b);
}

double KahlerSpace::Omega(const Vector& a, const Vector& b) const {
  require_dim(a.size(), real_dim(), "KahlerSpace::Omega");
  require_dim(b.size(), real_dim(), "KahlerSpace::Omega");
  return a.dot(contravariant_symplectic() * b);
}

QuantumState::QuantumState(CVector amplitudes) : amps_(std::move(amplitudes)) {
  const double norm = amps_.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("QuantumState: zero or non-finite vector");
  amps_ /= norm;
}

QuantumState QuantumState::basis(int n, int k) {
  CVector v = CVector::Zero(n);
  v[k] = 1.0;
  return QuantumState(v);
}

QuantumState QuantumState::unit(CVector amplitudes, double tol) {
  if (!(std::abs(amplitudes.norm() - 1.0) <= tol)) throw DomainError("QuantumState::unit: vector is not normalized");
  return QuantumState(std::move(amplitudes), Unchecked{});
}

double RayProjector::idempotency_residual() const { return (m_ * m_ - m_).cwiseAbs().maxCoeff(); }

HermitianSplit hermitian_split(const KahlerSpace& space, const CVector& x, const CVector& y) {
  require_dim(x.size(), space.complex_dim(), "hermitian_split");
  require_dim(y.size(), space.complex_dim(), "hermitian_split");
  const Vector xr = realify(x);
  const Vector yr = realify(y);
  const double gp = space.g(xr, yr);
  const double wp = space.omega(xr, yr);
  return {gp, wp, Complex(gp, wp)};
}

double fubini_study_metric(const CVector& z, const CVector& dz) {
  require_dim(dz.size(), z.size(), "fubini_study_metric");
  if (!z.allFinite() || !dz.allFinite()) throw DomainError("fubini_study_metric: chart singularity");
  const double s = 1.0 + z.squaredNorm();
  const Complex overlap = z.dot(dz);  // Σ conj(z_k) dz_k
  return (s * dz.squaredNorm() - std::norm(overlap)) / (s * s);
}

AffineChart affine_chart(const CVector& psi) {
  if (psi.size() < 1) throw DimensionError("affine_chart: empty vector");
  Eigen::Index pivot = 0;
  psi.cwiseAbs().maxCoeff(&pivot);
  const Complex lead = psi[pivot];
  if (std::abs(lead) == 0.0) throw DomainError("affine_chart: zero vector");
  CVector z(psi.size() - 1);
  for (Eigen::Index k = 0, m = 0; k < psi.size(); ++k)
    if (k != pivot) z[m++] = psi[k] / lead;
  return {static_cast<int>(pivot), z};
}

CVector chart_state(const AffineChart& chart) {
  const auto n = chart.z.size() + 1;
  CVector psi(n);
  for (Eigen::Index k = 0, m = 0; k < n; ++k) psi[k] = (k == chart.pivot) ? Complex(1.0) : chart.z[m++];
  return psi / std::sqrt(1.0 + chart.z.squaredNorm());
}

GeodesicTransition geodesic_transition(const QuantumState& x, const QuantumState& y, double hbar) {
  require_dim(y.dim(), x.dim(), "geodesic_transition");
  const double prob = std::norm(x.amplitudes().dot(y.amplitudes()));
  const double amp = std::clamp(std::sqrt(prob), 0.0, 1.0);
  return {std::sqrt(2.0 * hbar) * std::acos(amp), prob};
}

RayProjector ray_projector(const CVector& psi) {
  const double n2 = psi.squaredNorm();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError("ray_projector: zero or non-finite vector");
  return RayProjector(psi * psi.adjoint() / n2);
}

}  // namespace geomech

#pragma once

// Realified Hilbert space C^n ≅ R^{2n} as a Kähler manifold, and the
// projective space of rays with its Fubini–Study geometry.
//
// Conventions: ⟨X|Y⟩ = Σ conj(x_k) y_k, realification z = x + iy ↦ (x, y),
// ⟨X|Y⟩ = g(X,Y) + i ω(X,Y), J = multiplication by i.

#include "geomech/types.hpp"

namespace geomech {

Vector realify(const CVector& z);
CVector complexify(const Vector& v);
/// The real-linear map v ↦ realify(A · complexify(v)) as a 2n×2n matrix.
Matrix realify_operator(const CMatrix& a);

class KahlerSpace {
 public:
  /// Standard coordinates: g = I, ω = [[0, I], [−I, 0]], J = [[0, −I], [I, 0]].
  explicit KahlerSpace(int complex_dim);

  int complex_dim() const { return n_; }
  int real_dim() const { return 2 * n_; }
  const Matrix& metric() const { return g_; }
  const Matrix& symplectic() const { return omega_; }
  const Matrix& complex_structure() const { return j_; }
  /// Contravariant metric G = g⁻¹.
  Matrix contravariant_metric() const;
  /// Contravariant symplectic tensor Ω = −ω⁻¹.
  Matrix contravariant_symplectic() const;

  double g(const Vector& x, const Vector& y) const;
  double omega(const Vector& x, const Vector& y) const;
  /// G(α, β) and Ω(α, β) for covectors (gradients).
  double G(const Vector& a, const Vector& b) const;
  double Omega(const Vector& a, const Vector& b) const;

 private:
  int n_;
  Matrix g_;
  Matrix omega_;
  Matrix j_;
};

/// Unit-norm ray representative.
class QuantumState {
 public:
  /// Normalizes; throws DomainError on the zero vector.
  explicit QuantumState(CVector amplitudes);
  static QuantumState basis(int n, int k);
  /// Keeps the amplitudes as given; throws DomainError if |‖v‖ − 1| > tol.
  static QuantumState unit(CVector amplitudes, double tol = 1e-10);

  int dim() const { return static_cast<int>(amps_.size()); }
  const CVector& amplitudes() const { return amps_; }
  Vector realified() const { return realify(amps_); }

 private:
  struct Unchecked {};
  QuantumState(CVector amplitudes, Unchecked) : amps_(std::move(amplitudes)) {}
  CVector amps_;
};

class RayProjector {
 public:
  explicit RayProjector(CMatrix matrix) : m_(std::move(matrix)) {}
  const CMatrix& matrix() const { return m_; }
  double idempotency_residual() const;

 private:
  CMatrix m_;
};

struct HermitianSplit {
  double g_part;
  double omega_part;
  Complex recombined;
};

HermitianSplit hermitian_split(const KahlerSpace& space, const CVector& x, const CVector& y);

/// ds² = [(1+|z|²)|dz|² − |z̄·dz|²] / (1+|z|²)² in an affine chart of CP(n).
double fubini_study_metric(const CVector& z, const CVector& dz);

/// Affine chart around the largest-magnitude amplitude: z_k = ψ_k / ψ_pivot, k ≠ pivot.
struct AffineChart {
  int pivot;
  CVector z;
};
AffineChart affine_chart(const CVector& psi);
/// Normalized state (…, 1 at pivot, …)/√(1+|z|²) for chart coordinates.
CVector chart_state(const AffineChart& chart);

struct GeodesicTransition {
  double distance;
  double probability;
};
/// prob = |⟨x|y⟩|², distance = √(2ħ)·arccos(√prob), so prob = cos²(distance/√(2ħ)).
GeodesicTransition geodesic_transition(const QuantumState& x, const QuantumState& y, double hbar = 1.0);

/// |ψ⟩⟨ψ| / ⟨ψ|ψ⟩; throws DomainError on the zero vector.
RayProjector ray_projector(const CVector& psi);

}  // namespace geomech

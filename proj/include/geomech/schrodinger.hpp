#pragma once

#include "geomech/kahler.hpp"

#include <vector>

namespace geomech {

/// Hermitian matrix with its eigendecomposition computed once at construction.
class Observable {
 public:
  /// Throws std::invalid_argument if ‖A − A†‖_max exceeds tol·max(1, ‖A‖_max).
  explicit Observable(CMatrix matrix, double tol = 1e-12);

  static Observable identity(int n);
  static Observable pauli_x();
  static Observable pauli_y();
  static Observable pauli_z();

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  /// Ascending.
  const Vector& eigenvalues() const { return eigenvalues_; }
  /// Orthonormal columns, matching eigenvalues().
  const CMatrix& eigenvectors() const { return eigenvectors_; }
  double hermiticity_residual() const;
  double eigen_residual() const;

 private:
  CMatrix m_;
  Vector eigenvalues_;
  CMatrix eigenvectors_;
};

/// ⟨ψ|Aψ⟩/⟨ψ|ψ⟩ for an arbitrary nonzero ψ.
double expectation(const Observable& a, const CVector& psi);
double expectation(const Observable& a, const QuantumState& psi);

/// f_A(v) = ½⟨ψ|Aψ⟩ on the realified space (no normalization), with gradient realify(Aψ).
double quadratic_function(const CMatrix& a, const Vector& v);
Vector quadratic_gradient(const CMatrix& a, const Vector& v);

/// realify(−(i/ħ) H ψ).
Vector schrodinger_vector_field(const Observable& h, const QuantumState& psi, double hbar = 1.0);

/// exp(−iHt/ħ) from the eigendecomposition.
CMatrix propagator(const Observable& h, double t, double hbar = 1.0);
QuantumState evolve(const Observable& h, const QuantumState& psi0, double t, double hbar = 1.0);

struct MeasurementOutcome {
  double eigenvalue;
  double probability;
};

/// Born probabilities |⟨φ_k|ψ⟩|², summed over each eigenspace (eigenvalues within degeneracy_tol merge).
std::vector<MeasurementOutcome> measure(const Observable& a, const QuantumState& psi,
                                        double degeneracy_tol = 1e-9);

}  // namespace geomech

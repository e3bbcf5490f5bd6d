#pragma once

// Lie–Poisson side: u(H) (anti-Hermitian), its dual u*(H) (Hermitian,
// ξ = iA), the Jordan and Lie products, the state-dependent tensors R and Λ,
// the momentum map, and Heisenberg evolution A(t) = U† A U, U = e^{−iHt/ħ}.

#include "geomech/schrodinger.hpp"

namespace geomech {

class AntiHermitianElement {
 public:
  explicit AntiHermitianElement(CMatrix matrix, double tol = 1e-12);
  const CMatrix& matrix() const { return m_; }
  double residual() const { return (m_ + m_.adjoint()).cwiseAbs().maxCoeff(); }

 private:
  CMatrix m_;
};

class DualElement {
 public:
  explicit DualElement(CMatrix matrix, double tol = 1e-12);
  const CMatrix& matrix() const { return m_; }
  double residual() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

 private:
  CMatrix m_;
};

/// A ↦ iA.
DualElement to_dual(const AntiHermitianElement& a);
/// ξ ↦ −iξ.
AntiHermitianElement to_algebra(const DualElement& xi);

/// Trace-one, positive semidefinite Hermitian matrix.
class StateFunctional {
 public:
  explicit StateFunctional(CMatrix density, double tol = 1e-12);
  const CMatrix& density() const { return rho_; }
  int dim() const { return static_cast<int>(rho_.rows()); }

 private:
  CMatrix rho_;
};

/// ⟨ξ, A⟩ = (i/2) Tr(A ξ).
double pairing(const DualElement& xi, const AntiHermitianElement& a);

/// A ∘ B = ½(AB + BA).
CMatrix jordan_product(const CMatrix& a, const CMatrix& b);
/// [A, B]_− = ½(AB − BA).
CMatrix half_commutator(const CMatrix& a, const CMatrix& b);
/// {A, B} = (i/ħ)(AB − BA); Hermitian for Hermitian arguments.
CMatrix lie_product(const CMatrix& a, const CMatrix& b, double hbar = 1.0);

/// R(ω)(A, B) = ½ Tr ω(AB + BA).
double tensor_R(const StateFunctional& omega, const CMatrix& a, const CMatrix& b);
/// Λ(ω)(A, B) = (1/2i) Tr ω(AB − BA), so that R + iΛ = Tr(ωAB).
double tensor_Lambda(const StateFunctional& omega, const CMatrix& a, const CMatrix& b);

/// m(ψ) = |ψ⟩⟨ψ| / ⟨ψ|ψ⟩.
StateFunctional momentum_map(const CVector& psi);

/// A(t) = U† A U with U = exp(−iHt/ħ).
Observable heisenberg_evolve(const Observable& h, const Observable& a, double t, double hbar = 1.0);
/// dA/dt = (i/ħ)[H, A].
CMatrix hamiltonian_derivation(const Observable& h, const Observable& a, double hbar = 1.0);

/// max-abs of (A∘B)∘C − A∘(B∘C) + [[A,C]_−, B]_−.
double jordan_lie_associator_residual(const CMatrix& a, const CMatrix& b, const CMatrix& c);
/// Same identity in the Poisson normalization: (A∘B)∘C − A∘(B∘C) − (ħ²/4){{A,C},B}.
double jordan_lie_associator_residual_hbar(const CMatrix& a, const CMatrix& b, const CMatrix& c, double hbar);

}  // namespace geomech

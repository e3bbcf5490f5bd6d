#pragma once

// The prolongation T^E E* of an algebroid E over its dual bundle.
//
// A point is a triple (a, b, v): a ∈ E*, b ∈ E over the same base point,
// v ∈ T_a E* with the projection of v to the base equal to ρ(b). In the
// local frame
//   X̃_α(a) = (a, e_α, ρ^i_α ∂/∂q^i),   Ṽ_α(a) = (a, 0, ∂/∂p_α)
// such a point has frame coordinates (b, v_p) ∈ R^{2r}. All contractions
// here are done in that 2r-dimensional frame; ordering is (X̃_1..X̃_r, Ṽ_1..Ṽ_r).

#include "geomech/algebroid.hpp"
#include "geomech/forms.hpp"

namespace geomech {

class ProlongationPoint {
 public:
  /// Throws DomainError if the base part of `tangent` differs from ρ(b) by more than tol.
  ProlongationPoint(const LieAlgebroid& algebroid, DualCoordinates base, Vector fiber, Vector tangent,
                    double tol = 1e-10);
  /// The compatible point with vertical tangent part `vertical`.
  static ProlongationPoint compatible(const LieAlgebroid& algebroid, DualCoordinates base, Vector fiber,
                                      Vector vertical);

  const DualCoordinates& pi1() const { return base_; }  ///< a ∈ E*
  const Vector& pi2() const { return fiber_; }          ///< b ∈ E
  const Vector& pi3() const { return tangent_; }        ///< v ∈ T_a E*, ordered (q̇, ṗ)
  std::pair<DualCoordinates, Vector> pi12() const { return {base_, fiber_}; }

  /// |v_q − ρ(b)|_∞ at construction.
  double compatibility_residual() const { return residual_; }
  /// Coordinates (b, v_p) in the (X̃, Ṽ) frame.
  Vector frame_coordinates() const;

 private:
  DualCoordinates base_;
  Vector fiber_;
  Vector tangent_;
  double residual_ = 0.0;
};

/// The local frame materialized as (E-part ⊕ tangent part) vectors of length r + n + r.
struct ProlongationBasis {
  std::vector<Vector> x_tilde;
  std::vector<Vector> v_tilde;
};
ProlongationBasis prolongation_frame(const LieAlgebroid& algebroid, const DualCoordinates& z);

struct SymplecticSectionData {
  Vector theta0;  ///< Liouville section coefficients in the (X̃, Ṽ) coframe
  Matrix omega0;  ///< 2r×2r matrix ω₀(u, w) = uᵀ omega0 w
};

/// θ₀ coefficients (p, 0): ⟨θ₀, (a,b,v)⟩ = ⟨a, b⟩.
Vector liouville(const LieAlgebroid& algebroid, const DualCoordinates& z);
double liouville_pairing(const LieAlgebroid& algebroid, const ProlongationPoint& point);

/// ω₀ = X̃^i ∧ Ṽ_i + ½ p_k C^k_ij X̃^i ∧ X̃^j:
/// ω₀(X̃_i, Ṽ_j) = δ_ij, ω₀(X̃_i, X̃_j) = p_k C^k_ij, ω₀(Ṽ, Ṽ) = 0.
SymplecticSectionData canonical_two_form(const LieAlgebroid& algebroid, const DualCoordinates& z);

/// dH in the (X̃, Ṽ) coframe: (ρ^k_i ∂H/∂q^k, ∂H/∂p_i).
Vector frame_differential(const LieAlgebroid& algebroid, const PhaseFunction& h, const DualCoordinates& z);

/// σ_H = ∂H/∂p_i X̃_i − (ρ^k_i ∂H/∂q^k + p_k C^k_ij ∂H/∂p_j) Ṽ_i, the solution of ι_σ ω₀ = dH.
Vector hamiltonian_section(const LieAlgebroid& algebroid, const PhaseFunction& h, const DualCoordinates& z);

/// ρ(σ_H) = (dq/dt, dp/dt) of the algebroid Hamilton equations.
Vector anchor_vector_field(const LieAlgebroid& algebroid, const PhaseFunction& h, const DualCoordinates& z);

/// ω₀(σ_F, σ_G); equals dual_poisson(F, G) = X_G(F).
double prolongation_bracket(const LieAlgebroid& algebroid, const PhaseFunction& f, const PhaseFunction& g,
                            const DualCoordinates& z);

/// T^E E* as an algebroid over E* (coordinates (q, p), base_dim n + r, rank 2r):
/// ρ(X̃_α) = ρ^i_α ∂_{q^i}, ρ(Ṽ_α) = ∂_{p_α}, ⟦X̃_α, X̃_β⟧ = C^γ_αβ X̃_γ, all other frame brackets zero.
LieAlgebroid prolongation_algebroid(const LieAlgebroid& algebroid);

/// ω₀ as a 2-form field on prolongation_algebroid(algebroid).
AlgebroidForm omega0_form(const LieAlgebroid& algebroid);

/// Split a point of the prolongation base into (q, p).
DualCoordinates split_dual(const LieAlgebroid& algebroid, const Vector& qp);
Vector join_dual(const DualCoordinates& z);

}  // namespace geomech

#pragma once

// Cross-checks between the Schrödinger and Heisenberg engines, the
// uncertainty relation in its Robertson–Schrödinger and Kähler forms, and the
// quadratic-function identities for G and Ω.

#include "geomech/heisenberg.hpp"
#include "geomech/kahler.hpp"
#include "geomech/schrodinger.hpp"

#include <json.hpp>

#include <random>
#include <span>
#include <vector>

namespace geomech {

using Rng = std::mt19937_64;

/// (M + M†)/2 for M with i.i.d. standard complex Gaussian entries.
CMatrix random_hermitian(Rng& rng, int n);
/// Normalized standard complex Gaussian vector.
QuantumState random_state(Rng& rng, int n);

struct EquivalenceReport {
  std::vector<double> times;
  std::vector<double> schrodinger;  ///< ⟨ψ_t|A|ψ_t⟩
  std::vector<double> heisenberg;   ///< ⟨ψ_0|A(t)|ψ_0⟩
  std::vector<double> deviations;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;

  nlohmann::json to_json(const nlohmann::json& instance = {}) const;
};

inline constexpr double kEquivalenceTol = 1e-9;

/// Throws std::invalid_argument on an empty or non-finite grid.
EquivalenceReport check_equivalence(const Observable& h, const Observable& a, const QuantumState& psi0,
                                    std::span<const double> grid, double hbar = 1.0,
                                    double tol = kEquivalenceTol);

struct UncertaintyEntry {
  double lhs = 0.0;             ///< (ΔA)²(ΔB)²
  double commutator_term = 0.0; ///< ⟨(1/2i)[A,B]⟩
  double anticommutator_term = 0.0;  ///< ⟨½(δAδB + δBδA)⟩
  double rhs = 0.0;             ///< commutator_term² + anticommutator_term²
  double geometric_rhs = 0.0;   ///< Ω(df_A,df_B)² + (G(df_A,df_B) − ⟨A⟩⟨B⟩)²
  double slack = 0.0;           ///< lhs − rhs
};

UncertaintyEntry check_uncertainty(const Observable& a, const Observable& b, const QuantumState& psi);

struct UncertaintyReport {
  std::vector<UncertaintyEntry> entries;
  double min_slack = 0.0;
  double max_rhs_gap = 0.0;  ///< max |rhs − geometric_rhs|
  double slack_tol = 0.0;
  bool pass = false;

  nlohmann::json to_json(const nlohmann::json& instance = {}) const;
};

inline constexpr double kUncertaintySlackTol = 1e-10;

UncertaintyReport summarize_uncertainty(std::vector<UncertaintyEntry> entries,
                                        double slack_tol = kUncertaintySlackTol);

struct QuadraticResiduals {
  double g_residual;      ///< |G(df_A, df_B) − 2 f_{A∘B}(ψ)|
  double omega_residual;  ///< |Ω(df_A, df_B) − 2 f_{(1/i)[A,B]_−}(ψ)|
};

/// Gradients of f_X(ψ) = ½⟨ψ|Xψ⟩ are taken by central differences with step h.
QuadraticResiduals check_quadratic_identities(const Observable& a, const Observable& b, const QuantumState& psi,
                                              double h = 1e-5);

/// ‖grad ⟨A⟩(ψ)‖ on the unit sphere (central differences, radial part removed).
double projected_gradient_norm(const Observable& a, const QuantumState& psi, double h = 1e-6);

/// d f_A/dt along the Schrödinger flow, by central differences in t.
double expectation_rate(const Observable& h, const Observable& a, const QuantumState& psi, double hbar = 1.0,
                        double dt = 1e-5);

}  // namespace geomech

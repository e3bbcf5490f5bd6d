#pragma once

// Finite-rank Lie algebroids over a coordinate patch of R^n.
//
// In a local frame e_α the algebroid is described by the anchor matrix
// ρ^i_α(x) (ρ(e_α) = ρ^i_α ∂_i) and the structure functions C^γ_αβ(x)
// (⟦e_α, e_β⟧ = C^γ_αβ e_γ). Both are arbitrary callables; derivatives are
// taken by central differences with a per-algebroid step.

#include "geomech/numdiff.hpp"
#include "geomech/types.hpp"

#include <functional>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace geomech {

/// Dense r×r×r array C^γ_αβ, stored γ-major.
class StructureTensor {
 public:
  StructureTensor() = default;
  explicit StructureTensor(int rank) : rank_(rank), data_(rank * rank * rank, 0.0) {}

  static StructureTensor zero(int rank) { return StructureTensor(rank); }
  /// C^γ_αβ = ε_αβγ, the structure constants of so(3) in the basis of infinitesimal rotations.
  static StructureTensor levi_civita();

  int rank() const { return rank_; }
  double& operator()(int gamma, int alpha, int beta) { return data_[index(gamma, alpha, beta)]; }
  double operator()(int gamma, int alpha, int beta) const { return data_[index(gamma, alpha, beta)]; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// Bilinear map (u, v) ↦ C^γ_αβ u^α v^β.
  Vector contract(const Vector& u, const Vector& v) const;
  /// max |C^γ_αβ + C^γ_βα|.
  double antisymmetry_residual() const;

 private:
  std::size_t index(int g, int a, int b) const {
    return (static_cast<std::size_t>(g) * rank_ + a) * rank_ + b;
  }
  int rank_ = 0;
  std::vector<double> data_;
};

using AnchorField = std::function<Matrix(const Vector&)>;
using StructureField = std::function<StructureTensor(const Vector&)>;
using PatchPredicate = std::function<bool(const Vector&)>;

class LieAlgebroid {
 public:
  LieAlgebroid(int base_dim, int fiber_rank, AnchorField anchor, StructureField structure,
               std::string name = "user", PatchPredicate patch = {});

  /// TR^n: ρ = identity, C = 0.
  static LieAlgebroid tangent(int n);
  /// A Lie algebra viewed as an algebroid over a point (base_dim 0, ρ = 0).
  static LieAlgebroid lie_algebra(StructureTensor constants, std::string name = "lie-algebra");
  static LieAlgebroid so3_point();
  /// Action algebroid so(3) ⋉ R^3: ρ(e_α)(x) = x × e_α, C = ε. The anchor is linear in x.
  static LieAlgebroid so3_action();
  static LieAlgebroid constant(Matrix anchor, StructureTensor constants, std::string name = "constant");

  int base_dim() const { return base_dim_; }
  int fiber_rank() const { return fiber_rank_; }
  const std::string& name() const { return name_; }
  double fd_step() const { return fd_step_; }
  LieAlgebroid with_fd_step(double h) const;

  bool contains(const Vector& x) const;
  /// Throws DimensionError / DomainError when x is not a point of the patch.
  void require_point(const Vector& x) const;

  Matrix anchor(const Vector& x) const;
  StructureTensor structure(const Vector& x) const;

 private:
  int base_dim_;
  int fiber_rank_;
  AnchorField anchor_;
  StructureField structure_;
  std::string name_;
  PatchPredicate patch_;
  double fd_step_ = kDefaultFdStep;
};

/// A section x ↦ y^α(x) e_α.
class AlgebroidSection {
 public:
  using Field = std::function<Vector(const Vector&)>;

  AlgebroidSection(int rank, Field field) : rank_(rank), field_(std::move(field)) {}
  static AlgebroidSection constant(Vector components);
  static AlgebroidSection basis(int rank, int alpha);

  int rank() const { return rank_; }
  Vector operator()(const Vector& x) const;

 private:
  int rank_;
  Field field_;
};

/// ⟦s1,s2⟧^γ = C^γ_αβ s1^α s2^β + ρ(s1)(s2^γ) − ρ(s2)(s1^γ) at x.
Vector bracket(const LieAlgebroid& algebroid, const AlgebroidSection& s1, const AlgebroidSection& s2,
               const Vector& x);

/// ρ(s)(f) at x: derivative of f along the anchor image of s.
double anchor_derivative(const LieAlgebroid& algebroid, const AlgebroidSection& s,
                         const std::function<double(const Vector&)>& f, const Vector& x);

struct StructureCheckReport {
  double anchor_residual = 0.0;     ///< max over samples of the first structure equation residual
  double jacobi_residual = 0.0;     ///< max over samples of the cyclic ρ·∂C + C·C residual
  double antisymmetry_residual = 0.0;
  std::size_t samples = 0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Residuals of both structure equations at one point.
struct StructureResiduals {
  double anchor = 0.0;
  double jacobi = 0.0;
  double antisymmetry = 0.0;
};
StructureResiduals structure_residuals(const LieAlgebroid& algebroid, const Vector& x);

/// Samples are evaluated in parallel; throws NumericalError on a non-finite residual.
StructureCheckReport check_structure_equations(const LieAlgebroid& algebroid, std::span<const Vector> samples,
                                               double tol);
/// Serial reference for check_structure_equations.
StructureCheckReport check_structure_equations_serial(const LieAlgebroid& algebroid,
                                                      std::span<const Vector> samples, double tol);

/// Local coordinates (q, p) on the dual bundle E*.
struct DualCoordinates {
  Vector q;
  Vector p;
};

/// Function on E* with an optional analytic gradient. Without one,
/// gradients come from central differences.
class PhaseFunction {
 public:
  using Value = std::function<double(const Vector& q, const Vector& p)>;
  using Gradient = std::function<std::pair<Vector, Vector>(const Vector& q, const Vector& p)>;

  PhaseFunction() = default;
  PhaseFunction(Value value, Gradient gradient) : value_(std::move(value)), gradient_(std::move(gradient)) {}

  template <class F>
    requires(!std::is_same_v<std::remove_cvref_t<F>, PhaseFunction> &&
             std::is_invocable_r_v<double, F, const Vector&, const Vector&>)
  PhaseFunction(F f) : value_(std::move(f)) {}  // NOLINT(google-explicit-constructor)

  double operator()(const Vector& q, const Vector& p) const { return value_(q, p); }
  double operator()(const DualCoordinates& z) const { return value_(z.q, z.p); }
  bool has_analytic_gradient() const { return static_cast<bool>(gradient_); }
  /// (∂f/∂q, ∂f/∂p); throws NumericalError on a non-finite entry.
  std::pair<Vector, Vector> gradient(const DualCoordinates& z, double h = kDefaultFdStep) const;

 private:
  Value value_;
  Gradient gradient_;
};

void require_dual_point(const LieAlgebroid& algebroid, const DualCoordinates& z);

/// Poisson bracket on E*:
/// {f,g} = ρ^i_j (∂f/∂q_i ∂g/∂p_j − ∂g/∂q_i ∂f/∂p_j) − C^l_jk p_l ∂f/∂p_j ∂g/∂p_k.
double dual_poisson(const LieAlgebroid& algebroid, const PhaseFunction& f, const PhaseFunction& g,
                    const DualCoordinates& z);

}  // namespace geomech

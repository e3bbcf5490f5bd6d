#pragma once

// Fixed-step integration of the algebroid Hamilton equations
//   dq^i/dt = ρ^i_k ∂H/∂p_k,   dp_i/dt = −ρ^k_i ∂H/∂q^k − p_k C^k_ij ∂H/∂p_j
// with a ledger of conserved quantities sampled at every step.

#include "geomech/algebroid.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace geomech {

enum class IntegrationMethod { rk4, implicit_midpoint };

IntegrationMethod parse_method(const std::string& name);
std::string to_string(IntegrationMethod method);

struct IntegratorConfig {
  IntegrationMethod method = IntegrationMethod::implicit_midpoint;
  double step = 1e-3;
  double t_final = 1.0;
  /// Fixed-point iteration for the implicit midpoint rule.
  double fixed_point_tol = 1e-12;
  int max_iterations = 50;

  /// Throws std::invalid_argument unless step > 0 and t_final >= step.
  void validate() const;
};

struct LedgerColumn {
  std::string name;
  std::vector<double> values;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DualCoordinates> states;
  std::vector<LedgerColumn> ledger;

  const LedgerColumn& column(const std::string& name) const;
  /// max_k |f_k − f_0| / max(|f_0|, tiny).
  double relative_drift(const std::string& name) const;
  double absolute_drift(const std::string& name) const;

  /// Header `t,q1..qn,p1..pr,<ledger names>`, values in %.17g.
  void write_csv(std::ostream& out) const;
  nlohmann::json to_json() const;
};

/// Raised when the vector field or a state turns non-finite.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, double blowup_time, Trajectory partial)
      : NumericalError(what), blowup_time_(blowup_time), partial_(std::move(partial)) {}
  double blowup_time() const { return blowup_time_; }
  const Trajectory& partial() const { return partial_; }

 private:
  double blowup_time_;
  Trajectory partial_;
};

class ClassicalFlow {
 public:
  using Handle = std::size_t;

  ClassicalFlow(LieAlgebroid algebroid, PhaseFunction hamiltonian);

  /// Registers a quantity sampled into the ledger; throws std::invalid_argument on a duplicate name.
  Handle register_casimir(const std::string& name, PhaseFunction f);

  const LieAlgebroid& algebroid() const { return algebroid_; }
  Vector vector_field(const DualCoordinates& z) const;
  /// One step of the configured method from z.
  DualCoordinates step(const DualCoordinates& z, double h, const IntegratorConfig& cfg) const;

  /// Ledger column "H" holds the Hamiltonian; registered quantities follow in registration order.
  Trajectory integrate(const DualCoordinates& z0, const IntegratorConfig& cfg) const;

 private:
  LieAlgebroid algebroid_;
  PhaseFunction hamiltonian_;
  std::vector<std::pair<std::string, PhaseFunction>> casimirs_;
};

Trajectory integrate(const LieAlgebroid& algebroid, const PhaseFunction& hamiltonian, const DualCoordinates& z0,
                     const IntegratorConfig& cfg);

}  // namespace geomech

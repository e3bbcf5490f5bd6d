#include "geomech/verification.hpp"

#include "geomech/numdiff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace geomech {

CMatrix random_hermitian(Rng& rng, int n) {
  std::normal_distribution<double> normal;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  return 0.5 * (m + m.adjoint());
}

QuantumState random_state(Rng& rng, int n) {
  std::normal_distribution<double> normal;
  CVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(normal(rng), normal(rng));
  return QuantumState(v);
}

nlohmann::json EquivalenceReport::to_json(const nlohmann::json& instance) const {
  return {{"instance", instance},
          {"grid", times},
          {"schrodinger", schrodinger},
          {"heisenberg", heisenberg},
          {"deviations", deviations},
          {"max_deviation", max_deviation},
          {"tolerance", tolerance},
          {"pass", pass}};
}

EquivalenceReport check_equivalence(const Observable& h, const Observable& a, const QuantumState& psi0,
                                    std::span<const double> grid, double hbar, double tol) {
  require_dim(a.dim(), h.dim(), "check_equivalence");
  require_dim(psi0.dim(), h.dim(), "check_equivalence");
  if (grid.empty()) throw std::invalid_argument("check_equivalence: empty time grid");
  EquivalenceReport report;
  report.tolerance = tol;
  for (double t : grid) {
    if (!std::isfinite(t)) throw std::invalid_argument("check_equivalence: non-finite time");
    const double s = expectation(a, evolve(h, psi0, t, hbar));
    const double hz = expectation(heisenberg_evolve(h, a, t, hbar), psi0);
    const double dev = std::abs(s - hz);
    report.times.push_back(t);
    report.schrodinger.push_back(s);
    report.heisenberg.push_back(hz);
    report.deviations.push_back(dev);
    report.max_deviation = std::max(report.max_deviation, dev);
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

UncertaintyEntry check_uncertainty(const Observable& a, const Observable& b, const QuantumState& psi) {
  require_dim(a.dim(), psi.dim(), "check_uncertainty");
  require_dim(b.dim(), psi.dim(), "check_uncertainty");
  const int n = psi.dim();
  const CVector& v = psi.amplitudes();
  const CMatrix& am = a.matrix();
  const CMatrix& bm = b.matrix();
  const CMatrix id = CMatrix::Identity(n, n);

  const double ea = expectation(a, psi);
  const double eb = expectation(b, psi);
  const CMatrix da = am - ea * id;
  const CMatrix db = bm - eb * id;
  const double var_a = v.dot(da * da * v).real();
  const double var_b = v.dot(db * db * v).real();

  UncertaintyEntry e;
  e.lhs = var_a * var_b;
  e.commutator_term = (v.dot((am * bm - bm * am) * v) / Complex(0.0, 2.0)).real();
  e.anticommutator_term = v.dot(jordan_product(da, db) * v).real();
  e.rhs = e.commutator_term * e.commutator_term + e.anticommutator_term * e.anticommutator_term;
  e.slack = e.lhs - e.rhs;

  const KahlerSpace space(n);
  const Vector x = psi.realified();
  const Vector ga = quadratic_gradient(am, x);
  const Vector gb = quadratic_gradient(bm, x);
  const double omega = space.Omega(ga, gb);
  const double g = space.G(ga, gb);
  e.geometric_rhs = omega * omega + (g - ea * eb) * (g - ea * eb);
  return e;
}

nlohmann::json UncertaintyReport::to_json(const nlohmann::json& instance) const {
  auto samples = nlohmann::json::array();
  for (const auto& e : entries)
    samples.push_back({{"lhs", e.lhs}, {"rhs", e.rhs}, {"geometric_rhs", e.geometric_rhs}, {"slack", e.slack}});
  return {{"instance", instance}, {"samples", std::move(samples)}, {"min_slack", min_slack},
          {"max_rhs_gap", max_rhs_gap}, {"slack_tolerance", slack_tol}, {"pass", pass}};
}

UncertaintyReport summarize_uncertainty(std::vector<UncertaintyEntry> entries, double slack_tol) {
  UncertaintyReport r;
  r.slack_tol = slack_tol;
  r.min_slack = entries.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  for (const auto& e : entries) {
    r.min_slack = std::min(r.min_slack, e.slack);
    r.max_rhs_gap = std::max(r.max_rhs_gap, std::abs(e.rhs - e.geometric_rhs));
  }
  r.entries = std::move(entries);
  r.pass = r.min_slack >= -slack_tol;
  return r;
}

QuadraticResiduals check_quadratic_identities(const Observable& a, const Observable& b, const QuantumState& psi,
                                              double h) {
  require_dim(a.dim(), psi.dim(), "check_quadratic_identities");
  require_dim(b.dim(), psi.dim(), "check_quadratic_identities");
  const KahlerSpace space(psi.dim());
  const Vector x = psi.realified();
  const Vector ga = gradient([&](const Vector& y) { return quadratic_function(a.matrix(), y); }, x, h);
  const Vector gb = gradient([&](const Vector& y) { return quadratic_function(b.matrix(), y); }, x, h);
  const CMatrix jordan = jordan_product(a.matrix(), b.matrix());
  const CMatrix lie = half_commutator(a.matrix(), b.matrix()) / Complex(0.0, 1.0);
  return {std::abs(space.G(ga, gb) - 2.0 * quadratic_function(jordan, x)),
          std::abs(space.Omega(ga, gb) - 2.0 * quadratic_function(lie, x))};
}

double projected_gradient_norm(const Observable& a, const QuantumState& psi, double h) {
  require_dim(a.dim(), psi.dim(), "projected_gradient_norm");
  const Vector x = psi.realified();
  Vector g = gradient([&](const Vector& y) { return expectation(a, complexify(y)); }, x, h);
  g -= g.dot(x) / x.squaredNorm() * x;
  return g.norm();
}

double expectation_rate(const Observable& h, const Observable& a, const QuantumState& psi, double hbar, double dt) {
  const auto f = [&](double t) { return quadratic_function(a.matrix(), evolve(h, psi, t, hbar).realified()); };
  return (f(dt) - f(-dt)) / (2.0 * dt);
}

}  // namespace geomech

#include "geomech/classical_flow.hpp"

#include "geomech/prolongation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace geomech {

IntegrationMethod parse_method(const std::string& name) {
  if (name == "rk4") return IntegrationMethod::rk4;
  if (name == "implicit-midpoint" || name == "implicit_midpoint") return IntegrationMethod::implicit_midpoint;
  throw std::invalid_argument("unknown integration method '" + name + "'");
}

std::string to_string(IntegrationMethod method) {
  return method == IntegrationMethod::rk4 ? "rk4" : "implicit-midpoint";
}

void IntegratorConfig::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("integrator step must be positive");
  if (!(t_final >= step) || !std::isfinite(t_final)) throw std::invalid_argument("t_final must be >= step");
  if (!(fixed_point_tol > 0.0) || max_iterations < 1) throw std::invalid_argument("invalid fixed-point settings");
}

const LedgerColumn& Trajectory::column(const std::string& name) const {
  for (const auto& c : ledger)
    if (c.name == name) return c;
  throw std::out_of_range("no ledger column '" + name + "'");
}

double Trajectory::absolute_drift(const std::string& name) const {
  const auto& v = column(name).values;
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - v.front()));
  return worst;
}

double Trajectory::relative_drift(const std::string& name) const {
  const auto& v = column(name).values;
  const double scale = std::max(std::abs(v.front()), 1e-300);
  return absolute_drift(name) / scale;
}

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void Trajectory::write_csv(std::ostream& out) const {
  const auto n = states.empty() ? 0 : states.front().q.size();
  const auto r = states.empty() ? 0 : states.front().p.size();
  out << 't';
  for (Eigen::Index i = 0; i < n; ++i) out << ",q" << i + 1;
  for (Eigen::Index i = 0; i < r; ++i) out << ",p" << i + 1;
  for (const auto& c : ledger) out << ',' << c.name;
  out << '\n';
  for (std::size_t k = 0; k < times.size(); ++k) {
    put(out, times[k]);
    for (Eigen::Index i = 0; i < n; ++i) {
      out << ',';
      put(out, states[k].q[i]);
    }
    for (Eigen::Index i = 0; i < r; ++i) {
      out << ',';
      put(out, states[k].p[i]);
    }
    for (const auto& c : ledger) {
      out << ',';
      put(out, c.values[k]);
    }
    out << '\n';
  }
}

nlohmann::json Trajectory::to_json() const {
  nlohmann::json j;
  j["t"] = times;
  auto q = nlohmann::json::array();
  auto p = nlohmann::json::array();
  for (const auto& s : states) {
    q.push_back(std::vector<double>(s.q.data(), s.q.data() + s.q.size()));
    p.push_back(std::vector<double>(s.p.data(), s.p.data() + s.p.size()));
  }
  j["q"] = std::move(q);
  j["p"] = std::move(p);
  j["ledger"] = nlohmann::json::object();
  for (const auto& c : ledger) j["ledger"][c.name] = c.values;
  return j;
}

ClassicalFlow::ClassicalFlow(LieAlgebroid algebroid, PhaseFunction hamiltonian)
    : algebroid_(std::move(algebroid)), hamiltonian_(std::move(hamiltonian)) {}

ClassicalFlow::Handle ClassicalFlow::register_casimir(const std::string& name, PhaseFunction f) {
  if (name.empty() || name == "H" || name == "t") throw std::invalid_argument("reserved ledger name '" + name + "'");
  for (const auto& [existing, _] : casimirs_)
    if (existing == name) throw std::invalid_argument("duplicate ledger name '" + name + "'");
  casimirs_.emplace_back(name, std::move(f));
  return casimirs_.size() - 1;
}

Vector ClassicalFlow::vector_field(const DualCoordinates& z) const {
  return anchor_vector_field(algebroid_, hamiltonian_, z);
}

DualCoordinates ClassicalFlow::step(const DualCoordinates& z, double h, const IntegratorConfig& cfg) const {
  const Vector x = join_dual(z);
  auto f = [&](const Vector& y) { return vector_field(split_dual(algebroid_, y)); };
  Vector next;
  if (cfg.method == IntegrationMethod::rk4) {
    const Vector k1 = f(x);
    const Vector k2 = f(x + 0.5 * h * k1);
    const Vector k3 = f(x + 0.5 * h * k2);
    const Vector k4 = f(x + h * k3);
    next = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  } else {
    // x_{k+1} = x_k + h f((x_k + x_{k+1}) / 2), solved by fixed-point iteration from an Euler guess.
    next = x + h * f(x);
    for (int it = 0; it < cfg.max_iterations; ++it) {
      const Vector update = x + h * f(0.5 * (x + next));
      const double change = (update - next).cwiseAbs().maxCoeff();
      next = update;
      if (!(change > cfg.fixed_point_tol)) break;
    }
  }
  if (!next.allFinite()) throw NumericalError("non-finite state");
  return split_dual(algebroid_, next);
}

Trajectory ClassicalFlow::integrate(const DualCoordinates& z0, const IntegratorConfig& cfg) const {
  cfg.validate();
  require_dual_point(algebroid_, z0);

  Trajectory traj;
  traj.ledger.push_back({"H", {}});
  for (const auto& [name, _] : casimirs_) traj.ledger.push_back({name, {}});

  auto record = [&](double t, const DualCoordinates& z) {
    traj.times.push_back(t);
    traj.states.push_back(z);
    traj.ledger[0].values.push_back(hamiltonian_(z));
    for (std::size_t c = 0; c < casimirs_.size(); ++c) traj.ledger[c + 1].values.push_back(casimirs_[c].second(z));
  };

  // Steps land on t_k = k·step; a remainder shorter than step closes the interval.
  const auto full_steps = static_cast<long long>(std::floor(cfg.t_final / cfg.step * (1.0 + 1e-12)));
  const double remainder = cfg.t_final - static_cast<double>(full_steps) * cfg.step;
  const long long total = full_steps + (remainder > 1e-12 * cfg.t_final ? 1 : 0);

  DualCoordinates z = z0;
  record(0.0, z);
  for (long long k = 1; k <= total; ++k) {
    const double t_prev = traj.times.back();
    const double t_next = k <= full_steps ? static_cast<double>(k) * cfg.step : cfg.t_final;
    try {
      z = step(z, t_next - t_prev, cfg);
    } catch (const NumericalError& e) {
      throw IntegrationError(std::string("integration blew up: ") + e.what(), t_prev, traj);
    }
    record(t_next, z);
  }
  return traj;
}

Trajectory integrate(const LieAlgebroid& algebroid, const PhaseFunction& hamiltonian, const DualCoordinates& z0,
                     const IntegratorConfig& cfg) {
  return ClassicalFlow(algebroid, hamiltonian).integrate(z0, cfg);
}

}  // namespace geomech

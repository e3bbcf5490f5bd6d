#include "geomech/scenario.hpp"
#include "geomech/parallel.hpp"

#include "geomech/classical_flow.hpp"
#include "geomech/heisenberg.hpp"
#include "geomech/schrodinger.hpp"
#include "geomech/sweeps.hpp"
#include "geomech/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

namespace geomech {

using nlohmann::json;

namespace {

const Complex kI(0.0, 1.0);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- presets

json preset(const std::string& name) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (name == "harmonic-oscillator") {
    return {{"kind", "classical"},
            {"algebroid", "tangent-R1"},
            {"hamiltonian", {{"builtin", "harmonic-oscillator"}}},
            {"initial", {{"q", {1.0}}, {"p", {0.0}}}},
            {"integrator", {{"method", "implicit-midpoint"}, {"step", 1e-3}, {"t_final", two_pi}}},
            {"expect_final", {{"q", {1.0}}, {"p", {0.0}}, {"tolerance", 1e-6}}},
            {"tolerances", {{"drift", 1e-8}}}};
  }
  if (name == "rigid-body") {
    return {{"kind", "classical"},
            {"algebroid", "so3-point"},
            {"hamiltonian", {{"builtin", "rigid-body"}, {"inertia", {1.0, 2.0, 3.0}}}},
            {"initial", {{"q", json::array()}, {"p", {0.1, 1.0, 0.1}}}},
            {"casimirs", {{{"name", "casimir"}, {"function", "p.p"}}}},
            {"integrator", {{"method", "implicit-midpoint"}, {"step", 1e-3}, {"t_final", 10.0}}},
            {"tolerances", {{"drift", 1e-8}}}};
  }
  if (name == "qubit-precession") {
    return {{"kind", "equivalence"},
            {"hamiltonian", "pauli-z"},
            {"observable", "pauli-x"},
            {"state", "plus"},
            {"grid", {{"t_final", two_pi}, {"step", 0.01}}},
            {"qubit_closed_form", true},
            {"tolerances", {{"equivalence", kEquivalenceTol}, {"closed_form", 1e-10}, {"norm", 1e-12}}}};
  }
  if (name == "so3-point") {
    return {{"kind", "structure-check"},
            {"algebroid", "so3-point"},
            {"samples", {{"count", 1}, {"box", 1.0}}},
            {"tolerances", {{"structure", 1e-6}}}};
  }
  if (name == "so3-action") {
    return {{"kind", "structure-check"},
            {"algebroid", "so3-action"},
            {"samples", {{"count", 1000}, {"box", 2.0}}},
            {"tolerances", {{"structure", 1e-6}}}};
  }
  if (name == "tangent-Rn") {
    return {{"kind", "structure-check"},
            {"algebroid", "tangent-R3"},
            {"samples", {{"count", 1000}, {"box", 1.0}}},
            {"tolerances", {{"structure", 1e-6}}}};
  }
  if (name == "uncertainty-ensemble") {
    return {{"kind", "uncertainty"},
            {"random", {{"samples", 10000}, {"dims", {2, 3, 5}}}},
            {"tolerances", {{"slack", kUncertaintySlackTol}, {"geometric", 1e-8}}}};
  }
  throw ConfigError("unknown builtin '" + name + "'");
}

// ---------------------------------------------------------------- parsing

double number_at(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) throw ConfigError(std::string("field '") + key + "' must be a number");
  return doc[key].get<double>();
}

double tolerance(const json& doc, const char* key, double fallback) {
  if (!doc.contains("tolerances")) return fallback;
  return number_at(doc["tolerances"], key, fallback);
}

Complex parse_complex(const json& v) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) return {v[0].get<double>(), v[1].get<double>()};
  throw ConfigError("complex entries must be a number or [re, im]");
}

CMatrix parse_cmatrix(const json& v, const std::string& what) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    if (name == "pauli-x") return Observable::pauli_x().matrix();
    if (name == "pauli-y") return Observable::pauli_y().matrix();
    if (name == "pauli-z") return Observable::pauli_z().matrix();
    throw ConfigError(what + ": unknown matrix name '" + name + "'");
  }
  if (!v.is_array() || v.empty()) throw ConfigError(what + ": expected a non-empty matrix");
  const auto n = static_cast<Eigen::Index>(v.size());
  CMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = v[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ConfigError(what + ": matrix must be square");
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = parse_complex(row[j]);
  }
  return m;
}

Observable parse_observable(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    return Observable(parse_cmatrix(doc[key], key));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

QuantumState parse_state(const json& doc, int dim) {
  if (!doc.contains("state")) throw ConfigError("missing field 'state'");
  const auto& v = doc["state"];
  CVector psi;
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    const double s = 1.0 / std::sqrt(2.0);
    psi = CVector::Zero(2);
    if (name == "ket0") psi << 1.0, 0.0;
    else if (name == "ket1") psi << 0.0, 1.0;
    else if (name == "plus") psi << s, s;
    else if (name == "minus") psi << s, -s;
    else if (name == "plus-i") psi << s, Complex(0.0, s);
    else throw ConfigError("unknown state name '" + name + "'");
  } else if (v.is_array()) {
    psi.resize(static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) psi[static_cast<Eigen::Index>(k)] = parse_complex(v[k]);
  } else {
    throw ConfigError("'state' must be a name or an array of amplitudes");
  }
  if (psi.size() != dim) throw ConfigError("state dimension does not match the Hamiltonian");
  try {
    return QuantumState(psi);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
}

std::vector<double> parse_grid(const json& doc) {
  if (!doc.contains("grid")) throw ConfigError("missing field 'grid'");
  const auto& g = doc["grid"];
  std::vector<double> times;
  if (g.contains("times")) {
    if (!g["times"].is_array()) throw ConfigError("grid.times must be an array");
    for (const auto& t : g["times"]) {
      if (!t.is_number()) throw ConfigError("grid.times entries must be numbers");
      times.push_back(t.get<double>());
    }
  } else {
    const double t_final = number_at(g, "t_final", -1.0);
    const double step = number_at(g, "step", -1.0);
    if (!(step > 0.0) || !(t_final >= 0.0)) throw ConfigError("grid needs t_final >= 0 and step > 0");
    times = uniform_grid(t_final, step);
  }
  if (times.empty()) throw ConfigError("empty time grid");
  for (double t : times)
    if (!std::isfinite(t)) throw ConfigError("non-finite time in grid");
  return times;
}

LieAlgebroid parse_algebroid(const json& doc) {
  if (!doc.contains("algebroid")) throw ConfigError("missing field 'algebroid'");
  const auto& a = doc["algebroid"];
  if (a.is_string()) {
    const auto name = a.get<std::string>();
    if (name == "so3-point") return LieAlgebroid::so3_point();
    if (name == "so3-action") return LieAlgebroid::so3_action();
    if (name.rfind("tangent-R", 0) == 0) {
      int n = 0;
      try {
        n = std::stoi(name.substr(9));
      } catch (const std::exception&) {
        throw ConfigError("tangent algebroid needs a dimension, e.g. tangent-R3");
      }
      if (n < 1) throw ConfigError("tangent algebroid dimension must be positive");
      return LieAlgebroid::tangent(n);
    }
    throw ConfigError("unknown algebroid '" + name + "'");
  }
  try {
    return algebroid_from_json(a);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("algebroid: ") + e.what());
  }
}

Vector parse_vector(const json& v, Eigen::Index expected, const std::string& what) {
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != expected)
    throw ConfigError(what + ": expected an array of length " + std::to_string(expected));
  Vector out(expected);
  for (Eigen::Index k = 0; k < expected; ++k) {
    if (!v[k].is_number()) throw ConfigError(what + ": entries must be numbers");
    out[k] = v[k].get<double>();
  }
  return out;
}

PhaseFunction parse_hamiltonian(const json& doc, const LieAlgebroid& algebroid) {
  if (!doc.contains("hamiltonian") || !doc["hamiltonian"].is_object()) throw ConfigError("missing object 'hamiltonian'");
  const auto& h = doc["hamiltonian"];
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  if (h.contains("builtin")) {
    const auto name = h["builtin"].get<std::string>();
    if (name == "rigid-body") {
      const Vector inertia = parse_vector(h.value("inertia", json::array({1.0, 2.0, 3.0})), r, "hamiltonian.inertia");
      if ((inertia.array() <= 0.0).any()) throw ConfigError("rigid-body inertia must be positive");
      const Vector inv = inertia.cwiseInverse();
      return PhaseFunction([inv](const Vector&, const Vector& p) { return 0.5 * p.dot(inv.cwiseProduct(p)); },
                           [inv](const Vector& q, const Vector& p) {
                             return std::pair<Vector, Vector>{Vector::Zero(q.size()), inv.cwiseProduct(p)};
                           });
    }
    if (name == "harmonic-oscillator") {
      if (n != r) throw ConfigError("harmonic-oscillator needs base_dim == fiber_rank");
      return PhaseFunction([](const Vector& q, const Vector& p) { return 0.5 * (p.squaredNorm() + q.squaredNorm()); },
                           [](const Vector& q, const Vector& p) { return std::pair<Vector, Vector>{q, p}; });
    }
    if (name == "free-particle") {
      return PhaseFunction([](const Vector&, const Vector& p) { return 0.5 * p.squaredNorm(); },
                           [](const Vector& q, const Vector& p) {
                             return std::pair<Vector, Vector>{Vector::Zero(q.size()), p};
                           });
    }
    throw ConfigError("unknown builtin Hamiltonian '" + name + "'");
  }
  // H(z) = ½ zᵀ M z + bᵀ z, z = (q, p)
  if (!h.contains("quadratic")) throw ConfigError("hamiltonian needs 'builtin' or 'quadratic'");
  const auto& qm = h["quadratic"];
  const int dim = n + r;
  if (!qm.is_array() || static_cast<int>(qm.size()) != dim) throw ConfigError("hamiltonian.quadratic must be (n+r)×(n+r)");
  Matrix m(dim, dim);
  for (int i = 0; i < dim; ++i) m.row(i) = parse_vector(qm[i], dim, "hamiltonian.quadratic row").transpose();
  m = 0.5 * (m + m.transpose()).eval();
  const Vector b = h.contains("linear") ? parse_vector(h["linear"], dim, "hamiltonian.linear") : Vector::Zero(dim);
  return PhaseFunction(
      [m, b](const Vector& q, const Vector& p) {
        Vector z(q.size() + p.size());
        z << q, p;
        return 0.5 * z.dot(m * z) + b.dot(z);
      },
      [m, b, n](const Vector& q, const Vector& p) {
        Vector z(q.size() + p.size());
        z << q, p;
        const Vector g = m * z + b;
        return std::pair<Vector, Vector>{g.head(n), g.tail(g.size() - n)};
      });
}

// ---------------------------------------------------------------- output

class ArtifactWriter {
 public:
  ArtifactWriter(std::filesystem::path dir, RunManifest& manifest, bool enabled)
      : dir_(std::move(dir)), manifest_(manifest), enabled_(enabled) {}

  template <class Fn>
  void write(const std::string& name, Fn&& fill) {
    if (!enabled_) return;
    std::ofstream out(dir_ / name, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir_ / name).string());
    fill(out);
    manifest_.artifacts.push_back(name);
  }

  void write_json(const std::string& name, const json& doc) {
    write(name, [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
  }

 private:
  std::filesystem::path dir_;
  RunManifest& manifest_;
  bool enabled_;
};

void add_check(RunManifest& m, std::string name, double value, double tol, bool pass) {
  m.checks.push_back({std::move(name), value, tol, pass});
}

// ---------------------------------------------------------------- runners

void run_classical(const ScenarioConfig& cfg, ArtifactWriter& out, RunManifest& m) {
  const json& doc = cfg.doc;
  const LieAlgebroid algebroid = parse_algebroid(doc);
  const PhaseFunction h = parse_hamiltonian(doc, algebroid);
  if (!doc.contains("initial")) throw ConfigError("missing field 'initial'");
  DualCoordinates z0{parse_vector(doc["initial"].value("q", json::array()), algebroid.base_dim(), "initial.q"),
                     parse_vector(doc["initial"].value("p", json::array()), algebroid.fiber_rank(), "initial.p")};

  IntegratorConfig icfg;
  if (doc.contains("integrator")) {
    const auto& ic = doc["integrator"];
    try {
      if (ic.contains("method")) icfg.method = parse_method(ic["method"].get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    icfg.step = number_at(ic, "step", icfg.step);
    icfg.t_final = number_at(ic, "t_final", icfg.t_final);
  }
  try {
    icfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  ClassicalFlow flow(algebroid, h);
  if (doc.contains("casimirs")) {
    for (const auto& c : doc["casimirs"]) {
      const auto name = c.value("name", std::string());
      const auto fn = c.value("function", std::string());
      PhaseFunction f;
      if (fn == "p.p") f = PhaseFunction([](const Vector&, const Vector& p) { return p.squaredNorm(); });
      else if (fn == "q.q") f = PhaseFunction([](const Vector& q, const Vector&) { return q.squaredNorm(); });
      else throw ConfigError("unknown casimir function '" + fn + "'");
      try {
        flow.register_casimir(name, f);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
    }
  }

  const std::string format = doc.contains("output") ? doc["output"].value("format", std::string("csv")) : "csv";
  if (format != "csv" && format != "json" && format != "both") throw ConfigError("output.format must be csv, json or both");

  Trajectory traj;
  try {
    traj = flow.integrate(z0, icfg);
  } catch (const IntegrationError& e) {
    out.write("trajectory.partial.csv", [&](std::ostream& s) { e.partial().write_csv(s); });
    m.numerical_failure = true;
    m.failure_message = std::string(e.what()) + " at t=" + fmt(e.blowup_time());
    return;
  }
  if (format != "json") out.write("trajectory.csv", [&](std::ostream& s) { traj.write_csv(s); });
  if (format != "csv") out.write_json("trajectory.json", traj.to_json());

  const double drift_tol = tolerance(doc, "drift", 1e-8);
  for (const auto& col : traj.ledger) {
    const double d = traj.relative_drift(col.name);
    add_check(m, "drift:" + col.name, d, drift_tol, d <= drift_tol);
  }
  if (doc.contains("expect_final")) {
    const auto& ef = doc["expect_final"];
    const double tol = number_at(ef, "tolerance", 1e-6);
    const Vector q = parse_vector(ef.value("q", json::array()), algebroid.base_dim(), "expect_final.q");
    const Vector p = parse_vector(ef.value("p", json::array()), algebroid.fiber_rank(), "expect_final.p");
    const auto& last = traj.states.back();
    double err = 0.0;
    if (q.size() > 0) err = std::max(err, (last.q - q).cwiseAbs().maxCoeff());
    if (p.size() > 0) err = std::max(err, (last.p - p).cwiseAbs().maxCoeff());
    add_check(m, "final-state", err, tol, err <= tol);
  }
}

void run_schrodinger(const ScenarioConfig& cfg, ArtifactWriter& out, RunManifest& m) {
  const json& doc = cfg.doc;
  const Observable h = parse_observable(doc, "hamiltonian");
  const bool has_obs = doc.contains("observable");
  const std::optional<Observable> a = has_obs ? std::optional<Observable>(parse_observable(doc, "observable")) : std::nullopt;
  if (a && a->dim() != h.dim()) throw ConfigError("observable dimension does not match the Hamiltonian");
  const QuantumState psi0 = parse_state(doc, h.dim());
  const auto grid = parse_grid(doc);

  double norm_drift = 0.0;
  std::ostringstream csv;
  csv << 't';
  for (int k = 1; k <= h.dim(); ++k) csv << ",re" << k << ",im" << k;
  if (a) csv << ",expectation";
  csv << ",norm\n";
  for (double t : grid) {
    const QuantumState psi = evolve(h, psi0, t, cfg.hbar);
    const double norm = psi.amplitudes().norm();
    norm_drift = std::max(norm_drift, std::abs(norm - 1.0));
    csv << fmt(t);
    for (int k = 0; k < h.dim(); ++k) csv << ',' << fmt(psi.amplitudes()[k].real()) << ',' << fmt(psi.amplitudes()[k].imag());
    if (a) csv << ',' << fmt(expectation(*a, psi));
    csv << ',' << fmt(norm) << '\n';
  }
  out.write("schrodinger.csv", [&](std::ostream& s) { s << csv.str(); });
  const double tol = tolerance(doc, "norm", 1e-12);
  add_check(m, "norm-drift", norm_drift, tol, norm_drift <= tol);
}

void run_heisenberg(const ScenarioConfig& cfg, ArtifactWriter& out, RunManifest& m) {
  const json& doc = cfg.doc;
  const Observable h = parse_observable(doc, "hamiltonian");
  const Observable a = parse_observable(doc, "observable");
  if (a.dim() != h.dim()) throw ConfigError("observable dimension does not match the Hamiltonian");
  const QuantumState psi0 = parse_state(doc, h.dim());
  const auto grid = parse_grid(doc);

  double spectral = 0.0;
  std::ostringstream csv;
  csv << "t,expectation,spectral_drift\n";
  for (double t : grid) {
    const Observable at = heisenberg_evolve(h, a, t, cfg.hbar);
    const double drift = (at.eigenvalues() - a.eigenvalues()).cwiseAbs().maxCoeff();
    spectral = std::max(spectral, drift);
    csv << fmt(t) << ',' << fmt(expectation(at, psi0)) << ',' << fmt(drift) << '\n';
  }
  out.write("heisenberg.csv", [&](std::ostream& s) { s << csv.str(); });
  const double tol = tolerance(doc, "spectral", 1e-10);
  add_check(m, "spectral-drift", spectral, tol, spectral <= tol);
}

void run_equivalence(const ScenarioConfig& cfg, ArtifactWriter& out, RunManifest& m) {
  const json& doc = cfg.doc;
  const Observable h = parse_observable(doc, "hamiltonian");
  const Observable a = parse_observable(doc, "observable");
  if (a.dim() != h.dim()) throw ConfigError("observable dimension does not match the Hamiltonian");
  const QuantumState psi0 = parse_state(doc, h.dim());
  const auto grid = parse_grid(doc);
  const double tol = tolerance(doc, "equivalence", kEquivalenceTol);

  const EquivalenceReport report = check_equivalence(h, a, psi0, grid, cfg.hbar, tol);
  out.write("equivalence.csv", [&](std::ostream& s) {
    s << "t,schrodinger,heisenberg,deviation\n";
    for (std::size_t k = 0; k < report.times.size(); ++k)
      s << fmt(report.times[k]) << ',' << fmt(report.schrodinger[k]) << ',' << fmt(report.heisenberg[k]) << ','
        << fmt(report.deviations[k]) << '\n';
  });
  out.write_json("equivalence.json", report.to_json({{"dim", h.dim()}, {"hbar", cfg.hbar}}));
  add_check(m, "equivalence", report.max_deviation, tol, report.pass);

  if (doc.value("qubit_closed_form", false)) {
    // H = σ_z, A = σ_x, ψ0 = |+⟩: ⟨σ_x⟩(t) = cos(2t/ħ).
    double err = 0.0;
    for (std::size_t k = 0; k < report.times.size(); ++k)
      err = std::max(err, std::abs(report.schrodinger[k] - std::cos(2.0 * report.times[k] / cfg.hbar)));
    const double ctol = tolerance(doc, "closed_form", 1e-10);
    add_check(m, "closed-form", err, ctol, err <= ctol);
  }
}

void run_uncertainty(const ScenarioConfig& cfg, ArtifactWriter& out, RunManifest& m) {
  const json& doc = cfg.doc;
  std::vector<UncertaintySample> samples;
  if (doc.contains("random")) {
    const auto& r = doc["random"];
    const auto count = static_cast<std::size_t>(number_at(r, "samples", 1000));
    std::vector<int> dims;
    for (const auto& d : r.value("dims", json::array({2}))) {
      if (!d.is_number_integer() || d.get<int>() < 1) throw ConfigError("random.dims must be positive integers");
      dims.push_back(d.get<int>());
    }
    if (dims.empty() || count == 0) throw ConfigError("random ensemble needs samples > 0 and non-empty dims");
    Rng rng(cfg.seed);
    samples = make_uncertainty_samples(rng, count, dims);
  } else {
    Observable a = parse_observable(doc, "observable_a");
    Observable b = parse_observable(doc, "observable_b");
    if (a.dim() != b.dim()) throw ConfigError("observables must have equal dimension");
    QuantumState psi = parse_state(doc, a.dim());
    samples.push_back({std::move(a), std::move(b), std::move(psi)});
  }
  const double slack_tol = tolerance(doc, "slack", kUncertaintySlackTol);
  const UncertaintyReport report = uncertainty_sweep(samples, slack_tol);
  out.write("uncertainty.csv", [&](std::ostream& s) {
    s << "sample,lhs,rhs,geometric_rhs,slack\n";
    for (std::size_t k = 0; k < report.entries.size(); ++k) {
      const auto& e = report.entries[k];
      s << k << ',' << fmt(e.lhs) << ',' << fmt(e.rhs) << ',' << fmt(e.geometric_rhs) << ',' << fmt(e.slack) << '\n';
    }
  });
  out.write_json("uncertainty.json", report.to_json({{"seed", cfg.seed}, {"samples", samples.size()}}));
  add_check(m, "min-slack", report.min_slack, slack_tol, report.pass);
  const double gtol = tolerance(doc, "geometric", 1e-8);
  add_check(m, "geometric-rhs", report.max_rhs_gap, gtol, report.max_rhs_gap <= gtol);
}

void run_structure_check(const ScenarioConfig& cfg, ArtifactWriter& out, RunManifest& m) {
  const json& doc = cfg.doc;
  LieAlgebroid algebroid = parse_algebroid(doc);
  if (doc.contains("fd_step")) {
    const double h = number_at(doc, "fd_step", kDefaultFdStep);
    if (!(h > 0.0)) throw ConfigError("fd_step must be positive");
    algebroid = algebroid.with_fd_step(h);
  }
  std::vector<Vector> points;
  const int n = algebroid.base_dim();
  if (doc.contains("points")) {
    for (const auto& p : doc["points"]) points.push_back(parse_vector(p, n, "points"));
  } else {
    const auto& s = doc.value("samples", json::object());
    const auto count = static_cast<std::size_t>(number_at(s, "count", 100));
    const double box = number_at(s, "box", 1.0);
    Rng rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-box, box);
    for (std::size_t k = 0; k < count; ++k) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = coord(rng);
      points.push_back(std::move(x));
    }
  }
  if (points.empty()) throw ConfigError("structure check needs at least one sample point");
  const double tol = tolerance(doc, "structure", 1e-6);

  const StructureCheckReport report = check_structure_equations(algebroid, points, tol);
  std::vector<StructureResiduals> per_point(points.size());
  const auto count = static_cast<std::ptrdiff_t>(points.size());
  ParallelErrors errors;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      per_point[k] = structure_residuals(algebroid, points[k]);
    } catch (...) {
      errors.capture(k);
    }
  }
  errors.rethrow();

  out.write("structure.csv", [&](std::ostream& s) {
    s << "sample";
    for (int i = 1; i <= n; ++i) s << ",x" << i;
    s << ",anchor_residual,jacobi_residual\n";
    for (std::size_t k = 0; k < points.size(); ++k) {
      s << k;
      for (int i = 0; i < n; ++i) s << ',' << fmt(points[k][i]);
      s << ',' << fmt(per_point[k].anchor) << ',' << fmt(per_point[k].jacobi) << '\n';
    }
  });
  out.write_json("structure.json", {{"instance", {{"algebroid", algebroid.name()}, {"base_dim", n},
                                                  {"fiber_rank", algebroid.fiber_rank()}, {"seed", cfg.seed}}},
                                    {"samples", report.samples},
                                    {"anchor_residual", report.anchor_residual},
                                    {"jacobi_residual", report.jacobi_residual},
                                    {"antisymmetry_residual", report.antisymmetry_residual},
                                    {"tolerance", tol},
                                    {"pass", report.pass}});
  add_check(m, "structure-anchor", report.anchor_residual, tol, report.anchor_residual <= tol);
  add_check(m, "structure-jacobi", report.jacobi_residual, tol, report.jacobi_residual <= tol);
  add_check(m, "structure-antisymmetry", report.antisymmetry_residual, tol, report.antisymmetry_residual <= tol);
}

}  // namespace

ScenarioKind parse_kind(const std::string& name) {
  if (name == "classical") return ScenarioKind::classical;
  if (name == "schrodinger") return ScenarioKind::schrodinger;
  if (name == "heisenberg") return ScenarioKind::heisenberg;
  if (name == "equivalence") return ScenarioKind::equivalence;
  if (name == "uncertainty") return ScenarioKind::uncertainty;
  if (name == "structure-check") return ScenarioKind::structure_check;
  throw ConfigError("unknown scenario kind '" + name + "'");
}

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::classical: return "classical";
    case ScenarioKind::schrodinger: return "schrodinger";
    case ScenarioKind::heisenberg: return "heisenberg";
    case ScenarioKind::equivalence: return "equivalence";
    case ScenarioKind::uncertainty: return "uncertainty";
    case ScenarioKind::structure_check: return "structure-check";
  }
  return "unknown";
}

ScenarioConfig parse_scenario(const json& input) {
  if (!input.is_object()) throw ConfigError("scenario must be a JSON object");
  json doc = json::object();
  if (input.contains("builtin")) {
    if (!input["builtin"].is_string()) throw ConfigError("'builtin' must be a string");
    doc = preset(input["builtin"].get<std::string>());
  }
  json overrides = input;
  overrides.erase("builtin");
  doc.merge_patch(overrides);
  if (!doc.contains("kind") || !doc["kind"].is_string()) throw ConfigError("missing field 'kind'");

  ScenarioConfig cfg;
  cfg.kind = parse_kind(doc["kind"].get<std::string>());
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned() && !(doc["seed"].is_number_integer() && doc["seed"].get<long long>() >= 0))
      throw ConfigError("'seed' must be a non-negative integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();
  }
  cfg.hbar = number_at(doc, "hbar", 1.0);
  if (!(cfg.hbar > 0.0) || !std::isfinite(cfg.hbar)) throw ConfigError("'hbar' must be positive");
  cfg.doc = std::move(doc);
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

bool RunManifest::pass() const {
  if (numerical_failure) return false;
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

int RunManifest::exit_code() const {
  if (numerical_failure) return 3;
  return pass() ? 0 : 1;
}

json RunManifest::to_json() const {
  auto checks_json = json::array();
  auto tolerances = json::object();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    tolerances[c.name] = c.tolerance;
  }
  json j = {{"config_hash", config_hash}, {"kind", kind},       {"hbar", hbar},
            {"seed", seed},               {"tolerances", tolerances}, {"checks", checks_json},
            {"artifacts", artifacts},     {"pass", pass()},     {"numerical_failure", numerical_failure}};
  if (numerical_failure) j["failure"] = failure_message;
  return j;
}

RunManifest run_scenario(ScenarioConfig config, const RunOptions& options) {
  if (options.seed) config.seed = *options.seed;
  if (options.hbar) {
    if (!(*options.hbar > 0.0)) throw ConfigError("--hbar must be positive");
    config.hbar = *options.hbar;
  }
  config.doc["seed"] = config.seed;
  config.doc["hbar"] = config.hbar;

  RunManifest manifest;
  manifest.config_hash = fnv1a_hex(config.doc.dump());
  manifest.kind = to_string(config.kind);
  manifest.hbar = config.hbar;
  manifest.seed = config.seed;

  const bool write_files = !options.out_dir.empty();
  if (write_files) std::filesystem::create_directories(options.out_dir);
  ArtifactWriter writer(options.out_dir, manifest, write_files && !options.checks_only);

  try {
    switch (config.kind) {
      case ScenarioKind::classical: run_classical(config, writer, manifest); break;
      case ScenarioKind::schrodinger: run_schrodinger(config, writer, manifest); break;
      case ScenarioKind::heisenberg: run_heisenberg(config, writer, manifest); break;
      case ScenarioKind::equivalence: run_equivalence(config, writer, manifest); break;
      case ScenarioKind::uncertainty: run_uncertainty(config, writer, manifest); break;
      case ScenarioKind::structure_check: run_structure_check(config, writer, manifest); break;
    }
  } catch (const NumericalError& e) {
    manifest.numerical_failure = true;
    manifest.failure_message = e.what();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }

  if (write_files) {
    manifest.artifacts.push_back("manifest.json");
    std::ofstream out(options.out_dir / "manifest.json", std::ios::binary);
    out << manifest.to_json().dump(2) << '\n';
  }
  return manifest;
}

std::vector<BuiltinInfo> list_builtins() {
  std::vector<BuiltinInfo> out = {
      {"harmonic-oscillator", "classical", "Canonical oscillator H = (p^2 + q^2)/2 on T*R, one period",
       {{"base_dim", 1}, {"fiber_rank", 1}}},
      {"qubit-precession", "equivalence", "H = sigma_z, A = sigma_x, psi0 = |+>: Schrodinger vs Heisenberg",
       {{"hilbert_dim", 2}}},
      {"rigid-body", "classical", "Free rigid body on so(3)*, I = (1,2,3), Casimir p.p tracked",
       {{"base_dim", 0}, {"fiber_rank", 3}}},
      {"so3-action", "structure-check", "Action algebroid so(3) x R^3 with linear anchor x -> x cross e_a",
       {{"base_dim", 3}, {"fiber_rank", 3}}},
      {"so3-point", "structure-check", "so(3) as a Lie algebroid over a point", {{"base_dim", 0}, {"fiber_rank", 3}}},
      {"tangent-Rn", "structure-check", "Tangent algebroid of R^3 (rho = id, C = 0)",
       {{"base_dim", 3}, {"fiber_rank", 3}}},
      {"uncertainty-ensemble", "uncertainty", "10^4 random (A, B, psi) samples at n in {2,3,5}",
       {{"hilbert_dim", {2, 3, 5}}}},
  };
  std::sort(out.begin(), out.end(), [](const BuiltinInfo& a, const BuiltinInfo& b) { return a.name < b.name; });
  return out;
}

json builtin_scenario(const std::string& name) { return preset(name); }

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace geomech

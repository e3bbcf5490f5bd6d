// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Expected values come from oracles written here (closed forms, hand-coded
// integrators, direct matrix formulas), not from the library routines under test.

#include "geomech/algebroid.hpp"
#include "geomech/classical_flow.hpp"
#include "geomech/forms.hpp"
#include "geomech/heisenberg.hpp"
#include "geomech/kahler.hpp"
#include "geomech/numdiff.hpp"
#include "geomech/prolongation.hpp"
#include "geomech/schrodinger.hpp"
#include "geomech/scenario.hpp"
#include "geomech/sweeps.hpp"
#include "geomech/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>
#include <unistd.h>

using namespace geomech;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [FAILED]");
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

std::string bound(const std::string& name, double value, double tol) {
  return name + "=" + sci(value) + " (tol " + sci(tol) + ")";
}

Vector uniform_vector(Rng& rng, int n, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  Vector v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

CMatrix random_density(Rng& rng, int n) {
  std::normal_distribution<double> normal;
  CMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(normal(rng), normal(rng));
  CMatrix rho = m * m.adjoint();
  return rho / rho.trace().real();
}

// Random cubic polynomial on R^d with its value only.
struct Polynomial {
  double c0;
  Vector lin;
  Matrix quad;
  Vector cubic;

  static Polynomial random(Rng& rng, int d) {
    std::normal_distribution<double> normal;
    Polynomial p;
    p.c0 = normal(rng);
    p.lin = Vector::NullaryExpr(d, [&] { return normal(rng); });
    p.quad = Matrix::NullaryExpr(d, d, [&] { return normal(rng); });
    p.cubic = Vector::NullaryExpr(d, [&] { return normal(rng); });
    return p;
  }
  double operator()(const Vector& x) const {
    return c0 + lin.dot(x) + 0.5 * x.dot(quad * x) + cubic.dot(x.array().cube().matrix());
  }
  Vector grad(const Vector& x) const {
    return lin + 0.5 * (quad + quad.transpose()) * x + 3.0 * cubic.cwiseProduct(x.cwiseAbs2());
  }
};

// ---------------------------------------------------------------- criterion 1

Outcome structure_equations() {
  Outcome out;
  Rng rng(101);
  const double tol = 1e-6;
  auto samples = [&](int n, int count) {
    std::vector<Vector> pts;
    for (int k = 0; k < count; ++k) pts.push_back(uniform_vector(rng, n, 2.0));
    return pts;
  };

  const auto tangent = check_structure_equations(LieAlgebroid::tangent(3), samples(3, 1000), tol);
  out.require(tangent.pass, bound("tangent-R3 max", std::max(tangent.anchor_residual, tangent.jacobi_residual), tol));

  const auto so3 = check_structure_equations(LieAlgebroid::so3_point(), samples(0, 1), tol);
  out.require(so3.pass, bound("so3-point max", std::max(so3.anchor_residual, so3.jacobi_residual), tol));

  // Independent check of the nonconstant anchor: rho(x) e_a = x cross e_a.
  const auto action = LieAlgebroid::so3_action();
  double anchor_err = 0.0;
  for (const auto& x : samples(3, 20)) {
    const Eigen::Vector3d x3 = x;
    const Matrix rho = action.anchor(x);
    for (int a = 0; a < 3; ++a)
      anchor_err = std::max(anchor_err, (rho.col(a) - Vector(x3.cross(Eigen::Vector3d::Unit(a)))).cwiseAbs().maxCoeff());
  }
  out.require(anchor_err == 0.0, "so3-action anchor = x cross e_a");
  const auto act = check_structure_equations(action, samples(3, 1000), tol);
  out.require(act.pass, bound("so3-action max", std::max(act.anchor_residual, act.jacobi_residual), tol));

  // Corrupted constants: [e0, e1] = e2 + 0.5 e0 breaks Jacobi (cyclic sum = 0.5 e1).
  StructureTensor bad = StructureTensor::levi_civita();
  bad(0, 0, 1) = 0.5;
  bad(0, 1, 0) = -0.5;
  const auto corrupted = check_structure_equations(LieAlgebroid::lie_algebra(bad, "corrupted"), samples(0, 1), tol);
  out.require(!corrupted.pass && std::abs(corrupted.jacobi_residual - 0.5) < 1e-12,
              "corrupted-eps rejected, jacobi=" + sci(corrupted.jacobi_residual));
  return out;
}

// ---------------------------------------------------------------- criterion 2

Outcome d_squared() {
  Outcome out;
  Rng rng(202);
  const double tol = 1e-6;
  // d(d mu) nests two central differences, whose rounding error scales like eps/h^2,
  // so the step is raised to about eps^(1/4).
  const double step = 1e-4;
  const std::vector<LieAlgebroid> algebroids = {LieAlgebroid::tangent(3).with_fd_step(step),
                                               LieAlgebroid::so3_point().with_fd_step(step),
                                               LieAlgebroid::so3_action().with_fd_step(step)};
  for (const auto& a : algebroids) {
    const int n = a.base_dim();
    const int r = a.fiber_rank();
    double worst0 = 0.0, worst1 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      const Vector x = uniform_vector(rng, n, 1.0);
      const Polynomial f = Polynomial::random(rng, n);
      const auto zero_form = AlgebroidForm::function(r, [f](const Vector& y) { return f(y); });
      worst0 = std::max(worst0, exterior_derivative(a, exterior_derivative(a, zero_form))(x).max_abs());

      std::vector<Polynomial> comps;
      for (int c = 0; c < r; ++c) comps.push_back(Polynomial::random(rng, n));
      const AlgebroidForm one_form(1, r, [comps](const Vector& y) {
        Vector v(static_cast<Eigen::Index>(comps.size()));
        for (std::size_t c = 0; c < comps.size(); ++c) v[static_cast<Eigen::Index>(c)] = comps[c](y);
        return FormTensor::from_covector(v);
      });
      worst1 = std::max(worst1, exterior_derivative(a, exterior_derivative(a, one_form))(x).max_abs());
    }
    out.require(worst0 <= tol && worst1 <= tol,
                a.name() + " 0-forms " + sci(worst0) + ", 1-forms " + sci(worst1) + " (tol " + sci(tol) + ")");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 3

Outcome canonical_reduction() {
  Outcome out;
  const double tol = 1e-10;
  // Anisotropic oscillator H = (|p|^2 + q^T K q)/2 on T*R^2.
  const Eigen::Vector2d k(1.0, 2.5);
  const PhaseFunction h([k](const Vector& q, const Vector& p) {
    return 0.5 * (p.squaredNorm() + q.dot(Vector(k.cwiseProduct(Eigen::Vector2d(q)))));
  });
  const DualCoordinates z0{Vector{{1.0, -0.3}}, Vector{{0.2, 0.7}}};
  const double step = 1e-3;

  // Reference: canonical Hamilton equations qdot = dH/dp, pdot = -dH/dq, written as z' = M z.
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topRightCorner<2, 2>() = Eigen::Matrix2d::Identity();
  m.bottomLeftCorner<2, 2>() = -Eigen::Matrix2d(k.asDiagonal());
  const Eigen::Matrix4d id = Eigen::Matrix4d::Identity();
  const Eigen::Matrix4d midpoint = (id - 0.5 * step * m).inverse() * (id + 0.5 * step * m);
  auto rk4 = [&](const Eigen::Vector4d& z) {
    const Eigen::Vector4d k1 = m * z, k2 = m * (z + 0.5 * step * k1), k3 = m * (z + 0.5 * step * k2),
                          k4 = m * (z + step * k3);
    return Eigen::Vector4d(z + step / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4));
  };

  const ClassicalFlow flow(LieAlgebroid::tangent(2), h);
  for (const auto method : {IntegrationMethod::implicit_midpoint, IntegrationMethod::rk4}) {
    IntegratorConfig cfg;
    cfg.method = method;
    cfg.step = step;
    double worst = 0.0, worst_field = 0.0;
    DualCoordinates z = z0;
    for (int n = 0; n < 2000; ++n) {
      Eigen::Vector4d ref;
      ref << z.q, z.p;
      const Eigen::Vector4d field = m * ref;
      worst_field = std::max(worst_field, (flow.vector_field(z) - Vector(field)).cwiseAbs().maxCoeff());
      ref = method == IntegrationMethod::rk4 ? rk4(ref) : Eigen::Vector4d(midpoint * ref);
      z = flow.step(z, step, cfg);
      Eigen::Vector4d got;
      got << z.q, z.p;
      worst = std::max(worst, (got - ref).cwiseAbs().maxCoeff());
      z = {ref.head<2>(), ref.tail<2>()};  // restart each step from the reference state
    }
    out.require(worst <= tol && worst_field <= 1e-8,
                to_string(method) + " per-step " + sci(worst) + ", field " + sci(worst_field) + " (tol " + sci(tol) + ")");
  }
  return out;
}

// ---------------------------------------------------------------- criterion 4

Outcome rigid_body() {
  Outcome out;
  const Eigen::Vector3d inertia(1.0, 2.0, 3.0);
  const Eigen::Vector3d inv = inertia.cwiseInverse();
  const PhaseFunction h([inv](const Vector&, const Vector& p) { return 0.5 * p.dot(Vector(inv.cwiseProduct(Eigen::Vector3d(p)))); });
  const DualCoordinates z0{Vector(0), Vector{{0.1, 1.0, 0.1}}};

  ClassicalFlow flow(LieAlgebroid::so3_point(), h);
  flow.register_casimir("casimir", PhaseFunction([](const Vector&, const Vector& p) { return p.squaredNorm(); }));
  IntegratorConfig cfg;
  cfg.method = IntegrationMethod::implicit_midpoint;
  cfg.step = 1e-3;
  cfg.t_final = 10.0;
  const Trajectory traj = flow.integrate(z0, cfg);
  const double de = traj.relative_drift("H");
  const double dc = traj.relative_drift("casimir");
  out.require(de <= 1e-8, bound("energy drift", de, 1e-8));
  out.require(dc <= 1e-8, bound("casimir drift", dc, 1e-8));

  // Oracle: Euler equations mdot = m x (I^-1 m), classical RK4 at step 1e-5.
  auto euler = [&](const Eigen::Vector3d& m) { return Eigen::Vector3d(m.cross(inv.cwiseProduct(m))); };
  Eigen::Vector3d m = z0.p;
  const double h_ref = 1e-5;
  const int ratio = 100;
  double worst = 0.0;
  for (std::size_t k = 1; k < traj.states.size(); ++k) {
    for (int s = 0; s < ratio; ++s) {
      const Eigen::Vector3d k1 = euler(m), k2 = euler(m + 0.5 * h_ref * k1), k3 = euler(m + 0.5 * h_ref * k2),
                            k4 = euler(m + h_ref * k3);
      m += h_ref / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    worst = std::max(worst, (Vector(m) - traj.states[k].p).cwiseAbs().maxCoeff());
  }
  out.require(worst <= 1e-6, bound("max |midpoint - RK4 oracle|", worst, 1e-6));
  return out;
}

// ---------------------------------------------------------------- criterion 5

Outcome symplectic_section() {
  Outcome out;
  Rng rng(505);
  const std::vector<LieAlgebroid> algebroids = {LieAlgebroid::tangent(3), LieAlgebroid::so3_point(),
                                               LieAlgebroid::so3_action()};
  double worst_dh = 0.0, worst_bracket = 0.0;
  for (int sample = 0; sample < 1000; ++sample) {
    const auto& a = algebroids[sample % algebroids.size()];
    const int n = a.base_dim();
    const int r = a.fiber_rank();
    const Polynomial pf = Polynomial::random(rng, n + r);
    const Polynomial pg = Polynomial::random(rng, n + r);
    auto phase = [n, r](const Polynomial& poly) {
      return PhaseFunction([poly, n, r](const Vector& q, const Vector& p) {
        Vector z(n + r);
        z << q, p;
        return poly(z);
      });
    };
    const PhaseFunction f = phase(pf), g = phase(pg);
    const DualCoordinates z{uniform_vector(rng, n, 1.0), uniform_vector(rng, r, 1.0)};
    Vector zz(n + r);
    zz << z.q, z.p;

    // dH on the frame (X~_i, V~_i) is (rho^T dH/dq, dH/dp), from the analytic gradient.
    const Vector grad = pf.grad(zz);
    Vector dh(2 * r);
    dh << a.anchor(z.q).transpose() * grad.head(n), grad.tail(r);

    const Matrix omega0 = canonical_two_form(a, z).omega0;
    const Vector sigma_f = hamiltonian_section(a, f, z);
    const Vector contraction = omega0.transpose() * sigma_f;
    worst_dh = std::max(worst_dh, (contraction - dh).cwiseAbs().maxCoeff());

    const double paper_form = -sigma_f.dot(omega0 * hamiltonian_section(a, g, z));
    worst_bracket = std::max(worst_bracket, std::abs(paper_form - dual_poisson(a, g, f, z)));
  }
  out.require(worst_dh <= 1e-6, bound("|i_sigma omega0 - dH|", worst_dh, 1e-6));
  out.require(worst_bracket <= 1e-8, bound("|-omega0(sF,sG) - {G,F}|", worst_bracket, 1e-8));
  return out;
}

// ---------------------------------------------------------------- criterion 6

Outcome kahler_identities() {
  Outcome out;
  Rng rng(606);
  double j2 = 0.0, compat = 0.0, invariance = 0.0, sampled = 0.0;
  for (int n = 1; n <= 8; ++n) {
    const KahlerSpace s(n);
    const Matrix& g = s.metric();
    const Matrix& j = s.complex_structure();
    const Matrix& w = s.symplectic();
    j2 = std::max(j2, (j * j + Matrix::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff());
    // omega(X, Y) = g(JX, Y), i.e. the matrix omega equals J^T g.
    compat = std::max(compat, (w - j.transpose() * g).cwiseAbs().maxCoeff());
    invariance = std::max(invariance, (j.transpose() * g * j - g).cwiseAbs().maxCoeff());
    for (int t = 0; t < 20; ++t) {
      const Vector x = uniform_vector(rng, 2 * n, 1.0), y = uniform_vector(rng, 2 * n, 1.0);
      sampled = std::max(sampled, std::abs(s.g(j * x, j * y) - s.g(x, y)));
      sampled = std::max(sampled, std::abs(s.omega(x, y) - s.g(j * x, y)));
    }
  }
  out.require(j2 == 0.0 && compat == 0.0 && invariance == 0.0, "J^2=-I, omega=g(J.,.), J^T g J=g exact");
  out.require(sampled <= 1e-15, bound("sampled identities", sampled, 1e-15));

  // Fubini-Study: chart metric vs sin^2 of the ray angle between symmetric neighbours.
  double fs = 0.0;
  const double eps = 1e-5;
  for (int k = 0; k < 1000; ++k) {
    std::uniform_int_distribution<int> dim(2, 6);
    const int n = dim(rng);
    const AffineChart chart = affine_chart(random_state(rng, n).amplitudes());
    const CVector dz = random_state(rng, n - 1).amplitudes();
    auto lift = [&](const CVector& z) {
      CVector u(n);
      for (int i = 0, m = 0; i < n; ++i) u[i] = i == chart.pivot ? Complex(1.0) : z[m++];
      return CVector(u / u.norm());
    };
    const CVector a = lift(chart.z - 0.5 * eps * dz), b = lift(chart.z + 0.5 * eps * dz);
    const double sin2 = (b - a.dot(b) * a).squaredNorm();
    const double oracle = sin2 / (eps * eps);
    fs = std::max(fs, std::abs(fubini_study_metric(chart.z, dz) - oracle));
  }
  out.require(fs <= 1e-8, bound("Fubini-Study", fs, 1e-8));

  double trans = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const int n = 2 + k % 7;
    const QuantumState x = random_state(rng, n), y = random_state(rng, n);
    const double hbar = 0.5 + (k % 5) * 0.5;
    const auto t = geodesic_transition(x, y, hbar);
    const double overlap = std::norm(x.amplitudes().dot(y.amplitudes()));
    const double c = std::cos(t.distance / std::sqrt(2.0 * hbar));
    trans = std::max({trans, std::abs(c * c - overlap), std::abs(t.probability - overlap)});
  }
  out.require(trans <= 1e-14, bound("cos^2 law vs |<x|y>|^2", trans, 1e-14));
  return out;
}

// ---------------------------------------------------------------- criterion 7

Outcome schrodinger_engine() {
  Outcome out;
  Rng rng(707);
  double norm = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const Observable h(random_hermitian(rng, n));
    const QuantumState psi0 = random_state(rng, n);
    for (double t = 0.0; t <= 100.0 + 1e-9; t += 0.5)
      norm = std::max(norm, std::abs(evolve(h, psi0, t).amplitudes().norm() - 1.0));
  }
  out.require(norm <= 1e-12, bound("norm drift to t=100", norm, 1e-12));

  double ehrenfest = 0.0, kahler_form = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int n = 2 + k % 7;
    const double hbar = 0.7 + 0.1 * (k % 4);
    const Observable h(random_hermitian(rng, n)), a(random_hermitian(rng, n));
    const QuantumState psi = random_state(rng, n);
    const CVector& v = psi.amplitudes();
    const CMatrix comm = h.matrix() * a.matrix() - a.matrix() * h.matrix();
    const double predicted = (Complex(0.0, 1.0 / hbar) * v.dot(comm * v)).real();
    const double dt = 1e-5;
    const double measured = (expectation(a, evolve(h, psi, dt, hbar)) - expectation(a, evolve(h, psi, -dt, hbar))) / (2 * dt);
    ehrenfest = std::max(ehrenfest, std::abs(measured - predicted));
    // d f_A/dt = (1/hbar) Omega(df_A, df_H) with f_X = <psi|X psi>/2.
    const KahlerSpace s(n);
    const Vector x = psi.realified();
    const double omega_rate = s.Omega(quadratic_gradient(a.matrix(), x), quadratic_gradient(h.matrix(), x)) / hbar;
    kahler_form = std::max(kahler_form, std::abs(omega_rate - 0.5 * predicted));
  }
  out.require(ehrenfest <= 1e-6, bound("Ehrenfest", ehrenfest, 1e-6));
  out.require(kahler_form <= 1e-6, bound("Omega form", kahler_form, 1e-6));

  const Observable sz = Observable::pauli_z(), sx = Observable::pauli_x();
  const QuantumState plus(CVector::Ones(2));
  double qubit = 0.0;
  for (double t : uniform_grid(10.0, 0.01)) qubit = std::max(qubit, std::abs(expectation(sx, evolve(sz, plus, t)) - std::cos(2 * t)));
  out.require(qubit <= 1e-10, bound("<sx>(t) - cos 2t", qubit, 1e-10));
  return out;
}

// ---------------------------------------------------------------- criterion 8

Outcome heisenberg_engine() {
  Outcome out;
  Rng rng(808);
  double trace = 0.0, pullback = 0.0, assoc = 0.0, assoc_hbar = 0.0, spectral = 0.0;
  for (int k = 0; k < 200; ++k) {
    const int n = 2 + k % 7;
    const CMatrix a = random_hermitian(rng, n), b = random_hermitian(rng, n), c = random_hermitian(rng, n);
    const StateFunctional w(random_density(rng, n));
    const Complex direct = (w.density() * a * b).trace();
    trace = std::max(trace, std::abs(Complex(tensor_R(w, a, b), tensor_Lambda(w, a, b)) - direct));

    // Pull back along the momentum map: G + i Omega on gradients of f_X = <psi|X psi>/2.
    const QuantumState psi = random_state(rng, n);
    const StateFunctional m = momentum_map(psi.amplitudes());
    const KahlerSpace s(n);
    const Vector x = psi.realified();
    const Vector ga = gradient([&](const Vector& y) { return 0.5 * complexify(y).dot(a * complexify(y)).real(); }, x);
    const Vector gb = gradient([&](const Vector& y) { return 0.5 * complexify(y).dot(b * complexify(y)).real(); }, x);
    pullback = std::max(pullback, std::abs(Complex(s.G(ga, gb), s.Omega(ga, gb)) - Complex(tensor_R(m, a, b), tensor_Lambda(m, a, b))));

    // (A.B).C - A.(B.C) = -[[A,C]_-, B]_- with the half commutator.
    auto jp = [](const CMatrix& x1, const CMatrix& x2) { return CMatrix(0.5 * (x1 * x2 + x2 * x1)); };
    auto hc = [](const CMatrix& x1, const CMatrix& x2) { return CMatrix(0.5 * (x1 * x2 - x2 * x1)); };
    const double scale = std::max({a.norm(), b.norm(), c.norm()});
    const CMatrix lhs = jp(jp(a, b), c) - jp(a, jp(b, c));
    assoc = std::max(assoc, (lhs + hc(hc(a, c), b)).cwiseAbs().maxCoeff() / (scale * scale * scale));
    assoc = std::max(assoc, jordan_lie_associator_residual(a, b, c) / (scale * scale * scale));
    const double hbar = 0.3 + 0.2 * (k % 5);
    assoc_hbar = std::max(assoc_hbar, jordan_lie_associator_residual_hbar(a, b, c, hbar) / (scale * scale * scale));

    const Observable h(random_hermitian(rng, n)), obs(a);
    const Observable at = heisenberg_evolve(h, obs, 0.1 * k, hbar);
    spectral = std::max(spectral, (at.eigenvalues() - obs.eigenvalues()).cwiseAbs().maxCoeff());
  }
  out.require(trace <= 1e-12, bound("R+iL vs Tr(wAB)", trace, 1e-12));
  out.require(pullback <= 1e-8, bound("m(G+iO) vs R+iL", pullback, 1e-8));
  out.require(assoc <= 1e-10 && assoc_hbar <= 1e-10,
              "associator " + sci(assoc) + ", hbar form " + sci(assoc_hbar) + " (tol 1.00e-10, relative)");
  out.require(spectral <= 1e-10, bound("spectral drift", spectral, 1e-10));
  return out;
}

// ---------------------------------------------------------------- criterion 9

Outcome picture_equivalence() {
  Outcome out;
  Rng rng(909);
  const auto instances = make_equivalence_instances(rng, 100, 2, 8);
  const auto grid = uniform_grid(10.0, 0.05);
  const auto result = equivalence_sweep(instances, grid);
  out.require(result.pass, bound("max |<A>_S - <A>_H|", result.worst, kEquivalenceTol));

  // Spot-check one instance against a propagator built here from a Taylor series.
  const auto& inst = instances.front();
  const double t = 0.37;
  CMatrix u = CMatrix::Identity(inst.h.dim(), inst.h.dim()), term = u;
  const CMatrix gen = Complex(0.0, -t) * inst.h.matrix();
  for (int k = 1; k < 60; ++k) {
    term = term * gen / static_cast<double>(k);
    u += term;
  }
  const CVector psi_t = u * inst.psi0.amplitudes();
  const double oracle = psi_t.dot(inst.a.matrix() * psi_t).real();
  const double lib = check_equivalence(inst.h, inst.a, inst.psi0, std::vector<double>{t}).heisenberg.front();
  out.require(std::abs(oracle - lib) <= 1e-9, bound("Taylor-series oracle", std::abs(oracle - lib), 1e-9));
  return out;
}

// ---------------------------------------------------------------- criterion 10

Outcome uncertainty() {
  Outcome out;
  Rng rng(1010);
  const int dims[] = {2, 3, 5};
  const auto samples = make_uncertainty_samples(rng, 10000, dims);
  const auto report = uncertainty_sweep(samples);
  out.require(report.min_slack >= -1e-10, bound("min slack", report.min_slack, 1e-10));
  out.require(report.max_rhs_gap <= 1e-8, bound("|geometric - RS rhs|", report.max_rhs_gap, 1e-8));

  // Oracle for the Robertson-Schrodinger terms on a subset, via Cov and the commutator directly.
  double rs = 0.0;
  for (std::size_t k = 0; k < 200; ++k) {
    const auto& s = samples[k];
    const CVector& v = s.psi.amplitudes();
    const CVector av = s.a.matrix() * v, bv = s.b.matrix() * v;
    const double ea = v.dot(av).real(), eb = v.dot(bv).real();
    const CVector da = av - ea * v, db = bv - eb * v;
    const Complex cross = da.dot(db);  // <dA dB> = cov + i * (commutator term)
    const double lhs = da.squaredNorm() * db.squaredNorm();
    const double rhs = std::norm(cross);
    rs = std::max({rs, std::abs(report.entries[k].lhs - lhs), std::abs(report.entries[k].rhs - rhs)});
  }
  out.require(rs <= 1e-10, bound("RS oracle", rs, 1e-10));

  const auto pauli = check_uncertainty(Observable::pauli_x(), Observable::pauli_y(), QuantumState::basis(2, 0));
  const double eq = std::max(std::abs(pauli.lhs - 1.0), std::abs(pauli.rhs - 1.0));
  out.require(eq <= 1e-12, bound("Pauli equality |lhs-1|,|rhs-1|", eq, 1e-12));
  return out;
}

// ---------------------------------------------------------------- criterion 11

Outcome criticality() {
  Outcome out;
  Rng rng(1111);
  double on_eigen = 0.0;
  for (int n = 2; n <= 8; ++n) {
    const Observable a(random_hermitian(rng, n));
    for (int k = 0; k < n; ++k)
      on_eigen = std::max(on_eigen, projected_gradient_norm(a, QuantumState(a.eigenvectors().col(k))));
  }
  out.require(on_eigen <= 1e-8, bound("max on eigenvectors", on_eigen, 1e-8));

  const auto samples = make_criticality_samples(rng, 1000, 2, 8);
  const auto norms = criticality_sweep(samples);
  const double min_norm = *std::min_element(norms.begin(), norms.end());
  out.require(min_norm > 1e-4, "min off eigenvectors=" + sci(min_norm) + " (> 1.00e-04)");

  // Oracle: the sphere gradient of <A> is 2 realify((A - <A>) psi).
  double grad_err = 0.0;
  for (std::size_t k = 0; k < 100; ++k) {
    const CVector& v = samples[k].psi.amplitudes();
    const CVector av = samples[k].a.matrix() * v;
    const double exact = 2.0 * (av - v.dot(av).real() * v).norm();
    grad_err = std::max(grad_err, std::abs(norms[k] - exact));
  }
  out.require(grad_err <= 1e-7, bound("analytic gradient", grad_err, 1e-7));
  return out;
}

// ---------------------------------------------------------------- criterion 12

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome cli_determinism() {
  Outcome out;
  const fs::path root = fs::temp_directory_path() / ("geomech_accept_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  for (const auto& b : list_builtins()) {
    const fs::path cfg = root / (b.name + ".json");
    std::ofstream(cfg) << nlohmann::json{{"builtin", b.name}}.dump();
    bool same = true;
    int files = 0;
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      dirs.push_back(root / (b.name + "_" + std::to_string(run)));
      const std::string cmd = std::string("\"") + GEOMECH_CLI_PATH + "\" run --config \"" + cfg.string() +
                              "\" --out \"" + dirs.back().string() + "\" --seed 12345 > /dev/null";
      if (std::system(cmd.c_str()) != 0) same = false;
    }
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      const fs::path twin = dirs[1] / entry.path().filename();
      if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) same = false;
    }
    out.require(same && files > 0, b.name + " (" + std::to_string(files) + " csv)");
  }
  fs::remove_all(root);
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"structure equations", structure_equations},
      {"(d^E)^2 = 0", d_squared},
      {"canonical reduction", canonical_reduction},
      {"rigid body", rigid_body},
      {"symplectic section", symplectic_section},
      {"Kahler identities", kahler_identities},
      {"Schrodinger engine", schrodinger_engine},
      {"Heisenberg engine", heisenberg_engine},
      {"picture equivalence", picture_equivalence},
      {"uncertainty relation", uncertainty},
      {"eigenvector criticality", criticality},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu %-24s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failures;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include "geomech/numdiff.hpp"
#include "geomech/schrodinger.hpp"
#include "geomech/verification.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace geomech;

namespace {

const Complex I(0.0, 1.0);

// Classical RK4 on psi' = -(i/hbar) H psi.
CVector rk4_evolve(const CMatrix& h, CVector psi, double t, int steps, double hbar = 1.0) {
  const double dt = t / steps;
  auto f = [&](const CVector& v) { return CVector((-I / hbar) * (h * v)); };
  for (int k = 0; k < steps; ++k) {
    const CVector k1 = f(psi), k2 = f(psi + 0.5 * dt * k1), k3 = f(psi + 0.5 * dt * k2), k4 = f(psi + dt * k3);
    psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return psi;
}

}  // namespace

TEST_SUITE("schrodinger") {

TEST_CASE("observable validation and spectrum") {
  CHECK_THROWS_AS(Observable(CMatrix{{0.0, 1.0}, {0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(Observable(CMatrix(0, 0)), DimensionError);
  const auto sy = Observable::pauli_y();
  CHECK((sy.eigenvalues() - Vector{{-1.0, 1.0}}).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(sy.eigen_residual() < 1e-15);
  CHECK(sy.hermiticity_residual() == 0.0);
}

TEST_CASE("expectation values") {
  Rng rng(41);
  const QuantumState psi = random_state(rng, 4);
  CHECK(expectation(Observable::identity(4), psi) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(expectation(Observable::pauli_z(), QuantumState::basis(2, 0)) == 1.0);
  const CVector v{{1.0, std::polar(1.0, std::numbers::pi / 3)}};
  CHECK(expectation(Observable::pauli_x(), v) == doctest::Approx(0.5).epsilon(1e-15));
  // Unnormalized input is divided by the norm.
  CHECK(expectation(Observable::pauli_z(), CVector{{2.0, 0.0}}) == 1.0);
  CHECK_THROWS_AS(expectation(Observable::pauli_z(), CVector::Zero(2)), DomainError);
  CHECK_THROWS_AS(expectation(Observable::pauli_z(), CVector::Ones(3)), DimensionError);
}

TEST_CASE("phase equivariance of expectation and measurement") {
  Rng rng(42);
  const Observable a(random_hermitian(rng, 4));
  const QuantumState psi = random_state(rng, 4);
  const QuantumState rotated(std::polar(1.0, 0.77) * psi.amplitudes());
  CHECK(std::abs(expectation(a, psi) - expectation(a, rotated)) < 1e-15);
  const auto m1 = measure(a, psi), m2 = measure(a, rotated);
  REQUIRE(m1.size() == m2.size());
  for (std::size_t k = 0; k < m1.size(); ++k) CHECK(std::abs(m1[k].probability - m2[k].probability) < 1e-15);
}

TEST_CASE("Schrodinger vector field") {
  const auto sz = Observable::pauli_z();
  // Eigenvector: pure phase rotation.
  const QuantumState k1 = QuantumState::basis(2, 1);
  CHECK(schrodinger_vector_field(sz, k1, 2.0) == realify(CVector((-I * -1.0 / 2.0) * k1.amplitudes())));
  CHECK(schrodinger_vector_field(Observable(CMatrix::Zero(2, 2)), k1).isZero(0.0));

  // Field equals Omega grad h / hbar with h = <psi|H psi>/2, gradient by central differences.
  const QuantumState plus(CVector::Ones(2));
  const KahlerSpace s(2);
  for (double hbar : {1.0, 0.5}) {
    const Vector grad = gradient([&](const Vector& x) { return quadratic_function(sz.matrix(), x); }, plus.realified());
    const Vector field = s.contravariant_symplectic() * grad / hbar;
    CHECK((schrodinger_vector_field(sz, plus, hbar) - field).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((schrodinger_vector_field(sz, plus, hbar) - realify(CVector((-I / hbar) * (sz.matrix() * plus.amplitudes()))))
              .cwiseAbs()
              .maxCoeff() == 0.0);
  }
}

TEST_CASE("unitary evolution") {
  Rng rng(43);
  const Observable h(random_hermitian(rng, 5));
  const QuantumState psi0 = random_state(rng, 5);
  CHECK(evolve(h, psi0, 0.0).amplitudes() == psi0.amplitudes());
  const CMatrix u = propagator(h, 1.3);
  CHECK((u.adjoint() * u - CMatrix::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-14);
  // Group property and agreement with an RK4 integration.
  CHECK((propagator(h, 0.4) * propagator(h, 0.9) - u).cwiseAbs().maxCoeff() < 1e-13);
  const CVector ref = rk4_evolve(h.matrix(), psi0.amplitudes(), 1.3, 4000);
  CHECK((evolve(h, psi0, 1.3).amplitudes() - ref).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("qubit precession matches the closed form and RK4") {
  const auto sz = Observable::pauli_z(), sx = Observable::pauli_x();
  const QuantumState plus(CVector::Ones(2));
  for (double t = 0.0; t < 7.0; t += 0.25) {
    CHECK(std::abs(expectation(sx, evolve(sz, plus, t)) - std::cos(2 * t)) < 1e-12);
    CHECK(std::abs(expectation(sx, rk4_evolve(sz.matrix(), plus.amplitudes(), t, 2000)) - std::cos(2 * t)) < 1e-9);
  }
  CHECK(expectation(sx, evolve(sz, plus, std::numbers::pi / 2)) == doctest::Approx(-1.0));
  // Stationary state.
  const QuantumState k0 = QuantumState::basis(2, 0);
  CHECK(expectation(sz, evolve(sz, k0, 3.3)) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("Born measurement") {
  const auto m = measure(Observable::pauli_z(), QuantumState(CVector::Ones(2)));
  REQUIRE(m.size() == 2);
  CHECK(m[0].eigenvalue == -1.0);
  CHECK(m[0].probability == doctest::Approx(0.5));
  CHECK(m[1].probability == doctest::Approx(0.5));

  Rng rng(44);
  const Observable a(random_hermitian(rng, 4));
  const auto e = measure(a, QuantumState(a.eigenvectors().col(2)));
  CHECK(e[2].probability == doctest::Approx(1.0));
  CHECK(e[0].probability < 1e-28);

  // Degenerate eigenvalues are merged.
  const Observable deg(CMatrix(Vector{{1.0, 1.0, 2.0}}.cast<Complex>().asDiagonal()));
  const auto d = measure(deg, QuantumState(CVector::Ones(3)));
  REQUIRE(d.size() == 2);
  CHECK(d[0].probability == doctest::Approx(2.0 / 3.0));
  double total = 0.0;
  for (const auto& o : measure(a, random_state(rng, 4))) total += o.probability;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
}

}  // TEST_SUITE

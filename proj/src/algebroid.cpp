#include "geomech/algebroid.hpp"
#include "geomech/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace geomech {

StructureTensor StructureTensor::levi_civita() {
  StructureTensor c(3);
  c(2, 0, 1) = 1.0;
  c(2, 1, 0) = -1.0;
  c(0, 1, 2) = 1.0;
  c(0, 2, 1) = -1.0;
  c(1, 2, 0) = 1.0;
  c(1, 0, 2) = -1.0;
  return c;
}

Vector StructureTensor::contract(const Vector& u, const Vector& v) const {
  require_dim(u.size(), rank_, "StructureTensor::contract");
  require_dim(v.size(), rank_, "StructureTensor::contract");
  Vector out = Vector::Zero(rank_);
  for (int g = 0; g < rank_; ++g)
    for (int a = 0; a < rank_; ++a)
      for (int b = 0; b < rank_; ++b) out[g] += (*this)(g, a, b) * u[a] * v[b];
  return out;
}

double StructureTensor::antisymmetry_residual() const {
  double r = 0.0;
  for (int g = 0; g < rank_; ++g)
    for (int a = 0; a < rank_; ++a)
      for (int b = a; b < rank_; ++b) r = std::max(r, std::abs((*this)(g, a, b) + (*this)(g, b, a)));
  return r;
}

LieAlgebroid::LieAlgebroid(int base_dim, int fiber_rank, AnchorField anchor, StructureField structure,
                           std::string name, PatchPredicate patch)
    : base_dim_(base_dim),
      fiber_rank_(fiber_rank),
      anchor_(std::move(anchor)),
      structure_(std::move(structure)),
      name_(std::move(name)),
      patch_(std::move(patch)) {
  if (base_dim < 0 || fiber_rank < 1) throw DimensionError("LieAlgebroid: need base_dim >= 0 and fiber_rank >= 1");
  if (!anchor_ || !structure_) throw std::invalid_argument("LieAlgebroid: anchor and structure must be callable");
}

LieAlgebroid LieAlgebroid::tangent(int n) {
  return LieAlgebroid(
      n, n, [n](const Vector&) { return Matrix::Identity(n, n); },
      [n](const Vector&) { return StructureTensor::zero(n); }, "tangent-R" + std::to_string(n));
}

LieAlgebroid LieAlgebroid::lie_algebra(StructureTensor constants, std::string name) {
  const int r = constants.rank();
  return LieAlgebroid(
      0, r, [r](const Vector&) { return Matrix(0, r); },
      [c = std::move(constants)](const Vector&) { return c; }, std::move(name));
}

LieAlgebroid LieAlgebroid::so3_point() { return lie_algebra(StructureTensor::levi_civita(), "so3-point"); }

LieAlgebroid LieAlgebroid::so3_action() {
  auto anchor = [](const Vector& x) {
    // column α is x × e_α
    Matrix rho(3, 3);
    const Eigen::Vector3d xv(x[0], x[1], x[2]);
    for (int a = 0; a < 3; ++a) rho.col(a) = xv.cross(Eigen::Vector3d::Unit(a));
    return rho;
  };
  return LieAlgebroid(
      3, 3, anchor, [](const Vector&) { return StructureTensor::levi_civita(); }, "so3-action");
}

LieAlgebroid LieAlgebroid::constant(Matrix anchor, StructureTensor constants, std::string name) {
  const int n = static_cast<int>(anchor.rows());
  const int r = constants.rank();
  require_dim(anchor.cols(), r, "LieAlgebroid::constant anchor columns");
  return LieAlgebroid(
      n, r, [a = std::move(anchor)](const Vector&) { return a; },
      [c = std::move(constants)](const Vector&) { return c; }, std::move(name));
}

LieAlgebroid LieAlgebroid::with_fd_step(double h) const {
  if (!(h > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
  LieAlgebroid copy = *this;
  copy.fd_step_ = h;
  return copy;
}

bool LieAlgebroid::contains(const Vector& x) const {
  if (x.size() != base_dim_ || !x.allFinite()) return false;
  return !patch_ || patch_(x);
}

void LieAlgebroid::require_point(const Vector& x) const {
  require_dim(x.size(), base_dim_, "base point");
  if (!contains(x)) throw DomainError("point outside the coordinate patch of algebroid '" + name_ + "'");
}

Matrix LieAlgebroid::anchor(const Vector& x) const {
  require_point(x);
  Matrix rho = anchor_(x);
  if (rho.rows() != base_dim_ || rho.cols() != fiber_rank_)
    throw DimensionError("anchor field returned a matrix of the wrong shape");
  return rho;
}

StructureTensor LieAlgebroid::structure(const Vector& x) const {
  require_point(x);
  StructureTensor c = structure_(x);
  require_dim(c.rank(), fiber_rank_, "structure field rank");
  return c;
}

AlgebroidSection AlgebroidSection::constant(Vector components) {
  const int r = static_cast<int>(components.size());
  return AlgebroidSection(r, [c = std::move(components)](const Vector&) { return c; });
}

AlgebroidSection AlgebroidSection::basis(int rank, int alpha) {
  return constant(Vector::Unit(rank, alpha));
}

Vector AlgebroidSection::operator()(const Vector& x) const {
  Vector y = field_(x);
  require_dim(y.size(), rank_, "section value");
  return y;
}

namespace {

Vector vector_directional(const AlgebroidSection& s, const Vector& x, const Vector& v, double h) {
  if (v.size() == 0 || v.isZero(0.0)) return Vector::Zero(s.rank());
  return (s(x + h * v) - s(x - h * v)) / (2.0 * h);
}

}  // namespace

double anchor_derivative(const LieAlgebroid& algebroid, const AlgebroidSection& s,
                         const std::function<double(const Vector&)>& f, const Vector& x) {
  algebroid.require_point(x);
  require_dim(s.rank(), algebroid.fiber_rank(), "section rank");
  const Vector v = algebroid.anchor(x) * s(x);
  return directional_derivative(f, x, v, algebroid.fd_step());
}

Vector bracket(const LieAlgebroid& algebroid, const AlgebroidSection& s1, const AlgebroidSection& s2,
               const Vector& x) {
  algebroid.require_point(x);
  require_dim(s1.rank(), algebroid.fiber_rank(), "bracket: first section rank");
  require_dim(s2.rank(), algebroid.fiber_rank(), "bracket: second section rank");
  const Matrix rho = algebroid.anchor(x);
  const Vector y1 = s1(x);
  const Vector y2 = s2(x);
  const double h = algebroid.fd_step();
  Vector out = algebroid.structure(x).contract(y1, y2);
  out += vector_directional(s2, x, rho * y1, h);
  out -= vector_directional(s1, x, rho * y2, h);
  return out;
}

StructureResiduals structure_residuals(const LieAlgebroid& algebroid, const Vector& x) {
  algebroid.require_point(x);
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  const double h = algebroid.fd_step();
  const Matrix rho = algebroid.anchor(x);
  const StructureTensor c = algebroid.structure(x);
  if (!rho.allFinite()) throw NumericalError("structure equations: non-finite anchor");

  // Derivatives along the anchor images ρ_α = ρ^i_α ∂_i.
  std::vector<Matrix> d_rho(r, Matrix::Zero(n, r));
  std::vector<StructureTensor> d_c(r, StructureTensor::zero(r));
  for (int a = 0; a < r; ++a) {
    const Vector v = rho.col(a);
    if (n == 0 || v.isZero(0.0)) continue;
    const Vector xp = x + h * v;
    const Vector xm = x - h * v;
    d_rho[a] = (algebroid.anchor(xp) - algebroid.anchor(xm)) / (2.0 * h);
    const StructureTensor cp = algebroid.structure(xp);
    const StructureTensor cm = algebroid.structure(xm);
    auto out = d_c[a].data();
    for (std::size_t k = 0; k < out.size(); ++k) out[k] = (cp.data()[k] - cm.data()[k]) / (2.0 * h);
  }

  StructureResiduals res;
  res.antisymmetry = c.antisymmetry_residual();
  for (int a = 0; a < r; ++a) {
    for (int b = 0; b < r; ++b) {
      for (int i = 0; i < n; ++i) {
        double e = d_rho[a](i, b) - d_rho[b](i, a);
        for (int g = 0; g < r; ++g) e -= rho(i, g) * c(g, a, b);
        res.anchor = std::max(res.anchor, std::abs(e));
        if (!std::isfinite(e)) res.anchor = e;
      }
    }
  }
  for (int nu = 0; nu < r; ++nu) {
    for (int a = 0; a < r; ++a) {
      for (int b = 0; b < r; ++b) {
        for (int g = 0; g < r; ++g) {
          double e = d_c[a](nu, b, g) + d_c[b](nu, g, a) + d_c[g](nu, a, b);
          for (int mu = 0; mu < r; ++mu) {
            e += c(mu, b, g) * c(nu, a, mu) + c(mu, g, a) * c(nu, b, mu) + c(mu, a, b) * c(nu, g, mu);
          }
          res.jacobi = std::max(res.jacobi, std::abs(e));
          if (!std::isfinite(e)) res.jacobi = e;
        }
      }
    }
  }
  return res;
}

namespace {

StructureCheckReport finish_report(const StructureResiduals& worst, bool finite, std::size_t samples,
                                   double tol) {
  if (!finite) throw NumericalError("structure equations: non-finite residual (singular anchor data?)");
  StructureCheckReport report;
  report.anchor_residual = worst.anchor;
  report.jacobi_residual = worst.jacobi;
  report.antisymmetry_residual = worst.antisymmetry;
  report.samples = samples;
  report.tolerance = tol;
  report.pass = worst.anchor <= tol && worst.jacobi <= tol && worst.antisymmetry <= tol;
  return report;
}

void require_samples(const LieAlgebroid& algebroid, std::span<const Vector> samples) {
  if (samples.empty()) throw std::invalid_argument("check_structure_equations: no sample points");
  for (const auto& x : samples) algebroid.require_point(x);
}

}  // namespace

StructureCheckReport check_structure_equations_serial(const LieAlgebroid& algebroid,
                                                      std::span<const Vector> samples, double tol) {
  require_samples(algebroid, samples);
  StructureResiduals worst;
  bool finite = true;
  for (const auto& x : samples) {
    const StructureResiduals r = structure_residuals(algebroid, x);
    finite = finite && std::isfinite(r.anchor) && std::isfinite(r.jacobi) && std::isfinite(r.antisymmetry);
    worst.anchor = std::max(worst.anchor, r.anchor);
    worst.jacobi = std::max(worst.jacobi, r.jacobi);
    worst.antisymmetry = std::max(worst.antisymmetry, r.antisymmetry);
  }
  return finish_report(worst, finite, samples.size(), tol);
}

StructureCheckReport check_structure_equations(const LieAlgebroid& algebroid, std::span<const Vector> samples,
                                               double tol) {
  require_samples(algebroid, samples);
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
  double anchor = 0.0, jacobi = 0.0, antisym = 0.0;
  int finite = 1;
  ParallelErrors errors;
#pragma omp parallel for schedule(static) reduction(max : anchor, jacobi, antisym) reduction(min : finite)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      const StructureResiduals r = structure_residuals(algebroid, samples[k]);
      if (!(std::isfinite(r.anchor) && std::isfinite(r.jacobi) && std::isfinite(r.antisymmetry))) finite = 0;
      anchor = std::max(anchor, r.anchor);
      jacobi = std::max(jacobi, r.jacobi);
      antisym = std::max(antisym, r.antisymmetry);
    } catch (...) {
      errors.capture(k);
    }
  }
  errors.rethrow();
  return finish_report({anchor, jacobi, antisym}, finite != 0, samples.size(), tol);
}

std::pair<Vector, Vector> PhaseFunction::gradient(const DualCoordinates& z, double h) const {
  std::pair<Vector, Vector> g;
  if (gradient_) {
    g = gradient_(z.q, z.p);
  } else {
    g.first = geomech::gradient([&](const Vector& q) { return value_(q, z.p); }, z.q, h);
    g.second = geomech::gradient([&](const Vector& p) { return value_(z.q, p); }, z.p, h);
  }
  if (!g.first.allFinite() || !g.second.allFinite()) throw NumericalError("non-finite gradient of phase function");
  return g;
}

void require_dual_point(const LieAlgebroid& algebroid, const DualCoordinates& z) {
  algebroid.require_point(z.q);
  require_dim(z.p.size(), algebroid.fiber_rank(), "dual fiber coordinates");
}

double dual_poisson(const LieAlgebroid& algebroid, const PhaseFunction& f, const PhaseFunction& g,
                    const DualCoordinates& z) {
  require_dual_point(algebroid, z);
  const auto [fq, fp] = f.gradient(z, algebroid.fd_step());
  const auto [gq, gp] = g.gradient(z, algebroid.fd_step());
  const Matrix rho = algebroid.anchor(z.q);
  const StructureTensor c = algebroid.structure(z.q);
  double value = fq.dot(rho * gp) - gq.dot(rho * fp);
  value -= z.p.dot(c.contract(fp, gp));
  if (!std::isfinite(value)) throw NumericalError("dual_poisson: non-finite value");
  return value;
}

}  // namespace geomech

#include "geomech/prolongation.hpp"

#include <cmath>

namespace geomech {

DualCoordinates split_dual(const LieAlgebroid& algebroid, const Vector& qp) {
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  require_dim(qp.size(), n + r, "dual bundle point");
  return {qp.head(n), qp.tail(r)};
}

Vector join_dual(const DualCoordinates& z) {
  Vector qp(z.q.size() + z.p.size());
  qp << z.q, z.p;
  return qp;
}

ProlongationPoint::ProlongationPoint(const LieAlgebroid& algebroid, DualCoordinates base, Vector fiber,
                                     Vector tangent, double tol)
    : base_(std::move(base)), fiber_(std::move(fiber)), tangent_(std::move(tangent)) {
  require_dual_point(algebroid, base_);
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  require_dim(fiber_.size(), r, "prolongation fiber component");
  require_dim(tangent_.size(), n + r, "prolongation tangent component");
  const Vector expected = algebroid.anchor(base_.q) * fiber_;
  residual_ = n == 0 ? 0.0 : (tangent_.head(n) - expected).cwiseAbs().maxCoeff();
  if (!(residual_ <= tol)) throw DomainError("prolongation point violates ρ(b) = Tτ(v)");
}

ProlongationPoint ProlongationPoint::compatible(const LieAlgebroid& algebroid, DualCoordinates base, Vector fiber,
                                                Vector vertical) {
  require_dual_point(algebroid, base);
  require_dim(vertical.size(), algebroid.fiber_rank(), "vertical component");
  require_dim(fiber.size(), algebroid.fiber_rank(), "prolongation fiber component");
  Vector tangent(algebroid.base_dim() + algebroid.fiber_rank());
  tangent << algebroid.anchor(base.q) * fiber, vertical;
  return ProlongationPoint(algebroid, std::move(base), std::move(fiber), std::move(tangent));
}

Vector ProlongationPoint::frame_coordinates() const {
  const auto r = fiber_.size();
  Vector c(2 * r);
  c << fiber_, tangent_.tail(r);
  return c;
}

ProlongationBasis prolongation_frame(const LieAlgebroid& algebroid, const DualCoordinates& z) {
  require_dual_point(algebroid, z);
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  const Matrix rho = algebroid.anchor(z.q);
  ProlongationBasis basis;
  for (int a = 0; a < r; ++a) {
    Vector x = Vector::Zero(r + n + r);
    x[a] = 1.0;
    x.segment(r, n) = rho.col(a);
    basis.x_tilde.push_back(std::move(x));
    Vector v = Vector::Zero(r + n + r);
    v[r + n + a] = 1.0;
    basis.v_tilde.push_back(std::move(v));
  }
  return basis;
}

Vector liouville(const LieAlgebroid& algebroid, const DualCoordinates& z) {
  require_dual_point(algebroid, z);
  const int r = algebroid.fiber_rank();
  Vector theta = Vector::Zero(2 * r);
  theta.head(r) = z.p;
  return theta;
}

double liouville_pairing(const LieAlgebroid& algebroid, const ProlongationPoint& point) {
  return liouville(algebroid, point.pi1()).dot(point.frame_coordinates());
}

SymplecticSectionData canonical_two_form(const LieAlgebroid& algebroid, const DualCoordinates& z) {
  require_dual_point(algebroid, z);
  const int r = algebroid.fiber_rank();
  const StructureTensor c = algebroid.structure(z.q);
  Matrix omega = Matrix::Zero(2 * r, 2 * r);
  omega.topRightCorner(r, r) = Matrix::Identity(r, r);
  omega.bottomLeftCorner(r, r) = -Matrix::Identity(r, r);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      double w = 0.0;
      for (int k = 0; k < r; ++k) w += z.p[k] * 0.5 * (c(k, i, j) - c(k, j, i));
      omega(i, j) = w;
      omega(j, i) = -w;
    }
  }
  return {liouville(algebroid, z), omega};
}

Vector frame_differential(const LieAlgebroid& algebroid, const PhaseFunction& h, const DualCoordinates& z) {
  require_dual_point(algebroid, z);
  const auto [hq, hp] = h.gradient(z, algebroid.fd_step());
  const int r = algebroid.fiber_rank();
  Vector dh(2 * r);
  dh << algebroid.anchor(z.q).transpose() * hq, hp;
  return dh;
}

Vector hamiltonian_section(const LieAlgebroid& algebroid, const PhaseFunction& h, const DualCoordinates& z) {
  require_dual_point(algebroid, z);
  const auto [hq, hp] = h.gradient(z, algebroid.fd_step());
  const int r = algebroid.fiber_rank();
  const Matrix rho = algebroid.anchor(z.q);
  const StructureTensor c = algebroid.structure(z.q);
  Vector sigma(2 * r);
  sigma.head(r) = hp;
  for (int i = 0; i < r; ++i) {
    double v = rho.col(i).dot(hq);
    for (int k = 0; k < r; ++k)
      for (int j = 0; j < r; ++j) v += z.p[k] * c(k, i, j) * hp[j];
    sigma[r + i] = -v;
  }
  return sigma;
}

Vector anchor_vector_field(const LieAlgebroid& algebroid, const PhaseFunction& h, const DualCoordinates& z) {
  const Vector sigma = hamiltonian_section(algebroid, h, z);
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  Vector xh(n + r);
  xh << algebroid.anchor(z.q) * sigma.head(r), sigma.tail(r);
  if (!xh.allFinite()) throw NumericalError("non-finite Hamiltonian vector field");
  return xh;
}

double prolongation_bracket(const LieAlgebroid& algebroid, const PhaseFunction& f, const PhaseFunction& g,
                            const DualCoordinates& z) {
  const Matrix omega = canonical_two_form(algebroid, z).omega0;
  return hamiltonian_section(algebroid, f, z).dot(omega * hamiltonian_section(algebroid, g, z));
}

LieAlgebroid prolongation_algebroid(const LieAlgebroid& algebroid) {
  const int n = algebroid.base_dim();
  const int r = algebroid.fiber_rank();
  auto anchor = [algebroid, n, r](const Vector& qp) {
    Matrix rho = Matrix::Zero(n + r, 2 * r);
    rho.topLeftCorner(n, r) = algebroid.anchor(qp.head(n));
    rho.bottomRightCorner(r, r) = Matrix::Identity(r, r);
    return rho;
  };
  auto structure = [algebroid, n, r](const Vector& qp) {
    const StructureTensor c = algebroid.structure(qp.head(n));
    StructureTensor big(2 * r);
    for (int g = 0; g < r; ++g)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) big(g, a, b) = c(g, a, b);
    return big;
  };
  auto patch = [algebroid, n](const Vector& qp) { return algebroid.contains(qp.head(n)); };
  return LieAlgebroid(n + r, 2 * r, anchor, structure, "prolongation(" + algebroid.name() + ")", patch)
      .with_fd_step(algebroid.fd_step());
}

AlgebroidForm omega0_form(const LieAlgebroid& algebroid) {
  const int r = algebroid.fiber_rank();
  return AlgebroidForm(2, 2 * r, [algebroid](const Vector& qp) {
    return FormTensor::from_matrix(canonical_two_form(algebroid, split_dual(algebroid, qp)).omega0);
  });
}

}  // namespace geomech

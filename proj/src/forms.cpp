#include "geomech/forms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace geomech {

namespace {

std::size_t ipow(int base, int exp) {
  std::size_t out = 1;
  for (int i = 0; i < exp; ++i) out *= static_cast<std::size_t>(base);
  return out;
}

// Advance a base-`rank` odometer; false after the last tuple.
bool next_tuple(std::vector<int>& idx, int rank) {
  for (int k = static_cast<int>(idx.size()) - 1; k >= 0; --k) {
    if (++idx[k] < rank) return true;
    idx[k] = 0;
  }
  return false;
}

int permutation_sign(std::span<const int> perm) {
  int inversions = 0;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

FormTensor::FormTensor(int degree, int rank) : degree_(degree), rank_(rank) {
  if (degree < 0 || rank < 1) throw DimensionError("FormTensor: invalid degree/rank");
  if (degree > rank) throw DimensionError("form degree exceeds fiber rank");
  data_.assign(ipow(rank, degree), 0.0);
}

FormTensor FormTensor::scalar(double value) {
  FormTensor t(0, 1);
  t.data_[0] = value;
  return t;
}

FormTensor FormTensor::from_covector(const Vector& components) {
  FormTensor t(1, static_cast<int>(components.size()));
  for (Eigen::Index a = 0; a < components.size(); ++a) t.data_[a] = components[a];
  return t;
}

FormTensor FormTensor::from_matrix(const Matrix& components) {
  require_dim(components.cols(), components.rows(), "two-form matrix");
  const int r = static_cast<int>(components.rows());
  FormTensor t(2, r);
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) t.data_[static_cast<std::size_t>(a) * r + b] = components(a, b);
  return t;
}

std::size_t FormTensor::offset(std::span<const int> indices) const {
  require_dim(static_cast<long>(indices.size()), degree_, "form index count");
  std::size_t off = 0;
  for (int i : indices) off = off * rank_ + static_cast<std::size_t>(i);
  return off;
}

double FormTensor::evaluate(std::span<const Vector> vectors) const {
  require_dim(static_cast<long>(vectors.size()), degree_, "form arguments");
  for (const auto& v : vectors) require_dim(v.size(), rank_, "form argument length");
  if (degree_ == 0) return data_[0];
  std::vector<int> idx(degree_, 0);
  double sum = 0.0;
  std::size_t off = 0;
  do {
    double term = data_[off++];
    if (term == 0.0) continue;
    for (int k = 0; k < degree_; ++k) term *= vectors[k][idx[k]];
    sum += term;
  } while (next_tuple(idx, rank_));
  return sum;
}

FormTensor FormTensor::interior(const Vector& v) const {
  if (degree_ == 0) throw DimensionError("interior product of a 0-form");
  require_dim(v.size(), rank_, "interior product vector");
  FormTensor out(degree_ - 1, rank_);
  const std::size_t stride = out.data_.size();
  for (int a = 0; a < rank_; ++a)
    for (std::size_t k = 0; k < stride; ++k) out.data_[k] += v[a] * data_[a * stride + k];
  return out;
}

double FormTensor::antisymmetry_residual() const {
  if (degree_ < 2) return 0.0;
  std::vector<int> idx(degree_, 0);
  double worst = 0.0;
  do {
    for (int k = 0; k + 1 < degree_; ++k) {
      std::vector<int> swapped = idx;
      std::swap(swapped[k], swapped[k + 1]);
      worst = std::max(worst, std::abs(at(idx) + at(swapped)));
    }
  } while (next_tuple(idx, rank_));
  return worst;
}

double FormTensor::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

Matrix FormTensor::as_matrix() const {
  if (degree_ != 2) throw DimensionError("as_matrix needs a 2-form");
  Matrix m(rank_, rank_);
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b) m(a, b) = data_[static_cast<std::size_t>(a) * rank_ + b];
  return m;
}

AlgebroidForm::AlgebroidForm(int degree, int rank, Field field)
    : degree_(degree), rank_(rank), field_(std::move(field)) {
  if (degree < 0 || degree > rank) throw DimensionError("form degree exceeds fiber rank");
}

AlgebroidForm AlgebroidForm::function(int rank, std::function<double(const Vector&)> f) {
  return AlgebroidForm(0, rank, [f = std::move(f)](const Vector& x) { return FormTensor::scalar(f(x)); });
}

FormTensor AlgebroidForm::operator()(const Vector& x) const {
  FormTensor t = field_(x);
  require_dim(t.degree(), degree_, "form field degree");
  if (degree_ > 0) require_dim(t.rank(), rank_, "form field rank");
  return t;
}

double differential(const LieAlgebroid& algebroid, const AlgebroidForm& mu,
                    std::span<const AlgebroidSection> sections, const Vector& x) {
  const int k = mu.degree();
  const int r = algebroid.fiber_rank();
  if (k + 1 > r) throw DimensionError("differential: resulting degree exceeds fiber rank");
  require_dim(mu.rank(), r, "differential: form rank");
  require_dim(static_cast<long>(sections.size()), k + 1, "differential: number of sections");
  algebroid.require_point(x);

  const Matrix rho = algebroid.anchor(x);
  std::vector<Vector> at_x;
  at_x.reserve(sections.size());
  for (const auto& s : sections) {
    require_dim(s.rank(), r, "differential: section rank");
    at_x.push_back(s(x));
  }

  double total = 0.0;
  for (int i = 0; i <= k; ++i) {
    auto reduced = [&](const Vector& y) {
      std::vector<Vector> args;
      args.reserve(k);
      for (int j = 0; j <= k; ++j)
        if (j != i) args.push_back(sections[j](y));
      return mu(y).evaluate(args);
    };
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    total += sign * directional_derivative(reduced, x, rho * at_x[i], algebroid.fd_step());
  }
  if (k >= 1) {
    const FormTensor mu_x = mu(x);
    for (int i = 0; i <= k; ++i) {
      for (int j = i + 1; j <= k; ++j) {
        std::vector<Vector> args;
        args.reserve(k);
        args.push_back(bracket(algebroid, sections[i], sections[j], x));
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) args.push_back(at_x[l]);
        const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
        total += sign * mu_x.evaluate(args);
      }
    }
  }
  return total;
}

AlgebroidForm exterior_derivative(const LieAlgebroid& algebroid, const AlgebroidForm& mu) {
  const int k = mu.degree() + 1;
  const int r = algebroid.fiber_rank();
  if (k > r) throw DimensionError("exterior_derivative: resulting degree exceeds fiber rank");
  std::vector<AlgebroidSection> frame;
  for (int a = 0; a < r; ++a) frame.push_back(AlgebroidSection::basis(r, a));

  return AlgebroidForm(k, r, [algebroid, mu, frame, k, r](const Vector& x) {
    FormTensor out(k, r);
    // Evaluate on increasing index tuples, then fill every permutation with its sign.
    std::vector<int> combo(k);
    std::iota(combo.begin(), combo.end(), 0);
    while (true) {
      std::vector<AlgebroidSection> args;
      for (int a : combo) args.push_back(frame[a]);
      const double value = differential(algebroid, mu, args, x);
      std::vector<int> perm(k);
      std::iota(perm.begin(), perm.end(), 0);
      do {
        std::vector<int> idx(k);
        for (int m = 0; m < k; ++m) idx[m] = combo[perm[m]];
        out.at(idx) = permutation_sign(perm) * value;
      } while (std::next_permutation(perm.begin(), perm.end()));

      int pos = k - 1;
      while (pos >= 0 && combo[pos] == r - k + pos) --pos;
      if (pos < 0) break;
      ++combo[pos];
      for (int m = pos + 1; m < k; ++m) combo[m] = combo[m - 1] + 1;
    }
    return out;
  });
}

AlgebroidForm interior_product(const AlgebroidSection& s, const AlgebroidForm& mu) {
  if (mu.degree() == 0) throw DimensionError("interior product of a 0-form");
  require_dim(s.rank(), mu.rank(), "interior product section rank");
  return AlgebroidForm(mu.degree() - 1, mu.rank(), [s, mu](const Vector& x) { return mu(x).interior(s(x)); });
}

FormTensor lie_derivative(const LieAlgebroid& algebroid, const AlgebroidSection& s, const AlgebroidForm& mu,
                          const Vector& x) {
  require_dim(s.rank(), algebroid.fiber_rank(), "lie_derivative: section rank");
  if (mu.degree() == 0) {
    const double v = anchor_derivative(
        algebroid, s, [&](const Vector& y) { return mu(y).data()[0]; }, x);
    return FormTensor::scalar(v);
  }
  // A top-degree form has d^E μ = 0.
  FormTensor out = mu.degree() == algebroid.fiber_rank()
                       ? FormTensor(mu.degree(), mu.rank())
                       : exterior_derivative(algebroid, mu)(x).interior(s(x));
  const FormTensor second = exterior_derivative(algebroid, interior_product(s, mu))(x);
  for (std::size_t k = 0; k < out.size(); ++k) out.data()[k] += second.data()[k];
  return out;
}

}  // namespace geomech

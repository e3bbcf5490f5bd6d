#pragma once

// Differential forms on a Lie algebroid: sections of ∧^k E*, their
// algebroid differential d^E, interior products, and Lie derivatives.
//
// Components use the full-contraction convention
//   μ(X_1, ..., X_k) = μ_{a_1...a_k} X_1^{a_1} ... X_k^{a_k},
// so μ_{a_1...a_k} = μ(e_{a_1}, ..., e_{a_k}).

#include "geomech/algebroid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace geomech {

/// Dense rank^degree array of form components at a single point.
class FormTensor {
 public:
  FormTensor() = default;
  FormTensor(int degree, int rank);

  static FormTensor scalar(double value);
  static FormTensor from_covector(const Vector& components);
  /// Matrix entries M(a,b) become μ_ab. The caller supplies an antisymmetric matrix.
  static FormTensor from_matrix(const Matrix& components);

  int degree() const { return degree_; }
  int rank() const { return rank_; }
  std::size_t size() const { return data_.size(); }

  double& at(std::span<const int> indices) { return data_[offset(indices)]; }
  double at(std::span<const int> indices) const { return data_[offset(indices)]; }
  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }

  /// μ(v_1, ..., v_k) for fiber vectors v_i.
  double evaluate(std::span<const Vector> vectors) const;
  /// Contract the first slot with v, giving a (degree−1)-form.
  FormTensor interior(const Vector& v) const;
  /// max |μ + μ∘τ| over transpositions τ of adjacent slots.
  double antisymmetry_residual() const;
  double max_abs() const;
  Matrix as_matrix() const;

 private:
  std::size_t offset(std::span<const int> indices) const;
  int degree_ = 0;
  int rank_ = 0;
  std::vector<double> data_;
};

/// A k-form field x ↦ μ(x).
class AlgebroidForm {
 public:
  using Field = std::function<FormTensor(const Vector&)>;

  AlgebroidForm(int degree, int rank, Field field);
  static AlgebroidForm function(int rank, std::function<double(const Vector&)> f);

  int degree() const { return degree_; }
  int rank() const { return rank_; }
  FormTensor operator()(const Vector& x) const;

 private:
  int degree_;
  int rank_;
  Field field_;
};

/// (d^E μ)(X_0..X_k) = Σ_i (−1)^i ρ(X_i) μ(..X̂_i..) + Σ_{i<j} (−1)^{i+j} μ(⟦X_i,X_j⟧, ..X̂_i..X̂_j..).
double differential(const LieAlgebroid& algebroid, const AlgebroidForm& mu,
                    std::span<const AlgebroidSection> sections, const Vector& x);

/// d^E μ as a form field; components are evaluated on the constant frame at each point.
AlgebroidForm exterior_derivative(const LieAlgebroid& algebroid, const AlgebroidForm& mu);

/// i_s μ as a form field.
AlgebroidForm interior_product(const AlgebroidSection& s, const AlgebroidForm& mu);

/// ℒ_s μ = i_s d^E μ + d^E i_s μ, evaluated at x.
FormTensor lie_derivative(const LieAlgebroid& algebroid, const AlgebroidSection& s, const AlgebroidForm& mu,
                          const Vector& x);

}  // namespace geomech

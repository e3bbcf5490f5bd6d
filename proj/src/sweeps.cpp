#include "geomech/sweeps.hpp"
#include "geomech/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace geomech {

std::vector<UncertaintySample> make_uncertainty_samples(Rng& rng, std::size_t count, std::span<const int> dims) {
  if (dims.empty()) throw std::invalid_argument("make_uncertainty_samples: no dimensions");
  std::vector<UncertaintySample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int n = dims[k % dims.size()];
    Observable a(random_hermitian(rng, n));
    Observable b(random_hermitian(rng, n));
    out.push_back({std::move(a), std::move(b), random_state(rng, n)});
  }
  return out;
}

std::vector<EquivalenceInstance> make_equivalence_instances(Rng& rng, std::size_t count, int min_dim, int max_dim) {
  std::uniform_int_distribution<int> dim(min_dim, max_dim);
  std::vector<EquivalenceInstance> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int n = dim(rng);
    Observable h(random_hermitian(rng, n));
    Observable a(random_hermitian(rng, n));
    out.push_back({std::move(h), std::move(a), random_state(rng, n)});
  }
  return out;
}

std::vector<CriticalitySample> make_criticality_samples(Rng& rng, std::size_t count, int min_dim, int max_dim) {
  std::uniform_int_distribution<int> dim(min_dim, max_dim);
  std::vector<CriticalitySample> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const int n = dim(rng);
    Observable a(random_hermitian(rng, n));
    out.push_back({std::move(a), random_state(rng, n)});
  }
  return out;
}

UncertaintyReport uncertainty_sweep_serial(std::span<const UncertaintySample> samples, double slack_tol) {
  std::vector<UncertaintyEntry> entries;
  entries.reserve(samples.size());
  for (const auto& s : samples) entries.push_back(check_uncertainty(s.a, s.b, s.psi));
  return summarize_uncertainty(std::move(entries), slack_tol);
}

UncertaintyReport uncertainty_sweep(std::span<const UncertaintySample> samples, double slack_tol) {
  std::vector<UncertaintyEntry> entries(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
  ParallelErrors errors;
#pragma omp parallel for schedule(dynamic, 64)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      entries[k] = check_uncertainty(samples[k].a, samples[k].b, samples[k].psi);
    } catch (...) {
      errors.capture(k);
    }
  }
  errors.rethrow();
  return summarize_uncertainty(std::move(entries), slack_tol);
}

namespace {

EquivalenceSweepResult finish(std::vector<double> deviations, double tol) {
  EquivalenceSweepResult r;
  r.tolerance = tol;
  for (double d : deviations) r.worst = std::max(r.worst, d);
  r.max_deviation = std::move(deviations);
  r.pass = r.worst <= tol;
  return r;
}

}  // namespace

EquivalenceSweepResult equivalence_sweep_serial(std::span<const EquivalenceInstance> instances,
                                                std::span<const double> grid, double hbar, double tol) {
  std::vector<double> dev;
  dev.reserve(instances.size());
  for (const auto& inst : instances) dev.push_back(check_equivalence(inst.h, inst.a, inst.psi0, grid, hbar, tol).max_deviation);
  return finish(std::move(dev), tol);
}

EquivalenceSweepResult equivalence_sweep(std::span<const EquivalenceInstance> instances,
                                         std::span<const double> grid, double hbar, double tol) {
  if (grid.empty()) throw std::invalid_argument("equivalence_sweep: empty time grid");
  std::vector<double> dev(instances.size());
  const auto count = static_cast<std::ptrdiff_t>(instances.size());
  ParallelErrors errors;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      const auto& inst = instances[k];
      dev[k] = check_equivalence(inst.h, inst.a, inst.psi0, grid, hbar, tol).max_deviation;
    } catch (...) {
      errors.capture(k);
    }
  }
  errors.rethrow();
  return finish(std::move(dev), tol);
}

std::vector<double> criticality_sweep_serial(std::span<const CriticalitySample> samples) {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(projected_gradient_norm(s.a, s.psi));
  return out;
}

std::vector<double> criticality_sweep(std::span<const CriticalitySample> samples) {
  std::vector<double> out(samples.size());
  const auto count = static_cast<std::ptrdiff_t>(samples.size());
  ParallelErrors errors;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < count; ++k) {
    try {
      out[k] = projected_gradient_norm(samples[k].a, samples[k].psi);
    } catch (...) {
      errors.capture(k);
    }
  }
  errors.rethrow();
  return out;
}

std::vector<double> uniform_grid(double t_final, double step) {
  if (!(step > 0.0) || !(t_final >= 0.0)) throw std::invalid_argument("uniform_grid: need step > 0, t_final >= 0");
  const auto count = static_cast<long long>(std::floor(t_final / step * (1.0 + 1e-12)));
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (long long k = 0; k <= count; ++k) grid.push_back(static_cast<double>(k) * step);
  return grid;
}

}  // namespace geomech

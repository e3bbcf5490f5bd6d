#pragma once

// Ensemble sweeps over independent samples. Each kernel has an OpenMP
// version and a serial reference with identical results; the samples are
// generated up front so that results do not depend on thread scheduling.

#include "geomech/verification.hpp"

#include <span>
#include <vector>

namespace geomech {

struct UncertaintySample {
  Observable a;
  Observable b;
  QuantumState psi;
};

struct EquivalenceInstance {
  Observable h;
  Observable a;
  QuantumState psi0;
};

struct CriticalitySample {
  Observable a;
  QuantumState psi;
};

/// `count` samples with dimensions cycling through `dims`.
std::vector<UncertaintySample> make_uncertainty_samples(Rng& rng, std::size_t count, std::span<const int> dims);
std::vector<EquivalenceInstance> make_equivalence_instances(Rng& rng, std::size_t count, int min_dim, int max_dim);
/// Random observable with a random state (non-eigenvector with probability 1).
std::vector<CriticalitySample> make_criticality_samples(Rng& rng, std::size_t count, int min_dim, int max_dim);

UncertaintyReport uncertainty_sweep(std::span<const UncertaintySample> samples,
                                    double slack_tol = kUncertaintySlackTol);
UncertaintyReport uncertainty_sweep_serial(std::span<const UncertaintySample> samples,
                                           double slack_tol = kUncertaintySlackTol);

struct EquivalenceSweepResult {
  std::vector<double> max_deviation;  ///< per instance
  double worst = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

EquivalenceSweepResult equivalence_sweep(std::span<const EquivalenceInstance> instances,
                                         std::span<const double> grid, double hbar = 1.0,
                                         double tol = kEquivalenceTol);
EquivalenceSweepResult equivalence_sweep_serial(std::span<const EquivalenceInstance> instances,
                                                std::span<const double> grid, double hbar = 1.0,
                                                double tol = kEquivalenceTol);

std::vector<double> criticality_sweep(std::span<const CriticalitySample> samples);
std::vector<double> criticality_sweep_serial(std::span<const CriticalitySample> samples);

/// 0, step, 2·step, ... up to t_final inclusive (within rounding).
std::vector<double> uniform_grid(double t_final, double step);

}  // namespace geomech

// Serial reference vs OpenMP kernels for the ensemble sweeps.

#include "geomech/algebroid.hpp"
#include "geomech/sweeps.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

using namespace geomech;

namespace {

template <class Fn>
double seconds(Fn&& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-22s serial %8.4fs  openmp %8.4fs  speedup %5.2fx  %s\n", name, serial, parallel, serial / parallel,
              agree ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  Rng rng(7);

  {
    const int dims[] = {2, 3, 5};
    const auto samples = make_uncertainty_samples(rng, 10000, dims);
    UncertaintyReport s, p;
    const double ts = seconds([&] { s = uncertainty_sweep_serial(samples); });
    const double tp = seconds([&] { p = uncertainty_sweep(samples); });
    report("uncertainty (1e4)", ts, tp, s.min_slack == p.min_slack && s.max_rhs_gap == p.max_rhs_gap);
  }
  {
    const auto instances = make_equivalence_instances(rng, 40, 2, 6);
    const auto grid = uniform_grid(6.283185307179586, 0.01);
    EquivalenceSweepResult s, p;
    const double ts = seconds([&] { s = equivalence_sweep_serial(instances, grid); });
    const double tp = seconds([&] { p = equivalence_sweep(instances, grid); });
    report("equivalence (40 x 629)", ts, tp, s.max_deviation == p.max_deviation);
  }
  {
    const auto samples = make_criticality_samples(rng, 2000, 2, 8);
    std::vector<double> s, p;
    const double ts = seconds([&] { s = criticality_sweep_serial(samples); });
    const double tp = seconds([&] { p = criticality_sweep(samples); });
    report("criticality (2000)", ts, tp, s == p);
  }
  {
    const auto algebroid = LieAlgebroid::so3_action();
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    std::vector<Vector> points;
    for (int k = 0; k < 2000; ++k) points.push_back(Vector{{coord(rng), coord(rng), coord(rng)}});
    StructureCheckReport s, p;
    const double ts = seconds([&] { s = check_structure_equations_serial(algebroid, points, 1e-6); });
    const double tp = seconds([&] { p = check_structure_equations(algebroid, points, 1e-6); });
    report("structure (2000 pts)", ts, tp,
           s.anchor_residual == p.anchor_residual && s.jacobi_residual == p.jacobi_residual);
  }
  return 0;
}

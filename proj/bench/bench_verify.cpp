// Compares the serial and OpenMP batch backends on the two workloads that
// dominate wall time: the randomized property suites and independent
// trajectory sweeps. Also asserts that both backends produce the same bits.
#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "liebundle/batch.hpp"
#include "liebundle/dynamics.hpp"
#include "liebundle/verify.hpp"

using namespace liebundle;

namespace {

double time_s(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double property_workload(std::size_t, Rng& rng) {
  const Regime regime{"dense_s", false, false};
  const ParamsPtr p = make_params(regime.draw_a(6, rng));
  const SymElement s = draw_regime_sym(regime, p, rng);
  const SkewElement x = random_skew(p, rng);
  const SkewElement y = random_skew(p, rng);
  const SkewElement z = random_skew(p, rng);
  const Matrix sum = bracket(bracket(x, y, s), z, s).matrix() + bracket(bracket(y, z, s), x, s).matrix() +
                     bracket(bracket(z, x, s), y, s).matrix();
  return sum.max_abs() + skew_membership(*p, bracket(x, y, s).matrix()).entrywise_rel();
}

double sweep_workload(std::size_t, Rng& rng) {
  std::array<double, 3> a{};
  std::array<double, 4> s{}, w{};
  for (auto& v : a) v = rng.signed_magnitude(0.4, 1.6);
  for (auto& v : s) v = rng.signed_magnitude(0.4, 1.6);
  for (auto& v : w) v = rng.signed_magnitude(0.4, 1.6);
  const ParamsPtr p = make_params({a[0], a[1], a[2]});
  const HamiltonianSystem sys = rigid_body_system(p, s, w);
  const DualPoint rho0 = random_dual(p, rng);
  const Trajectory traj = integrate(sys, rho0, 1.0, StepControl::rk4(1e-2));
  double drift = 0.0;
  for (std::size_t m = 0; m < traj.monitor_names.size(); ++m) drift = std::max(drift, traj.max_relative_drift(m));
  return drift;
}

void run_case(const char* name, std::size_t count, double (*fn)(std::size_t, Rng&)) {
  batch_map(count / 4, 42, ExecPolicy::OpenMP, fn);  // warm up allocator and threads
  std::vector<double> serial_result, parallel_result;
  const double serial = time_s([&] { serial_result = batch_map(count, 42, ExecPolicy::Serial, fn); });
  const double parallel = time_s([&] { parallel_result = batch_map(count, 42, ExecPolicy::OpenMP, fn); });
  const bool identical = serial_result == parallel_result;
  std::printf("%-22s items=%-7zu serial=%7.3fs  openmp=%7.3fs  speedup=%5.2fx  bitwise_match=%s\n", name, count,
              serial, parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without openmp; both columns run serially\n");
#endif
  run_case("property batch (n=6)", 20000, property_workload);
  run_case("trajectory sweep", 512, sweep_workload);
  return 0;
}

#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "liebundle/rng.hpp"

namespace liebundle {

/// Execution policy for batch kernels. Both produce bit-identical results:
/// each item draws from its own derived generator and writes only its slot,
/// so scheduling cannot change the output.
enum class ExecPolicy { Serial, OpenMP };

/// Evaluates fn(index, rng) for every index and collects the results.
/// fn must be thread-safe over distinct indices; exceptions inside an item
/// surface as +inf in its slot.
template <class Fn>
std::vector<double> batch_map(std::size_t count, std::uint64_t seed, ExecPolicy policy, Fn&& fn) {
  std::vector<double> out(count, 0.0);
  auto item = [&](std::size_t i) {
    Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(i));
    try {
      out[i] = fn(i, rng);
    } catch (...) {
      out[i] = std::numeric_limits<double>::infinity();
    }
  };
  if (policy == ExecPolicy::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (long long i = 0; i < static_cast<long long>(count); ++i) item(static_cast<std::size_t>(i));
    return out;
#endif
  }
  for (std::size_t i = 0; i < count; ++i) item(i);
  return out;
}

/// Largest residual over the batch.
template <class Fn>
double batch_max(std::size_t count, std::uint64_t seed, ExecPolicy policy, Fn&& fn) {
  const std::vector<double> values = batch_map(count, seed, policy, fn);
  double worst = 0.0;
  for (double v : values) worst = v > worst ? v : worst;
  return worst;
}

}  // namespace liebundle

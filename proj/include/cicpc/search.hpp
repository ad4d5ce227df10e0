#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "cicpc/distributions.hpp"

namespace cicpc {

using Objective = std::function<double(std::span<const double>)>;

struct LocalSearchOptions {
  std::size_t local_steps = 400;
  double step_scale = 1.0;
  double decay = 0.98;
};

struct LocalResult {
  double value = 0;
  std::vector<double> theta;
  std::size_t evaluations = 0;
};

/// Maximizes `objective` from `start` by perturbing the softmax parameters.
/// Each step picks a factor block uniformly, then a row and a coordinate, and
/// proposes one of:
///   - a Gaussian nudge of one logit
///   - removing the coordinate from the row's support
///   - tying the coordinate to another logit in the row
///   - snapping the row to a point mass or to uniform on its significant support
///   - snapping every row of the block to its own mode
///   - copying the row over the whole block
/// Proposals at least as good as the current point are accepted. The nudge
/// scale shrinks by `decay` on each rejection and grows by 1.5x (capped at
/// 4 * step_scale) on each strict improvement. The best value is
/// nondecreasing in `local_steps` for a fixed seed.
LocalResult hill_climb(const SimplexLayout& layout, const Objective& objective,
                       std::vector<double> start, const LocalSearchOptions& options,
                       std::uint64_t move_seed);

/// Runs fn(0..n-1) on up to `threads` workers. Each index must write only its
/// own output slot, which keeps results independent of scheduling.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// CICPC_THREADS if set to a positive integer, otherwise 1.
std::size_t threads_from_env();

}  // namespace cicpc

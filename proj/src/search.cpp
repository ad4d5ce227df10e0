#include "cicpc/search.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "cicpc/random.hpp"

namespace cicpc {

namespace {

constexpr double kSupportFloor = 0.02;

void kill(std::span<double> row, std::size_t j) {
  const double hi = *std::max_element(row.begin(), row.end());
  row[j] = hi + kLogitFloor;
}

void point_mass(std::span<double> row, std::size_t j) {
  for (auto& v : row) v = kLogitFloor;
  row[j] = 0.0;
}

// Uniform over entries holding at least kSupportFloor of the mass.
void flatten(std::span<double> row) {
  const double hi = *std::max_element(row.begin(), row.end());
  double total = 0.0;
  for (double v : row) total += std::exp(v - hi);
  for (auto& v : row) v = std::exp(v - hi) / total >= kSupportFloor ? 0.0 : kLogitFloor;
}

}  // namespace

LocalResult hill_climb(const SimplexLayout& layout, const Objective& objective,
                       std::vector<double> start, const LocalSearchOptions& options,
                       std::uint64_t move_seed) {
  LocalResult res;
  res.theta = std::move(start);
  res.value = objective(res.theta);
  res.evaluations = 1;
  if (layout.dim == 0) return res;

  std::vector<std::vector<std::size_t>> rows_of_block(layout.blocks);
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    if (layout.row_size[r] > 1) rows_of_block[layout.row_block[r]].push_back(r);
  }
  std::erase_if(rows_of_block, [](const auto& rows) { return rows.empty(); });
  if (rows_of_block.empty()) return res;

  Rng rng(move_seed);
  double scale = options.step_scale;
  std::vector<double> cand;
  for (std::size_t step = 0; step < options.local_steps; ++step) {
    const auto& rows = rows_of_block[rng.below(rows_of_block.size())];
    const std::size_t r = rows[rng.below(rows.size())];
    const std::size_t n = layout.row_size[r];
    const std::size_t j = rng.below(n);
    cand = res.theta;
    std::span<double> row(cand.data() + layout.row_offset[r], n);
    const double kind = rng.uniform();
    if (kind <= 0.6) {
      row[j] += scale * rng.normal();
    } else if (kind <= 0.7) {
      kill(row, j);
    } else if (kind <= 0.8) {
      std::size_t k = rng.below(n - 1);
      if (k >= j) ++k;
      row[j] = row[k];
    } else if (kind <= 0.9) {
      point_mass(row, j);
    } else if (kind <= 0.95) {
      flatten(row);
    } else if (kind <= 0.975) {
      // every row of the block collapses onto its mode
      for (std::size_t other : rows) {
        std::span<double> o(cand.data() + layout.row_offset[other], n);
        point_mass(o, static_cast<std::size_t>(std::max_element(o.begin(), o.end()) - o.begin()));
      }
    } else {
      // Same row everywhere in the block: the factor stops depending on its
      // conditioning variables.
      for (std::size_t other : rows)
        std::copy(row.begin(), row.end(), cand.begin() + layout.row_offset[other]);
    }
    const double value = objective(cand);
    ++res.evaluations;
    // Ties are accepted so the search can drift across flat regions.
    if (value >= res.value) {
      if (value > res.value) scale = std::min(options.step_scale * 4, scale * 1.5);
      res.value = value;
      res.theta.swap(cand);
    } else {
      scale *= options.decay;
    }
  }
  return res;
}

void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max<std::size_t>(1, std::min(threads, n));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::size_t threads_from_env() {
  const char* s = std::getenv("CICPC_THREADS");
  if (!s) return 1;
  char* end = nullptr;
  const long v = std::strtol(s, &end, 10);
  return (end != s && v > 0) ? static_cast<std::size_t>(v) : 1;
}

}  // namespace cicpc

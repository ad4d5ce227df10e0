#pragma once

#include <cstdint>

#include "cicpc/region.hpp"

namespace cicpc {

/// Exhaustive grid over the witness pmf: every cell weight is k / levels.
struct GridSpec {
  std::size_t levels = 4;
  AuxCardinalities aux{2, 2, 2};
  std::uint64_t max_evaluations = 10'000'000;
};

/// Number of weak compositions of `levels` into `cells` parts, saturating at
/// UINT64_MAX.
std::uint64_t composition_count(std::size_t cells, std::size_t levels);

/// Raised when an oracle instance exceeds its size limits.
class OracleTooLarge : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Enumerates every grid witness, evaluates the theorem's polytope exactly and
/// Pareto-filters all dominant vertices. Binary channels and auxiliaries of
/// cardinality at most 2 only.
Frontier oracle_frontier(const ChannelLaw& law, Theorem theorem, const GridSpec& grid);

/// max over the cfg mu grid of support(oracle, mu) - support(optimizer, mu).
/// The optimizer runs with the grid's auxiliary cardinalities unless cfg sets
/// its own.
double compare_to_oracle(const ChannelLaw& law, Theorem theorem, const SearchConfig& cfg,
                         const GridSpec& grid);

}  // namespace cicpc

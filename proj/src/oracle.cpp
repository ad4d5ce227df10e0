#include "cicpc/oracle.hpp"

#include <limits>
#include <sstream>

namespace cicpc {

std::uint64_t composition_count(std::size_t cells, std::size_t levels) {
  // C(levels + cells - 1, cells - 1), built as a running product of exact
  // binomials.
  if (cells == 0) return levels == 0 ? 1 : 0;
  const std::uint64_t n = levels + cells - 1;
  const std::uint64_t k = std::min<std::uint64_t>(levels, cells - 1);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

// Advances `k` (summing to `total`) to the next weak composition in
// lexicographically decreasing order; returns false after the last one.
bool next_composition(std::vector<std::size_t>& k) {
  const std::size_t n = k.size();
  // Find the rightmost nonzero entry that is not in the last slot.
  std::size_t i = n - 1;
  while (i-- > 0) {
    if (k[i] > 0) {
      const std::size_t tail = k[n - 1];
      k[n - 1] = 0;
      --k[i];
      k[i + 1] = tail + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

Frontier oracle_frontier(const ChannelLaw& law, Theorem theorem, const GridSpec& grid) {
  const auto& a = law.alphabets();
  if (a.x1 > 2 || a.x2 > 2 || a.xr1 > 2 || a.y1 > 2 || a.y2 > 2)
    throw OracleTooLarge("oracle supports binary alphabets only");
  if (grid.aux.u > 2 || grid.aux.v > 2 || grid.aux.t > 2)
    throw OracleTooLarge("oracle supports auxiliary cardinalities of at most 2");
  if (grid.levels < 2) throw std::invalid_argument("grid needs at least 2 levels");

  const BoundProblem problem(law, theorem, grid.aux);
  const JointPmf shape = problem.witness_joint(std::vector<double>(problem.layout().dim, 0.0));
  const std::size_t cells = shape.size();
  const std::uint64_t count = composition_count(cells, grid.levels);
  if (count > grid.max_evaluations) {
    std::ostringstream os;
    os << "oracle grid has " << count << " points, limit is " << grid.max_evaluations;
    throw OracleTooLarge(os.str());
  }

  std::vector<std::size_t> k(cells, 0);
  k[0] = grid.levels;
  const double denom = static_cast<double>(grid.levels);
  std::vector<RatePoint> points;
  std::uint64_t index = 0;
  do {
    std::vector<double> w(cells);
    for (std::size_t i = 0; i < cells; ++i) w[i] = static_cast<double>(k[i]) / denom;
    const auto joint = attach_channel(JointPmf(shape.axes(), std::move(w)), law);
    for (auto p : pareto_vertices(problem.polytope_of(joint))) {
      p.witness_seed = index;
      points.push_back(std::move(p));
    }
    ++index;
    if (points.size() > 200'000) points = pareto_filter(std::move(points), 0.0);
  } while (next_composition(k));

  Frontier f;
  f.points = pareto_filter(std::move(points), 1e-12);
  f.meta.theorem = theorem;
  f.meta.aux = problem.aux();
  f.meta.source = "oracle";
  return f;
}

double compare_to_oracle(const ChannelLaw& law, Theorem theorem, const SearchConfig& cfg,
                         const GridSpec& grid) {
  const auto oracle = oracle_frontier(law, theorem, grid);
  SearchConfig run = cfg;
  if (!run.aux) run.aux = grid.aux;
  const auto optimized = compute_frontier(law, theorem, run);
  double worst = -std::numeric_limits<double>::infinity();
  for (double mu : optimized.meta.mu_grid)
    worst = std::max(worst, support(oracle, mu) - support(optimized, mu));
  return worst;
}

}  // namespace cicpc

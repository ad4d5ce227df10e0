#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cicpc/bounds.hpp"
#include "cicpc/problem.hpp"
#include "cicpc/search.hpp"

namespace cicpc {

struct RatePoint {
  double r1 = 0;
  double r2 = 0;
  double mu = 0;
  std::uint64_t witness_seed = 0;
  std::vector<double> theta;
  /// Halfspace labels tight at this vertex, joined by '+', or "none".
  std::string active;
};

struct SupportResult {
  double value = 0;
  RatePoint vertex;
};

/// Max of mu*R1 + (1-mu)*R2 over the polytope by vertex enumeration. Ties go
/// to the vertex with larger R1. Empty polytopes give -infinity.
SupportResult polytope_support(const RatePolytope& poly, double mu);

/// The two corners of the polytope's dominant face: (max R1, best R2 there)
/// and (best R1 at max R2, max R2). Empty for an empty polytope.
std::vector<RatePoint> pareto_vertices(const RatePolytope& poly);

struct SearchConfig {
  std::size_t mu_grid_size = 21;
  std::size_t restarts = 32;
  std::size_t local_steps = 400;
  double step_scale = 1.0;
  std::uint64_t seed = 0;
  /// Defaults to AuxCardinalities::defaults_for(channel alphabets).
  std::optional<AuxCardinalities> aux;
  double pareto_tol = 1e-9;
  bool hull = false;
  std::size_t threads = 1;

  AuxCardinalities resolve_aux(const AlphabetSpec& alphabets) const {
    return aux ? *aux : AuxCardinalities::defaults_for(alphabets);
  }
  /// Throws std::invalid_argument on zero counts.
  void check() const;
};

/// mu_i = i / (n - 1); always contains 0 and 1.
std::vector<double> mu_grid(std::size_t n);

struct FrontierMetadata {
  Theorem theorem = Theorem::T1;
  AuxCardinalities aux;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::size_t local_steps = 0;
  std::vector<double> mu_grid;
  bool hull = false;
  std::string source = "optimizer";
};

/// Pareto-maximal points sorted by r1 ascending, r2 strictly decreasing.
struct Frontier {
  std::vector<RatePoint> points;
  FrontierMetadata meta;
};

/// Best support vertex in direction mu over all restarts. Restart r starts
/// from the Dirichlet witness seeded by derive_seed(cfg.seed, r).
RatePoint maximize_direction(const ChannelLaw& law, Theorem theorem, double mu,
                             const SearchConfig& cfg);

Frontier compute_frontier(const ChannelLaw& law, Theorem theorem, const SearchConfig& cfg);

/// Keeps points not dominated by another within tol; near ties in r1 keep the
/// point with larger r2. Output sorted by r1 ascending.
std::vector<RatePoint> pareto_filter(std::vector<RatePoint> points, double tol);

/// Upper concave envelope of Pareto points sorted by r1 ascending.
std::vector<RatePoint> upper_hull(std::vector<RatePoint> points);

/// Support of the down-closure of the frontier points.
double support(const Frontier& frontier, double mu);

/// support(inner, mu) - support(outer, mu) on the union of both mu grids.
std::vector<std::pair<double, double>> support_difference(const Frontier& inner,
                                                          const Frontier& outer);

/// max over mu of support(inner, mu) - support(outer, mu). Non-positive
/// means the inner frontier lies inside the outer one along every direction.
double frontier_gap(const Frontier& inner, const Frontier& outer);

}  // namespace cicpc

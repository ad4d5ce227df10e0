#include "cicpc/region.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "cicpc/random.hpp"

namespace cicpc {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kTightTol = 1e-12;

std::string active_labels(const RatePolytope& poly, double r1, double r2) {
  std::string out;
  for (const auto& h : poly.halfspaces) {
    if (std::abs(h.c1 * r1 + h.c2 * r2 - h.rhs) <= kTightTol) {
      if (!out.empty()) out += '+';
      out += h.label;
    }
  }
  return out.empty() ? "none" : out;
}

struct Caps {
  double r1max, r2max, a, b, s;
};

Caps caps_of(const RatePolytope& poly) {
  const double a = std::max(0.0, poly.cap_r1());
  const double b = std::max(0.0, poly.cap_r2());
  const double s = std::max(0.0, poly.cap_sum());
  return {std::min(a, s), std::min(b, s), a, b, s};
}

RatePoint make_point(const RatePolytope& poly, double r1, double r2) {
  RatePoint p;
  p.r1 = r1;
  p.r2 = r2;
  p.active = active_labels(poly, r1, r2);
  return p;
}

}  // namespace

std::vector<RatePoint> pareto_vertices(const RatePolytope& poly) {
  if (poly.empty()) return {};
  const auto c = caps_of(poly);
  const double r2_at_r1max = std::max(0.0, std::min(c.b, c.s - c.r1max));
  const double r1_at_r2max = std::max(0.0, std::min(c.a, c.s - c.r2max));
  std::vector<RatePoint> out{make_point(poly, c.r1max, r2_at_r1max)};
  if (r1_at_r2max != c.r1max || c.r2max != r2_at_r1max)
    out.push_back(make_point(poly, r1_at_r2max, c.r2max));
  return out;
}

SupportResult polytope_support(const RatePolytope& poly, double mu) {
  SupportResult best;
  best.value = kNegInf;
  if (poly.empty()) return best;
  const auto c = caps_of(poly);
  const std::array<std::pair<double, double>, 5> vertices{{
      {c.r1max, std::max(0.0, std::min(c.b, c.s - c.r1max))},
      {std::max(0.0, std::min(c.a, c.s - c.r2max)), c.r2max},
      {c.r1max, 0.0},
      {0.0, c.r2max},
      {0.0, 0.0},
  }};
  double best_r1 = 0, best_r2 = 0;
  for (const auto& [r1, r2] : vertices) {
    const double v = mu * r1 + (1.0 - mu) * r2;
    if (v > best.value + kTightTol || (v >= best.value - kTightTol && r1 > best_r1)) {
      best.value = std::max(v, best.value);
      best_r1 = r1;
      best_r2 = r2;
    }
  }
  best.value = mu * best_r1 + (1.0 - mu) * best_r2;
  best.vertex = make_point(poly, best_r1, best_r2);
  best.vertex.mu = mu;
  return best;
}

void SearchConfig::check() const {
  if (mu_grid_size < 2) throw std::invalid_argument("mu grid needs at least the two endpoints");
  if (restarts == 0 || local_steps == 0)
    throw std::invalid_argument("restarts and local_steps must be at least 1");
  if (!(step_scale > 0)) throw std::invalid_argument("step scale must be positive");
}

std::vector<double> mu_grid(std::size_t n) {
  if (n < 2) throw std::invalid_argument("mu grid needs at least 2 points");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

namespace {

struct Candidate {
  double value = kNegInf;
  std::uint64_t witness_seed = 0;
  std::vector<double> theta;
};

// Odd outer-bound restarts start with V = T: rows of p(v|t,x2,xr1) become
// point masses at t. Random moves rarely find this coupling on their own.
void couple_v_to_t(const BoundProblem& problem, std::vector<double>& theta) {
  const auto& layout = problem.layout();
  const std::size_t card_v = problem.aux().v;
  std::size_t r = 0;
  while (r < layout.rows() && layout.row_block[r] != 2) ++r;
  const std::size_t per_t = problem.law().alphabets().x2 * problem.law().alphabets().xr1;
  for (std::size_t k = 0; r + k < layout.rows() && layout.row_block[r + k] == 2; ++k) {
    double* row = theta.data() + layout.row_offset[r + k];
    const std::size_t hot = (k / per_t) % card_v;
    for (std::size_t j = 0; j < card_v; ++j) row[j] = j == hot ? 0.0 : kLogitFloor;
  }
}

Candidate run_restart(const BoundProblem& problem, double mu, std::size_t restart,
                      const SearchConfig& cfg) {
  const std::uint64_t witness_seed = derive_seed(cfg.seed, restart);
  auto theta = sample_params(problem.layout(), witness_seed);
  if (problem.theorem() == Theorem::T1 && restart % 2 == 1) couple_v_to_t(problem, theta);
  const Objective objective = [&](std::span<const double> t) {
    return polytope_support(problem.polytope(t), mu).value;
  };
  LocalSearchOptions opts;
  opts.local_steps = cfg.local_steps;
  opts.step_scale = cfg.step_scale;
  auto res = hill_climb(problem.layout(), objective, std::move(theta), opts,
                        derive_seed(witness_seed, std::bit_cast<std::uint64_t>(mu)));
  return {res.value, witness_seed, std::move(res.theta)};
}

// Max by value, ties to the smaller witness seed.
const Candidate& best_of(const std::vector<Candidate>& cands, std::size_t begin, std::size_t end) {
  std::size_t best = begin;
  for (std::size_t i = begin + 1; i < end; ++i) {
    const auto& c = cands[i];
    const auto& b = cands[best];
    if (c.value > b.value || (c.value == b.value && c.witness_seed < b.witness_seed)) best = i;
  }
  return cands[best];
}

RatePoint support_point(const BoundProblem& problem, const Candidate& c, double mu) {
  auto s = polytope_support(problem.polytope(c.theta), mu);
  s.vertex.mu = mu;
  s.vertex.witness_seed = c.witness_seed;
  s.vertex.theta = c.theta;
  return s.vertex;
}

}  // namespace

RatePoint maximize_direction(const ChannelLaw& law, Theorem theorem, double mu,
                             const SearchConfig& cfg) {
  cfg.check();
  if (!(mu >= 0.0 && mu <= 1.0)) throw std::invalid_argument("mu must lie in [0, 1]");
  const BoundProblem problem(law, theorem, cfg.resolve_aux(law.alphabets()));
  std::vector<Candidate> cands(cfg.restarts);
  parallel_for(cfg.restarts, cfg.threads,
               [&](std::size_t r) { cands[r] = run_restart(problem, mu, r, cfg); });
  return support_point(problem, best_of(cands, 0, cands.size()), mu);
}

Frontier compute_frontier(const ChannelLaw& law, Theorem theorem, const SearchConfig& cfg) {
  cfg.check();
  const BoundProblem problem(law, theorem, cfg.resolve_aux(law.alphabets()));
  const auto mus = mu_grid(cfg.mu_grid_size);
  const std::size_t R = cfg.restarts;
  std::vector<Candidate> cands(mus.size() * R);
  parallel_for(cands.size(), cfg.threads, [&](std::size_t i) {
    cands[i] = run_restart(problem, mus[i / R], i % R, cfg);
  });

  std::vector<RatePoint> points;
  for (std::size_t m = 0; m < mus.size(); ++m) {
    const auto& best = best_of(cands, m * R, (m + 1) * R);
    if (best.value == kNegInf) continue;
    const auto poly = problem.polytope(best.theta);
    for (auto p : pareto_vertices(poly)) {
      p.mu = mus[m];
      p.witness_seed = best.witness_seed;
      p.theta = best.theta;
      points.push_back(std::move(p));
    }
  }
  Frontier f;
  f.points = pareto_filter(std::move(points), cfg.pareto_tol);
  if (cfg.hull) f.points = upper_hull(std::move(f.points));
  f.meta.theorem = theorem;
  f.meta.aux = problem.aux();
  f.meta.seed = cfg.seed;
  f.meta.restarts = cfg.restarts;
  f.meta.local_steps = cfg.local_steps;
  f.meta.mu_grid = mus;
  f.meta.hull = cfg.hull;
  return f;
}

std::vector<RatePoint> pareto_filter(std::vector<RatePoint> points, double tol) {
  std::stable_sort(points.begin(), points.end(), [](const RatePoint& x, const RatePoint& y) {
    if (x.r1 != y.r1) return x.r1 > y.r1;
    return x.r2 > y.r2;
  });
  std::vector<RatePoint> kept;
  double best_r2 = kNegInf;
  for (auto& p : points) {
    if (p.r2 > best_r2 + tol) {
      best_r2 = p.r2;
      kept.push_back(std::move(p));
    }
  }
  std::reverse(kept.begin(), kept.end());
  std::vector<RatePoint> merged;
  for (auto& p : kept) {
    if (!merged.empty() && p.r1 - merged.back().r1 <= tol) continue;
    merged.push_back(std::move(p));
  }
  return merged;
}

std::vector<RatePoint> upper_hull(std::vector<RatePoint> points) {
  std::vector<RatePoint> hull;
  for (auto& p : points) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const double cross = (b.r1 - a.r1) * (p.r2 - a.r2) - (b.r2 - a.r2) * (p.r1 - a.r1);
      if (cross < 0) break;
      hull.pop_back();
    }
    hull.push_back(std::move(p));
  }
  return hull;
}

double support(const Frontier& frontier, double mu) {
  double best = kNegInf;
  for (const auto& p : frontier.points) best = std::max(best, mu * p.r1 + (1.0 - mu) * p.r2);
  return best;
}

std::vector<std::pair<double, double>> support_difference(const Frontier& inner,
                                                          const Frontier& outer) {
  std::vector<double> mus = inner.meta.mu_grid;
  mus.insert(mus.end(), outer.meta.mu_grid.begin(), outer.meta.mu_grid.end());
  if (mus.empty()) mus = mu_grid(21);
  std::sort(mus.begin(), mus.end());
  mus.erase(std::unique(mus.begin(), mus.end(),
                        [](double x, double y) { return std::abs(x - y) <= 1e-12; }),
            mus.end());
  std::vector<std::pair<double, double>> out;
  out.reserve(mus.size());
  for (double mu : mus) {
    const double a = support(inner, mu);
    const double b = support(outer, mu);
    // two empty frontiers do not differ
    out.emplace_back(mu, (a == kNegInf && b == kNegInf) ? 0.0 : a - b);
  }
  return out;
}

double frontier_gap(const Frontier& inner, const Frontier& outer) {
  double gap = kNegInf;
  for (const auto& [mu, d] : support_difference(inner, outer)) gap = std::max(gap, d);
  return gap;
}

}  // namespace cicpc

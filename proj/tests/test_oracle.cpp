#include <doctest.h>

#include <limits>

#include "cicpc/fixtures.hpp"
#include "cicpc/oracle.hpp"

using namespace cicpc;

TEST_CASE("composition counts") {
  CHECK(composition_count(2, 4) == 5);
  CHECK(composition_count(32, 4) == 52360);
  CHECK(composition_count(1, 7) == 1);
  CHECK(composition_count(400, 400) == std::numeric_limits<std::uint64_t>::max());
}

TEST_CASE("noiseless channel, inner region") {
  GridSpec grid;
  grid.aux = {1, 1, 1};
  const auto f = oracle_frontier(fixtures::noiseless(), Theorem::T2, grid);
  CHECK(f.meta.source == "oracle");
  // max R1 sits at R2 = 0
  CHECK(f.points.back().r1 == doctest::Approx(1.0));
  CHECK(f.points.back().r2 == 0.0);
  // X1 can copy X2, which puts (0,1) on the grid as well
  CHECK(f.points.front().r1 == 0.0);
  CHECK(f.points.front().r2 == doctest::Approx(1.0));
  CHECK(support(f, 0.5) == doctest::Approx(0.5));
}

TEST_CASE("noiseless channel, outer region contains the unit square") {
  // quarters are enough for uniform (X1, X2) with V = X2
  GridSpec grid;
  grid.aux = {1, 2, 1};
  const auto f = oracle_frontier(fixtures::noiseless(), Theorem::T1, grid);
  CHECK(support(f, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("coarsest grid keeps the origin") {
  GridSpec grid;
  grid.levels = 2;
  grid.aux = {1, 1, 1};
  const auto f = oracle_frontier(fixtures::random_binary(3), Theorem::T2, grid);
  CHECK(support(f, 0.0) >= 0.0);
  CHECK(support(f, 1.0) >= 0.0);
}

TEST_CASE("refining the grid never loses support") {
  GridSpec coarse;
  coarse.aux = {1, 1, 1};
  GridSpec fine = coarse;
  fine.levels = 8;
  const auto law = fixtures::random_binary(9);
  const auto a = oracle_frontier(law, Theorem::T2, coarse);
  const auto b = oracle_frontier(law, Theorem::T2, fine);
  for (double mu : mu_grid(21)) CHECK(support(b, mu) >= support(a, mu) - 1e-12);
}

TEST_CASE("oracle is reproducible") {
  GridSpec grid;
  grid.aux = {1, 2, 1};
  const auto a = oracle_frontier(fixtures::degraded_xor(), Theorem::T2, grid);
  const auto b = oracle_frontier(fixtures::degraded_xor(), Theorem::T2, grid);
  REQUIRE(a.points.size() == b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].r1 == b.points[i].r1);
    CHECK(a.points[i].r2 == b.points[i].r2);
    CHECK(a.points[i].witness_seed == b.points[i].witness_seed);
  }
}

TEST_CASE("size limits") {
  GridSpec grid;
  grid.max_evaluations = 1000;
  CHECK_THROWS_AS(oracle_frontier(fixtures::noiseless(), Theorem::T2, grid), OracleTooLarge);
  GridSpec big_aux;
  big_aux.aux = {3, 1, 1};
  CHECK_THROWS_AS(oracle_frontier(fixtures::noiseless(), Theorem::T2, big_aux), OracleTooLarge);
  CHECK_THROWS_AS(oracle_frontier(fixtures::semideterministic(), Theorem::T2, GridSpec{}), OracleTooLarge);
}

TEST_CASE("optimizer is not beaten by the coarsest grid") {
  GridSpec grid;
  grid.levels = 2;
  grid.aux = {1, 1, 1};
  SearchConfig cfg;
  cfg.mu_grid_size = 5;
  cfg.restarts = 4;
  cfg.local_steps = 200;
  CHECK(compare_to_oracle(fixtures::degraded_xor(), Theorem::T2, cfg, grid) <= 1e-6);
}

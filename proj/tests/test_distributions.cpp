#include <doctest.h>

#include <cmath>

#include "cicpc/distributions.hpp"
#include "cicpc/fixtures.hpp"
#include "cicpc/random.hpp"

using namespace cicpc;
using enum VariableId;

namespace {

InnerFactorization sampled_inner(const ChannelLaw& law, AuxCardinalities cards, std::uint64_t seed) {
  return std::get<InnerFactorization>(sample_witness(WitnessKind::Inner, law.alphabets(), cards, seed));
}

OuterWitness sampled_outer(const ChannelLaw& law, AuxCardinalities cards, std::uint64_t seed) {
  return std::get<OuterWitness>(sample_witness(WitnessKind::Outer, law.alphabets(), cards, seed));
}

}  // namespace

TEST_CASE("default auxiliary cardinalities") {
  CHECK(AuxCardinalities::defaults_for({2, 2, 2, 2, 2}) == AuxCardinalities{4, 4, 4});
  CHECK(AuxCardinalities::defaults_for({1, 2, 1, 2, 2}) == AuxCardinalities{2, 2, 2});
}

TEST_CASE("uniform factors on the noiseless channel") {
  const auto law = fixtures::noiseless();
  const auto layout = inner_layout(law.alphabets(), 1, 1);
  const auto f = params_to_factorization(std::vector<double>(layout.dim, 0.0), law.alphabets(), 1, 1);
  const auto j = build_inner_joint(f, law);
  // U, V, X1, X2, Xr1, Y1, Y2
  for (std::size_t x1 = 0; x1 < 2; ++x1)
    for (std::size_t x2 = 0; x2 < 2; ++x2)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t y1 = 0; y1 < 2; ++y1)
          for (std::size_t y2 = 0; y2 < 2; ++y2)
            CHECK(j.at({0, 0, x1, x2, r, y1, y2}) == ((y1 == x1 && y2 == x2) ? 0.125 : 0.0));
}

TEST_CASE("factors are recoverable from the inner joint") {
  const auto law = fixtures::random_binary(2);
  const AuxCardinalities cards{3, 2, 1};
  const auto f = sampled_inner(law, cards, 8);
  const auto j = build_inner_joint(f, law);
  const auto pr = marginalize(j, {Xr1});
  for (std::size_t r = 0; r < 2; ++r) CHECK(std::abs(pr.at({r}) - f.f_xr1[r]) < 1e-12);

  const auto puvx = marginalize(j, {U, V, X1, X2, Xr1});
  const auto puvx2r = marginalize(j, {U, V, X2, Xr1});
  for (std::size_t u = 0; u < 3; ++u)
    for (std::size_t v = 0; v < 2; ++v)
      for (std::size_t x1 = 0; x1 < 2; ++x1)
        for (std::size_t x2 = 0; x2 < 2; ++x2)
          for (std::size_t r = 0; r < 2; ++r) {
            const double cond = puvx.at({u, v, x1, x2, r}) / puvx2r.at({u, v, x2, r});
            CHECK(std::abs(cond - f.f_x1[(((u * 2 + v) * 2 + x2) * 2 + r) * 2 + x1]) < 1e-12);
          }
}

TEST_CASE("built joints carry the channel law") {
  const auto law = fixtures::random_binary(3);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto j = build_outer_joint(sampled_outer(law, {1, 2, 3}, seed), law);
    const auto px = marginalize(j, {X1, X2, Xr1});
    const auto pxy = marginalize(j, {X1, X2, Xr1, Y1, Y2});
    for (std::size_t x1 = 0; x1 < 2; ++x1)
      for (std::size_t x2 = 0; x2 < 2; ++x2)
        for (std::size_t r = 0; r < 2; ++r)
          for (std::size_t y1 = 0; y1 < 2; ++y1)
            for (std::size_t y2 = 0; y2 < 2; ++y2)
              REQUIRE(std::abs(pxy.at({x1, x2, r, y1, y2}) / px.at({x1, x2, r}) -
                               law(x1, x2, r, y1, y2)) < 1e-12);
  }
}

TEST_CASE("Markov chains of built joints") {
  const auto law = fixtures::random_binary(4);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto inner = build_inner_joint(sampled_inner(law, {2, 2, 2}, seed), law);
    CHECK(verify_markov(inner, {U, V}, {X1, X2, Xr1}, {Y1, Y2}) < 1e-12);
    const auto outer = build_outer_joint(sampled_outer(law, {2, 2, 2}, seed), law);
    CHECK(verify_markov(outer, {V, T}, {X1, X2, Xr1, Y1}, {Y2}) < 1e-12);
    CHECK(verify_markov(outer, {V, T}, {X1, X2, Xr1}, {Y1, Y2}) < 1e-12);
  }
}

TEST_CASE("verify_markov examples") {
  JointPmf indep({{X1, 2}, {Y1, 2}, {Y2, 2}}, std::vector<double>(8, 0.125));
  CHECK(verify_markov(indep, {X1}, {Y1}, {Y2}) == 0.0);
  // Z = X, Y independent of both
  std::vector<double> w(8, 0.0);
  for (std::size_t x = 0; x < 2; ++x)
    for (std::size_t y = 0; y < 2; ++y) w[(x * 2 + y) * 2 + x] = 0.25;
  JointPmf copy({{X1, 2}, {Y1, 2}, {Y2, 2}}, w);
  CHECK(verify_markov(copy, {X1}, {Y1}, {Y2}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(verify_markov(copy, {X1}, {X1}, {Y2}), std::invalid_argument);
}

TEST_CASE("outer witness for the noiseless channel with V = X2") {
  const auto law = fixtures::noiseless();
  std::vector<double> w(2 * 8, 0.0);
  for (std::size_t x = 0; x < 8; ++x) {
    const std::size_t x2 = (x >> 1) & 1;
    w[x2 * 8 + x] = 0.125;
  }
  const JointPmf witness({{V, 2}, {T, 1}, {X1, 2}, {X2, 2}, {Xr1, 2}}, w);
  const auto j = build_outer_joint(OuterWitness{witness}, law);
  CHECK(conditional_mutual_information(j, {V}, {Y2}) == doctest::Approx(1.0));

  // point mass witness maps through a single channel column
  std::vector<double> pm(8, 0.0);
  pm[5] = 1.0;  // x1=1, x2=0, xr1=1
  const auto jp = build_outer_joint(
      OuterWitness{JointPmf({{V, 1}, {T, 1}, {X1, 2}, {X2, 2}, {Xr1, 2}}, pm)}, law);
  CHECK(jp.at({0, 0, 1, 0, 1, 1, 0}) == 1.0);
  CHECK_THROWS_AS(build_outer_joint(OuterWitness{JointPmf({{T, 1}, {V, 1}, {X1, 2}, {X2, 2}, {Xr1, 2}}, pm)}, law),
                  std::invalid_argument);
}

TEST_CASE("sampling is deterministic in the seed") {
  const auto a = fixtures::noiseless().alphabets();
  const auto layout = inner_layout(a, 2, 2);
  CHECK(sample_params(layout, 1) == sample_params(layout, 1));
  CHECK(sample_params(layout, 1) != sample_params(layout, 2));
  const auto f = std::get<InnerFactorization>(sample_witness(WitnessKind::Inner, a, {2, 2, 2}, 5));
  CHECK_NOTHROW(f.validate());
}

TEST_CASE("Dirichlet(1,1) mean") {
  Rng rng(2024);
  double sum = 0;
  std::array<double, 2> row{};
  for (int i = 0; i < 10000; ++i) {
    rng.dirichlet(row);
    sum += row[0];
  }
  CHECK(std::abs(sum / 10000 - 0.5) < 0.02);
}

TEST_CASE("softmax parameterization") {
  SimplexLayout layout;
  layout.add_block(2, 3);
  const auto uniform = params_to_rows(std::vector<double>(6, 0.0), layout);
  for (double p : uniform) CHECK(p == doctest::Approx(1.0 / 3));

  std::vector<double> theta(6, 0.0);
  theta[1] = 30.0;
  const auto rows = params_to_rows(theta, layout);
  CHECK(rows[1] > 1 - 1e-9);

  const auto sampled = params_to_rows(sample_params(layout, 3), layout);
  for (std::size_t r = 0; r < 2; ++r) {
    double s = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(sampled[r * 3 + k] > 0);
      s += sampled[r * 3 + k];
    }
    CHECK(std::abs(s - 1) < 1e-15);
  }
  CHECK_THROWS_AS(params_to_rows(std::vector<double>(5, 0.0), layout), std::invalid_argument);

  // rows -> params -> rows
  const auto back = params_to_rows(rows_to_params(sampled, layout), layout);
  for (std::size_t i = 0; i < 6; ++i) CHECK(std::abs(back[i] - sampled[i]) < 1e-15);
}

TEST_CASE("malformed factorizations are rejected") {
  auto f = sampled_inner(fixtures::noiseless(), {1, 1, 1}, 0);
  f.f_xr1 = {0.7, 0.7};
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
  f.f_xr1 = {0.5};
  CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}

#include "cicpc/fixtures.hpp"

#include "cicpc/random.hpp"

namespace cicpc::fixtures {

namespace {

constexpr AlphabetSpec kBinary{2, 2, 2, 2, 2};

template <class Fn>
ChannelLaw tabulate(AlphabetSpec a, Fn&& p) {
  std::vector<double> t(a.tensor_size());
  std::size_t k = 0;
  for (std::size_t x1 = 0; x1 < a.x1; ++x1)
    for (std::size_t x2 = 0; x2 < a.x2; ++x2)
      for (std::size_t xr1 = 0; xr1 < a.xr1; ++xr1)
        for (std::size_t y1 = 0; y1 < a.y1; ++y1)
          for (std::size_t y2 = 0; y2 < a.y2; ++y2) t[k++] = p(x1, x2, xr1, y1, y2);
  return ChannelLaw(a, std::move(t));
}

double flip(std::size_t y, std::size_t clean, double eps) { return y == clean ? 1.0 - eps : eps; }

}  // namespace

ChannelLaw noiseless() {
  return tabulate(kBinary, [](auto x1, auto x2, auto, auto y1, auto y2) {
    return (y1 == x1 && y2 == x2) ? 1.0 : 0.0;
  });
}

ChannelLaw degraded_xor() {
  return tabulate(kBinary, [](auto x1, auto x2, auto xr1, auto y1, auto y2) {
    if (y1 != (x1 ^ x2 ^ xr1)) return 0.0;
    return flip(y2, y1, 0.1);
  });
}

ChannelLaw semideterministic() {
  return tabulate(AlphabetSpec{2, 2, 2, 4, 2}, [](auto x1, auto x2, auto xr1, auto y1, auto y2) {
    if (y1 != 2 * (x1 ^ x2) + x2) return 0.0;
    return flip(y2, x2 ^ xr1, 0.1);
  });
}

ChannelLaw constant_y2() {
  return tabulate(kBinary, [](auto x1, auto, auto, auto y1, auto y2) {
    return (y1 == x1 && y2 == 0) ? 1.0 : 0.0;
  });
}

ChannelLaw noisy_y1(double eps) {
  return tabulate(kBinary, [eps](auto x1, auto x2, auto, auto y1, auto y2) {
    return y2 == x2 ? flip(y1, x1, eps) : 0.0;
  });
}

ChannelLaw random_binary(std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0x636861));
  std::vector<double> t(kBinary.tensor_size());
  for (std::size_t in = 0; in < kBinary.inputs(); ++in)
    rng.dirichlet(std::span<double>(t.data() + in * 4, 4));
  return ChannelLaw(kBinary, std::move(t));
}

ChannelLaw random_semideterministic(std::uint64_t seed, double dependence) {
  Rng rng(derive_seed(seed, 0x7364));
  std::array<std::size_t, 8> f{};
  // Redraw until Y1 actually depends on x1 for some (x2, xr1).
  for (;;) {
    for (auto& v : f) v = rng.below(2);
    bool depends = false;
    for (std::size_t rest = 0; rest < 4; ++rest) depends |= f[rest] != f[4 + rest];
    if (depends) break;
  }
  std::array<double, 2> base{};
  rng.dirichlet(base);
  std::vector<double> t(kBinary.tensor_size(), 0.0);
  for (std::size_t in = 0; in < 8; ++in) {
    std::array<double, 2> row{};
    rng.dirichlet(row);
    for (std::size_t y2 = 0; y2 < 2; ++y2)
      t[in * 4 + f[in] * 2 + y2] = (1.0 - dependence) * base[y2] + dependence * row[y2];
  }
  return ChannelLaw(kBinary, std::move(t));
}

}  // namespace cicpc::fixtures

#pragma once

#include <cstdint>

#include "cicpc/channel.hpp"

namespace cicpc::fixtures {

/// Binary everything; Y1 = X1 and Y2 = X2 deterministically.
ChannelLaw noiseless();

/// Binary everything; Y1 = X1 xor X2 xor Xr1, Y2 = Y1 flipped with probability 0.1.
ChannelLaw degraded_xor();

/// Binary inputs, 4-ary Y1 = 2*(x1 xor x2) + x2, binary Y2 = (x2 xor xr1)
/// flipped with probability 0.1.
ChannelLaw semideterministic();

/// Binary inputs, Y1 = X1 and Y2 is the constant 0.
ChannelLaw constant_y2();

/// Binary everything; Y1 = X1 through BSC(flip), Y2 = X2.
ChannelLaw noisy_y1(double flip);

/// Seeded random binary channel: every (y1,y2) slice is a Dirichlet(1) draw.
ChannelLaw random_binary(std::uint64_t seed);

/// Seeded semideterministic binary channel. Y1 is a random boolean function of
/// the inputs that depends on x1. Y2 has law
///   p(y2 | x) = (1 - dependence) * base(y2) + dependence * row_x(y2)
/// where base and row_x are Dirichlet(1) draws, so dependence = 0 makes Y2
/// independent of the inputs.
ChannelLaw random_semideterministic(std::uint64_t seed, double dependence);

}  // namespace cicpc::fixtures

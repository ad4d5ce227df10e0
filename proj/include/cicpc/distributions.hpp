#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "cicpc/channel.hpp"
#include "cicpc/info.hpp"

namespace cicpc {

/// Cardinalities of the auxiliary variables U, V, T.
struct AuxCardinalities {
  std::size_t u = 1;
  std::size_t v = 1;
  std::size_t t = 1;

  /// min(4, |X1||X2||Xr1|) for each auxiliary.
  static AuxCardinalities defaults_for(const AlphabetSpec& alphabets);
  bool operator==(const AuxCardinalities&) const = default;
};

/// p(xr1) p(u,x2|xr1) p(v|u,x2,xr1) p(x1|u,v,x2,xr1).
///
/// Row layouts (last index fastest):
///   f_xr1 [xr1]
///   f_ux2 [xr1][u][x2]
///   f_v   [u][x2][xr1][v]
///   f_x1  [u][v][x2][xr1][x1]
struct InnerFactorization {
  std::size_t card_u = 1, card_v = 1;
  std::size_t card_x1 = 1, card_x2 = 1, card_xr1 = 1;
  std::vector<double> f_xr1, f_ux2, f_v, f_x1;

  /// Throws std::invalid_argument if a row is not a pmf within 1e-12.
  void validate() const;
};

/// Joint pmf over (V, T, X1, X2, Xr1).
struct OuterWitness {
  JointPmf joint;
};

/// Rows of a product of simplices, grouped into factor blocks. Parameters
/// map to rows through exponential normalization.
struct SimplexLayout {
  std::vector<std::size_t> row_size;
  std::vector<std::size_t> row_offset;
  std::vector<std::size_t> row_block;
  std::size_t blocks = 0;
  std::size_t dim = 0;

  void add_block(std::size_t rows, std::size_t width);
  std::size_t rows() const { return row_size.size(); }
};

/// Layout of an InnerFactorization's free parameters, block per factor.
SimplexLayout inner_layout(const AlphabetSpec& alphabets, std::size_t card_u, std::size_t card_v);

/// Layout of an outer witness parameterized as
/// p(xr1) p(t,x2|xr1) p(v|t,x2,xr1) p(x1|t,v,x2,xr1).
SimplexLayout outer_layout(const AlphabetSpec& alphabets, std::size_t card_v, std::size_t card_t);

/// Softmax per row; theta = 0 gives uniform rows.
std::vector<double> params_to_rows(std::span<const double> theta, const SimplexLayout& layout);

InnerFactorization params_to_factorization(std::span<const double> theta,
                                           const AlphabetSpec& alphabets, std::size_t card_u,
                                           std::size_t card_v);

OuterWitness params_to_outer_witness(std::span<const double> theta, const AlphabetSpec& alphabets,
                                     std::size_t card_v, std::size_t card_t);

inline constexpr double kLogitFloor = -40.0;

/// Log-probability parameters whose softmax reproduces `rows`; zeros map to
/// kLogitFloor.
std::vector<double> rows_to_params(std::span<const double> rows, const SimplexLayout& layout);

/// One Dirichlet(1) draw per row, returned as parameters.
std::vector<double> sample_params(const SimplexLayout& layout, std::uint64_t seed);

enum class WitnessKind { Inner, Outer };

std::variant<InnerFactorization, OuterWitness> sample_witness(WitnessKind kind,
                                                              const AlphabetSpec& alphabets,
                                                              const AuxCardinalities& cards,
                                                              std::uint64_t seed);

/// Joint over (U, V, X1, X2, Xr1) from the four factors.
JointPmf factorization_joint(const InnerFactorization& factors);

/// Extends a pmf whose last three axes are (X1, X2, Xr1) by the channel,
/// appending axes Y1, Y2.
JointPmf attach_channel(const JointPmf& inputs, const ChannelLaw& law);

/// Joint over (U, V, X1, X2, Xr1, Y1, Y2).
JointPmf build_inner_joint(const InnerFactorization& factors, const ChannelLaw& law);

/// Joint over (V, T, X1, X2, Xr1, Y1, Y2).
JointPmf build_outer_joint(const OuterWitness& witness, const ChannelLaw& law);

/// Largest |p(right | mid, left) - p(right | mid)| over events whose
/// (mid, left) probability exceeds 1e-12. Zero means left -> mid -> right.
double verify_markov(const JointPmf& pmf, VarSet left, VarSet mid, VarSet right);

}  // namespace cicpc

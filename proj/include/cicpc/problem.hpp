#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cicpc/bounds.hpp"
#include "cicpc/channel.hpp"
#include "cicpc/distributions.hpp"

namespace cicpc {

/// t1: outer bound. t2: inner bound. t3: degraded capacity (inner formulas,
/// degraded channels only). t4: semideterministic capacity.
enum class Theorem { T1, T2, T3, T4 };

const char* to_string(Theorem theorem);
std::optional<Theorem> parse_theorem(std::string_view name);

/// A theorem's region on one channel, as a function of softmax parameters.
class BoundProblem {
 public:
  /// Throws ClassMismatch when t3 is asked of a non-degraded channel or t4 of
  /// a non-semideterministic one. t4 ignores aux.u (U is degenerate).
  BoundProblem(ChannelLaw law, Theorem theorem, AuxCardinalities aux);

  Theorem theorem() const { return theorem_; }
  const ChannelLaw& law() const { return law_; }
  const AuxCardinalities& aux() const { return aux_; }
  const SimplexLayout& layout() const { return layout_; }

  /// Witness pmf without outputs: (U,V,X1,X2,Xr1) or (V,T,X1,X2,Xr1).
  JointPmf witness_joint(std::span<const double> theta) const;
  /// Witness extended by the channel.
  JointPmf joint(std::span<const double> theta) const;

  RatePolytope polytope(std::span<const double> theta) const;
  /// Polytope of an already built joint (witness axes plus Y1, Y2).
  RatePolytope polytope_of(const JointPmf& joint) const;

  /// Named factor tables for reporting a witness.
  std::vector<std::pair<std::string, std::vector<double>>> factor_tables(
      std::span<const double> theta) const;

 private:
  ChannelLaw law_;
  Theorem theorem_;
  AuxCardinalities aux_;
  SimplexLayout layout_;
};

}  // namespace cicpc

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "cicpc/distributions.hpp"
#include "cicpc/region.hpp"

namespace cicpc {

enum class VerdictStatus { Satisfied, Violated, Inconclusive };

const char* to_string(VerdictStatus status);

/// Outcome of a bounded search for a distribution that breaks a "for all P"
/// channel condition. A violated verdict carries a reproducible witness; a
/// satisfied one only says the search budget found none.
struct ConditionVerdict {
  VerdictStatus status = VerdictStatus::Inconclusive;
  /// Smallest gap found, in bits.
  double margin = 0;
  /// Factorization p(xr1) p(x2|xr1) p(v|x2,xr1) p(x1|v,x2,xr1) at the margin.
  InnerFactorization witness;
  std::uint64_t witness_seed = 0;
  std::size_t samples_used = 0;
  std::size_t restarts = 0;
  std::size_t card_v = 0;
};

inline constexpr double kConditionTolerance = 1e-9;

/// g_mc(P) = I(V,X2;Y1|Xr1) - I(V,X2,Xr1;Y2), the more-capable gap.
double more_capable_gap(const JointPmf& joint);
/// g_x2(P) = I(X2;Y1|Xr1) - I(X2,Xr1;Y2).
double high_gain_gap_x2(const JointPmf& joint);
/// g_v(P) = I(V;Y1|X2,Xr1) - I(V;Y2|X2,Xr1).
double high_gain_gap_v(const JointPmf& joint);

/// Minimizes g_mc over P(V,X1,X2,Xr1) with |V| = cfg aux v (U degenerate).
ConditionVerdict check_more_capable(const ChannelLaw& law, const SearchConfig& cfg);

/// Independent minimizations of g_x2 and g_v.
std::pair<ConditionVerdict, ConditionVerdict> check_high_gain(const ChannelLaw& law,
                                                              const SearchConfig& cfg);

/// |g_mc - g_x2 - g_v|; zero for every P by the chain rule.
double gap_chain_rule_residual(const JointPmf& joint);

/// |H(Y2|V,T,X1,X2,Xr1) - H(Y2|X1,X2,Xr1)| on the outer joint built from the
/// witness. Throws ClassMismatch unless the channel is semideterministic.
double semidet_markov_collapse(const ChannelLaw& law, const OuterWitness& witness);

}  // namespace cicpc

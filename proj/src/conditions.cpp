#include "cicpc/conditions.hpp"

#include <cmath>

#include "cicpc/bounds.hpp"
#include "cicpc/random.hpp"

namespace cicpc {

namespace {

using enum VariableId;

double g_mc(EntropyTable& h) {
  return h.mutual_information({V, X2}, {Y1}, {Xr1}) - h.mutual_information({V, X2, Xr1}, {Y2});
}
double g_x2(EntropyTable& h) {
  return h.mutual_information({X2}, {Y1}, {Xr1}) - h.mutual_information({X2, Xr1}, {Y2});
}
double g_v(EntropyTable& h) {
  return h.mutual_information({V}, {Y1}, {X2, Xr1}) - h.mutual_information({V}, {Y2}, {X2, Xr1});
}

using Gap = double (*)(EntropyTable&);

ConditionVerdict minimize_gap(const ChannelLaw& law, const SearchConfig& cfg, Gap gap) {
  cfg.check();
  require_valid(law);
  const auto& a = law.alphabets();
  const std::size_t card_v = cfg.resolve_aux(a).v;
  const auto layout = inner_layout(a, 1, card_v);

  struct Outcome {
    double margin;
    std::uint64_t seed;
    std::vector<double> theta;
    std::size_t evaluations;
  };
  std::vector<Outcome> outcomes(cfg.restarts);
  parallel_for(cfg.restarts, cfg.threads, [&](std::size_t r) {
    const std::uint64_t seed = derive_seed(cfg.seed, r);
    const Objective objective = [&](std::span<const double> theta) {
      const auto joint =
          build_inner_joint(params_to_factorization(theta, a, 1, card_v), law);
      EntropyTable h(joint);
      return -gap(h);
    };
    LocalSearchOptions opts;
    opts.local_steps = cfg.local_steps;
    opts.step_scale = cfg.step_scale;
    auto res = hill_climb(layout, objective, sample_params(layout, seed), opts,
                          derive_seed(seed, 0x676170));
    outcomes[r] = {-res.value, seed, std::move(res.theta), res.evaluations};
  });

  std::size_t best = 0;
  std::size_t evaluations = 0;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    evaluations += outcomes[r].evaluations;
    const auto& o = outcomes[r];
    const auto& b = outcomes[best];
    if (o.margin < b.margin || (o.margin == b.margin && o.seed < b.seed)) best = r;
  }
  ConditionVerdict v;
  v.margin = outcomes[best].margin;
  v.status = v.margin < -kConditionTolerance ? VerdictStatus::Violated : VerdictStatus::Satisfied;
  v.witness = params_to_factorization(outcomes[best].theta, a, 1, card_v);
  v.witness_seed = outcomes[best].seed;
  v.samples_used = evaluations;
  v.restarts = cfg.restarts;
  v.card_v = card_v;
  return v;
}

}  // namespace

const char* to_string(VerdictStatus status) {
  switch (status) {
    case VerdictStatus::Satisfied: return "satisfied";
    case VerdictStatus::Violated: return "violated";
    case VerdictStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

double more_capable_gap(const JointPmf& joint) {
  EntropyTable h(joint);
  return g_mc(h);
}

double high_gain_gap_x2(const JointPmf& joint) {
  EntropyTable h(joint);
  return g_x2(h);
}

double high_gain_gap_v(const JointPmf& joint) {
  EntropyTable h(joint);
  return g_v(h);
}

ConditionVerdict check_more_capable(const ChannelLaw& law, const SearchConfig& cfg) {
  return minimize_gap(law, cfg, g_mc);
}

std::pair<ConditionVerdict, ConditionVerdict> check_high_gain(const ChannelLaw& law,
                                                              const SearchConfig& cfg) {
  return {minimize_gap(law, cfg, g_x2), minimize_gap(law, cfg, g_v)};
}

double gap_chain_rule_residual(const JointPmf& joint) {
  EntropyTable h(joint);
  return std::abs(g_mc(h) - g_x2(h) - g_v(h));
}

double semidet_markov_collapse(const ChannelLaw& law, const OuterWitness& witness) {
  if (!classify_semideterministic(law).semideterministic)
    throw ClassMismatch("channel is not semideterministic: p(y1|x1,x2,xr1) is not 0/1 valued");
  const auto joint = build_outer_joint(witness, law);
  EntropyTable h(joint);
  return std::abs(h.conditional_entropy({Y2}, {V, T, X1, X2, Xr1}) -
                  h.conditional_entropy({Y2}, {X1, X2, Xr1}));
}

}  // namespace cicpc

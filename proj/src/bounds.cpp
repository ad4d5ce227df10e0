#include "cicpc/bounds.hpp"

#include <algorithm>
#include <limits>

namespace cicpc {

namespace {

using enum VariableId;

constexpr VarSet kInnerAxes{U, V, X1, X2, Xr1, Y1, Y2};
constexpr VarSet kOuterAxes{V, T, X1, X2, Xr1, Y1, Y2};
constexpr VarSet kSemidetAxes{V, X1, X2, Xr1, Y1, Y2};

void require_axes(const JointPmf& joint, VarSet needed, const char* who) {
  if (!needed.subset_of(joint.labels()))
    throw std::invalid_argument(std::string(who) + " needs axes " + needed.str() + ", got " +
                                joint.labels().str());
}

// A sum cap of exactly zero can come out as -1e-17 after cancellation.
constexpr double kCapSlack = 1e-12;

double min_cap(const RatePolytope& p, int c1, int c2) {
  double cap = std::numeric_limits<double>::infinity();
  for (const auto& h : p.halfspaces)
    if (h.c1 == c1 && h.c2 == c2) cap = std::min(cap, h.rhs);
  return cap;
}

}  // namespace

double RatePolytope::cap_r1() const { return min_cap(*this, 1, 0); }
double RatePolytope::cap_r2() const { return min_cap(*this, 0, 1); }
double RatePolytope::cap_sum() const { return min_cap(*this, 1, 1); }

bool RatePolytope::empty() const {
  return std::any_of(halfspaces.begin(), halfspaces.end(),
                     [](const Halfspace& h) { return h.rhs < -kCapSlack; });
}

namespace detail {

OuterBoundVector outer_terms(EntropyTable& h) {
  h.prime({V, T, X1, X2, Xr1, Y1});
  h.prime({V, T, X1, X2, Xr1, Y2});
  OuterBoundVector o;
  o.a = h.mutual_information({X1}, {Y1}, {X2, Xr1});
  o.b = h.mutual_information({V, X2, Xr1}, {Y2});
  o.c = h.mutual_information({X1, X2, Xr1}, {Y2});
  o.d = o.b + h.mutual_information({X1}, {Y1}, {V, X2, Xr1});
  o.e = h.mutual_information({T, X1, X2}, {Y1}, {Xr1}) + h.mutual_information({V}, {Y2}, {T, Xr1}) -
        h.mutual_information({V}, {Y1}, {T, Xr1});
  o.f = h.mutual_information({X1, X2}, {Y1, Y2}, {Xr1});
  return o;
}

InnerBoundVector inner_terms(EntropyTable& h) {
  h.prime({U, V, X1, X2, Xr1, Y1});
  h.prime({U, V, X2, Xr1, Y2});
  InnerBoundVector v;
  v.r1 = h.mutual_information({X1}, {Y1}, {U, X2, Xr1});
  v.r2_args = {h.mutual_information({U, V, X2, Xr1}, {Y2}),
               h.mutual_information({U, V, X2}, {Y1}, {Xr1})};
  v.r2 = std::min(v.r2_args[0], v.r2_args[1]);
  v.sum = v.r2 + h.mutual_information({X1}, {Y1}, {U, V, X2, Xr1});
  return v;
}

SemidetBoundVector semidet_terms(EntropyTable& h) {
  h.prime({V, X1, X2, Xr1, Y1});
  SemidetBoundVector v;
  v.r1 = h.conditional_entropy({Y1}, {X2, Xr1});
  v.r2 = h.mutual_information({V, X2, Xr1}, {Y2});
  v.sum = v.r2 + h.conditional_entropy({Y1}, {V, X2, Xr1});
  return v;
}

}  // namespace detail

OuterBoundVector eval_outer_t1(const JointPmf& joint) {
  require_axes(joint, kOuterAxes, "outer bound");
  EntropyTable h(joint);
  return detail::outer_terms(h);
}

InnerBoundVector eval_inner_t2(const JointPmf& joint) {
  require_axes(joint, kInnerAxes, "inner bound");
  EntropyTable h(joint);
  return detail::inner_terms(h);
}

InnerBoundVector eval_degraded_t3(const JointPmf& joint, const ChannelLaw& law) {
  if (!classify_degraded(law).degraded)
    throw ClassMismatch("channel is not degraded: p(y1,y2|x1,x2,xr1) does not factor as "
                        "p(y1|x1,x2,xr1) q(y2|y1,xr1)");
  return eval_inner_t2(joint);
}

SemidetBoundVector eval_semidet_t4(const JointPmf& joint, const ChannelLaw& law) {
  if (!classify_semideterministic(law).semideterministic)
    throw ClassMismatch("channel is not semideterministic: p(y1|x1,x2,xr1) is not 0/1 valued");
  require_axes(joint, kSemidetAxes, "semideterministic region");
  EntropyTable h(joint);
  return detail::semidet_terms(h);
}

DecodeForwardDiagnostic check_decode_forward_collapse(const JointPmf& joint, bool more_capable_verdict) {
  require_axes(joint, VarSet{V, X2, Xr1, Y1, Y2}, "decode-forward identity");
  EntropyTable h(joint);
  DecodeForwardDiagnostic d;
  d.y2_term = h.mutual_information({V, X2, Xr1}, {Y2});
  d.y1_term = h.mutual_information({V, X2}, {Y1}, {Xr1});
  d.difference = std::min(d.y2_term, d.y1_term) - d.y2_term;
  d.more_capable_violated = d.difference < -kIdentityTolerance;
  d.consistent = !more_capable_verdict || !d.more_capable_violated;
  return d;
}

InnerBoundVector relay_bc_specialize(const JointPmf& joint) {
  require_axes(joint, kInnerAxes, "relay broadcast specialization");
  if (joint.card(V) != 1 || joint.card(X2) != 1)
    throw std::invalid_argument("relay broadcast specialization needs |V| = |X2| = 1");
  EntropyTable h(joint);
  InnerBoundVector v;
  v.r1 = h.mutual_information({X1}, {Y1}, {U, Xr1});
  v.r2_args = {h.mutual_information({U, Xr1}, {Y2}), h.mutual_information({U}, {Y1}, {Xr1})};
  v.r2 = std::min(v.r2_args[0], v.r2_args[1]);
  v.sum = v.r2 + v.r1;
  return v;
}

RatePolytope bounds_to_polytope(const OuterBoundVector& v) {
  return {{{1, 0, v.a, "a"},
           {0, 1, v.b, "b"},
           {0, 1, v.c, "c"},
           {1, 1, v.d, "d"},
           {1, 1, v.e, "e"},
           {1, 1, v.f, "f"}}};
}

RatePolytope bounds_to_polytope(const InnerBoundVector& v) {
  return {{{1, 0, v.r1, "r1"}, {0, 1, v.r2, "r2"}, {1, 1, v.sum, "sum"}}};
}

RatePolytope bounds_to_polytope(const SemidetBoundVector& v) {
  return {{{1, 0, v.r1, "r1"}, {0, 1, v.r2, "r2"}, {1, 1, v.sum, "sum"}}};
}

}  // namespace cicpc

#pragma once

#include <array>
#include <string>
#include <vector>

#include "cicpc/channel.hpp"
#include "cicpc/info.hpp"

namespace cicpc {

/// Right-hand sides of the six outer-bound inequalities, in bits:
///   R1      <= a = I(X1;Y1|X2,Xr1)
///   R2      <= b = I(V,X2,Xr1;Y2)
///   R2      <= c = I(X1,X2,Xr1;Y2)
///   R1 + R2 <= d = I(V,X2,Xr1;Y2) + I(X1;Y1|V,X2,Xr1)
///   R1 + R2 <= e = I(T,X1,X2;Y1|Xr1) + I(V;Y2|T,Xr1) - I(V;Y1|T,Xr1)
///   R1 + R2 <= f = I(X1,X2;Y1,Y2|Xr1)
/// Only e can be negative.
struct OuterBoundVector {
  double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
};

/// Decode-and-forward inner bound:
///   R1      <= r1  = I(X1;Y1|U,X2,Xr1)
///   R2      <= r2  = min{I(U,V,X2,Xr1;Y2), I(U,V,X2;Y1|Xr1)}
///   R1 + R2 <= sum = r2 + I(X1;Y1|U,V,X2,Xr1)
struct InnerBoundVector {
  double r1 = 0, r2 = 0, sum = 0;
  std::array<double, 2> r2_args{};
};

/// Semideterministic region:
///   R1      <= r1  = H(Y1|X2,Xr1)
///   R2      <= r2  = I(V,X2,Xr1;Y2)
///   R1 + R2 <= sum = I(V,X2,Xr1;Y2) + H(Y1|V,X2,Xr1)
struct SemidetBoundVector {
  double r1 = 0, r2 = 0, sum = 0;
};

/// c1 * R1 + c2 * R2 <= rhs, with c1, c2 in {0, 1}.
struct Halfspace {
  int c1 = 0;
  int c2 = 0;
  double rhs = 0;
  std::string label;
};

/// Bounded polytope in (R1, R2) with implicit R1 >= 0, R2 >= 0.
struct RatePolytope {
  std::vector<Halfspace> halfspaces;

  double cap_r1() const;
  double cap_r2() const;
  double cap_sum() const;
  bool empty() const;
};

OuterBoundVector eval_outer_t1(const JointPmf& joint);
InnerBoundVector eval_inner_t2(const JointPmf& joint);

/// Raised when an evaluator is applied to a channel outside its class.
class ClassMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The degraded-channel capacity formulas are the inner-bound formulas; this
/// is eval_inner_t2 behind the degradedness check.
InnerBoundVector eval_degraded_t3(const JointPmf& joint, const ChannelLaw& law);

/// Throws ClassMismatch if `law` is not semideterministic.
SemidetBoundVector eval_semidet_t4(const JointPmf& joint, const ChannelLaw& law);

struct DecodeForwardDiagnostic {
  double y2_term = 0;    // I(V,X2,Xr1;Y2)
  double y1_term = 0;    // I(V,X2;Y1|Xr1)
  double difference = 0; // min(y2_term, y1_term) - y2_term
  bool more_capable_violated = false;  // y1_term < y2_term for this pmf
  bool consistent = true;  // difference == 0 whenever the channel was certified more capable
};

inline constexpr double kIdentityTolerance = 1e-10;

/// Checks that the decode-forward min selects the Y2 term.
DecodeForwardDiagnostic check_decode_forward_collapse(const JointPmf& joint, bool more_capable_verdict);

/// Inner bound with V and X2 degenerate, evaluated through the reduced
/// relay-broadcast formulas. Throws std::invalid_argument unless |V| = |X2| = 1.
InnerBoundVector relay_bc_specialize(const JointPmf& joint);

RatePolytope bounds_to_polytope(const OuterBoundVector& v);
RatePolytope bounds_to_polytope(const InnerBoundVector& v);
RatePolytope bounds_to_polytope(const SemidetBoundVector& v);

namespace detail {
OuterBoundVector outer_terms(EntropyTable& h);
InnerBoundVector inner_terms(EntropyTable& h);
SemidetBoundVector semidet_terms(EntropyTable& h);
}  // namespace detail

}  // namespace cicpc

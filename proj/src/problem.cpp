#include "cicpc/problem.hpp"

namespace cicpc {

const char* to_string(Theorem theorem) {
  switch (theorem) {
    case Theorem::T1: return "t1";
    case Theorem::T2: return "t2";
    case Theorem::T3: return "t3";
    case Theorem::T4: return "t4";
  }
  return "?";
}

std::optional<Theorem> parse_theorem(std::string_view name) {
  if (name == "t1") return Theorem::T1;
  if (name == "t2") return Theorem::T2;
  if (name == "t3") return Theorem::T3;
  if (name == "t4") return Theorem::T4;
  return std::nullopt;
}

BoundProblem::BoundProblem(ChannelLaw law, Theorem theorem, AuxCardinalities aux)
    : law_(std::move(law)), theorem_(theorem), aux_(aux) {
  require_valid(law_);
  if (aux_.u == 0 || aux_.v == 0 || aux_.t == 0)
    throw std::invalid_argument("auxiliary cardinalities must be positive");
  if (theorem_ == Theorem::T3 && !classify_degraded(law_).degraded)
    throw ClassMismatch("theorem t3 requires a degraded channel: p(y1,y2|x1,x2,xr1) does not "
                        "factor as p(y1|x1,x2,xr1) q(y2|y1,xr1)");
  if (theorem_ == Theorem::T4 && !classify_semideterministic(law_).semideterministic)
    throw ClassMismatch("theorem t4 requires a semideterministic channel: p(y1|x1,x2,xr1) is "
                        "not 0/1 valued");
  if (theorem_ == Theorem::T4) aux_.u = 1;
  layout_ = theorem_ == Theorem::T1 ? outer_layout(law_.alphabets(), aux_.v, aux_.t)
                                    : inner_layout(law_.alphabets(), aux_.u, aux_.v);
}

JointPmf BoundProblem::witness_joint(std::span<const double> theta) const {
  if (theorem_ == Theorem::T1)
    return params_to_outer_witness(theta, law_.alphabets(), aux_.v, aux_.t).joint;
  return factorization_joint(params_to_factorization(theta, law_.alphabets(), aux_.u, aux_.v));
}

JointPmf BoundProblem::joint(std::span<const double> theta) const {
  return attach_channel(witness_joint(theta), law_);
}

RatePolytope BoundProblem::polytope_of(const JointPmf& joint) const {
  EntropyTable h(joint);
  switch (theorem_) {
    case Theorem::T1: return bounds_to_polytope(detail::outer_terms(h));
    case Theorem::T2:
    case Theorem::T3: return bounds_to_polytope(detail::inner_terms(h));
    case Theorem::T4: return bounds_to_polytope(detail::semidet_terms(h));
  }
  return {};
}

RatePolytope BoundProblem::polytope(std::span<const double> theta) const {
  return polytope_of(joint(theta));
}

std::vector<std::pair<std::string, std::vector<double>>> BoundProblem::factor_tables(
    std::span<const double> theta) const {
  const auto rows = params_to_rows(theta, layout_);
  std::vector<std::pair<std::string, std::vector<double>>> out;
  const std::vector<std::string> names =
      theorem_ == Theorem::T1
          ? std::vector<std::string>{"p(x1,x2,xr1)", "p(v|x1,x2,xr1)", "p(t|v,x1,x2,xr1)"}
          : std::vector<std::string>{"p(xr1)", "p(u,x2|xr1)", "p(v|u,x2,xr1)",
                                     "p(x1|u,v,x2,xr1)"};
  for (std::size_t b = 0; b < layout_.blocks; ++b) {
    std::vector<double> table;
    for (std::size_t r = 0; r < layout_.rows(); ++r) {
      if (layout_.row_block[r] != b) continue;
      const auto off = layout_.row_offset[r];
      table.insert(table.end(), rows.begin() + static_cast<std::ptrdiff_t>(off),
                   rows.begin() + static_cast<std::ptrdiff_t>(off + layout_.row_size[r]));
    }
    out.emplace_back(names[b], std::move(table));
  }
  return out;
}

}  // namespace cicpc

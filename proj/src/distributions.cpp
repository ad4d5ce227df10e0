#include "cicpc/distributions.hpp"

#include <algorithm>
#include <cmath>

#include "cicpc/random.hpp"

namespace cicpc {

AuxCardinalities AuxCardinalities::defaults_for(const AlphabetSpec& alphabets) {
  const std::size_t c = std::min<std::size_t>(4, alphabets.inputs());
  return {c, c, c};
}

void SimplexLayout::add_block(std::size_t rows, std::size_t width) {
  for (std::size_t r = 0; r < rows; ++r) {
    row_offset.push_back(dim);
    row_size.push_back(width);
    row_block.push_back(blocks);
    dim += width;
  }
  ++blocks;
}

SimplexLayout inner_layout(const AlphabetSpec& a, std::size_t card_u, std::size_t card_v) {
  SimplexLayout layout;
  layout.add_block(1, a.xr1);
  layout.add_block(a.xr1, card_u * a.x2);
  layout.add_block(card_u * a.x2 * a.xr1, card_v);
  layout.add_block(card_u * card_v * a.x2 * a.xr1, a.x1);
  return layout;
}

SimplexLayout outer_layout(const AlphabetSpec& a, std::size_t card_v, std::size_t card_t) {
  return inner_layout(a, card_t, card_v);
}

std::vector<double> params_to_rows(std::span<const double> theta, const SimplexLayout& layout) {
  if (theta.size() != layout.dim) throw std::invalid_argument("parameter length mismatch");
  std::vector<double> rows(layout.dim);
  for (std::size_t r = 0; r < layout.rows(); ++r) {
    const std::size_t off = layout.row_offset[r], n = layout.row_size[r];
    double hi = theta[off];
    for (std::size_t k = 1; k < n; ++k) hi = std::max(hi, theta[off + k]);
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      rows[off + k] = std::exp(theta[off + k] - hi);
      total += rows[off + k];
    }
    for (std::size_t k = 0; k < n; ++k) rows[off + k] /= total;
  }
  return rows;
}

std::vector<double> rows_to_params(std::span<const double> rows, const SimplexLayout& layout) {
  if (rows.size() != layout.dim) throw std::invalid_argument("row length mismatch");
  std::vector<double> theta(layout.dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    theta[i] = rows[i] > 0.0 ? std::max(kLogitFloor, std::log(rows[i])) : kLogitFloor;
  return theta;
}

std::vector<double> sample_params(const SimplexLayout& layout, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> rows(layout.dim);
  for (std::size_t r = 0; r < layout.rows(); ++r)
    rng.dirichlet(std::span<double>(rows.data() + layout.row_offset[r], layout.row_size[r]));
  return rows_to_params(rows, layout);
}

InnerFactorization params_to_factorization(std::span<const double> theta, const AlphabetSpec& a,
                                           std::size_t card_u, std::size_t card_v) {
  const auto layout = inner_layout(a, card_u, card_v);
  const auto rows = params_to_rows(theta, layout);
  InnerFactorization f;
  f.card_u = card_u;
  f.card_v = card_v;
  f.card_x1 = a.x1;
  f.card_x2 = a.x2;
  f.card_xr1 = a.xr1;
  auto it = rows.begin();
  auto take = [&it](std::size_t n) {
    std::vector<double> out(it, it + static_cast<std::ptrdiff_t>(n));
    it += static_cast<std::ptrdiff_t>(n);
    return out;
  };
  f.f_xr1 = take(a.xr1);
  f.f_ux2 = take(a.xr1 * card_u * a.x2);
  f.f_v = take(card_u * a.x2 * a.xr1 * card_v);
  f.f_x1 = take(card_u * card_v * a.x2 * a.xr1 * a.x1);
  return f;
}

OuterWitness params_to_outer_witness(std::span<const double> theta, const AlphabetSpec& a,
                                     std::size_t card_v, std::size_t card_t) {
  // Same chain as the inner factorization with T in the place of U; the
  // joint only needs its first two axes swapped.
  const auto chain = factorization_joint(params_to_factorization(theta, a, card_t, card_v));
  const std::size_t nx = a.inputs();
  const auto& src = chain.weights();
  std::vector<double> w(src.size());
  for (std::size_t t = 0; t < card_t; ++t)
    for (std::size_t v = 0; v < card_v; ++v)
      std::copy_n(src.begin() + static_cast<std::ptrdiff_t>((t * card_v + v) * nx), nx,
                  w.begin() + static_cast<std::ptrdiff_t>((v * card_t + t) * nx));
  return OuterWitness{JointPmf({{VariableId::V, card_v},
                                {VariableId::T, card_t},
                                {VariableId::X1, a.x1},
                                {VariableId::X2, a.x2},
                                {VariableId::Xr1, a.xr1}},
                               std::move(w))};
}

std::variant<InnerFactorization, OuterWitness> sample_witness(WitnessKind kind,
                                                              const AlphabetSpec& alphabets,
                                                              const AuxCardinalities& cards,
                                                              std::uint64_t seed) {
  if (kind == WitnessKind::Inner) {
    const auto theta = sample_params(inner_layout(alphabets, cards.u, cards.v), seed);
    return params_to_factorization(theta, alphabets, cards.u, cards.v);
  }
  const auto theta = sample_params(outer_layout(alphabets, cards.v, cards.t), seed);
  return params_to_outer_witness(theta, alphabets, cards.v, cards.t);
}

namespace {

void check_rows(const std::vector<double>& data, std::size_t width, const char* name) {
  if (width == 0 || data.size() % width != 0)
    throw std::invalid_argument(std::string("factor ") + name + " has the wrong shape");
  for (std::size_t off = 0; off < data.size(); off += width) {
    double s = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      if (!(data[off + k] >= 0.0))
        throw std::invalid_argument(std::string("factor ") + name + " has a negative entry");
      s += data[off + k];
    }
    if (std::abs(s - 1.0) > kPmfSumTolerance)
      throw std::invalid_argument(std::string("factor ") + name + " has a row not summing to 1");
  }
}

}  // namespace

void InnerFactorization::validate() const {
  const std::size_t ctx = card_u * card_x2 * card_xr1;
  if (f_xr1.size() != card_xr1 || f_ux2.size() != card_xr1 * card_u * card_x2 ||
      f_v.size() != ctx * card_v || f_x1.size() != ctx * card_v * card_x1)
    throw std::invalid_argument("factorization shape mismatch");
  check_rows(f_xr1, card_xr1, "p(xr1)");
  check_rows(f_ux2, card_u * card_x2, "p(u,x2|xr1)");
  check_rows(f_v, card_v, "p(v|u,x2,xr1)");
  check_rows(f_x1, card_x1, "p(x1|u,v,x2,xr1)");
}

JointPmf factorization_joint(const InnerFactorization& f) {
  f.validate();
  const std::size_t U = f.card_u, V = f.card_v, X1 = f.card_x1, X2 = f.card_x2, R = f.card_xr1;
  std::vector<double> w(U * V * X1 * X2 * R);
  for (std::size_t u = 0; u < U; ++u)
    for (std::size_t v = 0; v < V; ++v)
      for (std::size_t x1 = 0; x1 < X1; ++x1)
        for (std::size_t x2 = 0; x2 < X2; ++x2)
          for (std::size_t r = 0; r < R; ++r) {
            const double p = f.f_xr1[r] * f.f_ux2[(r * U + u) * X2 + x2] *
                             f.f_v[((u * X2 + x2) * R + r) * V + v] *
                             f.f_x1[(((u * V + v) * X2 + x2) * R + r) * X1 + x1];
            w[(((u * V + v) * X1 + x1) * X2 + x2) * R + r] = p;
          }
  return JointPmf({{VariableId::U, U},
                   {VariableId::V, V},
                   {VariableId::X1, X1},
                   {VariableId::X2, X2},
                   {VariableId::Xr1, R}},
                  std::move(w));
}

JointPmf attach_channel(const JointPmf& inputs, const ChannelLaw& law) {
  const auto& a = law.alphabets();
  const auto& axes = inputs.axes();
  const std::size_t n = axes.size();
  if (n < 3 || axes[n - 3] != Axis{VariableId::X1, a.x1} ||
      axes[n - 2] != Axis{VariableId::X2, a.x2} || axes[n - 1] != Axis{VariableId::Xr1, a.xr1})
    throw std::invalid_argument("pmf must end with axes (X1, X2, Xr1) matching the channel");
  if (inputs.labels().contains(VariableId::Y1) || inputs.labels().contains(VariableId::Y2))
    throw std::invalid_argument("pmf already carries output axes");
  const std::size_t nx = a.inputs(), ny = a.outputs();
  const auto& w = inputs.weights();
  std::vector<double> out(w.size() * ny);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double* slice = law.slice(i % nx);
    double* dst = out.data() + i * ny;
    for (std::size_t k = 0; k < ny; ++k) dst[k] = w[i] * slice[k];
  }
  auto out_axes = axes;
  out_axes.push_back({VariableId::Y1, a.y1});
  out_axes.push_back({VariableId::Y2, a.y2});
  return JointPmf(std::move(out_axes), std::move(out));
}

JointPmf build_inner_joint(const InnerFactorization& factors, const ChannelLaw& law) {
  const auto& a = law.alphabets();
  if (factors.card_x1 != a.x1 || factors.card_x2 != a.x2 || factors.card_xr1 != a.xr1)
    throw std::invalid_argument("factorization alphabets do not match the channel");
  return attach_channel(factorization_joint(factors), law);
}

JointPmf build_outer_joint(const OuterWitness& witness, const ChannelLaw& law) {
  const auto& axes = witness.joint.axes();
  if (axes.size() != 5 || axes[0].id != VariableId::V || axes[1].id != VariableId::T)
    throw std::invalid_argument("outer witness must have axes (V, T, X1, X2, Xr1)");
  return attach_channel(witness.joint, law);
}

namespace {

// Flat index into the marginal on `keep` for every cell of `pmf`.
std::vector<std::size_t> marginal_index(const JointPmf& pmf, VarSet keep, std::size_t& msize) {
  const auto& axes = pmf.axes();
  std::vector<std::size_t> stride(axes.size(), 0);
  msize = 1;
  for (std::size_t k = axes.size(); k-- > 0;) {
    if (keep.contains(axes[k].id)) {
      stride[k] = msize;
      msize *= axes[k].card;
    }
  }
  std::vector<std::size_t> idx(pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    std::size_t rest = i, m = 0;
    for (std::size_t k = axes.size(); k-- > 0;) {
      m += (rest % axes[k].card) * stride[k];
      rest /= axes[k].card;
    }
    idx[i] = m;
  }
  return idx;
}

}  // namespace

double verify_markov(const JointPmf& pmf, VarSet left, VarSet mid, VarSet right) {
  if (!left.disjoint(mid) || !left.disjoint(right) || !mid.disjoint(right))
    throw std::invalid_argument("overlapping variable sets");
  const auto all = marginalize(pmf, left | mid | right);
  std::size_t n_lm = 0, n_mr = 0, n_m = 0;
  const auto i_lm = marginal_index(all, left | mid, n_lm);
  const auto i_mr = marginal_index(all, mid | right, n_mr);
  const auto i_m = marginal_index(all, mid, n_m);
  std::vector<double> p_lm(n_lm, 0.0), p_mr(n_mr, 0.0), p_m(n_m, 0.0);
  const auto& w = all.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    p_lm[i_lm[i]] += w[i];
    p_mr[i_mr[i]] += w[i];
    p_m[i_m[i]] += w[i];
  }
  constexpr double kEventFloor = 1e-12;
  double worst = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double plm = p_lm[i_lm[i]], pm = p_m[i_m[i]];
    if (pm <= kEventFloor || plm <= kEventFloor) continue;
    worst = std::max(worst, std::abs(w[i] / plm - p_mr[i_mr[i]] / pm));
  }
  return worst;
}

}  // namespace cicpc

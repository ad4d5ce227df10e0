#include "cicpc/info.hpp"

#include <cmath>
#include <sstream>

namespace cicpc {

const char* to_string(VariableId id) {
  switch (id) {
    case VariableId::U: return "U";
    case VariableId::V: return "V";
    case VariableId::T: return "T";
    case VariableId::X1: return "X1";
    case VariableId::X2: return "X2";
    case VariableId::Xr1: return "Xr1";
    case VariableId::Y1: return "Y1";
    case VariableId::Y2: return "Y2";
  }
  return "?";
}

std::string VarSet::str() const {
  std::string out = "{";
  for (std::size_t k = 0; k < kNumVariables; ++k) {
    auto id = static_cast<VariableId>(k);
    if (!contains(id)) continue;
    if (out.size() > 1) out += ",";
    out += to_string(id);
  }
  return out + "}";
}

JointPmf::JointPmf(std::vector<Axis> axes, std::vector<double> weights)
    : axes_(std::move(axes)), weights_(std::move(weights)) {
  if (axes_.size() > kNumVariables) throw std::invalid_argument("too many axes");
  std::size_t n = 1;
  for (const auto& ax : axes_) {
    if (labels_.contains(ax.id))
      throw std::invalid_argument(std::string("duplicate axis ") + to_string(ax.id));
    if (ax.card == 0) throw std::invalid_argument("axis of cardinality 0");
    labels_ = labels_ | VarSet{ax.id};
    n *= ax.card;
  }
  if (n != weights_.size()) throw std::invalid_argument("weights do not match axis shape");
  double total = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative or NaN weight");
    total += w;
  }
  if (std::abs(total - 1.0) > kPmfSumTolerance)
    throw std::invalid_argument("weights do not sum to 1");
}

std::optional<std::size_t> JointPmf::axis_index(VariableId id) const {
  for (std::size_t k = 0; k < axes_.size(); ++k)
    if (axes_[k].id == id) return k;
  return std::nullopt;
}

std::size_t JointPmf::card(VariableId id) const {
  auto k = axis_index(id);
  return k ? axes_[*k].card : 0;
}

double JointPmf::at(std::initializer_list<std::size_t> index) const {
  if (index.size() != axes_.size()) throw std::invalid_argument("index rank mismatch");
  std::size_t flat = 0;
  std::size_t k = 0;
  for (std::size_t i : index) {
    if (i >= axes_[k].card) throw std::out_of_range("index out of range");
    flat = flat * axes_[k].card + i;
    ++k;
  }
  return weights_[flat];
}

namespace {

// Sums a dense tensor onto the axes in `keep` (original order) into `out`.
void marginal_into(const std::vector<Axis>& axes, const std::vector<double>& weights, VarSet keep,
                   std::vector<double>& out) {
  const std::size_t rank = axes.size();
  std::array<std::size_t, kNumVariables> card{}, stride{}, digit{};
  std::size_t msize = 1;
  for (std::size_t k = rank; k-- > 0;) {
    card[k] = axes[k].card;
    if (keep.contains(axes[k].id)) {
      stride[k] = msize;
      msize *= card[k];
    }
  }
  out.assign(msize, 0.0);
  if (rank == 0) {
    out[0] = weights.empty() ? 0.0 : weights[0];
    return;
  }
  const double* w = weights.data();
  const std::size_t total = weights.size();
  const std::size_t last = rank - 1;
  const std::size_t inner = card[last];
  const std::size_t inner_stride = stride[last];
  std::size_t m = 0;
  for (std::size_t i = 0; i < total; i += inner) {
    for (std::size_t j = 0; j < inner; ++j) out[m + j * inner_stride] += w[i + j];
    // advance the odometer over the outer axes
    for (std::size_t k = last; k-- > 0;) {
      if (++digit[k] < card[k]) {
        m += stride[k];
        break;
      }
      digit[k] = 0;
      m -= stride[k] * (card[k] - 1);
    }
  }
}

}  // namespace

JointPmf marginalize(const JointPmf& pmf, VarSet keep) {
  if (!keep.subset_of(pmf.labels()))
    throw std::invalid_argument("unknown label in " + keep.str());
  std::vector<Axis> axes;
  for (const auto& ax : pmf.axes())
    if (keep.contains(ax.id)) axes.push_back(ax);
  std::vector<double> out;
  marginal_into(pmf.axes(), pmf.weights(), keep, out);
  return JointPmf(std::move(axes), std::move(out));
}

double entropy_of(const double* p, std::size_t n) {
  double h = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] > 0.0) h -= p[i] * std::log2(p[i]);
  return h;
}

EntropyTable::EntropyTable(const JointPmf& pmf) : pmf_(pmf) {}

double EntropyTable::entropy(VarSet vars) {
  const auto b = vars.bits();
  if (!known_[b]) {
    if (!vars.subset_of(pmf_.labels()))
      throw std::invalid_argument("unknown label in " + vars.str());
    cache_[b] = compute(vars);
    known_[b] = true;
  }
  return cache_[b];
}

void EntropyTable::prime(VarSet vars) {
  if (!vars.subset_of(pmf_.labels()))
    throw std::invalid_argument("unknown label in " + vars.str());
  store_marginal(vars);
}

const std::vector<double>& EntropyTable::store_marginal(VarSet vars) {
  const std::vector<Axis>* axes = &pmf_.axes();
  const std::vector<double>* weights = &pmf_.weights();
  for (const auto& m : marginals_) {
    if (vars.subset_of(m.vars) && m.weights.size() < weights->size()) {
      axes = &m.axes;
      weights = &m.weights;
    }
  }
  Marginal out;
  out.vars = vars;
  for (const auto& ax : *axes)
    if (vars.contains(ax.id)) out.axes.push_back(ax);
  marginal_into(*axes, *weights, vars, out.weights);
  marginals_.push_back(std::move(out));
  return marginals_.back().weights;
}

double EntropyTable::compute(VarSet vars) {
  if (vars.empty()) return 0.0;
  const auto& w = store_marginal(vars);
  return entropy_of(w.data(), w.size());
}

namespace {

double clamp_nonnegative(double v, const char* what) {
  if (v >= 0.0) return v;
  if (v >= -kNegativeSlack) return 0.0;
  std::ostringstream os;
  os << what << " evaluated to " << v;
  throw ConsistencyError(os.str());
}

}  // namespace

double EntropyTable::conditional_entropy(VarSet vars, VarSet given) {
  if (!vars.disjoint(given)) throw std::invalid_argument("overlapping variable sets");
  return clamp_nonnegative(entropy(vars | given) - entropy(given), "conditional entropy");
}

double EntropyTable::mutual_information(VarSet a, VarSet b, VarSet given) {
  if (!a.disjoint(b) || !a.disjoint(given) || !b.disjoint(given))
    throw std::invalid_argument("overlapping variable sets");
  // Largest marginal first so the smaller ones are summed from it.
  const double joint = entropy(a | b | given);
  const double v = entropy(a | given) + entropy(b | given) - joint - entropy(given);
  return clamp_nonnegative(v, "mutual information");
}

double entropy(const JointPmf& pmf, VarSet vars) { return EntropyTable(pmf).entropy(vars); }

double conditional_entropy(const JointPmf& pmf, VarSet vars, VarSet given) {
  return EntropyTable(pmf).conditional_entropy(vars, given);
}

double conditional_mutual_information(const JointPmf& pmf, VarSet a, VarSet b, VarSet given) {
  return EntropyTable(pmf).mutual_information(a, b, given);
}

}  // namespace cicpc

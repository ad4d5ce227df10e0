#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicpc {

/// Labels of the random variables that can appear as pmf axes.
enum class VariableId : std::uint8_t { U = 0, V, T, X1, X2, Xr1, Y1, Y2 };

inline constexpr std::size_t kNumVariables = 8;

const char* to_string(VariableId id);

/// Small set of VariableIds backed by a bitmask.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<VariableId> ids) {
    for (auto id : ids) bits_ |= bit(id);
  }
  static constexpr VarSet from_bits(std::uint8_t bits) {
    VarSet s;
    s.bits_ = bits;
    return s;
  }

  constexpr bool contains(VariableId id) const { return (bits_ & bit(id)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool disjoint(VarSet o) const { return (bits_ & o.bits_) == 0; }
  constexpr bool subset_of(VarSet o) const { return (bits_ & ~o.bits_) == 0; }

  constexpr VarSet operator|(VarSet o) const { return from_bits(bits_ | o.bits_); }
  constexpr VarSet operator&(VarSet o) const { return from_bits(bits_ & o.bits_); }
  constexpr VarSet without(VarSet o) const { return from_bits(bits_ & ~o.bits_); }
  constexpr bool operator==(const VarSet&) const = default;

  std::string str() const;

 private:
  static constexpr std::uint8_t bit(VariableId id) {
    return static_cast<std::uint8_t>(1u << static_cast<unsigned>(id));
  }
  std::uint8_t bits_ = 0;
};

struct Axis {
  VariableId id;
  std::size_t card;
  bool operator==(const Axis&) const = default;
};

inline constexpr double kPmfSumTolerance = 1e-12;

/// Dense joint pmf over labeled axes; the last axis varies fastest.
class JointPmf {
 public:
  JointPmf() = default;
  /// Throws std::invalid_argument on duplicate labels, shape mismatch,
  /// negative weights or a total mass off by more than 1e-12.
  JointPmf(std::vector<Axis> axes, std::vector<double> weights);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }
  VarSet labels() const { return labels_; }

  std::optional<std::size_t> axis_index(VariableId id) const;
  /// Cardinality of a labeled axis; 0 when absent.
  std::size_t card(VariableId id) const;

  double at(std::initializer_list<std::size_t> index) const;

 private:
  std::vector<Axis> axes_;
  std::vector<double> weights_;
  VarSet labels_;
};

/// Sums out every axis not in `keep`; axis order is preserved.
JointPmf marginalize(const JointPmf& pmf, VarSet keep);

/// Entropy (bits) of a plain probability vector, with 0 log 0 = 0.
double entropy_of(const double* p, std::size_t n);

inline constexpr double kNegativeSlack = 1e-10;

/// Raised when a quantity that must be nonnegative comes out below -1e-10.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Memoized marginal entropies of one pmf. Holds a reference to the pmf.
///
/// Every information quantity is assembled from joint entropies:
///   H(A|C)   = H(A,C) - H(C)
///   I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
class EntropyTable {
 public:
  explicit EntropyTable(const JointPmf& pmf);
  EntropyTable(JointPmf&&) = delete;

  double entropy(VarSet vars);
  double conditional_entropy(VarSet vars, VarSet given);
  double mutual_information(VarSet a, VarSet b, VarSet given = {});

  /// Stores the marginal on `vars` so later entropies of its subsets are
  /// summed from it.
  void prime(VarSet vars);

 private:
  struct Marginal {
    VarSet vars;
    std::vector<Axis> axes;
    std::vector<double> weights;
  };

  double compute(VarSet vars);
  const std::vector<double>& store_marginal(VarSet vars);

  const JointPmf& pmf_;
  std::array<double, 256> cache_;
  std::array<bool, 256> known_{};
  // Marginals computed so far; each new one is summed from the smallest
  // stored superset rather than from the full joint.
  std::vector<Marginal> marginals_;
};

double entropy(const JointPmf& pmf, VarSet vars);
double conditional_entropy(const JointPmf& pmf, VarSet vars, VarSet given);
double conditional_mutual_information(const JointPmf& pmf, VarSet a, VarSet b, VarSet given = {});

}  // namespace cicpc

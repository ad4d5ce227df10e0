#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cicpc {

/// Raised for structurally malformed channel input (wrong shape, missing field).
class MalformedChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a channel is well formed but is not a valid conditional law.
class InvalidChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultAlphabetLimit = 4096;

/// Cardinalities of the five alphabets of the channel.
struct AlphabetSpec {
  std::size_t x1 = 1;
  std::size_t x2 = 1;
  std::size_t xr1 = 1;
  std::size_t y1 = 1;
  std::size_t y2 = 1;

  std::size_t inputs() const { return x1 * x2 * xr1; }
  std::size_t outputs() const { return y1 * y2; }
  std::size_t tensor_size() const { return inputs() * outputs(); }

  /// Throws MalformedChannel if any cardinality is zero or the dense
  /// tensor would exceed `limit` entries.
  void check(std::size_t limit = kDefaultAlphabetLimit) const;

  bool operator==(const AlphabetSpec&) const = default;
};

/// Dense transition law p(y1,y2 | x1,x2,xr1), row-major in that index order.
class ChannelLaw {
 public:
  ChannelLaw() = default;
  ChannelLaw(AlphabetSpec alphabets, std::vector<double> transition,
             std::size_t limit = kDefaultAlphabetLimit);

  const AlphabetSpec& alphabets() const { return alphabets_; }
  const std::vector<double>& transition() const { return transition_; }

  std::size_t input_index(std::size_t x1, std::size_t x2, std::size_t xr1) const {
    return (x1 * alphabets_.x2 + x2) * alphabets_.xr1 + xr1;
  }
  double operator()(std::size_t x1, std::size_t x2, std::size_t xr1, std::size_t y1,
                    std::size_t y2) const {
    return transition_[(input_index(x1, x2, xr1) * alphabets_.y1 + y1) * alphabets_.y2 + y2];
  }
  /// The (y1,y2) slice for one flat input index.
  const double* slice(std::size_t input) const {
    return transition_.data() + input * alphabets_.outputs();
  }

 private:
  AlphabetSpec alphabets_;
  std::vector<double> transition_;
};

struct ValidationResult {
  bool ok = true;
  double worst_deviation = 0.0;  // largest |slice sum - 1|
  std::string message;
};

inline constexpr double kSliceSumTolerance = 1e-12;

/// Checks that every conditional slice is a pmf. Never throws.
ValidationResult validate_channel(const ChannelLaw& law);

/// Like validate_channel but throws InvalidChannel on failure.
void require_valid(const ChannelLaw& law);

/// p(y1 | x1,x2,xr1) as a dense tensor indexed [x1][x2][xr1][y1].
std::vector<double> extract_y1_law(const ChannelLaw& law);

struct Y1Witness {
  std::size_t x1, x2, xr1, y1;
};

struct ClassificationReport {
  bool semideterministic = false;
  /// Deterministic map from flat input index to y1; present iff semideterministic.
  std::optional<std::vector<std::size_t>> y1_map;
  double semideterministic_deviation = 0.0;

  bool degraded = false;
  /// q(y2 | y1, xr1) indexed [y1][xr1][y2]; present iff degraded.
  std::optional<std::vector<double>> degrading_kernel;
  double degraded_deviation = 0.0;
  /// Input/output indices where the degrading factorization failed.
  std::optional<Y1Witness> degraded_witness;

  /// Largest of the two classifier deviations.
  double max_deviation = 0.0;
};

inline constexpr double kClassifierTolerance = 1e-9;

/// Fills the semideterministic fields of a report.
ClassificationReport classify_semideterministic(const ChannelLaw& law,
                                                double tol = kClassifierTolerance);

/// Fills the degradedness fields of a report. The degrading kernel is built
/// constructively: each (y1,xr1) row is read off the first input that reaches
/// y1 and checked against every other input that reaches it.
ClassificationReport classify_degraded(const ChannelLaw& law, double tol = kClassifierTolerance);

/// Both classifiers merged into one report.
ClassificationReport classify(const ChannelLaw& law, double tol = kClassifierTolerance);

}  // namespace cicpc

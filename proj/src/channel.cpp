#include "cicpc/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cicpc {

void AlphabetSpec::check(std::size_t limit) const {
  const std::array<std::pair<const char*, std::size_t>, 5> fields{
      {{"x1", x1}, {"x2", x2}, {"xr1", xr1}, {"y1", y1}, {"y2", y2}}};
  std::size_t product = 1;
  for (const auto& [name, card] : fields) {
    if (card == 0) throw MalformedChannel(std::string("alphabet '") + name + "' has cardinality 0");
    if (product > limit / card + 1) product = limit + 1;
    else product *= card;
  }
  if (product > limit) {
    std::ostringstream os;
    os << "alphabet product exceeds the dense tensor limit of " << limit;
    throw MalformedChannel(os.str());
  }
}

ChannelLaw::ChannelLaw(AlphabetSpec alphabets, std::vector<double> transition, std::size_t limit)
    : alphabets_(alphabets), transition_(std::move(transition)) {
  alphabets_.check(limit);
  if (transition_.size() != alphabets_.tensor_size()) {
    std::ostringstream os;
    os << "transition tensor has " << transition_.size() << " entries, alphabets require "
       << alphabets_.tensor_size();
    throw MalformedChannel(os.str());
  }
}

ValidationResult validate_channel(const ChannelLaw& law) {
  ValidationResult result;
  const auto& a = law.alphabets();
  if (law.transition().size() != a.tensor_size()) {
    result.ok = false;
    result.message = "dimension mismatch";
    return result;
  }
  const std::size_t width = a.outputs();
  for (std::size_t in = 0; in < a.inputs(); ++in) {
    const double* row = law.slice(in);
    double sum = 0.0;
    for (std::size_t k = 0; k < width; ++k) {
      if (!(row[k] >= 0.0) || !std::isfinite(row[k])) {
        result.ok = false;
        if (result.message.empty()) {
          std::ostringstream os;
          os << "negative or non-finite entry in input slice " << in;
          result.message = os.str();
        }
      }
      sum += row[k];
    }
    const double dev = std::abs(sum - 1.0);
    if (dev > result.worst_deviation) result.worst_deviation = dev;
    if (dev > kSliceSumTolerance && result.ok) {
      result.ok = false;
      std::ostringstream os;
      os << "input slice " << in << " sums to " << sum;
      result.message = os.str();
    }
  }
  return result;
}

void require_valid(const ChannelLaw& law) {
  const auto r = validate_channel(law);
  if (!r.ok) throw InvalidChannel(r.message);
}

std::vector<double> extract_y1_law(const ChannelLaw& law) {
  const auto& a = law.alphabets();
  std::vector<double> out(a.inputs() * a.y1, 0.0);
  for (std::size_t in = 0; in < a.inputs(); ++in) {
    const double* row = law.slice(in);
    for (std::size_t y1 = 0; y1 < a.y1; ++y1) {
      double s = 0.0;
      for (std::size_t y2 = 0; y2 < a.y2; ++y2) s += row[y1 * a.y2 + y2];
      out[in * a.y1 + y1] = s;
    }
  }
  return out;
}

ClassificationReport classify_semideterministic(const ChannelLaw& law, double tol) {
  const auto& a = law.alphabets();
  const auto y1_law = extract_y1_law(law);
  ClassificationReport report;
  std::vector<std::size_t> map(a.inputs(), 0);
  double worst = 0.0;
  for (std::size_t in = 0; in < a.inputs(); ++in) {
    for (std::size_t y1 = 0; y1 < a.y1; ++y1) {
      const double p = y1_law[in * a.y1 + y1];
      worst = std::max(worst, std::min(p, std::abs(1.0 - p)));
      if (p > 0.5) map[in] = y1;
    }
  }
  report.semideterministic_deviation = worst;
  report.semideterministic = worst <= tol;
  if (report.semideterministic) report.y1_map = std::move(map);
  report.max_deviation = worst;
  return report;
}

ClassificationReport classify_degraded(const ChannelLaw& law, double tol) {
  const auto& a = law.alphabets();
  const auto y1_law = extract_y1_law(law);
  ClassificationReport report;
  std::vector<double> kernel(a.y1 * a.xr1 * a.y2, 1.0 / static_cast<double>(a.y2));
  double worst = 0.0;
  std::optional<Y1Witness> witness;

  for (std::size_t y1 = 0; y1 < a.y1; ++y1) {
    for (std::size_t xr1 = 0; xr1 < a.xr1; ++xr1) {
      double* q = kernel.data() + (y1 * a.xr1 + xr1) * a.y2;
      // Candidate row from the input that reaches y1 most strongly; rows
      // never reached keep the uniform fill.
      double best = tol;
      for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
        for (std::size_t x2 = 0; x2 < a.x2; ++x2) {
          const std::size_t in = law.input_index(x1, x2, xr1);
          const double p1 = y1_law[in * a.y1 + y1];
          if (p1 <= best) continue;
          best = p1;
          for (std::size_t y2 = 0; y2 < a.y2; ++y2) q[y2] = law(x1, x2, xr1, y1, y2) / p1;
        }
      }
      // Residual of the factorization over every input, including those
      // with tiny p(y1|x), so the reconstruction is checked entrywise.
      for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
        for (std::size_t x2 = 0; x2 < a.x2; ++x2) {
          const std::size_t in = law.input_index(x1, x2, xr1);
          const double p1 = y1_law[in * a.y1 + y1];
          for (std::size_t y2 = 0; y2 < a.y2; ++y2) {
            const double dev = std::abs(law(x1, x2, xr1, y1, y2) - p1 * q[y2]);
            if (dev > worst) {
              worst = dev;
              if (dev > tol) witness = Y1Witness{x1, x2, xr1, y1};
            }
          }
        }
      }
    }
  }
  report.degraded_deviation = worst;
  report.degraded = worst <= tol;
  if (report.degraded) report.degrading_kernel = std::move(kernel);
  else report.degraded_witness = witness;
  report.max_deviation = worst;
  return report;
}

ClassificationReport classify(const ChannelLaw& law, double tol) {
  auto report = classify_semideterministic(law, tol);
  auto deg = classify_degraded(law, tol);
  report.degraded = deg.degraded;
  report.degrading_kernel = std::move(deg.degrading_kernel);
  report.degraded_deviation = deg.degraded_deviation;
  report.degraded_witness = deg.degraded_witness;
  report.max_deviation = std::max(report.semideterministic_deviation, report.degraded_deviation);
  return report;
}

}  // namespace cicpc

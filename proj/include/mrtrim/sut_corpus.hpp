#ifndef MRTRIM_SUT_CORPUS_HPP
#define MRTRIM_SUT_CORPUS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "mrtrim/errors.hpp"

namespace mrtrim {

// Built-in corpus of 25 list-to-scalar numeric methods with documented
// domain errors. Formulas and error conditions are listed in docs/methods.md.

enum class FailureKind {
  kDomainError,  // input outside the method's mathematical domain
  kArityError,   // fewer elements than the method needs
  kOverflow,     // arithmetic left the finite range (infinite result)
  kNonFinite,    // arithmetic produced NaN
  kTimeout,      // external SUT did not answer in time (external runs only)
};

inline const char* failure_kind_name(FailureKind k) {
  switch (k) {
    case FailureKind::kDomainError: return "DOMAIN_ERROR";
    case FailureKind::kArityError: return "ARITY_ERROR";
    case FailureKind::kOverflow: return "OVERFLOW";
    case FailureKind::kNonFinite: return "NONFINITE";
    case FailureKind::kTimeout: return "TIMEOUT";
  }
  return "?";
}

inline FailureKind failure_kind_from_name(const std::string& s) {
  for (FailureKind k : {FailureKind::kDomainError, FailureKind::kArityError,
                        FailureKind::kOverflow, FailureKind::kNonFinite,
                        FailureKind::kTimeout})
    if (s == failure_kind_name(k)) return k;
  throw SchemaError("unknown failure kind: '" + s + "'");
}

struct Failure {
  FailureKind kind = FailureKind::kDomainError;
  std::string message;

  friend bool operator==(const Failure& a, const Failure& b) {
    return a.kind == b.kind && a.message == b.message;
  }
};

/// Result of one SUT call: a finite value or a classified failure.
class ExecutionOutcome {
 public:
  ExecutionOutcome() : v_(0.0) {}

  /// Wraps a computed number, classifying non-finite results as failures so
  /// a Value is always finite.
  static ExecutionOutcome of(double value) {
    if (std::isnan(value))
      return fail(FailureKind::kNonFinite, "result is NaN");
    if (std::isinf(value))
      return fail(FailureKind::kOverflow, "result exceeds finite range");
    return ExecutionOutcome(value);
  }

  static ExecutionOutcome fail(FailureKind kind, std::string message) {
    ExecutionOutcome o;
    o.v_ = Failure{kind, std::move(message)};
    return o;
  }

  bool is_value() const { return std::holds_alternative<double>(v_); }
  double value() const { return std::get<double>(v_); }
  const Failure& failure() const { return std::get<Failure>(v_); }

  friend bool operator==(const ExecutionOutcome& a, const ExecutionOutcome& b) {
    return a.v_ == b.v_;
  }

 private:
  explicit ExecutionOutcome(double v) : v_(v) {}
  std::variant<double, Failure> v_;
};

struct MethodDescriptor {
  std::string name;
  std::size_t min_arity = 0;
  bool permutation_invariant = true;
  std::string domain_note;  // human-readable validity constraint
};

namespace corpus_detail {

using Values = std::span<const double>;

inline double sum_of(Values x) {
  double s = 0;
  for (double v : x) s += v;
  return s;
}

inline double mean_of(Values x) { return sum_of(x) / static_cast<double>(x.size()); }

inline double sum_sq_dev(Values x) {
  const double m = mean_of(x);
  double s = 0;
  for (double v : x) s += (v - m) * (v - m);
  return s;
}

inline ExecutionOutcome domain_fail(const std::string& msg) {
  return ExecutionOutcome::fail(FailureKind::kDomainError, msg);
}

// --- individual evaluators -------------------------------------------------

inline ExecutionOutcome eval_add_values(Values x) { return ExecutionOutcome::of(sum_of(x)); }

inline ExecutionOutcome eval_average(Values x) { return ExecutionOutcome::of(mean_of(x)); }

inline ExecutionOutcome eval_geometric_mean(Values x) {
  double log_sum = 0;
  for (double v : x) {
    if (v <= 0) return domain_fail("element <= 0");
    log_sum += std::log(v);
  }
  return ExecutionOutcome::of(std::exp(log_sum / static_cast<double>(x.size())));
}

inline ExecutionOutcome eval_harmonic_mean(Values x) {
  double recip_sum = 0;
  for (double v : x) {
    if (v == 0) return domain_fail("element is zero");
    recip_sum += 1.0 / v;
  }
  if (recip_sum == 0) return domain_fail("reciprocal sum is zero");
  return ExecutionOutcome::of(static_cast<double>(x.size()) / recip_sum);
}

inline ExecutionOutcome eval_sample_variance(Values x) {
  return ExecutionOutcome::of(sum_sq_dev(x) / static_cast<double>(x.size() - 1));
}

inline ExecutionOutcome eval_population_variance(Values x) {
  return ExecutionOutcome::of(sum_sq_dev(x) / static_cast<double>(x.size()));
}

inline ExecutionOutcome eval_standard_deviation(Values x) {
  return ExecutionOutcome::of(std::sqrt(sum_sq_dev(x) / static_cast<double>(x.size() - 1)));
}

// Sample excess kurtosis:
//   n(n+1)/((n-1)(n-2)(n-3)) * sum(((x-m)/s)^4) - 3(n-1)^2/((n-2)(n-3))
inline ExecutionOutcome eval_kurtosis(Values x) {
  const auto n = static_cast<double>(x.size());
  const double m = mean_of(x);
  const double s2 = sum_sq_dev(x) / (n - 1);
  if (s2 == 0) return domain_fail("zero variance");
  const double s = std::sqrt(s2);
  double q = 0;
  for (double v : x) {
    const double d = (v - m) / s;
    q += d * d * d * d;
  }
  const double coef = n * (n + 1) / ((n - 1) * (n - 2) * (n - 3));
  return ExecutionOutcome::of(coef * q - 3.0 * (n - 1) * (n - 1) / ((n - 2) * (n - 3)));
}

// Sample skewness: n/((n-1)(n-2)) * sum(((x-m)/s)^3)
inline ExecutionOutcome eval_skewness(Values x) {
  const auto n = static_cast<double>(x.size());
  const double m = mean_of(x);
  const double s2 = sum_sq_dev(x) / (n - 1);
  if (s2 == 0) return domain_fail("zero variance");
  const double s = std::sqrt(s2);
  double c = 0;
  for (double v : x) {
    const double d = (v - m) / s;
    c += d * d * d;
  }
  return ExecutionOutcome::of(n / ((n - 1) * (n - 2)) * c);
}

// Durbin-Watson statistic over the ordered series:
//   sum_{i>=2}((x_i - x_{i-1})^2) / sum(x_i^2)
inline ExecutionOutcome eval_durbin_watson(Values x) {
  double den = 0;
  for (double v : x) den += v * v;
  if (den == 0) return domain_fail("all elements are zero");
  double num = 0;
  for (std::size_t i = 1; i < x.size(); ++i) num += (x[i] - x[i - 1]) * (x[i] - x[i - 1]);
  return ExecutionOutcome::of(num / den);
}

inline ExecutionOutcome eval_min(Values x) {
  return ExecutionOutcome::of(*std::min_element(x.begin(), x.end()));
}

inline ExecutionOutcome eval_max(Values x) {
  return ExecutionOutcome::of(*std::max_element(x.begin(), x.end()));
}

inline ExecutionOutcome eval_range(Values x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return ExecutionOutcome::of(*hi - *lo);
}

inline ExecutionOutcome eval_median(Values x) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  if (n % 2 == 1) return ExecutionOutcome::of(sorted[n / 2]);
  return ExecutionOutcome::of((sorted[n / 2 - 1] + sorted[n / 2]) / 2.0);
}

inline ExecutionOutcome eval_product(Values x) {
  double p = 1;
  for (double v : x) p *= v;
  return ExecutionOutcome::of(p);
}

inline ExecutionOutcome eval_sum_of_squares(Values x) {
  double s = 0;
  for (double v : x) s += v * v;
  return ExecutionOutcome::of(s);
}

inline ExecutionOutcome eval_sum_of_logs(Values x) {
  double s = 0;
  for (double v : x) {
    if (v <= 0) return domain_fail("element <= 0");
    s += std::log(v);
  }
  return ExecutionOutcome::of(s);
}

inline ExecutionOutcome eval_mean_deviation(Values x) {
  const double m = mean_of(x);
  double s = 0;
  for (double v : x) s += std::abs(v - m);
  return ExecutionOutcome::of(s / static_cast<double>(x.size()));
}

inline ExecutionOutcome eval_root_mean_square(Values x) {
  double s = 0;
  for (double v : x) s += v * v;
  return ExecutionOutcome::of(std::sqrt(s / static_cast<double>(x.size())));
}

// Lag-1 autocorrelation: sum_{i>=2}((x_i-m)(x_{i-1}-m)) / sum((x_i-m)^2)
inline ExecutionOutcome eval_autocorrelation_lag1(Values x) {
  const double m = mean_of(x);
  const double den = sum_sq_dev(x);
  if (den == 0) return domain_fail("zero variance");
  double num = 0;
  for (std::size_t i = 1; i < x.size(); ++i) num += (x[i] - m) * (x[i - 1] - m);
  return ExecutionOutcome::of(num / den);
}

inline ExecutionOutcome eval_weighted_mean_equal_weights(Values x) {
  double num = 0, den = 0;
  for (double v : x) {
    num += v * 1.0;
    den += 1.0;
  }
  return ExecutionOutcome::of(num / den);
}

inline ExecutionOutcome eval_midrange(Values x) {
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return ExecutionOutcome::of((*lo + *hi) / 2.0);
}

// Mean after dropping floor(n/10) elements from each end of the sorted list.
inline ExecutionOutcome eval_trimmed_mean10(Values x) {
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t k = sorted.size() / 10;
  double s = 0;
  for (std::size_t i = k; i < sorted.size() - k; ++i) s += sorted[i];
  return ExecutionOutcome::of(s / static_cast<double>(sorted.size() - 2 * k));
}

inline ExecutionOutcome eval_coefficient_of_variation(Values x) {
  const double m = mean_of(x);
  if (m == 0) return domain_fail("zero mean");
  const double s = std::sqrt(sum_sq_dev(x) / static_cast<double>(x.size() - 1));
  return ExecutionOutcome::of(s / m);
}

// Telescoping sum of lag-1 differences: x_n - x_1.
inline ExecutionOutcome eval_lag1_difference_sum(Values x) {
  double s = 0;
  for (std::size_t i = 1; i < x.size(); ++i) s += x[i] - x[i - 1];
  return ExecutionOutcome::of(s);
}

struct Entry {
  MethodDescriptor descriptor;
  ExecutionOutcome (*fn)(Values);
};

inline const std::vector<Entry>& registry() {
  static const std::vector<Entry> table = {
      {{"add_values", 0, true, ""}, eval_add_values},
      {{"average", 1, true, ""}, eval_average},
      {{"geometric_mean", 1, true, "all elements must be > 0"}, eval_geometric_mean},
      {{"harmonic_mean", 1, true, "no element may be 0; reciprocal sum must not vanish"},
       eval_harmonic_mean},
      {{"sampleVariance", 2, true, ""}, eval_sample_variance},
      {{"populationVariance", 1, true, ""}, eval_population_variance},
      {{"standardDeviation", 2, true, ""}, eval_standard_deviation},
      {{"kurtosis", 4, true, "variance must be non-zero"}, eval_kurtosis},
      {{"skewness", 3, true, "variance must be non-zero"}, eval_skewness},
      {{"durbinWatson", 2, false, "some element must be non-zero"}, eval_durbin_watson},
      {{"min_value", 1, true, ""}, eval_min},
      {{"max_value", 1, true, ""}, eval_max},
      {{"range_value", 1, true, ""}, eval_range},
      {{"median", 1, true, ""}, eval_median},
      {{"product", 0, true, ""}, eval_product},
      {{"sumOfSquares", 1, true, ""}, eval_sum_of_squares},
      {{"sumOfLogs", 1, true, "all elements must be > 0"}, eval_sum_of_logs},
      {{"meanDeviation", 1, true, ""}, eval_mean_deviation},
      {{"rootMeanSquare", 1, true, ""}, eval_root_mean_square},
      {{"autoCorrelation_lag1", 2, false, "variance must be non-zero"},
       eval_autocorrelation_lag1},
      {{"weightedMeanEqualWeights", 1, true, ""}, eval_weighted_mean_equal_weights},
      {{"midrange", 1, true, ""}, eval_midrange},
      {{"trimmedMean10", 1, true, ""}, eval_trimmed_mean10},
      {{"coefficientOfVariation", 2, true, "mean must be non-zero"},
       eval_coefficient_of_variation},
      {{"lag1Difference_sum", 2, false, ""}, eval_lag1_difference_sum},
  };
  return table;
}

inline const Entry& find_entry(const std::string& name) {
  for (const Entry& e : registry())
    if (e.descriptor.name == name) return e;
  throw LookupError("unknown method: '" + name + "'");
}

}  // namespace corpus_detail

/// The full corpus in stable registration order.
inline std::vector<MethodDescriptor> list_methods() {
  std::vector<MethodDescriptor> out;
  out.reserve(corpus_detail::registry().size());
  for (const auto& e : corpus_detail::registry()) out.push_back(e.descriptor);
  return out;
}

inline const MethodDescriptor& method_descriptor(const std::string& name) {
  return corpus_detail::find_entry(name).descriptor;
}

inline bool has_method(const std::string& name) {
  for (const auto& e : corpus_detail::registry())
    if (e.descriptor.name == name) return true;
  return false;
}

/// Evaluates one corpus method. Pure: in-domain inputs produce a finite
/// Value, everything else a classified Failure. Unknown names throw
/// LookupError (a caller bug, not a trial outcome).
inline ExecutionOutcome evaluate(const std::string& name, std::span<const double> input) {
  const auto& entry = corpus_detail::find_entry(name);
  if (input.size() < entry.descriptor.min_arity)
    return ExecutionOutcome::fail(
        FailureKind::kArityError,
        "needs at least " + std::to_string(entry.descriptor.min_arity) + " elements, got " +
            std::to_string(input.size()));
  return entry.fn(input);
}

}  // namespace mrtrim

#endif  // MRTRIM_SUT_CORPUS_HPP

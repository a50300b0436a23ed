#ifndef CONTRA_INTERVAL_HPP_
#define CONTRA_INTERVAL_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "contra/posterior.hpp"

namespace contra {

// Equal-tailed credible interval of the relative difference in means,
// estimated from posterior draws at level 1 - alpha_dm.
struct CredibleInterval {
  double lo = 0.0;
  double hi = 0.0;
  double alpha_dm = 0.05;
  std::size_t k = 0;
  std::uint64_t seed = 0;
};

enum class Direction { decrease, increase, two_sided };

std::string_view to_string(Direction d);
// Accepts "decrease", "increase", "two-sided". Throws ArgumentError.
Direction parse_direction(std::string_view text);

// Threshold of meaningful effect. A decrease threshold is negative, an
// increase threshold positive, and a two-sided threshold is a positive
// magnitude. Zero is never valid.
struct ThresholdSpec {
  double value = 0.0;
  Direction direction = Direction::decrease;

  void validate() const;
};

struct TestOutcome {
  bool reject_null = false;
  double delta_l = 0.0;
  ThresholdSpec threshold;
};

// 1-based nearest rank ceil(k * p), clamped to [1, k].
std::size_t nearest_rank(std::size_t k, double p);

// Order statistics of `values` at the given 1-based ranks, via selection on a
// copy. `ranks` must be sorted ascending.
std::vector<double> order_statistics(std::span<const double> values,
                                     std::span<const std::size_t> ranks);

// Requires alpha_dm in (0, 1) and k * alpha_dm / 2 >= 1.
CredibleInterval credible_interval(std::span<const double> relative, double alpha_dm);
CredibleInterval credible_interval(const PosteriorDraws& draws, double alpha_dm);

// Interval plus the posterior median, from a single selection pass.
struct IntervalSummary {
  CredibleInterval interval;
  double median = 0.0;
};
IntervalSummary summarize_draws(const PosteriorDraws& draws, double alpha_dm);

double posterior_median(std::span<const double> relative);

// The value in [lo, hi] closest to zero: 0 if the interval touches or spans
// zero, lo if it lies above zero, hi if it lies below.
double score_delta_l(const CredibleInterval& ci);

// Strict comparison of delta_L against the threshold in its direction.
TestOutcome test_meaningful(const CredibleInterval& ci, const ThresholdSpec& threshold);
TestOutcome test_meaningful(double delta_l, const ThresholdSpec& threshold);

struct ScoredStudy {
  int id = 0;
  double delta_l = 0.0;
  double median = 0.0;

  friend bool operator==(const ScoredStudy&, const ScoredStudy&) = default;
};

// Ascending delta_L; ties by smaller |median|, then by id.
std::vector<ScoredStudy> rank_entries(std::vector<ScoredStudy> scores);

}  // namespace contra

#endif  // CONTRA_INTERVAL_HPP_

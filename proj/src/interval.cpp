#include "contra/interval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <tuple>

#include "contra/errors.hpp"

namespace contra {

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::decrease: return "decrease";
    case Direction::increase: return "increase";
    case Direction::two_sided: return "two-sided";
  }
  return "decrease";
}

Direction parse_direction(std::string_view text) {
  if (text == "decrease") return Direction::decrease;
  if (text == "increase") return Direction::increase;
  if (text == "two-sided") return Direction::two_sided;
  throw ArgumentError("unknown direction '" + std::string(text) + "'");
}

void ThresholdSpec::validate() const {
  if (!std::isfinite(value)) throw ArgumentError("threshold must be finite");
  if (value == 0.0) {
    throw ArgumentError("threshold must be nonzero; a point null is not supported");
  }
  if (direction == Direction::decrease && value > 0.0) {
    throw ArgumentError("a decrease threshold must be negative");
  }
  if (direction != Direction::decrease && value < 0.0) {
    throw ArgumentError("an increase or two-sided threshold must be positive");
  }
}

std::size_t nearest_rank(std::size_t k, double p) {
  const double r = static_cast<double>(k) * p;
  // Products such as 100 * 0.05 can land a rounding error above an integer.
  const double guarded = std::ceil(r - 1e-9 * std::max(1.0, r));
  const auto rank = guarded < 1.0 ? std::size_t{1} : static_cast<std::size_t>(guarded);
  return std::min(rank, k);
}

std::vector<double> order_statistics(std::span<const double> values,
                                     std::span<const std::size_t> ranks) {
  std::vector<double> work(values.begin(), values.end());
  std::vector<double> out;
  out.reserve(ranks.size());
  auto first = work.begin();
  for (std::size_t rank : ranks) {
    if (rank < 1 || rank > work.size()) throw ArgumentError("order statistic rank out of range");
    auto nth = work.begin() + static_cast<std::ptrdiff_t>(rank - 1);
    if (nth < first) throw ArgumentError("order statistic ranks must be ascending");
    std::nth_element(first, nth, work.end());
    out.push_back(*nth);
    first = nth;
  }
  return out;
}

namespace {

struct TailRanks {
  std::size_t lo;
  std::size_t hi;
};

TailRanks tail_ranks(std::size_t k, double alpha_dm) {
  if (!(alpha_dm > 0.0 && alpha_dm < 1.0)) {
    throw ArgumentError("alpha_dm must lie in (0, 1)");
  }
  const double tail = static_cast<double>(k) * alpha_dm / 2.0;
  if (tail < 1.0 - 1e-9) {
    throw ArgumentError("too few draws (" + std::to_string(k) +
                        ") to resolve a tail of alpha_dm/2 = " + std::to_string(alpha_dm / 2.0));
  }
  return {nearest_rank(k, alpha_dm / 2.0), nearest_rank(k, 1.0 - alpha_dm / 2.0)};
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DegenerateDrawError(std::string(what) +
                              " is not finite; the control mean posterior reaches zero");
  }
}

}  // namespace

CredibleInterval credible_interval(std::span<const double> relative, double alpha_dm) {
  const auto ranks = tail_ranks(relative.size(), alpha_dm);
  const std::array<std::size_t, 2> wanted{ranks.lo, ranks.hi};
  const auto stats = order_statistics(relative, wanted);
  require_finite(stats[0], "lower credible bound");
  require_finite(stats[1], "upper credible bound");
  CredibleInterval ci;
  ci.lo = stats[0];
  ci.hi = stats[1];
  ci.alpha_dm = alpha_dm;
  ci.k = relative.size();
  return ci;
}

CredibleInterval credible_interval(const PosteriorDraws& draws, double alpha_dm) {
  auto ci = credible_interval(draws.relative, alpha_dm);
  ci.k = draws.k;
  ci.seed = draws.seed;
  return ci;
}

IntervalSummary summarize_draws(const PosteriorDraws& draws, double alpha_dm) {
  const std::size_t k = draws.relative.size();
  const auto ranks = tail_ranks(k, alpha_dm);
  const std::array<std::size_t, 3> wanted{ranks.lo, nearest_rank(k, 0.5), ranks.hi};
  const auto stats = order_statistics(draws.relative, wanted);
  require_finite(stats[0], "lower credible bound");
  require_finite(stats[1], "posterior median");
  require_finite(stats[2], "upper credible bound");
  IntervalSummary out;
  out.interval = {stats[0], stats[2], alpha_dm, draws.k, draws.seed};
  out.median = stats[1];
  return out;
}

double posterior_median(std::span<const double> relative) {
  if (relative.empty()) throw ArgumentError("median of an empty sample");
  const std::array<std::size_t, 1> wanted{nearest_rank(relative.size(), 0.5)};
  return order_statistics(relative, wanted)[0];
}

double score_delta_l(const CredibleInterval& ci) {
  if (ci.lo > 0.0) return ci.lo;
  if (ci.hi < 0.0) return ci.hi;
  return 0.0;
}

TestOutcome test_meaningful(double delta_l, const ThresholdSpec& threshold) {
  threshold.validate();
  bool reject = false;
  switch (threshold.direction) {
    case Direction::increase: reject = delta_l > threshold.value; break;
    case Direction::decrease: reject = delta_l < threshold.value; break;
    case Direction::two_sided: reject = std::abs(delta_l) > threshold.value; break;
  }
  return {reject, delta_l, threshold};
}

TestOutcome test_meaningful(const CredibleInterval& ci, const ThresholdSpec& threshold) {
  return test_meaningful(score_delta_l(ci), threshold);
}

std::vector<ScoredStudy> rank_entries(std::vector<ScoredStudy> scores) {
  std::sort(scores.begin(), scores.end(), [](const ScoredStudy& a, const ScoredStudy& b) {
    return std::make_tuple(a.delta_l, std::abs(a.median), a.id) <
           std::make_tuple(b.delta_l, std::abs(b.median), b.id);
  });
  return scores;
}

}  // namespace contra

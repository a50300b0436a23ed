#ifndef CONTRA_POSTERIOR_HPP_
#define CONTRA_POSTERIOR_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "contra/random_stream.hpp"

namespace contra {

// Summary statistics of one study arm.
struct GroupSummary {
  double mean = 0.0;
  double sd = 0.0;
  int n = 0;

  // Throws ValidationError unless mean > 0, sd > 0 and n >= 2 (all finite).
  void validate(std::string_view label = "group") const;

  friend bool operator==(const GroupSummary&, const GroupSummary&) = default;
};

// How the chunked draw kernels are executed. Both policies produce
// bit-identical output; `serial` is the reference the parallel kernel is
// tested against.
enum class Execution { serial, parallel };

// Monte Carlo draws from the joint posterior of (mu_x, mu_y) and the derived
// relative difference in means (mu_y - mu_x) / mu_x.
struct PosteriorDraws {
  std::vector<double> mu_x;
  std::vector<double> mu_y;
  std::vector<double> relative;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  // Draws with mu_x <= 0. They are kept; the count is a stability diagnostic.
  std::size_t nonpositive_control = 0;

  double nonpositive_fraction() const {
    return k == 0 ? 0.0 : static_cast<double>(nonpositive_control) / static_cast<double>(k);
  }
};

// Fraction of nonpositive control-mean draws above which callers should warn.
inline constexpr double kNonpositiveControlWarnFraction = 0.001;

// K draws of sigma^2 ~ InvGamma((n-1)/2, (n-1) sd^2 / 2).
//
// Each draw is sd^2 times a unit-scale draw that depends only on (n, stream),
// so scaling sd by c scales every draw by c^2 under the same stream.
std::vector<double> draw_variances(const GroupSummary& group, std::size_t k,
                                   const RandomStream& stream,
                                   Execution exec = Execution::parallel);

// Draw i is Normal(group.mean, variances[i] / group.n).
std::vector<double> draw_means_given_variances(const GroupSummary& group,
                                               std::span<const double> variances,
                                               const RandomStream& stream,
                                               Execution exec = Execution::parallel);

// Composes the two samplers for each arm on independent sub-streams of `seed`
// and forms the relative difference per draw. Fully determined by
// (control, experiment, k, seed); the relative vector is computed from
// scale-free quantities so multiplying every measurement of both arms by a
// constant leaves it unchanged.
PosteriorDraws draw_relative_dm(const GroupSummary& control, const GroupSummary& experiment,
                                std::size_t k, std::uint64_t seed,
                                Execution exec = Execution::parallel);

namespace detail {

// Unit-scale inverse gamma draws ((n-1)/2) / Gamma((n-1)/2, 1).
std::vector<double> unit_variance_draws(int n, std::size_t k, const RandomStream& stream,
                                        Execution exec);

// Standard normal draws.
std::vector<double> standard_normal_draws(std::size_t k, const RandomStream& stream,
                                          Execution exec);

}  // namespace detail

}  // namespace contra

#endif  // CONTRA_POSTERIOR_HPP_

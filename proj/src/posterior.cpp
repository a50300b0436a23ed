#include "contra/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/random/gamma_distribution.hpp>
#include <boost/random/normal_distribution.hpp>

#include "contra/errors.hpp"

namespace contra {

void GroupSummary::validate(std::string_view label) const {
  const std::string who(label);
  if (!std::isfinite(mean) || mean <= 0.0) {
    throw ValidationError(who + ": mean must be a positive finite number");
  }
  if (!std::isfinite(sd) || sd <= 0.0) {
    throw ValidationError(who + ": standard deviation must be a positive finite number");
  }
  if (n < 2) {
    throw ValidationError(who + ": sample size below 2");
  }
}

namespace {

// Calls fill(chunk, begin, end) for every chunk of [0, k). The parallel
// branch distributes whole chunks; each chunk owns its engine and its output
// slice, so both branches write identical values.
template <class Fill>
void for_each_chunk(std::size_t k, Execution exec, Fill&& fill) {
  const std::size_t chunks = (k + kChunkSize - 1) / kChunkSize;
  if (exec == Execution::serial) {
    for (std::size_t c = 0; c < chunks; ++c) {
      fill(c, c * kChunkSize, std::min(k, (c + 1) * kChunkSize));
    }
    return;
  }
  const auto count = static_cast<std::int64_t>(chunks);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < count; ++c) {
    const auto chunk = static_cast<std::size_t>(c);
    fill(chunk, chunk * kChunkSize, std::min(k, (chunk + 1) * kChunkSize));
  }
}

template <class Op>
void for_each_index(std::size_t k, Execution exec, Op&& op) {
  for_each_chunk(k, exec, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) op(i);
  });
}

void require_draw_count(std::size_t k) {
  if (k == 0) throw ArgumentError("draw count must be at least 1");
}

}  // namespace

namespace detail {

std::vector<double> unit_variance_draws(int n, std::size_t k, const RandomStream& stream,
                                        Execution exec) {
  const double shape = 0.5 * static_cast<double>(n - 1);
  std::vector<double> out(k);
  for_each_chunk(k, exec, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto engine = stream.engine(chunk);
    boost::random::gamma_distribution<double> gamma(shape, 1.0);
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = shape / gamma(engine);
    }
  });
  return out;
}

std::vector<double> standard_normal_draws(std::size_t k, const RandomStream& stream,
                                          Execution exec) {
  std::vector<double> out(k);
  for_each_chunk(k, exec, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    auto engine = stream.engine(chunk);
    boost::random::normal_distribution<double> normal(0.0, 1.0);
    for (std::size_t i = begin; i < end; ++i) {
      out[i] = normal(engine);
    }
  });
  return out;
}

}  // namespace detail

std::vector<double> draw_variances(const GroupSummary& group, std::size_t k,
                                   const RandomStream& stream, Execution exec) {
  group.validate();
  require_draw_count(k);
  auto draws = detail::unit_variance_draws(group.n, k, stream, exec);
  const double sd2 = group.sd * group.sd;
  for_each_index(k, exec, [&](std::size_t i) { draws[i] *= sd2; });
  return draws;
}

std::vector<double> draw_means_given_variances(const GroupSummary& group,
                                               std::span<const double> variances,
                                               const RandomStream& stream, Execution exec) {
  group.validate();
  require_draw_count(variances.size());
  for (double v : variances) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ArgumentError("variances must be positive and finite");
    }
  }
  auto draws = detail::standard_normal_draws(variances.size(), stream, exec);
  const double n = static_cast<double>(group.n);
  for_each_index(draws.size(), exec, [&](std::size_t i) {
    draws[i] = group.mean + draws[i] * std::sqrt(variances[i] / n);
  });
  return draws;
}

PosteriorDraws draw_relative_dm(const GroupSummary& control, const GroupSummary& experiment,
                                std::size_t k, std::uint64_t seed, Execution exec) {
  control.validate("control");
  experiment.validate("experiment");
  require_draw_count(k);

  const RandomStream root(seed);
  const RandomStream control_stream = root.split("control");
  const RandomStream experiment_stream = root.split("experiment");

  const auto unit_x = detail::unit_variance_draws(control.n, k, control_stream.split("variance"), exec);
  const auto z_x = detail::standard_normal_draws(k, control_stream.split("mean"), exec);
  const auto unit_y = detail::unit_variance_draws(experiment.n, k, experiment_stream.split("variance"), exec);
  const auto z_y = detail::standard_normal_draws(k, experiment_stream.split("mean"), exec);

  PosteriorDraws out;
  out.k = k;
  out.seed = seed;
  out.mu_x.resize(k);
  out.mu_y.resize(k);
  out.relative.resize(k);

  const double sd2_x = control.sd * control.sd;
  const double sd2_y = experiment.sd * experiment.sd;
  const double n_x = static_cast<double>(control.n);
  const double n_y = static_cast<double>(experiment.n);
  // Scale-free inputs of the relative difference.
  const double cv_x = control.sd / control.mean;
  const double cv_y = experiment.sd / experiment.mean;
  const double ratio = experiment.mean / control.mean;

  for_each_index(k, exec, [&](std::size_t i) {
    out.mu_x[i] = control.mean + z_x[i] * std::sqrt(sd2_x * unit_x[i] / n_x);
    out.mu_y[i] = experiment.mean + z_y[i] * std::sqrt(sd2_y * unit_y[i] / n_y);
    const double rel_x = 1.0 + cv_x * (z_x[i] * std::sqrt(unit_x[i] / n_x));
    const double rel_y = 1.0 + cv_y * (z_y[i] * std::sqrt(unit_y[i] / n_y));
    out.relative[i] = ratio * rel_y / rel_x - 1.0;
  });

  out.nonpositive_control = static_cast<std::size_t>(
      std::count_if(out.mu_x.begin(), out.mu_x.end(), [](double m) { return m <= 0.0; }));
  return out;
}

}  // namespace contra

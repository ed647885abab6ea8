#include "airgeom/synthetic_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace airgeom {

void SimulationSpec::validate(const EnvironmentParams& env) const {
  if (realizations < 1)
    throw std::invalid_argument("SimulationSpec: realizations must be >= 1");
  if (!(r_max > env.r0))
    throw std::invalid_argument("SimulationSpec: r_max must exceed r0");
  if (noise_floor < 0.0)
    throw std::invalid_argument("SimulationSpec: noise_floor must be >= 0");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Compensated (Kahan) summation over a fixed index order.
double kahan_sum(const std::vector<double>& v) {
  double sum = 0.0, c = 0.0;
  for (double x : v) {
    const double y = x - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t realization) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ realization));
}

std::vector<double> sample_field(const EnvironmentParams& env,
                                 const SimulationSpec& spec,
                                 std::uint64_t realization) {
  spec.validate(env);
  std::mt19937_64 eng = make_stream(spec.rng_seed, realization);
  const double q0 = env.r0 * env.r0;
  const double span = spec.r_max * spec.r_max - q0;
  const double mean_count = env.lambda * kPi * span;
  std::poisson_distribution<std::int64_t> count(mean_count);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::int64_t n = count(eng);
  std::vector<double> radii(static_cast<std::size_t>(n));
  for (auto& r : radii) r = std::sqrt(q0 + unit(eng) * span);
  return radii;
}

namespace {

// Sum of c_eff * S * (r^2 + h^2)^(-alpha/2) over one field draw.
// Radii are generated as r^2 = r0^2 + u (r_max^2 - r0^2), so the link
// distance powers come straight from the uniforms without a sqrt.
double realization_total(const ModelParams& params,
                         const EnvironmentParams& env,
                         const ShadowingSpec& shadow,
                         const SimulationSpec& spec, double h, double alpha,
                         std::mt19937_64& eng, Eigen::ArrayXd& scratch) {
  const double q0 = env.r0 * env.r0;
  const double span = spec.r_max * spec.r_max - q0;
  std::poisson_distribution<std::int64_t> count(env.lambda * kPi * span);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(count(eng));
  if (n == 0) return spec.noise_floor;
  if (scratch.size() < n) scratch.resize(n);
  auto u = scratch.head(n);
  for (Eigen::Index i = 0; i < n; ++i) u[i] = unit(eng);
  const double h2 = h * h;
  Eigen::ArrayXd contrib = (q0 + h2 + u * span).pow(-0.5 * alpha);
  if (shadow.sigma_db > 0.0) {
    const double sigma_ln = shadow.sigma_db * std::log(10.0) / 10.0;
    std::normal_distribution<double> normal(0.0, 1.0);
    const double mu_ln = -0.5 * sigma_ln * sigma_ln;
    for (Eigen::Index i = 0; i < n; ++i)
      u[i] = mu_ln + sigma_ln * normal(eng);
    contrib *= u.exp();
  }
  return params.c_eff * contrib.sum() + spec.noise_floor;
}

}  // namespace

MonteCarloEstimate aggregate_interference(const ModelParams& params,
                                          const EnvironmentParams& env,
                                          const ShadowingSpec& shadow,
                                          const SimulationSpec& spec,
                                          double h) {
  spec.validate(env);
  if (shadow.sigma_db < 0.0)
    throw std::invalid_argument("ShadowingSpec: sigma_db must be >= 0");
  const double alpha = path_loss_exponent(params, h);
  const std::size_t n = spec.realizations;
  std::vector<double> totals(n);

  unsigned threads = spec.threads ? spec.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));
  auto worker = [&](std::size_t begin, std::size_t end) {
    Eigen::ArrayXd scratch;
    for (std::size_t i = begin; i < end; ++i) {
      std::mt19937_64 eng = make_stream(spec.rng_seed, i);
      totals[i] =
          realization_total(params, env, shadow, spec, h, alpha, eng, scratch);
    }
  };
  if (threads <= 1) {
    worker(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(n, begin + chunk);
      if (begin < end) pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  MonteCarloEstimate est;
  est.realizations = n;
  est.mean = kahan_sum(totals) / static_cast<double>(n);
  if (n > 1) {
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double d = totals[i] - est.mean;
      sq[i] = d * d;
    }
    const double var = kahan_sum(sq) / static_cast<double>(n - 1);
    est.std_error = std::sqrt(var / static_cast<double>(n));
  }
  return est;
}

double default_r_max(const ModelParams& params, const EnvironmentParams& env,
                     double h_min, double tail_fraction) {
  const double alpha = path_loss_exponent(params, h_min);
  if (alpha <= 2.0)
    throw DivergentIntegral("mean interference diverges for alpha <= 2");
  const double q0 = h_min * h_min + env.r0 * env.r0;
  // tail/total = ((R^2 + h^2)/(h^2 + r0^2))^(1 - alpha/2) = tail_fraction
  const double q = q0 * std::pow(tail_fraction, -2.0 / (alpha - 2.0));
  return std::sqrt(std::max(q - h_min * h_min, env.r0 * env.r0 * 4.0));
}

AltitudeProfile synthesize_profile(const ModelParams& params,
                                   const EnvironmentParams& env,
                                   const std::vector<double>& grid,
                                   double noise_floor, double jitter_db,
                                   std::uint64_t rng_seed,
                                   const std::string& band,
                                   const std::string& year) {
  if (grid.empty()) throw std::invalid_argument("synthesize_profile: empty grid");
  if (!std::is_sorted(grid.begin(), grid.end(),
                      [](double a, double b) { return a <= b; }))
    throw std::invalid_argument(
        "synthesize_profile: grid must be strictly increasing");
  AltitudeProfile prof;
  prof.band = band;
  prof.year = year;
  prof.source_unit = PowerUnit::Linear;
  std::mt19937_64 eng = make_stream(rng_seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (double h : grid) {
    double p = mean_interference(params, env, h) + noise_floor;
    if (jitter_db > 0.0) {
      const double db = 10.0 * std::log10(p) + jitter_db * normal(eng);
      p = std::pow(10.0, db / 10.0);
    }
    prof.bins.push_back({h, p});
  }
  return prof;
}

}  // namespace airgeom

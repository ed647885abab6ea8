#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "airgeom/core_model.hpp"
#include "airgeom/profile.hpp"

namespace airgeom {

/// Name of the per-realization stream scheme, recorded in output
/// metadata alongside every Monte Carlo result.
inline constexpr const char* kRngAlgorithm =
    "splitmix64-derived per-realization seeds, mt19937_64 streams";

/// Unit-mean lognormal shadowing. sigma_db = 0 disables shadowing.
/// With sigma_ln = sigma_db ln(10)/10 the log-domain location is
/// -sigma_ln^2/2 so that E[S] = 1.
struct ShadowingSpec {
  double sigma_db = 0.0;
};

struct SimulationSpec {
  std::size_t realizations = 100000;
  std::uint64_t rng_seed = 0;
  double r_max = 2000.0;      // finite truncation of the plane, m
  double noise_floor = 0.0;   // constant additive power, linear; 0 = none
  unsigned threads = 0;       // 0 = hardware concurrency

  void validate(const EnvironmentParams& env) const;
};

struct MonteCarloEstimate {
  double mean = 0.0;       // linear power
  double std_error = 0.0;  // sample std / sqrt(realizations)
  std::size_t realizations = 0;
};

/// Deterministic engine for one realization of one run. Streams for
/// distinct (seed, realization) pairs are independent, so results do
/// not depend on scheduling or thread count.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t realization);

/// One draw of the transmitter field: horizontal distances of a PPP of
/// density lambda restricted to the annulus [r0, r_max]. Point count is
/// Poisson(lambda pi (r_max^2 - r0^2)); radii have density proportional
/// to r.
std::vector<double> sample_field(const EnvironmentParams& env,
                                 const SimulationSpec& spec,
                                 std::uint64_t realization = 0);

/// Monte Carlo estimate of the aggregate interference at altitude h:
/// per realization, sum c_eff S (r^2 + h^2)^(-alpha(h)/2) over a fresh
/// field draw with independent unit-mean lognormal S per point, plus the
/// noise floor. Converges to mean_interference_truncated(.., r_max)
/// + noise_floor. Accumulation is compensated and indexed by
/// realization, so estimates are bit-identical across thread counts.
MonteCarloEstimate aggregate_interference(const ModelParams& params,
                                          const EnvironmentParams& env,
                                          const ShadowingSpec& shadow,
                                          const SimulationSpec& spec,
                                          double h);

/// Smallest r_max for which the analytic tail beyond it is below
/// tail_fraction of the full mean at altitude h_min (the worst case on
/// an increasing grid).
double default_r_max(const ModelParams& params, const EnvironmentParams& env,
                     double h_min, double tail_fraction = 1e-4);

/// Noiseless forward model on a grid, optionally perturbed by i.i.d.
/// zero-mean Gaussian jitter in the dB domain. jitter_db = 0 gives the
/// exact closed form plus noise floor.
AltitudeProfile synthesize_profile(const ModelParams& params,
                                   const EnvironmentParams& env,
                                   const std::vector<double>& grid,
                                   double noise_floor, double jitter_db,
                                   std::uint64_t rng_seed = 0,
                                   const std::string& band = "synthetic",
                                   const std::string& year = "0");

}  // namespace airgeom

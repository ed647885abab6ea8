#include "airgeom/estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace airgeom {

namespace {

void check_profile(const AltitudeProfile& profile) {
  if (profile.bins.size() < 3)
    throw InsufficientData("fit requires at least 3 altitude bins");
  for (std::size_t i = 0; i < profile.bins.size(); ++i) {
    if (!(profile.bins[i].mean_power > 0.0))
      throw std::invalid_argument("profile powers must be > 0");
    if (i > 0 &&
        !(profile.bins[i].altitude_m > profile.bins[i - 1].altitude_m))
      throw std::invalid_argument("profile altitudes must be strictly increasing");
  }
}

struct InnerSolve {
  double c_eff;
  double ssr;
};

// c_eff profiled out in closed form for fixed (beta, h0).
InnerSolve solve_scale(const Eigen::ArrayXd& y, const Eigen::ArrayXd& y_db,
                       const Eigen::ArrayXd& d, FitDomain domain) {
  InnerSolve out;
  if (domain == FitDomain::Db) {
    const Eigen::ArrayXd r = y_db - 10.0 * d.log10();
    const double offset = r.mean();
    out.c_eff = std::pow(10.0, offset / 10.0);
    out.ssr = (r - offset).square().sum();
  } else {
    const double num = (y * d).sum();
    const double den = d.square().sum();
    out.c_eff = num / den;
    out.ssr = (y - out.c_eff * d).square().sum();
  }
  return out;
}

}  // namespace

double profiled_scale(const AltitudeProfile& profile,
                      const LosTransition& transition,
                      const PathLossPair& pathloss,
                      const EnvironmentParams& env, FitDomain domain) {
  check_profile(profile);
  const Eigen::ArrayXd y = profile.powers();
  const Eigen::ArrayXd d =
      shape_function(transition, pathloss, env, profile.altitudes());
  return solve_scale(y, 10.0 * y.log10(), d, domain).c_eff;
}

FitResult fit_profile(const AltitudeProfile& profile,
                      const PathLossPair& pathloss,
                      const EnvironmentParams& env,
                      const FitOptions& options) {
  check_profile(profile);
  pathloss.validate();
  env.validate();

  const Eigen::ArrayXd h = profile.altitudes();
  Eigen::ArrayXd y = profile.powers();
  if (options.known_noise_floor) {
    y -= *options.known_noise_floor;
    if ((y <= 0.0).any())
      throw std::invalid_argument(
          "known_noise_floor leaves non-positive powers");
  }
  const Eigen::ArrayXd y_db = 10.0 * y.log10();

  const auto objective = [&](double beta, double h0) {
    const Eigen::ArrayXd d =
        shape_function(LosTransition{beta, h0}, pathloss, env, h);
    return solve_scale(y, y_db, d, options.domain);
  };

  FitResult result;
  result.fit_domain = options.domain;

  // Flat profile: beta is unidentifiable. Pin it at the lower bound with
  // h0 = 0 (the deterministic tie-break) and flag the result.
  const double db_span = y_db.maxCoeff() - y_db.minCoeff();
  const bool degenerate = db_span < 1e-9;

  const double log_bmin = std::log(options.beta_min);
  const double log_bmax = std::log(options.beta_max);

  double best_logb = log_bmin;
  double best_h0 = 0.0;
  double best_ssr = std::numeric_limits<double>::infinity();

  if (!degenerate) {
    // Coarse grid. Scan order (beta ascending, |h0| ascending) plus
    // strict-improvement acceptance implements the tie-break: smaller
    // beta, then smaller |h0|.
    std::vector<double> h0_grid(static_cast<std::size_t>(options.h0_grid_points));
    for (int j = 0; j < options.h0_grid_points; ++j)
      h0_grid[static_cast<std::size_t>(j)] =
          options.h0_min + (options.h0_max - options.h0_min) * j /
                               (options.h0_grid_points - 1);
    std::stable_sort(h0_grid.begin(), h0_grid.end(),
                     [](double a, double b) { return std::abs(a) < std::abs(b); });

    for (int i = 0; i < options.beta_grid_points; ++i) {
      const double logb = log_bmin + (log_bmax - log_bmin) * i /
                                         (options.beta_grid_points - 1);
      const double beta = std::exp(logb);
      for (double h0 : h0_grid) {
        const InnerSolve s = objective(beta, h0);
        if (s.ssr < best_ssr) {
          best_ssr = s.ssr;
          best_logb = logb;
          best_h0 = h0;
        }
      }
    }

    // Nelder-Mead refinement in (log beta, h0), clamped to the search box.
    using Point = std::array<double, 2>;
    const auto clamp_point = [&](Point p) {
      p[0] = std::clamp(p[0], log_bmin, log_bmax);
      p[1] = std::clamp(p[1], options.h0_min, options.h0_max);
      return p;
    };
    const auto eval = [&](const Point& p) {
      return objective(std::exp(p[0]), p[1]).ssr;
    };

    const double step_b = (log_bmax - log_bmin) / (4.0 * options.beta_grid_points);
    const double step_h = (options.h0_max - options.h0_min) /
                          (4.0 * options.h0_grid_points);
    std::array<Point, 3> simplex = {
        clamp_point({best_logb, best_h0}),
        clamp_point({best_logb + step_b, best_h0}),
        clamp_point({best_logb, best_h0 + step_h})};
    std::array<double, 3> f;
    for (int i = 0; i < 3; ++i) f[static_cast<std::size_t>(i)] = eval(simplex[static_cast<std::size_t>(i)]);

    for (int iter = 0; iter < 600; ++iter) {
      std::array<int, 3> order = {0, 1, 2};
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return f[static_cast<std::size_t>(a)] < f[static_cast<std::size_t>(b)]; });
      const Point& lo = simplex[static_cast<std::size_t>(order[0])];
      const Point& mid = simplex[static_cast<std::size_t>(order[1])];
      Point& hi = simplex[static_cast<std::size_t>(order[2])];
      const double diam =
          std::max({std::abs(lo[0] - hi[0]), std::abs(lo[1] - hi[1]),
                    std::abs(mid[0] - hi[0]), std::abs(mid[1] - hi[1])});
      if (diam < options.refine_tol) break;

      const Point centroid = {0.5 * (lo[0] + mid[0]), 0.5 * (lo[1] + mid[1])};
      const auto blend = [&](double t) {
        return clamp_point({centroid[0] + t * (centroid[0] - hi[0]),
                            centroid[1] + t * (centroid[1] - hi[1])});
      };
      const Point refl = blend(1.0);
      const double f_refl = eval(refl);
      if (f_refl < f[static_cast<std::size_t>(order[0])]) {
        const Point exp_p = blend(2.0);
        const double f_exp = eval(exp_p);
        if (f_exp < f_refl) { hi = exp_p; f[static_cast<std::size_t>(order[2])] = f_exp; }
        else { hi = refl; f[static_cast<std::size_t>(order[2])] = f_refl; }
      } else if (f_refl < f[static_cast<std::size_t>(order[1])]) {
        hi = refl;
        f[static_cast<std::size_t>(order[2])] = f_refl;
      } else {
        const Point contr = blend(f_refl < f[static_cast<std::size_t>(order[2])] ? 0.5 : -0.5);
        const double f_contr = eval(contr);
        if (f_contr < f[static_cast<std::size_t>(order[2])]) {
          hi = contr;
          f[static_cast<std::size_t>(order[2])] = f_contr;
        } else {
          // Shrink toward the best vertex.
          for (int k = 1; k < 3; ++k) {
            auto& p = simplex[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])];
            p = clamp_point({0.5 * (p[0] + lo[0]), 0.5 * (p[1] + lo[1])});
            f[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = eval(p);
          }
        }
      }
    }
    for (int i = 0; i < 3; ++i) {
      // Refinement never returns a worse objective than the coarse best.
      if (f[static_cast<std::size_t>(i)] < best_ssr) {
        best_ssr = f[static_cast<std::size_t>(i)];
        best_logb = simplex[static_cast<std::size_t>(i)][0];
        best_h0 = simplex[static_cast<std::size_t>(i)][1];
      }
    }
  }

  const double beta_hat = degenerate ? options.beta_min : std::exp(best_logb);
  const double h0_hat = degenerate ? 0.0 : best_h0;
  const InnerSolve final_solve = objective(beta_hat, h0_hat);

  result.params.transition = {beta_hat, h0_hat};
  result.params.pathloss = pathloss;
  result.params.c_eff = final_solve.c_eff;
  result.objective = final_solve.ssr;
  result.degenerate = degenerate;
  result.c_tilde = frequency_normalized_activity(final_solve.c_eff, env);

  const Eigen::ArrayXd predicted = mean_interference(result.params, env, h);
  const PairedSeries series{y, predicted};
  result.rmse_db = rmse_db(series);
  result.r2_lin = r_squared(series, MetricDomain::Linear);
  result.r2_db = r_squared(series, MetricDomain::Db);
  return result;
}

}  // namespace airgeom

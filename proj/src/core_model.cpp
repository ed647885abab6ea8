#include "airgeom/core_model.hpp"

#include <cmath>
#include <vector>

namespace airgeom {

void LosTransition::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw std::invalid_argument("LosTransition: beta must be finite and >= 0");
  if (!std::isfinite(h0))
    throw std::invalid_argument("LosTransition: h0 must be finite");
}

void PathLossPair::validate() const {
  if (!(alpha_los > 2.0) || !(alpha_los <= alpha_nlos))
    throw std::invalid_argument(
        "PathLossPair: require 2 < alpha_los <= alpha_nlos");
  if (!std::isfinite(alpha_nlos))
    throw std::invalid_argument("PathLossPair: alpha_nlos must be finite");
}

void EnvironmentParams::validate() const {
  if (!(lambda > 0.0) || !(r0 > 0.0) || !(g_t > 0.0) || !(g_r > 0.0) ||
      !(f_c > 0.0))
    throw std::invalid_argument(
        "EnvironmentParams: lambda, r0, g_t, g_r, f_c must all be > 0");
}

void ModelParams::validate() const {
  transition.validate();
  pathloss.validate();
  if (!(c_eff > 0.0))
    throw std::invalid_argument("ModelParams: c_eff must be > 0");
}

double los_probability(const LosTransition& transition, double h) {
  const double t = transition.beta * (h - transition.h0);
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

Eigen::ArrayXd los_probability(const LosTransition& transition,
                               const Eigen::ArrayXd& h) {
  return h.unaryExpr(
      [&](double hi) { return los_probability(transition, hi); });
}

static double interpolate_exponent(const PathLossPair& pl, double p_los) {
  return pl.alpha_nlos - (pl.alpha_nlos - pl.alpha_los) * p_los;
}

double path_loss_exponent(const ModelParams& params, double h) {
  return interpolate_exponent(params.pathloss,
                              los_probability(params.transition, h));
}

Eigen::ArrayXd path_loss_exponent(const ModelParams& params,
                                  const Eigen::ArrayXd& h) {
  return h.unaryExpr([&](double hi) { return path_loss_exponent(params, hi); });
}

static double mean_from_exponent(double lambda, double c_eff, double r0,
                                 double h, double alpha) {
  if (alpha <= 2.0)
    throw DivergentIntegral("mean interference diverges for alpha <= 2");
  const double q = h * h + r0 * r0;
  return 2.0 * kPi * lambda * c_eff * std::pow(q, 1.0 - 0.5 * alpha) /
         (alpha - 2.0);
}

double mean_interference(const ModelParams& params,
                         const EnvironmentParams& env, double h) {
  return mean_from_exponent(env.lambda, params.c_eff, env.r0, h,
                            path_loss_exponent(params, h));
}

Eigen::ArrayXd mean_interference(const ModelParams& params,
                                 const EnvironmentParams& env,
                                 const Eigen::ArrayXd& h) {
  return h.unaryExpr(
      [&](double hi) { return mean_interference(params, env, hi); });
}

double mean_interference_truncated(const ModelParams& params,
                                   const EnvironmentParams& env, double h,
                                   double r_max) {
  const double alpha = path_loss_exponent(params, h);
  if (alpha <= 2.0)
    throw DivergentIntegral("mean interference diverges for alpha <= 2");
  const double e = 1.0 - 0.5 * alpha;
  const double scale = 2.0 * kPi * env.lambda * params.c_eff / (alpha - 2.0);
  return scale *
         (std::pow(h * h + env.r0 * env.r0, e) -
          std::pow(h * h + r_max * r_max, e));
}

namespace {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1] (positive half).
constexpr double kKronrodNodes[8] = {
    0.000000000000000, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813};
constexpr double kKronrodWeights[8] = {
    0.209482141084728, 0.204432940075298, 0.190350578064785,
    0.169004726639267, 0.140653259715525, 0.104790010322250,
    0.063092092629979, 0.022935322010529};
constexpr double kGaussWeights[8] = {
    0.417959183673469, 0.0, 0.381830050505119, 0.0,
    0.279705391489277, 0.0, 0.129484966168870, 0.0};

template <class F>
double gk15(const F& f, double a, double b, double& err) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double gauss = kGaussWeights[0] * f0;
  double kronrod = kKronrodWeights[0] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kKronrodNodes[i];
    const double fi = f(mid + dx) + f(mid - dx);
    gauss += kGaussWeights[i] * fi;
    kronrod += kKronrodWeights[i] * fi;
  }
  gauss *= half;
  kronrod *= half;
  err = std::abs(kronrod - gauss);
  return kronrod;
}

struct Interval {
  double a, b, value, error;
};

template <class F>
double integrate_adaptive(const F& f, double a, double b, double rel_tol) {
  constexpr int kMaxIntervals = 4000;
  double err0;
  const double whole = gk15(f, a, b, err0);
  std::vector<Interval> stack;
  stack.push_back({a, b, whole, err0});
  double total = whole;
  double total_err = err0;
  int splits = 0;
  while (total_err > rel_tol * std::abs(total)) {
    if (++splits > kMaxIntervals)
      throw QuadratureNonConvergence(
          "adaptive quadrature exceeded the interval budget");
    // Split the interval with the largest error estimate.
    std::size_t worst = 0;
    for (std::size_t i = 1; i < stack.size(); ++i)
      if (stack[i].error > stack[worst].error) worst = i;
    const Interval iv = stack[worst];
    stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(worst));
    const double mid = 0.5 * (iv.a + iv.b);
    double el, er;
    const double left = gk15(f, iv.a, mid, el);
    const double right = gk15(f, mid, iv.b, er);
    total += left + right - iv.value;
    total_err += el + er - iv.error;
    stack.push_back({iv.a, mid, left, el});
    stack.push_back({mid, iv.b, right, er});
  }
  // Re-sum for a deterministic, refinement-order-insensitive result.
  double sum = 0.0;
  for (const Interval& iv : stack) sum += iv.value;
  return sum;
}

}  // namespace

double mean_interference_quadrature(const ModelParams& params,
                                    const EnvironmentParams& env, double h,
                                    double rel_tol) {
  if (!(rel_tol > 0.0) || rel_tol > 1e-3)
    throw std::invalid_argument("rel_tol must be in (0, 1e-3]");
  const double alpha = path_loss_exponent(params, h);
  if (alpha <= 2.0)
    throw DivergentIntegral("mean interference diverges for alpha <= 2");
  const double scale = 2.0 * kPi * env.lambda * params.c_eff;
  const double q0 = h * h + env.r0 * env.r0;
  // Truncation radius from the tail-fraction identity
  //   tail/total = ((R^2 + h^2) / (h^2 + r0^2))^(1 - alpha/2),
  // targeting tail < rel_tol / 10 of the total.
  const double frac = rel_tol / 10.0;
  const double q_star = q0 * std::pow(frac, -2.0 / (alpha - 2.0));
  const double r_star = std::sqrt(std::max(q_star - h * h, env.r0 * env.r0));
  const auto integrand = [&](double r) {
    return std::pow(r * r + h * h, -0.5 * alpha) * r;
  };
  const double body =
      integrate_adaptive(integrand, env.r0, r_star, rel_tol / 4.0);
  const double tail =
      std::pow(r_star * r_star + h * h, 1.0 - 0.5 * alpha) / (alpha - 2.0);
  return scale * (body + tail);
}

double shape_function(const LosTransition& transition,
                      const PathLossPair& pathloss,
                      const EnvironmentParams& env, double h) {
  ModelParams unit{transition, 1.0, pathloss};
  return mean_interference(unit, env, h);
}

Eigen::ArrayXd shape_function(const LosTransition& transition,
                              const PathLossPair& pathloss,
                              const EnvironmentParams& env,
                              const Eigen::ArrayXd& h) {
  ModelParams unit{transition, 1.0, pathloss};
  return mean_interference(unit, env, h);
}

double frequency_normalized_activity(double c_eff,
                                     const EnvironmentParams& env) {
  const double k = 4.0 * kPi * env.f_c / kSpeedOfLight;
  return c_eff * k * k / (env.g_t * env.g_r);
}

double activity_from_normalized(double c_tilde, const EnvironmentParams& env) {
  const double k = 4.0 * kPi * env.f_c / kSpeedOfLight;
  return c_tilde * env.g_t * env.g_r / (k * k);
}

}  // namespace airgeom

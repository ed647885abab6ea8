#include <cmath>

#include "airgeom/synthetic_field.hpp"
#include "airgeom/transfer.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace airgeom;

namespace {

AltitudeProfile noiseless_profile(const ModelParams& params,
                                  const EnvironmentParams& env) {
  return synthesize_profile(params, env, fixtures::standard_grid(), 0.0, 0.0);
}

}  // namespace

TEST_CASE("two-point calibration") {
  const EnvironmentParams env = fixtures::standard_env();
  const PathLossPair pl = fixtures::standard_pathloss();

  SUBCASE("noiseless round trip at the published calibration bins") {
    const ModelParams truth{{0.08, 23.7}, 2.48, pl};
    const AltitudeProfile prof = noiseless_profile(truth, env);
    const TransferSpec spec{40.0, 100.0, 23.7};
    const TwoPointCalibration cal = two_point_calibrate(prof, spec, pl, env);
    CHECK(std::abs(cal.beta_hat / 0.08 - 1.0) <= 1e-6);
    CHECK(std::abs(cal.c_eff_hat / 2.48 - 1.0) <= 1e-10);
    CHECK(!cal.boundary);

    // The transferred curve passes through both calibration bins.
    const ModelParams transferred{{cal.beta_hat, spec.reference_h0},
                                  cal.c_eff_hat, pl};
    const double y1 = mean_interference(truth, env, 40.0);
    const double y2 = mean_interference(truth, env, 100.0);
    CHECK(mean_interference(transferred, env, 40.0) ==
          doctest::Approx(y1).epsilon(1e-10));
    CHECK(mean_interference(transferred, env, 100.0) ==
          doctest::Approx(y2).epsilon(1e-8));
  }

  SUBCASE("interior recovery across the published transitions") {
    for (const char* band : {"LTE B13 DL", "5G n5 DL"}) {
      const auto& row = fixtures::row("2025", band);
      const ModelParams truth{{row.beta, row.h0}, 1.7, pl};
      const AltitudeProfile prof = noiseless_profile(truth, env);
      const TransferSpec spec{40.0, 100.0, row.h0};
      const TwoPointCalibration cal = two_point_calibrate(prof, spec, pl, env);
      CHECK(std::abs(cal.beta_hat / row.beta - 1.0) <= 1e-6);
      CHECK(std::abs(cal.c_eff_hat / 1.7 - 1.0) <= 1e-10);
    }
  }

  SUBCASE("equal observations admit an exact interior slope") {
    // With h0 between the bins, the shape function rises then decays, so
    // D(40)=D(100) has an exact interior solution and no boundary flag.
    AltitudeProfile prof;
    for (double h : fixtures::standard_grid()) prof.bins.push_back({h, 2.0});
    const TransferSpec spec{40.0, 100.0, 70.0};
    const TwoPointCalibration cal = two_point_calibrate(prof, spec, pl, env);
    CHECK(!cal.boundary);
    const LosTransition t{cal.beta_hat, spec.reference_h0};
    CHECK(shape_function(t, pl, env, 40.0) ==
          doctest::Approx(shape_function(t, pl, env, 100.0)).epsilon(1e-8));
  }

  SUBCASE("unattainable log-ratio pins beta at a bound with a flag") {
    AltitudeProfile prof;
    for (double h : fixtures::standard_grid())
      prof.bins.push_back({h, h == 40.0 ? 1e6 : 1.0});
    const TransferSpec spec{40.0, 100.0, 70.0};
    const TwoPointCalibration cal = two_point_calibrate(prof, spec, pl, env);
    CHECK(cal.boundary);
  }

  SUBCASE("scaling both observations leaves beta unchanged") {
    const ModelParams truth{{0.16, 19.3}, 1.0, pl};
    AltitudeProfile prof = noiseless_profile(truth, env);
    const TransferSpec spec{40.0, 100.0, 19.3};
    const TwoPointCalibration base = two_point_calibrate(prof, spec, pl, env);
    for (ProfileBin& b : prof.bins) b.mean_power *= 12.5;
    const TwoPointCalibration scaled = two_point_calibrate(prof, spec, pl, env);
    CHECK(scaled.beta_hat == doctest::Approx(base.beta_hat).epsilon(1e-12));
    CHECK(scaled.c_eff_hat ==
          doctest::Approx(12.5 * base.c_eff_hat).epsilon(1e-12));
  }

  SUBCASE("missing calibration bin") {
    const ModelParams truth{{0.08, 23.7}, 1.0, pl};
    const AltitudeProfile prof = noiseless_profile(truth, env);
    const TransferSpec spec{42.0, 100.0, 23.7};
    CHECK_THROWS_AS(two_point_calibrate(prof, spec, pl, env), MissingBin);
  }
}

TEST_CASE("transfer evaluation") {
  const EnvironmentParams env = fixtures::standard_env();
  const PathLossPair pl = fixtures::standard_pathloss();

  SUBCASE("self-transfer scores exactly one") {
    const ModelParams truth{{0.08, 14.3}, 1.11, pl};
    AltitudeProfile prof = synthesize_profile(
        truth, env, fixtures::standard_grid(), 0.0, 0.4, 23);
    const FitResult direct = fit_profile(prof, pl, env);
    const TransferResult self =
        evaluate_transfer(prof, direct.params, direct, env);
    CHECK(self.transfer_score == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(self.delta_rmse_db == doctest::Approx(0.0).epsilon(1e-12));
  }

  SUBCASE("score consistency identity") {
    const ModelParams truth{{0.08, 14.3}, 1.0, pl};
    const ModelParams drifted{{0.08, 23.7}, 2.2, pl};
    AltitudeProfile target = synthesize_profile(
        drifted, env, fixtures::standard_grid(), 0.0, 0.3, 5);
    const FitResult direct = fit_profile(target, pl, env);
    const TransferSpec spec{40.0, 100.0, truth.transition.h0};
    const TwoPointCalibration cal = two_point_calibrate(target, spec, pl, env);
    const ModelParams transferred{{cal.beta_hat, spec.reference_h0},
                                  cal.c_eff_hat, pl};
    const TransferResult result =
        evaluate_transfer(target, transferred, direct, env);
    CHECK(result.transfer_score * direct.rmse_db ==
          doctest::Approx(result.rmse_db).epsilon(1e-12));
    CHECK(result.delta_rmse_db ==
          doctest::Approx(result.rmse_db - direct.rmse_db).epsilon(1e-12));
  }

  SUBCASE("perfect direct fit gives the infinite-score sentinel") {
    const ModelParams truth{{0.08, 23.7}, 1.0, pl};
    const AltitudeProfile prof = noiseless_profile(truth, env);
    const FitResult direct = fit_profile(prof, pl, env);
    const ModelParams off{{0.2, 23.7}, 1.0, pl};
    const TransferResult result = evaluate_transfer(prof, off, direct, env);
    if (direct.rmse_db == 0.0) {
      CHECK(result.score_infinite);
      CHECK(std::isinf(result.transfer_score));
    } else {
      CHECK(result.transfer_score > 1.0);
    }
  }

  SUBCASE("published transfer triples satisfy the score identity") {
    // Score * direct RMSE == transfer RMSE and dRMSE == difference, to
    // published rounding, for the bands whose direct 2025 fits are also
    // published.
    struct Pair { const char* band; double direct_rmse; };
    for (const Pair p : {Pair{"LTE B13 DL", 1.98}, Pair{"5G n5 DL", 1.95},
                         Pair{"CBRS", 0.44}}) {
      for (const auto& row : fixtures::transfer_rows()) {
        if (row.band != p.band) continue;
        CHECK(std::abs(row.score * p.direct_rmse - row.rmse_db) <= 0.01 +
              p.direct_rmse * 0.005);
        CHECK(std::abs((row.rmse_db - p.direct_rmse) - row.delta_rmse_db) <=
              0.01 + 1e-9);
      }
    }
  }

  SUBCASE("wrong-H0 robustness on a low-dynamic-range profile") {
    const auto& row = fixtures::row("2025", "CBRS");
    const ModelParams truth{{row.beta, row.h0},
                            activity_from_normalized(row.c_tilde,
                                                     fixtures::standard_env()),
                            pl};
    const AltitudeProfile prof = noiseless_profile(truth, env);
    // The CBRS-like profile spans under 5 dB.
    const Eigen::ArrayXd y_db = 10.0 * prof.powers().log10();
    CHECK(y_db.maxCoeff() - y_db.minCoeff() < 5.0);

    const FitResult direct = fit_profile(prof, pl, env);
    // The transferred break altitude comes from the reference-year
    // (2024) CBRS fit, as in the published 40 m / 100 m calibration.
    const double h0_ref = fixtures::row("2024", "CBRS").h0;
    double rmse_ref = -1.0;
    for (double dh0 : {0.0, -50.0, 50.0}) {
      const TransferSpec spec{40.0, 100.0, h0_ref + dh0};
      const TwoPointCalibration cal = two_point_calibrate(prof, spec, pl, env);
      const ModelParams transferred{{cal.beta_hat, spec.reference_h0},
                                    cal.c_eff_hat, pl};
      const TransferResult result =
          evaluate_transfer(prof, transferred, direct, env);
      if (dh0 == 0.0) rmse_ref = result.rmse_db;
      else CHECK(std::abs(result.rmse_db - rmse_ref) < 0.5);
    }
  }
}

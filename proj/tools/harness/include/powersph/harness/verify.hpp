#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace powersph::harness {

struct VerifyCell {
  std::size_t d;
  double kappa;
};

struct VerifyConfig {
  std::vector<VerifyCell> cells{{2, 1.0}, {3, 0.0}, {3, 2.0}, {5, 7.0}, {64, 100.0}};
  std::vector<double> kappa_q{1.0, 5.0};  // vMF concentrations for kl_vmf rows (d = 3 cells)
  std::size_t n_samples = 1'000'000;
  std::size_t n_gradient = 100'000;
  std::size_t roundtrip_points = 1000;
  double roundtrip_tol = 1e-9;
  std::uint64_t seed = 0;
};

/// One check. MC rows pass iff |closed_form - mc_estimate| <= 3 mc_se (with
/// a 1e-9 floor for zero-variance estimators). The cdf_roundtrip row is
/// deterministic: mc_estimate is the largest |F(F^-1(y)) - y| over the
/// grid, closed_form is 0, mc_se is 0 and the tolerance is roundtrip_tol.
struct VerificationRow {
  std::string quantity;
  std::size_t d;
  double kappa;
  double kappa_q = std::numeric_limits<double>::quiet_NaN();
  double closed_form;
  double mc_estimate;
  double mc_se;
  bool pass;
};

/// Row order per cell: mean; covariance (upper triangle row-major for
/// d <= 5, otherwise one trace row); entropy; kl_uniform; kl_vmf (d = 3
/// only, for each kappa_q the aligned then the anti-aligned mu_q);
/// cdf_roundtrip; gradient (mean d(mu^T x)/dkappa vs 2 beta/(alpha+beta)^2).
std::vector<VerificationRow> run_verification(const VerifyConfig& config);

}  // namespace powersph::harness

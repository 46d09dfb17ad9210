#pragma once

#include <cstdint>
#include <optional>
#include <utility>

namespace cvlab {

/// Empirical constants. The theory only asserts that they exist, so they
/// are fitted on calibration grids (the acceptance suite re-derives both):
///  - llt_c0: sup_r r^{3/2} sup_t |p_r(t) - g_r(t)|, observed to increase
///    towards ~0.1995 over r in [2, 5000];
///  - large_m_c: max of |Cov - M| sqrt(n) m^{3/2} over 2 <= m <= n/3, m | n,
///    n <= 3000 (observed 0.0815 at n = 60, m = 20), rounded up.
struct AsymptoticConstants {
  double llt_c0 = 0.2;
  double large_m_c = 0.1;
};

/// g_r(t) = sqrt(2 / (pi r)) exp(-(2t - r)^2 / (2r)).
double gaussian_proxy(double r, double t);

/// max_{0 <= t <= r} |2^-r C(r, t) - g_r(t)|, masses from exact binomials.
double llt_sup_error(std::int64_t r);

/// M_{n,m} = 1 / (2 pi sqrt((m-1)(2n - 3m))); requires 2 <= m <= n/2.
double leading_term(std::int64_t n, std::int64_t m);

/// S_{m-1} / (2 sqrt(pi (2n - 3m))); requires 1 <= m <= n/3.
double sublinear_approx(std::int64_t n, std::int64_t m);

/// Gaussian parameters of the lattice sum sum_j g_{m-1}(j)^2 g_N(l - j) with
/// N = n - 2m and l = floor((n - m)/2).
struct ThetaParams {
  double alpha = 0;    // 4 / (m - 1)
  double beta = 0;     // 2 / N
  double gamma = 0;    // alpha + beta
  double mu = 0;       // (m-1)(2N + m - 2 eps) / (2(2N + m - 1))
  double epsilon = 0;  // (n - m)/2 - l, 0 or 1/2

  static ThetaParams make(std::int64_t n, std::int64_t m);
};

/// 1 + 2 sum_{t=1}^{t_max} exp(-pi^2 t^2 / gamma) cos(2 pi t mu); terms below
/// 1e-300 are dropped.
double theta_correction(const ThetaParams& params, int t_max = 16);

enum class LatticeMode { Direct, ThetaForm };

/// Direct: windowed sum over j within 12 standard deviations of mu.
/// ThetaForm: (2/pi) exp(-4(eps - 1/2)^2 / (2N + m - 1)) Theta /
/// sqrt((m-1)(2N + m - 1)). Requires m >= 2 and N >= 1.
double triple_gaussian_lattice_sum(std::int64_t n, std::int64_t m, LatticeMode mode);

struct PoissonSides {
  double lhs;  // sum_j exp(-gamma (j - mu)^2)
  double rhs;  // sqrt(pi / gamma) sum_t exp(-pi^2 t^2 / gamma) cos(2 pi t mu)
};

PoissonSides poisson_summation_check(double gamma, double mu);

struct LargeMApprox {
  double leading;
  double error_budget;  // c / (sqrt(n) m^{3/2})
};

LargeMApprox large_m_approx(std::int64_t n, std::int64_t m, const AsymptoticConstants& constants = {});

/// Exact covariance next to each approximation. Fields that are undefined for
/// (n, m) (m = 1 for the leading term, m > n/3 for the sublinear form, N = 0
/// for the lattice sum) stay empty.
struct CovarianceReport {
  std::int64_t n = 0;
  std::int64_t m = 0;
  double exact = 0;
  std::optional<double> leading;
  std::optional<double> sublinear;
  std::optional<double> theta_corrected;
  std::optional<double> rel_err_leading;
  std::optional<double> rel_err_sublinear;
  std::optional<double> rel_err_theta;
};

/// Uses rational evaluation when n <= 4096, log-space otherwise.
CovarianceReport covariance_report(std::int64_t n, std::int64_t m);

}  // namespace cvlab

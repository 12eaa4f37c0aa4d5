#pragma once

namespace nslab::analysis {

/// Exponents attached to an integrability index p in (2, 3].
struct SigmaExponents {
  double p;
  /// (p - 2) / (2 (4 - p)); short-time rate of ||u - e^{t Delta} u0||_2^2.
  double sigma;
  /// (p - 2) / 2; long-time decay rate of ||u||_2^2.
  double long_time;
  /// 3/2 - 3/p; Sobolev order matching L^{p,infinity} scaling.
  double critical_sobolev;
};

SigmaExponents sigma_exponents(double p);

/// 2q / (2q - 3), the time integrability paired with L^q in space, q in (3/2, 3).
double spacetime_index(double q);

}  // namespace nslab::analysis

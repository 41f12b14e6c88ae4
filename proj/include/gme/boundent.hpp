// Bound entangled states and Bell-operator diagnostics.
#pragma once

#include <cstdint>
#include <vector>

#include "gme/geomopt.hpp"
#include "gme/qstate.hpp"

namespace gme {

// Smolin's four-qubit state, (1/4) sum_i |X_i><X_i| with GHZ-like X_i.
DensityMatrix smolin_state();
// Same state from (1/4) sum_i |Psi_i><Psi_i|_AB (x) |Psi_i><Psi_i|_CD over the Bell basis.
DensityMatrix smolin_state_bell();
PureState smolin_member(int i);  // |X_i>
// (1/8) of the eight even-parity computational projectors.
DensityMatrix smolin_closest_separable();

struct SmolinGme {
  double e_sin2 = 0.5;
  double e_log2 = 1.0;
  double e_r = 1.0;
  double member_lambda = 0;   // solver Lambda of the X_i (all equal)
  double sweep_min = 0;       // smallest average E_sin2 over random decompositions
  int samples = 0;
  int sweep_unconverged = 0;  // sweep decompositions where some member search hit its iteration cap
  bool converged = true;      // the member solve
};
// Analytic values plus a Monte Carlo sweep over random isometric decompositions.
SmolinGme smolin_gme(int samples = 10000, std::uint64_t seed = 0);

// x |GHZ><GHZ| + (1-x)/(2N) sum_k (P_k + Pbar_k), GHZ phase zero.
DensityMatrix dur_state(int N, double x);
// The member at x = 1/(N+1), PPT across every single-party cut.
DensityMatrix dur_state(int N);
double dur_negativity_one(int N, double x);  // cut 1 : rest
double dur_negativity_two(int N, double x);  // cut 12 : rest
// sqrt(y) GHZ + sign sqrt(1-y) |u_k> (or |v_k> when use_v), party k counted from 0.
PureState dur_member(int N, double y, int sign, bool use_v, int k);

struct DurGme {
  double e_sin2;
  double e_log2;
  double max_lambda_error;  // over the optimal-decomposition members, solver vs sqrt((2-x)/2)
  bool converged;
};
DurGme dur_gme(int N, double x, bool verify = true);

std::vector<PureState> upb_members();
DensityMatrix upb_state();
struct UpbCheck {
  double min_pt_eigenvalue;  // across the three 1:2 cuts
  double max_member_overlap; // largest |<psi_i|psi_j>|, i != j
  double min_product_weight; // smallest sum_j |<phi|psi_j>|^2 over sampled products phi
  int samples;
};
UpbCheck upb_check(int samples = 100000, std::uint64_t seed = 0);

struct BellSettings {
  // directions[party] lists that party's unit measurement vectors.
  std::vector<std::vector<Eigen::Vector3d>> directions;

  void validate(int per_party) const;
  int parties() const { return static_cast<int>(directions.size()); }
  // Two directions per party in the x-y plane at the given angles.
  static BellSettings planar(const std::vector<double>& a, const std::vector<double>& a_prime);
};

Eigen::Matrix2cd sigma_along(const Eigen::Vector3d& a);
Eigen::MatrixXcd mermin_klyshko_operator(const BellSettings& s);
double mermin_klyshko(const DensityMatrix& rho, const BellSettings& s);
// 2 <B_2>
double chsh(const DensityMatrix& rho, const BellSettings& s);
// Largest CHSH value over all settings, 2 sqrt(m1 + m2) from the correlation matrix.
double chsh_max(const DensityMatrix& rho);

struct MkOptimum {
  double value;
  BellSettings settings;
};
// Coordinate ascent over per-party planar angles from several random starts.
MkOptimum mk_maximize(const DensityMatrix& rho, int restarts = 8, std::uint64_t seed = 0);

struct DepolarizedForm {
  double lambda0_plus = 0;
  double lambda0_minus = 0;
  std::vector<double> lambdas;  // j = 1 .. 2^(N-1) - 1

  void validate() const;
  double delta() const { return lambda0_plus - lambda0_minus; }
};
// Populations of the GHZ-like basis; lambda_j is the mean over the +/- pair so the form is normalized.
DepolarizedForm depolarized_form(const DensityMatrix& rho);

struct NondistillReport {
  int N;
  double delta;
  bool nondistillable;  // 1 - delta >= (2^(N-1) - 1) delta
  double bound;         // largest delta allowed by that condition, 2^(1-N)
  double mk_threshold, three_setting_threshold, functional_threshold;
  bool violates_mk, violates_three_setting, violates_functional;
  // Every threshold exceeds the bound, so no violation is compatible with non-distillability.
  bool thresholds_exceed_bound;
};
NondistillReport nondistill_consistency(int N, double delta);

}  // namespace gme

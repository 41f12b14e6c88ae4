// Global entanglement of the periodic transverse-field XY chain
//   H = -sum_j [(1+r)/2 X_j X_{j+1} + (1-r)/2 Y_j Y_{j+1} + h Z_j].
// Sector b = 1/2 holds an even number of Jordan-Wigner fermions (down spins), b = 0 an odd number.
#pragma once

#include <array>
#include <vector>

#include "gme/qstate.hpp"

namespace gme {

struct ChainParams {
  int N = 2;
  double r = 1;
  double h = 0;
  double b = 0.5;  // 0 or 0.5

  void validate() const;
};

// theta in [0, pi/2] with tan 2theta = r sin k / (h - cos k).
double bogoliubov_angle(double r, double h, double k);

struct BogoliubovSpectrum {
  std::vector<double> k, theta, energy;  // m = 0 .. N-1
};
BogoliubovSpectrum bogoliubov_spectrum(const ChainParams& p);

// Signed overlap <Psi_b | Phi(xi)> of the sector ground state with the rotated product state.
double overlap(const ChainParams& p, double xi);
// ln |<Psi_b | Phi(xi)>|, safe for large N.
double log_overlap(const ChainParams& p, double xi);

struct DensityResult {
  double density = 0;  // -(1/N) log2 max_xi overlap^2
  double xi = 0;       // maximizer
  bool at_boundary = false;
};
DensityResult entanglement_density_N(const ChainParams& p);
// d(density)/dh at fixed N from the envelope theorem (xi held at its optimum).
double dEN_dh(const ChainParams& p);

struct SectorEnergies {
  double odd;   // b = 0
  double even;  // b = 1/2
};
SectorEnergies energies(int N, double r, double h);

// Thermodynamic-limit density, adaptive quadrature for r > 0 and the closed form for r = 0.
double thermo_density(double r, double h);
double dE_dh(double r, double h);

struct ScalingFit {
  std::vector<int> N;
  std::vector<double> h_max;  // field maximizing dEN_dh
  std::vector<double> peak;   // dEN_dh at h_max
  double slope = 0, intercept = 0, nu = 0;
};
ScalingFit scaling_fit(double r, const std::vector<int>& N_list);

struct EdResult {
  double energy = 0;
  PureState state;          // sector ground state, real, full 2^N space
  double lambda_scan = 0;   // max over the rotated-product family
  double xi_scan = 0;
  double lambda_solver = -1;  // unrestricted product search, -1 when not run
  bool converged = false;
};
// Lanczos in one parity sector, N <= 14.
EdResult ed_oracle(int N, double r, double h, double b, bool unrestricted = false);
// Max over xi of |<Phi(xi)|psi>| for any N-qubit state.
double ansatz_scan(const PureState& psi, double* xi_out = nullptr);

// Product states (Bloch vectors, one per Z2 partner) that are exact ground states on r^2 + h^2 = 1.
std::array<Eigen::Vector3d, 2> disorder_line_ground(double r);
// <H>/N for a translation-invariant product state with the given Bloch vector.
double product_energy_per_site(const Eigen::Vector3d& bloch, double r, double h);

}  // namespace gme

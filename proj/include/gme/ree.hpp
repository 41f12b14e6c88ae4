// Relative entropy of entanglement: bounds, the F({p}) construction and a numeric minimizer.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gme/geomopt.hpp"
#include "gme/mixedhull.hpp"
#include "gme/qstate.hpp"

namespace gme {

struct SeparableAnsatz {
  std::vector<double> weights;
  std::vector<ProductState> products;

  DensityMatrix sigma(const Dims& dims) const;
  void validate() const;
};

// -2 log2 Lambda_max; flags solver nonconvergence through the report.
struct ReeBound {
  double value;
  bool converged;
};
ReeBound ree_lower_bound(const PureState& psi, const HartreeConfig& cfg = {});

// sum_k p_k log2(p_k n^n / (C(n,k) a^k (n-a)^(n-k))), a = sum_k k p_k.
double F_function(int n, const std::vector<double>& p);

// sum_k p_k |S(n,k)><S(n,k)|
DensityMatrix symmetric_mixture(int n, const std::vector<double>& p);
// s |S(n,k1)><.| + (1-s) |S(n,k2)><.|
DensityMatrix two_term_mixture(int n, int k1, int k2, double s);
// Phase-averaged product state at cos^2(theta) = q, the F minimizer for mean zero count n q.
DensityMatrix phase_averaged_product(int n, double q);

struct ConjecturedValue {
  double value;
  bool conjecture = true;  // false only for the proven two-qubit family
  std::optional<double> closed_form;  // when a closed expression is known for the family
};

Curve1D F_curve(int n, int k1, int k2, int grid);
// co F along the mixture parameter of rho_{n;k1,k2}(s).
ConjecturedValue conjectured_ree(int n, int k1, int k2, double s, int grid = 401);
// Closed forms of co F where F itself is convex on [0,1].
std::optional<double> ree_closed_form(int n, int k1, int k2, double s);

struct ReeConfig {
  int max_iterations = 400;   // conditional-gradient steps in total
  double gap_tolerance = 1e-5;  // Frank-Wolfe duality gap in bits
  int lmo_starts = 4;
  int ansatz_size = 0;          // 0 selects rank(rho) + dim
  std::uint64_t seed = 0;
};

struct ReeResult {
  double value;  // S(rho || sigma) of the returned ansatz, an upper bound on E_R
  SeparableAnsatz ansatz;
  bool improved;   // false when the start could not be improved on
  bool converged;  // gap below tolerance
  int iterations;
  double gap;
};

// Minimizes S(rho||sigma) over fully separable sigma by away-step conditional gradient.
ReeResult numeric_ree(const DensityMatrix& rho, const ReeConfig& cfg = {});

struct PlenioVedral {
  double value;   // max over single-party traces of E_R(reduced) + S(reduced)
  bool partial;   // some reduction lay outside the families with known E_R (E_R taken as 0)
};
PlenioVedral plenio_vedral_bound(const PureState& psi);

// E_R assigned to a state of the symmetric-mixture family, if rho is one.
std::optional<double> symmetric_family_ree(const DensityMatrix& rho, int grid = 401);

}  // namespace gme

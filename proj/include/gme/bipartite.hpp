// Bipartite measures: Schmidt form, concurrence, negativity and closed-form GME families.
#pragma once

#include <vector>

#include "gme/qstate.hpp"

namespace gme {

struct SchmidtDecomposition {
  std::vector<double> coefficients;          // descending
  std::vector<Eigen::VectorXcd> left_basis;  // on group_a (parties in ascending order)
  std::vector<Eigen::VectorXcd> right_basis; // on group_b
};

SchmidtDecomposition schmidt(const PureState& psi, const PartitionSpec& cut);

double concurrence(const DensityMatrix& rho);
double concurrence(const PureState& psi);
double eof(const DensityMatrix& rho);
double eof_from_concurrence(double c);

Eigen::VectorXd pt_spectrum(const DensityMatrix& rho, const PartitionSpec& cut);
double negativity(const DensityMatrix& rho, const PartitionSpec& cut);
bool is_ppt(const DensityMatrix& rho, const PartitionSpec& cut, double tol = 1e-9);

// (1 - sqrt(1 - C^2)) / 2
double gme_two_qubit(const DensityMatrix& rho);
double gme_from_concurrence(double c);

double werner_gme(double f, int d);
double isotropic_gme(double F, int d);
DensityMatrix werner_state(double f, int d);     // f = Tr(rho * swap)
DensityMatrix isotropic_state(double F, int d);  // F = <Phi+|rho|Phi+>

// r |Psi-><Psi-| + (1-r)/4 I with r from the two-spin Heisenberg Gibbs state, H = -J s1.s2.
struct ThermalWerner {
  DensityMatrix rho;
  double r;
};
ThermalWerner thermal_werner(double J, double T);
// r |bell><bell| + (1-r)/4 I
DensityMatrix werner_two_qubit(double r, int bell = 3);

}  // namespace gme

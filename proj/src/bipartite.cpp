#include "gme/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace gme {

namespace {

void require_two_qubits(const Dims& d) {
  if (d != Dims{2, 2}) throw precondition_error("two-qubit state required");
}

Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd l = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

SchmidtDecomposition schmidt(const PureState& psi, const PartitionSpec& cut) {
  cut.validate(psi.parties());
  std::vector<int> order = cut.group_a;
  std::sort(order.begin(), order.end());
  std::vector<int> b = cut.group_b;
  std::sort(b.begin(), b.end());
  order.insert(order.end(), b.begin(), b.end());
  PureState p = permute_parties(psi, order);
  long da = 1;
  for (size_t i = 0; i < cut.group_a.size(); ++i) da *= p.dims[i];
  const long db = p.dim() / da;
  using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::MatrixXcd M = Eigen::Map<const RowMat>(p.amps.data(), da, db);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SchmidtDecomposition s;
  for (long k = 0; k < svd.singularValues().size(); ++k) {
    s.coefficients.push_back(svd.singularValues()(k));
    s.left_basis.push_back(svd.matrixU().col(k));
    s.right_basis.push_back(svd.matrixV().col(k).conjugate());
  }
  return s;
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho.dims);
  Eigen::Matrix4cd Y = Eigen::kroneckerProduct(pauli(2), pauli(2)).eval();
  // sqrt of the eigenvalues of rho * rho~ are the singular values of S Y S*, S = sqrt(rho).
  Eigen::MatrixXcd S = psd_sqrt(rho.m);
  Eigen::MatrixXcd X = S * Y * S.conjugate();
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(X);
  Eigen::VectorXd l = svd.singularValues();
  std::sort(l.data(), l.data() + l.size(), std::greater<double>());
  for (long i = 0; i < l.size(); ++i)
    if (l(i) < 1e-12) l(i) = 0;
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double concurrence(const PureState& psi) {
  require_two_qubits(psi.dims);
  const auto& a = psi.amps;
  return 2.0 * std::abs(a(0) * a(3) - a(1) * a(2));
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1 + std::sqrt(1 - c * c)));
}

double eof(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

Eigen::VectorXd pt_spectrum(const DensityMatrix& rho, const PartitionSpec& cut) {
  return hermitian_eigenvalues(partial_transpose(rho, cut));
}

double negativity(const DensityMatrix& rho, const PartitionSpec& cut) {
  Eigen::VectorXd ev = pt_spectrum(rho, cut);
  double neg = 0;
  for (long i = 0; i < ev.size(); ++i)
    if (ev(i) < 0) neg += ev(i);
  return 2.0 * std::max(0.0, -neg);
}

bool is_ppt(const DensityMatrix& rho, const PartitionSpec& cut, double tol) {
  return pt_spectrum(rho, cut).minCoeff() >= -tol;
}

double gme_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  // sqrt(1 - c^2) amplifies round-off in c near 1.
  if (c > 1 - 1e-14) c = 1;
  return 0.5 * (1 - std::sqrt(1 - c * c));
}

double gme_two_qubit(const DensityMatrix& rho) { return gme_from_concurrence(concurrence(rho)); }

double werner_gme(double f, int d) {
  if (std::abs(f) > 1 || d < 2) throw precondition_error("werner_gme needs |f| <= 1, d >= 2");
  return f <= 0 ? 0.5 * (1 - std::sqrt(1 - f * f)) : 0.0;
}

double isotropic_gme(double F, int d) {
  if (F < 0 || F > 1 || d < 2) throw precondition_error("isotropic_gme needs F in [0,1], d >= 2");
  if (F <= 1.0 / d) return 0.0;
  double s = std::sqrt(F) + std::sqrt((1 - F) * (d - 1));
  return std::max(0.0, 1 - s * s / d);
}

DensityMatrix werner_state(double f, int d) {
  if (std::abs(f) > 1 || d < 2) throw precondition_error("werner_state needs |f| <= 1, d >= 2");
  const int D = d * d;
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(D, D);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  const double dd = static_cast<double>(d);
  const double den = dd * dd * dd * dd - dd * dd;
  DensityMatrix r;
  r.dims = {d, d};
  r.m = (dd * dd - f * dd) / den * Eigen::MatrixXcd::Identity(D, D) + (f * dd * dd - dd) / den * swap;
  return r;
}

DensityMatrix isotropic_state(double F, int d) {
  if (F < 0 || F > 1 || d < 2) throw precondition_error("isotropic_state needs F in [0,1], d >= 2");
  const int D = d * d;
  Eigen::MatrixXcd P = projector(max_entangled(d)).m;
  DensityMatrix r;
  r.dims = {d, d};
  r.m = (1 - F) / (D - 1.0) * (Eigen::MatrixXcd::Identity(D, D) - P) + F * P;
  return r;
}

ThermalWerner thermal_werner(double J, double T) {
  if (!(T > 0)) throw precondition_error("temperature must be positive");
  const double b = 1.0 / T;
  // Divide through by the larger exponential to avoid overflow.
  const double m = std::max(b * J, -3 * b * J);
  const double e1 = std::exp(b * J - m), e3 = std::exp(-3 * b * J - m);
  const double r = (e3 - e1) / (3 * e1 + e3);
  return {werner_two_qubit(r, 3), r};
}

DensityMatrix werner_two_qubit(double r, int bell) {
  if (r < -1.0 / 3 - 1e-12 || r > 1) throw precondition_error("werner parameter must lie in [-1/3, 1]");
  DensityMatrix out;
  out.dims = {2, 2};
  out.m = r * projector(bell_state(bell)).m + (1 - r) / 4 * Eigen::MatrixXcd::Identity(4, 4);
  return out;
}

}  // namespace gme

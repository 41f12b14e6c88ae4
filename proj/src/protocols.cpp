#include "gme/protocols.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "gme/bipartite.hpp"

namespace gme {

double pure_yield(double theta, int n) {
  if (theta < 0 || theta > M_PI / 2 + 1e-15) throw precondition_error("theta must lie in [0, pi/2]");
  if (n < 1 || n > 10000) throw precondition_error("n must lie in [1, 10^4]");
  const double c2 = std::cos(theta) * std::cos(theta), s2 = std::sin(theta) * std::sin(theta);
  double sum = 0;
  for (int k = 0; k <= n; ++k) {
    double lb = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    if (lb <= 0) continue;
    double lp = lb;
    if (n - k > 0) lp += (n - k) * std::log(c2);
    if (k > 0) lp += k * std::log(s2);
    if (!std::isfinite(lp)) continue;
    sum += std::exp(lp) * lb / std::log(2.0);
  }
  return sum / n;
}

double werner_step(double r) {
  if (r < 0 || r > 1) throw precondition_error("r must lie in [0, 1]");
  return 2 * r * (1 + 2 * r) / (3 * (1 + r * r));
}

double werner_step_circuit(double r) {
  if (r < 0 || r > 1) throw precondition_error("r must lie in [0, 1]");
  // Qubits (0,1) form the source pair, (2,3) the target pair; 0 and 2 belong to one side.
  DensityMatrix pair = werner_two_qubit(r, 2);
  Eigen::MatrixXcd big = tensor_product(pair, pair).m;
  auto bit = [](long idx, int q) { return static_cast<int>((idx >> (3 - q)) & 1); };
  auto cnot = [&](long idx, int c, int t) { return bit(idx, c) ? idx ^ (1L << (3 - t)) : idx; };
  std::vector<long> perm(16);
  for (long i = 0; i < 16; ++i) perm[i] = cnot(cnot(i, 0, 2), 1, 3);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(16, 16);
  for (long i = 0; i < 16; ++i)
    for (long j = 0; j < 16; ++j) out(perm[i], perm[j]) = big(i, j);
  Eigen::Matrix4cd kept = Eigen::Matrix4cd::Zero();
  for (long i = 0; i < 16; ++i) {
    if (bit(i, 2) != bit(i, 3)) continue;
    for (long j = 0; j < 16; ++j) {
      if (bit(j, 2) != bit(j, 3) || (i & 3) != (j & 3)) continue;
      kept(i >> 2, j >> 2) += out(i, j);
    }
  }
  kept /= kept.trace();
  Eigen::VectorXcd psi = bell_state(2).amps;
  double F = psi.dot(kept * psi).real();
  return (4 * F - 1) / 3;
}

void DistillationTrace::validate() const {
  if (steps.size() != values.size()) throw precondition_error("trace columns differ in length");
  for (double v : values)
    if (v < -1e-15 || v > 1 + 1e-15) throw precondition_error("r left [0, 1]");
}

DistillationTrace werner_iterate(double r0, int steps) {
  if (steps < 0) throw precondition_error("steps must be >= 0");
  DistillationTrace t;
  double r = r0;
  t.steps.push_back(0);
  if (r0 < 0 || r0 > 1) throw precondition_error("r must lie in [0, 1]");
  t.values.push_back(r);
  for (int s = 1; s <= steps; ++s) {
    r = werner_step(r);
    t.steps.push_back(s);
    t.values.push_back(r);
  }
  t.validate();
  return t;
}

SchumacherReport schumacher_demo() {
  Eigen::Vector2cd H(1, 0), D(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
  Eigen::Matrix2cd rho = 0.5 * (H * H.adjoint() + D * D.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(rho);
  const double lq = es.eigenvalues()(1), lqb = es.eigenvalues()(0);
  Eigen::Vector2cd Q = es.eigenvectors().col(1), Qb = es.eigenvectors().col(0);
  SchumacherReport r;
  r.lambda_q = lq;
  r.entropy = shannon_entropy({lq, lqb});
  r.p_lambda = lq * lq * lq + 3 * lq * lq * lqb;
  r.f1 = r.p_lambda;
  r.f2 = lq * lq * lq;
  r.fidelity = r.p_lambda * r.f1 + (1 - r.p_lambda) * r.f2;
  r.baseline = 0.5 * std::norm(Q.dot(H)) + 0.5 * std::norm(Q.dot(D));

  // Likely subspace: products with at most one Qbar letter; fallback state |QQQ>.
  std::vector<Eigen::Vector2cd> basis{Q, Qb};
  auto triple = [&](int a, int b, int c) {
    Eigen::VectorXcd v(8);
    for (int i = 0; i < 8; ++i) v(i) = basis[a]((i >> 2) & 1) * basis[b]((i >> 1) & 1) * basis[c](i & 1);
    return v;
  };
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(8, 8);
  for (auto [a, b, c] : {std::array{0, 0, 0}, std::array{0, 0, 1}, std::array{0, 1, 0}, std::array{1, 0, 0}}) {
    Eigen::VectorXcd v = triple(a, b, c);
    P += v * v.adjoint();
  }
  Eigen::VectorXcd fallback = triple(0, 0, 0);
  std::vector<Eigen::Vector2cd> letters{H, D};
  double sim = 0;
  for (int m = 0; m < 8; ++m) {
    Eigen::VectorXcd psi(8);
    for (int i = 0; i < 8; ++i)
      psi(i) = letters[(m >> 2) & 1]((i >> 2) & 1) * letters[(m >> 1) & 1]((i >> 1) & 1) * letters[m & 1](i & 1);
    double in = psi.dot(P * psi).real();
    sim += (in * in + (1 - in) * std::norm(fallback.dot(psi))) / 8;
  }
  r.simulated = sim;
  return r;
}

}  // namespace gme

#include "gme/boundent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/KroneckerProduct>

#include "gme/bipartite.hpp"
#include "gme/parallel.hpp"

namespace gme {

namespace {

PureState two_term(const Dims& dims, long i, long j, cplx ci, cplx cj) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total_dim(dims));
  v(i) += ci;
  v(j) += cj;
  return normalized(dims, v);
}

long bits(const char* s) { return std::stol(s, nullptr, 2); }

}  // namespace

PureState smolin_member(int i) {
  static const char* pairs[4][2] = {{"0000", "1111"}, {"0011", "1100"}, {"0101", "1010"}, {"0110", "1001"}};
  if (i < 0 || i > 3) throw precondition_error("Smolin member index must be 0..3");
  return two_term(Dims(4, 2), bits(pairs[i][0]), bits(pairs[i][1]), 1.0, 1.0);
}

DensityMatrix smolin_state() {
  std::vector<DensityMatrix> parts;
  for (int i = 0; i < 4; ++i) parts.push_back(projector(smolin_member(i)));
  return mix({0.25, 0.25, 0.25, 0.25}, parts);
}

DensityMatrix smolin_state_bell() {
  std::vector<DensityMatrix> parts;
  for (int i = 0; i < 4; ++i) {
    DensityMatrix b = projector(bell_state(i));
    parts.push_back(tensor_product(b, b));
  }
  return mix({0.25, 0.25, 0.25, 0.25}, parts);
}

DensityMatrix smolin_closest_separable() {
  std::vector<DensityMatrix> parts;
  for (const char* s : {"0000", "1111", "0011", "1100", "0101", "1010", "0110", "1001"}) {
    std::vector<int> digits;
    for (const char* c = s; *c; ++c) digits.push_back(*c - '0');
    parts.push_back(projector(basis_state(Dims(4, 2), digits)));
  }
  return mix(std::vector<double>(8, 0.125), parts);
}

SmolinGme smolin_gme(int samples, std::uint64_t seed) {
  if (samples < 0) throw precondition_error("samples must be >= 0");
  SmolinGme out;
  HartreeConfig cfg;
  cfg.restarts = 8;
  cfg.seed = seed;
  auto rep = entanglement_eigenvalue(smolin_member(0), cfg);
  out.member_lambda = rep.lambda_max;
  out.converged = rep.converged;
  std::vector<PureState> X;
  for (int i = 0; i < 4; ++i) X.push_back(smolin_member(i));
  std::vector<double> avg(samples, 1.0);
  std::vector<char> conv(samples, 1);
  parallel_for(samples, [&](long s) {
    std::seed_seq ss{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(s), 0x5a17u};
    Rng rng(ss);
    // An isometry U (M x 4) gives the decomposition |phi_k> = sum_i U_ki (1/2) |X_i>.
    const int M = 4 + static_cast<int>(s % 3);
    Eigen::MatrixXcd U = random_unitary(M, rng).leftCols(4);
    HartreeConfig c = cfg;
    c.seed = seed + static_cast<std::uint64_t>(s);
    double e = 0;
    for (int k = 0; k < M; ++k) {
      Eigen::VectorXcd v = Eigen::VectorXcd::Zero(16);
      for (int i = 0; i < 4; ++i) v += 0.5 * U(k, i) * X[i].amps;
      double p = v.squaredNorm();
      if (p < 1e-14) continue;
      auto r = entanglement_eigenvalue(normalized(Dims(4, 2), v), c);
      conv[s] = conv[s] && r.converged;
      e += p * r.e_sin2;
    }
    avg[s] = e;
  });
  out.samples = samples;
  out.sweep_min = samples ? *std::min_element(avg.begin(), avg.end()) : out.e_sin2;
  out.sweep_unconverged = static_cast<int>(std::count(conv.begin(), conv.end(), 0));
  return out;
}

DensityMatrix dur_state(int N, double x) {
  if (N < 4 || N > 10) throw precondition_error("Dur state needs 4 <= N <= 10");
  if (x < 0 || x > 1) throw precondition_error("x must lie in [0, 1]");
  const long D = 1L << N;
  DensityMatrix out;
  out.dims = Dims(N, 2);
  out.m = x * projector(ghz_state(N)).m;
  for (int k = 0; k < N; ++k) {
    long u = 1L << (N - 1 - k);
    long v = (D - 1) ^ u;
    out.m(u, u) += (1 - x) / (2.0 * N);
    out.m(v, v) += (1 - x) / (2.0 * N);
  }
  return out;
}

DensityMatrix dur_state(int N) { return dur_state(N, 1.0 / (N + 1)); }

double dur_negativity_one(int N, double x) { return std::max(0.0, ((N + 1) * x - 1) / N); }
double dur_negativity_two(int, double x) { return x; }

PureState dur_member(int N, double y, int sign, bool use_v, int k) {
  if (N < 2) throw precondition_error("need N >= 2");
  if (k < 0 || k >= N) throw precondition_error("party index out of range");
  if (y < 0 || y > 1) throw precondition_error("y must lie in [0, 1]");
  const long D = 1L << N;
  long u = 1L << (N - 1 - k);
  long idx = use_v ? (D - 1) ^ u : u;
  Eigen::VectorXcd v = std::sqrt(y) * ghz_state(N).amps;
  v(idx) += (sign >= 0 ? 1.0 : -1.0) * std::sqrt(1 - y);
  return normalized(Dims(N, 2), v);
}

DurGme dur_gme(int N, double x, bool verify) {
  if (N < 4 || N > 10) throw precondition_error("Dur state needs 4 <= N <= 10");
  if (x < 0 || x > 1) throw precondition_error("x must lie in [0, 1]");
  DurGme out{x / 2, std::log2(2 / (2 - x)), 0, true};
  if (!verify) return out;
  const double target = std::sqrt((2 - x) / 2);
  HartreeConfig cfg;
  cfg.restarts = 8;
  for (int sign : {1, -1})
    for (bool v : {false, true})
      for (int k = 0; k < N; ++k) {
        auto rep = entanglement_eigenvalue(dur_member(N, x, sign, v, k), cfg);
        out.converged = out.converged && rep.converged;
        out.max_lambda_error = std::max(out.max_lambda_error, std::abs(rep.lambda_max - target));
      }
  return out;
}

std::vector<PureState> upb_members() {
  const double h = 1 / std::sqrt(2.0);
  Eigen::VectorXcd z(2), o(2), p(2), m(2);
  z << 1, 0;
  o << 0, 1;
  p << h, h;
  m << h, -h;
  auto prod = [](const Eigen::VectorXcd& a, const Eigen::VectorXcd& b, const Eigen::VectorXcd& c) {
    return ProductState{{a, b, c}}.state();
  };
  return {prod(z, o, p), prod(o, p, z), prod(p, z, o), prod(m, m, m)};
}

DensityMatrix upb_state() {
  DensityMatrix out;
  out.dims = Dims(3, 2);
  out.m = Eigen::MatrixXcd::Identity(8, 8);
  for (const auto& s : upb_members()) out.m -= s.amps * s.amps.adjoint();
  out.m /= 4.0;
  return out;
}

UpbCheck upb_check(int samples, std::uint64_t seed) {
  UpbCheck out{0, 0, 1, samples};
  DensityMatrix rho = upb_state();
  out.min_pt_eigenvalue = 1;
  for (int p = 0; p < 3; ++p)
    out.min_pt_eigenvalue =
        std::min(out.min_pt_eigenvalue, pt_spectrum(rho, PartitionSpec::from_group({p}, 3)).minCoeff());
  auto S = upb_members();
  for (size_t i = 0; i < S.size(); ++i)
    for (size_t j = i + 1; j < S.size(); ++j)
      out.max_member_overlap = std::max(out.max_member_overlap, std::abs(S[i].amps.dot(S[j].amps)));
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    ProductState phi{{random_unit_vector(2, rng), random_unit_vector(2, rng), random_unit_vector(2, rng)}};
    Eigen::VectorXcd f = phi.full();
    double w = 0;
    for (const auto& m : S) w += std::norm(m.amps.dot(f));
    out.min_product_weight = std::min(out.min_product_weight, w);
  }
  return out;
}

void BellSettings::validate(int per_party) const {
  if (directions.empty()) throw precondition_error("no parties in Bell settings");
  for (const auto& p : directions) {
    if (static_cast<int>(p.size()) != per_party) throw precondition_error("wrong number of settings per party");
    for (const auto& a : p)
      if (std::abs(a.norm() - 1) > 1e-12) throw precondition_error("measurement directions must be unit vectors");
  }
}

BellSettings BellSettings::planar(const std::vector<double>& a, const std::vector<double>& a_prime) {
  if (a.size() != a_prime.size()) throw precondition_error("angle lists differ in length");
  BellSettings s;
  for (size_t k = 0; k < a.size(); ++k)
    s.directions.push_back({Eigen::Vector3d(std::cos(a[k]), std::sin(a[k]), 0),
                            Eigen::Vector3d(std::cos(a_prime[k]), std::sin(a_prime[k]), 0)});
  return s;
}

Eigen::Matrix2cd sigma_along(const Eigen::Vector3d& a) {
  return a(0) * pauli(1) + a(1) * pauli(2) + a(2) * pauli(3);
}

Eigen::MatrixXcd mermin_klyshko_operator(const BellSettings& s) {
  s.validate(2);
  Eigen::MatrixXcd B = sigma_along(s.directions[0][0]);
  Eigen::MatrixXcd Bp = sigma_along(s.directions[0][1]);
  for (int k = 1; k < s.parties(); ++k) {
    Eigen::Matrix2cd a = sigma_along(s.directions[k][0]);
    Eigen::Matrix2cd ap = sigma_along(s.directions[k][1]);
    Eigen::Matrix2cd sum = a + ap, diff = a - ap;
    Eigen::MatrixXcd nb = 0.5 * (Eigen::kroneckerProduct(B, sum).eval() + Eigen::kroneckerProduct(Bp, diff).eval());
    Eigen::MatrixXcd nbp = 0.5 * (Eigen::kroneckerProduct(Bp, sum).eval() - Eigen::kroneckerProduct(B, diff).eval());
    B.swap(nb);
    Bp.swap(nbp);
  }
  return B;
}

double mermin_klyshko(const DensityMatrix& rho, const BellSettings& s) {
  if (s.parties() != rho.parties()) throw precondition_error("one setting pair per party");
  for (int d : rho.dims)
    if (d != 2) throw precondition_error("Mermin-Klyshko operator needs qubits");
  return (mermin_klyshko_operator(s).cwiseProduct(rho.m.transpose())).sum().real();
}

double chsh(const DensityMatrix& rho, const BellSettings& s) {
  if (rho.parties() != 2) throw precondition_error("CHSH needs two qubits");
  return 2 * mermin_klyshko(rho, s);
}

double chsh_max(const DensityMatrix& rho) {
  if (rho.dims != Dims{2, 2}) throw precondition_error("CHSH maximum needs two qubits");
  Eigen::Matrix3d T;
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      Eigen::MatrixXcd op = Eigen::kroneckerProduct(pauli(i), pauli(j));
      T(i - 1, j - 1) = (op.cwiseProduct(rho.m.transpose())).sum().real();
    }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(T.transpose() * T);
  Eigen::Vector3d m = es.eigenvalues();
  return 2 * std::sqrt(std::max(0.0, m(2) + m(1)));
}

MkOptimum mk_maximize(const DensityMatrix& rho, int restarts, std::uint64_t seed) {
  if (restarts < 1) throw precondition_error("restarts must be >= 1");
  const int N = rho.parties();
  Rng rng(seed);
  std::uniform_real_distribution<double> ang(0, 2 * M_PI);
  MkOptimum best{-std::numeric_limits<double>::infinity(), {}};
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> a(N), ap(N);
    for (int k = 0; k < N; ++k) {
      a[k] = ang(rng);
      ap[k] = ang(rng);
    }
    auto eval = [&] { return mermin_klyshko(rho, BellSettings::planar(a, ap)); };
    double cur = eval();
    for (int sweep = 0; sweep < 500; ++sweep) {
      double start = cur;
      for (int k = 0; k < 2 * N; ++k) {
        double& t = k < N ? a[k] : ap[k - N];
        // <B> is A cos t + B sin t + C in each single angle.
        t = 0;
        double f0 = eval();
        t = M_PI / 2;
        double f1 = eval();
        t = M_PI;
        double f2 = eval();
        double C = 0.5 * (f0 + f2), A = 0.5 * (f0 - f2), Bc = f1 - C;
        t = std::atan2(Bc, A);
        cur = C + std::hypot(A, Bc);
      }
      if (cur - start < 1e-14) break;
    }
    cur = eval();
    if (cur > best.value) best = {cur, BellSettings::planar(a, ap)};
  }
  return best;
}

void DepolarizedForm::validate() const {
  double s = lambda0_plus + lambda0_minus;
  for (double l : lambdas) s += 2 * l;
  if (std::abs(s - 1) > 1e-10) throw precondition_error("depolarized form is not normalized");
  if (lambda0_plus < -1e-12 || lambda0_minus < -1e-12) throw precondition_error("negative population");
  for (double l : lambdas)
    if (l < -1e-12) throw precondition_error("negative population");
}

DepolarizedForm depolarized_form(const DensityMatrix& rho) {
  const int N = rho.parties();
  for (int d : rho.dims)
    if (d != 2) throw precondition_error("depolarized form needs qubits");
  if (N < 2) throw precondition_error("need at least two qubits");
  const long half = 1L << (N - 1);
  auto pop = [&](long j, double sign) {
    // (|0 j> + sign |1 jbar>) / sqrt 2
    long i0 = j, i1 = half + ((half - 1) ^ j);
    cplx v = rho.m(i0, i0) + rho.m(i1, i1) + sign * (rho.m(i0, i1) + rho.m(i1, i0));
    return 0.5 * v.real();
  };
  DepolarizedForm f;
  f.lambda0_plus = pop(0, 1);
  f.lambda0_minus = pop(0, -1);
  for (long j = 1; j < half; ++j) f.lambdas.push_back(0.5 * (pop(j, 1) + pop(j, -1)));
  return f;
}

NondistillReport nondistill_consistency(int N, double delta) {
  if (N < 4) throw precondition_error("need N >= 4");
  if (delta < 0 || delta > 1) throw precondition_error("delta must lie in [0, 1]");
  NondistillReport r;
  r.N = N;
  r.delta = delta;
  const double m = std::ldexp(1.0, N - 1);
  r.nondistillable = 1 - delta >= (m - 1) * delta;
  r.bound = 1 / m;
  r.mk_threshold = std::pow(2.0, -(N - 1) / 2.0);
  r.three_setting_threshold = std::sqrt(3.0) * std::pow(2.0 / 3.0, N);
  r.functional_threshold = 2 * std::pow(2 / M_PI, N);
  r.violates_mk = delta > r.mk_threshold;
  r.violates_three_setting = delta > r.three_setting_threshold;
  r.violates_functional = delta > r.functional_threshold;
  r.thresholds_exceed_bound =
      r.mk_threshold > r.bound && r.three_setting_threshold > r.bound && r.functional_threshold > r.bound;
  return r;
}

}  // namespace gme

#include "gme/geomopt.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <numeric>

#include "gme/parallel.hpp"

namespace gme {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::VectorXcd kron_conj(const std::vector<Eigen::VectorXcd>& locals, int from, int to) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (int j = from; j < to; ++j) {
    const auto& l = locals[j];
    Eigen::VectorXcd next(v.size() * l.size());
    for (long i = 0; i < v.size(); ++i) next.segment(i * l.size(), l.size()) = v(i) * l.conjugate();
    v.swap(next);
  }
  return v;
}

void fix_phase(Eigen::VectorXcd& v) {
  for (long i = 0; i < v.size(); ++i)
    if (std::abs(v(i)) > 1e-12) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = std::abs(v(i));
      return;
    }
}

ProductState symmetric_start(const PureState& psi) {
  const int n = psi.parties();
  const int d = psi.dims[0];
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(d) / std::sqrt(static_cast<double>(d));
  std::vector<Eigen::VectorXcd> locals(n, v);
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(d);
    for (int i = 0; i < n; ++i) acc += contract_except(psi.amps, psi.dims, locals, i);
    if (acc.norm() < 1e-300) break;
    Eigen::VectorXcd nv = acc.normalized();
    double change = (nv - v).norm();
    v = nv;
    std::fill(locals.begin(), locals.end(), v);
    if (change < 1e-12) break;
  }
  return ProductState{locals};
}

double binom(int n, int k) { return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)); }

}  // namespace

Eigen::VectorXcd contract_except(const Eigen::VectorXcd& v, const Dims& dims,
                                 const std::vector<Eigen::VectorXcd>& locals, int party) {
  const int n = static_cast<int>(dims.size());
  Eigen::VectorXcd left = kron_conj(locals, 0, party);
  Eigen::VectorXcd right = kron_conj(locals, party + 1, n);
  const long d = dims[party];
  const long L = left.size(), R = right.size();
  Eigen::Map<const RowMat> P(v.data(), L, d * R);
  Eigen::Matrix<cplx, 1, Eigen::Dynamic> t = left.transpose() * P;
  Eigen::Map<const RowMat> T(t.data(), d, R);
  return T * right;
}

void HartreeConfig::validate() const {
  if (max_iterations < 1) throw precondition_error("max_iterations must be >= 1");
  if (!(tolerance > 0)) throw precondition_error("tolerance must be > 0");
  if (restarts < 1) throw precondition_error("restarts must be >= 1");
}

EntanglementReport make_report(double lambda, ProductState closest, bool converged, int iterations) {
  EntanglementReport r;
  r.lambda_max = std::min(1.0, lambda);
  r.e_sin2 = 1.0 - r.lambda_max * r.lambda_max;
  r.e_log2 = -2.0 * std::log2(r.lambda_max);
  r.closest = std::move(closest);
  r.converged = converged;
  r.iterations_used = iterations;
  return r;
}

EntanglementReport hartree_run(const PureState& psi, ProductState start, const HartreeConfig& cfg) {
  const int n = psi.parties();
  auto& loc = start.locals;
  double lam = std::abs(start.full().dot(psi.amps));
  bool conv = false;
  int it = 0;
  while (it < cfg.max_iterations) {
    ++it;
    double cur = lam;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXcd c = contract_except(psi.amps, psi.dims, loc, i);
      double nrm = c.norm();
      if (nrm < 1e-300) continue;
      loc[i] = c / nrm;
      cur = nrm;
    }
    double delta = std::abs(cur - lam);
    lam = cur;
    if (delta < cfg.tolerance) {
      conv = true;
      break;
    }
  }
  for (auto& v : loc) fix_phase(v);
  lam = std::abs(start.full().dot(psi.amps));
  return make_report(lam, std::move(start), conv, it);
}

EntanglementReport entanglement_eigenvalue(const PureState& psi, const HartreeConfig& cfg) {
  cfg.validate();
  const int n = psi.parties();
  if (n < 2) throw precondition_error("need at least two parties");
  const bool same_dims = std::all_of(psi.dims.begin(), psi.dims.end(), [&](int d) { return d == psi.dims[0]; });
  const bool sym = cfg.symmetric_ansatz && same_dims;
  const int total = cfg.restarts + (sym ? 1 : 0);
  std::vector<EntanglementReport> runs(total);
  parallel_for(total, [&](long id) {
    ProductState start;
    if (sym && id == 0) {
      start = symmetric_start(psi);
    } else {
      std::seed_seq ss{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                       static_cast<std::uint32_t>(id)};
      Rng rng(ss);
      for (int d : psi.dims) start.locals.push_back(random_unit_vector(d, rng));
    }
    runs[id] = hartree_run(psi, std::move(start), cfg);
  });
  int best = 0;
  bool any_conv = false;
  for (int id = 0; id < total; ++id) {
    any_conv = any_conv || runs[id].converged;
    if (runs[id].lambda_max > runs[best].lambda_max) best = id;
  }
  EntanglementReport r = std::move(runs[best]);
  r.converged = any_conv;
  return r;
}

double schmidt_lambda(const PureState& psi, const PartitionSpec& cut) {
  cut.validate(psi.parties());
  // The smaller side gives the cheaper reduced operator; both share the spectrum.
  long da = 1, db = 1;
  for (int p : cut.group_a) da *= psi.dims[p];
  for (int p : cut.group_b) db *= psi.dims[p];
  DensityMatrix red = partial_trace(psi, da <= db ? cut.group_a : cut.group_b);
  double top = hermitian_eigenvalues(red.m).maxCoeff();
  return std::sqrt(std::clamp(top, 0.0, 1.0));
}

PureState symmetric_state(int n, const std::vector<int>& counts) {
  if (counts.size() < 2) throw precondition_error("need at least two levels");
  if (std::accumulate(counts.begin(), counts.end(), 0) != n) throw precondition_error("counts must sum to n");
  for (int k : counts)
    if (k < 0) throw precondition_error("negative count");
  const int d = static_cast<int>(counts.size());
  Dims dims(n, d);
  const long D = total_dim(dims);
  if (D > (1L << kMaxPureQubits) * 4) throw precondition_error("symmetric state exceeds dense cap");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(D);
  std::vector<int> tally(d);
  for (long idx = 0; idx < D; ++idx) {
    std::fill(tally.begin(), tally.end(), 0);
    long x = idx;
    for (int p = 0; p < n; ++p) {
      ++tally[x % d];
      x /= d;
    }
    if (std::equal(tally.begin(), tally.end(), counts.begin())) v(idx) = 1.0;
  }
  return normalized(dims, v);
}

PureState dicke_state(int n, int k) {
  if (k < 0 || k > n) throw precondition_error("k must lie in [0, n]");
  return symmetric_state(n, {k, n - k});
}

PureState w_state() { return dicke_state(3, 2); }
PureState wtilde_state() { return dicke_state(3, 1); }

double lambda_symmetric(int n, const std::vector<int>& counts) {
  if (std::accumulate(counts.begin(), counts.end(), 0) != n) throw precondition_error("counts must sum to n");
  double logl = 0.5 * std::lgamma(n + 1.0);
  for (int k : counts) {
    if (k < 0) throw precondition_error("negative count");
    logl -= 0.5 * std::lgamma(k + 1.0);
    if (k > 0) logl += 0.5 * k * std::log(static_cast<double>(k) / n);
  }
  return std::exp(logl);
}

double lambda_symmetric(int n, int k) { return lambda_symmetric(n, std::vector<int>{k, n - k}); }

PureState det_state(int n) {
  if (n < 2) throw precondition_error("Det_n needs n >= 2");
  if (n > 6) throw precondition_error("Det_n exceeds dense cap (n <= 6)");
  Dims dims(n, n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total_dim(dims));
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    int inv = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) inv += p[i] > p[j];
    v(flatten(p, dims)) = (inv % 2) ? -1.0 : 1.0;
  } while (std::next_permutation(p.begin(), p.end()));
  return normalized(dims, v);
}

double lambda_det(int n) { return std::exp(-0.5 * std::lgamma(n + 1.0)); }

PureState two_term_symmetric_state(int n, int k1, int k2, double r, double phase) {
  if (k1 == k2) throw precondition_error("k1 must differ from k2");
  if (r < 0 || r > 1) throw precondition_error("weight must lie in [0, 1]");
  Eigen::VectorXcd v = std::sqrt(r) * dicke_state(n, k1).amps +
                       std::polar(std::sqrt(1 - r), phase) * dicke_state(n, k2).amps;
  return normalized(Dims(n, 2), v);
}

double symmetric_superposition_lambda(int n, const std::vector<double>& q) {
  if (static_cast<int>(q.size()) != n + 1) throw precondition_error("need n + 1 weights");
  std::vector<double> a(n + 1);
  for (int k = 0; k <= n; ++k) {
    if (q[k] < 0) throw precondition_error("weights must be non-negative");
    a[k] = std::sqrt(q[k] * binom(n, k));
  }
  auto g = [&](double th) {
    double c = std::cos(th), s = std::sin(th), v = 0;
    for (int k = 0; k <= n; ++k)
      if (a[k] != 0) v += a[k] * std::pow(c, k) * std::pow(s, n - k);
    return v;
  };
  const int M = 2000;
  const double h = M_PI / 2 / M;
  std::vector<double> gv(M + 1);
  for (int i = 0; i <= M; ++i) gv[i] = g(i * h);
  double best = std::max(gv[0], gv[M]);
  for (int i = 1; i < M; ++i) {
    double gi = gv[i];
    if (gi >= gv[i - 1] && gi >= gv[i + 1]) {
      auto res = boost::math::tools::brent_find_minima([&](double t) { return -g(t); }, (i - 1) * h, (i + 1) * h, 52);
      gi = std::max(gi, -res.second);
    }
    best = std::max(best, gi);
  }
  return best;
}

double two_term_symmetric_lambda(int n, int k1, int k2, double r) {
  if (k1 == k2) throw precondition_error("k1 must differ from k2");
  if (k1 < 0 || k2 < 0 || k1 > n || k2 > n) throw precondition_error("k must lie in [0, n]");
  if (r < 0 || r > 1) throw precondition_error("weight must lie in [0, 1]");
  std::vector<double> q(n + 1, 0.0);
  q[k1] = r;
  q[k2] = 1 - r;
  return symmetric_superposition_lambda(n, q);
}

PureState ghz_w_state(double x, double y) {
  if (x < 0 || y < 0 || x + y > 1 + 1e-12) throw precondition_error("need x, y >= 0 and x + y <= 1");
  const double z = std::max(0.0, 1 - x - y);
  Eigen::VectorXcd v = std::sqrt(x) * ghz_state(3).amps + std::sqrt(y) * w_state().amps + std::sqrt(z) * wtilde_state().amps;
  return normalized(Dims(3, 2), v);
}

double ghz_w_lambda(double x, double y) {
  if (x < 0 || y < 0 || x + y > 1 + 1e-12) throw precondition_error("need x, y >= 0 and x + y <= 1");
  const double z = std::max(0.0, 1 - x - y);
  const double a = std::sqrt(x / 2), b = std::sqrt(3 * y), c = std::sqrt(3 * z);
  // Stationarity cubic P(t) = -c t^3 + (3a-2b) t^2 + (2c-3a) t + b, t = tan(theta).
  // Evaluated as P(tan th) cos^3 th so theta = pi/2 (t = inf) is reachable.
  auto cubic = [&](double th) {
    double co = std::cos(th), si = std::sin(th);
    return -c * si * si * si + (3 * a - 2 * b) * si * si * co + (2 * c - 3 * a) * si * co * co + b * co * co * co;
  };
  auto lam = [&](double th) {
    double co = std::cos(th), si = std::sin(th);
    return a * (co * co * co + si * si * si) + b * co * co * si + c * co * si * si;
  };
  // P is monotone between the roots of P', so each piece holds at most one sign change.
  std::vector<double> cuts{0.0, M_PI / 2};
  const double qa = -3 * c, qb = 2 * (3 * a - 2 * b), qc = 2 * c - 3 * a;
  auto add_t = [&](double t) {
    if (t > 0 && std::isfinite(t)) cuts.push_back(std::atan(t));
  };
  if (std::abs(qa) > 1e-300) {
    double disc = qb * qb - 4 * qa * qc;
    if (disc >= 0) {
      double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
      if (q != 0) add_t(qc / q);
      add_t(q / qa);
    }
  } else if (std::abs(qb) > 1e-300) {
    add_t(-qc / qb);
  }
  std::sort(cuts.begin(), cuts.end());
  double best = std::max(lam(0), lam(M_PI / 2));
  for (size_t k = 0; k + 1 < cuts.size(); ++k) {
    double lo = cuts[k], hi = cuts[k + 1];
    double flo = cubic(lo), fhi = cubic(hi);
    if (flo == 0) best = std::max(best, lam(lo));
    if (fhi == 0) best = std::max(best, lam(hi));
    if ((flo < 0) == (fhi < 0) || flo == 0 || fhi == 0) continue;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      double mid = 0.5 * (lo + hi), fm = cubic(mid);
      if (std::abs(fm) < 1e-13) {
        lo = hi = mid;
        break;
      }
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    best = std::max(best, lam(0.5 * (lo + hi)));
  }
  return best;
}

double optimal_witness_value(const PureState& psi, const HartreeConfig& cfg) {
  auto rep = entanglement_eigenvalue(psi, cfg);
  if (rep.lambda_max > 1 - 1e-9) throw precondition_error("product state has no entanglement witness");
  return rep.lambda_max * rep.lambda_max - 1.0;
}

namespace {

// Correlation tensor T[mu] = <sigma_mu1 x ... x sigma_muN>, mu_j in {0,1,2,3}.
std::vector<double> correlation_tensor(const PureState& psi) {
  const int n = psi.parties();
  const long M = 1L << (2 * n);
  std::vector<double> T(M);
  for (long mu = 0; mu < M; ++mu) {
    Eigen::VectorXcd v = psi.amps;
    for (int j = 0; j < n; ++j) {
      int a = (mu >> (2 * (n - 1 - j))) & 3;
      if (a) v = apply_local(v, psi.dims, j, pauli(a));
    }
    T[mu] = psi.amps.dot(v).real();
  }
  return T;
}

double expand(const std::vector<double>& T, int n, const std::vector<Eigen::Vector4d>& r) {
  double s = 0;
  for (long mu = 0; mu < static_cast<long>(T.size()); ++mu) {
    double w = T[mu];
    for (int j = 0; j < n && w != 0; ++j) w *= r[j]((mu >> (2 * (n - 1 - j))) & 3);
    s += w;
  }
  return s / std::ldexp(1.0, n);
}

}  // namespace

double correlation_expansion(const PureState& psi, const std::vector<Eigen::Vector3d>& bloch) {
  const int n = psi.parties();
  if (static_cast<int>(bloch.size()) != n) throw precondition_error("one Bloch vector per party");
  auto T = correlation_tensor(psi);
  std::vector<Eigen::Vector4d> r(n);
  for (int j = 0; j < n; ++j) r[j] << 1, bloch[j](0), bloch[j](1), bloch[j](2);
  return expand(T, n, r);
}

double correlation_lambda_sq(const PureState& psi, std::uint64_t seed) {
  const int n = psi.parties();
  for (int d : psi.dims)
    if (d != 2) throw precondition_error("correlation decomposition needs qubits");
  if (n > 4) throw precondition_error("correlation decomposition capped at 4 qubits");
  auto T = correlation_tensor(psi);
  Rng rng(seed);
  std::normal_distribution<double> g;
  double best = 0;
  for (int start = 0; start < 24; ++start) {
    std::vector<Eigen::Vector4d> r(n);
    for (auto& v : r) {
      Eigen::Vector3d u(g(rng), g(rng), g(rng));
      u.normalize();
      v << 1, u(0), u(1), u(2);
    }
    double val = expand(T, n, r), prev = -1;
    for (int it = 0; it < 5000 && std::abs(val - prev) > 1e-15; ++it) {
      prev = val;
      for (int j = 0; j < n; ++j) {
        // The expansion is affine in r_j: coefficient of each component.
        Eigen::Vector3d b;
        for (int a = 1; a <= 3; ++a) {
          auto e = r;
          e[j] << 0, 0, 0, 0;
          e[j](a) = 1;
          b(a - 1) = expand(T, n, e);
        }
        if (b.norm() > 0) r[j].tail<3>() = b.normalized();
      }
      val = expand(T, n, r);
    }
    best = std::max(best, val);
  }
  return best;
}

double log_monotone_witness(int N, double x) {
  const double q = N * x * x;
  return std::log2(1 + q) - q / (1 + q) * std::log2(static_cast<double>(N));
}

}  // namespace gme

#include "gme/xychain.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "gme/geomopt.hpp"

namespace gme {

namespace {

constexpr double kPi = M_PI;
const double kLn2 = std::log(2.0);
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-mode data of the overlap product; xi enters only through cos^2 and sin^2 of xi/2.
struct Modes {
  std::vector<double> k, c, s, cot, dtheta;  // dtheta = d theta / d h
};

// h - cos k without cancellation near h = 1, k = 0.
double field_gap(double h, double k) { return (h - 1) + 2 * std::pow(std::sin(k / 2), 2); }

// cos(theta), sin(theta) from the half-angle formulas, stable when either is tiny.
std::pair<double, double> cos_sin_theta(double r, double h, double k) {
  const double a = field_gap(h, k), bb = r * std::sin(k);
  const double rho = std::hypot(a, bb);
  if (rho == 0) return {1.0, 0.0};
  double plus = rho + a, minus = rho - a;
  if (a < 0) plus = bb * bb / minus;
  else minus = bb * bb / plus;
  return {std::sqrt(plus / (2 * rho)), std::sqrt(minus / (2 * rho))};
}

double dtheta_dh(double r, double h, double k) {
  const double a = field_gap(h, k), bb = r * std::sin(k);
  const double den = a * a + bb * bb;
  return den > 0 ? -0.5 * bb / den : 0.0;
}

Modes build_modes(const ChainParams& p) {
  Modes md;
  const int first = p.b == 0 ? 1 : 0;
  for (int m = first; m + p.b < 0.5 * p.N; ++m) {
    const double k = 2 * kPi * (m + p.b) / p.N;
    const auto [c, sn] = cos_sin_theta(p.r, p.h, k);
    md.k.push_back(k);
    md.c.push_back(c);
    md.s.push_back(sn);
    md.cot.push_back(1 / std::tan(k / 2));
    md.dtheta.push_back(dtheta_dh(p.r, p.h, k));
  }
  return md;
}

double log_prefactor(const ChainParams& p, double xi) {
  const double hc = std::abs(std::cos(xi / 2)), hs = std::abs(std::sin(xi / 2));
  const bool even = p.N % 2 == 0;
  if (p.b != 0) return even ? 0.0 : std::log(hc);
  return 0.5 * std::log(static_cast<double>(p.N)) + (even ? std::log(hs * hc) : std::log(hs));
}

double prefactor_slope(const ChainParams& p, double xi) {
  const bool even = p.N % 2 == 0;
  if (p.b != 0) return even ? 0.0 : -0.5 * std::tan(xi / 2);
  return even ? 1 / std::tan(xi) : 0.5 / std::tan(xi / 2);
}

double log_overlap_modes(const ChainParams& p, const Modes& md, double xi) {
  const double c2 = std::pow(std::cos(xi / 2), 2), s2 = std::pow(std::sin(xi / 2), 2);
  double acc = log_prefactor(p, xi);
  for (size_t i = 0; i < md.c.size(); ++i) acc += std::log(std::abs(md.c[i] * c2 + md.s[i] * s2 * md.cot[i]));
  return acc;
}

// d/dxi of log_overlap_modes.
double log_overlap_slope(const ChainParams& p, const Modes& md, double xi) {
  const double c2 = std::pow(std::cos(xi / 2), 2), s2 = std::pow(std::sin(xi / 2), 2);
  const double half = 0.5 * std::sin(xi);
  double acc = prefactor_slope(p, xi);
  for (size_t i = 0; i < md.c.size(); ++i) {
    const double t = md.c[i] * c2 + md.s[i] * s2 * md.cot[i];
    acc += half * (md.s[i] * md.cot[i] - md.c[i]) / t;
  }
  return acc;
}

struct Peak {
  double value = kNegInf;
  double x = 0;
  bool boundary = false;
};

// Maximizes f on [lo, hi]: grid scan, then every grid-local maximum is refined, by a root of df when
// one is supplied and the slope brackets, by Brent otherwise.
template <class F>
Peak maximize_on(F f, const std::function<double(double)>& df, double lo, double hi, int cells) {
  std::vector<double> xs(cells + 1), ys(cells + 1);
  for (int i = 0; i <= cells; ++i) {
    xs[i] = lo + (hi - lo) * i / cells;
    ys[i] = f(xs[i]);
  }
  Peak best;
  auto offer = [&](double x, double y, bool boundary) {
    if (y > best.value) best = {y, x, boundary};
  };
  const double eps = 1e-7 * (hi - lo);
  boost::math::tools::eps_tolerance<double> tol(50);
  for (int i = 0; i <= cells; ++i) {
    if (!std::isfinite(ys[i]) && ys[i] < 0) continue;
    if (i > 0 && ys[i - 1] > ys[i]) continue;
    if (i < cells && ys[i + 1] > ys[i]) continue;
    offer(xs[i], ys[i], i == 0 || i == cells);
    double a = xs[std::max(i - 1, 0)], b = xs[std::min(i + 1, cells)];
    if (df) {
      if (i == 0) {
        if (df(lo + eps) <= 0) continue;
        a = lo + eps;
      } else if (i == cells) {
        if (df(hi - eps) >= 0) continue;
        b = hi - eps;
      } else if (df(xs[i]) > 0) {
        a = xs[i];
      } else {
        b = xs[i];
      }
      const double da = df(a), db = df(b);
      if (std::isfinite(da) && std::isfinite(db) && da > 0 && db < 0) {
        std::uintmax_t iters = 200;
        auto root = boost::math::tools::toms748_solve(df, a, b, da, db, tol, iters);
        const double x = 0.5 * (root.first + root.second);
        offer(x, f(x), false);
        continue;
      }
    }
    auto res = boost::math::tools::brent_find_minima([&](double t) { return -f(t); }, a, b, 40);
    offer(res.first, -res.second, std::min(res.first - lo, hi - res.first) < 1e-6 * (hi - lo));
  }
  return best;
}

struct XiOptimum {
  double log_value;
  double xi;
  bool boundary;
};

XiOptimum best_xi(const ChainParams& p, const Modes& md) {
  Peak pk = maximize_on([&](double x) { return log_overlap_modes(p, md, x); },
                        [&](double x) { return log_overlap_slope(p, md, x); }, 0.0, kPi, 64);
  return {pk.value, pk.x, pk.boundary};
}

// ---- thermodynamic limit ----

struct ThetaAt {
  double c, s, cot, dth;
};
ThetaAt theta_at(double r, double h, double mu) {
  const double k = 2 * kPi * mu;
  const auto [c, sn] = cos_sin_theta(r, h, k);
  return {c, sn, 1 / std::tan(kPi * mu), dtheta_dh(r, h, k)};
}

// Integral over (0, 1/2) split at the given points. Tanh-sinh copes with the log singularities at
// both ends; the split points sit on the sharp features near mu0 and near mu ~ |h-1|.
template <class F>
double integrate_half(F f, std::vector<double> extra) {
  std::vector<double> pts{0.0, 0.5};
  for (double e : extra)
    if (e > 1e-12 && e < 0.5 - 1e-12) pts.push_back(e);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end(), [](double x, double y) { return y - x < 1e-12; }), pts.end());
  static thread_local boost::math::quadrature::tanh_sinh<double> ts;
  double total = 0, err_sum = 0;
  for (size_t i = 0; i + 1 < pts.size(); ++i) {
    double err = 0;
    total += ts.integrate(f, pts[i], pts[i + 1], 1e-11, &err);
    err_sum += err;
  }
  if (!(err_sum <= 1e-9) || !std::isfinite(total)) throw convergence_error("quadrature did not reach 1e-9");
  return total;
}

std::vector<double> split_points(double r, double h) {
  std::vector<double> pts;
  if (h < 1) pts.push_back(std::acos(h) / (2 * kPi));
  const double w = std::abs(h - 1) / (2 * kPi * std::max(r, 1e-3));
  for (double f : {1.0, 10.0, 100.0}) pts.push_back(f * w);
  return pts;
}

double F_xi(double r, double h, double xi) {
  const double c2 = std::pow(std::cos(xi / 2), 2), s2 = std::pow(std::sin(xi / 2), 2);
  return integrate_half(
      [&](double mu) {
        ThetaAt t = theta_at(r, h, mu);
        // tanh-sinh samples within ~1e-300 of the ends, where t may underflow.
        return std::log(std::max(t.c * c2 + t.s * s2 * t.cot, 1e-300));
      },
      split_points(r, h));
}

Peak thermo_optimum(double r, double h) {
  // The xi-slope integrand is nearly singular at the ends of [0, pi]; Brent alone is used here.
  return maximize_on([&](double x) { return F_xi(r, h, x); }, nullptr, 0.0, kPi, 16);
}

double xx_density(double h) {
  if (h >= 1) return 0;
  const double mu0 = std::acos(h) / (2 * kPi);
  static thread_local boost::math::quadrature::tanh_sinh<double> ts;
  double err = 0;
  const double I = ts.integrate([](double mu) { return std::log(1 / std::tan(kPi * mu)); }, 0.0, mu0, 1e-12, &err);
  if (!(err <= 1e-9)) throw convergence_error("quadrature did not reach 1e-9");
  double val = mu0 * std::log(2 * mu0 / (1 - 2 * mu0)) + 0.5 * std::log(1 - 2 * mu0) + I;
  return std::max(0.0, -2 / kLn2 * val);
}

void check_rh(double r, double h) {
  if (!(r >= 0 && r <= 1)) throw precondition_error("r must lie in [0, 1]");
  if (!(h >= 0) || !std::isfinite(h)) throw precondition_error("h must be >= 0");
}

}  // namespace

void ChainParams::validate() const {
  if (N < 2) throw precondition_error("N must be >= 2");
  check_rh(r, h);
  if (b != 0 && b != 0.5) throw precondition_error("sector b must be 0 or 1/2");
}

double bogoliubov_angle(double r, double h, double k) { return 0.5 * std::atan2(r * std::sin(k), field_gap(h, k)); }

BogoliubovSpectrum bogoliubov_spectrum(const ChainParams& p) {
  p.validate();
  BogoliubovSpectrum sp;
  for (int m = 0; m + p.b <= 0.5 * p.N; ++m) {
    const double k = 2 * kPi * (m + p.b) / p.N;
    sp.k.push_back(k);
    if (p.b == 0 && m == 0) {
      // The unpaired k = 0 mode is its own Bogoliubov fermion.
      sp.theta.push_back(0);
      sp.energy.push_back(2 * (p.h - 1));
      continue;
    }
    sp.theta.push_back(bogoliubov_angle(p.r, p.h, k));
    sp.energy.push_back(2 * std::hypot(p.h - std::cos(k), p.r * std::sin(k)));
  }
  return sp;
}

double log_overlap(const ChainParams& p, double xi) {
  p.validate();
  return log_overlap_modes(p, build_modes(p), xi);
}

double overlap(const ChainParams& p, double xi) {
  p.validate();
  Modes md = build_modes(p);
  const double c2 = std::pow(std::cos(xi / 2), 2), s2 = std::pow(std::sin(xi / 2), 2);
  double sign = 1;
  for (size_t i = 0; i < md.c.size(); ++i)
    if (md.c[i] * c2 + md.s[i] * s2 * md.cot[i] < 0) sign = -sign;
  const bool even = p.N % 2 == 0;
  double pre;
  if (p.b != 0) pre = even ? 1.0 : std::cos(xi / 2);
  else pre = std::sqrt(static_cast<double>(p.N)) * (even ? std::sin(xi / 2) * std::cos(xi / 2) : std::sin(xi / 2));
  if (pre < 0) sign = -sign;
  return sign * std::exp(log_overlap_modes(p, md, xi));
}

DensityResult entanglement_density_N(const ChainParams& p) {
  p.validate();
  Modes md = build_modes(p);
  XiOptimum o = best_xi(p, md);
  DensityResult r;
  r.density = std::max(0.0, -2 * o.log_value / (p.N * kLn2));
  r.xi = o.xi;
  r.at_boundary = o.boundary;
  return r;
}

double dEN_dh(const ChainParams& p) {
  p.validate();
  Modes md = build_modes(p);
  XiOptimum o = best_xi(p, md);
  const double c2 = std::pow(std::cos(o.xi / 2), 2), s2 = std::pow(std::sin(o.xi / 2), 2);
  double acc = 0;
  for (size_t i = 0; i < md.c.size(); ++i) {
    const double t = md.c[i] * c2 + md.s[i] * s2 * md.cot[i];
    const double dt = (-md.s[i] * c2 + md.c[i] * s2 * md.cot[i]) * md.dtheta[i];
    acc += dt / t;
  }
  return -2 * acc / (p.N * kLn2);
}

SectorEnergies energies(int N, double r, double h) {
  ChainParams{N, r, h, 0.5}.validate();
  SectorEnergies e{h - 1, 0};
  for (int m = 1; m < N; ++m) {
    const double k = 2 * kPi * m / N;
    e.odd -= std::hypot(h - std::cos(k), r * std::sin(k));
  }
  for (int m = 0; m < N; ++m) {
    const double k = 2 * kPi * (m + 0.5) / N;
    e.even -= std::hypot(h - std::cos(k), r * std::sin(k));
  }
  return e;
}

double thermo_density(double r, double h) {
  check_rh(r, h);
  if (r == 0) return xx_density(h);
  Peak pk = thermo_optimum(r, h);
  return std::max(0.0, -2 / kLn2 * pk.value);
}

double dE_dh(double r, double h) {
  check_rh(r, h);
  if (std::abs(h - 1) < 1e-6) throw precondition_error("h is too close to the critical field");
  if (r == 0) {
    if (h > 1) return 0;
    const double a = std::acos(h);
    return std::log(a / (kPi - a) * std::sqrt((1 + h) / (1 - h))) / (kPi * kLn2 * std::sqrt(1 - h * h));
  }
  const double xi = thermo_optimum(r, h).x;
  const double c2 = std::pow(std::cos(xi / 2), 2), s2 = std::pow(std::sin(xi / 2), 2);
  const double I = integrate_half(
      [&](double mu) {
        ThetaAt t = theta_at(r, h, mu);
        return (-t.s * c2 + t.c * s2 * t.cot) * t.dth / (t.c * c2 + t.s * s2 * t.cot);
      },
      split_points(r, h));
  return -2 / kLn2 * I;
}

ScalingFit scaling_fit(double r, const std::vector<int>& N_list) {
  if (!(r > 0 && r <= 1)) throw precondition_error("scaling fit needs r in (0, 1]");
  if (N_list.size() < 4) throw precondition_error("scaling fit needs at least four sizes");
  for (size_t i = 0; i < N_list.size(); ++i) {
    if (N_list[i] < 10000) throw precondition_error("scaling fit sizes must be >= 10^4");
    if (i > 0 && N_list[i] <= N_list[i - 1]) throw precondition_error("sizes must be ascending");
  }
  ScalingFit fit;
  for (int N : N_list) {
    auto slope = [&](double h) { return dEN_dh(ChainParams{N, r, h, 0.5}); };
    // The peak sits within a few 2 pi r / N of h = 1; widen the window until it is interior.
    double half = 30 * 2 * kPi * r / N;
    const int cells = 60;
    int at = -1;
    std::vector<double> hs, vs;
    for (;;) {
      const double lo = std::max(0.8, 1 - half), hi = std::min(1.2, 1 + half);
      hs.assign(cells + 1, 0);
      vs.assign(cells + 1, 0);
      for (int i = 0; i <= cells; ++i) {
        hs[i] = lo + (hi - lo) * i / cells;
        vs[i] = slope(hs[i]);
      }
      at = static_cast<int>(std::max_element(vs.begin(), vs.end()) - vs.begin());
      if (at > 0 && at < cells) break;
      if (lo <= 0.8 && hi >= 1.2) throw convergence_error("slope peak not bracketed in [0.8, 1.2]");
      half *= 4;
    }
    auto res = boost::math::tools::brent_find_minima([&](double h) { return -slope(h); }, hs[at - 1], hs[at + 1], 50);
    fit.N.push_back(N);
    fit.h_max.push_back(res.first);
    fit.peak.push_back(-res.second);
  }
  const int n = static_cast<int>(fit.N.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(static_cast<double>(fit.N[i])), y = fit.peak[i];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  fit.intercept = (sy - fit.slope * sx) / n;
  fit.nu = 1 / (2 * kPi * r * kLn2) / fit.slope;
  return fit;
}

// ---- exact diagonalization ----

namespace {

struct Sector {
  int N;
  std::vector<std::uint32_t> states;
  std::vector<int> index;  // full -> sector, -1 outside
};

Sector make_sector(int N, int parity) {
  Sector s{N, {}, std::vector<int>(1u << N, -1)};
  for (std::uint32_t x = 0; x < (1u << N); ++x)
    if (std::popcount(x) % 2 == parity) {
      s.index[x] = static_cast<int>(s.states.size());
      s.states.push_back(x);
    }
  return s;
}

// Bit 1 is a down spin. Each bond flips both spins with amplitude -r (aligned) or -1 (opposite).
Eigen::VectorXd apply_h(const Sector& s, double r, double h, const Eigen::VectorXd& v) {
  const int N = s.N;
  Eigen::VectorXd out(v.size());
  for (size_t i = 0; i < s.states.size(); ++i) {
    const std::uint32_t x = s.states[i];
    double acc = -h * (N - 2 * std::popcount(x)) * v(i);
    for (int j = 0; j < N; ++j) {
      const std::uint32_t mask = (1u << j) | (1u << ((j + 1) % N));
      const std::uint32_t y = x ^ mask;
      const bool aligned = ((x >> j) & 1) == ((x >> ((j + 1) % N)) & 1);
      acc += (aligned ? -r : -1.0) * v(s.index[y]);
    }
    out(i) = acc;
  }
  return out;
}

// Lowest eigenpair by Lanczos with full reorthogonalization, restarted from the Ritz vector.
std::pair<double, Eigen::VectorXd> lanczos_lowest(const Sector& s, double r, double h, bool& converged) {
  const long n = static_cast<long>(s.states.size());
  Rng rng(12345);
  std::normal_distribution<double> nd;
  Eigen::VectorXd start(n);
  for (long i = 0; i < n; ++i) start(i) = nd(rng);
  start.normalize();
  const int kmax = static_cast<int>(std::min<long>(n, 250));
  double energy = 0;
  converged = false;
  for (int restart = 0; restart < 6 && !converged; ++restart) {
    Eigen::MatrixXd Q(n, kmax);
    std::vector<double> alpha, beta;
    Q.col(0) = start;
    int used = 0;
    Eigen::VectorXd ritz;
    for (int j = 0; j < kmax; ++j) {
      Eigen::VectorXd w = apply_h(s, r, h, Q.col(j));
      alpha.push_back(Q.col(j).dot(w));
      for (int pass = 0; pass < 2; ++pass) w -= Q.leftCols(j + 1) * (Q.leftCols(j + 1).transpose() * w);
      const double b = w.norm();
      used = j + 1;
      const bool last = j + 1 == kmax || b < 1e-13;
      if (j % 10 == 9 || last) {
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(used, used);
        for (int i = 0; i < used; ++i) {
          T(i, i) = alpha[i];
          if (i + 1 < used) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        energy = es.eigenvalues()(0);
        ritz = es.eigenvectors().col(0);
        if (last || b * std::abs(ritz(used - 1)) < 1e-13) break;
      }
      beta.push_back(b);
      Q.col(j + 1) = w / b;
    }
    start = (Q.leftCols(used) * ritz).normalized();
    const double resid = (apply_h(s, r, h, start) - energy * start).norm();
    converged = resid < 1e-10;
  }
  return {energy, start};
}

}  // namespace

double ansatz_scan(const PureState& psi, double* xi_out) {
  const int N = psi.parties();
  for (int d : psi.dims)
    if (d != 2) throw precondition_error("ansatz scan needs qubits");
  std::vector<cplx> w(N + 1, 0.0);
  for (long x = 0; x < psi.dim(); ++x) w[std::popcount(static_cast<unsigned long>(x))] += psi.amps(x);
  auto mag = [&](double xi) {
    const double c = std::cos(xi / 2), s = std::sin(xi / 2);
    cplx acc = 0;
    for (int p = 0; p <= N; ++p) acc += w[p] * std::pow(c, N - p) * std::pow(s, p);
    return std::abs(acc);
  };
  Peak pk;
  const int cells = 400;
  for (int i = 0; i <= cells; ++i) {
    const double x = -kPi + 2 * kPi * i / cells;
    const double v = mag(x);
    if (v > pk.value) pk = {v, x, false};
  }
  const double step = 2 * kPi / cells;
  auto res = boost::math::tools::brent_find_minima([&](double x) { return -mag(x); }, pk.x - step, pk.x + step, 52);
  if (-res.second > pk.value) pk = {-res.second, res.first, false};
  if (xi_out) *xi_out = pk.x;
  return pk.value;
}

EdResult ed_oracle(int N, double r, double h, double b, bool unrestricted) {
  ChainParams{N, r, h, b}.validate();
  if (N > 14) throw precondition_error("exact diagonalization is limited to N <= 14");
  Sector s = make_sector(N, b == 0 ? 1 : 0);
  EdResult out;
  auto [e, v] = lanczos_lowest(s, r, h, out.converged);
  out.energy = e;
  Eigen::VectorXcd full = Eigen::VectorXcd::Zero(1L << N);
  // Fix the sign so the largest-magnitude amplitude is positive.
  long imax = 0;
  v.cwiseAbs().maxCoeff(&imax);
  if (v(imax) < 0) v = -v;
  for (size_t i = 0; i < s.states.size(); ++i) full(s.states[i]) = v(i);
  out.state = normalized(Dims(N, 2), full);
  out.lambda_scan = ansatz_scan(out.state, &out.xi_scan);
  if (unrestricted) {
    HartreeConfig cfg;
    cfg.restarts = 8;
    out.lambda_solver = entanglement_eigenvalue(out.state, cfg).lambda_max;
  }
  return out;
}

std::array<Eigen::Vector3d, 2> disorder_line_ground(double r) {
  if (!(r > 0 && r <= 1)) throw precondition_error("r must lie in (0, 1]");
  const double x = std::sqrt(2 * r / (1 + r)), z = std::sqrt((1 - r) / (1 + r));
  return {Eigen::Vector3d(x, 0, z), Eigen::Vector3d(-x, 0, z)};
}

double product_energy_per_site(const Eigen::Vector3d& n, double r, double h) {
  return -(0.5 * (1 + r) * n.x() * n.x() + 0.5 * (1 - r) * n.y() * n.y() + h * n.z());
}

}  // namespace gme

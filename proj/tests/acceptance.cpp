// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "gme/bipartite.hpp"
#include "gme/boundent.hpp"
#include "gme/geomopt.hpp"
#include "gme/mixedhull.hpp"
#include "gme/protocols.hpp"
#include "gme/qstate.hpp"
#include "gme/ree.hpp"
#include "gme/xychain.hpp"

using namespace gme;

namespace {

const double kPi = std::acos(-1.0);

struct Check {
  bool ok = true;
  std::string note;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    if (note.size() < 400) note += (note.empty() ? "" : "; ") + what;
    ok = false;
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      char buf[256];
      std::snprintf(buf, sizeof buf, "%s: got %.12g want %.12g tol %.1e", what.c_str(), got, want, tol);
      expect(false, buf);
    }
  }
};

int failures = 0;

void run(int id, const char* title, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) c.expect(false, "runtime " + std::to_string(secs) + " s over limit");
  if (!c.ok) ++failures;
  std::printf("criterion %2d %-28s %s  (%.1f s)%s%s\n", id, title, c.ok ? "PASS" : "FAIL", secs,
              c.note.empty() ? "" : "  ", c.note.c_str());
  std::fflush(stdout);
}

double lam(const PureState& psi, std::uint64_t seed = 0) {
  HartreeConfig cfg;
  cfg.seed = seed;
  return entanglement_eigenvalue(psi, cfg).lambda_max;
}

PartitionSpec cut(std::vector<int> a, int n) { return PartitionSpec::from_group(std::move(a), n); }

// Bipartite pure-state E_sin2 from the Schmidt spectrum of the reshaped amplitude matrix.
double bipartite_esin2(const Eigen::VectorXcd& v, int d) {
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = v(i * d + j);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const double s = svd.singularValues()(0);
  return 1 - s * s / v.squaredNorm();
}

// Average E_sin2 over a random decomposition sum_i |psi_i><psi_i| of rho.
double random_decomposition_average(const DensityMatrix& rho, int d, Rng& rng) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.m);
  std::vector<Eigen::VectorXcd> cols;
  for (int j = 0; j < rho.dim(); ++j)
    if (es.eigenvalues()(j) > 1e-12) cols.push_back(std::sqrt(es.eigenvalues()(j)) * es.eigenvectors().col(j));
  const int R = static_cast<int>(cols.size());
  const int M = R + static_cast<int>(rng() % 4);
  Eigen::MatrixXcd U = random_unitary(M, rng);
  double avg = 0;
  for (int i = 0; i < M; ++i) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rho.dim());
    for (int j = 0; j < R; ++j) v += U(i, j) * cols[j];
    const double p = v.squaredNorm();
    if (p > 1e-14) avg += p * bipartite_esin2(v, d);
  }
  return avg;
}

DensityMatrix ghz_w_mix(double x, double y) {
  return mix({x, y, 1 - x - y}, {projector(ghz_state(3)), projector(w_state()), projector(wtilde_state())});
}

}  // namespace

int main() {
  std::printf("gme-lab acceptance suite\n");

  run(1, "closed-form GME table", 10, [](Check& c) {
    c.near(lam(ghz_state(3)), 1 / std::sqrt(2.0), 1e-7, "GHZ");
    c.near(lam(w_state()), 2.0 / 3, 1e-7, "W");
    c.near(lam(wtilde_state()), 2.0 / 3, 1e-7, "Wtilde");
    c.near(std::pow(lam(dicke_state(4, 2)), 2), 3.0 / 8, 1e-7, "S(4,2)");
    c.near(std::pow(lam(det_state(3)), 2), 1.0 / 6, 1e-7, "Det3");
  });

  run(2, "two-qubit consistency", 30, [](Check& c) {
    Rng rng(2024);
    for (int t = 0; t < 500; ++t) {
      auto psi = random_pure({2, 2}, rng);
      // Concurrence of a pure two-qubit state, 2 |a00 a11 - a01 a10|.
      const auto& a = psi.amps;
      const double C = 2 * std::abs(a(0) * a(3) - a(1) * a(2));
      const double l = lam(psi, t);
      c.near(l * l, (1 + std::sqrt(std::max(0.0, 1 - C * C))) / 2, 1e-8, "pure state " + std::to_string(t));
    }
    // Magic basis: Phi+, i Phi-, i Psi+, Psi-.
    const cplx I(0, 1);
    std::vector<Eigen::VectorXcd> e = {bell_state(0).amps, I * bell_state(1).amps, I * bell_state(2).amps,
                                       bell_state(3).amps};
    const int H[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, 1, -1, -1}, {1, -1, -1, 1}};
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 200; ++t) {
      std::vector<double> l(4);
      l[0] = 0.5 + 0.5 * u(rng);
      double rest = 0;
      for (int j = 1; j < 4; ++j) rest += (l[j] = -std::log(u(rng) + 1e-300));
      for (int j = 1; j < 4; ++j) l[j] *= (1 - l[0]) / rest;
      std::vector<int> order = {0, 1, 2, 3};
      std::shuffle(order.begin(), order.end(), rng);
      Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
      std::vector<Eigen::VectorXcd> y(4);
      for (int j = 0; j < 4; ++j) {
        const Eigen::VectorXcd& ej = e[order[j]];
        rho += l[j] * ej * ej.adjoint();
        y[j] = (j == 0 ? cplx(1) : I) * std::sqrt(l[j]) * ej;
      }
      DensityMatrix dm({2, 2}, rho);
      double upper = 0;
      Eigen::MatrixXcd recon = Eigen::MatrixXcd::Zero(4, 4);
      for (int j = 0; j < 4; ++j) {
        Eigen::VectorXcd z = Eigen::VectorXcd::Zero(4);
        for (int k = 0; k < 4; ++k) z += 0.5 * H[j][k] * y[k];
        recon += z * z.adjoint();
        const double p = z.squaredNorm();
        const double lz = lam(normalized({2, 2}, z), t);
        upper += p * (1 - lz * lz);
      }
      c.expect((recon - rho).norm() < 1e-12, "decomposition does not reproduce rho");
      const double exact = gme_two_qubit(dm);
      c.expect(upper >= exact - 1e-9, "convex-roof bound undercuts gme_two_qubit");
      c.near(upper, exact, 1e-3, "mixed state " + std::to_string(t));
    }
  });

  run(3, "Werner and isotropic", 0, [](Check& c) {
    for (int d : {2, 3}) {
      c.near(werner_gme(-1, d), 0.5, 1e-15, "werner_gme(-1)");
      c.near(isotropic_gme(1.0 / d, d), 0, 1e-15, "isotropic_gme(1/d)");
      c.near(isotropic_gme(1, d), 1 - 1.0 / d, 1e-15, "isotropic_gme(1)");
    }
    struct Target {
      DensityMatrix rho;
      double closed;
      int d;
    };
    std::vector<Target> targets;
    for (int d : {2, 3}) {
      for (double f : {-1.0, -0.6, -0.2}) targets.push_back({werner_state(f, d), werner_gme(f, d), d});
      for (double F : {1.0, 0.8, 0.6}) targets.push_back({isotropic_state(F, d), isotropic_gme(F, d), d});
    }
    Rng rng(7);
    double worst = 1e300;
    for (int t = 0; t < 1000; ++t) {
      const auto& tg = targets[t % targets.size()];
      worst = std::min(worst, random_decomposition_average(tg.rho, tg.d, rng) - tg.closed);
    }
    c.expect(worst >= -1e-6, "a random decomposition undercuts the closed form by " + std::to_string(-worst));
  });

  run(4, "GHZ/W/Wtilde surface", 0, [](Check& c) {
    c.expect(ghz_w_wtilde_mixed_gme(0.25, 0.375) <= 1e-6, "E at (1/4, 3/8)");
    auto rho = ghz_w_mix(0.25, 0.375);
    for (int p = 0; p < 3; ++p) c.expect(negativity(rho, cut({p}, 3)) <= 1e-9, "negativity at (1/4, 3/8)");
    c.near(ghz_w_wtilde_mixed_gme(1, 0), 0.5, 1e-9, "E(1, 0)");
    c.near(negativity(projector(ghz_state(3)), cut({0}, 3)), 1, 1e-12, "N(GHZ)");
    c.near(negativity(projector(w_state()), cut({0}, 3)), 2 * std::sqrt(2.0) / 3, 1e-12, "N(W)");
    const double eg = 1 - std::pow(lam(ghz_state(3)), 2), ew = 1 - std::pow(lam(w_state()), 2);
    c.near(eg, 0.5, 1e-9, "E(GHZ)");
    c.near(ew, 5.0 / 9, 1e-9, "E(W)");
    c.expect(eg < ew, "E ordering");
  });

  run(5, "REE suite", 300, [](Check& c) {
    c.near(ree_lower_bound(ghz_state(3)).value, 1, 1e-9, "bound GHZ");
    c.near(ree_lower_bound(w_state()).value, std::log2(9.0 / 4), 1e-9, "bound W");
    c.near(numeric_ree(projector(ghz_state(3))).value, 1, 5e-3, "numeric GHZ");
    c.near(numeric_ree(projector(w_state())).value, std::log2(9.0 / 4), 5e-3, "numeric W");
    for (int n = 2; n <= 6; ++n)
      for (int k = 1; k < n; ++k) {
        // Lambda(n,k) = sqrt(C(n,k)) (k/n)^(k/2) ((n-k)/n)^((n-k)/2)
        const double binom = std::tgamma(n + 1.0) / (std::tgamma(k + 1.0) * std::tgamma(n - k + 1.0));
        const double L = std::sqrt(binom * std::pow(double(k) / n, k) * std::pow(double(n - k) / n, n - k));
        const double want = -2 * std::log2(L);
        const std::string tag = "S(" + std::to_string(n) + "," + std::to_string(k) + ")";
        c.near(ree_lower_bound(dicke_state(n, k)).value, want, 1e-9, "bound " + tag);
        c.near(numeric_ree(projector(dicke_state(n, k))).value, want, 5e-3, "numeric " + tag);
      }
    for (int i = 1; i <= 9; ++i) {
      const double s = i / 10.0;
      const double f = s * std::log2(4 * s / ((1 + s) * (1 + s))) + (1 - s) * std::log2(2 / (1 + s));
      c.near(F_function(2, {s, 1 - s, 0}), f, 1e-12, "F_2;0,1");
    }
    const int fam[8][3] = {{3, 0, 1}, {3, 0, 2}, {3, 1, 2}, {4, 0, 1}, {4, 0, 2}, {4, 0, 3}, {4, 1, 2}, {4, 1, 3}};
    for (const auto& f : fam)
      for (int i = 1; i <= 9; ++i) {
        const double s = i / 10.0;
        const double co = conjectured_ree(f[0], f[1], f[2], s).value;
        const double num = numeric_ree(two_term_mixture(f[0], f[1], f[2], s)).value;
        char tag[64];
        std::snprintf(tag, sizeof tag, "rho_%d;%d,%d(%.1f)", f[0], f[1], f[2], s);
        c.near(num, co, 1e-2, tag);
      }
  });

  run(6, "bound entanglement", 0, [](Check& c) {
    auto sm = smolin_gme(1000, 0);
    c.near(sm.e_sin2, 0.5, 1e-9, "Smolin E_sin2");
    c.near(sm.e_log2, 1, 1e-9, "Smolin E_log2");
    c.near(sm.e_r, 1, 1e-9, "Smolin E_R");
    c.near(sm.member_lambda, 1 / std::sqrt(2.0), 1e-9, "Smolin member Lambda");
    c.expect(sm.sweep_min >= 0.5 - 1e-6, "Smolin sweep undercuts 1/2");
    auto rho = smolin_state();
    c.near(relative_entropy(rho, smolin_closest_separable()), 1, 1e-9, "Smolin relative entropy to its separable state");
    for (int p = 0; p < 4; ++p) c.near(negativity(rho, cut({p}, 4)), 1, 1e-9, "Smolin 1:3 negativity");
    for (int p = 1; p < 4; ++p) c.near(negativity(rho, cut({0, p}, 4)), 0, 1e-9, "Smolin 2:2 negativity");
    for (int N : {4, 5, 6})
      for (double x : {1.0 / (N + 1), 0.3, 0.7}) {
        auto g = dur_gme(N, x);
        c.near(g.e_sin2, x / 2, 1e-12, "Dur E_sin2");
        c.expect(g.converged && g.max_lambda_error <= 1e-9, "Dur decomposition members");
        auto d = dur_state(N, x);
        c.near(dur_negativity_one(N, x), negativity(d, cut({0}, N)), 1e-9, "Dur N_1:rest");
        c.near(dur_negativity_two(N, x), negativity(d, cut({0, 1}, N)), 1e-9, "Dur N_12:rest");
      }
    auto upb = upb_state();
    double min_ev = 1e300;
    for (int p = 0; p < 3; ++p) min_ev = std::min(min_ev, pt_spectrum(upb, cut({p}, 3)).minCoeff());
    c.expect(min_ev >= -1e-10, "UPB partial transpose");
    c.expect(upb_check(20000).min_pt_eigenvalue >= -1e-10, "upb_check");
  });

  run(7, "Bell and distillability", 0, [](Check& c) {
    auto singlet = projector(bell_state(3));
    c.near(chsh_max(singlet), 2 * std::sqrt(2.0), 1e-9, "CHSH max");
    // Standard optimal settings: a = 0, a' = pi/2, b = pi/4, b' = -pi/4 in the x-y plane.
    const double chsh_val = std::abs(chsh(singlet, BellSettings::planar({0, kPi / 4}, {kPi / 2, -kPi / 4})));
    c.near(chsh_val, 2 * std::sqrt(2.0), 1e-9, "CHSH at fixed settings");
    for (int N = 2; N <= 6; ++N) {
      auto mk = mk_maximize(projector(ghz_state(N)), 8, N);
      c.near(mk.value, std::pow(2.0, (N - 1) / 2.0), 1e-6, "MK on GHZ_" + std::to_string(N));
    }
    for (int N = 4; N <= 20; ++N) {
      const double bound = std::pow(2.0, 1 - N);
      auto r = nondistill_consistency(N, bound);
      c.near(r.bound, bound, 1e-15, "non-distillability bound");
      c.expect(r.nondistillable && !r.violates_mk && !r.violates_three_setting && !r.violates_functional,
               "violation at the bound, N = " + std::to_string(N));
      c.expect(r.thresholds_exceed_bound, "thresholds vs bound, N = " + std::to_string(N));
      c.expect(std::pow(2.0, -(N - 1) / 2.0) > bound && std::sqrt(3.0) * std::pow(2.0 / 3, N) > bound &&
                   2 * std::pow(2 / kPi, N) > bound,
               "independent thresholds, N = " + std::to_string(N));
    }
  });

  run(8, "protocols", 0, [](Check& c) {
    c.expect(werner_step(1.0 / 3) == 1.0 / 3 || std::abs(werner_step(1.0 / 3) - 1.0 / 3) <= 1e-16,
             "fixed point at 1/3");
    for (double r : {0.4, 0.6, 0.8}) c.near(werner_step_circuit(r), werner_step(r), 1e-12, "circuit vs closed form");
    auto s = schumacher_demo();
    c.near(s.fidelity, 0.9234, 5e-4, "Schumacher fidelity");
    c.near(s.baseline, 0.8535, 5e-4, "Schumacher baseline");
  });

  run(9, "XY chain", 600, [](Check& c) {
    // (a) analytic overlaps against exact diagonalization.
    double err = 0;
    for (int N : {12, 13, 14})
      for (double r : {0.5, 1.0})
        for (int i = 0; i <= 20; ++i) {
          const double h = 0.1 * i;
          for (double b : {0.0, 0.5}) {
            ChainParams p{N, r, h, b};
            auto ed = ed_oracle(N, r, h, b);
            c.expect(ed.converged, "Lanczos");
            std::vector<cplx> w(N + 1, 0.0);
            for (long x = 0; x < ed.state.dim(); ++x)
              w[std::popcount(static_cast<unsigned long>(x))] += ed.state.amps(x);
            for (int j = 0; j <= 8; ++j) {
              const double xi = -kPi + 2 * kPi * j / 8 + 0.1;
              cplx acc = 0;
              for (int q = 0; q <= N; ++q) acc += w[q] * std::pow(std::cos(xi / 2), N - q) * std::pow(std::sin(xi / 2), q);
              err = std::max(err, std::abs(std::abs(overlap(p, xi)) - std::abs(acc)));
            }
            const double L = std::pow(2.0, -0.5 * N * entanglement_density_N(p).density);
            err = std::max(err, std::abs(L - ed.lambda_scan));
          }
        }
    c.near(err, 0, 1e-9, "(a) overlap vs ED");
    // (b)
    c.near(thermo_density(0, 0), 0.159, 1e-3, "(b) XX zero field");
    // (c)
    for (auto [r, h] : {std::pair{0.6, 0.8}, std::pair{0.8, 0.6}})
      c.expect(std::abs(thermo_density(r, h)) <= 1e-6, "(c) disorder line");
    // (d)
    auto best = boost::math::tools::brent_find_minima([](double h) { return -thermo_density(1, h); }, 1.0, 1.3, 40);
    double grid_best = 0, grid_h = 0;
    for (double h = 1.0; h <= 1.3; h += 0.005)
      if (thermo_density(1, h) > grid_best) grid_best = thermo_density(1, h), grid_h = h;
    c.expect(std::abs(grid_h - best.first) < 0.01, "(d) Brent and grid maxima disagree");
    c.expect(best.first >= 1.08 && best.first <= 1.15, "(d) Ising maximum at h = " + std::to_string(best.first));
    // (e), (f)
    const std::vector<int> Ns = {10000, 30000, 50000, 80000, 100000};
    auto f01 = scaling_fit(0.1, Ns);
    c.near(f01.slope, 2.30, 0.10, "(e) slope at r = 0.1");
    c.near(f01.intercept, -6.95, 0.3, "(e) intercept at r = 0.1");
    c.expect(f01.nu >= 0.95 && f01.nu <= 1.05, "(f) nu at r = 0.1");
    auto f1 = scaling_fit(1.0, Ns);
    c.expect(f1.nu >= 0.95 && f1.nu <= 1.05, "(f) nu at r = 1");
    // (g) dE/dh ~ A / sqrt(1 - h) for the XX chain.
    const double A = -std::log2(kPi / 2) / (std::sqrt(2.0) * kPi);
    const double eps = 1e-5;
    const double amp = dE_dh(0, 1 - eps) * std::sqrt(eps);
    c.expect(std::abs(amp / A - 1) <= 0.03, "(g) XX amplitude " + std::to_string(amp));
  });

  run(10, "property suites", 0, [](Check& c) {
    Rng rng(99);
    for (int t = 0; t < 20; ++t) {
      auto psi = random_pure({2, 2, 2}, rng);
      Eigen::VectorXcd v = psi.amps;
      for (int p = 0; p < 3; ++p) v = apply_local(v, psi.dims, p, random_unitary(2, rng));
      c.near(lam(PureState(psi.dims, v), t), lam(psi, t), 1e-8, "local-unitary invariance");
    }
    for (int t = 0; t < 10; ++t) {
      auto a = random_pure({2, 2}, rng), b = random_pure({2, 2}, rng);
      c.near(lam(tensor_product(a, b), t), lam(a, t) * lam(b, t), 1e-8, "multiplicativity (2x2)");
    }
    c.near(lam(tensor_product(ghz_state(3), w_state())), lam(ghz_state(3)) * lam(w_state()), 1e-8,
           "multiplicativity GHZ x W");
    std::uniform_real_distribution<double> u(0, kPi / 2);
    double worst = -1e300;
    for (int t = 0; t < 40; ++t) {
      auto psi = random_pure({2, 2, 2}, rng);
      const int party = t % 3;
      // A1 = U1 diag(cos a, cos b) V, A2 = U2 diag(sin a, sin b) V, so A1^dag A1 + A2^dag A2 = I.
      const double a = u(rng), bb = u(rng);
      Eigen::MatrixXcd V = random_unitary(2, rng);
      Eigen::MatrixXcd D1 = Eigen::MatrixXcd::Zero(2, 2), D2 = D1;
      D1(0, 0) = std::cos(a), D1(1, 1) = std::cos(bb);
      D2(0, 0) = std::sin(a), D2(1, 1) = std::sin(bb);
      Eigen::MatrixXcd A1 = random_unitary(2, rng) * D1 * V, A2 = random_unitary(2, rng) * D2 * V;
      c.expect((A1.adjoint() * A1 + A2.adjoint() * A2 - Eigen::MatrixXcd::Identity(2, 2)).norm() < 1e-12,
               "Kraus completeness");
      const double e0 = 1 - std::pow(lam(psi, t), 2);
      double avg = 0;
      for (const auto& A : {A1, A2}) {
        Eigen::VectorXcd w = apply_local(psi.amps, psi.dims, party, A);
        const double p = w.squaredNorm();
        if (p < 1e-14) continue;
        avg += p * (1 - std::pow(lam(normalized(psi.dims, w), t), 2));
      }
      worst = std::max(worst, avg - e0);
    }
    c.expect(worst <= 1e-6, "unilocal operation raised E_sin2 by " + std::to_string(worst));
    const double f = std::log2(1 + 4 * 0.09) - (4 * 0.09 / (1 + 4 * 0.09)) * 2;
    c.near(log_monotone_witness(4, 0.3), f, 1e-14, "witness formula");
    c.expect(log_monotone_witness(4, 0.3) < 0, "f(4, 0.3) < 0");
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

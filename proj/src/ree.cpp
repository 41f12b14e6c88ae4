#include "gme/ree.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <ceres/ceres.h>
#include <cmath>
#include <limits>
#include <numeric>

namespace gme {

namespace {

double log_binom(int n, int k) { return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0); }

}  // namespace

DensityMatrix SeparableAnsatz::sigma(const Dims& dims) const {
  validate();
  const long D = total_dim(dims);
  DensityMatrix out;
  out.dims = dims;
  out.m = Eigen::MatrixXcd::Zero(D, D);
  for (size_t i = 0; i < products.size(); ++i) {
    if (products[i].dims() != dims) throw precondition_error("ansatz product dims mismatch");
    Eigen::VectorXcd v = products[i].full();
    out.m.noalias() += weights[i] * v * v.adjoint();
  }
  return out;
}

void SeparableAnsatz::validate() const {
  if (weights.size() != products.size()) throw precondition_error("one weight per product state");
  if (weights.empty()) throw precondition_error("empty ansatz");
  double s = 0;
  for (double w : weights) {
    if (w < 0) throw precondition_error("negative ansatz weight");
    s += w;
  }
  if (std::abs(s - 1) > 1e-10) throw precondition_error("ansatz weights must sum to 1");
}

ReeBound ree_lower_bound(const PureState& psi, const HartreeConfig& cfg) {
  auto rep = entanglement_eigenvalue(psi, cfg);
  return {std::max(0.0, rep.e_log2), rep.converged};
}

double F_function(int n, const std::vector<double>& p) {
  if (n < 1) throw precondition_error("n must be >= 1");
  if (static_cast<int>(p.size()) != n + 1) throw precondition_error("need n + 1 probabilities");
  double tot = 0, alpha = 0;
  for (int k = 0; k <= n; ++k) {
    if (p[k] < 0) throw precondition_error("negative probability");
    tot += p[k];
    alpha += k * p[k];
  }
  if (std::abs(tot - 1) > 1e-10) throw precondition_error("probabilities must sum to 1");
  const double la = alpha > 0 ? std::log(alpha) : 0.0;
  const double lb = n - alpha > 0 ? std::log(n - alpha) : 0.0;
  double f = 0;
  for (int k = 0; k <= n; ++k) {
    if (p[k] <= 0) continue;
    double t = std::log(p[k]) + n * std::log(static_cast<double>(n)) - log_binom(n, k);
    if (k > 0) t -= k * la;
    if (n - k > 0) t -= (n - k) * lb;
    f += p[k] * t;
  }
  return std::max(0.0, f / std::log(2.0));
}

DensityMatrix symmetric_mixture(int n, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != n + 1) throw precondition_error("need n + 1 probabilities");
  std::vector<double> w;
  std::vector<DensityMatrix> parts;
  for (int k = 0; k <= n; ++k) {
    if (p[k] < 0) throw precondition_error("negative probability");
    if (p[k] == 0) continue;
    w.push_back(p[k]);
    parts.push_back(projector(dicke_state(n, k)));
  }
  return mix(w, parts);
}

DensityMatrix two_term_mixture(int n, int k1, int k2, double s) {
  if (k1 == k2) throw precondition_error("k1 must differ from k2");
  if (k1 < 0 || k2 < 0 || k1 > n || k2 > n) throw precondition_error("k must lie in [0, n]");
  if (s < 0 || s > 1) throw precondition_error("mixture weight must lie in [0, 1]");
  std::vector<double> p(n + 1, 0.0);
  p[k1] = s;
  p[k2] = 1 - s;
  return symmetric_mixture(n, p);
}

DensityMatrix phase_averaged_product(int n, double q) {
  if (q < 0 || q > 1) throw precondition_error("q must lie in [0, 1]");
  std::vector<double> p(n + 1);
  for (int k = 0; k <= n; ++k) {
    double lp = log_binom(n, k);
    lp += k > 0 ? k * std::log(q) : 0.0;
    lp += n - k > 0 ? (n - k) * std::log1p(-q) : 0.0;
    p[k] = std::isfinite(lp) ? std::exp(lp) : 0.0;
  }
  double s = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) x /= s;
  return symmetric_mixture(n, p);
}

Curve1D F_curve(int n, int k1, int k2, int grid) {
  if (k1 == k2) throw precondition_error("k1 must differ from k2");
  if (k1 < 0 || k2 < 0 || k1 > n || k2 > n) throw precondition_error("k must lie in [0, n]");
  if (grid < 3) throw precondition_error("grid must be >= 3");
  return sample_curve(grid, [&](double s) {
    std::vector<double> p(n + 1, 0.0);
    p[k1] = s;
    p[k2] = 1 - s;
    return F_function(n, p);
  });
}

std::optional<double> ree_closed_form(int n, int k1, int k2, double s) {
  if (s < 0 || s > 1) throw precondition_error("mixture weight must lie in [0, 1]");
  // Canonical orientation: s weights the first listed state.
  auto xlog = [](double w, double arg) { return w > 0 ? w * std::log2(arg) : 0.0; };
  const double t = 1 - s;
  auto key = [](int a, int b) { return std::make_pair(a, b); };
  auto k = key(k1, k2);
  bool swapped = false;
  if (k.first > k.second && !(n == 3 && k1 == 2 && k2 == 1)) {
    std::swap(k.first, k.second);
    swapped = true;
  }
  const double u = swapped ? t : s;
  const double v = 1 - u;
  if (n == 2 && k == key(0, 1)) return xlog(u, 4 * u / ((1 + u) * (1 + u))) + xlog(v, 2 / (1 + u));
  if (n == 3 && k == key(2, 1))
    return xlog(u, 9 * u / ((1 + u) * (1 + u) * (2 - u))) + xlog(v, 9 * v / ((2 - u) * (2 - u) * (1 + u)));
  if (n == 3 && k == key(0, 1)) return xlog(u, 27 * u / std::pow(2 + u, 3)) + xlog(v, 9 / ((2 + u) * (2 + u)));
  if (n == 4 && k == key(0, 1)) return xlog(u, 256 * u / std::pow(3 + u, 4)) + xlog(v, 64 / std::pow(3 + u, 3));
  if (n == 4 && k == key(1, 2))
    return xlog(u, 64 * u / ((2 - u) * std::pow(2 + u, 3))) +
           xlog(v, 128 * v / (3 * (2 - u) * (2 - u) * (2 + u) * (2 + u)));
  if (n == 4 && k == key(1, 3))
    return xlog(u, 64 * u / ((3 - 2 * u) * std::pow(1 + 2 * u, 3))) +
           xlog(v, 64 * v / (std::pow(3 - 2 * u, 3) * (1 + 2 * u)));
  return std::nullopt;
}

ConjecturedValue conjectured_ree(int n, int k1, int k2, double s, int grid) {
  if (s < 0 || s > 1) throw precondition_error("mixture weight must lie in [0, 1]");
  Curve1D f = F_curve(n, k1, k2, grid);
  Curve1D h = convex_hull_1d(f);
  ConjecturedValue out;
  out.closed_form = ree_closed_form(n, k1, k2, s);
  // ρ_{2;0,1} is proven; every other family rests on the conjecture.
  out.conjecture = !(n == 2 && std::min(k1, k2) == 0 && std::max(k1, k2) == 1);
  const int last = grid - 1;
  int i = std::min(last - 1, static_cast<int>(s * last));
  auto on_f = [&](int j) { return h.ys[j] >= f.ys[j] - 1e-15; };
  if (on_f(i) && on_f(i + 1)) {
    std::vector<double> p(n + 1, 0.0);
    p[k1] = s;
    p[k2] = 1 - s;
    out.value = F_function(n, p);
  } else {
    out.value = h(s);
  }
  return out;
}

namespace {

struct Spectral {
  Eigen::VectorXd lam;
  Eigen::MatrixXcd U;
  double value = 0;  // S(rho || sigma) in bits
};

constexpr double kFloor = 1e-300;

class ReeObjective {
 public:
  explicit ReeObjective(const DensityMatrix& rho) : rho_(rho.m), entropy_(von_neumann_entropy(rho)) {}

  Spectral eval(const Eigen::MatrixXcd& sigma) const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sigma);
    Spectral sp{es.eigenvalues(), es.eigenvectors(), 0};
    const double top = std::max(sp.lam.maxCoeff(), kFloor);
    Eigen::MatrixXcd rt = sp.U.adjoint() * rho_ * sp.U;
    double cross = 0, lost = 0;
    for (long i = 0; i < sp.lam.size(); ++i) {
      double r = rt(i, i).real();
      if (sp.lam(i) <= 1e-15 * top)
        lost += r;
      else
        cross += r * std::log2(sp.lam(i));
    }
    sp.value = lost > 1e-10 ? std::numeric_limits<double>::infinity() : -entropy_ - cross;
    return sp;
  }

  // Gradient of S(rho||.) at sigma: -(1/ln2) U (L o U^dag rho U) U^dag, L the divided differences of log.
  Eigen::MatrixXcd gradient(const Spectral& sp) const {
    const long D = sp.lam.size();
    Eigen::MatrixXcd rt = sp.U.adjoint() * rho_ * sp.U;
    const double top = std::max(sp.lam.maxCoeff(), kFloor);
    Eigen::VectorXd l = sp.lam.cwiseMax(1e-15 * top);
    for (long i = 0; i < D; ++i)
      for (long j = 0; j < D; ++j) {
        double a = l(i), b = l(j), L;
        if (std::abs(a - b) <= 1e-9 * std::max(a, b))
          L = 2 / (a + b);
        else
          L = (std::log(a) - std::log(b)) / (a - b);
        rt(i, j) *= -L / std::log(2.0);
      }
    return sp.U * rt * sp.U.adjoint();
  }

  double entropy() const { return entropy_; }

 private:
  Eigen::MatrixXcd rho_;
  double entropy_;
};

double expectation(const Eigen::MatrixXcd& G, const Eigen::VectorXcd& v) { return v.dot(G * v).real(); }

// Minimizes <phi|G|phi> over product states by alternating local eigenproblems.
ProductState product_min(const Eigen::MatrixXcd& G, ProductState start, const Dims& dims) {
  const int n = static_cast<int>(dims.size());
  Eigen::VectorXcd full = start.full();
  double prev = expectation(G, full);
  for (int sweep = 0; sweep < 60; ++sweep) {
    for (int i = 0; i < n; ++i) {
      // The local quadratic form is the contraction of G with the other parties on both sides.
      const int d = dims[i];
      Eigen::MatrixXcd M(d, d);
      for (int b = 0; b < d; ++b) {
        ProductState e = start;
        e.locals[i] = Eigen::VectorXcd::Unit(d, b);
        M.col(b) = contract_except(G * e.full(), dims, start.locals, i);
      }
      M = 0.5 * (M + M.adjoint()).eval();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(M);
      start.locals[i] = es.eigenvectors().col(0);
    }
    full = start.full();
    double cur = expectation(G, full);
    if (prev - cur < 1e-12 * std::max(1.0, std::abs(cur))) break;
    prev = cur;
  }
  return start;
}

struct Atom {
  ProductState product;
  Eigen::VectorXcd full;
  double weight;
};

Eigen::MatrixXcd assemble(const std::vector<Atom>& atoms, long D) {
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(D, D);
  for (const auto& a : atoms) s.noalias() += a.weight * a.full * a.full.adjoint();
  return s;
}

void normalize_weights(std::vector<Atom>& atoms) {
  atoms.erase(std::remove_if(atoms.begin(), atoms.end(), [](const Atom& a) { return a.weight <= 1e-14; }),
              atoms.end());
  double s = 0;
  for (auto& a : atoms) s += a.weight;
  for (auto& a : atoms) a.weight /= s;
}

// Convex one-dimensional minimization of S(rho || sigma + g dir) on [0, gmax] from the sign of the derivative.
double line_search(const ReeObjective& obj, const Eigen::MatrixXcd& sigma, const Eigen::MatrixXcd& dir, double gmax) {
  auto slope = [&](double g) {
    Spectral sp = obj.eval(sigma + g * dir);
    if (!std::isfinite(sp.value)) return std::numeric_limits<double>::infinity();
    return (obj.gradient(sp).cwiseProduct(dir.conjugate())).sum().real();
  };
  double hi = gmax;
  double shi = slope(hi);
  if (shi <= 0) return hi;
  // Pull back from a support boundary until the slope is finite.
  while (!std::isfinite(shi) && hi > 1e-12 * gmax) {
    hi *= 0.5;
    shi = slope(hi);
    if (shi <= 0) return hi;
  }
  if (!std::isfinite(shi)) return 0;
  double slo = slope(0);
  if (slo >= 0) return 0;
  boost::uintmax_t iters = 40;
  auto tol = [&](double a, double b) { return std::abs(b - a) <= 1e-7 * gmax; };
  auto r = boost::math::tools::toms748_solve(slope, 0.0, hi, slo, shi, tol, iters);
  return 0.5 * (r.first + r.second);
}

struct Oracle {
  ProductState best;
  double value;
};

Oracle linear_oracle(const Eigen::MatrixXcd& G, const std::vector<Atom>& atoms, const std::vector<size_t>& order,
                     const Dims& dims, int starts, Rng& rng) {
  Oracle o{{}, std::numeric_limits<double>::infinity()};
  auto consider = [&](ProductState start) {
    ProductState p = product_min(G, std::move(start), dims);
    double v = expectation(G, p.full());
    if (v < o.value) {
      o.value = v;
      o.best = std::move(p);
    }
  };
  for (size_t i = 0; i < std::min<size_t>(2, order.size()); ++i) consider(atoms[order[i]].product);
  for (int r = 0; r < starts; ++r) {
    ProductState p;
    for (int d : dims) p.locals.push_back(random_unit_vector(d, rng));
    consider(std::move(p));
  }
  return o;
}

// Joint smooth refinement of weights (w_i = t_i^2 / sum t^2) and unnormalized local vectors.
class AnsatzCost : public ceres::FirstOrderFunction {
 public:
  AnsatzCost(const ReeObjective& obj, const Dims& dims, int atoms) : obj_(obj), dims_(dims), atoms_(atoms) {
    per_atom_ = 1;
    for (int d : dims) per_atom_ += 2 * d;
  }

  int NumParameters() const override { return atoms_ * per_atom_; }

  void unpack(const double* x, std::vector<Atom>& out) const {
    out.resize(atoms_);
    double tot = 0;
    for (int i = 0; i < atoms_; ++i) tot += x[i * per_atom_] * x[i * per_atom_];
    for (int i = 0; i < atoms_; ++i) {
      const double* p = x + i * per_atom_;
      out[i].weight = p[0] * p[0] / tot;
      out[i].product.locals.clear();
      int off = 1;
      for (int d : dims_) {
        Eigen::VectorXcd v(d);
        for (int a = 0; a < d; ++a) v(a) = cplx(p[off + 2 * a], p[off + 2 * a + 1]);
        off += 2 * d;
        out[i].product.locals.push_back(v);
      }
    }
  }

  static void pack(const std::vector<Atom>& atoms, const Dims& dims, double* x, int per_atom) {
    for (size_t i = 0; i < atoms.size(); ++i) {
      double* p = x + i * per_atom;
      p[0] = std::sqrt(atoms[i].weight);
      int off = 1;
      for (size_t j = 0; j < dims.size(); ++j) {
        const auto& v = atoms[i].product.locals[j];
        for (int a = 0; a < dims[j]; ++a) {
          p[off + 2 * a] = v(a).real();
          p[off + 2 * a + 1] = v(a).imag();
        }
        off += 2 * dims[j];
      }
    }
  }

  bool Evaluate(const double* x, double* f, double* grad) const override {
    std::vector<Atom> atoms;
    unpack(x, atoms);
    std::vector<std::vector<Eigen::VectorXcd>> unit(atoms_);
    std::vector<std::vector<double>> norms(atoms_);
    for (int i = 0; i < atoms_; ++i) {
      for (auto& v : atoms[i].product.locals) {
        double nv = v.norm();
        if (!(nv > 1e-150)) return false;
        norms[i].push_back(nv);
        unit[i].push_back(v / nv);
      }
      atoms[i].product.locals = unit[i];
      atoms[i].full = atoms[i].product.full();
    }
    const long D = atoms[0].full.size();
    Spectral sp = obj_.eval(assemble(atoms, D));
    if (!std::isfinite(sp.value)) return false;
    f[0] = sp.value;
    if (!grad) return true;
    Eigen::MatrixXcd G = obj_.gradient(sp);
    double tot = 0;
    for (int i = 0; i < atoms_; ++i) tot += x[i * per_atom_] * x[i * per_atom_];
    std::vector<double> e(atoms_);
    std::vector<Eigen::VectorXcd> h(atoms_);
    double mean = 0;
    for (int i = 0; i < atoms_; ++i) {
      h[i] = G * atoms[i].full;
      e[i] = atoms[i].full.dot(h[i]).real();
      mean += atoms[i].weight * e[i];
    }
    for (int i = 0; i < atoms_; ++i) {
      double* g = grad + i * per_atom_;
      const double w = atoms[i].weight;
      g[0] = 2 * x[i * per_atom_] / tot * (e[i] - mean);
      int off = 1;
      for (size_t j = 0; j < dims_.size(); ++j) {
        Eigen::VectorXcd c = contract_except(h[i], dims_, unit[i], static_cast<int>(j));
        c = (c - e[i] * unit[i][j]) * (2 * w / norms[i][j]);
        for (int a = 0; a < dims_[j]; ++a) {
          g[off + 2 * a] = c(a).real();
          g[off + 2 * a + 1] = c(a).imag();
        }
        off += 2 * dims_[j];
      }
    }
    return true;
  }

  int per_atom() const { return per_atom_; }

 private:
  const ReeObjective& obj_;
  Dims dims_;
  int atoms_;
  int per_atom_;
};

void polish(const ReeObjective& obj, const Dims& dims, std::vector<Atom>& atoms, int iterations) {
  auto* cost = new AnsatzCost(obj, dims, static_cast<int>(atoms.size()));
  std::vector<double> x(cost->NumParameters());
  AnsatzCost::pack(atoms, dims, x.data(), cost->per_atom());
  double before = 0;
  cost->Evaluate(x.data(), &before, nullptr);
  ceres::GradientProblem problem(cost);
  ceres::GradientProblemSolver::Options opt;
  opt.max_num_iterations = iterations;
  opt.function_tolerance = 1e-13;
  opt.gradient_tolerance = 1e-11;
  opt.parameter_tolerance = 1e-13;
  opt.logging_type = ceres::SILENT;
  ceres::GradientProblemSolver::Summary summary;
  std::vector<double> start = x;
  ceres::Solve(opt, problem, x.data(), &summary);
  double after = std::numeric_limits<double>::infinity();
  if (!problem.Evaluate(x.data(), &after, nullptr) || !(after <= before)) return;
  std::vector<Atom> out;
  cost->unpack(x.data(), out);
  for (auto& a : out) {
    for (auto& v : a.product.locals) v.normalize();
    a.full = a.product.full();
  }
  atoms = std::move(out);
  normalize_weights(atoms);
}

}  // namespace

ReeResult numeric_ree(const DensityMatrix& rho, const ReeConfig& cfg) {
  const Dims& dims = rho.dims;
  const long D = rho.dim();
  if (D > 64) throw precondition_error("numeric REE limited to total dimension 64");
  if (cfg.max_iterations < 1) throw precondition_error("max_iterations must be >= 1");
  if (!(cfg.gap_tolerance > 0)) throw precondition_error("gap_tolerance must be > 0");
  Eigen::VectorXd ev = hermitian_eigenvalues(rho.m);
  const int rank = static_cast<int>((ev.array() > kSupportCutoff).count());
  const int M = cfg.ansatz_size > 0 ? cfg.ansatz_size : rank + static_cast<int>(D);
  if (M < rank) throw precondition_error("ansatz size must be at least rank(rho)");

  ReeObjective obj(rho);
  Rng rng(cfg.seed);

  // Start from the maximally mixed state written in the computational basis.
  std::vector<Atom> atoms;
  for (long idx = 0; idx < D; ++idx) {
    auto digits = unflatten(idx, dims);
    ProductState p;
    for (size_t j = 0; j < dims.size(); ++j) p.locals.push_back(Eigen::VectorXcd::Unit(dims[j], digits[j]));
    atoms.push_back({p, p.full(), 1.0 / D});
  }
  const double initial = obj.eval(assemble(atoms, D)).value;

  ReeResult res{initial, {}, false, false, 0, std::numeric_limits<double>::infinity()};
  // Rounds of conditional-gradient steps (which find new atoms) followed by smooth polishing.
  int budget = cfg.max_iterations;
  for (int round = 0; budget > 0; ++round) {
    const int steps = std::min(budget, round == 0 ? 40 : 10);
    bool done = false;
    for (int it = 0; it < steps; ++it, --budget) {
      ++res.iterations;
      Eigen::MatrixXcd sigma = assemble(atoms, D);
      Spectral sp = obj.eval(sigma);
      Eigen::MatrixXcd G = obj.gradient(sp);
      const double base = (G.cwiseProduct(sigma.conjugate())).sum().real();
      std::vector<double> e(atoms.size());
      std::vector<size_t> order(atoms.size());
      for (size_t i = 0; i < atoms.size(); ++i) e[i] = expectation(G, atoms[i].full);
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return e[a] < e[b]; });
      Oracle o = linear_oracle(G, atoms, order, dims, cfg.lmo_starts, rng);
      res.gap = base - o.value;
      if (res.gap < cfg.gap_tolerance) {
        done = true;
        break;
      }
      // Pairwise step: shift weight from the worst active atom to the oracle atom.
      Eigen::VectorXcd v = o.best.full();
      int si = -1;
      for (size_t i = 0; i < atoms.size(); ++i)
        if (std::abs(atoms[i].full.dot(v)) > 1 - 1e-12) si = static_cast<int>(i);
      const size_t aw = order.back();
      if (si < 0) {
        atoms.push_back({o.best, v, 0.0});
        si = static_cast<int>(atoms.size()) - 1;
      }
      if (static_cast<size_t>(si) == aw) {
        double g = line_search(obj, sigma, v * v.adjoint() - sigma, 1.0);
        for (auto& a : atoms) a.weight *= 1 - g;
        atoms[si].weight += g;
      } else {
        const double w = atoms[aw].weight;
        Eigen::MatrixXcd dir = v * v.adjoint() - atoms[aw].full * atoms[aw].full.adjoint();
        double g = line_search(obj, sigma, dir, w);
        atoms[si].weight += g;
        atoms[aw].weight = g >= w ? 0.0 : w - g;
      }
      normalize_weights(atoms);
    }
    if (done) {
      res.converged = true;
      break;
    }
    if (static_cast<int>(atoms.size()) > M) {
      std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.weight > b.weight; });
      std::vector<Atom> kept(atoms.begin(), atoms.begin() + M);
      normalize_weights(kept);
      // Truncation can cut the support of rho; keep the full set in that case.
      if (std::isfinite(obj.eval(assemble(kept, D)).value)) atoms = std::move(kept);
    }
    polish(obj, dims, atoms, 400);
  }

  if (static_cast<int>(atoms.size()) > M) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.weight > b.weight; });
    std::vector<Atom> kept(atoms.begin(), atoms.begin() + M);
    normalize_weights(kept);
    if (std::isfinite(obj.eval(assemble(kept, D)).value)) {
      atoms = std::move(kept);
      polish(obj, dims, atoms, 400);
    }
  }
  for (auto& a : atoms) {
    res.ansatz.weights.push_back(a.weight);
    res.ansatz.products.push_back(a.product);
  }
  res.value = std::max(0.0, obj.eval(assemble(atoms, D)).value);
  res.improved = res.value < initial - 1e-12 || initial <= cfg.gap_tolerance;
  return res;
}

std::optional<double> symmetric_family_ree(const DensityMatrix& rho, int grid) {
  const int n = rho.parties();
  for (int d : rho.dims)
    if (d != 2) return std::nullopt;
  std::vector<double> q(n + 1);
  Eigen::MatrixXcd rebuilt = Eigen::MatrixXcd::Zero(rho.dim(), rho.dim());
  std::vector<int> support;
  for (int k = 0; k <= n; ++k) {
    Eigen::VectorXcd v = dicke_state(n, k).amps;
    q[k] = v.dot(rho.m * v).real();
    rebuilt.noalias() += q[k] * v * v.adjoint();
    if (q[k] > 1e-12) support.push_back(k);
  }
  if ((rebuilt - rho.m).cwiseAbs().maxCoeff() > 1e-10) return std::nullopt;
  if (support.size() == 1) return -2 * std::log2(lambda_symmetric(n, support[0]));
  if (support.size() == 2) {
    int k1 = support[0], k2 = support[1];
    double s = q[k1] / (q[k1] + q[k2]);
    return conjectured_ree(n, k1, k2, s, grid).value;
  }
  return std::nullopt;
}

PlenioVedral plenio_vedral_bound(const PureState& psi) {
  const int n = psi.parties();
  if (n < 3 || n > 4) throw precondition_error("bound implemented for 3 or 4 qubits");
  for (int d : psi.dims)
    if (d != 2) throw precondition_error("bound implemented for qubits");
  PlenioVedral out{0, false};
  for (int drop = 0; drop < n; ++drop) {
    std::vector<int> keep;
    for (int j = 0; j < n; ++j)
      if (j != drop) keep.push_back(j);
    DensityMatrix red = partial_trace(psi, keep);
    double s = von_neumann_entropy(red);
    auto er = symmetric_family_ree(red);
    if (!er) out.partial = true;
    out.value = std::max(out.value, er.value_or(0.0) + s);
  }
  return out;
}

}  // namespace gme

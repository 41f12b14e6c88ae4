// gme-lab: command-line front end. Every command writes one CSV table.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gme/bipartite.hpp"
#include "gme/boundent.hpp"
#include "gme/geomopt.hpp"
#include "gme/mixedhull.hpp"
#include "gme/parallel.hpp"
#include "gme/protocols.hpp"
#include "gme/qstfile.hpp"
#include "gme/ree.hpp"
#include "gme/xychain.hpp"

using namespace gme;

namespace {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
std::string num(int v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool converged = true;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
  void kv(const std::string& key, const std::string& value) { rows.push_back({key, value}); }
};

struct Options {
  std::uint64_t seed = 0;
  std::string output;
};

std::pair<double, double> parse_range(const std::string& s) {
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      double v = std::stod(s);
      return {v, v};
    }
    return {std::stod(s.substr(0, colon)), std::stod(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw precondition_error("range must look like a:b");
  }
}

std::vector<double> range_points(const std::string& range, double step) {
  auto [a, b] = parse_range(range);
  if (b < a) throw precondition_error("range end lies below its start");
  if (a == b) return {a};
  if (!(step > 0)) throw precondition_error("step must be positive");
  std::vector<double> out;
  const long n = std::lround(std::floor((b - a) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(a + i * step);
  if (b - out.back() > 1e-9 * step) out.push_back(b);
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw precondition_error("bad integer list: " + s);
    }
  }
  return out;
}

PartitionSpec parse_cut(const std::string& s, int n) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw precondition_error("cut must look like a1,a2:rest");
  PartitionSpec cut = PartitionSpec::from_group(parse_ints(s.substr(0, colon)), n);
  const std::string right = s.substr(colon + 1);
  if (right != "rest") {
    auto b = parse_ints(right);
    std::sort(b.begin(), b.end());
    auto want = cut.group_b;
    std::sort(want.begin(), want.end());
    if (b != want) throw precondition_error("the right side of a cut must be the complement");
  }
  return cut;
}

PureState load_pure(const std::string& path) {
  QstState s = load_qst(path);
  if (!std::holds_alternative<PureState>(s)) throw precondition_error("this command needs a pure state");
  return std::get<PureState>(s);
}

std::string cut_name(const PartitionSpec& c) {
  std::string s;
  for (size_t i = 0; i < c.group_a.size(); ++i) s += (i ? "," : "") + std::to_string(c.group_a[i]);
  s += ":";
  for (size_t i = 0; i < c.group_b.size(); ++i) s += (i ? "," : "") + std::to_string(c.group_b[i]);
  return s;
}

// Every 1:rest cut and every cut that contains party 0 with more than one party on each side.
std::vector<PartitionSpec> all_cuts(int n) {
  std::vector<PartitionSpec> out;
  for (int p = 0; p < n; ++p) out.push_back(PartitionSpec::from_group({p}, n));
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if (!(mask & (1u << (n - 1)))) continue;
    std::vector<int> a;
    for (int p = 0; p < n; ++p)
      if (mask & (1u << (n - 1 - p))) a.push_back(p);
    if (a.size() < 2 || static_cast<int>(a.size()) > n - 2) continue;
    out.push_back(PartitionSpec::from_group(a, n));
  }
  return out;
}

void write(const Table& t, const Options& o, std::ostream& os) {
  os << "# gme-lab " << GME_VERSION << " seed=" << o.seed << "\n";
  for (size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << "\n";
  for (const auto& r : t.rows) {
    for (size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric measure of entanglement laboratory"};
  app.require_subcommand(1);
  // --h is the field option, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  Options opt;
  app.add_option("--seed", opt.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--output,-o", opt.output, "Write CSV here instead of stdout");
  app.set_version_flag("--version", GME_VERSION);

  Table table;
  std::function<void()> run;

  // ---- gme ----
  auto* gme = app.add_subcommand("gme", "Geometric measure")->require_subcommand(1);
  std::string file;
  auto* pure = gme->add_subcommand("pure", "Lambda_max, E_sin2 and E_log2 of a pure state");
  pure->add_option("file", file)->required();
  int restarts = 32;
  pure->add_option("--restarts", restarts)->capture_default_str();
  pure->callback([&] {
    run = [&] {
      HartreeConfig cfg;
      cfg.seed = opt.seed;
      cfg.restarts = restarts;
      cfg.validate();
      auto rep = entanglement_eigenvalue(load_pure(file), cfg);
      table.header = {"lambda_max", "e_sin2", "e_log2", "converged"};
      table.add({num(rep.lambda_max), num(rep.e_sin2), num(rep.e_log2), flag(rep.converged)});
      table.converged = rep.converged;
    };
  });

  int n = 0, k1 = 0, k2 = 0, grid = 401;
  double s = 0, x = 0, y = 0;
  auto* msym = gme->add_subcommand("mixed-sym", "Convex-roof E_sin2 of a two-term symmetric mixture");
  msym->add_option("--n", n)->required();
  msym->add_option("--k1", k1)->required();
  msym->add_option("--k2", k2)->required();
  msym->add_option("--s", s)->required();
  msym->add_option("--grid", grid)->capture_default_str();
  msym->callback([&] {
    run = [&] {
      double v = mixed_symmetric_gme(n, k1, k2, s, grid);
      table.header = {"n", "k1", "k2", "s", "e_sin2"};
      table.add({num(n), num(k1), num(k2), num(s), num(v)});
    };
  });

  auto* ghzw = gme->add_subcommand("ghzw", "E_sin2 of x GHZ + y W + (1-x-y) Wtilde mixtures");
  int surface_grid = 201;
  ghzw->add_option("--x", x)->required();
  ghzw->add_option("--y", y)->required();
  ghzw->add_option("--grid", surface_grid)->capture_default_str();
  ghzw->callback([&] {
    run = [&] {
      if (x < 0 || y < 0 || x + y > 1 + 1e-12) throw precondition_error("need x, y >= 0 and x + y <= 1");
      GhzWSurface surf(surface_grid);
      const double l = ghz_w_lambda(x, y);
      table.header = {"x", "y", "e_sin2_pure", "e_sin2_mixed"};
      table.add({num(x), num(y), num(1 - l * l), num(surf.mixed(x, y))});
    };
  });

  // ---- measure ----
  auto* measure = app.add_subcommand("measure", "Bipartite measures")->require_subcommand(1);
  std::string cut_text;
  auto* neg = measure->add_subcommand("negativity", "Negativity across a cut");
  neg->add_option("file", file)->required();
  neg->add_option("--cut", cut_text, "Parties on the left, e.g. 0,1:rest")->required();
  neg->callback([&] {
    run = [&] {
      DensityMatrix rho = as_density(load_qst(file));
      PartitionSpec cut = parse_cut(cut_text, rho.parties());
      table.header = {"cut", "negativity", "ppt"};
      table.add({cut_name(cut), num(negativity(rho, cut)), flag(is_ppt(rho, cut))});
    };
  });
  auto* conc = measure->add_subcommand("concurrence", "Two-qubit concurrence, EoF and E_sin2");
  conc->add_option("file", file)->required();
  conc->callback([&] {
    run = [&] {
      DensityMatrix rho = as_density(load_qst(file));
      const double c = concurrence(rho);
      table.header = {"concurrence", "eof", "e_sin2"};
      table.add({num(c), num(eof_from_concurrence(c)), num(gme_from_concurrence(c))});
    };
  });

  // ---- ree ----
  auto* ree = app.add_subcommand("ree", "Relative entropy of entanglement")->require_subcommand(1);
  auto* rbound = ree->add_subcommand("bound", "Lower bound -2 log2 Lambda_max for a pure state");
  rbound->add_option("file", file)->required();
  rbound->callback([&] {
    run = [&] {
      HartreeConfig cfg;
      cfg.seed = opt.seed;
      auto b = ree_lower_bound(load_pure(file), cfg);
      table.header = {"e_r_lower", "converged"};
      table.add({num(b.value), flag(b.converged)});
      table.converged = b.converged;
    };
  });
  int ansatz = 0, iterations = 400;
  auto* rnum = ree->add_subcommand("numeric", "Upper bound from a separable-ansatz minimization");
  rnum->add_option("file", file)->required();
  rnum->add_option("--ansatz", ansatz, "Product terms kept (0 = rank + dimension)")->capture_default_str();
  rnum->add_option("--iterations", iterations)->capture_default_str();
  rnum->callback([&] {
    run = [&] {
      ReeConfig cfg;
      cfg.ansatz_size = ansatz;
      cfg.max_iterations = iterations;
      cfg.seed = opt.seed;
      auto r = numeric_ree(as_density(load_qst(file)), cfg);
      table.header = {"e_r_upper", "gap", "iterations", "terms", "converged"};
      table.add({num(r.value), num(r.gap), num(r.iterations), num(static_cast<int>(r.ansatz.weights.size())),
                 flag(r.converged)});
      table.converged = r.converged;
    };
  });
  auto* rconj = ree->add_subcommand("conj", "Convex hull of F along a symmetric two-term mixture");
  rconj->add_option("--n", n)->required();
  rconj->add_option("--k1", k1)->required();
  rconj->add_option("--k2", k2)->required();
  rconj->add_option("--s", s)->required();
  rconj->add_option("--grid", grid)->capture_default_str();
  rconj->callback([&] {
    run = [&] {
      auto v = conjectured_ree(n, k1, k2, s, grid);
      table.header = {"n", "k1", "k2", "s", "e_r", "conjecture", "closed_form"};
      table.add({num(n), num(k1), num(k2), num(s), num(v.value), flag(v.conjecture),
                 v.closed_form ? num(*v.closed_form) : ""});
    };
  });

  // ---- bound ----
  auto* bound = app.add_subcommand("bound", "Bound entangled states")->require_subcommand(1);
  int samples = 1000;
  auto* smolin = bound->add_subcommand("smolin", "Smolin state measures and cut negativities");
  smolin->add_option("--samples", samples, "Random decompositions in the convex-roof sweep")->capture_default_str();
  smolin->callback([&] {
    run = [&] {
      auto g = smolin_gme(samples, opt.seed);
      DensityMatrix rho = smolin_state();
      table.header = {"quantity", "value"};
      table.kv("e_sin2", num(g.e_sin2));
      table.kv("e_log2", num(g.e_log2));
      table.kv("e_r", num(g.e_r));
      table.kv("member_lambda", num(g.member_lambda));
      table.kv("sweep_min_e_sin2", num(g.sweep_min));
      table.kv("sweep_unconverged", num(g.sweep_unconverged));
      for (const auto& c : all_cuts(4)) table.kv("negativity[" + cut_name(c) + "]", num(negativity(rho, c)));
      table.kv("converged", flag(g.converged));
      table.converged = g.converged;
    };
  });
  double dur_x = -1;
  auto* dur = bound->add_subcommand("dur", "Dur state measures and negativities");
  dur->add_option("--n", n)->required();
  dur->add_option("--x", dur_x, "GHZ weight (default 1/(N+1))");
  dur->callback([&] {
    run = [&] {
      const double xv = dur_x < 0 ? 1.0 / (n + 1) : dur_x;
      auto g = dur_gme(n, xv, true);
      DensityMatrix rho = dur_state(n, xv);
      table.header = {"quantity", "value"};
      table.kv("x", num(xv));
      table.kv("e_sin2", num(g.e_sin2));
      table.kv("e_log2", num(g.e_log2));
      table.kv("max_lambda_error", num(g.max_lambda_error));
      table.kv("negativity[1:rest]", num(dur_negativity_one(n, xv)));
      table.kv("negativity[1:rest]_numeric", num(negativity(rho, PartitionSpec::from_group({0}, n))));
      table.kv("negativity[12:rest]", num(dur_negativity_two(n, xv)));
      table.kv("negativity[12:rest]_numeric", num(negativity(rho, PartitionSpec::from_group({0, 1}, n))));
      table.kv("converged", flag(g.converged));
      table.converged = g.converged;
    };
  });
  int upb_samples = 100000;
  auto* upb = bound->add_subcommand("upb", "Three-qubit UPB state checks");
  upb->add_option("--samples", upb_samples)->capture_default_str();
  upb->callback([&] {
    run = [&] {
      auto c = upb_check(upb_samples, opt.seed);
      table.header = {"quantity", "value"};
      table.kv("min_pt_eigenvalue", num(c.min_pt_eigenvalue));
      table.kv("max_member_overlap", num(c.max_member_overlap));
      table.kv("min_product_weight", num(c.min_product_weight));
      table.kv("samples", num(c.samples));
    };
  });

  // ---- bell ----
  auto* bell = app.add_subcommand("bell", "Bell operators")->require_subcommand(1);
  std::string state_name = "ghz";
  int bell_restarts = 8;
  auto* mk = bell->add_subcommand("mk", "Largest Mermin-Klyshko value over planar settings");
  mk->add_option("--state", state_name, "ghz or a QST file")->capture_default_str();
  mk->add_option("--n", n, "Qubits for --state ghz");
  mk->add_option("--restarts", bell_restarts)->capture_default_str();
  mk->callback([&] {
    run = [&] {
      DensityMatrix rho;
      if (state_name == "ghz") {
        if (n < 2 || n > kMaxMixedQubits) throw precondition_error("--n must lie in [2, 12]");
        rho = projector(ghz_state(n));
      } else {
        rho = as_density(load_qst(state_name));
      }
      auto r = mk_maximize(rho, bell_restarts, opt.seed);
      const int N = rho.parties();
      table.header = {"n", "mk_max", "quantum_max", "lhv_bound"};
      table.add({num(N), num(r.value), num(std::pow(2.0, (N - 1) / 2.0)), num(1.0)});
    };
  });

  // ---- proto ----
  auto* proto = app.add_subcommand("proto", "Resource-theory protocols")->require_subcommand(1);
  double r0 = 0;
  int steps = 10;
  auto* werner = proto->add_subcommand("werner", "Iterated two-pair Werner recursion");
  werner->add_option("--r0", r0)->required();
  werner->add_option("--steps", steps)->capture_default_str();
  werner->callback([&] {
    run = [&] {
      auto t = werner_iterate(r0, steps);
      table.header = {"step", "r"};
      for (size_t i = 0; i < t.steps.size(); ++i) table.add({num(t.steps[i]), num(t.values[i])});
    };
  });
  double theta = 0;
  auto* yield = proto->add_subcommand("yield", "Pure-state concentration yield");
  yield->add_option("--theta", theta)->required();
  yield->add_option("--n", n)->required();
  yield->callback([&] {
    run = [&] {
      table.header = {"theta", "n", "yield", "entropy"};
      const double c2 = std::pow(std::cos(theta), 2);
      table.add({num(theta), num(n), num(pure_yield(theta, n)), num(binary_entropy(c2))});
    };
  });
  auto* schum = proto->add_subcommand("schumacher", "Three-letter Schumacher compression");
  schum->callback([&] {
    run = [&] {
      auto r = schumacher_demo();
      table.header = {"quantity", "value"};
      table.kv("entropy", num(r.entropy));
      table.kv("lambda_q", num(r.lambda_q));
      table.kv("p_lambda", num(r.p_lambda));
      table.kv("f1", num(r.f1));
      table.kv("f2", num(r.f2));
      table.kv("fidelity", num(r.fidelity));
      table.kv("baseline", num(r.baseline));
      table.kv("simulated", num(r.simulated));
    };
  });

  // ---- xy ----
  auto* xy = app.add_subcommand("xy", "Transverse-field XY chain")->require_subcommand(1);
  double r = 1, h = 0, step = 0.01, sector = 0.5;
  std::string h_range, n_list;
  auto* finite = xy->add_subcommand("finite", "Finite-N density from the exact overlap");
  finite->add_option("--n", n)->required();
  finite->add_option("--r", r)->required();
  auto* h_opt = finite->add_option("--h", h);
  auto* hr_opt = finite->add_option("--h-range", h_range, "a:b");
  h_opt->excludes(hr_opt);
  finite->add_option("--step", step)->capture_default_str();
  finite->add_option("--sector", sector, "0 (odd fermion number) or 0.5")->capture_default_str();
  finite->callback([&] {
    run = [&] {
      if (h_opt->count() == 0 && hr_opt->count() == 0) throw precondition_error("give --h or --h-range");
      std::vector<double> hs = h_opt->count() ? std::vector<double>{h} : range_points(h_range, step);
      for (double hv : hs) ChainParams{n, r, hv, sector}.validate();
      std::vector<std::vector<std::string>> rows(hs.size());
      parallel_for(static_cast<long>(hs.size()), [&](long i) {
        ChainParams p{n, r, hs[i], sector};
        rows[i] = {num(r), num(hs[i]), num(n), num(entanglement_density_N(p).density), num(dEN_dh(p))};
      });
      table.header = {"r", "h", "N", "E_density", "dE_dh"};
      table.rows = rows;
    };
  });
  auto* thermo = xy->add_subcommand("thermo", "Thermodynamic-limit density");
  thermo->add_option("--r", r)->required();
  thermo->add_option("--h-range", h_range, "a:b")->required();
  thermo->add_option("--step", step)->capture_default_str();
  thermo->callback([&] {
    run = [&] {
      auto hs = range_points(h_range, step);
      for (double hv : hs) ChainParams{2, r, hv, 0.5}.validate();
      std::vector<std::vector<std::string>> rows(hs.size());
      parallel_for(static_cast<long>(hs.size()), [&](long i) {
        const double hv = hs[i];
        // The slope diverges at h = 1.
        const double d = std::abs(hv - 1) < 1e-6 ? std::nan("") : dE_dh(r, hv);
        rows[i] = {num(r), num(hv), "inf", num(thermo_density(r, hv)), num(d)};
      });
      table.header = {"r", "h", "N", "E_density", "dE_dh"};
      table.rows = rows;
    };
  });
  auto* scaling = xy->add_subcommand("scaling", "Peak slope versus ln N and the nu estimate");
  scaling->add_option("--r", r)->required();
  scaling->add_option("--n-list", n_list, "Comma-separated sizes")->required();
  scaling->callback([&] {
    run = [&] {
      auto f = scaling_fit(r, parse_ints(n_list));
      table.header = {"N", "h_max", "peak_dE_dh", "slope", "intercept", "nu"};
      for (size_t i = 0; i < f.N.size(); ++i)
        table.add({num(f.N[i]), num(f.h_max[i]), num(f.peak[i]), num(f.slope), num(f.intercept), num(f.nu)});
    };
  });
  bool unrestricted = false;
  auto* oracle = xy->add_subcommand("oracle", "Exact diagonalization cross-check, N <= 14");
  oracle->add_option("--n", n)->required();
  oracle->add_option("--r", r)->required();
  oracle->add_option("--h", h)->required();
  oracle->add_option("--sector", sector)->capture_default_str();
  oracle->add_flag("--unrestricted", unrestricted, "Also run the unrestricted product-state search");
  oracle->callback([&] {
    run = [&] {
      auto ed = ed_oracle(n, r, h, sector, unrestricted);
      ChainParams p{n, r, h, sector};
      auto e = energies(n, r, h);
      const double lam = std::pow(2.0, -0.5 * n * entanglement_density_N(p).density);
      table.header = {"N", "r", "h", "sector", "energy_ed", "energy_exact", "lambda_scan", "lambda_exact",
                      "lambda_solver", "converged"};
      table.add({num(n), num(r), num(h), num(sector), num(ed.energy), num(sector == 0 ? e.odd : e.even),
                 num(ed.lambda_scan), num(lam), unrestricted ? num(ed.lambda_solver) : "", flag(ed.converged)});
      table.converged = ed.converged;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int code = 0;
  try {
    run();
    if (!table.converged) code = 3;
  } catch (const format_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const precondition_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const convergence_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (opt.output.empty()) {
    write(table, opt, std::cout);
  } else {
    std::ofstream os(opt.output);
    if (!os) {
      std::cerr << "error: cannot write " << opt.output << "\n";
      return 2;
    }
    write(table, opt, os);
  }
  return code;
}

#include "gme/qstfile.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace gme {

namespace {

bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    auto p = line.find_first_not_of(" \t\r");
    if (p == std::string::npos || line[p] == '#') continue;
    return true;
  }
  return false;
}

std::vector<double> numbers(const std::string& line) {
  std::istringstream ss(line);
  std::vector<double> v;
  std::string tok;
  while (ss >> tok) {
    size_t used = 0;
    double x;
    try {
      x = std::stod(tok, &used);
    } catch (const std::exception&) {
      throw format_error("bad number '" + tok + "'");
    }
    if (used != tok.size()) throw format_error("bad number '" + tok + "'");
    v.push_back(x);
  }
  return v;
}

int as_index(double x, int bound) {
  if (x != std::floor(x) || x < 0 || x >= bound) throw format_error("index out of range");
  return static_cast<int>(x);
}

}  // namespace

QstState parse_qst(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) throw format_error("empty file");
  std::istringstream head(line);
  std::string kind;
  head >> kind;
  if (kind != "pure" && kind != "mixed") throw format_error("first line must be 'pure' or 'mixed'");
  if (!next_line(in, line)) throw format_error("missing dimension line");
  Dims dims;
  for (double d : numbers(line)) {
    if (d != std::floor(d) || d < 2 || d > 64) throw format_error("bad local dimension");
    dims.push_back(static_cast<int>(d));
  }
  if (dims.empty()) throw format_error("no local dimensions");
  const int n = static_cast<int>(dims.size());
  const long D = total_dim(dims);
  const bool pure = kind == "pure";
  if (D > (pure ? (1L << kMaxPureQubits) : (1L << kMaxMixedQubits)))
    throw format_error("state exceeds dense size cap");

  Eigen::VectorXcd v;
  Eigen::MatrixXcd m;
  if (pure)
    v = Eigen::VectorXcd::Zero(D);
  else
    m = Eigen::MatrixXcd::Zero(D, D);
  std::vector<int> r(n), c(n);
  while (next_line(in, line)) {
    auto x = numbers(line);
    const size_t need = pure ? n + 2 : 2 * n + 2;
    if (x.size() != need) throw format_error("wrong field count in entry line");
    for (int p = 0; p < n; ++p) r[p] = as_index(x[p], dims[p]);
    if (pure) {
      v(flatten(r, dims)) = cplx(x[n], x[n + 1]);
    } else {
      for (int p = 0; p < n; ++p) c[p] = as_index(x[n + p], dims[p]);
      m(flatten(r, dims), flatten(c, dims)) = cplx(x[2 * n], x[2 * n + 1]);
    }
  }
  if (pure) {
    if (std::abs(v.squaredNorm() - 1.0) > 1e-8) throw format_error("pure state not normalized");
    return PureState(dims, v.normalized());
  }
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-8) throw format_error("density matrix not Hermitian");
  double tr = m.trace().real();
  if (std::abs(tr - 1.0) > 1e-8) throw format_error("density matrix trace != 1");
  m = 0.5 * (m + m.adjoint()).eval() / tr;
  try {
    return DensityMatrix(dims, m);
  } catch (const precondition_error& e) {
    throw format_error(e.what());
  }
}

QstState load_qst(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw format_error("cannot open " + path);
  return parse_qst(f);
}

void write_qst(std::ostream& out, const PureState& psi) {
  out << "pure\n";
  for (size_t p = 0; p < psi.dims.size(); ++p) out << (p ? " " : "") << psi.dims[p];
  out << "\n" << std::setprecision(17);
  for (long i = 0; i < psi.dim(); ++i) {
    if (psi.amps(i) == cplx(0)) continue;
    for (int d : unflatten(i, psi.dims)) out << d << ' ';
    out << psi.amps(i).real() << ' ' << psi.amps(i).imag() << '\n';
  }
}

void write_qst(std::ostream& out, const DensityMatrix& rho) {
  out << "mixed\n";
  for (size_t p = 0; p < rho.dims.size(); ++p) out << (p ? " " : "") << rho.dims[p];
  out << "\n" << std::setprecision(17);
  for (long i = 0; i < rho.dim(); ++i)
    for (long j = 0; j < rho.dim(); ++j) {
      if (rho.m(i, j) == cplx(0)) continue;
      for (int d : unflatten(i, rho.dims)) out << d << ' ';
      for (int d : unflatten(j, rho.dims)) out << d << ' ';
      out << rho.m(i, j).real() << ' ' << rho.m(i, j).imag() << '\n';
    }
}

DensityMatrix as_density(const QstState& s) {
  if (auto p = std::get_if<PureState>(&s)) return projector(*p);
  return std::get<DensityMatrix>(s);
}

}  // namespace gme

#include "gme/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gme {

namespace {

// Flat offsets of every multi-index over the listed parties (row-major in list order).
std::vector<long> offsets(const Dims& dims, const std::vector<int>& parties) {
  std::vector<long> stride(dims.size());
  long s = 1;
  for (int p = static_cast<int>(dims.size()) - 1; p >= 0; --p) {
    stride[p] = s;
    s *= dims[p];
  }
  std::vector<long> out{0};
  for (int p : parties) {
    std::vector<long> next;
    next.reserve(out.size() * dims[p]);
    for (long o : out)
      for (int d = 0; d < dims[p]; ++d) next.push_back(o + d * stride[p]);
    out.swap(next);
  }
  return out;
}

std::vector<int> complement(const std::vector<int>& keep, int n) {
  std::vector<int> rest;
  for (int p = 0; p < n; ++p)
    if (std::find(keep.begin(), keep.end(), p) == keep.end()) rest.push_back(p);
  return rest;
}

std::vector<int> checked_set(std::vector<int> s, int n) {
  std::sort(s.begin(), s.end());
  if (s.empty()) throw precondition_error("empty party set");
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw precondition_error("duplicate party index");
  if (s.front() < 0 || s.back() >= n) throw precondition_error("party index out of range");
  return s;
}

void check_dims(const Dims& dims) {
  if (dims.empty()) throw precondition_error("no parties");
  for (int d : dims)
    if (d < 2) throw precondition_error("local dimension must be >= 2");
}

}  // namespace

long total_dim(const Dims& dims) {
  long D = 1;
  for (int d : dims) D *= d;
  return D;
}

std::vector<int> unflatten(long idx, const Dims& dims) {
  std::vector<int> digits(dims.size());
  for (int p = static_cast<int>(dims.size()) - 1; p >= 0; --p) {
    digits[p] = static_cast<int>(idx % dims[p]);
    idx /= dims[p];
  }
  return digits;
}

long flatten(const std::vector<int>& digits, const Dims& dims) {
  long idx = 0;
  for (size_t p = 0; p < dims.size(); ++p) idx = idx * dims[p] + digits[p];
  return idx;
}

PureState::PureState(Dims d, Eigen::VectorXcd a) : dims(std::move(d)), amps(std::move(a)) {
  check_dims(dims);
  if (amps.size() != total_dim(dims)) throw precondition_error("amplitude count does not match dims");
  if (std::abs(amps.squaredNorm() - 1.0) > 1e-10) throw precondition_error("pure state not normalized");
}

DensityMatrix::DensityMatrix(Dims d, Eigen::MatrixXcd mat) : dims(std::move(d)), m(std::move(mat)) {
  check_dims(dims);
  const long D = total_dim(dims);
  if (m.rows() != D || m.cols() != D) throw precondition_error("matrix size does not match dims");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) throw precondition_error("density matrix not Hermitian");
  m = 0.5 * (m + m.adjoint()).eval();
  if (std::abs(m.trace().real() - 1.0) > 1e-10) throw precondition_error("density matrix trace != 1");
  Eigen::MatrixXcd shifted = m + 1e-9 * Eigen::MatrixXcd::Identity(D, D);
  Eigen::LLT<Eigen::MatrixXcd> llt(shifted);
  if (llt.info() != Eigen::Success) throw precondition_error("density matrix not positive semidefinite");
}

Dims ProductState::dims() const {
  Dims d;
  for (const auto& v : locals) d.push_back(static_cast<int>(v.size()));
  return d;
}

Eigen::VectorXcd ProductState::full() const {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
  for (const auto& l : locals) {
    Eigen::VectorXcd next(v.size() * l.size());
    for (long i = 0; i < v.size(); ++i) next.segment(i * l.size(), l.size()) = v(i) * l;
    v.swap(next);
  }
  return v;
}

PureState ProductState::state() const { return normalized(dims(), full()); }

PartitionSpec PartitionSpec::from_group(std::vector<int> a, int n) {
  PartitionSpec c;
  c.group_a = checked_set(std::move(a), n);
  c.group_b = complement(c.group_a, n);
  c.validate(n);
  return c;
}

void PartitionSpec::validate(int n) const {
  auto a = checked_set(group_a, n);
  auto b = checked_set(group_b, n);
  std::vector<int> all;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(all));
  if (static_cast<int>(all.size()) != n || a.size() + b.size() != static_cast<size_t>(n))
    throw precondition_error("cut groups must be disjoint and cover all parties");
}

PureState normalized(const Dims& dims, const Eigen::VectorXcd& v) {
  double nrm = v.norm();
  if (!(nrm > 0)) throw precondition_error("zero vector");
  return PureState(dims, v / nrm);
}

PureState basis_state(const Dims& dims, const std::vector<int>& digits) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total_dim(dims));
  v(flatten(digits, dims)) = 1.0;
  return PureState(dims, v);
}

PureState ghz_state(int n, int d) {
  Dims dims(n, d);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(total_dim(dims));
  for (int j = 0; j < d; ++j) v(flatten(std::vector<int>(n, j), dims)) = 1.0;
  return normalized(dims, v);
}

PureState bell_state(int which) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  switch (which) {
    case 0: v << 1, 0, 0, 1; break;
    case 1: v << 1, 0, 0, -1; break;
    case 2: v << 0, 1, 1, 0; break;
    case 3: v << 0, 1, -1, 0; break;
    default: throw precondition_error("bell index must be 0..3");
  }
  return normalized({2, 2}, v);
}

PureState max_entangled(int d) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0;
  return normalized({d, d}, v);
}

DensityMatrix projector(const PureState& psi) {
  DensityMatrix r;
  r.dims = psi.dims;
  r.m = psi.amps * psi.amps.adjoint();
  return r;
}

DensityMatrix maximally_mixed(const Dims& dims) {
  DensityMatrix r;
  r.dims = dims;
  const long D = total_dim(dims);
  r.m = Eigen::MatrixXcd::Identity(D, D) / static_cast<double>(D);
  return r;
}

DensityMatrix mix(const std::vector<double>& w, const std::vector<DensityMatrix>& rhos) {
  if (w.size() != rhos.size() || w.empty()) throw precondition_error("mix: size mismatch");
  DensityMatrix r;
  r.dims = rhos.front().dims;
  r.m = Eigen::MatrixXcd::Zero(rhos.front().dim(), rhos.front().dim());
  for (size_t i = 0; i < w.size(); ++i) {
    if (rhos[i].dims != r.dims) throw precondition_error("mix: dims mismatch");
    r.m += w[i] * rhos[i].m;
  }
  return r;
}

PureState tensor_product(const PureState& a, const PureState& b) {
  Dims d = a.dims;
  d.insert(d.end(), b.dims.begin(), b.dims.end());
  Eigen::VectorXcd v(a.dim() * b.dim());
  for (long i = 0; i < a.dim(); ++i) v.segment(i * b.dim(), b.dim()) = a.amps(i) * b.amps;
  return normalized(d, v);
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
  DensityMatrix r;
  r.dims = a.dims;
  r.dims.insert(r.dims.end(), b.dims.begin(), b.dims.end());
  const long na = a.dim(), nb = b.dim();
  r.m.resize(na * nb, na * nb);
  for (long i = 0; i < na; ++i)
    for (long j = 0; j < na; ++j) r.m.block(i * nb, j * nb, nb, nb) = a.m(i, j) * b.m;
  return r;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep_in) {
  const int n = rho.parties();
  auto keep = checked_set(keep_in, n);
  auto rest = complement(keep, n);
  auto offA = offsets(rho.dims, keep);
  auto offT = offsets(rho.dims, rest);
  DensityMatrix r;
  for (int p : keep) r.dims.push_back(rho.dims[p]);
  const long dk = offA.size();
  r.m = Eigen::MatrixXcd::Zero(dk, dk);
  for (long a = 0; a < dk; ++a)
    for (long b = 0; b < dk; ++b) {
      cplx s = 0;
      for (long t : offT) s += rho.m(offA[a] + t, offA[b] + t);
      r.m(a, b) = s;
    }
  return r;
}

DensityMatrix partial_trace(const PureState& psi, const std::vector<int>& keep_in) {
  const int n = psi.parties();
  auto keep = checked_set(keep_in, n);
  auto rest = complement(keep, n);
  auto offA = offsets(psi.dims, keep);
  auto offT = offsets(psi.dims, rest);
  Eigen::MatrixXcd M(offA.size(), offT.size());
  for (size_t a = 0; a < offA.size(); ++a)
    for (size_t t = 0; t < offT.size(); ++t) M(a, t) = psi.amps(offA[a] + offT[t]);
  DensityMatrix r;
  for (int p : keep) r.dims.push_back(psi.dims[p]);
  r.m = M * M.adjoint();
  return r;
}

Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, const PartitionSpec& cut) {
  const int n = rho.parties();
  cut.validate(n);
  auto offB = offsets(rho.dims, cut.group_b);
  auto offR = offsets(rho.dims, cut.group_a);
  Eigen::MatrixXcd out(rho.dim(), rho.dim());
  for (long ib : offB)
    for (long jb : offB)
      for (long ir : offR)
        for (long jr : offR) out(ib + ir, jb + jr) = rho.m(jb + ir, ib + jr);
  return out;
}

PureState permute_parties(const PureState& psi, const std::vector<int>& perm) {
  const int n = psi.parties();
  if (static_cast<int>(perm.size()) != n) throw precondition_error("permutation size mismatch");
  Dims nd(n);
  for (int i = 0; i < n; ++i) nd[i] = psi.dims[perm[i]];
  Eigen::VectorXcd v(psi.dim());
  std::vector<int> nd_digits(n);
  for (long idx = 0; idx < psi.dim(); ++idx) {
    auto d = unflatten(idx, psi.dims);
    for (int i = 0; i < n; ++i) nd_digits[i] = d[perm[i]];
    v(flatten(nd_digits, nd)) = psi.amps(idx);
  }
  return PureState(nd, v);
}

DensityMatrix permute_parties(const DensityMatrix& rho, const std::vector<int>& perm) {
  const int n = rho.parties();
  if (static_cast<int>(perm.size()) != n) throw precondition_error("permutation size mismatch");
  Dims nd(n);
  for (int i = 0; i < n; ++i) nd[i] = rho.dims[perm[i]];
  std::vector<long> map(rho.dim());
  std::vector<int> nd_digits(n);
  for (long idx = 0; idx < rho.dim(); ++idx) {
    auto d = unflatten(idx, rho.dims);
    for (int i = 0; i < n; ++i) nd_digits[i] = d[perm[i]];
    map[idx] = flatten(nd_digits, nd);
  }
  DensityMatrix r;
  r.dims = nd;
  r.m.resize(rho.dim(), rho.dim());
  for (long i = 0; i < rho.dim(); ++i)
    for (long j = 0; j < rho.dim(); ++j) r.m(map[i], map[j]) = rho.m(i, j);
  return r;
}

Eigen::VectorXcd apply_local(const Eigen::VectorXcd& v, const Dims& dims, int party,
                             const Eigen::MatrixXcd& op) {
  long inner = 1;
  for (size_t p = party + 1; p < dims.size(); ++p) inner *= dims[p];
  const long d = dims[party];
  const long outer = v.size() / (inner * d);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size());
  for (long o = 0; o < outer; ++o)
    for (long i = 0; i < inner; ++i)
      for (long a = 0; a < d; ++a) {
        cplx s = 0;
        for (long b = 0; b < d; ++b) s += op(a, b) * v((o * d + b) * inner + i);
        out((o * d + a) * inner + i) = s;
      }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double shannon_entropy(const std::vector<double>& p) {
  double s = 0;
  for (double x : p)
    if (x > kSupportCutoff) s -= x * std::log2(x);
  return s;
}

double binary_entropy(double x) { return shannon_entropy({x, 1.0 - x}); }

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::VectorXd ev = hermitian_eigenvalues(rho.m);
  if (ev.minCoeff() < -1e-9) throw precondition_error("entropy of non-positive operator");
  return shannon_entropy(std::vector<double>(ev.data(), ev.data() + ev.size()));
}

Eigen::MatrixXcd log2_psd(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
  Eigen::VectorXd l = es.eigenvalues();
  for (long i = 0; i < l.size(); ++i) l(i) = l(i) > kSupportCutoff ? std::log2(l(i)) : 0.0;
  return es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims != sigma.dims) throw precondition_error("relative entropy: dims mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (sigma.m + sigma.m.adjoint()));
  const Eigen::MatrixXcd& V = es.eigenvectors();
  Eigen::MatrixXcd rv = V.adjoint() * rho.m * V;
  double cross = 0, off_support = 0;
  for (long i = 0; i < rv.rows(); ++i) {
    double w = rv(i, i).real();
    double l = es.eigenvalues()(i);
    if (l > kSupportCutoff)
      cross += w * std::log2(l);
    else
      off_support += w;
  }
  if (off_support > 1e-10) return std::numeric_limits<double>::infinity();
  double s = -von_neumann_entropy(rho) - cross;
  return std::max(0.0, s);
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dims != sigma.dims) throw precondition_error("fidelity: dims mismatch");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (rho.m + rho.m.adjoint()));
  Eigen::VectorXd l = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXcd sr = es.eigenvectors() * l.asDiagonal() * es.eigenvectors().adjoint();
  Eigen::VectorXd ev = hermitian_eigenvalues(sr * sigma.m * sr);
  double t = ev.cwiseMax(0.0).cwiseSqrt().sum();
  return std::min(1.0, t * t);
}

double fidelity(const PureState& a, const PureState& b) {
  if (a.dims != b.dims) throw precondition_error("fidelity: dims mismatch");
  return std::norm(a.amps.dot(b.amps));
}

Eigen::MatrixXcd random_unitary(int d, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    cplx ph = r(j, j) / std::abs(r(j, j));
    q.col(j) *= ph;
  }
  return q;
}

Eigen::VectorXcd random_unit_vector(int d, Rng& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) v(i) = cplx(g(rng), g(rng));
  return v.normalized();
}

PureState random_pure(const Dims& dims, Rng& rng) {
  return PureState(dims, random_unit_vector(static_cast<int>(total_dim(dims)), rng));
}

DensityMatrix random_density(const Dims& dims, int rank, Rng& rng) {
  const long D = total_dim(dims);
  std::normal_distribution<double> g;
  Eigen::MatrixXcd G(D, rank);
  for (long i = 0; i < D; ++i)
    for (int j = 0; j < rank; ++j) G(i, j) = cplx(g(rng), g(rng));
  DensityMatrix r;
  r.dims = dims;
  r.m = G * G.adjoint();
  r.m /= r.m.trace().real();
  return r;
}

Eigen::Matrix2cd pauli(int which) {
  Eigen::Matrix2cd s;
  const cplx I(0, 1);
  switch (which) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: throw precondition_error("pauli index must be 0..3");
  }
  return s;
}

}  // namespace gme

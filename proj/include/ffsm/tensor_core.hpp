#ifndef FFSM_TENSOR_CORE_HPP
#define FFSM_TENSOR_CORE_HPP

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ffsm {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline constexpr cplx I_unit{0.0, 1.0};
inline constexpr double pi = 3.14159265358979323846;

/// Raised for inputs outside an operation's domain (degenerate kinematics,
/// violated constraints, bad indices).
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// Kronecker product with the first factor as the most significant block index.
template <typename DerivedA, typename DerivedB>
CMatrix kron(const Eigen::MatrixBase<DerivedA>& A, const Eigen::MatrixBase<DerivedB>& B) {
  CMatrix out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = cplx(A(i, j)) * B.template cast<cplx>();
  return out;
}

inline CMatrix kron_all(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

/// A B through sparse storage; for fermion monomials and other operators with few
/// nonzeros per column this is much cheaper than the dense product.
inline CMatrix sparse_product(const CMatrix& A, const CMatrix& B) {
  const Eigen::SparseMatrix<cplx> a = A.sparseView(), b = B.sparseView();
  return CMatrix(a * b);
}

inline CMatrix commutator(const CMatrix& A, const CMatrix& B) { return A * B - B * A; }
inline CMatrix anticommutator(const CMatrix& A, const CMatrix& B) { return A * B + B * A; }

inline void require_same_shape(const CMatrix& A, const CMatrix& B, const char* what) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw domain_error(std::string(what) + ": shape mismatch");
}

/// ||A-B||_F / max(1, ||A||_F, ||B||_F).
inline double frobenius_residual(const CMatrix& A, const CMatrix& B) {
  require_same_shape(A, B, "frobenius_residual");
  const double scale = std::max({1.0, A.norm(), B.norm()});
  return (A - B).norm() / scale;
}

/// Scalar s with A = s B (relative Frobenius tolerance), read off at the
/// largest-modulus entry of B.
inline std::optional<cplx> equal_up_to_scalar(const CMatrix& A, const CMatrix& B, double tol) {
  require_same_shape(A, B, "equal_up_to_scalar");
  Eigen::Index r = 0, c = 0;
  const double bmax = B.cwiseAbs().maxCoeff(&r, &c);
  if (bmax == 0.0) {
    if (A.norm() == 0.0) return cplx(1.0);
    throw domain_error("equal_up_to_scalar: B = 0 while A != 0");
  }
  const cplx s = A(r, c) / B(r, c);
  const CMatrix sB = s * B;
  const double scale = std::max(A.norm(), sB.norm());
  if (scale == 0.0 || (A - sB).norm() / scale <= tol) return s;
  return std::nullopt;
}

/// Relative distance of A from the ray through B, after fitting the scalar.
inline double residual_up_to_scalar(const CMatrix& A, const CMatrix& B) {
  require_same_shape(A, B, "residual_up_to_scalar");
  Eigen::Index r = 0, c = 0;
  const double bmax = B.cwiseAbs().maxCoeff(&r, &c);
  if (bmax == 0.0) return A.norm() == 0.0 ? 0.0 : 1.0;
  const cplx s = A(r, c) / B(r, c);
  const CMatrix sB = s * B;
  const double scale = std::max(A.norm(), sB.norm());
  return scale == 0.0 ? 0.0 : (A - sB).norm() / scale;
}

/// min over s in {+1,-1} of frobenius_residual(A, s B).
inline double residual_up_to_sign(const CMatrix& A, const CMatrix& B) {
  return std::min(frobenius_residual(A, B), frobenius_residual(A, CMatrix(-B)));
}

/// Fermionic Fock space of n_sites sites with n_layers modes each. Modes are
/// ordered site-major with layer 0 (up) before layer 1 (down); the mode with
/// position k in that order is the k-th tensor factor (most significant first).
class FockSpace {
 public:
  FockSpace(int n_sites, int n_layers = 1) : n_sites_(n_sites), n_layers_(n_layers) {
    if (n_sites < 1) throw domain_error("FockSpace: n_sites must be positive");
    if (n_layers != 1 && n_layers != 2) throw domain_error("FockSpace: n_layers must be 1 or 2");
    if (n_sites * n_layers > 14) throw domain_error("FockSpace: too many modes for dense storage");
  }

  int n_sites() const { return n_sites_; }
  int n_layers() const { return n_layers_; }
  int n_modes() const { return n_sites_ * n_layers_; }
  Eigen::Index dim() const { return Eigen::Index(1) << n_modes(); }

  int mode_index(int site, int layer = 0) const {
    if (site < 0 || site >= n_sites_ || layer < 0 || layer >= n_layers_)
      throw domain_error("FockSpace: mode (" + std::to_string(site) + "," + std::to_string(layer) +
                         ") out of range");
    return site * n_layers_ + layer;
  }

  std::vector<std::pair<int, int>> mode_order() const {
    std::vector<std::pair<int, int>> out;
    for (int s = 0; s < n_sites_; ++s)
      for (int l = 0; l < n_layers_; ++l) out.emplace_back(s, l);
    return out;
  }

  /// Occupation of mode k in basis state i.
  int occupation(Eigen::Index i, int k) const { return int((i >> (n_modes() - 1 - k)) & 1); }

  CMatrix identity() const { return CMatrix::Identity(dim(), dim()); }

  /// Annihilator Z^{(k-1)} (x) sigma^- (x) I^{(M-k)}, built entrywise.
  CMatrix c(int site, int layer = 0) const {
    const int k = mode_index(site, layer);
    const Eigen::Index D = dim();
    const Eigen::Index bit = Eigen::Index(1) << (n_modes() - 1 - k);
    CMatrix out = CMatrix::Zero(D, D);
    for (Eigen::Index i = 0; i < D; ++i) {
      if (!(i & bit)) continue;
      int before = 0;
      for (int q = 0; q < k; ++q) before += occupation(i, q);
      out(i ^ bit, i) = (before % 2) ? -1.0 : 1.0;
    }
    return out;
  }
  CMatrix cdag(int site, int layer = 0) const { return c(site, layer).adjoint(); }

  /// n = c^dag c.
  CMatrix n(int site, int layer = 0) const {
    const int k = mode_index(site, layer);
    CMatrix out = CMatrix::Zero(dim(), dim());
    for (Eigen::Index i = 0; i < dim(); ++i) out(i, i) = double(occupation(i, k));
    return out;
  }
  /// m = c c^dag = 1 - n.
  CMatrix m(int site, int layer = 0) const {
    const int k = mode_index(site, layer);
    CMatrix out = CMatrix::Zero(dim(), dim());
    for (Eigen::Index i = 0; i < dim(); ++i) out(i, i) = double(1 - occupation(i, k));
    return out;
  }
  /// (-1)^n for one mode.
  CMatrix parity(int site, int layer = 0) const { return m(site, layer) - n(site, layer); }

  bool operator==(const FockSpace& o) const { return n_sites_ == o.n_sites_ && n_layers_ == o.n_layers_; }

 private:
  int n_sites_;
  int n_layers_;
};

inline std::pair<CMatrix, CMatrix> fermion_mode(const FockSpace& space, int site, int layer = 0) {
  CMatrix c = space.c(site, layer);
  CMatrix cd = c.adjoint();
  return {std::move(c), std::move(cd)};
}

/// P = -n_j n_k + m_j m_k + c^dag_j c_k + c^dag_k c_j on one layer.
inline CMatrix graded_permutation(const FockSpace& space, int j, int k, int layer = 0) {
  if (j == k) throw domain_error("graded_permutation: j == k");
  const CMatrix cj = space.c(j, layer), ck = space.c(k, layer);
  return -sparse_product(space.n(j, layer), space.n(k, layer)) + sparse_product(space.m(j, layer), space.m(k, layer)) +
         sparse_product(cj.adjoint(), ck) + sparse_product(ck.adjoint(), cj);
}

/// Graded exchange of two arbitrary modes; conjugation maps c_a <-> c_b.
inline CMatrix graded_mode_swap(const FockSpace& space, int site_a, int layer_a, int site_b, int layer_b) {
  if (space.mode_index(site_a, layer_a) == space.mode_index(site_b, layer_b))
    throw domain_error("graded_mode_swap: identical modes");
  const CMatrix ca = space.c(site_a, layer_a), cb = space.c(site_b, layer_b);
  return -sparse_product(space.n(site_a, layer_a), space.n(site_b, layer_b)) +
         sparse_product(space.m(site_a, layer_a), space.m(site_b, layer_b)) + sparse_product(ca.adjoint(), cb) +
         sparse_product(cb.adjoint(), ca);
}

/// Exchange of the two layers on every site.
inline CMatrix layer_exchange(const FockSpace& space) {
  if (space.n_layers() != 2) throw domain_error("layer_exchange: needs two layers");
  CMatrix out = space.identity();
  for (int s = 0; s < space.n_sites(); ++s) out = sparse_product(out, graded_mode_swap(space, s, 0, s, 1));
  return out;
}

/// Product of the graded permutations of every layer.
inline CMatrix graded_permutation_all_layers(const FockSpace& space, int j, int k) {
  CMatrix out = space.identity();
  for (int l = 0; l < space.n_layers(); ++l) out = sparse_product(out, graded_permutation(space, j, k, l));
  return out;
}

/// Supertrace over the modes of aux_site, weighted by (-1)^{n_aux}. The result
/// acts on the remaining modes in their original order.
inline CMatrix supertrace_aux(const CMatrix& M, const FockSpace& space, int aux_site) {
  if (M.rows() != space.dim() || M.cols() != space.dim())
    throw domain_error("supertrace_aux: dimension mismatch");
  const int L = space.n_layers();
  const int M_modes = space.n_modes();
  std::vector<int> aux_modes, rest_modes;
  for (int k = 0; k < M_modes; ++k) {
    if (k / L == aux_site) aux_modes.push_back(k);
    else rest_modes.push_back(k);
  }
  if (aux_modes.empty()) throw domain_error("supertrace_aux: aux site out of range");
  const Eigen::Index rest_dim = Eigen::Index(1) << rest_modes.size();
  const Eigen::Index aux_dim = Eigen::Index(1) << aux_modes.size();
  auto compose = [&](Eigen::Index a, Eigen::Index r) {
    Eigen::Index idx = 0;
    for (std::size_t q = 0; q < aux_modes.size(); ++q)
      if ((a >> (aux_modes.size() - 1 - q)) & 1) idx |= Eigen::Index(1) << (M_modes - 1 - aux_modes[q]);
    for (std::size_t q = 0; q < rest_modes.size(); ++q)
      if ((r >> (rest_modes.size() - 1 - q)) & 1) idx |= Eigen::Index(1) << (M_modes - 1 - rest_modes[q]);
    return idx;
  };
  CMatrix out = CMatrix::Zero(rest_dim, rest_dim);
  for (Eigen::Index a = 0; a < aux_dim; ++a) {
    int na = 0;
    for (Eigen::Index x = a; x; x >>= 1) na += int(x & 1);
    const double w = (na % 2) ? -1.0 : 1.0;
    for (Eigen::Index r = 0; r < rest_dim; ++r)
      for (Eigen::Index s = 0; s < rest_dim; ++s) out(r, s) += w * M(compose(a, r), compose(a, s));
  }
  return out;
}

/// Text dump: one row per line, entries "re,im" separated by spaces.
inline void dump(std::ostream& os, const CMatrix& M, int precision = 17) {
  std::ostringstream line;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    line.str("");
    line.clear();
    line << std::setprecision(precision);
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      if (j) line << ' ';
      line << M(i, j).real() << ',' << M(i, j).imag();
    }
    os << line.str() << '\n';
  }
}

inline std::string dump_string(const CMatrix& M, int precision = 17) {
  std::ostringstream os;
  dump(os, M, precision);
  return os.str();
}

/// Inverse of dump.
inline CMatrix parse_dump(const std::string& text) {
  std::vector<std::vector<cplx>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<cplx> row;
    while (ls >> tok) {
      const auto comma = tok.find(',');
      if (comma == std::string::npos) throw domain_error("parse_dump: malformed entry '" + tok + "'");
      row.emplace_back(std::stod(tok.substr(0, comma)), std::stod(tok.substr(comma + 1)));
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw domain_error("parse_dump: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return CMatrix(0, 0);
  CMatrix M(Eigen::Index(rows.size()), Eigen::Index(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) M(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return M;
}

/// Worst anticommutator residual {c_a, c_b^dag} - delta, {c_a, c_b} over all modes.
inline double check_car(const FockSpace& space) {
  double worst = 0.0;
  const CMatrix Id = space.identity();
  std::vector<CMatrix> cs;
  for (auto [s, l] : space.mode_order()) cs.push_back(space.c(s, l));
  for (std::size_t a = 0; a < cs.size(); ++a)
    for (std::size_t b = 0; b < cs.size(); ++b) {
      const CMatrix expect = (a == b) ? Id : CMatrix::Zero(Id.rows(), Id.cols());
      worst = std::max(worst, (anticommutator(cs[a], cs[b].adjoint()) - expect).norm());
      worst = std::max(worst, anticommutator(cs[a], cs[b]).norm());
    }
  return worst;
}

}  // namespace ffsm

#endif  // FFSM_TENSOR_CORE_HPP

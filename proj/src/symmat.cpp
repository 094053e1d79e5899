#include "loewner/symmat.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <numeric>
#include <vector>

namespace loewner {

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

namespace {

// Eigendecomposition with the convergence check every caller needs.
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Eigen::MatrixXd& m,
                                                   bool vectors = true) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(m, vectors ? Eigen::ComputeEigenvectors
                            : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("symmetric eigendecomposition did not converge");
  }
  return solver;
}

// Sign rule shared by all canonical bases: the first component of largest
// magnitude is made positive.
void sign_normalize(Eigen::Ref<Eigen::VectorXd> v) {
  int pivot = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      pivot = i;
    }
  }
  if (v.size() > 0 && v(pivot) < 0.0) v = -v;
}

int pivot_index(const Eigen::VectorXd& v) {
  int pivot = 0;
  double best = -1.0;
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > best) {
      best = std::abs(v(i));
      pivot = i;
    }
  }
  return pivot;
}

}  // namespace

SymMat::SymMat(const Eigen::MatrixXd& entries) : m_() {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw DimensionMismatch("symmetric matrix must be square of order >= 1");
  }
  if (!entries.allFinite()) {
    throw InputError("matrix entries must be finite");
  }
  const double largest = entries.cwiseAbs().maxCoeff();
  const double defect = (entries - entries.transpose()).cwiseAbs().maxCoeff();
  if (defect > 1e-12 * largest) {
    throw InputError("matrix is not symmetric (relative defect " +
                     std::to_string(defect / (largest > 0 ? largest : 1.0)) +
                     ")");
  }
  m_ = 0.5 * (entries + entries.transpose());
}

SymMat SymMat::diagonal(const Eigen::VectorXd& d) {
  return SymMat(Eigen::MatrixXd(d.asDiagonal()));
}

SymMat SymMat::zero(int n) { return SymMat(Eigen::MatrixXd::Zero(n, n)); }

SymMat SymMat::identity(int n) {
  return SymMat(Eigen::MatrixXd::Identity(n, n));
}

SymMat SymMat::symmetrized(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1) {
    throw DimensionMismatch("symmetric matrix must be square of order >= 1");
  }
  if (!m.allFinite()) {
    throw NumericError("non-finite entries in computed symmetric matrix");
  }
  return SymMat(0.5 * (m + m.transpose()), Unchecked{});
}

SymMat SymMat::operator-(const SymMat& other) const {
  if (order() != other.order()) {
    throw DimensionMismatch("matrix orders differ");
  }
  return SymMat(m_ - other.m_, Unchecked{});
}

SymMat SymMat::operator+(const SymMat& other) const {
  if (order() != other.order()) {
    throw DimensionMismatch("matrix orders differ");
  }
  return SymMat(m_ + other.m_, Unchecked{});
}

Subspace Subspace::from_spanning(int n, const Eigen::MatrixXd& vectors,
                                 double tol) {
  if (vectors.size() == 0) return zero(n);
  if (vectors.rows() != n) {
    throw DimensionMismatch("spanning vectors have wrong ambient dimension");
  }
  if (!vectors.allFinite()) {
    throw InputError("spanning vectors must be finite");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  const double thr =
      tol * std::max(1.0, smax) * static_cast<double>(vectors.cols());
  int k = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr) ++k;
  }
  Eigen::MatrixXd basis = svd.matrixU().leftCols(k);
  for (int j = 0; j < k; ++j) sign_normalize(basis.col(j));
  return Subspace(n, std::move(basis));
}

Subspace Subspace::from_orthonormal(int n, const Eigen::MatrixXd& basis) {
  if (basis.cols() == 0) return zero(n);
  if (basis.rows() != n) {
    throw DimensionMismatch("basis has wrong ambient dimension");
  }
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const double defect =
      (gram - Eigen::MatrixXd::Identity(basis.cols(), basis.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (defect > 1e-10) {
    throw InputError("basis columns are not orthonormal");
  }
  Eigen::MatrixXd b = basis;
  for (int j = 0; j < b.cols(); ++j) sign_normalize(b.col(j));
  return Subspace(n, std::move(b));
}

Subspace Subspace::zero(int n) {
  return Subspace(n, Eigen::MatrixXd::Zero(n, 0));
}

Eigen::MatrixXd jpqr(int p, int q, int r) {
  Eigen::VectorXd d(p + q + r);
  d.segment(0, p).setOnes();
  d.segment(p, q).setConstant(-1.0);
  d.segment(p + q, r).setZero();
  return Eigen::MatrixXd(d.asDiagonal());
}

Inertia inertia(const SymMat& a, double tol) {
  auto solver = eig(a.mat(), false);
  const auto& ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
  Inertia res;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > thr) {
      ++res.p;
    } else if (ev(i) < -thr) {
      ++res.q;
    } else {
      ++res.r;
    }
  }
  return res;
}

CongruenceReduction congruence_reduce(const SymMat& a, const SymMat& b,
                                      double tol) {
  const SymMat diff = a - b;
  const int n = diff.order();
  auto solver = eig(diff.mat());
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());

  struct Pair {
    double lambda;
    Eigen::VectorXd v;
    int cls;    // 0 positive, 1 negative, 2 null
    int pivot;  // tie-break: index of largest-magnitude component
  };
  std::vector<Pair> pairs;
  pairs.reserve(n);
  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd v = solver.eigenvectors().col(i);
    sign_normalize(v);
    int cls = 2;
    if (ev(i) > thr) {
      cls = 0;
    } else if (ev(i) < -thr) {
      cls = 1;
    }
    pairs.push_back(Pair{ev(i), std::move(v), cls, 0});
  }
  for (auto& pr : pairs) pr.pivot = pivot_index(pr.v);

  // Positive eigenvalues descending, negative descending |lambda|, null
  // last. Eigenvalues equal at 1e-12 relative are ordered by pivot index so
  // that repeated eigenvalues get a reproducible column order.
  const double tie = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::stable_sort(pairs.begin(), pairs.end(),
                   [tie](const Pair& x, const Pair& y) {
                     if (x.cls != y.cls) return x.cls < y.cls;
                     if (x.cls == 2 || std::abs(x.lambda - y.lambda) <= tie) {
                       return x.pivot < y.pivot;
                     }
                     return std::abs(x.lambda) > std::abs(y.lambda);
                   });

  CongruenceReduction red;
  red.P.resize(n, n);
  red.Pinv.resize(n, n);
  for (int i = 0; i < n; ++i) {
    const auto& pr = pairs[i];
    if (pr.cls == 0) {
      ++red.inertia.p;
    } else if (pr.cls == 1) {
      ++red.inertia.q;
    } else {
      ++red.inertia.r;
    }
    const double s = pr.cls == 2 ? 1.0 : std::sqrt(std::abs(pr.lambda));
    red.P.col(i) = pr.v * s;
    red.Pinv.row(i) = pr.v.transpose() / s;
  }
  return red;
}

SymMat psd_sqrt(const SymMat& m, double tol) {
  auto solver = eig(m.mat());
  Eigen::VectorXd ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -thr) {
      throw NotPositiveSemidefinite("matrix has eigenvalue " +
                                    std::to_string(ev(i)) +
                                    " below the PSD tolerance");
    }
    ev(i) = std::sqrt(std::max(ev(i), 0.0));
  }
  return SymMat::symmetrized(solver.eigenvectors() * ev.asDiagonal() *
                             solver.eigenvectors().transpose());
}

Subspace kernel_basis(const SymMat& m, double tol) {
  const int n = m.order();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m.mat(), Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  // max(1, .) keeps the single tolerance policy meaningful on numerically
  // zero matrices, whose noise-level singular values carry no rank signal.
  const double thr = tol * std::max(1.0, smax) * static_cast<double>(n);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > thr) ++rank;
  }
  Eigen::MatrixXd basis = svd.matrixV().rightCols(n - rank);
  for (int j = 0; j < basis.cols(); ++j) {
    Eigen::Ref<Eigen::VectorXd> col = basis.col(j);
    int pivot = 0;
    double best = -1.0;
    for (int i = 0; i < col.size(); ++i) {
      if (std::abs(col(i)) > best) {
        best = std::abs(col(i));
        pivot = i;
      }
    }
    if (col(pivot) < 0.0) col = -col;
  }
  return Subspace::from_orthonormal(n, basis);
}

bool loewner_leq(const SymMat& a, const SymMat& b, double tol) {
  const SymMat diff = b - a;
  auto solver = eig(diff.mat(), false);
  const auto& ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -thr;
}

bool definite_on(const SymMat& m, const Subspace& s, DefiniteSign sign,
                 double tol) {
  if (s.ambient() != m.order()) {
    throw DimensionMismatch("subspace ambient dimension does not match");
  }
  if (s.dim() == 0) return true;
  const Eigen::MatrixXd compressed =
      s.basis().transpose() * m.mat() * s.basis();
  auto solver = eig(0.5 * (compressed + compressed.transpose()), false);
  const auto& ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
  if (sign == DefiniteSign::Positive) return ev.minCoeff() > thr;
  return ev.maxCoeff() < -thr;
}

Subspace complement(const Subspace& s, double tol) {
  const int n = s.ambient();
  if (s.dim() == 0) {
    return kernel_basis(SymMat::zero(n), tol);
  }
  // span(s)^perp = Ker(B B^T), reusing the canonical kernel path.
  const SymMat proj = SymMat::symmetrized(s.basis() * s.basis().transpose());
  return kernel_basis(proj, tol);
}

int subspace_sum_dim(const Subspace& s1, const Subspace& s2, double tol) {
  if (s1.ambient() != s2.ambient()) {
    throw DimensionMismatch("subspaces live in different ambient spaces");
  }
  Eigen::MatrixXd joined(s1.ambient(), s1.dim() + s2.dim());
  joined << s1.basis(), s2.basis();
  return Subspace::from_spanning(s1.ambient(), joined, tol).dim();
}

Subspace subspace_intersection(const Subspace& s1, const Subspace& s2,
                               double tol) {
  if (s1.ambient() != s2.ambient()) {
    throw DimensionMismatch("subspaces live in different ambient spaces");
  }
  const Subspace c1 = complement(s1, tol);
  const Subspace c2 = complement(s2, tol);
  Eigen::MatrixXd joined(s1.ambient(), c1.dim() + c2.dim());
  joined << c1.basis(), c2.basis();
  return complement(Subspace::from_spanning(s1.ambient(), joined, tol), tol);
}

double principal_angle_sin(const Subspace& s1, const Subspace& s2) {
  if (s1.ambient() != s2.ambient()) {
    throw DimensionMismatch("subspaces live in different ambient spaces");
  }
  if (s1.dim() != s2.dim()) return 1.0;
  if (s1.dim() == 0) return 0.0;
  const Eigen::MatrixXd resid1 =
      s2.basis() - s1.basis() * (s1.basis().transpose() * s2.basis());
  const Eigen::MatrixXd resid2 =
      s1.basis() - s2.basis() * (s2.basis().transpose() * s1.basis());
  return std::max(spectral_norm(resid1), spectral_norm(resid2));
}

}  // namespace loewner

// Shared generators and independent oracles for the test suites. Everything
// here is deliberately separate from the library's computation paths: ranks
// by brute SVD counting, subspace angles by projection residuals, bounds by
// direct quadratic-form sampling.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <random>
#include <vector>

#include "loewner/symmat.hpp"

namespace testsupport {

using loewner::SymMat;

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20240817);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng());
}

inline int uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  return dist(rng());
}

inline Eigen::MatrixXd random_matrix(int rows, int cols, double scale = 1.0) {
  std::normal_distribution<double> dist(0.0, scale);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = dist(rng());
  }
  return m;
}

inline Eigen::VectorXd random_vector(int n, double scale = 1.0) {
  return random_matrix(n, 1, scale).col(0);
}

inline Eigen::VectorXd random_unit(int n) {
  Eigen::VectorXd v = random_vector(n);
  while (v.norm() < 1e-8) v = random_vector(n);
  return v / v.norm();
}

inline Eigen::MatrixXd random_orthogonal(int n) {
  if (n == 0) return Eigen::MatrixXd(0, 0);
  const Eigen::MatrixXd g = random_matrix(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  // fix reflections so the distribution does not collapse
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    if (r(i, i) < 0) q.col(i) = -q.col(i);
  }
  return q;
}

inline SymMat random_sym(int n, double scale = 1.0) {
  const Eigen::MatrixXd g = random_matrix(n, n, scale);
  return SymMat(0.5 * (g + g.transpose()));
}

// Symmetric matrix with a prescribed signature; eigenvalue magnitudes kept
// in [0.3, 3] so tolerance decisions are never borderline.
inline SymMat random_sym_with_inertia(int p, int q, int r) {
  const int n = p + q + r;
  Eigen::VectorXd d(n);
  for (int i = 0; i < p; ++i) d(i) = uniform(0.3, 3.0);
  for (int i = 0; i < q; ++i) d(p + i) = -uniform(0.3, 3.0);
  for (int i = 0; i < r; ++i) d(p + q + i) = 0.0;
  const Eigen::MatrixXd u = random_orthogonal(n);
  return SymMat(u * d.asDiagonal() * u.transpose());
}

inline SymMat random_spd(int n, double lo = 0.3, double hi = 3.0) {
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) d(i) = uniform(lo, hi);
  const Eigen::MatrixXd u = random_orthogonal(n);
  return SymMat(u * d.asDiagonal() * u.transpose());
}

inline SymMat random_psd_rank(int n, int rank, double lo = 0.3,
                              double hi = 3.0) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < rank; ++i) d(i) = uniform(lo, hi);
  const Eigen::MatrixXd u = random_orthogonal(n);
  return SymMat(u * d.asDiagonal() * u.transpose());
}

// Pair (A,B) with prescribed inertia of A-B.
struct Pair {
  SymMat a;
  SymMat b;
};

inline Pair random_pair(int p, int q, int r, double bg_scale = 1.0) {
  const SymMat diff = random_sym_with_inertia(p, q, r);
  const SymMat b = random_sym(p + q + r, bg_scale);
  return Pair{b + diff, b};
}

inline SymMat sym_from(const Eigen::MatrixXd& m) {
  return SymMat(0.5 * (m + m.transpose()));
}

// ----- independent oracles -----

inline int rank_oracle(const Eigen::MatrixXd& m, double tol = 1e-9) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * std::max(1.0, sv(0))) ++rank;
  }
  return rank;
}

inline double min_eig(const SymMat& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.mat(),
                                                    Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Loewner comparison by direct eigenvalue bound, independent of the library
// entry point's scaling policy.
inline bool leq_oracle(const SymMat& a, const SymMat& b, double slack = 1e-9) {
  return min_eig(b - a) >= -slack;
}

inline double spec_norm(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace testsupport

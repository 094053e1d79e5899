#pragma once

#include <Eigen/Dense>
#include <algorithm>

#include "loewner/errors.hpp"

namespace loewner {

// Single tolerance policy: every rank / inertia / definiteness decision uses
// a threshold tol * max(1, scale), with this default, overridable per call.
inline constexpr double kDefaultTol = 1e-10;

inline double scaled_tol(double tol, double scale) {
  return tol * std::max(1.0, scale);
}

// Spectral norm (largest singular value) of a general dense matrix.
double spectral_norm(const Eigen::MatrixXd& m);

struct Inertia {
  int p = 0;  // positive eigenvalues
  int q = 0;  // negative eigenvalues
  int r = 0;  // zero eigenvalues
  int order() const { return p + q + r; }
  bool operator==(const Inertia&) const = default;
};

// Dense real symmetric matrix. The constructor symmetrizes (X+X^T)/2 and
// rejects input whose asymmetry defect exceeds 1e-12 relative to the largest
// absolute entry.
class SymMat {
public:
  explicit SymMat(const Eigen::MatrixXd& entries);

  static SymMat diagonal(const Eigen::VectorXd& d);
  static SymMat zero(int n);
  static SymMat identity(int n);
  // Symmetrizes without the asymmetry-defect check; for internal results
  // whose asymmetry is pure roundoff.
  static SymMat symmetrized(const Eigen::MatrixXd& m);

  int order() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double spec_norm() const { return spectral_norm(m_); }

  SymMat operator-(const SymMat& other) const;
  SymMat operator+(const SymMat& other) const;

private:
  struct Unchecked {};
  SymMat(Eigen::MatrixXd m, Unchecked) : m_(std::move(m)) {}
  Eigen::MatrixXd m_;
};

// Subspace of R^n held as an orthonormal basis, columns in the canonical
// form produced by the defining SVD, each sign-normalized so that its first
// component of largest magnitude is positive.
class Subspace {
public:
  // Orthonormalizes the span of the given columns (rank cut at
  // tol * sigma_max * ncols).
  static Subspace from_spanning(int n, const Eigen::MatrixXd& vectors,
                                double tol = kDefaultTol);
  static Subspace from_orthonormal(int n, const Eigen::MatrixXd& basis);
  static Subspace zero(int n);

  int ambient() const { return n_; }
  int dim() const { return static_cast<int>(basis_.cols()); }
  const Eigen::MatrixXd& basis() const { return basis_; }

private:
  Subspace(int n, Eigen::MatrixXd basis) : n_(n), basis_(std::move(basis)) {}
  int n_;
  Eigen::MatrixXd basis_;  // n x k, orthonormal columns
};

// Invertible P with A - B = P * J_{p,q,r} * P^T, built from the canonical
// eigendecomposition ordering (positive eigenvalues descending, then
// negative descending |lambda|, then null).
struct CongruenceReduction {
  Eigen::MatrixXd P;
  Eigen::MatrixXd Pinv;
  Inertia inertia;
};

// Matrix of the canonical form with inertia (p,q,r): diag(I_p, -I_q, 0_r).
Eigen::MatrixXd jpqr(int p, int q, int r);

Inertia inertia(const SymMat& a, double tol = kDefaultTol);

CongruenceReduction congruence_reduce(const SymMat& a, const SymMat& b,
                                      double tol = kDefaultTol);

// Unique PSD square root; eigenvalues in [-tol*scale, 0) are clamped to 0.
SymMat psd_sqrt(const SymMat& m, double tol = kDefaultTol);

// Canonical orthonormal basis of the numerical null space (singular values
// <= tol * sigma_max * n treated as zero).
Subspace kernel_basis(const SymMat& m, double tol = kDefaultTol);

// A <= B in the Loewner order: smallest eigenvalue of B - A above
// -tol * max(1, ||B-A||).
bool loewner_leq(const SymMat& a, const SymMat& b, double tol = kDefaultTol);

enum class DefiniteSign { Positive, Negative };

// Strict definiteness of the compressed form basis^T * M * basis; vacuously
// true on the zero subspace.
bool definite_on(const SymMat& m, const Subspace& s, DefiniteSign sign,
                 double tol = kDefaultTol);

// Canonical orthonormal basis of span(s)^perp.
Subspace complement(const Subspace& s, double tol = kDefaultTol);

// dim(span(s1) + span(s2)) at the rank tolerance.
int subspace_sum_dim(const Subspace& s1, const Subspace& s2,
                     double tol = kDefaultTol);

// span(s1) ∩ span(s2), via (s1^perp + s2^perp)^perp.
Subspace subspace_intersection(const Subspace& s1, const Subspace& s2,
                               double tol = kDefaultTol);

// Largest principal-angle sine between two subspaces (0 when equal); used by
// the verification suites.
double principal_angle_sin(const Subspace& s1, const Subspace& s2);

}  // namespace loewner

#pragma once

#include <Eigen/Dense>

#include "loewner/symmat.hpp"

namespace loewner {

// Free parameter of the maximal-lower-bound parametrization: a p x q real
// matrix, one-to-one with the maximal lower bounds of a pair whose
// difference has inertia (p,q,r).
struct MlbParam {
  int p = 0;
  int q = 0;
  Eigen::MatrixXd m;  // p x q

  static MlbParam zero(int p, int q) {
    return MlbParam{p, q, Eigen::MatrixXd::Zero(p, q)};
  }
};

// Member of the indefinite orthogonal group O(p,q):
// sigma * J_{p,q} * sigma^T = J_{p,q}.
struct OpqMatrix {
  int p = 0;
  int q = 0;
  Eigen::MatrixXd sigma;  // (p+q) x (p+q)
};

// ||sigma * J * sigma^T - J|| for the group-membership test.
double opq_defect(const OpqMatrix& s);

// Polar factorization of an O(p,q) element: sigma = S(M) * (U ⊕ V) with U,V
// orthogonal and S(M) the symmetric positive factor determined by M.
struct PolarFactors {
  Eigen::MatrixXd m;  // p x q
  Eigen::MatrixXd u;  // p x p orthogonal
  Eigen::MatrixXd v;  // q x q orthogonal
};

// phi(X) = (I_p + X X^T)^{-1/2} X, a bijection from p x q matrices onto the
// open spectral-norm unit ball.
Eigen::MatrixXd phi(const Eigen::MatrixXd& x);

// Inverse of phi: psi(Y) = (I_p - Y Y^T)^{-1/2} Y. Requires ||Y|| < 1 - 1e-12.
Eigen::MatrixXd psi(const Eigen::MatrixXd& y);

// The symmetric positive O(p,q) factor
//   S(M) = [[(I_p + M M^T)^{1/2}, M], [M^T, (I_q + M^T M)^{1/2}]].
OpqMatrix build_S(const MlbParam& param);

// S(M) embedded as an n x n block ⊕ 0_r.
Eigen::MatrixXd build_S(const MlbParam& param, int r);

PolarFactors opq_polar(const OpqMatrix& sigma, double tol = kDefaultTol);

// Maximal lower bound C = A - P S (I_p ⊕ 0_q ⊕ 0_r) S P^T in the frame of
// the given reduction.
SymMat mlb(const SymMat& a, const SymMat& b, const CongruenceReduction& red,
           const MlbParam& param);

// Minimal upper bound C = A + P S (0_p ⊕ I_q ⊕ 0_r) S P^T.
SymMat mub(const SymMat& a, const SymMat& b, const CongruenceReduction& red,
           const MlbParam& param);

// Recovers the unique parameter of a maximal lower bound C relative to the
// given reduction. Throws NotMaximal unless check_maximal says Maximal.
MlbParam recover_param(const SymMat& a, const SymMat& b,
                       const CongruenceReduction& red, const SymMat& c,
                       double tol = kDefaultTol);

enum class Maximality { NotLowerBound, LowerBoundNotMaximal, Maximal };

const char* to_string(Maximality m);

// Classifies C against the pair (A,B). Runs both equivalent maximality
// criteria (kernel-sum dimension, and rank counts against the inertia of
// A-B) and raises ToleranceInconsistency if they disagree.
Maximality check_maximal(const SymMat& a, const SymMat& b, const SymMat& c,
                         double tol = kDefaultTol);

}  // namespace loewner

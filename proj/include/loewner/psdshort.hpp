#pragma once

#include <Eigen/Dense>

#include "loewner/symmat.hpp"

namespace loewner {

// Three-block reduction of a PSD pair with nonsingular difference:
// T^T A T = I_a ⊕ S_A ⊕ 0_b and T^T B T = 0_a ⊕ S_B ⊕ I_b, with S_A, S_B
// positive definite and S_A - S_B = J_{p',q'}.
struct PsdReduction {
  Eigen::MatrixXd t;     // n x n invertible
  Eigen::MatrixXd tinv;
  int a = 0;             // dim of the A-only block (Ker B)
  int b = 0;             // dim of the B-only block (Ker A)
  Eigen::MatrixXd s_a;   // middle block of A
  Eigen::MatrixXd s_b;   // middle block of B
  Inertia inertia_mid;   // (p', q', 0)
};

// Generalized short [Y]X = max{Z : 0 <= Z <= X, Im Z ⊆ Im Y}, realized as
// the Schur complement of X onto Im Y.
SymMat generalized_short(const SymMat& x, const SymMat& y,
                         double tol = kDefaultTol);

// Requires a pair already deflated of Ker(A-B); raises
// DegenerateIntersection when Ker A ∩ Ker B is nontrivial (which means the
// input was not deflated) and InputError when A-B is otherwise singular.
PsdReduction psd_reduce(const SymMat& a, const SymMat& b,
                        double tol = kDefaultTol);

// Upper bound p' + q' + dim Ker(A-B) on the rank of a PSD maximal lower
// bound, with (p', q') taken from the reduction of the deflated pair.
int rank_bound(const SymMat& a, const SymMat& b, double tol = kDefaultTol);

// Maximal-rank PSD maximal lower bound with middle-frame parameter Z
// (p' x q'). Throws NotPsdResult when Z is outside the PSD-admissible
// region (S_C indefinite beyond tolerance).
SymMat psd_mlb(const SymMat& a, const SymMat& b, const Eigen::MatrixXd& z,
               double tol = kDefaultTol);

// True iff the PSD maximal lower bound is unique, decided by comparability
// of the generalized shorts [B]A, [A]B and cross-checked against p'q' = 0;
// disagreement raises ToleranceInconsistency.
bool gudder_unique(const SymMat& a, const SymMat& b, double tol = kDefaultTol);

// Checks C >= 0, C <= A, C <= B, rank C = rank_bound(A,B), and maximality of
// the middle block against (S_A, S_B) in the reduced frame.
bool verify_psd_mlb(const SymMat& a, const SymMat& b, const SymMat& c,
                    double tol = kDefaultTol);

}  // namespace loewner

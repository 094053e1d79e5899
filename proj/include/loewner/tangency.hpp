#pragma once

#include <Eigen/Dense>
#include <vector>

#include "loewner/mlbparam.hpp"
#include "loewner/symmat.hpp"

namespace loewner {

// Prescribed-tangency selection problem: find maximal lower bounds C of
// (A,B) with C u = B u on U and C v = A v on V.
struct TangencyProblem {
  SymMat a;
  SymMat b;
  Subspace u;  // directions where C must agree with B
  Subspace v;  // directions where C must agree with A
};

struct FeasibilityReport {
  bool feasible = false;
  bool pos_def_on_u = false;
  bool neg_def_on_v = false;
  bool cross_orthogonal = false;
};

struct Infeasible : DomainError {
  FeasibilityReport report;
  Infeasible(FeasibilityReport rep, const std::string& w)
      : DomainError(w), report(rep) {}
};

// Affine family {R0 + sum c_i D_i} ∩ open unit ball parametrizing the
// solutions, expressed in the canonical reduced frame of (A,B). The D_i are
// orthonormal in the trace inner product.
struct SolutionFamily {
  int p = 0;
  int q = 0;
  Eigen::MatrixXd r0;                      // p x q, ||r0|| <= 1 - 1e-9
  std::vector<Eigen::MatrixXd> directions; // each p x q
  int dim() const { return static_cast<int>(directions.size()); }
};

// Evaluates the three existence conditions in the canonical reduced frame:
// A-B positive definite over U, negative definite over V, and U ⊥ V with
// respect to the indefinite product A-B. Components of U, V inside
// Ker(A-B) impose vacuous constraints and are deflated away.
FeasibilityReport feasibility(const TangencyProblem& prob,
                              double tol = kDefaultTol);

// For a subspace of R^{p+q} on which J_{p,q} is negative definite, the
// contraction R (||R|| < 1) with pi_p(x) = R pi_q(x) on the subspace and
// R = 0 on pi_q(subspace)^perp.
Eigen::MatrixXd contraction_for_subspace(const Subspace& vsub, int p, int q,
                                         double tol = kDefaultTol);

enum class AgreeSide { WithA, WithB };

// Single-direction constraint C x = A x (side WithA) or C x = B x (WithB).
// Feasible iff the constraint is vacuous (A x = B x) or x^T (A-B) x has the
// required strict sign; throws Infeasible otherwise.
SolutionFamily solve_single(const SymMat& a, const SymMat& b,
                            const Eigen::VectorXd& x, AgreeSide side,
                            double tol = kDefaultTol);

// Full subspace-constrained solve; family dimension is
// (p - dim U)(q - dim V).
SolutionFamily solve_constrained(const TangencyProblem& prob,
                                 double tol = kDefaultTol);

// Member of the family at the given coefficients in the D basis; returns
// mlb(A, B, red, psi(R)). Throws NotContractive if R leaves the open ball.
SymMat solution_at(const SolutionFamily& family, const Eigen::VectorXd& coeffs,
                   const SymMat& a, const SymMat& b,
                   const CongruenceReduction& red);

}  // namespace loewner

#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "loewner/mlbparam.hpp"
#include "loewner/symmat.hpp"

namespace loewner {

// Sub-level set {x : x^T form x <= 1}; an ellipsoid when the form is PSD.
struct Quadric {
  SymMat form;
  bool convex;  // consistent with the inertia of form

  static Quadric make(const SymMat& form, double tol = kDefaultTol);
};

// Tangency data between the level sets of C and of a matrix it agrees with
// on Ker(A-C): finite point pairs ±x/sqrt(x^T C x), and kernel directions
// with x^T C x <= 0 reported as tangencies at infinity.
struct TangencyPointsReport {
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> finite_points;
  std::vector<Eigen::VectorXd> infinite_directions;
};

// Ellipsoid-in-quadric inclusion test: E_inner ⊆ Q_outer iff
// outer.form <= inner.form. The inner set must be convex
// (NotAnEllipsoid otherwise); the equivalence fails for general quadrics.
bool includes(const Quadric& inner, const Quadric& outer,
              double tol = kDefaultTol);

// Requires C <= A; reports the tangencies along the canonical kernel basis
// of A - C.
TangencyPointsReport tangency_points(const SymMat& a, const SymMat& c,
                                     double tol = kDefaultTol);

// Boundary samples {x : x^T Q x = 1} for n in {2,3}. Closed curves take
// `resolution` points (per branch/line when the set is disconnected or
// ruled); surfaces take a resolution x resolution parameter grid per sheet.
// Unbounded parameters range over [-3,3].
std::vector<Eigen::VectorXd> sample_boundary(const Quadric& q, int resolution,
                                             double tol = kDefaultTol);

// Writes, per parameter, the boundary samples of E_A, E_B, Q_C and the
// tangency reports: EA_0.csv, EB_0.csv, QC_<i>.csv, tangency_<i>.json in
// out_dir. CSV layout: header "x,y" or "x,y,z", one point per line,
// 17-significant-digit decimals.
void figure_data(const SymMat& a, const SymMat& b,
                 const std::vector<MlbParam>& params,
                 const std::string& out_dir, int resolution = 200,
                 double tol = kDefaultTol);

}  // namespace loewner

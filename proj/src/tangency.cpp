#include "loewner/tangency.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

namespace loewner {

namespace {

// Image of a subspace in the reduced frame coordinates u~ = P^T u, keeping
// the first p+q components. Components inside Ker(A-B) project to zero and
// drop out: every maximal lower bound already agrees with A and B there, so
// the constraints they carry are vacuous.
Subspace project_reduced(const Subspace& s, const CongruenceReduction& red,
                         double tol) {
  const int m = red.inertia.p + red.inertia.q;
  if (s.dim() == 0 || m == 0) return Subspace::zero(m);
  const Eigen::MatrixXd mapped =
      (red.P.transpose() * s.basis()).topRows(m);
  return Subspace::from_spanning(m, mapped, tol);
}

struct Completion {
  Subspace u_c;  // dim p, J positive definite
  Subspace v_c;  // dim q, J negative definite
};

// J-orthogonal complement of a set of directions, as a plain subspace.
Subspace j_orth_complement(const Eigen::MatrixXd& j,
                           const Eigen::MatrixXd& dirs, double tol) {
  const int m = static_cast<int>(j.rows());
  if (dirs.cols() == 0) return complement(Subspace::zero(m), tol);
  return complement(Subspace::from_spanning(m, j * dirs, tol), tol);
}

// Deterministic completion: extend U inside [J U]^perp by the leading
// positive eigenvectors of the compressed form, then V inside
// [J V]^perp ∩ [J U_c]^perp by the trailing (most negative) ones.
Completion complete_subspaces(const Subspace& u_red, const Subspace& v_red,
                              const Eigen::MatrixXd& j, double tol) {
  const int m = static_cast<int>(j.rows());
  const int p = [&] {
    int cnt = 0;
    for (int i = 0; i < m; ++i) cnt += j(i, i) > 0 ? 1 : 0;
    return cnt;
  }();
  const int q = m - p;

  auto definite_directions = [&](const Subspace& w, bool positive,
                                 int expected) {
    Eigen::MatrixXd out(m, 0);
    if (w.dim() == 0) {
      if (expected != 0) {
        throw NumericError("tangency completion lost directions");
      }
      return out;
    }
    const Eigen::MatrixXd g = w.basis().transpose() * j * w.basis();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        0.5 * (g + g.transpose()));
    if (solver.info() != Eigen::Success) {
      throw EigenFailure("eigendecomposition did not converge");
    }
    const Eigen::VectorXd ev = solver.eigenvalues();
    const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
    std::vector<int> idx;
    if (positive) {
      for (int i = static_cast<int>(ev.size()) - 1; i >= 0; --i) {
        if (ev(i) > thr) idx.push_back(i);  // leading first
      }
    } else {
      for (int i = 0; i < ev.size(); ++i) {
        if (ev(i) < -thr) idx.push_back(i);  // most negative first
      }
    }
    if (static_cast<int>(idx.size()) != expected) {
      throw NumericError("tangency completion found " +
                         std::to_string(idx.size()) + " directions, expected " +
                         std::to_string(expected));
    }
    out.resize(m, expected);
    for (int k = 0; k < expected; ++k) {
      out.col(k) = w.basis() * solver.eigenvectors().col(idx[k]);
    }
    return out;
  };

  Completion comp{Subspace::zero(m), Subspace::zero(m)};

  const Subspace wu = j_orth_complement(j, u_red.basis(), tol);
  const Eigen::MatrixXd u0 =
      definite_directions(wu, true, p - u_red.dim());
  Eigen::MatrixXd u_all(m, u_red.dim() + u0.cols());
  u_all << u_red.basis(), u0;
  comp.u_c = Subspace::from_spanning(m, u_all, tol);
  if (comp.u_c.dim() != p) {
    throw NumericError("completed tangency subspace has wrong dimension");
  }

  Eigen::MatrixXd blockers(m, v_red.dim() + comp.u_c.dim());
  blockers << v_red.basis(), comp.u_c.basis();
  const Subspace wv = j_orth_complement(j, blockers, tol);
  const Eigen::MatrixXd v0 =
      definite_directions(wv, false, q - v_red.dim());
  Eigen::MatrixXd v_all(m, v_red.dim() + v0.cols());
  v_all << v_red.basis(), v0;
  comp.v_c = Subspace::from_spanning(m, v_all, tol);
  if (comp.v_c.dim() != q) {
    throw NumericError("completed tangency subspace has wrong dimension");
  }
  return comp;
}

std::vector<Eigen::MatrixXd> direction_basis(const Eigen::MatrixXd& wp,
                                             const Eigen::MatrixXd& wq) {
  std::vector<Eigen::MatrixXd> dirs;
  dirs.reserve(wp.cols() * wq.cols());
  for (int i = 0; i < wp.cols(); ++i) {
    for (int j = 0; j < wq.cols(); ++j) {
      dirs.push_back(wp.col(i) * wq.col(j).transpose());
    }
  }
  return dirs;
}

}  // namespace

FeasibilityReport feasibility(const TangencyProblem& prob, double tol) {
  const int n = prob.a.order();
  if (prob.b.order() != n || prob.u.ambient() != n || prob.v.ambient() != n) {
    throw DimensionMismatch("tangency problem dimensions are inconsistent");
  }
  const CongruenceReduction red = congruence_reduce(prob.a, prob.b, tol);
  const int m = red.inertia.p + red.inertia.q;

  FeasibilityReport rep;
  if (m == 0) {
    // A = B: every constraint is vacuous.
    rep.pos_def_on_u = rep.neg_def_on_v = rep.cross_orthogonal = true;
    rep.feasible = true;
    return rep;
  }

  const SymMat j =
      SymMat::symmetrized(jpqr(red.inertia.p, red.inertia.q, 0));
  rep.pos_def_on_u =
      definite_on(j, project_reduced(prob.u, red, tol), DefiniteSign::Positive,
                  tol);
  rep.neg_def_on_v =
      definite_on(j, project_reduced(prob.v, red, tol), DefiniteSign::Negative,
                  tol);

  const Eigen::MatrixXd diff = prob.a.mat() - prob.b.mat();
  const double thr = scaled_tol(tol, spectral_norm(diff));
  double worst = 0.0;
  for (int i = 0; i < prob.u.dim(); ++i) {
    for (int k = 0; k < prob.v.dim(); ++k) {
      worst = std::max(worst, std::abs(prob.u.basis().col(i).dot(
                                  diff * prob.v.basis().col(k))));
    }
  }
  rep.cross_orthogonal = worst <= thr;
  rep.feasible =
      rep.pos_def_on_u && rep.neg_def_on_v && rep.cross_orthogonal;
  return rep;
}

Eigen::MatrixXd contraction_for_subspace(const Subspace& vsub, int p, int q,
                                         double tol) {
  if (vsub.ambient() != p + q) {
    throw DimensionMismatch("subspace must live in R^(p+q)");
  }
  if (vsub.dim() == 0) return Eigen::MatrixXd::Zero(p, q);
  const SymMat j = SymMat::symmetrized(jpqr(p, q, 0));
  if (!definite_on(j, vsub, DefiniteSign::Negative, tol)) {
    throw NotNegativeDefinite(
        "the indefinite form is not negative definite on the subspace");
  }
  const Eigen::MatrixXd pp = vsub.basis().topRows(p);
  const Eigen::MatrixXd pq = vsub.basis().bottomRows(q);
  // Negative definiteness makes pi_q injective on the subspace, so the Gram
  // matrix is PD and R = Pp Gram^{-1} Pq^T maps pi_q(x) to pi_p(x) and kills
  // pi_q(V)^perp.
  const Eigen::MatrixXd gram = pq.transpose() * pq;
  return pp * gram.llt().solve(pq.transpose());
}

SolutionFamily solve_single(const SymMat& a, const SymMat& b,
                            const Eigen::VectorXd& x, AgreeSide side,
                            double tol) {
  const int n = a.order();
  if (b.order() != n) throw DimensionMismatch("matrix orders differ");
  if (x.size() != n) throw DimensionMismatch("vector has wrong dimension");
  if (!x.allFinite() || x.norm() == 0.0) {
    throw InputError("constraint direction must be a finite nonzero vector");
  }
  const CongruenceReduction red = congruence_reduce(a, b, tol);
  const int p = red.inertia.p;
  const int q = red.inertia.q;

  const Eigen::MatrixXd diff = a.mat() - b.mat();
  const double dnorm = spectral_norm(diff);
  const double s_val = x.dot(diff * x);
  const bool vacuous =
      (diff * x).norm() <= scaled_tol(tol, dnorm) * x.norm();

  SolutionFamily fam;
  fam.p = p;
  fam.q = q;
  fam.r0 = Eigen::MatrixXd::Zero(p, q);
  if (vacuous) {
    // A x = B x: every maximal lower bound satisfies the constraint.
    fam.directions = direction_basis(Eigen::MatrixXd::Identity(p, p),
                                     Eigen::MatrixXd::Identity(q, q));
    return fam;
  }

  const double thr = scaled_tol(tol, dnorm) * x.squaredNorm();
  const Eigen::VectorXd xr = red.P.transpose() * x;
  const Eigen::VectorXd xp = xr.head(p);
  const Eigen::VectorXd xq = xr.segment(p, q);

  if (side == AgreeSide::WithA) {
    if (!(s_val < -thr)) {
      FeasibilityReport rep;
      rep.pos_def_on_u = true;
      rep.neg_def_on_v = false;
      rep.cross_orthogonal = true;
      throw Infeasible(
          rep, "infeasible: x^T (A-B) x = " + std::to_string(s_val) +
                   " must be strictly negative for C x = A x");
    }
    fam.r0 = -(xp * xq.transpose()) / xq.squaredNorm();
    const Subspace xq_span = Subspace::from_spanning(q, xq, tol);
    fam.directions = direction_basis(Eigen::MatrixXd::Identity(p, p),
                                     complement(xq_span, tol).basis());
  } else {
    if (!(s_val > thr)) {
      FeasibilityReport rep;
      rep.pos_def_on_u = false;
      rep.neg_def_on_v = true;
      rep.cross_orthogonal = true;
      throw Infeasible(
          rep, "infeasible: x^T (A-B) x = " + std::to_string(s_val) +
                   " must be strictly positive for C x = B x");
    }
    fam.r0 = -(xp * xq.transpose()) / xp.squaredNorm();
    const Subspace xp_span = Subspace::from_spanning(p, xp, tol);
    fam.directions = direction_basis(complement(xp_span, tol).basis(),
                                     Eigen::MatrixXd::Identity(q, q));
  }
  return fam;
}

SolutionFamily solve_constrained(const TangencyProblem& prob, double tol) {
  const FeasibilityReport rep = feasibility(prob, tol);
  if (!rep.feasible) {
    std::string why = "tangency problem infeasible:";
    if (!rep.pos_def_on_u) why += " A-B not positive definite on U;";
    if (!rep.neg_def_on_v) why += " A-B not negative definite on V;";
    if (!rep.cross_orthogonal) why += " U, V not (A-B)-orthogonal;";
    throw Infeasible(rep, why);
  }
  const CongruenceReduction red = congruence_reduce(prob.a, prob.b, tol);
  const int p = red.inertia.p;
  const int q = red.inertia.q;
  const int m = p + q;

  SolutionFamily fam;
  fam.p = p;
  fam.q = q;
  fam.r0 = Eigen::MatrixXd::Zero(p, q);
  if (m == 0) return fam;

  const Subspace u_red = project_reduced(prob.u, red, tol);
  const Subspace v_red = project_reduced(prob.v, red, tol);
  const Eigen::MatrixXd j = jpqr(p, q, 0);

  const Completion comp = complete_subspaces(u_red, v_red, j, tol);
  fam.r0 = -contraction_for_subspace(comp.v_c, p, q, tol);

  const Subspace up_span =
      Subspace::from_spanning(p, u_red.basis().topRows(p), tol);
  const Subspace vq_span =
      Subspace::from_spanning(q, v_red.basis().bottomRows(q), tol);
  fam.directions = direction_basis(complement(up_span, tol).basis(),
                                   complement(vq_span, tol).basis());
  return fam;
}

SymMat solution_at(const SolutionFamily& family, const Eigen::VectorXd& coeffs,
                   const SymMat& a, const SymMat& b,
                   const CongruenceReduction& red) {
  if (coeffs.size() != family.dim()) {
    throw DimensionMismatch("coefficient count does not match family dim");
  }
  Eigen::MatrixXd r = family.r0;
  for (int i = 0; i < family.dim(); ++i) {
    r += coeffs(i) * family.directions[static_cast<size_t>(i)];
  }
  if (spectral_norm(r) > 1.0 - 1e-9) {
    throw NotContractive(
        "family member leaves the open unit ball; boundary points are not "
        "solutions");
  }
  return mlb(a, b, red, MlbParam{family.p, family.q, psi(r)});
}

}  // namespace loewner

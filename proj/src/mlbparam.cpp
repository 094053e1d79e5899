#include "loewner/mlbparam.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace loewner {

namespace {

// Square root / inverse square root of matrices known to be >= I (the blocks
// I + M M^T); no tolerance handling needed.
Eigen::MatrixXd spd_power(const Eigen::MatrixXd& m, double exponent) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  Eigen::VectorXd ev = solver.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 0.0) {
      throw NumericError("matrix expected positive definite is not");
    }
    ev(i) = std::pow(ev(i), exponent);
  }
  return solver.eigenvectors() * ev.asDiagonal() *
         solver.eigenvectors().transpose();
}

Eigen::MatrixXd selector(int p, int q, int r, bool first_block) {
  Eigen::VectorXd d = Eigen::VectorXd::Zero(p + q + r);
  if (first_block) {
    d.segment(0, p).setOnes();
  } else {
    d.segment(p, q).setOnes();
  }
  return Eigen::MatrixXd(d.asDiagonal());
}

void check_pair(const SymMat& a, const SymMat& b,
                const CongruenceReduction& red, const MlbParam& param) {
  const int n = red.inertia.order();
  if (a.order() != n || b.order() != n) {
    throw DimensionMismatch("matrix orders do not match the reduction");
  }
  if (param.p != red.inertia.p || param.q != red.inertia.q ||
      param.m.rows() != param.p || param.m.cols() != param.q) {
    throw DimensionMismatch("parameter block sizes do not match the inertia");
  }
}

}  // namespace

double opq_defect(const OpqMatrix& s) {
  const Eigen::MatrixXd j = jpqr(s.p, s.q, 0);
  return spectral_norm(s.sigma * j * s.sigma.transpose() - j);
}

Eigen::MatrixXd phi(const Eigen::MatrixXd& x) {
  if (!x.allFinite()) throw InputError("phi: entries must be finite");
  if (x.rows() == 0 || x.cols() == 0) return x;
  const Eigen::MatrixXd g =
      Eigen::MatrixXd::Identity(x.rows(), x.rows()) + x * x.transpose();
  return spd_power(g, -0.5) * x;
}

Eigen::MatrixXd psi(const Eigen::MatrixXd& y) {
  if (!y.allFinite()) throw InputError("psi: entries must be finite");
  if (y.rows() == 0 || y.cols() == 0) return y;
  const double norm = spectral_norm(y);
  if (norm >= 1.0 - 1e-12) {
    throw NotContractive("psi requires spectral norm < 1, got " +
                         std::to_string(norm));
  }
  const Eigen::MatrixXd g =
      Eigen::MatrixXd::Identity(y.rows(), y.rows()) - y * y.transpose();
  return spd_power(g, -0.5) * y;
}

OpqMatrix build_S(const MlbParam& param) {
  const int p = param.p;
  const int q = param.q;
  if (param.m.rows() != p || param.m.cols() != q) {
    throw DimensionMismatch("parameter matrix has wrong block sizes");
  }
  OpqMatrix s{p, q, Eigen::MatrixXd(p + q, p + q)};
  const Eigen::MatrixXd gp =
      Eigen::MatrixXd::Identity(p, p) + param.m * param.m.transpose();
  const Eigen::MatrixXd gq =
      Eigen::MatrixXd::Identity(q, q) + param.m.transpose() * param.m;
  s.sigma.topLeftCorner(p, p) = spd_power(gp, 0.5);
  s.sigma.topRightCorner(p, q) = param.m;
  s.sigma.bottomLeftCorner(q, p) = param.m.transpose();
  s.sigma.bottomRightCorner(q, q) = spd_power(gq, 0.5);
  return s;
}

Eigen::MatrixXd build_S(const MlbParam& param, int r) {
  const OpqMatrix block = build_S(param);
  const int n = param.p + param.q + r;
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  s.topLeftCorner(param.p + param.q, param.p + param.q) = block.sigma;
  return s;
}

PolarFactors opq_polar(const OpqMatrix& sigma, double tol) {
  const int p = sigma.p;
  const int q = sigma.q;
  if (sigma.sigma.rows() != p + q || sigma.sigma.cols() != p + q) {
    throw DimensionMismatch("sigma has wrong size for its block structure");
  }
  const double defect = opq_defect(sigma);
  if (defect > 1e-9 * std::max(1.0, spectral_norm(sigma.sigma))) {
    throw NotInGroup("matrix is not in O(p,q): membership defect " +
                     std::to_string(defect));
  }
  const SymMat gram =
      SymMat::symmetrized(sigma.sigma * sigma.sigma.transpose());
  const Eigen::MatrixXd s_factor = psd_sqrt(gram, tol).mat();
  PolarFactors out;
  out.m = s_factor.topRightCorner(p, q);
  const Eigen::MatrixXd w = s_factor.llt().solve(sigma.sigma);
  out.u = w.topLeftCorner(p, p);
  out.v = w.bottomRightCorner(q, q);
  // Consistency of the recovered factors with the block model.
  const Eigen::MatrixXd gp =
      Eigen::MatrixXd::Identity(p, p) + out.m * out.m.transpose();
  const double block_defect =
      spectral_norm(s_factor.topLeftCorner(p, p) - spd_power(gp, 0.5));
  const Eigen::MatrixXd rebuilt =
      build_S(MlbParam{p, q, out.m}).sigma *
      (Eigen::MatrixXd(p + q, p + q) << out.u,
       Eigen::MatrixXd::Zero(p, q), Eigen::MatrixXd::Zero(q, p), out.v)
          .finished();
  const double reassembly = spectral_norm(rebuilt - sigma.sigma);
  const double scale = std::max(1.0, spectral_norm(sigma.sigma));
  if (block_defect > 1e-8 * scale || reassembly > 1e-8 * scale) {
    throw NumericError("polar factorization self-check failed");
  }
  return out;
}

SymMat mlb(const SymMat& a, const SymMat& b, const CongruenceReduction& red,
           const MlbParam& param) {
  check_pair(a, b, red, param);
  const Inertia in = red.inertia;
  const Eigen::MatrixXd s = build_S(param, in.r);
  const Eigen::MatrixXd e = selector(in.p, in.q, in.r, true);
  return SymMat::symmetrized(a.mat() -
                             red.P * s * e * s * red.P.transpose());
}

SymMat mub(const SymMat& a, const SymMat& b, const CongruenceReduction& red,
           const MlbParam& param) {
  check_pair(a, b, red, param);
  const Inertia in = red.inertia;
  const Eigen::MatrixXd s = build_S(param, in.r);
  const Eigen::MatrixXd e = selector(in.p, in.q, in.r, false);
  return SymMat::symmetrized(a.mat() +
                             red.P * s * e * s * red.P.transpose());
}

MlbParam recover_param(const SymMat& a, const SymMat& b,
                       const CongruenceReduction& red, const SymMat& c,
                       double tol) {
  const int n = red.inertia.order();
  if (a.order() != n || b.order() != n || c.order() != n) {
    throw DimensionMismatch("matrix orders do not match the reduction");
  }
  const Maximality verdict = check_maximal(a, b, c, tol);
  if (verdict != Maximality::Maximal) {
    throw NotMaximal(std::string("cannot recover a parameter: ") +
                     to_string(verdict));
  }
  const int p = red.inertia.p;
  const int q = red.inertia.q;
  const Eigen::MatrixXd d =
      red.Pinv * (a.mat() - c.mat()) * red.Pinv.transpose();
  MlbParam param;
  param.p = p;
  param.q = q;
  if (p == 0 || q == 0) {
    param.m = Eigen::MatrixXd::Zero(p, q);
    return param;
  }
  const Eigen::MatrixXd d11 = 0.5 * (d.topLeftCorner(p, p) +
                                     d.topLeftCorner(p, p).transpose());
  param.m = spd_power(d11, -0.5) * d.block(0, p, p, q);
  return param;
}

const char* to_string(Maximality m) {
  switch (m) {
    case Maximality::NotLowerBound:
      return "NotLowerBound";
    case Maximality::LowerBoundNotMaximal:
      return "LowerBoundNotMaximal";
    case Maximality::Maximal:
      return "Maximal";
  }
  return "?";
}

Maximality check_maximal(const SymMat& a, const SymMat& b, const SymMat& c,
                         double tol) {
  const int n = a.order();
  if (b.order() != n || c.order() != n) {
    throw DimensionMismatch("matrix orders differ");
  }
  if (!loewner_leq(c, a, tol) || !loewner_leq(c, b, tol)) {
    return Maximality::NotLowerBound;
  }
  const Inertia in = inertia(a - b, tol);
  const Subspace ker_a = kernel_basis(a - c, tol);
  const Subspace ker_b = kernel_basis(b - c, tol);
  const bool kernel_sum_full = subspace_sum_dim(ker_a, ker_b, tol) == n;
  const bool ranks_match =
      (n - ker_a.dim() == in.p) && (n - ker_b.dim() == in.q);
  if (kernel_sum_full != ranks_match) {
    throw ToleranceInconsistency(
        "maximality criteria disagree (kernel sum vs rank counts); "
        "input is borderline at this tolerance");
  }
  return kernel_sum_full ? Maximality::Maximal
                         : Maximality::LowerBoundNotMaximal;
}

}  // namespace loewner

#include "loewner/psdshort.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "loewner/mlbparam.hpp"

namespace loewner {

namespace {

void require_psd(const SymMat& m, const char* name, double tol) {
  if (!loewner_leq(SymMat::zero(m.order()), m, tol)) {
    throw NotPositiveSemidefinite(std::string(name) +
                                  " must be positive semidefinite");
  }
}

// Pseudo-inverse of a PSD block at the rank tolerance.
Eigen::MatrixXd psd_pinv(const Eigen::MatrixXd& m, double tol) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  Eigen::VectorXd ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < ev.size(); ++i) {
    ev(i) = ev(i) > thr ? 1.0 / ev(i) : 0.0;
  }
  return solver.eigenvectors() * ev.asDiagonal() *
         solver.eigenvectors().transpose();
}

Eigen::MatrixXd spd_sqrt_pd(const Eigen::MatrixXd& m, double exponent) {
  if (m.rows() == 0) return m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      0.5 * (m + m.transpose()));
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  Eigen::VectorXd ev = solver.eigenvalues();
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) <= 0.0) {
      throw NumericError("block expected positive definite is not");
    }
    ev(i) = std::pow(ev(i), exponent);
  }
  return solver.eigenvectors() * ev.asDiagonal() *
         solver.eigenvectors().transpose();
}

// Deflation of Ker(A-B): congruence by the canonical P (making the
// difference J_{p,q} ⊕ 0_r), then both forms are shorted onto the leading
// nonsingular block. Their cross and kernel blocks coincide there, so the
// deflated difference is J_{p,q} and C is PSD iff its deflated image is.
struct Deflation {
  CongruenceReduction red;
  int m = 0;  // p + q
  bool trivial = true;
  Eigen::MatrixXd ad, bd;
  Eigen::MatrixXd a_prime;  // kept for the lift when r > 0
};

Deflation deflate(const SymMat& a, const SymMat& b, double tol) {
  Deflation d;
  d.red = congruence_reduce(a, b, tol);
  d.m = d.red.inertia.p + d.red.inertia.q;
  d.trivial = d.red.inertia.r == 0;
  if (d.trivial) {
    d.ad = a.mat();
    d.bd = b.mat();
    return d;
  }
  const int m = d.m;
  const int r0 = d.red.inertia.r;
  d.a_prime = d.red.Pinv * a.mat() * d.red.Pinv.transpose();
  const Eigen::MatrixXd b_prime =
      d.red.Pinv * b.mat() * d.red.Pinv.transpose();
  auto shorten = [&](const Eigen::MatrixXd& f) {
    const Eigen::MatrixXd f11 = f.topLeftCorner(m, m);
    const Eigen::MatrixXd f12 = f.block(0, m, m, r0);
    const Eigen::MatrixXd f22 = f.block(m, m, r0, r0);
    const Eigen::MatrixXd res = f11 - f12 * psd_pinv(f22, tol) * f12.transpose();
    return Eigen::MatrixXd(0.5 * (res + res.transpose()));
  };
  d.ad = shorten(d.a_prime);
  d.bd = shorten(b_prime);
  return d;
}

SymMat lift(const Deflation& d, const SymMat& a, const Eigen::MatrixXd& cd) {
  if (d.trivial) return SymMat::symmetrized(cd);
  const int n = a.order();
  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(n, n);
  x.topLeftCorner(d.m, d.m) = d.ad - cd;
  return SymMat::symmetrized(a.mat() - d.red.P * x * d.red.P.transpose());
}

}  // namespace

SymMat generalized_short(const SymMat& x, const SymMat& y, double tol) {
  const int n = x.order();
  if (y.order() != n) throw DimensionMismatch("matrix orders differ");
  require_psd(x, "X", tol);
  require_psd(y, "Y", tol);
  const Subspace ker_y = kernel_basis(y, tol);
  const Subspace im_y = complement(ker_y, tol);
  const int k = im_y.dim();
  if (k == n) return x;
  if (k == 0) return SymMat::zero(n);
  Eigen::MatrixXd frame(n, n);
  frame << im_y.basis(), ker_y.basis();
  const Eigen::MatrixXd xt = frame.transpose() * x.mat() * frame;
  const Eigen::MatrixXd x11 = xt.topLeftCorner(k, k);
  const Eigen::MatrixXd x12 = xt.block(0, k, k, n - k);
  const Eigen::MatrixXd x22 = xt.block(k, k, n - k, n - k);
  Eigen::MatrixXd mid = x11 - x12 * psd_pinv(x22, tol) * x12.transpose();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  out.topLeftCorner(k, k) = 0.5 * (mid + mid.transpose());
  return SymMat::symmetrized(frame * out * frame.transpose());
}

PsdReduction psd_reduce(const SymMat& a, const SymMat& b, double tol) {
  const int n = a.order();
  if (b.order() != n) throw DimensionMismatch("matrix orders differ");
  require_psd(a, "A", tol);
  require_psd(b, "B", tol);

  const Subspace ker_a = kernel_basis(a, tol);
  const Subspace ker_b = kernel_basis(b, tol);
  if (subspace_intersection(ker_a, ker_b, tol).dim() > 0) {
    throw DegenerateIntersection(
        "Ker A ∩ Ker B is nontrivial; the pair is not deflated");
  }
  if (inertia(a - b, tol).r > 0) {
    throw InputError("A-B is singular; deflate Ker(A-B) first");
  }

  const int adim = ker_b.dim();
  const int bdim = ker_a.dim();
  const int mid = n - adim - bdim;
  Eigen::MatrixXd kernels(n, adim + bdim);
  kernels << ker_b.basis(), ker_a.basis();
  const Subspace rab =
      complement(Subspace::from_spanning(n, kernels, tol), tol);
  if (rab.dim() != mid) {
    throw NumericError("image intersection has unexpected dimension");
  }

  Eigen::MatrixXd f(n, n);
  f << ker_b.basis(), rab.basis(), ker_a.basis();
  if (Eigen::FullPivLU<Eigen::MatrixXd>(f).rank() != n) {
    throw NumericError("Ker B ⊕ (Im A ∩ Im B) ⊕ Ker A frame is singular");
  }

  const Eigen::MatrixXd a1 = f.transpose() * a.mat() * f;
  const Eigen::MatrixXd b1 = f.transpose() * b.mat() * f;

  // Shear killing A's coupling of Ker B with the middle, then B's coupling
  // of Ker A with the middle; neither touches the other form.
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  if (adim > 0 && mid > 0) {
    const Eigen::MatrixXd a11 = a1.topLeftCorner(adim, adim);
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (a11 + a11.transpose()));
    if (llt.info() != Eigen::Success) {
      throw NumericError("A is not positive definite on Ker B");
    }
    g.block(0, adim, adim, mid) = -llt.solve(a1.block(0, adim, adim, mid));
  }
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n);
  if (bdim > 0 && mid > 0) {
    const Eigen::MatrixXd b33 = b1.bottomRightCorner(bdim, bdim);
    Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (b33 + b33.transpose()));
    if (llt.info() != Eigen::Success) {
      throw NumericError("B is not positive definite on Ker A");
    }
    h.block(adim + mid, adim, bdim, mid) =
        -llt.solve(b1.block(adim, adim + mid, mid, bdim).transpose());
  }
  const Eigen::MatrixXd t_pre = f * g * h;
  const Eigen::MatrixXd a3 = t_pre.transpose() * a.mat() * t_pre;
  const Eigen::MatrixXd b3 = t_pre.transpose() * b.mat() * t_pre;

  PsdReduction out;
  out.a = adim;
  out.b = bdim;

  Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
  if (adim > 0) {
    v.topLeftCorner(adim, adim) =
        spd_sqrt_pd(a3.topLeftCorner(adim, adim), -0.5);
  }
  if (bdim > 0) {
    v.bottomRightCorner(bdim, bdim) =
        spd_sqrt_pd(b3.bottomRightCorner(bdim, bdim), -0.5);
  }
  if (mid > 0) {
    const Eigen::MatrixXd sa0 = a3.block(adim, adim, mid, mid);
    const Eigen::MatrixXd sb0 = b3.block(adim, adim, mid, mid);
    const CongruenceReduction red_mid = congruence_reduce(
        SymMat::symmetrized(sa0), SymMat::symmetrized(sb0), tol);
    if (red_mid.inertia.r > 0) {
      throw NumericError("middle difference is singular after reduction");
    }
    const Eigen::MatrixXd v2 = red_mid.Pinv.transpose();
    v.block(adim, adim, mid, mid) = v2;
    out.s_a = v2.transpose() * sa0 * v2;
    out.s_a = 0.5 * (out.s_a + out.s_a.transpose()).eval();
    out.s_b = v2.transpose() * sb0 * v2;
    out.s_b = 0.5 * (out.s_b + out.s_b.transpose()).eval();
    out.inertia_mid = red_mid.inertia;
  } else {
    out.s_a.resize(0, 0);
    out.s_b.resize(0, 0);
    out.inertia_mid = Inertia{0, 0, 0};
  }
  out.t = t_pre * v;
  out.tinv = out.t.inverse();

  // Self-check of the frame invariants.
  Eigen::MatrixXd a_model = Eigen::MatrixXd::Zero(n, n);
  a_model.topLeftCorner(adim, adim).setIdentity();
  a_model.block(adim, adim, mid, mid) = out.s_a;
  Eigen::MatrixXd b_model = Eigen::MatrixXd::Zero(n, n);
  b_model.bottomRightCorner(bdim, bdim).setIdentity();
  b_model.block(adim, adim, mid, mid) = out.s_b;
  const double res_a =
      spectral_norm(out.t.transpose() * a.mat() * out.t - a_model);
  const double res_b =
      spectral_norm(out.t.transpose() * b.mat() * out.t - b_model);
  if (res_a > 1e-8 * std::max(1.0, a.spec_norm()) ||
      res_b > 1e-8 * std::max(1.0, b.spec_norm())) {
    throw NumericError("three-block reduction failed its residual check");
  }
  return out;
}

int rank_bound(const SymMat& a, const SymMat& b, double tol) {
  require_psd(a, "A", tol);
  require_psd(b, "B", tol);
  const Deflation defl = deflate(a, b, tol);
  if (defl.m == 0) return defl.red.inertia.r;
  const PsdReduction pr = psd_reduce(SymMat::symmetrized(defl.ad),
                                     SymMat::symmetrized(defl.bd), tol);
  return pr.inertia_mid.p + pr.inertia_mid.q + defl.red.inertia.r;
}

SymMat psd_mlb(const SymMat& a, const SymMat& b, const Eigen::MatrixXd& z,
               double tol) {
  const int n = a.order();
  if (b.order() != n) throw DimensionMismatch("matrix orders differ");
  require_psd(a, "A", tol);
  require_psd(b, "B", tol);
  const Deflation defl = deflate(a, b, tol);
  if (defl.m == 0) {
    if (z.size() != 0) {
      throw DimensionMismatch("parameter must be empty when A = B");
    }
    return a;
  }
  const PsdReduction pr = psd_reduce(SymMat::symmetrized(defl.ad),
                                     SymMat::symmetrized(defl.bd), tol);
  const int pp = pr.inertia_mid.p;
  const int qq = pr.inertia_mid.q;
  if (z.rows() != pp || z.cols() != qq) {
    throw DimensionMismatch("parameter must be " + std::to_string(pp) + "x" +
                            std::to_string(qq));
  }
  const int mid = pp + qq;
  const Eigen::MatrixXd w =
      Eigen::MatrixXd::Identity(pp, pp) + z * z.transpose();
  const Eigen::MatrixXd wh = spd_sqrt_pd(w, 0.5);
  Eigen::MatrixXd drop(mid, mid);
  drop.topLeftCorner(pp, pp) = w;
  drop.topRightCorner(pp, qq) = wh * z;
  drop.bottomLeftCorner(qq, pp) = (wh * z).transpose();
  drop.bottomRightCorner(qq, qq) = z.transpose() * z;
  Eigen::MatrixXd s_c = pr.s_a - drop;
  s_c = 0.5 * (s_c + s_c.transpose()).eval();

  if (mid > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s_c);
    if (solver.info() != Eigen::Success) {
      throw EigenFailure("eigendecomposition did not converge");
    }
    const double thr =
        scaled_tol(tol, solver.eigenvalues().cwiseAbs().maxCoeff());
    if (solver.eigenvalues().minCoeff() < -thr) {
      throw NotPsdResult(
          "parameter is outside the PSD-admissible region (middle block has "
          "eigenvalue " +
          std::to_string(solver.eigenvalues().minCoeff()) + ")");
    }
  }

  Eigen::MatrixXd mid_embed = Eigen::MatrixXd::Zero(defl.m, defl.m);
  mid_embed.block(pr.a, pr.a, mid, mid) = s_c;
  const Eigen::MatrixXd cd =
      pr.tinv.transpose() * mid_embed * pr.tinv;
  return lift(defl, a, cd);
}

bool gudder_unique(const SymMat& a, const SymMat& b, double tol) {
  require_psd(a, "A", tol);
  require_psd(b, "B", tol);
  const SymMat short_ba = generalized_short(a, b, tol);  // [B]A
  const SymMat short_ab = generalized_short(b, a, tol);  // [A]B
  const bool comparable = loewner_leq(short_ba, short_ab, tol) ||
                          loewner_leq(short_ab, short_ba, tol);
  const Deflation defl = deflate(a, b, tol);
  bool zero_product = true;
  if (defl.m > 0) {
    const PsdReduction pr = psd_reduce(SymMat::symmetrized(defl.ad),
                                       SymMat::symmetrized(defl.bd), tol);
    zero_product = pr.inertia_mid.p * pr.inertia_mid.q == 0;
  }
  if (comparable != zero_product) {
    throw ToleranceInconsistency(
        "uniqueness tests disagree (short comparability vs p'q' = 0)");
  }
  return zero_product;
}

bool verify_psd_mlb(const SymMat& a, const SymMat& b, const SymMat& c,
                    double tol) {
  const int n = a.order();
  if (b.order() != n || c.order() != n) {
    throw DimensionMismatch("matrix orders differ");
  }
  try {
    if (!loewner_leq(SymMat::zero(n), c, tol)) return false;
    if (!loewner_leq(c, a, tol) || !loewner_leq(c, b, tol)) return false;
    const Inertia ic = inertia(c, tol);
    if (ic.p + ic.q != rank_bound(a, b, tol)) return false;

    const Deflation defl = deflate(a, b, tol);
    if (defl.m == 0) {
      return check_maximal(a, b, c, tol) == Maximality::Maximal;
    }
    Eigen::MatrixXd x;
    if (defl.trivial) {
      x = a.mat() - c.mat();
    } else {
      x = defl.red.Pinv * (a.mat() - c.mat()) *
          defl.red.Pinv.transpose();
      const int r0 = defl.red.inertia.r;
      const double off = std::max(
          spectral_norm(x.block(0, defl.m, defl.m, r0)),
          spectral_norm(x.block(defl.m, defl.m, r0, r0)));
      if (off > 1e-7 * std::max(1.0, spectral_norm(x))) return false;
    }
    const Eigen::MatrixXd cd = defl.ad - x.topLeftCorner(defl.m, defl.m);

    const PsdReduction pr = psd_reduce(SymMat::symmetrized(defl.ad),
                                       SymMat::symmetrized(defl.bd), tol);
    const int mid = pr.inertia_mid.p + pr.inertia_mid.q;
    const Eigen::MatrixXd y = pr.t.transpose() * cd * pr.t;
    const double yscale = std::max(1.0, spectral_norm(y));
    double corners = spectral_norm(y.topLeftCorner(pr.a, pr.a));
    corners = std::max(corners,
                       spectral_norm(y.bottomRightCorner(pr.b, pr.b)));
    corners = std::max(corners, spectral_norm(y.block(0, pr.a, pr.a, mid)));
    corners = std::max(
        corners, spectral_norm(y.block(0, pr.a + mid, pr.a, pr.b)));
    corners = std::max(
        corners, spectral_norm(y.block(pr.a, pr.a + mid, mid, pr.b)));
    if (corners > 1e-7 * yscale) return false;
    if (mid == 0) return true;
    const SymMat s_c = SymMat::symmetrized(y.block(pr.a, pr.a, mid, mid));
    return check_maximal(SymMat::symmetrized(pr.s_a),
                         SymMat::symmetrized(pr.s_b), s_c,
                         tol) == Maximality::Maximal;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace loewner

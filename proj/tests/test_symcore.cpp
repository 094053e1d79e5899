#include <Eigen/Dense>

#include "doctest.h"
#include "loewner/symmat.hpp"
#include "support.hpp"

using namespace loewner;
using namespace testsupport;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

}  // namespace

TEST_SUITE("symcore") {

TEST_CASE("constructor symmetrizes and rejects asymmetric input") {
  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0 + 1e-14, 2.0, 3.0;
  const SymMat s(m);
  CHECK(s(0, 1) == s(1, 0));

  m(0, 1) = 2.1;
  CHECK_THROWS_AS(SymMat{m}, InputError);

  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, std::numeric_limits<double>::infinity(), 1.0, 0.0;
  CHECK_THROWS_AS(SymMat{bad}, InputError);
}

TEST_CASE("inertia on diagonal matrices") {
  CHECK(inertia(SymMat::diagonal(vec2(1, -1))) == Inertia{1, 1, 0});
  CHECK(inertia(SymMat::zero(3)) == Inertia{0, 0, 3});
  CHECK(inertia(SymMat::diagonal(vec3(4, -9, 0))) == Inertia{1, 1, 1});
}

TEST_CASE("inertia is a congruence invariant at n <= 6") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(1, 6);
    const int p = uniform_int(0, n);
    const int q = uniform_int(0, n - p);
    const SymMat a = random_sym_with_inertia(p, q, n - p - q);
    Eigen::MatrixXd g = random_matrix(n, n);
    while (rank_oracle(g) < n) g = random_matrix(n, n);
    const SymMat congruent = sym_from(g * a.mat() * g.transpose());
    const Inertia in = inertia(congruent);
    CHECK(in == Inertia{p, q, n - p - q});
    CHECK(in.p + in.q + in.r == n);
  }
}

TEST_CASE("congruence_reduce canonical frames") {
  SUBCASE("incomparable diagonal pair reduces with P = I") {
    const SymMat a = SymMat::diagonal(vec2(2, 1));
    const SymMat b = SymMat::diagonal(vec2(1, 2));
    const CongruenceReduction red = congruence_reduce(a, b);
    CHECK(red.inertia == Inertia{1, 1, 0});
    CHECK((red.P - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-12);
  }
  SUBCASE("equal matrices give the null frame") {
    const SymMat a = random_sym(4);
    const CongruenceReduction red = congruence_reduce(a, a);
    CHECK(red.inertia == Inertia{0, 0, 4});
    CHECK(spec_norm(red.P * red.Pinv - Eigen::MatrixXd::Identity(4, 4)) <
          1e-12);
  }
  SUBCASE("diag(4,-9) scales eigenvector columns") {
    const SymMat a = SymMat::diagonal(vec2(4, -9));
    const SymMat b = SymMat::zero(2);
    const CongruenceReduction red = congruence_reduce(a, b);
    Eigen::MatrixXd expect(2, 2);
    expect << 2, 0, 0, 3;
    CHECK(spec_norm(red.P - expect) < 1e-12);
    CHECK(spec_norm(red.P * jpqr(1, 1, 0) * red.P.transpose() - a.mat()) <
          1e-12);
  }
}

TEST_CASE("congruence_reduce residual on random pairs") {
  for (int trial = 0; trial < 200; ++trial) {
    const int n = uniform_int(1, 6);
    const int p = uniform_int(0, n);
    const int q = uniform_int(0, n - p);
    const auto [a, b] = random_pair(p, q, n - p - q);
    const CongruenceReduction red = congruence_reduce(a, b);
    const Eigen::MatrixXd d = a.mat() - b.mat();
    const double resid = spec_norm(
        red.P * jpqr(red.inertia.p, red.inertia.q, red.inertia.r) *
            red.P.transpose() -
        d);
    CHECK(resid <= 1e-9 * std::max(1.0, spec_norm(d)));
    CHECK(spec_norm(red.P * red.Pinv - Eigen::MatrixXd::Identity(n, n)) <=
          1e-9);
    CHECK(red.inertia == Inertia{p, q, n - p - q});
  }
}

TEST_CASE("psd_sqrt") {
  CHECK(spec_norm(psd_sqrt(SymMat::identity(3)).mat() -
                  Eigen::MatrixXd::Identity(3, 3)) < 1e-14);
  CHECK(spec_norm(psd_sqrt(SymMat::diagonal(vec2(4, 9))).mat() -
                  Eigen::MatrixXd(vec2(2, 3).asDiagonal())) < 1e-14);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = uniform_int(1, 6);
    const SymMat m = random_psd_rank(n, uniform_int(0, n));
    const SymMat root = psd_sqrt(m);
    CHECK(min_eig(root) >= -1e-12);
    CHECK(spec_norm(root.mat() * root.mat() - m.mat()) <=
          1e-9 * std::max(1.0, spec_norm(m.mat())));
  }
  CHECK_THROWS_AS(psd_sqrt(SymMat::diagonal(vec2(1, -1))),
                  NotPositiveSemidefinite);
}

TEST_CASE("kernel_basis") {
  SUBCASE("diagonal kernel") {
    const Subspace k = kernel_basis(SymMat::diagonal(vec2(1, 0)));
    REQUIRE(k.dim() == 1);
    CHECK(std::abs(k.basis()(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(k.basis()(1, 0) > 0);  // sign-normalized
  }
  SUBCASE("invertible matrix has no kernel") {
    CHECK(kernel_basis(random_spd(4)).dim() == 0);
  }
  SUBCASE("kernel is orthogonal to the row space on random matrices") {
    for (int trial = 0; trial < 50; ++trial) {
      const int n = uniform_int(1, 6);
      const SymMat m = random_psd_rank(n, uniform_int(0, n));
      const Subspace k = kernel_basis(m);
      CHECK(n - k.dim() == rank_oracle(m.mat()));
      if (k.dim() > 0) {
        CHECK(spec_norm(m.mat() * k.basis()) <=
              1e-8 * std::max(1.0, spec_norm(m.mat())));
      }
      // orthonormality
      CHECK(spec_norm(k.basis().transpose() * k.basis() -
                      Eigen::MatrixXd::Identity(k.dim(), k.dim())) <= 1e-10);
    }
  }
}

TEST_CASE("loewner_leq") {
  CHECK(loewner_leq(SymMat::identity(2), sym_from(2 * Eigen::MatrixXd::Identity(2, 2))));
  const SymMat a = random_sym(4);
  CHECK(loewner_leq(a, a));
  const SymMat d21 = SymMat::diagonal(vec2(2, 1));
  const SymMat d12 = SymMat::diagonal(vec2(1, 2));
  CHECK_FALSE(loewner_leq(d21, d12));
  CHECK_FALSE(loewner_leq(d12, d21));
}

TEST_CASE("loewner antisymmetry at tolerance scale") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = uniform_int(1, 5);
    const SymMat a = random_sym(n);
    const SymMat b = a + SymMat::symmetrized(1e-13 * random_sym(n).mat());
    if (loewner_leq(a, b) && loewner_leq(b, a)) {
      CHECK(spec_norm(a.mat() - b.mat()) <=
            2e-10 * std::max(1.0, spec_norm(a.mat())));
    }
  }
}

TEST_CASE("definite_on") {
  const SymMat j21 = SymMat::symmetrized(jpqr(2, 1, 0));
  const Subspace e1 = Subspace::from_spanning(3, vec3(1, 0, 0));
  const Subspace e3 = Subspace::from_spanning(3, vec3(0, 0, 1));
  CHECK(definite_on(j21, e1, DefiniteSign::Positive));
  CHECK_FALSE(definite_on(j21, e3, DefiniteSign::Positive));
  const Subspace mixed = Subspace::from_spanning(3, vec3(0.5, 0, 1));
  CHECK(definite_on(j21, mixed, DefiniteSign::Negative));
  CHECK(definite_on(j21, Subspace::zero(3), DefiniteSign::Positive));
  CHECK(definite_on(j21, Subspace::zero(3), DefiniteSign::Negative));
}

TEST_CASE("kernel intersection identity for kernel-sum-spanning pairs") {
  // For symmetric P', Q' with Ker P' + Ker Q' = R^n, the intersection of the
  // kernels equals Ker(P' - Q').
  for (int trial = 0; trial < 40; ++trial) {
    const int n = uniform_int(2, 6);
    const int k1 = uniform_int(1, n);
    const int k2 = std::max(n - k1, uniform_int(1, n));
    // random subspaces with dim k1 + dim k2 >= n and generic position
    const Eigen::MatrixXd u = random_orthogonal(n);
    const Eigen::MatrixXd w = random_orthogonal(n);
    const Eigen::MatrixXd kp = u.leftCols(k1);
    const Eigen::MatrixXd kq = w.leftCols(k2);
    if (rank_oracle((Eigen::MatrixXd(n, k1 + k2) << kp, kq).finished()) < n) {
      continue;  // not spanning; skip this draw
    }
    // symmetric matrices with exactly those kernels
    auto with_kernel = [n](const Eigen::MatrixXd& ker) {
      const int k = static_cast<int>(ker.cols());
      Eigen::MatrixXd full(n, n);
      Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
      const Eigen::MatrixXd q = qr.householderQ();
      const Eigen::MatrixXd range = q.rightCols(n - k);
      Eigen::VectorXd d(n - k);
      for (int i = 0; i < n - k; ++i) d(i) = uniform(0.5, 2.0);
      return sym_from(range * d.asDiagonal() * range.transpose());
    };
    const SymMat pp = with_kernel(kp);
    const SymMat qq = with_kernel(kq);
    const Subspace lhs =
        subspace_intersection(kernel_basis(pp), kernel_basis(qq));
    const Subspace rhs = kernel_basis(pp - qq);
    CHECK(lhs.dim() == rhs.dim());
    CHECK(principal_angle_sin(lhs, rhs) <= 1e-7);
  }
}

TEST_CASE("subspace helpers") {
  const Subspace s = Subspace::from_spanning(3, vec3(1, 1, 0));
  const Subspace c = complement(s);
  CHECK(c.dim() == 2);
  CHECK(spec_norm(c.basis().transpose() * s.basis()) < 1e-12);
  CHECK(subspace_sum_dim(s, c) == 3);
  CHECK(subspace_intersection(s, c).dim() == 0);
}

}  // TEST_SUITE

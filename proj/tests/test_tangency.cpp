#include <Eigen/Dense>
#include <cmath>

#include "doctest.h"
#include "loewner/tangency.hpp"
#include "support.hpp"

using namespace loewner;
using namespace testsupport;

namespace {

Eigen::VectorXd vec3(double a, double b, double c) {
  Eigen::VectorXd v(3);
  v << a, b, c;
  return v;
}

// A - B = J_{2,1} with B = 0; the canonical frame is the identity.
struct J21Pair {
  SymMat a = SymMat::symmetrized(jpqr(2, 1, 0));
  SymMat b = SymMat::zero(3);
};

struct Lorentz3 {
  SymMat a = SymMat::diagonal(vec3(2, 2, 1));
  SymMat b = SymMat::diagonal(vec3(1, 1, 2));
};

// Constraint subspaces drawn from the kernels of an actual maximal lower
// bound, so the problem is feasible by construction.
struct FeasibleProblem {
  SymMat a;
  SymMat b;
  Subspace u;
  Subspace v;
  int p, q, ku, kv;
};

FeasibleProblem random_feasible(int n, int p, int q) {
  const auto [a, b] = random_pair(p, q, n - p - q);
  const CongruenceReduction red = congruence_reduce(a, b);
  const SymMat c = mlb(a, b, red, MlbParam{p, q, random_matrix(p, q, 1.2)});
  const Subspace ker_b = kernel_basis(b - c);
  const Subspace ker_a = kernel_basis(a - c);
  FeasibleProblem prob{a, b, Subspace::zero(n), Subspace::zero(n),
                       p, q, 0, 0};
  prob.ku = uniform_int(0, p);
  prob.kv = uniform_int(0, q);
  if (prob.ku > 0) {
    prob.u = Subspace::from_spanning(
        n, ker_b.basis() * random_matrix(ker_b.dim(), prob.ku));
  }
  if (prob.kv > 0) {
    prob.v = Subspace::from_spanning(
        n, ker_a.basis() * random_matrix(ker_a.dim(), prob.kv));
  }
  // random draws are full rank almost surely; regenerate defensively
  if (prob.u.dim() != prob.ku || prob.v.dim() != prob.kv) {
    return random_feasible(n, p, q);
  }
  return prob;
}

// Independent count: dim of the affine family equals p*q minus the rank of
// the linear system the constraints impose on the direction matrices.
int family_dim_oracle(const Subspace& u, const Subspace& v, const SymMat& a,
                      const SymMat& b) {
  const CongruenceReduction red = congruence_reduce(a, b);
  const int p = red.inertia.p;
  const int q = red.inertia.q;
  const int m = p + q;
  auto reduced = [&](const Subspace& s) {
    if (s.dim() == 0) return Eigen::MatrixXd(m, 0);
    return Eigen::MatrixXd((red.P.transpose() * s.basis()).topRows(m));
  };
  const Eigen::MatrixXd ured = reduced(u);
  const Eigen::MatrixXd vred = reduced(v);
  const int rows =
      static_cast<int>(ured.cols()) * q + static_cast<int>(vred.cols()) * p;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(rows, p * q);
  int row = 0;
  for (int col = 0; col < ured.cols(); ++col) {
    const Eigen::VectorXd up = ured.col(col).head(p);
    for (int j = 0; j < q; ++j, ++row) {
      for (int i = 0; i < p; ++i) sys(row, j * p + i) = up(i);
    }
  }
  for (int col = 0; col < vred.cols(); ++col) {
    const Eigen::VectorXd vq = vred.col(col).tail(q);
    for (int i = 0; i < p; ++i, ++row) {
      for (int j = 0; j < q; ++j) sys(row, j * p + i) = vq(j);
    }
  }
  return p * q - rank_oracle(sys);
}

}  // namespace

TEST_SUITE("tangency") {

TEST_CASE("feasibility conditions on the canonical J_{2,1} pair") {
  J21Pair pair;
  const Subspace e1 = Subspace::from_spanning(3, vec3(1, 0, 0));
  const Subspace e3 = Subspace::from_spanning(3, vec3(0, 0, 1));
  SUBCASE("positive direction with negative direction, J-orthogonal") {
    const FeasibilityReport rep =
        feasibility(TangencyProblem{pair.a, pair.b, e1, e3});
    CHECK(rep.feasible);
    CHECK(rep.pos_def_on_u);
    CHECK(rep.neg_def_on_v);
    CHECK(rep.cross_orthogonal);
  }
  SUBCASE("negative direction on the U side fails") {
    const FeasibilityReport rep = feasibility(
        TangencyProblem{pair.a, pair.b, e3, Subspace::zero(3)});
    CHECK_FALSE(rep.feasible);
    CHECK_FALSE(rep.pos_def_on_u);
  }
  SUBCASE("cross orthogonality fails") {
    const Subspace skew = Subspace::from_spanning(3, vec3(1, 0, 2));
    const FeasibilityReport rep =
        feasibility(TangencyProblem{pair.a, pair.b, e1, skew});
    CHECK_FALSE(rep.feasible);
    CHECK(rep.pos_def_on_u);
    CHECK(rep.neg_def_on_v);
    CHECK_FALSE(rep.cross_orthogonal);
  }
}

TEST_CASE("contraction_for_subspace") {
  SUBCASE("pure-negative direction maps to zero") {
    const Subspace vsub = Subspace::from_spanning(3, vec3(0, 0, 1));
    CHECK(contraction_for_subspace(vsub, 2, 1).norm() == 0.0);
  }
  SUBCASE("worked 2x1 example") {
    const Subspace vsub = Subspace::from_spanning(3, vec3(0.5, 0, 1));
    const Eigen::MatrixXd r = contraction_for_subspace(vsub, 2, 1);
    CHECK(std::abs(r(0, 0) - 0.5) < 1e-12);
    CHECK(std::abs(r(1, 0)) < 1e-12);
  }
  SUBCASE("random negative-definite subspaces give strict contractions") {
    for (int trial = 0; trial < 40; ++trial) {
      const int p = uniform_int(1, 4);
      const int q = uniform_int(1, 4);
      const int k = uniform_int(1, q);
      Eigen::MatrixXd y = random_matrix(p, q);
      if (spec_norm(y) >= 1.0) y *= 0.9 / spec_norm(y);
      Eigen::MatrixXd graph(p + q, k);
      const Eigen::MatrixXd z = random_matrix(q, k);
      graph.topRows(p) = y * z;
      graph.bottomRows(q) = z;
      const Subspace vsub = Subspace::from_spanning(p + q, graph);
      if (vsub.dim() != k) continue;
      const Eigen::MatrixXd r = contraction_for_subspace(vsub, p, q);
      CHECK(spec_norm(r) < 1.0);
      CHECK(spec_norm(r * vsub.basis().bottomRows(q) -
                      vsub.basis().topRows(p)) <= 1e-9);
    }
  }
  SUBCASE("rejects positive directions") {
    const Subspace bad = Subspace::from_spanning(3, vec3(1, 0, 0));
    CHECK_THROWS_AS(contraction_for_subspace(bad, 2, 1),
                    NotNegativeDefinite);
  }
}

TEST_CASE("solve_single reproduces the Lorentz-pair cases") {
  Lorentz3 pair;
  SUBCASE("agree with A at (1,0,2): unique point") {
    const SolutionFamily fam =
        solve_single(pair.a, pair.b, vec3(1, 0, 2), AgreeSide::WithA);
    CHECK(fam.dim() == 0);
    REQUIRE(fam.r0.rows() == 2);
    CHECK(std::abs(fam.r0(0, 0) + 0.5) < 1e-12);
    CHECK(std::abs(fam.r0(1, 0)) < 1e-12);
  }
  SUBCASE("agree with A at (2,0,1): infeasible") {
    CHECK_THROWS_AS(
        solve_single(pair.a, pair.b, vec3(2, 0, 1), AgreeSide::WithA),
        Infeasible);
  }
  SUBCASE("agree with B mirrors the sign condition") {
    const SolutionFamily fam =
        solve_single(pair.a, pair.b, vec3(2, 0, 1), AgreeSide::WithB);
    CHECK(fam.dim() == (2 - 1) * 1);
    const CongruenceReduction red = congruence_reduce(pair.a, pair.b);
    const SymMat c =
        solution_at(fam, Eigen::VectorXd::Zero(fam.dim()), pair.a, pair.b,
                    red);
    CHECK((pair.b.mat() * vec3(2, 0, 1) - c.mat() * vec3(2, 0, 1)).norm() <=
          1e-9);
  }
  SUBCASE("vacuous constraint yields the full family") {
    const SymMat a = SymMat::diagonal(vec3(1, -1, 0));
    const SymMat b = SymMat::zero(3);
    const SolutionFamily fam =
        solve_single(a, b, vec3(0, 0, 1), AgreeSide::WithA);
    CHECK(fam.dim() == 1 * 1);
    CHECK(fam.r0.norm() == 0.0);
  }
}

TEST_CASE("solve_constrained on the Lorentz pair") {
  Lorentz3 pair;
  SUBCASE("one positive constraint leaves a line of solutions") {
    const TangencyProblem prob{pair.a, pair.b,
                               Subspace::from_spanning(3, vec3(2, 0, 1)),
                               Subspace::zero(3)};
    const SolutionFamily fam = solve_constrained(prob);
    CHECK(fam.dim() == (2 - 1) * (1 - 0));
    CHECK(std::abs(fam.r0(0, 0) + 0.5) < 1e-12);
    CHECK(std::abs(fam.r0(1, 0)) < 1e-12);
    // the direction spans the free second coordinate
    REQUIRE(fam.directions.size() == 1);
    CHECK(std::abs(std::abs(fam.directions[0](1, 0)) - 1.0) < 1e-12);
    CHECK(std::abs(fam.directions[0](0, 0)) < 1e-12);
  }
  SUBCASE("no constraints recovers the unconstrained family") {
    const TangencyProblem prob{pair.a, pair.b, Subspace::zero(3),
                               Subspace::zero(3)};
    const SolutionFamily fam = solve_constrained(prob);
    CHECK(fam.dim() == 2);
    CHECK(fam.r0.norm() == 0.0);
  }
  SUBCASE("infeasible problems echo the report") {
    const TangencyProblem prob{pair.a, pair.b,
                               Subspace::from_spanning(3, vec3(0, 0, 1)),
                               Subspace::zero(3)};
    CHECK_THROWS_AS(solve_constrained(prob), Infeasible);
    try {
      solve_constrained(prob);
    } catch (const Infeasible& e) {
      CHECK_FALSE(e.report.feasible);
      CHECK_FALSE(e.report.pos_def_on_u);
    }
  }
}

TEST_CASE("solution_at") {
  Lorentz3 pair;
  const CongruenceReduction red = congruence_reduce(pair.a, pair.b);
  SUBCASE("zero coefficients match the zero-parameter bound") {
    const TangencyProblem prob{pair.a, pair.b, Subspace::zero(3),
                               Subspace::zero(3)};
    const SolutionFamily fam = solve_constrained(prob);
    const SymMat c =
        solution_at(fam, Eigen::VectorXd::Zero(fam.dim()), pair.a, pair.b,
                    red);
    const SymMat expect = mlb(pair.a, pair.b, red, MlbParam::zero(2, 1));
    CHECK(spec_norm(c.mat() - expect.mat()) < 1e-12);
  }
  SUBCASE("constraint residual at a family point") {
    const TangencyProblem prob{pair.a, pair.b,
                               Subspace::from_spanning(3, vec3(2, 0, 1)),
                               Subspace::zero(3)};
    const SolutionFamily fam = solve_constrained(prob);
    Eigen::VectorXd coeffs(1);
    coeffs << 0.0;
    const SymMat c = solution_at(fam, coeffs, pair.a, pair.b, red);
    CHECK((c.mat() * vec3(2, 0, 1) - pair.b.mat() * vec3(2, 0, 1)).norm() <=
          1e-9);
  }
  SUBCASE("boundary coefficients are rejected") {
    const TangencyProblem prob{pair.a, pair.b,
                               Subspace::from_spanning(3, vec3(2, 0, 1)),
                               Subspace::zero(3)};
    const SolutionFamily fam = solve_constrained(prob);
    Eigen::VectorXd coeffs(1);
    coeffs << 0.9;  // ||(-1/2, 0.9)|| > 1
    CHECK_THROWS_AS(solution_at(fam, coeffs, pair.a, pair.b, red),
                    NotContractive);
  }
}

TEST_CASE("random feasible problems: members, dimensions, necessity") {
  for (int trial = 0; trial < 30; ++trial) {
    const int p = uniform_int(1, 3);
    const int q = uniform_int(1, 3);
    const int n = p + q;
    const FeasibleProblem fp = random_feasible(n, p, q);
    const TangencyProblem prob{fp.a, fp.b, fp.u, fp.v};

    const FeasibilityReport rep = feasibility(prob);
    CHECK(rep.feasible);  // necessity: kernels of a real bound are feasible

    const SolutionFamily fam = solve_constrained(prob);
    CHECK(fam.dim() == (p - fp.ku) * (q - fp.kv));
    CHECK(fam.dim() == family_dim_oracle(fp.u, fp.v, fp.a, fp.b));
    CHECK(spec_norm(fam.r0) < 1.0);

    const CongruenceReduction red = congruence_reduce(fp.a, fp.b);
    for (int sample = 0; sample < 3; ++sample) {
      Eigen::VectorXd coeffs = 0.2 * random_vector(fam.dim());
      Eigen::MatrixXd r = fam.r0;
      for (int i = 0; i < fam.dim(); ++i) r += coeffs(i) * fam.directions[i];
      if (spec_norm(r) > 1.0 - 1e-6) continue;
      const SymMat c = solution_at(fam, coeffs, fp.a, fp.b, red);
      CHECK(check_maximal(fp.a, fp.b, c) == Maximality::Maximal);
      const double scale_b =
          std::max(1.0, spec_norm(fp.b.mat()) + spec_norm(c.mat()));
      const double scale_a =
          std::max(1.0, spec_norm(fp.a.mat()) + spec_norm(c.mat()));
      if (fp.ku > 0) {
        CHECK(spec_norm((fp.b.mat() - c.mat()) * fp.u.basis()) <=
              1e-7 * scale_b);
      }
      if (fp.kv > 0) {
        CHECK(spec_norm((fp.a.mat() - c.mat()) * fp.v.basis()) <=
              1e-7 * scale_a);
      }
    }
  }
}

TEST_CASE("full-dimension constraints pin the solution") {
  for (int trial = 0; trial < 10; ++trial) {
    const int p = uniform_int(1, 3);
    const int q = uniform_int(1, 3);
    const auto [a, b] = random_pair(p, q, 0);
    const CongruenceReduction red = congruence_reduce(a, b);
    const MlbParam param{p, q, random_matrix(p, q, 1.0)};
    const SymMat c = mlb(a, b, red, param);
    const TangencyProblem prob{a, b, kernel_basis(b - c),
                               kernel_basis(a - c)};
    const SolutionFamily fam = solve_constrained(prob);
    CHECK(fam.dim() == 0);
    const SymMat back =
        solution_at(fam, Eigen::VectorXd::Zero(0), a, b, red);
    CHECK(spec_norm(back.mat() - c.mat()) <=
          1e-7 * std::max(1.0, spec_norm(c.mat())));
  }
}

}  // TEST_SUITE

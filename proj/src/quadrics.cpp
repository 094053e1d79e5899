#include "loewner/quadrics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include "loewner/io.hpp"

namespace loewner {

namespace {

struct EigenFrame {
  std::vector<double> pos;   // positive eigenvalues, descending
  std::vector<double> neg;   // |negative eigenvalues|
  int zero = 0;
  Eigen::MatrixXd axes;      // columns ordered [pos..., neg..., zero...]
};

EigenFrame classify(const SymMat& form, double tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(form.mat());
  if (solver.info() != Eigen::Success) {
    throw EigenFailure("eigendecomposition did not converge");
  }
  const Eigen::VectorXd ev = solver.eigenvalues();
  const double thr = scaled_tol(tol, ev.cwiseAbs().maxCoeff());
  EigenFrame frame;
  const int n = form.order();
  std::vector<int> pos_idx, neg_idx, zero_idx;
  for (int i = n - 1; i >= 0; --i) {  // descending eigenvalues
    if (ev(i) > thr) pos_idx.push_back(i);
  }
  for (int i = 0; i < n; ++i) {  // most negative first
    if (ev(i) < -thr) neg_idx.push_back(i);
  }
  for (int i = 0; i < n; ++i) {
    if (!(ev(i) > thr) && !(ev(i) < -thr)) zero_idx.push_back(i);
  }
  frame.axes.resize(n, n);
  int col = 0;
  for (int i : pos_idx) {
    frame.pos.push_back(ev(i));
    frame.axes.col(col++) = solver.eigenvectors().col(i);
  }
  for (int i : neg_idx) {
    frame.neg.push_back(-ev(i));
    frame.axes.col(col++) = solver.eigenvectors().col(i);
  }
  for (int i : zero_idx) {
    frame.axes.col(col++) = solver.eigenvectors().col(i);
  }
  frame.zero = static_cast<int>(zero_idx.size());
  return frame;
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out;
  out.reserve(count);
  if (count == 1) {
    out.push_back(0.5 * (lo + hi));
    return out;
  }
  for (int i = 0; i < count; ++i) {
    out.push_back(lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

constexpr double kParamRange = 3.0;  // window for unbounded branches

}  // namespace

Quadric Quadric::make(const SymMat& form, double tol) {
  return Quadric{form, inertia(form, tol).q == 0};
}

bool includes(const Quadric& inner, const Quadric& outer, double tol) {
  if (inner.form.order() != outer.form.order()) {
    throw DimensionMismatch("quadric orders differ");
  }
  if (!inner.convex) {
    throw NotAnEllipsoid(
        "inclusion-order equivalence requires a convex inner set");
  }
  return loewner_leq(outer.form, inner.form, tol);
}

TangencyPointsReport tangency_points(const SymMat& a, const SymMat& c,
                                     double tol) {
  if (a.order() != c.order()) {
    throw DimensionMismatch("matrix orders differ");
  }
  if (!loewner_leq(c, a, tol)) {
    throw InputError("tangency_points requires C below A");
  }
  const Subspace ker = kernel_basis(a - c, tol);
  const double thr = scaled_tol(tol, c.spec_norm());
  TangencyPointsReport report;
  for (int j = 0; j < ker.dim(); ++j) {
    const Eigen::VectorXd x = ker.basis().col(j);
    const double val = x.dot(c.mat() * x);
    if (val > thr) {
      const Eigen::VectorXd point = x / std::sqrt(val);
      report.finite_points.emplace_back(point, -point);
    } else {
      report.infinite_directions.push_back(x);
    }
  }
  return report;
}

std::vector<Eigen::VectorXd> sample_boundary(const Quadric& q, int resolution,
                                             double tol) {
  const int n = q.form.order();
  if (n != 2 && n != 3) {
    throw UnsupportedDimension("boundary sampling supports orders 2 and 3");
  }
  if (resolution < 1) throw InputError("resolution must be positive");
  const EigenFrame frame = classify(q.form, tol);
  const int np = static_cast<int>(frame.pos.size());
  const int nq = static_cast<int>(frame.neg.size());
  if (np == 0) {
    throw EmptyBoundary("the level set {x^T Q x = 1} is empty");
  }

  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<Eigen::VectorXd> ys;
  auto yvec = [n](std::initializer_list<double> vals) {
    Eigen::VectorXd y(n);
    int i = 0;
    for (double v : vals) y(i++) = v;
    return y;
  };

  if (n == 2) {
    const double a0 = 1.0 / std::sqrt(frame.pos[0]);
    if (np == 2) {
      const double a1 = 1.0 / std::sqrt(frame.pos[1]);
      for (int i = 0; i < resolution; ++i) {
        const double t = two_pi * i / resolution;
        ys.push_back(yvec({a0 * std::cos(t), a1 * std::sin(t)}));
      }
    } else if (nq == 1) {
      const double b0 = 1.0 / std::sqrt(frame.neg[0]);
      for (double sign : {1.0, -1.0}) {
        for (double s : linspace(-kParamRange, kParamRange, resolution)) {
          ys.push_back(yvec({sign * a0 * std::cosh(s), b0 * std::sinh(s)}));
        }
      }
    } else {  // inertia (1,0,1): pair of lines
      for (double sign : {1.0, -1.0}) {
        for (double t : linspace(-kParamRange, kParamRange, resolution)) {
          ys.push_back(yvec({sign * a0, t}));
        }
      }
    }
  } else {
    const double a0 = 1.0 / std::sqrt(frame.pos[0]);
    const auto grid = linspace(-kParamRange, kParamRange, resolution);
    if (np == 3) {
      const double a1 = 1.0 / std::sqrt(frame.pos[1]);
      const double a2 = 1.0 / std::sqrt(frame.pos[2]);
      for (int i = 0; i < resolution; ++i) {
        const double theta = std::numbers::pi * (i + 0.5) / resolution;
        for (int j = 0; j < resolution; ++j) {
          const double phi = two_pi * j / resolution;
          ys.push_back(yvec({a0 * std::sin(theta) * std::cos(phi),
                             a1 * std::sin(theta) * std::sin(phi),
                             a2 * std::cos(theta)}));
        }
      }
    } else if (np == 2 && nq == 1) {
      const double a1 = 1.0 / std::sqrt(frame.pos[1]);
      const double b0 = 1.0 / std::sqrt(frame.neg[0]);
      for (double s : grid) {
        for (int j = 0; j < resolution; ++j) {
          const double phi = two_pi * j / resolution;
          ys.push_back(yvec({a0 * std::cosh(s) * std::cos(phi),
                             a1 * std::cosh(s) * std::sin(phi),
                             b0 * std::sinh(s)}));
        }
      }
    } else if (np == 1 && nq == 2) {
      const double b0 = 1.0 / std::sqrt(frame.neg[0]);
      const double b1 = 1.0 / std::sqrt(frame.neg[1]);
      for (double sign : {1.0, -1.0}) {
        for (double s : linspace(0.0, kParamRange, resolution)) {
          for (int j = 0; j < resolution; ++j) {
            const double phi = two_pi * j / resolution;
            ys.push_back(yvec({sign * a0 * std::cosh(s),
                               b0 * std::sinh(s) * std::cos(phi),
                               b1 * std::sinh(s) * std::sin(phi)}));
          }
        }
      }
    } else if (np == 2 && nq == 0) {  // elliptic cylinder, one free axis
      const double a1 = 1.0 / std::sqrt(frame.pos[1]);
      for (int j = 0; j < resolution; ++j) {
        const double phi = two_pi * j / resolution;
        for (double t : grid) {
          ys.push_back(yvec({a0 * std::cos(phi), a1 * std::sin(phi), t}));
        }
      }
    } else if (np == 1 && nq == 1) {  // hyperbolic cylinder
      const double b0 = 1.0 / std::sqrt(frame.neg[0]);
      for (double sign : {1.0, -1.0}) {
        for (double s : grid) {
          for (double t : grid) {
            ys.push_back(yvec(
                {sign * a0 * std::cosh(s), b0 * std::sinh(s), t}));
          }
        }
      }
    } else {  // inertia (1,0,2): pair of planes
      for (double sign : {1.0, -1.0}) {
        for (double t1 : grid) {
          for (double t2 : grid) {
            ys.push_back(yvec({sign * a0, t1, t2}));
          }
        }
      }
    }
  }

  std::vector<Eigen::VectorXd> points;
  points.reserve(ys.size());
  for (const auto& y : ys) points.push_back(frame.axes * y);
  return points;
}

namespace {

void write_points_csv(const std::filesystem::path& path,
                      const std::vector<Eigen::VectorXd>& points, int n) {
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot open " + path.string() + " for writing");
  }
  out << (n == 2 ? "x,y" : "x,y,z") << "\n";
  for (const auto& pt : points) {
    for (int i = 0; i < n; ++i) {
      if (i > 0) out << ",";
      out << format_sig17(pt(i));
    }
    out << "\n";
  }
  if (!out.good()) {
    throw InputError("write failed for " + path.string());
  }
}

}  // namespace

void figure_data(const SymMat& a, const SymMat& b,
                 const std::vector<MlbParam>& params,
                 const std::string& out_dir, int resolution, double tol) {
  const int n = a.order();
  if (n != 2 && n != 3) {
    throw UnsupportedDimension("figure data supports orders 2 and 3");
  }
  if (b.order() != n) throw DimensionMismatch("matrix orders differ");
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw InputError("cannot create " + out_dir + ": " + ec.message());
  }
  const std::filesystem::path dir(out_dir);

  write_points_csv(dir / "EA_0.csv",
                   sample_boundary(Quadric::make(a, tol), resolution, tol), n);
  write_points_csv(dir / "EB_0.csv",
                   sample_boundary(Quadric::make(b, tol), resolution, tol), n);

  const CongruenceReduction red = congruence_reduce(a, b, tol);
  for (size_t i = 0; i < params.size(); ++i) {
    const SymMat c = mlb(a, b, red, params[i]);
    const std::string idx = std::to_string(i);
    write_points_csv(dir / ("QC_" + idx + ".csv"),
                     sample_boundary(Quadric::make(c, tol), resolution, tol),
                     n);
    write_text((dir / ("tangency_" + idx + ".json")).string(),
               tangency_report_json(tangency_points(a, c, tol),
                                    tangency_points(b, c, tol)));
  }
}

}  // namespace loewner

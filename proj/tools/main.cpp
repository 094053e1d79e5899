// Command-line surface over the library: batch operations on matrix files
// with deterministic output and a fixed exit-code contract
// (0 ok, 1 domain-level "no", 2 malformed input, 3 numerical failure).

#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "loewner/io.hpp"
#include "loewner/mlbparam.hpp"
#include "loewner/psdshort.hpp"
#include "loewner/quadrics.hpp"
#include "loewner/symmat.hpp"
#include "loewner/tangency.hpp"

namespace {

using namespace loewner;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain:
      return 1;
    case ErrorKind::Input:
      return 2;
    case ErrorKind::Numeric:
      return 3;
  }
  return 3;
}

void print_kv(const std::string& key, const std::string& value) {
  std::cout << key << ": " << value << "\n";
}

struct Options {
  double tol = kDefaultTol;
  std::string a, b, c, m, x, y, z, u, v;
  std::string xvec, side;
  std::string out, out_dir;
  std::vector<std::string> param_files;
  int resolution = 200;
};

void emit_matrix(const Options& opt, const std::string& key,
                 const SymMat& mat) {
  print_kv(key, matrix_json(mat.mat()));
  if (!opt.out.empty()) {
    write_matrix(opt.out, mat);
    print_kv("wrote", opt.out);
  }
}

int cmd_inertia(const Options& opt) {
  const Inertia in = inertia(read_matrix(opt.a), opt.tol);
  print_kv("p", std::to_string(in.p));
  print_kv("q", std::to_string(in.q));
  print_kv("r", std::to_string(in.r));
  return 0;
}

int cmd_reduce(const Options& opt) {
  const CongruenceReduction red =
      congruence_reduce(read_matrix(opt.a), read_matrix(opt.b), opt.tol);
  print_kv("p", std::to_string(red.inertia.p));
  print_kv("q", std::to_string(red.inertia.q));
  print_kv("r", std::to_string(red.inertia.r));
  print_kv("P", matrix_json(red.P));
  if (!opt.out.empty()) {
    write_dense(opt.out, red.P);
    print_kv("wrote", opt.out);
  }
  return 0;
}

int cmd_bound(const Options& opt, bool lower) {
  const SymMat a = read_matrix(opt.a);
  const SymMat b = read_matrix(opt.b);
  const MlbParam param = read_param(opt.m);
  const CongruenceReduction red = congruence_reduce(a, b, opt.tol);
  const SymMat c =
      lower ? mlb(a, b, red, param) : mub(a, b, red, param);
  emit_matrix(opt, "c", c);
  return 0;
}

int cmd_recover(const Options& opt) {
  const SymMat a = read_matrix(opt.a);
  const SymMat b = read_matrix(opt.b);
  const SymMat c = read_matrix(opt.c);
  const CongruenceReduction red = congruence_reduce(a, b, opt.tol);
  const MlbParam param = recover_param(a, b, red, c, opt.tol);
  print_kv("m", param_json(param));
  if (!opt.out.empty()) {
    write_param(opt.out, param);
    print_kv("wrote", opt.out);
  }
  return 0;
}

int cmd_check(const Options& opt) {
  const Maximality verdict = check_maximal(
      read_matrix(opt.a), read_matrix(opt.b), read_matrix(opt.c), opt.tol);
  print_kv("verdict", to_string(verdict));
  return verdict == Maximality::Maximal ? 0 : 1;
}

void emit_family(const Options& opt, const SolutionFamily& family) {
  print_kv("dim", std::to_string(family.dim()));
  print_kv("family", family_json(family));
  if (!opt.out.empty()) {
    write_text(opt.out, family_json(family) + "\n");
    print_kv("wrote", opt.out);
  }
}

int cmd_constrained(const Options& opt) {
  const SymMat a = read_matrix(opt.a);
  const SymMat b = read_matrix(opt.b);
  TangencyProblem prob{
      a, b,
      opt.u.empty() ? Subspace::zero(a.order())
                    : read_subspace(opt.u, opt.tol),
      opt.v.empty() ? Subspace::zero(a.order())
                    : read_subspace(opt.v, opt.tol)};
  const FeasibilityReport rep = feasibility(prob, opt.tol);
  print_kv("feasible", rep.feasible ? "true" : "false");
  print_kv("pos_def_on_u", rep.pos_def_on_u ? "true" : "false");
  print_kv("neg_def_on_v", rep.neg_def_on_v ? "true" : "false");
  print_kv("cross_orthogonal", rep.cross_orthogonal ? "true" : "false");
  emit_family(opt, solve_constrained(prob, opt.tol));
  return 0;
}

int cmd_single(const Options& opt) {
  const SymMat a = read_matrix(opt.a);
  const SymMat b = read_matrix(opt.b);
  const Eigen::VectorXd x = parse_vector(opt.xvec);
  AgreeSide side;
  if (opt.side == "A" || opt.side == "a") {
    side = AgreeSide::WithA;
  } else if (opt.side == "B" || opt.side == "b") {
    side = AgreeSide::WithB;
  } else {
    throw InputError("--side must be A or B");
  }
  emit_family(opt, solve_single(a, b, x, side, opt.tol));
  return 0;
}

int cmd_short(const Options& opt) {
  const SymMat result =
      generalized_short(read_matrix(opt.x), read_matrix(opt.y), opt.tol);
  emit_matrix(opt, "short", result);
  return 0;
}

int cmd_psd_mlb(const Options& opt) {
  const SymMat a = read_matrix(opt.a);
  const SymMat b = read_matrix(opt.b);
  const MlbParam z = read_param(opt.z);
  emit_matrix(opt, "c", psd_mlb(a, b, z.m, opt.tol));
  return 0;
}

int cmd_rank_bound(const Options& opt) {
  const int bound =
      rank_bound(read_matrix(opt.a), read_matrix(opt.b), opt.tol);
  print_kv("rank_bound", std::to_string(bound));
  return 0;
}

int cmd_gudder(const Options& opt) {
  const bool unique =
      gudder_unique(read_matrix(opt.a), read_matrix(opt.b), opt.tol);
  print_kv("unique", unique ? "true" : "false");
  return unique ? 0 : 1;
}

int cmd_tangency(const Options& opt) {
  const SymMat a = read_matrix(opt.a);
  const SymMat c = read_matrix(opt.c);
  const TangencyPointsReport rep = tangency_points(a, c, opt.tol);
  TangencyPointsReport empty;
  const std::string doc = tangency_report_json(rep, empty);
  print_kv("finite_points", std::to_string(rep.finite_points.size()));
  print_kv("infinite_directions",
           std::to_string(rep.infinite_directions.size()));
  print_kv("report", doc);
  if (!opt.out.empty()) {
    write_text(opt.out, doc + "\n");
    print_kv("wrote", opt.out);
  }
  return 0;
}

int cmd_figures(const Options& opt) {
  const SymMat a = read_matrix(opt.a);
  const SymMat b = read_matrix(opt.b);
  std::vector<MlbParam> params;
  for (const auto& path : opt.param_files) {
    params.push_back(read_param(path));
  }
  figure_data(a, b, params, opt.out_dir, opt.resolution, opt.tol);
  print_kv("wrote", opt.out_dir);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Maximal lower bounds, minimal upper bounds, shorts and quadric "
      "geometry for symmetric matrices in the Loewner order"};
  app.require_subcommand(1);

  Options opt;
  app.add_option("--tol", opt.tol,
                 "relative decision tolerance used by all rank/inertia tests")
      ->capture_default_str();

  std::function<int(const Options&)> action;
  auto bind = [&action](std::function<int(const Options&)> fn) {
    return [&action, fn]() { action = fn; };
  };

  auto add_out = [&opt](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "output file");
  };

  auto* c_inertia =
      app.add_subcommand("inertia", "eigenvalue signature of a matrix");
  c_inertia->add_option("--a", opt.a, "matrix file")->required();
  c_inertia->callback(bind(cmd_inertia));

  auto* c_reduce = app.add_subcommand(
      "reduce", "congruence P with A-B = P J P^T revealing the inertia");
  c_reduce->add_option("--a", opt.a, "matrix file")->required();
  c_reduce->add_option("--b", opt.b, "matrix file")->required();
  add_out(c_reduce);
  c_reduce->callback(bind(cmd_reduce));

  auto* c_mlb = app.add_subcommand(
      "mlb", "maximal lower bound for a parameter matrix M");
  c_mlb->add_option("--a", opt.a, "matrix file")->required();
  c_mlb->add_option("--b", opt.b, "matrix file")->required();
  c_mlb->add_option("--m", opt.m, "parameter file")->required();
  add_out(c_mlb);
  c_mlb->callback(bind([](const Options& o) { return cmd_bound(o, true); }));

  auto* c_mub = app.add_subcommand(
      "mub", "minimal upper bound for a parameter matrix M");
  c_mub->add_option("--a", opt.a, "matrix file")->required();
  c_mub->add_option("--b", opt.b, "matrix file")->required();
  c_mub->add_option("--m", opt.m, "parameter file")->required();
  add_out(c_mub);
  c_mub->callback(bind([](const Options& o) { return cmd_bound(o, false); }));

  auto* c_recover = app.add_subcommand(
      "recover", "parameter matrix of a maximal lower bound");
  c_recover->add_option("--a", opt.a, "matrix file")->required();
  c_recover->add_option("--b", opt.b, "matrix file")->required();
  c_recover->add_option("--c", opt.c, "matrix file")->required();
  add_out(c_recover);
  c_recover->callback(bind(cmd_recover));

  auto* c_check = app.add_subcommand(
      "check", "classify C as maximal lower bound of (A,B)");
  c_check->add_option("--a", opt.a, "matrix file")->required();
  c_check->add_option("--b", opt.b, "matrix file")->required();
  c_check->add_option("--c", opt.c, "matrix file")->required();
  c_check->callback(bind(cmd_check));

  auto* c_constrained = app.add_subcommand(
      "constrained", "solve the tangency-constrained selection problem");
  c_constrained->add_option("--a", opt.a, "matrix file")->required();
  c_constrained->add_option("--b", opt.b, "matrix file")->required();
  c_constrained->add_option("--u", opt.u,
                            "subspace file (C agrees with B there)");
  c_constrained->add_option("--v", opt.v,
                            "subspace file (C agrees with A there)");
  add_out(c_constrained);
  c_constrained->callback(bind(cmd_constrained));

  auto* c_single = app.add_subcommand(
      "single", "single-direction tangency constraint");
  c_single->add_option("--a", opt.a, "matrix file")->required();
  c_single->add_option("--b", opt.b, "matrix file")->required();
  c_single->add_option("--x", opt.xvec, "direction, comma-separated")
      ->required();
  c_single->add_option("--side", opt.side, "A (C x = A x) or B (C x = B x)")
      ->required();
  add_out(c_single);
  c_single->callback(bind(cmd_single));

  auto* c_short = app.add_subcommand(
      "short", "generalized short [Y]X of X to the image of Y");
  c_short->add_option("--x", opt.x, "matrix file")->required();
  c_short->add_option("--y", opt.y, "matrix file")->required();
  add_out(c_short);
  c_short->callback(bind(cmd_short));

  auto* c_psd_mlb = app.add_subcommand(
      "psd-mlb", "maximal-rank PSD maximal lower bound for parameter Z");
  c_psd_mlb->add_option("--a", opt.a, "matrix file")->required();
  c_psd_mlb->add_option("--b", opt.b, "matrix file")->required();
  c_psd_mlb->add_option("--z", opt.z, "parameter file")->required();
  add_out(c_psd_mlb);
  c_psd_mlb->callback(bind(cmd_psd_mlb));

  auto* c_rank = app.add_subcommand(
      "rank-bound", "rank bound for PSD maximal lower bounds");
  c_rank->add_option("--a", opt.a, "matrix file")->required();
  c_rank->add_option("--b", opt.b, "matrix file")->required();
  c_rank->callback(bind(cmd_rank_bound));

  auto* c_gudder = app.add_subcommand(
      "gudder", "uniqueness of the PSD maximal lower bound");
  c_gudder->add_option("--a", opt.a, "matrix file")->required();
  c_gudder->add_option("--b", opt.b, "matrix file")->required();
  c_gudder->callback(bind(cmd_gudder));

  auto* c_tangency = app.add_subcommand(
      "tangency", "tangency points between the level sets of C and A");
  c_tangency->add_option("--a", opt.a, "matrix file")->required();
  c_tangency->add_option("--c", opt.c, "matrix file")->required();
  add_out(c_tangency);
  c_tangency->callback(bind(cmd_tangency));

  auto* c_figures = app.add_subcommand(
      "figures", "boundary samples and tangency reports for plots");
  c_figures->add_option("--a", opt.a, "matrix file")->required();
  c_figures->add_option("--b", opt.b, "matrix file")->required();
  c_figures->add_option("--m", opt.param_files,
                        "parameter file (repeatable)");
  c_figures->add_option("--out-dir", opt.out_dir, "output directory")
      ->required();
  c_figures->add_option("--resolution", opt.resolution,
                        "sample count per curve / grid axis")
      ->capture_default_str();
  c_figures->callback(bind(cmd_figures));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      return app.exit(e);
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (opt.tol <= 0.0) throw InputError("--tol must be positive");
    print_kv("tol", format_sig17(opt.tol));
    return action(opt);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}

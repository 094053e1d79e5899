#pragma once

#include <Eigen/Dense>
#include <string>

#include "loewner/mlbparam.hpp"
#include "loewner/quadrics.hpp"
#include "loewner/symmat.hpp"
#include "loewner/tangency.hpp"

namespace loewner {

// Matrix file format shared by all commands: {"n": <int>, "data": [[row],...]}
// with n rows of n numbers; symmetric input enforced at 1e-12 relative.
SymMat read_matrix(const std::string& path);
void write_matrix(const std::string& path, const SymMat& m);

// Same document shape for general (non-symmetric) square matrices, e.g. the
// congruence factor P.
void write_dense(const std::string& path, const Eigen::MatrixXd& m);

// Parameter file format: {"p": <int>, "q": <int>, "data": [[row],...]}.
MlbParam read_param(const std::string& path);
void write_param(const std::string& path, const MlbParam& param);

// Subspace input as a list of spanning vectors (orthonormalized on ingest):
// {"n": <int>, "vectors": [[...], ...]}.
Subspace read_subspace(const std::string& path, double tol = kDefaultTol);

// Comma-separated decimals, e.g. "2,0,1".
Eigen::VectorXd parse_vector(const std::string& text);

std::string matrix_json(const Eigen::MatrixXd& m);
std::string param_json(const MlbParam& param);
std::string family_json(const SolutionFamily& family);
std::string tangency_report_json(const TangencyPointsReport& against_a,
                                 const TangencyPointsReport& against_b);

void write_text(const std::string& path, const std::string& content);

// 17-significant-digit decimal rendering used for CSV points and stdout.
std::string format_sig17(double v);

}  // namespace loewner

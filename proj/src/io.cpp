#include "loewner/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace loewner {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("cannot parse " + path + ": " + e.what());
  }
}

Eigen::MatrixXd parse_rows(const json& data, int rows, int cols,
                           const std::string& path) {
  if (!data.is_array() || static_cast<int>(data.size()) != rows) {
    throw InputError(path + ": expected " + std::to_string(rows) + " rows");
  }
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = data[i];
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw InputError(path + ": row " + std::to_string(i) + " must have " +
                       std::to_string(cols) + " entries");
    }
    for (int j = 0; j < cols; ++j) {
      if (!row[j].is_number()) {
        throw InputError(path + ": non-numeric entry at (" +
                         std::to_string(i) + "," + std::to_string(j) + ")");
      }
      m(i, j) = row[j].get<double>();
    }
  }
  return m;
}

json rows_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    data.push_back(row);
  }
  return data;
}

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

int get_count(const json& doc, const char* key, const std::string& path) {
  if (!doc.contains(key) || !doc[key].is_number_integer()) {
    throw InputError(path + ": missing integer field \"" + key + "\"");
  }
  const int v = doc[key].get<int>();
  if (v < 0) {
    throw InputError(path + ": field \"" + key + "\" must be non-negative");
  }
  return v;
}

}  // namespace

std::string format_sig17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

SymMat read_matrix(const std::string& path) {
  const json doc = load_json(path);
  const int n = get_count(doc, "n", path);
  if (n < 1) throw InputError(path + ": order must be positive");
  if (!doc.contains("data")) throw InputError(path + ": missing \"data\"");
  const Eigen::MatrixXd m = parse_rows(doc["data"], n, n, path);
  try {
    return SymMat(m);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_matrix(const std::string& path, const SymMat& m) {
  write_dense(path, m.mat());
}

void write_dense(const std::string& path, const Eigen::MatrixXd& m) {
  json doc;
  doc["n"] = m.rows();
  doc["data"] = rows_json(m);
  write_text(path, doc.dump() + "\n");
}

MlbParam read_param(const std::string& path) {
  const json doc = load_json(path);
  MlbParam param;
  param.p = get_count(doc, "p", path);
  param.q = get_count(doc, "q", path);
  if (!doc.contains("data")) throw InputError(path + ": missing \"data\"");
  param.m = param.p == 0
                ? Eigen::MatrixXd::Zero(param.p, param.q).eval()
                : parse_rows(doc["data"], param.p, param.q, path);
  if (!param.m.allFinite()) {
    throw InputError(path + ": parameter entries must be finite");
  }
  return param;
}

void write_param(const std::string& path, const MlbParam& param) {
  write_text(path, param_json(param) + "\n");
}

Subspace read_subspace(const std::string& path, double tol) {
  const json doc = load_json(path);
  const int n = get_count(doc, "n", path);
  if (n < 1) throw InputError(path + ": ambient dimension must be positive");
  if (!doc.contains("vectors") || !doc["vectors"].is_array()) {
    throw InputError(path + ": missing \"vectors\" array");
  }
  const int k = static_cast<int>(doc["vectors"].size());
  if (k == 0) return Subspace::zero(n);
  // vectors are given as rows; spanning columns for the subspace
  const Eigen::MatrixXd rows = parse_rows(doc["vectors"], k, n, path);
  try {
    return Subspace::from_spanning(n, rows.transpose(), tol);
  } catch (const Error& e) {
    throw InputError(path + ": " + e.what());
  }
}

Eigen::VectorXd parse_vector(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      const double v = std::stod(item, &used);
      while (used < item.size() && std::isspace(item[used])) ++used;
      if (used != item.size()) throw std::invalid_argument(item);
      vals.push_back(v);
    } catch (const std::exception&) {
      throw InputError("cannot parse vector component \"" + item + "\"");
    }
  }
  if (vals.empty()) throw InputError("empty vector");
  Eigen::VectorXd v(vals.size());
  for (size_t i = 0; i < vals.size(); ++i) v(static_cast<int>(i)) = vals[i];
  return v;
}

std::string matrix_json(const Eigen::MatrixXd& m) {
  json doc;
  doc["n"] = m.rows();
  doc["data"] = rows_json(m);
  return doc.dump();
}

std::string param_json(const MlbParam& param) {
  json doc;
  doc["p"] = param.p;
  doc["q"] = param.q;
  doc["data"] = rows_json(param.m);
  return doc.dump();
}

std::string family_json(const SolutionFamily& family) {
  json doc;
  doc["p"] = family.p;
  doc["q"] = family.q;
  doc["dim"] = family.dim();
  doc["r0"] = rows_json(family.r0);
  json dirs = json::array();
  for (const auto& d : family.directions) dirs.push_back(rows_json(d));
  doc["directions"] = dirs;
  return doc.dump();
}

namespace {

json tangency_side_json(const TangencyPointsReport& rep) {
  json side;
  json finite = json::array();
  for (const auto& [plus, minus] : rep.finite_points) {
    finite.push_back(json::array({vector_json(plus), vector_json(minus)}));
  }
  side["finite_points"] = finite;
  json inf = json::array();
  for (const auto& d : rep.infinite_directions) inf.push_back(vector_json(d));
  side["infinite_directions"] = inf;
  return side;
}

}  // namespace

std::string tangency_report_json(const TangencyPointsReport& against_a,
                                 const TangencyPointsReport& against_b) {
  json doc;
  doc["against_a"] = tangency_side_json(against_a);
  doc["against_b"] = tangency_side_json(against_b);
  return doc.dump();
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open " + path + " for writing");
  out << content;
  if (!out.good()) throw InputError("write failed for " + path);
}

}  // namespace loewner

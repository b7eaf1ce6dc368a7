#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "embedlab/linalg.hpp"

namespace embedlab {

using Json = nlohmann::json;

// on-disk matrix schema: {"d": n, "entries": [[row 0...], [row 1...], ...]};
// complex matrices carry "re" and "im" blocks of the same shape instead

inline Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return Json{{"d", m.rows()}, {"entries", std::move(rows)}};
}

inline Json to_json(const CMatrix& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rrow = Json::array();
    Json irow = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(m(i, j).real());
      irow.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return Json{{"d", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

inline Matrix real_block_from_json(const Json& block, int d, const std::string& key) {
  if (!block.is_array() || static_cast<int>(block.size()) != d)
    throw std::invalid_argument("matrix json: '" + key + "' must hold " +
                                std::to_string(d) + " rows");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    const Json& row = block.at(i);
    if (!row.is_array() || static_cast<int>(row.size()) != d)
      throw std::invalid_argument("matrix json: row " + std::to_string(i) +
                                  " of '" + key + "' has wrong length");
    for (int j = 0; j < d; ++j) m(i, j) = row.at(j).get<double>();
  }
  return m;
}

inline int json_dimension(const Json& j) {
  if (!j.is_object() || !j.contains("d") || !j.at("d").is_number_integer())
    throw std::invalid_argument("matrix json: missing integer field 'd'");
  const int d = j.at("d").get<int>();
  if (d <= 0) throw std::invalid_argument("matrix json: 'd' must be positive");
  return d;
}

inline Matrix matrix_from_json(const Json& j) {
  const int d = json_dimension(j);
  if (!j.contains("entries"))
    throw std::invalid_argument("matrix json: missing field 'entries'");
  return real_block_from_json(j.at("entries"), d, "entries");
}

inline CMatrix cmatrix_from_json(const Json& j) {
  const int d = json_dimension(j);
  if (j.contains("entries") && !j.contains("re"))
    return matrix_from_json(j).cast<Complex>();
  if (!j.contains("re") || !j.contains("im"))
    throw std::invalid_argument("matrix json: complex form needs 're' and 'im'");
  Matrix re = real_block_from_json(j.at("re"), d, "re");
  Matrix im = real_block_from_json(j.at("im"), d, "im");
  return re.cast<Complex>() + Complex(0.0, 1.0) * im.cast<Complex>();
}

// vectors ride the same schema as a 1 x d or d x 1 entries block
inline Vector vector_from_json(const Json& j) {
  const int d = json_dimension(j);
  if (!j.contains("entries"))
    throw std::invalid_argument("vector json: missing field 'entries'");
  const Json& block = j.at("entries");
  if (!block.is_array() || block.empty())
    throw std::invalid_argument("vector json: 'entries' must be a nested array");
  Vector v(d);
  if (block.size() == 1) {
    const Json& row = block.at(0);
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("vector json: row length does not match 'd'");
    for (int i = 0; i < d; ++i) v(i) = row.at(i).get<double>();
    return v;
  }
  if (static_cast<int>(block.size()) != d)
    throw std::invalid_argument("vector json: expected 1 x d or d x 1 entries");
  for (int i = 0; i < d; ++i) {
    const Json& row = block.at(i);
    if (!row.is_array() || row.size() != 1)
      throw std::invalid_argument("vector json: expected 1 x d or d x 1 entries");
    v(i) = row.at(0).get<double>();
  }
  return v;
}

inline Json to_json(const Vector& v) {
  Json row = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
  return Json{{"d", v.size()}, {"entries", Json::array({std::move(row)})}};
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("malformed json in " + path + ": " + e.what());
  }
  return j;
}

inline void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace embedlab

#include "json_util.hpp"

#include <cmath>

namespace caa::detail {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // Byte offset -> line/column for the message.
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("JSON syntax error at line " + std::to_string(line) + ", column " +
                     std::to_string(col) + ": " + e.what());
  }
}

const json& require_field(const json& obj, const char* field, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(field);
  if (it == obj.end()) throw ParseError(where + ": missing field \"" + field + "\"");
  return *it;
}

double as_real(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where + ": expected a finite number");
  return d;
}

std::size_t as_count(const json& v, const std::string& where) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw ParseError(where + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v.get<long long>());
}

std::size_t as_label(const json& v, std::size_t upper, const std::string& where) {
  if (!v.is_number_integer()) throw ParseError(where + ": expected an integer label");
  const long long label = v.get<long long>();
  if (label < 1 || static_cast<std::size_t>(label) > upper)
    throw ParseError(where + ": label " + std::to_string(label) + " out of range 1.." +
                     std::to_string(upper));
  return static_cast<std::size_t>(label - 1);
}

std::vector<double> as_real_vector(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(as_real(v[i], where + "[" + std::to_string(i + 1) + "]"));
  return out;
}

Matrix as_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected an array of rows");
  const std::size_t rows = v.size();
  std::size_t cols = 0;
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    const auto row = as_real_vector(v[i], where + " row " + std::to_string(i + 1));
    if (i == 0) {
      cols = row.size();
      m = Matrix(rows, cols);
    } else if (row.size() != cols) {
      throw ParseError(where + " row " + std::to_string(i + 1) + ": has " +
                       std::to_string(row.size()) + " entries, row 1 has " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = row[j];
  }
  return m;
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  return rows;
}

}  // namespace caa::detail

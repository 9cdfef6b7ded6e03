#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "caa/errors.hpp"
#include "caa/matrix.hpp"

namespace caa::detail {

using nlohmann::json;

json parse_json(std::string_view text);

const json& require_field(const json& obj, const char* field, const std::string& where);

double as_real(const json& v, const std::string& where);
std::size_t as_count(const json& v, const std::string& where);
/// 1-based label in [1, upper] -> 0-based index.
std::size_t as_label(const json& v, std::size_t upper, const std::string& where);
std::vector<double> as_real_vector(const json& v, const std::string& where);
Matrix as_matrix(const json& v, const std::string& where);

json to_json(const Matrix& m);

}  // namespace caa::detail

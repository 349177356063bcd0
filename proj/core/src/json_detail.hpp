#pragma once

// Shared between the JSON readers and the chart writer. Not installed.
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>

#include "sseq/linalg.hpp"

namespace sseq::detail {

nlohmann::json parse_text(std::string_view text);
std::string dump(const nlohmann::json& j);
[[noreturn]] void fail(const std::string& path, const std::string& what);
const nlohmann::json& member(const nlohmann::json& j, const std::string& key, const std::string& path);
int as_int(const nlohmann::json& j, const std::string& path);
std::string as_string(const nlohmann::json& j, const std::string& path);
Scalar as_scalar(Field f, const nlohmann::json& j, const std::string& path);
Field field_of(const nlohmann::json& j, std::optional<Field> given, const std::string& path);
nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(Field f, std::size_t dim, const nlohmann::json& j, const std::string& path);
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j, std::optional<Field> field, const std::string& path);

}  // namespace sseq::detail

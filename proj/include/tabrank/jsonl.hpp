#pragma once

#include <json.hpp>

#include <filesystem>
#include <functional>
#include <string>

#include "tabrank/records.hpp"

namespace tabrank {

/// Parse a JSON-lines file, invoking fn(line_number, object) per non-empty
/// line. Throws IoError naming the line number on malformed JSON.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn);

/// Fetch obj[key], throwing IoError naming the field and line when absent.
const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    std::size_t line);

/// Open for writing or throw IoError.
std::ofstream open_out(const std::filesystem::path& path);

}  // namespace tabrank

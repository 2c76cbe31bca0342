#include "tabrank/records.hpp"

#include <cmath>
#include <fstream>

#include "tabrank/jsonl.hpp"

namespace tabrank {

namespace {

double require_number(const nlohmann::json& obj, const char* key, std::size_t line) {
    const nlohmann::json& value = require_field(obj, key, line);
    if (!value.is_number()) {
        throw IoError("line " + std::to_string(line) + ": field '" + key +
                      "' is not a number");
    }
    double parsed = value.get<double>();
    if (!std::isfinite(parsed)) {
        throw IoError("line " + std::to_string(line) + ": field '" + key +
                      "' is not finite");
    }
    return parsed;
}

std::string require_string(const nlohmann::json& obj, const char* key,
                           std::size_t line) {
    const nlohmann::json& value = require_field(obj, key, line);
    if (!value.is_string()) {
        throw IoError("line " + std::to_string(line) + ": field '" + key +
                      "' is not a string");
    }
    return value.get<std::string>();
}

}  // namespace

std::vector<ComparisonRecord> load_records(const std::filesystem::path& path) {
    std::vector<ComparisonRecord> records;
    for_each_jsonl(path, [&](std::size_t line, const nlohmann::json& obj) {
        ComparisonRecord rec;
        rec.metric = require_string(obj, "metric", line);
        rec.paper_lo = require_string(obj, "paper_lo", line);
        rec.value_lo = require_number(obj, "value_lo", line);
        rec.paper_hi = require_string(obj, "paper_hi", line);
        rec.value_hi = require_number(obj, "value_hi", line);
        rec.reporter = require_string(obj, "reporter", line);
        records.push_back(std::move(rec));
    });
    return records;
}

void save_records(const std::vector<ComparisonRecord>& records,
                  const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    for (const ComparisonRecord& rec : records) {
        nlohmann::json obj{{"metric", rec.metric},
                           {"paper_lo", rec.paper_lo},
                           {"value_lo", rec.value_lo},
                           {"paper_hi", rec.paper_hi},
                           {"value_hi", rec.value_hi},
                           {"reporter", rec.reporter}};
        out << obj.dump() << '\n';
    }
}

}  // namespace tabrank

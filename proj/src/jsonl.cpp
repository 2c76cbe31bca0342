#include "tabrank/jsonl.hpp"

#include <fstream>

namespace tabrank {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(std::size_t, const nlohmann::json&)>& fn) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw IoError("cannot open " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded()) {
            throw IoError(path.string() + ": line " + std::to_string(line_no) +
                          ": malformed JSON");
        }
        fn(line_no, obj);
    }
}

const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                    std::size_t line) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        throw IoError("line " + std::to_string(line) + ": missing field '" +
                      key + "'");
    }
    return *it;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out.is_open()) {
        throw IoError("cannot write " + path.string());
    }
    return out;
}

}  // namespace tabrank

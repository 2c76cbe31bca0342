#include "tabrank/config.hpp"

#include <fstream>

#include "tabrank/jsonl.hpp"

namespace tabrank {

PipelineConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in.is_open()) {
        throw IoError("cannot open config " + path.string());
    }
    nlohmann::json obj = nlohmann::json::parse(in, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw IoError("config " + path.string() + " is not a JSON object");
    }

    PipelineConfig cfg;
    for (const auto& [key, value] : obj.items()) {
        if (key == "rei_threshold") {
            cfg.rei_threshold = value.get<double>();
        } else if (key == "aggregation") {
            auto scheme = scheme_from_string(value.get<std::string>());
            if (!scheme) throw IoError("config: unknown aggregation '" +
                                       value.get<std::string>() + "'");
            cfg.aggregation = *scheme;
        } else if (key == "dummy") {
            auto kind = dummy_kind_from_string(value.get<std::string>());
            if (!kind) throw IoError("config: unknown dummy mode '" +
                                     value.get<std::string>() + "'");
            cfg.dummy = *kind;
        } else if (key == "pagerank_alpha") {
            cfg.pagerank.alpha = value.get<double>();
        } else if (key == "pagerank_tol") {
            cfg.pagerank.tolerance = value.get<double>();
        } else if (key == "pagerank_max_iter") {
            cfg.pagerank.max_iterations = value.get<int>();
        } else if (key == "ranker") {
            auto ranker = ranker_from_string(value.get<std::string>());
            if (!ranker) throw IoError("config: unknown ranker '" +
                                       value.get<std::string>() + "'");
            cfg.ranker = *ranker;
        } else if (key == "k") {
            cfg.k = value.get<int>();
        } else if (key == "corpus") {
            cfg.corpus_path = value.get<std::string>();
        } else if (key == "records") {
            cfg.records_path = value.get<std::string>();
        } else if (key == "graph") {
            cfg.graph_path = value.get<std::string>();
        } else if (key == "truth") {
            cfg.truth_path = value.get<std::string>();
        } else {
            throw IoError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

}  // namespace tabrank

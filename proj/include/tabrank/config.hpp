#pragma once

#include <filesystem>
#include <string>

#include "tabrank/leaderboard.hpp"
#include "tabrank/rankers.hpp"
#include "tabrank/sanitize.hpp"

namespace tabrank {

/// Pipeline defaults: REI threshold 100%, SIG-average aggregation, no dummy,
/// PageRank at alpha 0.90, top-50 leaderboards.
struct PipelineConfig {
    double rei_threshold = 1.0;
    Scheme aggregation = Scheme::sig_avg;
    DummyKind dummy = DummyKind::none;
    PageRankConfig pagerank;
    RankerKind ranker = RankerKind::pagerank;
    int k = 50;
    std::string corpus_path;
    std::string records_path;
    std::string graph_path;
    std::string truth_path;
};

/// Load a flat key-value JSON object. Unknown keys are rejected (IoError).
PipelineConfig load_config(const std::filesystem::path& path);

}  // namespace tabrank

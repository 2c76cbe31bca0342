#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tabrank/graph.hpp"
#include "tabrank/rankers.hpp"
#include "tabrank/records.hpp"
#include "tabrank/sanitize.hpp"

namespace tabrank {

struct CorpusPaper {
    std::string title;
    std::string abstract;
    int year = 0;
};

/// Token index over titles and abstracts.
class CorpusIndex {
public:
    /// JSON-lines {paper_id, title, abstract, year}.
    static CorpusIndex load(const std::filesystem::path& path);

    void add(std::string paper_id, CorpusPaper paper);

    const std::map<std::string, CorpusPaper>& papers() const { return papers_; }

    /// Papers whose title or abstract contains the (lowercase) token.
    const std::set<std::string>* lookup(const std::string& token) const;

private:
    std::map<std::string, CorpusPaper> papers_;
    std::map<std::string, std::set<std::string>> token_index_;
};

/// Lowercase tokens split on non-alphanumerics.
std::vector<std::string> tokenize(std::string_view text);

/// Papers containing ALL query tokens in title or abstract (conjunctive).
/// A query with no alphanumeric tokens matches nothing.
std::set<std::string> find_candidates(std::string_view query, const CorpusIndex& index);

/// Node set = known candidates plus their direct neighbors; edge set = all
/// edges with both endpoints inside. Candidate ids absent from the graph are
/// skipped and counted into *unknown_count when given.
WeightedDigraph induce_subgraph(const WeightedDigraph& graph,
                                const std::set<std::string>& candidates,
                                std::size_t* unknown_count = nullptr);

struct LeaderboardEntry {
    int rank = 0;
    std::string paper_id;
    double score = 0.0;
};

struct RankedLeaderboard {
    std::string query;
    std::string scheme;  // ranker + aggregation tags
    std::vector<LeaderboardEntry> entries;
    int k = 0;
};

enum class RankerKind { pagerank, linear, exponential, sinks, cocitation, numeric };

std::string to_string(RankerKind kind);
std::optional<RankerKind> ranker_from_string(std::string_view name);

/// Extra inputs for rankers that do not run on the weighted digraph.
struct RankInputs {
    const std::vector<ComparisonRecord>* records = nullptr;   // cocitation
    const ImprovementGraph* improvement = nullptr;            // numeric comparison
};

/// Two-phase leaderboard generation: retrieve candidates for the query,
/// induce their tournament subgraph, rank, filter neighbors out, truncate to
/// top-k. Candidates unknown to the ranker are appended with score 0.
RankedLeaderboard generate(std::string_view query, RankerKind ranker, int k,
                           const CorpusIndex& corpus, const WeightedDigraph& graph,
                           const RankInputs& inputs = {},
                           const PageRankConfig& pr_cfg = {});

/// JSON-lines: header {query, scheme, k}, then {rank, paper_id, score} rows.
void save_leaderboard_json(const RankedLeaderboard& board,
                           const std::filesystem::path& path);
RankedLeaderboard load_leaderboard_json(const std::filesystem::path& path);

/// Aligned plain-text table.
std::string format_leaderboard_text(const RankedLeaderboard& board);

}  // namespace tabrank

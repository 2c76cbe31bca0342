#include "tabrank/leaderboard.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tabrank/jsonl.hpp"

namespace tabrank {

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

CorpusIndex CorpusIndex::load(const std::filesystem::path& path) {
    CorpusIndex index;
    for_each_jsonl(path, [&](std::size_t line, const nlohmann::json& obj) {
        std::string id = require_field(obj, "paper_id", line).get<std::string>();
        if (index.papers_.count(id)) {
            throw IoError("line " + std::to_string(line) + ": duplicate paper_id '" +
                          id + "'");
        }
        CorpusPaper paper;
        paper.title = require_field(obj, "title", line).get<std::string>();
        paper.abstract = require_field(obj, "abstract", line).get<std::string>();
        paper.year = require_field(obj, "year", line).get<int>();
        index.add(std::move(id), std::move(paper));
    });
    return index;
}

void CorpusIndex::add(std::string paper_id, CorpusPaper paper) {
    for (const std::string& token : tokenize(paper.title)) {
        token_index_[token].insert(paper_id);
    }
    for (const std::string& token : tokenize(paper.abstract)) {
        token_index_[token].insert(paper_id);
    }
    papers_[std::move(paper_id)] = std::move(paper);
}

const std::set<std::string>* CorpusIndex::lookup(const std::string& token) const {
    auto it = token_index_.find(token);
    return it == token_index_.end() ? nullptr : &it->second;
}

std::set<std::string> find_candidates(std::string_view query, const CorpusIndex& index) {
    std::vector<std::string> tokens = tokenize(query);
    if (tokens.empty()) return {};

    const std::set<std::string>* first = index.lookup(tokens.front());
    if (!first) return {};
    std::set<std::string> result = *first;
    for (std::size_t i = 1; i < tokens.size() && !result.empty(); ++i) {
        const std::set<std::string>* hits = index.lookup(tokens[i]);
        if (!hits) return {};
        std::set<std::string> narrowed;
        std::set_intersection(result.begin(), result.end(), hits->begin(), hits->end(),
                              std::inserter(narrowed, narrowed.begin()));
        result = std::move(narrowed);
    }
    return result;
}

WeightedDigraph induce_subgraph(const WeightedDigraph& graph,
                                const std::set<std::string>& candidates,
                                std::size_t* unknown_count) {
    std::set<std::string> kept;
    std::size_t unknown = 0;
    for (const std::string& id : candidates) {
        if (graph.nodes.count(id)) {
            kept.insert(id);
        } else {
            ++unknown;
        }
    }
    if (unknown_count) *unknown_count = unknown;

    std::set<std::string> closure = kept;
    for (const auto& [pair, weight] : graph.edges) {
        if (kept.count(pair.first)) closure.insert(pair.second);
        if (kept.count(pair.second)) closure.insert(pair.first);
    }

    WeightedDigraph induced;
    induced.scheme = graph.scheme;
    induced.nodes = closure;
    for (const auto& [pair, weight] : graph.edges) {
        if (closure.count(pair.first) && closure.count(pair.second)) {
            induced.edges.emplace(pair, weight);
        }
    }
    if (graph.dummy_id && closure.count(*graph.dummy_id)) {
        induced.dummy_id = graph.dummy_id;
    }
    return induced;
}

std::string to_string(RankerKind kind) {
    switch (kind) {
        case RankerKind::pagerank: return "pagerank";
        case RankerKind::linear: return "linear";
        case RankerKind::exponential: return "exponential";
        case RankerKind::sinks: return "sinks";
        case RankerKind::cocitation: return "cocitation";
        case RankerKind::numeric: return "numeric";
    }
    return "pagerank";
}

std::optional<RankerKind> ranker_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "pagerank") return RankerKind::pagerank;
    if (lower == "linear") return RankerKind::linear;
    if (lower == "exponential") return RankerKind::exponential;
    if (lower == "sinks") return RankerKind::sinks;
    if (lower == "cocitation") return RankerKind::cocitation;
    if (lower == "numeric") return RankerKind::numeric;
    return std::nullopt;
}

namespace {

Scores run_ranker(RankerKind ranker, const WeightedDigraph& induced,
                  const RankInputs& inputs, const PageRankConfig& pr_cfg) {
    switch (ranker) {
        case RankerKind::pagerank:
            return pagerank(induced, pr_cfg);
        case RankerKind::linear:
            return linear_tournament(to_match_stats(induced));
        case RankerKind::exponential:
            return exponential_tournament(to_match_stats(induced));
        case RankerKind::sinks:
            return sink_nodes(induced, pr_cfg);
        case RankerKind::cocitation: {
            std::vector<ComparisonRecord> scoped;
            if (inputs.records) {
                for (const ComparisonRecord& record : *inputs.records) {
                    if (induced.nodes.count(record.paper_lo) &&
                        induced.nodes.count(record.paper_hi)) {
                        scoped.push_back(record);
                    }
                }
            }
            return cocitation_rank(scoped);
        }
        case RankerKind::numeric: {
            ImprovementGraph scoped;
            if (inputs.improvement) {
                for (const std::string& node : inputs.improvement->nodes) {
                    if (induced.nodes.count(node)) scoped.nodes.insert(node);
                }
                for (const ImprovementEdge& edge : inputs.improvement->edges) {
                    if (induced.nodes.count(edge.worse) &&
                        induced.nodes.count(edge.better)) {
                        scoped.edges.push_back(edge);
                        scoped.metrics.insert(edge.metric);
                    }
                }
            }
            return numeric_comparison_rank(scoped);
        }
    }
    return pagerank(induced, pr_cfg);
}

}  // namespace

RankedLeaderboard generate(std::string_view query, RankerKind ranker, int k,
                           const CorpusIndex& corpus, const WeightedDigraph& graph,
                           const RankInputs& inputs, const PageRankConfig& pr_cfg) {
    RankedLeaderboard board;
    board.query = std::string(query);
    board.scheme = to_string(ranker) + "+" + to_string(graph.scheme);
    board.k = k;

    std::set<std::string> candidates = find_candidates(query, corpus);
    if (candidates.empty()) return board;

    WeightedDigraph induced = induce_subgraph(graph, candidates);
    Scores scores = run_ranker(ranker, induced, inputs, pr_cfg);

    // Neighbors shape the ranking but never appear in the output; candidates
    // the ranker has never seen are listed with a neutral score of 0.
    std::map<std::string, double> final_scores;
    for (const std::string& id : candidates) {
        auto it = scores.values.find(id);
        final_scores[id] = it == scores.values.end() ? 0.0 : it->second;
    }
    std::vector<std::string> order;
    for (const auto& [id, score] : final_scores) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](const std::string& a, const std::string& b) {
        double sa = final_scores.at(a), sb = final_scores.at(b);
        if (sa != sb) return sa > sb;
        return a < b;
    });

    int rank = 0;
    for (const std::string& id : order) {
        if (rank >= k) break;
        board.entries.push_back({++rank, id, final_scores.at(id)});
    }
    return board;
}

void save_leaderboard_json(const RankedLeaderboard& board,
                           const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    nlohmann::json header{
        {"query", board.query}, {"scheme", board.scheme}, {"k", board.k}};
    out << header.dump() << '\n';
    for (const LeaderboardEntry& entry : board.entries) {
        nlohmann::json obj{{"rank", entry.rank},
                           {"paper_id", entry.paper_id},
                           {"score", entry.score}};
        out << obj.dump() << '\n';
    }
}

RankedLeaderboard load_leaderboard_json(const std::filesystem::path& path) {
    RankedLeaderboard board;
    bool saw_header = false;
    for_each_jsonl(path, [&](std::size_t line, const nlohmann::json& obj) {
        if (!saw_header) {
            saw_header = true;
            board.query = require_field(obj, "query", line).get<std::string>();
            board.scheme = require_field(obj, "scheme", line).get<std::string>();
            board.k = require_field(obj, "k", line).get<int>();
            return;
        }
        LeaderboardEntry entry;
        entry.rank = require_field(obj, "rank", line).get<int>();
        entry.paper_id = require_field(obj, "paper_id", line).get<std::string>();
        entry.score = require_field(obj, "score", line).get<double>();
        board.entries.push_back(std::move(entry));
    });
    if (!saw_header) {
        throw IoError(path.string() + ": missing leaderboard header line");
    }
    return board;
}

std::string format_leaderboard_text(const RankedLeaderboard& board) {
    std::size_t id_width = std::string_view("paper_id").size();
    for (const LeaderboardEntry& entry : board.entries) {
        id_width = std::max(id_width, entry.paper_id.size());
    }
    std::ostringstream out;
    out << "# query: " << board.query << "\n# scheme: " << board.scheme
        << "\n# k: " << board.k << '\n';
    out << "rank  ";
    out << "paper_id" << std::string(id_width - 8, ' ') << "  score\n";
    for (const LeaderboardEntry& entry : board.entries) {
        std::string rank = std::to_string(entry.rank);
        out << rank << std::string(rank.size() < 4 ? 4 - rank.size() : 0, ' ') << "  ";
        out << entry.paper_id << std::string(id_width - entry.paper_id.size(), ' ')
            << "  ";
        nlohmann::json score = entry.score;  // shortest round-trip formatting
        out << score.dump() << '\n';
    }
    return out.str();
}

}  // namespace tabrank

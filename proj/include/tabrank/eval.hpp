#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace tabrank {

/// Organic leaderboard for one query; `relevant` is ordered best first.
struct GroundTruth {
    std::string query;
    std::string metric;
    std::vector<std::string> relevant;
};

/// JSON-lines {query, metric, relevant: [ids...]}.
std::vector<GroundTruth> load_ground_truth(const std::filesystem::path& path);

enum class RecallBasis { all_relevant, in_corpus_only };

/// |top-k of ranked ∩ relevant| / denominator. Default denominator is all
/// relevant papers; the in-corpus variant restricts it to `corpus` members.
/// Throws std::invalid_argument when the denominator is empty.
double recall_at_k(const std::vector<std::string>& ranked, const GroundTruth& truth,
                   int k);
double recall_at_k(const std::vector<std::string>& ranked, const GroundTruth& truth,
                   int k, const std::set<std::string>& corpus, RecallBasis basis);

/// Binary-relevance NDCG: DCG = sum_{i=1..k} rel_i / log2(i+1), normalized by
/// the DCG of min(k, |relevant|) leading hits.
double ndcg_at_k(const std::vector<std::string>& ranked, const GroundTruth& truth,
                 int k);

/// Average ranks (ties share the mean of their positions), 1-based.
std::vector<double> average_ranks(const std::vector<double>& values);

/// Spearman rank correlation over the papers common to both lists, computed
/// as the Pearson correlation of the rank vectors. Throws
/// std::invalid_argument with fewer than 2 common papers.
double spearman(const std::vector<std::string>& ranked,
                const std::vector<std::string>& truth_order);

}  // namespace tabrank

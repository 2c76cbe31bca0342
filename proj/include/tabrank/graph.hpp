#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tabrank/metrics.hpp"
#include "tabrank/records.hpp"

namespace tabrank {

/// One directed performance comparison: the lower-performing paper points
/// toward the better-performing one.
struct ImprovementEdge {
    std::string worse;
    std::string better;
    std::string metric;
    double score_worse = 0.0;
    double score_better = 0.0;
    std::string reporter;
    double rei = 0.0;  // relative edge improvement, always > 0

    bool operator==(const ImprovementEdge&) const = default;
};

/// Directed multigraph over papers; parallel and anti-parallel edges allowed.
struct ImprovementGraph {
    std::set<std::string> nodes;
    std::vector<ImprovementEdge> edges;
    std::set<std::string> metrics;
};

/// Why a record produced no edge.
enum class DropReason { none, tie, zero_denominator, self_comparison };

struct DropReport {
    std::size_t ties = 0;
    std::size_t zero_denominator = 0;
    std::size_t self_comparisons = 0;

    std::size_t total() const { return ties + zero_denominator + self_comparisons; }
};

/// Relative improvement of the better score over the worse one.
/// Benefit: (better - worse) / |worse|; cost: (worse - better) / |better|.
/// Returns nullopt when the denominator is exactly zero (undefined REI).
std::optional<double> compute_rei(double score_worse, double score_better,
                                  Polarity polarity);

struct OrientOutcome {
    std::optional<ImprovementEdge> edge;
    DropReason drop = DropReason::none;
};

/// Orient a record by metric polarity. Ties, zero denominators and
/// self-comparisons yield no edge, with the reason reported.
OrientOutcome orient(const ComparisonRecord& record, const MetricSpec& spec);

struct BuildResult {
    ImprovementGraph graph;
    DropReport drops;
};

/// Fold records into the raw improvement graph. V is the union of endpoints,
/// Z the union of metrics; degenerate records are counted, never fatal.
BuildResult build_raw_graph(const std::vector<ComparisonRecord>& records,
                            const MetricRegistry& registry);

/// Dump format: header {"nodes": count, "metrics": count, "node_ids": [...],
/// "metric_names": [...]}, then one JSON object per edge.
void save_improvement_graph(const ImprovementGraph& graph,
                            const std::filesystem::path& path);
ImprovementGraph load_improvement_graph(const std::filesystem::path& path);

}  // namespace tabrank

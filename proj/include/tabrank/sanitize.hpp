#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>

#include "tabrank/graph.hpp"

namespace tabrank {

/// Multi-edge aggregation schemes.
enum class Scheme { unw, all, sig_avg, sig_max };

std::string to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

/// Aggregated tournament graph: at most one weighted edge per ordered pair.
struct WeightedDigraph {
    std::set<std::string> nodes;
    std::map<std::pair<std::string, std::string>, double> edges;  // (worse, better) -> w
    Scheme scheme = Scheme::unw;
    std::optional<std::string> dummy_id;  // set only by add_dummy

    double weight(const std::string& worse, const std::string& better) const {
        auto it = edges.find({worse, better});
        return it == edges.end() ? 0.0 : it->second;
    }
};

enum class DummyKind { none, winner, loser };

struct DummyMode {
    DummyKind kind = DummyKind::none;
    std::string dummy_id = "__dummy__";
};

std::string to_string(DummyKind kind);
std::optional<DummyKind> dummy_kind_from_string(std::string_view name);

/// Keep exactly the edges with REI <= threshold ("larger than" is strict).
/// The node and metric sets are left untouched so isolated papers persist.
ImprovementGraph prune_outliers(const ImprovementGraph& graph, double threshold = 1.0);

/// 1 / (1 + e^-rei)
double sigmoid_weight(double rei);

/// Collapse parallel edges per ordered pair. Expects a pruned graph; this
/// operation does not re-prune.
WeightedDigraph aggregate(const ImprovementGraph& graph, Scheme scheme);

/// Attach a dummy winner (edge from every real node to the dummy) or loser
/// (the reverse), unit weight. Throws IoError if the dummy id collides.
WeightedDigraph add_dummy(const WeightedDigraph& graph, const DummyMode& mode);

/// Dump format: header {"scheme": str, "nodes": [sorted ids], "edges": count},
/// then one {"worse", "better", "weight"} object per edge.
void save_weighted_digraph(const WeightedDigraph& graph,
                           const std::filesystem::path& path);
WeightedDigraph load_weighted_digraph(const std::filesystem::path& path);

}  // namespace tabrank

#include "tabrank/graph.hpp"

#include <cmath>
#include <fstream>

#include "tabrank/jsonl.hpp"

namespace tabrank {

std::optional<double> compute_rei(double score_worse, double score_better,
                                  Polarity polarity) {
    // Positive gap over the magnitude of the reference score; the reference is
    // the worse score for benefit metrics and the better (smaller) cost for
    // cost metrics, so implausible gaps stay unbounded and prunable.
    double gap = polarity == Polarity::benefit ? score_better - score_worse
                                               : score_worse - score_better;
    double denom = polarity == Polarity::benefit ? score_worse : score_better;
    if (denom == 0.0) return std::nullopt;
    return gap / std::abs(denom);
}

OrientOutcome orient(const ComparisonRecord& record, const MetricSpec& spec) {
    if (record.paper_lo == record.paper_hi) {
        return {std::nullopt, DropReason::self_comparison};
    }
    if (record.value_lo == record.value_hi) {
        return {std::nullopt, DropReason::tie};
    }

    ImprovementEdge edge;
    edge.metric = spec.name;
    edge.reporter = record.reporter;
    if (spec.polarity == Polarity::benefit) {
        edge.worse = record.paper_lo;
        edge.score_worse = record.value_lo;
        edge.better = record.paper_hi;
        edge.score_better = record.value_hi;
    } else {
        edge.worse = record.paper_hi;  // the larger cost loses
        edge.score_worse = record.value_hi;
        edge.better = record.paper_lo;
        edge.score_better = record.value_lo;
    }

    auto rei = compute_rei(edge.score_worse, edge.score_better, spec.polarity);
    if (!rei) {
        return {std::nullopt, DropReason::zero_denominator};
    }
    edge.rei = *rei;
    return {edge, DropReason::none};
}

BuildResult build_raw_graph(const std::vector<ComparisonRecord>& records,
                            const MetricRegistry& registry) {
    BuildResult result;
    for (const ComparisonRecord& record : records) {
        MetricSpec spec = registry.resolve(registry.canonical(record.metric));
        OrientOutcome outcome = orient(record, spec);
        switch (outcome.drop) {
            case DropReason::tie: ++result.drops.ties; break;
            case DropReason::zero_denominator: ++result.drops.zero_denominator; break;
            case DropReason::self_comparison: ++result.drops.self_comparisons; break;
            case DropReason::none: break;
        }
        if (!outcome.edge) continue;
        result.graph.nodes.insert(outcome.edge->worse);
        result.graph.nodes.insert(outcome.edge->better);
        result.graph.metrics.insert(outcome.edge->metric);
        result.graph.edges.push_back(std::move(*outcome.edge));
    }
    return result;
}

void save_improvement_graph(const ImprovementGraph& graph,
                            const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    nlohmann::json header{
        {"nodes", graph.nodes.size()},
        {"metrics", graph.metrics.size()},
        {"node_ids", graph.nodes},
        {"metric_names", graph.metrics},
    };
    out << header.dump() << '\n';
    for (const ImprovementEdge& edge : graph.edges) {
        nlohmann::json obj{
            {"worse", edge.worse},         {"better", edge.better},
            {"metric", edge.metric},       {"score_worse", edge.score_worse},
            {"score_better", edge.score_better}, {"reporter", edge.reporter},
            {"rei", edge.rei},
        };
        out << obj.dump() << '\n';
    }
}

ImprovementGraph load_improvement_graph(const std::filesystem::path& path) {
    ImprovementGraph graph;
    bool saw_header = false;
    for_each_jsonl(path, [&](std::size_t line, const nlohmann::json& obj) {
        if (!saw_header) {
            saw_header = true;
            for (const auto& id : require_field(obj, "node_ids", line)) {
                graph.nodes.insert(id.get<std::string>());
            }
            for (const auto& name : require_field(obj, "metric_names", line)) {
                graph.metrics.insert(name.get<std::string>());
            }
            return;
        }
        ImprovementEdge edge;
        edge.worse = require_field(obj, "worse", line).get<std::string>();
        edge.better = require_field(obj, "better", line).get<std::string>();
        edge.metric = require_field(obj, "metric", line).get<std::string>();
        edge.score_worse = require_field(obj, "score_worse", line).get<double>();
        edge.score_better = require_field(obj, "score_better", line).get<double>();
        edge.reporter = require_field(obj, "reporter", line).get<std::string>();
        edge.rei = require_field(obj, "rei", line).get<double>();
        graph.nodes.insert(edge.worse);
        graph.nodes.insert(edge.better);
        graph.metrics.insert(edge.metric);
        graph.edges.push_back(std::move(edge));
    });
    if (!saw_header) {
        throw IoError(path.string() + ": missing graph header line");
    }
    return graph;
}

}  // namespace tabrank

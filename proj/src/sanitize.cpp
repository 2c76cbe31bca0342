#include "tabrank/sanitize.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "tabrank/jsonl.hpp"

namespace tabrank {

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::unw: return "UNW";
        case Scheme::all: return "ALL";
        case Scheme::sig_avg: return "SIG_AVG";
        case Scheme::sig_max: return "SIG_MAX";
    }
    return "UNW";
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
    std::string upper(name);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return std::toupper(c); });
    if (upper == "UNW") return Scheme::unw;
    if (upper == "ALL") return Scheme::all;
    if (upper == "SIG_AVG" || upper == "SIG-AVG") return Scheme::sig_avg;
    if (upper == "SIG_MAX" || upper == "SIG-MAX") return Scheme::sig_max;
    return std::nullopt;
}

std::string to_string(DummyKind kind) {
    switch (kind) {
        case DummyKind::none: return "none";
        case DummyKind::winner: return "winner";
        case DummyKind::loser: return "loser";
    }
    return "none";
}

std::optional<DummyKind> dummy_kind_from_string(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "none") return DummyKind::none;
    if (lower == "winner") return DummyKind::winner;
    if (lower == "loser") return DummyKind::loser;
    return std::nullopt;
}

ImprovementGraph prune_outliers(const ImprovementGraph& graph, double threshold) {
    ImprovementGraph pruned;
    pruned.nodes = graph.nodes;      // isolated nodes persist
    pruned.metrics = graph.metrics;
    pruned.edges.reserve(graph.edges.size());
    for (const ImprovementEdge& edge : graph.edges) {
        if (edge.rei <= threshold) pruned.edges.push_back(edge);
    }
    return pruned;
}

double sigmoid_weight(double rei) {
    return 1.0 / (1.0 + std::exp(-rei));
}

WeightedDigraph aggregate(const ImprovementGraph& graph, Scheme scheme) {
    WeightedDigraph out;
    out.nodes = graph.nodes;
    out.scheme = scheme;

    std::map<std::pair<std::string, std::string>, std::vector<double>> reis;
    for (const ImprovementEdge& edge : graph.edges) {
        reis[{edge.worse, edge.better}].push_back(edge.rei);
    }
    for (const auto& [pair, values] : reis) {
        double weight = 0.0;
        switch (scheme) {
            case Scheme::unw:
                weight = 1.0;
                break;
            case Scheme::all:
                weight = static_cast<double>(values.size());
                break;
            case Scheme::sig_max:
                for (double rei : values) weight = std::max(weight, sigmoid_weight(rei));
                break;
            case Scheme::sig_avg: {
                double sum = 0.0;
                for (double rei : values) sum += sigmoid_weight(rei);
                weight = sum / static_cast<double>(values.size());
                break;
            }
        }
        out.edges.emplace(pair, weight);
    }
    return out;
}

WeightedDigraph add_dummy(const WeightedDigraph& graph, const DummyMode& mode) {
    if (mode.kind == DummyKind::none) {
        throw IoError("add_dummy requires a winner or loser mode");
    }
    if (graph.nodes.count(mode.dummy_id)) {
        throw IoError("dummy id '" + mode.dummy_id + "' collides with a real node");
    }
    WeightedDigraph out = graph;
    for (const std::string& node : graph.nodes) {
        if (mode.kind == DummyKind::winner) {
            out.edges.emplace(std::pair{node, mode.dummy_id}, 1.0);
        } else {
            out.edges.emplace(std::pair{mode.dummy_id, node}, 1.0);
        }
    }
    out.nodes.insert(mode.dummy_id);
    out.dummy_id = mode.dummy_id;
    return out;
}

void save_weighted_digraph(const WeightedDigraph& graph,
                           const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    nlohmann::json header{
        {"scheme", to_string(graph.scheme)},
        {"nodes", graph.nodes},
        {"edges", graph.edges.size()},
    };
    if (graph.dummy_id) header["dummy_id"] = *graph.dummy_id;
    out << header.dump() << '\n';
    for (const auto& [pair, weight] : graph.edges) {
        nlohmann::json obj{
            {"worse", pair.first}, {"better", pair.second}, {"weight", weight}};
        out << obj.dump() << '\n';
    }
}

WeightedDigraph load_weighted_digraph(const std::filesystem::path& path) {
    WeightedDigraph graph;
    bool saw_header = false;
    for_each_jsonl(path, [&](std::size_t line, const nlohmann::json& obj) {
        if (!saw_header) {
            saw_header = true;
            std::string scheme = require_field(obj, "scheme", line).get<std::string>();
            auto parsed = scheme_from_string(scheme);
            if (!parsed) {
                throw IoError("line " + std::to_string(line) +
                              ": unknown scheme '" + scheme + "'");
            }
            graph.scheme = *parsed;
            for (const auto& id : require_field(obj, "nodes", line)) {
                graph.nodes.insert(id.get<std::string>());
            }
            if (obj.contains("dummy_id")) {
                graph.dummy_id = obj["dummy_id"].get<std::string>();
            }
            return;
        }
        std::string worse = require_field(obj, "worse", line).get<std::string>();
        std::string better = require_field(obj, "better", line).get<std::string>();
        double weight = require_field(obj, "weight", line).get<double>();
        if (!(weight > 0.0) || !std::isfinite(weight)) {
            throw IoError("line " + std::to_string(line) +
                          ": edge weight must be a positive finite number");
        }
        graph.nodes.insert(worse);
        graph.nodes.insert(better);
        graph.edges.emplace(std::pair{std::move(worse), std::move(better)}, weight);
    });
    if (!saw_header) {
        throw IoError(path.string() + ": missing graph header line");
    }
    return graph;
}

}  // namespace tabrank

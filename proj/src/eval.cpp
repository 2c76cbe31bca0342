#include "tabrank/eval.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "tabrank/jsonl.hpp"

namespace tabrank {

std::vector<GroundTruth> load_ground_truth(const std::filesystem::path& path) {
    std::vector<GroundTruth> out;
    for_each_jsonl(path, [&](std::size_t line, const nlohmann::json& obj) {
        GroundTruth truth;
        truth.query = require_field(obj, "query", line).get<std::string>();
        truth.metric = require_field(obj, "metric", line).get<std::string>();
        for (const auto& id : require_field(obj, "relevant", line)) {
            truth.relevant.push_back(id.get<std::string>());
        }
        out.push_back(std::move(truth));
    });
    return out;
}

namespace {

double recall_impl(const std::vector<std::string>& ranked,
                   const std::set<std::string>& relevant, int k) {
    if (relevant.empty()) {
        throw std::invalid_argument("recall_at_k: empty relevant set");
    }
    std::size_t limit = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
    std::set<std::string> hits;
    for (std::size_t i = 0; i < limit; ++i) {
        if (relevant.count(ranked[i])) hits.insert(ranked[i]);
    }
    return static_cast<double>(hits.size()) / static_cast<double>(relevant.size());
}

}  // namespace

double recall_at_k(const std::vector<std::string>& ranked, const GroundTruth& truth,
                   int k) {
    std::set<std::string> relevant(truth.relevant.begin(), truth.relevant.end());
    return recall_impl(ranked, relevant, k);
}

double recall_at_k(const std::vector<std::string>& ranked, const GroundTruth& truth,
                   int k, const std::set<std::string>& corpus, RecallBasis basis) {
    std::set<std::string> relevant(truth.relevant.begin(), truth.relevant.end());
    if (basis == RecallBasis::in_corpus_only) {
        std::set<std::string> present;
        for (const std::string& id : relevant) {
            if (corpus.count(id)) present.insert(id);
        }
        relevant = std::move(present);
    }
    return recall_impl(ranked, relevant, k);
}

double ndcg_at_k(const std::vector<std::string>& ranked, const GroundTruth& truth,
                 int k) {
    if (truth.relevant.empty()) {
        throw std::invalid_argument("ndcg_at_k: empty relevant set");
    }
    std::set<std::string> relevant(truth.relevant.begin(), truth.relevant.end());
    std::size_t limit = std::min<std::size_t>(ranked.size(), static_cast<std::size_t>(k));
    double dcg = 0.0;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < limit; ++i) {
        if (relevant.count(ranked[i]) && seen.insert(ranked[i]).second) {
            dcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
        }
    }
    std::size_t ideal_hits = std::min<std::size_t>(relevant.size(),
                                                   static_cast<std::size_t>(k));
    double idcg = 0.0;
    for (std::size_t i = 0; i < ideal_hits; ++i) {
        idcg += 1.0 / std::log2(static_cast<double>(i) + 2.0);
    }
    return dcg / idcg;
}

std::vector<double> average_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[idx[j + 1]] == values[idx[i]]) ++j;
        double mean_rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[idx[t]] = mean_rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(const std::vector<std::string>& ranked,
                const std::vector<std::string>& truth_order) {
    std::map<std::string, double> pos_ranked, pos_truth;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        pos_ranked.emplace(ranked[i], static_cast<double>(i + 1));
    }
    for (std::size_t i = 0; i < truth_order.size(); ++i) {
        pos_truth.emplace(truth_order[i], static_cast<double>(i + 1));
    }

    // Positions restricted to the common papers, in ranked-list order.
    std::vector<double> xs, ys;
    for (const std::string& id : ranked) {
        auto it = pos_truth.find(id);
        if (it == pos_truth.end()) continue;
        xs.push_back(pos_ranked.at(id));
        ys.push_back(it->second);
    }
    if (xs.size() < 2) {
        throw std::invalid_argument("spearman: fewer than 2 common papers");
    }

    std::vector<double> rx = average_ranks(xs);
    std::vector<double> ry = average_ranks(ys);
    const double n = static_cast<double>(rx.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= n;
    my /= n;
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) {
        throw std::invalid_argument("spearman: degenerate rank vector");
    }
    return cov / std::sqrt(vx * vy);
}

}  // namespace tabrank

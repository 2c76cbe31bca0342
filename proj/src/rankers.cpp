#include "tabrank/rankers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "tabrank/jsonl.hpp"

namespace tabrank {

namespace {

double logistic(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

// Default deterministic order: score desc, paper id asc.
void sort_by_score(std::vector<std::string>& ids,
                   const std::map<std::string, double>& values) {
    std::sort(ids.begin(), ids.end(), [&](const std::string& a, const std::string& b) {
        double sa = values.at(a), sb = values.at(b);
        if (sa != sb) return sa > sb;
        return a < b;
    });
}

// Assemble Scores from per-team values, stripping the dummy node when present.
Scores make_scores(const std::vector<std::string>& teams, const Eigen::VectorXd& values,
                   const std::optional<std::string>& dummy_id, std::string scheme,
                   Diagnostics diagnostics) {
    Scores scores;
    scores.scheme = std::move(scheme);
    scores.diagnostics = diagnostics;
    for (std::size_t i = 0; i < teams.size(); ++i) {
        if (dummy_id && teams[i] == *dummy_id) continue;
        scores.values[teams[i]] = values(static_cast<Eigen::Index>(i));
    }
    for (const auto& [id, value] : scores.values) scores.order.push_back(id);
    sort_by_score(scores.order, scores.values);
    return scores;
}

}  // namespace

Eigen::VectorXd MatchStats::mean_dominance() const {
    Eigen::VectorXd net = dominance().rowwise().sum();
    Eigen::VectorXd played = matches.rowwise().sum();
    Eigen::VectorXd out(net.size());
    for (Eigen::Index i = 0; i < net.size(); ++i) {
        out(i) = played(i) > 0.0 ? net(i) / played(i) : 0.0;
    }
    return out;
}

MatchStats to_match_stats(const WeightedDigraph& graph) {
    MatchStats stats;
    stats.teams.assign(graph.nodes.begin(), graph.nodes.end());
    stats.dummy_id = graph.dummy_id;
    const Eigen::Index n = static_cast<Eigen::Index>(stats.teams.size());
    stats.matches = Eigen::MatrixXd::Zero(n, n);
    stats.wins = Eigen::MatrixXd::Zero(n, n);

    std::map<std::string, Eigen::Index> index;
    for (Eigen::Index i = 0; i < n; ++i) index[stats.teams[i]] = i;

    // Edge worse -> better with weight w means `better` won w matches.
    for (const auto& [pair, weight] : graph.edges) {
        Eigen::Index loser = index.at(pair.first);
        Eigen::Index winner = index.at(pair.second);
        stats.wins(winner, loser) += weight;
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            stats.matches(i, j) = i == j ? 1.0 : stats.wins(i, j) + stats.wins(j, i);
        }
    }
    return stats;
}

Scores linear_tournament(const MatchStats& stats, int max_terms, double tol) {
    const Eigen::Index n = static_cast<Eigen::Index>(stats.size());
    if (n == 0) {
        return make_scores({}, Eigen::VectorXd(), std::nullopt, "linear", {});
    }

    Eigen::MatrixXd row_normalized = stats.matches;
    for (Eigen::Index i = 0; i < n; ++i) {
        double total = stats.matches.row(i).sum();
        if (total > 0.0) row_normalized.row(i) /= total;
    }
    Eigen::VectorXd mean_dom = stats.mean_dominance();

    Eigen::VectorXd sum = mean_dom;  // t = 0 term
    Diagnostics diag;
    diag.converged = false;
    for (int term = 1; term <= max_terms; ++term) {
        Eigen::VectorXd next = mean_dom + row_normalized * sum;
        double change = (next - sum).cwiseAbs().maxCoeff();
        sum = std::move(next);
        diag.iterations = term;
        diag.residual = change;
        if (change < tol) {
            diag.converged = true;
            break;
        }
    }
    // The series has no convergence guarantee; the last partial sum is still
    // a usable ranking and the flag records what happened.
    return make_scores(stats.teams, sum, stats.dummy_id, "linear", diag);
}

Scores exponential_tournament(const MatchStats& stats, double lr, int max_iter,
                              double tol) {
    const Eigen::Index n = static_cast<Eigen::Index>(stats.size());
    if (n == 0) {
        return make_scores({}, Eigen::VectorXd(), std::nullopt, "exponential", {});
    }

    // Observed win totals; self entries of R are zero by construction, and the
    // modeled totals likewise skip the self dummy match.
    Eigen::VectorXd observed = stats.wins.rowwise().sum();
    Eigen::VectorXd values = Eigen::VectorXd::Zero(n);

    auto modeled = [&](const Eigen::VectorXd& v) {
        Eigen::VectorXd rho = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j) continue;
                rho(i) += stats.matches(i, j) * logistic(v(i) - v(j));
            }
        }
        return rho;
    };

    Diagnostics diag;
    diag.converged = false;
    constexpr double kValueClamp = 20.0;

    // Steepest descent is stable only below 2/L where L ~ 2 (row_bound/4)^2
    // bounds the curvature of the squared residual; lr is taken relative to
    // that bound. For the canonical 2-team, 4-match instance the scale is
    // exactly 1, so lr = 0.1 behaves literally there.
    double row_bound = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        row_bound = std::max(row_bound, stats.matches.row(i).sum() - 1.0);
    }
    const double step_scale = lr * 16.0 / std::max(16.0, row_bound * row_bound);

    for (int iter = 1; iter <= max_iter; ++iter) {
        Eigen::VectorXd rho = modeled(values);
        Eigen::VectorXd error = observed - rho;
        Eigen::VectorXd gradient = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) {
                if (i == j) continue;
                double p = logistic(values(i) - values(j));
                double slope = stats.matches(i, j) * p * (1.0 - p);
                gradient(i) += -2.0 * slope * (error(i) - error(j));
            }
        }
        Eigen::VectorXd next = values - step_scale * gradient;
        next = next.cwiseMax(-kValueClamp).cwiseMin(kValueClamp);
        next.array() -= next.mean();  // keep sum v = 0
        double step = (next - values).cwiseAbs().maxCoeff();
        values = std::move(next);
        diag.iterations = iter;
        if (step < tol) {
            diag.converged = true;
            break;
        }
    }
    diag.residual = (observed - modeled(values)).cwiseAbs().maxCoeff();

    // log of prod_j p_ij: same order, no underflow.
    Eigen::VectorXd scores = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            if (i == j) continue;
            scores(i) += std::log(logistic(values(i) - values(j)));
        }
    }
    Scores out = make_scores(stats.teams, scores, stats.dummy_id, "exponential", diag);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (stats.dummy_id && stats.teams[i] == *stats.dummy_id) continue;
        out.fitted_values[stats.teams[i]] = values(i);
    }
    return out;
}

Scores pagerank(const WeightedDigraph& graph, const PageRankConfig& cfg) {
    std::vector<std::string> nodes(graph.nodes.begin(), graph.nodes.end());
    const std::size_t n = nodes.size();
    Scores out;
    out.scheme = "pagerank";
    if (n == 0) return out;

    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < n; ++i) index[nodes[i]] = i;

    struct InEdge {
        std::size_t source;
        double weight;
    };
    std::vector<std::vector<InEdge>> incoming(n);
    std::vector<double> out_weight(n, 0.0);
    for (const auto& [pair, weight] : graph.edges) {
        std::size_t u = index.at(pair.first);
        std::size_t v = index.at(pair.second);
        incoming[v].push_back({u, weight});
        out_weight[u] += weight;
    }

    const double inv_n = 1.0 / static_cast<double>(n);
    std::vector<double> rank(n, inv_n);
    std::vector<double> next(n, 0.0);
    Diagnostics diag;
    diag.converged = false;
    for (int iter = 1; iter <= cfg.max_iterations; ++iter) {
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            if (out_weight[u] == 0.0) dangling += rank[u];
        }
        double base = (1.0 - cfg.alpha) * inv_n + cfg.alpha * dangling * inv_n;
        double change = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            double mass = 0.0;
            for (const InEdge& e : incoming[v]) {
                mass += rank[e.source] * e.weight / out_weight[e.source];
            }
            next[v] = base + cfg.alpha * mass;
            change += std::abs(next[v] - rank[v]);
        }
        rank.swap(next);
        diag.iterations = iter;
        diag.residual = change;
        if (change < cfg.tolerance) {
            diag.converged = true;
            break;
        }
    }

    double total = std::accumulate(rank.begin(), rank.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (graph.dummy_id && nodes[i] == *graph.dummy_id) continue;
        out.values[nodes[i]] = rank[i];
    }
    if (graph.dummy_id) {
        // Renormalize the real nodes so scores still sum to 1.
        total = 0.0;
        for (const auto& [id, value] : out.values) total += value;
    }
    if (total > 0.0) {
        for (auto& [id, value] : out.values) value /= total;
    }
    out.diagnostics = diag;
    for (const auto& [id, value] : out.values) out.order.push_back(id);
    sort_by_score(out.order, out.values);
    return out;
}

Scores sink_nodes(const WeightedDigraph& graph, const PageRankConfig& cfg) {
    Scores out;
    out.scheme = "sinks";
    if (graph.nodes.empty()) return out;

    std::map<std::string, double> out_degree;
    for (const std::string& node : graph.nodes) out_degree[node] = 0.0;
    for (const auto& [pair, weight] : graph.edges) out_degree[pair.first] += weight;

    Scores pr = pagerank(graph, cfg);
    for (const std::string& node : graph.nodes) {
        if (graph.dummy_id && node == *graph.dummy_id) continue;
        out.values[node] = out_degree[node] == 0.0 ? 1.0 : 0.0;
        out.order.push_back(node);
    }
    std::sort(out.order.begin(), out.order.end(),
              [&](const std::string& a, const std::string& b) {
                  double sa = out.values.at(a), sb = out.values.at(b);
                  if (sa != sb) return sa > sb;
                  auto pa = pr.values.find(a);
                  auto pb = pr.values.find(b);
                  double ra = pa == pr.values.end() ? 0.0 : pa->second;
                  double rb = pb == pr.values.end() ? 0.0 : pb->second;
                  if (ra != rb) return ra > rb;
                  return a < b;
              });
    out.diagnostics = pr.diagnostics;
    return out;
}

Scores cocitation_rank(const std::vector<ComparisonRecord>& records) {
    Scores out;
    out.scheme = "cocitation";
    std::map<std::string, std::set<std::string>> partners;
    std::map<std::string, std::size_t> multiplicity;
    for (const ComparisonRecord& record : records) {
        if (record.paper_lo == record.paper_hi) continue;
        partners[record.paper_lo].insert(record.paper_hi);
        partners[record.paper_hi].insert(record.paper_lo);
        ++multiplicity[record.paper_lo];
        ++multiplicity[record.paper_hi];
    }
    for (const auto& [id, set] : partners) {
        out.values[id] = static_cast<double>(set.size());
        out.order.push_back(id);
    }
    std::sort(out.order.begin(), out.order.end(),
              [&](const std::string& a, const std::string& b) {
                  double sa = out.values.at(a), sb = out.values.at(b);
                  if (sa != sb) return sa > sb;
                  std::size_t ma = multiplicity.at(a), mb = multiplicity.at(b);
                  if (ma != mb) return ma > mb;
                  return a < b;
              });
    return out;
}

Scores numeric_comparison_rank(const ImprovementGraph& graph) {
    Scores out;
    out.scheme = "numeric";
    for (const std::string& node : graph.nodes) out.values[node] = 0.0;
    for (const ImprovementEdge& edge : graph.edges) {
        out.values[edge.better] += 1.0;  // a win: incoming edge
        out.values[edge.worse] -= 1.0;   // a loss: outgoing edge
    }
    for (const auto& [id, value] : out.values) out.order.push_back(id);
    sort_by_score(out.order, out.values);
    return out;
}

void save_scores(const Scores& scores, const std::filesystem::path& path) {
    std::ofstream out = open_out(path);
    int rank = 0;
    for (const std::string& id : scores.order) {
        nlohmann::json obj{
            {"paper_id", id}, {"score", scores.values.at(id)}, {"rank", ++rank}};
        out << obj.dump() << '\n';
    }
    nlohmann::json diag{{"diagnostics",
                         {{"scheme", scores.scheme},
                          {"iterations", scores.diagnostics.iterations},
                          {"residual", scores.diagnostics.residual},
                          {"converged", scores.diagnostics.converged}}}};
    out << diag.dump() << '\n';
}

}  // namespace tabrank

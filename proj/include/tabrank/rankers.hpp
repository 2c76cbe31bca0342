#pragma once

#include <Eigen/Dense>

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tabrank/graph.hpp"
#include "tabrank/records.hpp"
#include "tabrank/sanitize.hpp"

namespace tabrank {

/// Incomplete-tournament view of a weighted digraph. matches(i,j) is the
/// number of matches between teams i and j (symmetric, self entries fixed to
/// one dummy match); wins(i,j) the matches i won over j.
struct MatchStats {
    std::vector<std::string> teams;  // sorted paper ids; indexes the matrices
    Eigen::MatrixXd matches;         // M
    Eigen::MatrixXd wins;            // R, r_ij + r_ji = m_ij for i != j
    std::optional<std::string> dummy_id;  // carried over from the source graph

    std::size_t size() const { return teams.size(); }

    /// d_ij = r_ij - r_ji (antisymmetric).
    Eigen::MatrixXd dominance() const { return wins - wins.transpose(); }

    /// dbar_i = sum_j d_ij / sum_j m_ij.
    Eigen::VectorXd mean_dominance() const;
};

MatchStats to_match_stats(const WeightedDigraph& graph);

struct Diagnostics {
    int iterations = 0;
    double residual = 0.0;
    bool converged = true;
};

/// Ranker output. `order` is the deterministic ranking (best first); for most
/// rankers it is (score desc, paper id asc), sink/cocitation rankers document
/// their extra tie-break keys. A dummy node never appears here.
struct Scores {
    std::map<std::string, double> values;
    std::vector<std::string> order;
    std::string scheme;
    Diagnostics diagnostics;
    /// Latent model parameters where the ranker fits one (exponential
    /// tournament team values v with sum v = 0); empty otherwise.
    std::map<std::string, double> fitted_values;
};

struct PageRankConfig {
    double alpha = 0.90;
    double tolerance = 1e-10;  // L1
    int max_iterations = 200;
};

/// Partial sums of sum_t Mbar^t * dbar via s <- dbar + Mbar s, where Mbar is
/// the row-normalized match matrix. The series may diverge; the last partial
/// sum is returned either way, flagged through the diagnostics.
Scores linear_tournament(const MatchStats& stats, int max_terms = 100,
                         double tol = 1e-9);

/// Fits team values v (sum v = 0) so the modeled win totals
/// rho_i = sum_{j!=i} m_ij / (1 + exp(v_j - v_i)) match the observed ones,
/// by fixed-rate gradient descent on the squared residual.
/// score_i = sum_{j!=i} ln p_ij with p_ij = 1/(1 + exp(v_j - v_i)).
Scores exponential_tournament(const MatchStats& stats, double lr = 0.1,
                              int max_iter = 5000, double tol = 1e-8);

/// Weighted PageRank with uniform teleport; a node spreads its mass along
/// out-edges proportionally to weight, dangling mass is spread uniformly.
Scores pagerank(const WeightedDigraph& graph, const PageRankConfig& cfg = {});

/// Out-degree-zero nodes score 1, the rest 0; ties within each class are
/// broken by PageRank score, then paper id.
Scores sink_nodes(const WeightedDigraph& graph, const PageRankConfig& cfg = {});

/// Papers are linked when some reporting paper compares them; score is the
/// number of distinct cocitation partners, ties broken by total cocitation
/// multiplicity, then paper id.
Scores cocitation_rank(const std::vector<ComparisonRecord>& records);

/// Net wins over raw multi-edges: in-degree minus out-degree.
Scores numeric_comparison_rank(const ImprovementGraph& graph);

/// Dump: {"paper_id", "score", "rank"} lines sorted by rank, then a final
/// {"diagnostics": {...}} line.
void save_scores(const Scores& scores, const std::filesystem::path& path);

}  // namespace tabrank

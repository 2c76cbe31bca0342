// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 6, 8 and 9 drive the CLI binary named by TABRANK_CLI;
// criterion 6 reads fixtures from TABRANK_FIXTURES.

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tabrank/eval.hpp"
#include "tabrank/graph.hpp"
#include "tabrank/latex.hpp"
#include "tabrank/leaderboard.hpp"
#include "tabrank/rankers.hpp"
#include "tabrank/records.hpp"
#include "tabrank/sanitize.hpp"

namespace fs = std::filesystem;
using namespace tabrank;
using Clock = std::chrono::steady_clock;

namespace {

struct Check {
    bool ok = true;
    std::string detail;

    void expect(bool condition, const std::string& message) {
        if (!condition && ok) {
            ok = false;
            detail = message;
        }
    }
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string getenv_or(const char* name, const std::string& fallback) {
    const char* value = std::getenv(name);
    return value ? value : fallback;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& log) {
    std::string command = "\"" + cli + "\" " + args + " 2>> \"" + log.string() + "\"";
    return std::system(command.c_str());
}

std::string node_name(int i) {
    std::ostringstream out;
    out << "n" << (i < 10 ? "0" : "") << i;
    return out.str();
}

WeightedDigraph random_graph(unsigned seed, int n, double edge_prob) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_real_distribution<double> weight(0.0, 1.0);
    WeightedDigraph g;
    for (int i = 0; i < n; ++i) g.nodes.insert(node_name(i));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (coin(rng) < edge_prob) {
                double w = weight(rng);
                if (w <= 0.0) w = 0.5;
                g.edges[{node_name(i), node_name(j)}] = w;
            }
        }
    }
    return g;
}

std::map<std::string, double> dense_pagerank_oracle(const WeightedDigraph& g,
                                                    double alpha) {
    std::vector<std::string> nodes(g.nodes.begin(), g.nodes.end());
    const Eigen::Index n = static_cast<Eigen::Index>(nodes.size());
    std::map<std::string, Eigen::Index> index;
    for (Eigen::Index i = 0; i < n; ++i) index[nodes[i]] = i;

    Eigen::MatrixXd transition = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd out_weight = Eigen::VectorXd::Zero(n);
    for (const auto& [pair, w] : g.edges) out_weight(index.at(pair.first)) += w;
    for (const auto& [pair, w] : g.edges) {
        transition(index.at(pair.first), index.at(pair.second)) =
            w / out_weight(index.at(pair.first));
    }
    for (Eigen::Index u = 0; u < n; ++u) {
        if (out_weight(u) == 0.0) transition.row(u).setConstant(1.0 / double(n));
    }
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / double(n));
    for (int iter = 0; iter < 20000; ++iter) {
        Eigen::VectorXd next = alpha * (transition.transpose() * x);
        next.array() += (1.0 - alpha) / double(n);
        double change = (next - x).cwiseAbs().sum();
        x = next;
        if (change < 1e-14) break;
    }
    x /= x.sum();
    std::map<std::string, double> out;
    for (Eigen::Index i = 0; i < n; ++i) out[nodes[i]] = x(i);
    return out;
}

double kendall_tau(const std::vector<std::string>& produced,
                   const std::vector<std::string>& planted) {
    std::map<std::string, int> pos;
    for (std::size_t i = 0; i < planted.size(); ++i) pos[planted[i]] = int(i);
    long concordant = 0, discordant = 0;
    for (std::size_t i = 0; i < produced.size(); ++i) {
        for (std::size_t j = i + 1; j < produced.size(); ++j) {
            int pi = pos.at(produced[i]), pj = pos.at(produced[j]);
            (pi < pj ? concordant : discordant) += 1;
        }
    }
    return double(concordant - discordant) / double(concordant + discordant);
}

// ---------------------------------------------------------------------------
// 1. PageRank oracle equivalence on 50 seeded random graphs.
Check criterion_pagerank_oracle() {
    Check check;
    auto start = Clock::now();
    for (unsigned seed = 0; seed < 50; ++seed) {
        WeightedDigraph g = random_graph(seed, 20, 0.2);
        Scores scores = pagerank(g, PageRankConfig{0.90, 1e-10, 200});
        auto oracle = dense_pagerank_oracle(g, 0.90);
        double l1 = 0.0;
        for (const auto& [id, value] : oracle) l1 += std::abs(value - scores.values.at(id));
        check.expect(l1 < 1e-8, "seed " + std::to_string(seed) + ": L1 " +
                                    std::to_string(l1) + " >= 1e-8");
    }
    double elapsed = seconds_since(start);
    check.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + "s >= 5s");
    return check;
}

// 2. PageRank invariances: mass, scaling, symmetric 2-cycle.
Check criterion_pagerank_invariances() {
    Check check;
    for (unsigned seed = 0; seed < 50; ++seed) {
        WeightedDigraph g = random_graph(seed, 20, 0.2);
        Scores scores = pagerank(g);
        double sum = 0.0;
        for (const auto& [id, value] : scores.values) sum += value;
        check.expect(std::abs(sum - 1.0) < 1e-8,
                     "seed " + std::to_string(seed) + ": score sum " + std::to_string(sum));

        WeightedDigraph scaled = g;
        for (auto& [pair, weight] : scaled.edges) weight *= 7.3;
        Scores rescored = pagerank(scaled);
        check.expect(rescored.order == scores.order,
                     "seed " + std::to_string(seed) + ": ranking changed under x7.3");
    }

    WeightedDigraph cycle;
    cycle.nodes = {"u", "v"};
    cycle.edges[{"u", "v"}] = 1.0;
    cycle.edges[{"v", "u"}] = 1.0;
    Scores scores = pagerank(cycle);
    check.expect(std::abs(scores.values.at("u") - 0.5) < 1e-10 &&
                     std::abs(scores.values.at("v") - 0.5) < 1e-10,
                 "2-cycle not 0.5/0.5 within 1e-10");
    return check;
}

// 3. Exponential tournament closed form and model identities.
Check criterion_exponential() {
    Check check;
    auto start = Clock::now();

    auto verify_identities = [&](const Scores& scores) {
        double v_sum = 0.0;
        for (const auto& [id, v] : scores.fitted_values) v_sum += v;
        check.expect(std::abs(v_sum) < 1e-10, "sum v = " + std::to_string(v_sum));
        for (const auto& [a, va] : scores.fitted_values) {
            for (const auto& [b, vb] : scores.fitted_values) {
                if (a == b) continue;
                double pab = 1.0 / (1.0 + std::exp(vb - va));
                double pba = 1.0 / (1.0 + std::exp(va - vb));
                check.expect(std::abs(pab + pba - 1.0) < 1e-12, "p_ij + p_ji != 1");
            }
        }
    };

    WeightedDigraph two;
    two.nodes = {"one", "two"};
    two.edges[{"two", "one"}] = 3.0;  // one beat two 3 times
    two.edges[{"one", "two"}] = 1.0;  // two beat one once
    Scores scores = exponential_tournament(to_match_stats(two));
    double expected = std::log(3.0) / 2.0;
    check.expect(std::abs(scores.fitted_values.at("one") - expected) < 1e-4,
                 "v1 != ln(3)/2 within 1e-4: " +
                     std::to_string(scores.fitted_values.at("one")));
    check.expect(std::abs(scores.fitted_values.at("two") + expected) < 1e-4,
                 "v2 != -ln(3)/2 within 1e-4");
    double p12 = 1.0 / (1.0 + std::exp(scores.fitted_values.at("two") -
                                       scores.fitted_values.at("one")));
    check.expect(std::abs(p12 - 0.75) < 1e-4, "p_12 != 0.75 within 1e-4");
    verify_identities(scores);

    std::mt19937 rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        std::uniform_int_distribution<int> team_count(2, 8);
        std::uniform_int_distribution<int> matches(2, 6);
        int n = team_count(rng);
        WeightedDigraph g;
        for (int i = 0; i < n; ++i) g.nodes.insert(node_name(i));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                int m = matches(rng);
                std::uniform_int_distribution<int> split(1, m - 1);
                int r = split(rng);
                g.edges[{node_name(j), node_name(i)}] = double(r);
                g.edges[{node_name(i), node_name(j)}] = double(m - r);
            }
        }
        verify_identities(exponential_tournament(to_match_stats(g)));
    }

    double elapsed = seconds_since(start);
    check.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + "s >= 5s");
    return check;
}

// 4. Linear tournament: symmetric zeros and transitive round-robins.
Check criterion_linear() {
    Check check;
    auto start = Clock::now();

    for (unsigned seed = 100; seed < 105; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> size(2, 10);
        std::uniform_int_distribution<int> matches(0, 4);
        int n = size(rng);
        WeightedDigraph symmetric;
        for (int i = 0; i < n; ++i) symmetric.nodes.insert(node_name(i));
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                int m = matches(rng);
                if (m == 0) continue;
                symmetric.edges[{node_name(i), node_name(j)}] = double(m);
                symmetric.edges[{node_name(j), node_name(i)}] = double(m);
            }
        }
        Scores zero = linear_tournament(to_match_stats(symmetric));
        for (const auto& [id, value] : zero.values) {
            check.expect(value == 0.0, "symmetric instance score not exactly zero");
        }
    }

    for (unsigned seed = 0; seed < 20; ++seed) {
        std::mt19937 rng(seed);
        std::uniform_int_distribution<int> size(3, 15);
        int n = size(rng);
        std::vector<std::string> planted;  // strongest first
        for (int i = 0; i < n; ++i) planted.push_back(node_name(i));
        std::shuffle(planted.begin(), planted.end(), rng);

        WeightedDigraph g;
        for (const std::string& team : planted) g.nodes.insert(team);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                g.edges[{planted[j], planted[i]}] = 1.0;  // stronger always wins
            }
        }
        Scores scores = linear_tournament(to_match_stats(g));
        double tau = kendall_tau(scores.order, planted);
        check.expect(tau == 1.0, "seed " + std::to_string(seed) +
                                     ": Kendall tau " + std::to_string(tau));
    }

    double elapsed = seconds_since(start);
    check.expect(elapsed < 5.0, "runtime " + std::to_string(elapsed) + "s >= 5s");
    return check;
}

// 5. Sanitization: pruning boundary, SIG_AVG value, SIG_MAX >= SIG_AVG.
Check criterion_sanitization() {
    Check check;

    auto edge_with_rei = [](const std::string& u, const std::string& v, double rei) {
        ImprovementEdge e;
        e.worse = u;
        e.better = v;
        e.metric = "f1";
        e.score_worse = 1.0;
        e.score_better = 1.0 + rei;
        e.reporter = "P";
        e.rei = rei;
        return e;
    };

    ImprovementGraph g;
    g.nodes = {"u", "v"};
    g.metrics = {"f1"};
    for (double rei : {0.2, 1.0, 7.75}) g.edges.push_back(edge_with_rei("u", "v", rei));
    ImprovementGraph pruned = prune_outliers(g, 1.0);
    std::multiset<double> kept;
    for (const auto& e : pruned.edges) kept.insert(e.rei);
    check.expect(kept == std::multiset<double>{0.2, 1.0},
                 "pruning at 1.0 kept the wrong REI set");

    ImprovementGraph pair;
    pair.nodes = {"u", "v"};
    pair.metrics = {"f1"};
    pair.edges.push_back(edge_with_rei("u", "v", 0.2));
    pair.edges.push_back(edge_with_rei("u", "v", 0.6));
    double sig_avg = aggregate(pair, Scheme::sig_avg).weight("u", "v");
    // Oracle: (sigma(0.2) + sigma(0.6)) / 2 per the defining formula.
    double oracle = (1.0 / (1.0 + std::exp(-0.2)) + 1.0 / (1.0 + std::exp(-0.6))) / 2.0;
    check.expect(std::abs(oracle - 0.5977451517691367) < 1e-15, "oracle drifted");
    check.expect(std::abs(sig_avg - oracle) < 1e-5,
                 "SIG_AVG {0.2,0.6} = " + std::to_string(sig_avg));

    std::mt19937 rng(300);
    std::uniform_real_distribution<double> rei(0.0, 1.0);
    std::uniform_int_distribution<int> count(2, 6);
    for (int i = 0; i < 1000; ++i) {
        ImprovementGraph multi;
        multi.nodes = {"u", "v"};
        multi.metrics = {"f1"};
        int parallel = count(rng);
        for (int j = 0; j < parallel; ++j) {
            multi.edges.push_back(edge_with_rei("u", "v", rei(rng)));
        }
        double avg = aggregate(multi, Scheme::sig_avg).weight("u", "v");
        double max = aggregate(multi, Scheme::sig_max).weight("u", "v");
        check.expect(max >= avg, "SIG_MAX < SIG_AVG on a random multi-edge pair");
    }
    return check;
}

// 6. Extraction golden files, byte-identical.
Check criterion_golden_files(const std::string& cli, const fs::path& scratch) {
    Check check;
    fs::path fixtures = getenv_or("TABRANK_FIXTURES", "");
    check.expect(!fixtures.empty() && fs::exists(fixtures / "latex"),
                 "TABRANK_FIXTURES not set or missing latex/ subdir");
    if (!check.ok) return check;

    MetricRegistry registry = MetricRegistry::with_default_seeds();
    std::vector<fs::path> tex_files;
    for (const auto& entry : fs::directory_iterator(fixtures / "latex")) {
        if (entry.path().extension() == ".tex") tex_files.push_back(entry.path());
    }
    std::sort(tex_files.begin(), tex_files.end());
    check.expect(tex_files.size() >= 10,
                 "fixture suite has fewer than 10 tables: " +
                     std::to_string(tex_files.size()));

    std::size_t table_count = 0;
    for (const fs::path& tex : tex_files) {
        std::string stem = tex.stem().string();
        ParseResult parsed = parse_tabular(slurp(tex), stem);
        table_count += parsed.tables.size();
        std::vector<ComparisonRecord> records;
        for (const RawTable& table : parsed.tables) {
            auto extracted = extract_comparisons(table, registry);
            records.insert(records.end(), extracted.begin(), extracted.end());
        }
        fs::path out = scratch / (stem + ".records.jsonl");
        save_records(records, out);
        fs::path golden = fixtures / "golden" / (stem + ".records.jsonl");
        check.expect(fs::exists(golden), "missing golden file for " + stem);
        if (fs::exists(golden)) {
            check.expect(slurp(out) == slurp(golden),
                         "extraction differs from golden for " + stem);
        }
        if (stem == "three_methods") {
            check.expect(records.size() == 6,
                         "three_methods produced " + std::to_string(records.size()) +
                             " records, expected 6");
        }
        if (stem == "no_citations") {
            check.expect(records.empty(), "no_citations produced records");
        }
    }
    check.expect(table_count >= 10, "fixtures contain fewer than 10 tables");

    // the CLI over the whole fixture dir reproduces the aggregate golden
    fs::path cli_out = scratch / "all_fixtures.records.jsonl";
    int rc = run_cli(cli, "extract --in \"" + (fixtures / "latex").string() +
                              "\" --out \"" + cli_out.string() + "\"",
                     scratch / "cli.log");
    check.expect(rc == 0, "cli extract failed");
    fs::path golden_all = fixtures / "golden" / "all_fixtures.records.jsonl";
    check.expect(fs::exists(golden_all) && slurp(cli_out) == slurp(golden_all),
                 "aggregate CLI extraction differs from golden");
    return check;
}

// 7. Eval oracles: NDCG brute force, Spearman Pearson, frozen example.
Check criterion_eval_oracles() {
    Check check;

    for (int n = 1; n <= 8; ++n) {
        std::vector<std::string> items;
        for (int i = 0; i < n; ++i) items.push_back("p" + std::to_string(i));
        std::vector<std::string> relevant;
        for (int i = 0; i < n; i += 2) relevant.push_back(items[i]);
        GroundTruth truth{"q", "f1", relevant};
        std::set<std::string> relevant_set(relevant.begin(), relevant.end());

        std::vector<std::string> perm = items;
        do {
            for (int k : {1, (n + 1) / 2, n}) {
                double got = ndcg_at_k(perm, truth, k);
                double dcg = 0.0;
                for (int i = 0; i < k && i < n; ++i) {
                    if (relevant_set.count(perm[i])) {
                        dcg += 1.0 / std::log2(double(i) + 2.0);
                    }
                }
                double idcg = 0.0;
                int hits = std::min<int>(k, int(relevant.size()));
                for (int i = 0; i < hits; ++i) idcg += 1.0 / std::log2(double(i) + 2.0);
                check.expect(got == dcg / idcg, "NDCG mismatch vs brute force");
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    std::mt19937 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        std::uniform_int_distribution<int> size(2, 15);
        int n = size(rng);
        std::vector<std::string> ids;
        for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
        std::vector<std::string> a = ids, b = ids;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);

        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < a.size(); ++i) {
            auto it = std::find(b.begin(), b.end(), a[i]);
            xs.push_back(double(i + 1));
            ys.push_back(double(it - b.begin() + 1));
        }
        double mean_x = std::accumulate(xs.begin(), xs.end(), 0.0) / double(n);
        double mean_y = std::accumulate(ys.begin(), ys.end(), 0.0) / double(n);
        double cov = 0, var_x = 0, var_y = 0;
        for (int i = 0; i < n; ++i) {
            cov += (xs[i] - mean_x) * (ys[i] - mean_y);
            var_x += (xs[i] - mean_x) * (xs[i] - mean_x);
            var_y += (ys[i] - mean_y) * (ys[i] - mean_y);
        }
        double pearson = cov / std::sqrt(var_x * var_y);
        check.expect(std::abs(spearman(a, b) - pearson) < 1e-12,
                     "Spearman differs from rank-vector Pearson");
    }

    double rho = spearman({"p1", "p2", "p3", "p4"}, {"p2", "p1", "p4", "p3"});
    check.expect(std::abs(rho - 0.6) < 1e-12,
                 "(1,2,3,4)/(2,1,4,3) gave " + std::to_string(rho));
    return check;
}

// Planted-order corpus shared by criteria 8 and 9.
struct PlantedCorpus {
    fs::path root;
    fs::path tex_dir;
    fs::path corpus_file;
    fs::path truth_file;
    std::vector<std::string> planted;  // best first
    std::string query = "planted ranking benchmark";
};

std::string method_id(int i) {
    std::ostringstream out;
    out << "m" << (i < 10 ? "0" : "") << i;
    return out.str();
}

PlantedCorpus synthesize_planted(const fs::path& root) {
    PlantedCorpus corpus;
    corpus.root = root;
    corpus.tex_dir = root / "tex";
    fs::create_directories(corpus.tex_dir);

    const int n = 30;
    std::vector<double> accuracy(n + 1, 0.0);
    for (int i = 1; i <= n; ++i) {
        corpus.planted.push_back(method_id(i));
        accuracy[i] = 95.0 - 1.4 * double(i - 1);  // m01 best, strictly decreasing
    }

    auto write_table = [&](const std::string& stem, const std::vector<int>& members,
                           const std::map<int, double>& override = {}) {
        std::ostringstream tex;
        tex << "\\begin{tabular}{lc}\nMethod & Accuracy \\\\\n\\hline\n";
        for (int member : members) {
            double value = accuracy[member];
            auto it = override.find(member);
            if (it != override.end()) value = it->second;
            tex << "M" << member << " \\cite{" << method_id(member) << "} & " << value
                << " \\\\\n";
        }
        tex << "\\end{tabular}\n";
        std::ofstream out(corpus.tex_dir / (stem + ".tex"));
        out << tex.str();
    };

    // 27 sliding windows over the planted order + 33 seeded random 4-subsets.
    int table_index = 0;
    for (int k = 1; k <= 27; ++k) {
        write_table("table_" + std::to_string(100 + ++table_index),
                    {k, k + 1, k + 2, k + 3});
    }
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> pick(1, n);
    while (table_index < 60) {
        std::set<int> members;
        while (members.size() < 4) members.insert(pick(rng));
        write_table("table_" + std::to_string(100 + ++table_index),
                    std::vector<int>(members.begin(), members.end()));
    }

    // ~10% of the ~360 consistent comparisons: one-pair tables claiming a
    // weak paper bests a strong one by far more than 100% REI.
    std::uniform_int_distribution<int> strong(1, 10), weak(21, 30);
    for (int i = 0; i < 36; ++i) {
        int good = strong(rng), bad = weak(rng);
        double absurd = accuracy[good] * 3.0;  // REI 2.0 > 1.0
        write_table("noise_" + std::to_string(100 + i), {good, bad},
                    {{bad, absurd}});
    }

    corpus.corpus_file = root / "corpus.jsonl";
    {
        std::ofstream out(corpus.corpus_file);
        for (int i = 1; i <= n; ++i) {
            out << "{\"paper_id\":\"" << method_id(i) << "\",\"title\":\"Method " << i
                << " for the planted ranking benchmark\",\"abstract\":\"We evaluate "
                   "method "
                << i << " on the planted ranking benchmark task.\",\"year\":2016}\n";
        }
    }
    corpus.truth_file = root / "truth.jsonl";
    {
        std::ofstream out(corpus.truth_file);
        out << "{\"query\":\"" << corpus.query
            << "\",\"metric\":\"accuracy\",\"relevant\":[";
        for (int i = 1; i <= n; ++i) {
            out << (i > 1 ? "," : "") << "\"" << method_id(i) << "\"";
        }
        out << "]}\n";
    }
    return corpus;
}

std::vector<std::string> board_order(const fs::path& board_file) {
    RankedLeaderboard board = load_leaderboard_json(board_file);
    std::vector<std::string> order;
    for (const LeaderboardEntry& entry : board.entries) order.push_back(entry.paper_id);
    return order;
}

// 8. End-to-end planted pipeline through the CLI.
Check criterion_planted_pipeline(const std::string& cli, const fs::path& scratch,
                                 const PlantedCorpus& corpus) {
    Check check;
    auto start = Clock::now();
    fs::path log = scratch / "pipeline.log";

    fs::path records = scratch / "planted.records.jsonl";
    int rc = run_cli(cli, "extract --in \"" + corpus.tex_dir.string() + "\" --out \"" +
                              records.string() + "\"",
                     log);
    check.expect(rc == 0, "extract failed");

    rc = run_cli(cli, "build --records \"" + records.string() + "\" --out \"" +
                          (scratch / "pruned").string() +
                          "\" --threshold 1.0 --aggregation SIG_AVG",
                 log);
    check.expect(rc == 0, "build (pruned) failed");

    fs::path board_file = scratch / "board.jsonl";
    rc = run_cli(cli, "leaderboard --query \"" + corpus.query + "\" --corpus \"" +
                          corpus.corpus_file.string() + "\" --graph \"" +
                          (scratch / "pruned.weighted.jsonl").string() +
                          "\" --ranker pagerank -k 30 --format json --out \"" +
                          board_file.string() + "\"",
                 log);
    check.expect(rc == 0, "leaderboard (pruned) failed");

    double rho_pruned = spearman(board_order(board_file), corpus.planted);
    check.expect(rho_pruned >= 0.9,
                 "pruned Spearman " + std::to_string(rho_pruned) + " < 0.9");

    // disabling pruning must strictly degrade the correlation
    rc = run_cli(cli, "build --records \"" + records.string() + "\" --out \"" +
                          (scratch / "unpruned").string() +
                          "\" --threshold 1e18 --aggregation SIG_AVG",
                 log);
    check.expect(rc == 0, "build (unpruned) failed");
    fs::path noisy_board = scratch / "board_unpruned.jsonl";
    rc = run_cli(cli, "leaderboard --query \"" + corpus.query + "\" --corpus \"" +
                          corpus.corpus_file.string() + "\" --graph \"" +
                          (scratch / "unpruned.weighted.jsonl").string() +
                          "\" --ranker pagerank -k 30 --format json --out \"" +
                          noisy_board.string() + "\"",
                 log);
    check.expect(rc == 0, "leaderboard (unpruned) failed");
    double rho_noisy = spearman(board_order(noisy_board), corpus.planted);
    check.expect(rho_noisy < rho_pruned,
                 "pruning did not strictly improve Spearman (" +
                     std::to_string(rho_noisy) + " vs " + std::to_string(rho_pruned) + ")");

    double elapsed = seconds_since(start);
    check.expect(elapsed < 30.0, "runtime " + std::to_string(elapsed) + "s >= 30s");
    return check;
}

// 9. CLI determinism: rerun every command, byte-identical outputs.
Check criterion_determinism(const std::string& cli, const fs::path& scratch,
                            const PlantedCorpus& corpus) {
    Check check;
    fs::path log = scratch / "determinism.log";

    auto rerun_identical = [&](const std::string& label, const std::string& args_a,
                               const fs::path& out_a, const std::string& args_b,
                               const fs::path& out_b) {
        int rc_a = run_cli(cli, args_a, log);
        int rc_b = run_cli(cli, args_b, log);
        check.expect(rc_a == 0 && rc_b == 0, label + " exited nonzero");
        check.expect(slurp(out_a) == slurp(out_b), label + " is not byte-identical");
    };

    fs::path rec_a = scratch / "det_a.records.jsonl";
    fs::path rec_b = scratch / "det_b.records.jsonl";
    std::string extract_args = "extract --in \"" + corpus.tex_dir.string() + "\" --out \"";
    rerun_identical("extract", extract_args + rec_a.string() + "\"", rec_a,
                    extract_args + rec_b.string() + "\"", rec_b);

    auto build_args = [&](const std::string& prefix) {
        return "build --records \"" + rec_a.string() + "\" --out \"" +
               (scratch / prefix).string() + "\" --aggregation SIG_AVG";
    };
    rerun_identical("build", build_args("det_a"), scratch / "det_a.weighted.jsonl",
                    build_args("det_b"), scratch / "det_b.weighted.jsonl");
    check.expect(slurp(scratch / "det_a.raw.jsonl") == slurp(scratch / "det_b.raw.jsonl"),
                 "build raw dump differs");
    check.expect(slurp(scratch / "det_a.sanitized.jsonl") ==
                     slurp(scratch / "det_b.sanitized.jsonl"),
                 "build sanitized dump differs");

    auto rank_args = [&](const std::string& out) {
        return "rank --graph \"" + (scratch / "det_a.weighted.jsonl").string() +
               "\" --ranker exponential --out \"" + (scratch / out).string() + "\"";
    };
    rerun_identical("rank", rank_args("det_a.scores.jsonl"),
                    scratch / "det_a.scores.jsonl", rank_args("det_b.scores.jsonl"),
                    scratch / "det_b.scores.jsonl");

    auto board_args = [&](const std::string& out) {
        return "leaderboard --query \"" + corpus.query + "\" --corpus \"" +
               corpus.corpus_file.string() + "\" --graph \"" +
               (scratch / "det_a.weighted.jsonl").string() +
               "\" -k 30 --format json --out \"" + (scratch / out).string() + "\"";
    };
    rerun_identical("leaderboard", board_args("det_a.board.jsonl"),
                    scratch / "det_a.board.jsonl", board_args("det_b.board.jsonl"),
                    scratch / "det_b.board.jsonl");

    auto eval_args = [&](const std::string& out) {
        return "eval --leaderboard \"" + (scratch / "det_a.board.jsonl").string() +
               "\" --truth \"" + corpus.truth_file.string() + "\" --k 10,20 --out \"" +
               (scratch / out).string() + "\"";
    };
    rerun_identical("eval", eval_args("det_a.report.json"),
                    scratch / "det_a.report.json", eval_args("det_b.report.json"),
                    scratch / "det_b.report.json");
    return check;
}

}  // namespace

int main() {
    std::string cli = getenv_or("TABRANK_CLI", "");
    fs::path scratch = fs::temp_directory_path() / "tabrank_acceptance";
    fs::remove_all(scratch);
    fs::create_directories(scratch);

    PlantedCorpus corpus = synthesize_planted(scratch / "planted");

    struct Criterion {
        std::string name;
        std::function<Check()> run;
    };
    std::vector<Criterion> criteria{
        {"pagerank-oracle-equivalence", criterion_pagerank_oracle},
        {"pagerank-invariances", criterion_pagerank_invariances},
        {"exponential-tournament-closed-form", criterion_exponential},
        {"linear-tournament", criterion_linear},
        {"sanitization", criterion_sanitization},
        {"extraction-golden-files",
         [&] { return criterion_golden_files(cli, scratch); }},
        {"eval-oracles", criterion_eval_oracles},
        {"planted-pipeline",
         [&] { return criterion_planted_pipeline(cli, scratch, corpus); }},
        {"cli-determinism",
         [&] { return criterion_determinism(cli, scratch, corpus); }},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check check;
        try {
            check = criteria[i].run();
        } catch (const std::exception& e) {
            check.ok = false;
            check.detail = std::string("exception: ") + e.what();
        }
        std::cout << (check.ok ? "PASS" : "FAIL") << "  criterion " << (i + 1) << "  "
                  << criteria[i].name;
        if (!check.ok) {
            std::cout << "  [" << check.detail << "]";
            ++failures;
        }
        std::cout << '\n';
    }
    std::cout << (failures == 0 ? "all criteria passed"
                                : std::to_string(failures) + " criteria failed")
              << '\n';
    return failures == 0 ? 0 : 1;
}

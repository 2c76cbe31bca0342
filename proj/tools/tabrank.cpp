#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tabrank/config.hpp"
#include "tabrank/eval.hpp"
#include "tabrank/graph.hpp"
#include "tabrank/jsonl.hpp"
#include "tabrank/latex.hpp"
#include "tabrank/leaderboard.hpp"
#include "tabrank/rankers.hpp"
#include "tabrank/records.hpp"
#include "tabrank/sanitize.hpp"

namespace fs = std::filesystem;
using namespace tabrank;

namespace {

constexpr const char* kRankerNames =
    "pagerank, linear, exponential, sinks, cocitation, numeric";

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in.is_open()) throw IoError("cannot open " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

int run_extract(const fs::path& in_dir, const fs::path& out_path) {
    std::vector<fs::path> files;
    if (fs::exists(in_dir)) {
        for (const auto& entry : fs::directory_iterator(in_dir)) {
            if (entry.is_regular_file() && entry.path().extension() == ".tex") {
                files.push_back(entry.path());
            }
        }
    }
    std::sort(files.begin(), files.end());

    MetricRegistry registry = MetricRegistry::with_default_seeds();
    std::vector<ComparisonRecord> records;
    std::size_t tables = 0, warnings = 0, skipped_files = 0;
    for (const fs::path& file : files) {
        std::string source;
        try {
            source = read_file(file);
        } catch (const IoError& e) {
            std::cerr << "warning: skipping unreadable file: " << e.what() << '\n';
            ++skipped_files;
            continue;
        }
        ParseResult parsed = parse_tabular(source, file.stem().string());
        for (const ParseWarning& warning : parsed.warnings) {
            std::cerr << "warning: " << file.string() << " @" << warning.offset
                      << ": " << warning.message << '\n';
            ++warnings;
        }
        for (const RawTable& table : parsed.tables) {
            std::vector<ComparisonRecord> extracted = extract_comparisons(table, registry);
            records.insert(records.end(), extracted.begin(), extracted.end());
            ++tables;
        }
    }
    save_records(records, out_path);
    std::cerr << "extract: files=" << files.size() - skipped_files
              << " skipped=" << skipped_files << " tables=" << tables
              << " records=" << records.size() << " warnings=" << warnings << '\n';
    return 0;
}

int run_build(const fs::path& records_path, const std::string& out_prefix,
              const PipelineConfig& cfg) {
    std::vector<ComparisonRecord> records = load_records(records_path);
    MetricRegistry registry = MetricRegistry::with_default_seeds();

    BuildResult built = build_raw_graph(records, registry);
    ImprovementGraph pruned = prune_outliers(built.graph, cfg.rei_threshold);
    WeightedDigraph weighted = aggregate(pruned, cfg.aggregation);
    if (cfg.dummy != DummyKind::none) {
        weighted = add_dummy(weighted, DummyMode{cfg.dummy});
    }

    save_improvement_graph(built.graph, out_prefix + ".raw.jsonl");
    save_improvement_graph(pruned, out_prefix + ".sanitized.jsonl");
    save_weighted_digraph(weighted, out_prefix + ".weighted.jsonl");

    std::cerr << "build: nodes=" << built.graph.nodes.size()
              << " raw_edges=" << built.graph.edges.size()
              << " pruned=" << built.graph.edges.size() - pruned.edges.size()
              << " weighted_edges=" << weighted.edges.size()
              << " drops{ties=" << built.drops.ties
              << ",zero_denominator=" << built.drops.zero_denominator
              << ",self=" << built.drops.self_comparisons << "}\n";
    return 0;
}

int run_rank(const fs::path& graph_path, const std::string& ranker_name,
             const fs::path& out_path, const fs::path& records_path,
             const PipelineConfig& cfg) {
    auto ranker = ranker_from_string(ranker_name);
    if (!ranker) {
        std::cerr << "error: unknown ranker '" << ranker_name
                  << "'; valid rankers: " << kRankerNames << '\n';
        return 2;
    }

    Scores scores;
    switch (*ranker) {
        case RankerKind::pagerank:
            scores = pagerank(load_weighted_digraph(graph_path), cfg.pagerank);
            break;
        case RankerKind::sinks:
            scores = sink_nodes(load_weighted_digraph(graph_path), cfg.pagerank);
            break;
        case RankerKind::linear:
            scores = linear_tournament(to_match_stats(load_weighted_digraph(graph_path)));
            break;
        case RankerKind::exponential:
            scores =
                exponential_tournament(to_match_stats(load_weighted_digraph(graph_path)));
            break;
        case RankerKind::numeric:
            scores = numeric_comparison_rank(load_improvement_graph(graph_path));
            break;
        case RankerKind::cocitation: {
            fs::path source = records_path.empty() ? fs::path(cfg.records_path)
                                                   : records_path;
            if (source.empty()) {
                std::cerr << "error: cocitation needs --records (or a config "
                             "records path)\n";
                return 2;
            }
            scores = cocitation_rank(load_records(source));
            break;
        }
    }
    save_scores(scores, out_path);
    std::cerr << "rank: scheme=" << scores.scheme << " papers=" << scores.values.size()
              << " iterations=" << scores.diagnostics.iterations
              << " converged=" << (scores.diagnostics.converged ? "yes" : "no") << '\n';
    return 0;
}

int run_leaderboard(const std::string& query, const fs::path& corpus_path,
                    const fs::path& graph_path, const fs::path& out_path,
                    const fs::path& records_path, const fs::path& improvement_path,
                    const std::string& format, const PipelineConfig& cfg) {
    CorpusIndex corpus = CorpusIndex::load(corpus_path);
    WeightedDigraph graph = load_weighted_digraph(graph_path);

    std::vector<ComparisonRecord> records;
    ImprovementGraph improvement;
    RankInputs inputs;
    if (!records_path.empty()) {
        records = load_records(records_path);
        inputs.records = &records;
    }
    if (!improvement_path.empty()) {
        improvement = load_improvement_graph(improvement_path);
        inputs.improvement = &improvement;
    }

    if (cfg.ranker == RankerKind::cocitation && !inputs.records) {
        std::cerr << "warning: cocitation ranking without --records scores "
                     "every candidate 0\n";
    }
    if (cfg.ranker == RankerKind::numeric && !inputs.improvement) {
        std::cerr << "warning: numeric ranking without --improvement scores "
                     "every candidate 0\n";
    }
    RankedLeaderboard board =
        generate(query, cfg.ranker, cfg.k, corpus, graph, inputs, cfg.pagerank);
    if (board.entries.empty()) {
        std::cerr << "notice: no candidates for query '" << query << "'\n";
    }

    if (format == "text") {
        std::ofstream out = open_out(out_path);
        out << format_leaderboard_text(board);
    } else {
        save_leaderboard_json(board, out_path);
    }
    std::cerr << "leaderboard: query='" << query << "' scheme=" << board.scheme
              << " entries=" << board.entries.size() << '\n';
    return 0;
}

int run_eval(const fs::path& board_path, const fs::path& truth_path,
             const fs::path& out_path, const std::string& k_list,
             const fs::path& corpus_path, bool corpus_recall) {
    RankedLeaderboard board = load_leaderboard_json(board_path);
    std::vector<GroundTruth> truths = load_ground_truth(truth_path);

    std::vector<int> ks;
    std::stringstream stream(k_list);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (!item.empty()) ks.push_back(std::stoi(item));
    }

    std::set<std::string> corpus_ids;
    if (corpus_recall) {
        for (const auto& [id, paper] : CorpusIndex::load(corpus_path).papers()) {
            corpus_ids.insert(id);
        }
    }

    std::vector<std::string> ranked;
    for (const LeaderboardEntry& entry : board.entries) {
        ranked.push_back(entry.paper_id);
    }

    nlohmann::json queries = nlohmann::json::array();
    std::map<int, std::vector<double>> recall_acc, ndcg_acc;
    std::vector<double> spearman_acc;
    std::size_t failures = 0;

    for (const GroundTruth& truth : truths) {
        nlohmann::json entry{{"query", truth.query}, {"metric", truth.metric}};
        if (truth.query != board.query) {
            entry["error"] = "query mismatch (leaderboard is for '" + board.query + "')";
            ++failures;
            queries.push_back(std::move(entry));
            continue;
        }
        try {
            nlohmann::json recall_obj, ndcg_obj;
            for (int k : ks) {
                double recall = corpus_recall
                                    ? recall_at_k(ranked, truth, k, corpus_ids,
                                                  RecallBasis::in_corpus_only)
                                    : recall_at_k(ranked, truth, k);
                double ndcg = ndcg_at_k(ranked, truth, k);
                recall_obj[std::to_string(k)] = recall;
                ndcg_obj[std::to_string(k)] = ndcg;
                recall_acc[k].push_back(recall);
                ndcg_acc[k].push_back(ndcg);
            }
            entry["recall"] = recall_obj;
            entry["ndcg"] = ndcg_obj;
            try {
                double rho = spearman(ranked, truth.relevant);
                entry["spearman"] = rho;
                spearman_acc.push_back(rho);
            } catch (const std::invalid_argument& e) {
                entry["spearman_error"] = e.what();
            }
        } catch (const std::invalid_argument& e) {
            entry["error"] = e.what();
            ++failures;
        }
        queries.push_back(std::move(entry));
    }

    auto mean = [](const std::vector<double>& xs) {
        double sum = 0.0;
        for (double x : xs) sum += x;
        return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
    };
    nlohmann::json macro;
    for (const auto& [k, values] : recall_acc) {
        macro["recall"][std::to_string(k)] = mean(values);
    }
    for (const auto& [k, values] : ndcg_acc) {
        macro["ndcg"][std::to_string(k)] = mean(values);
    }
    if (!spearman_acc.empty()) macro["spearman"] = mean(spearman_acc);

    nlohmann::json report{{"leaderboard_query", board.query},
                          {"scheme", board.scheme},
                          {"queries", queries},
                          {"macro", macro}};
    std::ofstream out = open_out(out_path);
    out << report.dump(2) << '\n';

    std::cerr << "eval: queries=" << truths.size() << " failed=" << failures << '\n';
    return !truths.empty() && failures == truths.size() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Leaderboards from comparative-table tournaments"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "flat key-value JSON config file")
        ->expected(1);

    std::string in_dir, out_path, records_path, graph_path, corpus_path;
    std::string improvement_path, truth_path, query, out_prefix, board_path;
    std::string ranker_name, format = "json", k_list = "10,20";
    bool corpus_recall = false;

    // Flag presence decides what overrides the config file.
    double threshold = 1.0;
    std::string aggregation, dummy;
    double alpha = 0.90, pr_tol = 1e-10;
    int pr_max_iter = 200, top_k = 50;

    CLI::App* extract = app.add_subcommand("extract", "LaTeX tables -> records file");
    extract->add_option("--in", in_dir, "directory of .tex files")->required();
    extract->add_option("--out", out_path, "records output path")->required();

    CLI::App* build = app.add_subcommand("build", "records -> graph files");
    build->add_option("--records", records_path, "records file")->required();
    build->add_option("--out", out_prefix, "output prefix (three files)")->required();
    build->add_option("--threshold", threshold, "REI pruning threshold");
    build->add_option("--aggregation", aggregation, "UNW|ALL|SIG_AVG|SIG_MAX");
    build->add_option("--dummy", dummy, "none|winner|loser");

    CLI::App* rank = app.add_subcommand("rank", "graph -> scores file");
    rank->add_option("--graph", graph_path, "graph file (weighted dump; sanitized "
                     "improvement dump for the numeric ranker)");
    rank->add_option("--ranker", ranker_name, kRankerNames);
    rank->add_option("--records", records_path, "records file (cocitation)");
    rank->add_option("--out", out_path, "scores output path")->required();
    rank->add_option("--alpha", alpha, "PageRank damping");
    rank->add_option("--tol", pr_tol, "PageRank L1 tolerance");
    rank->add_option("--max-iter", pr_max_iter, "PageRank iteration cap");

    CLI::App* board = app.add_subcommand("leaderboard", "query -> ranked leaderboard");
    board->add_option("--query", query, "task query")->required();
    board->add_option("--corpus", corpus_path, "corpus metadata file");
    board->add_option("--graph", graph_path, "weighted graph file");
    board->add_option("--records", records_path, "records file (cocitation)");
    board->add_option("--improvement", improvement_path,
                      "sanitized improvement dump (numeric)");
    board->add_option("--ranker", ranker_name, kRankerNames);
    board->add_option("-k,--k", top_k, "leaderboard size");
    board->add_option("--format", format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    board->add_option("--out", out_path, "leaderboard output path")->required();
    board->add_option("--alpha", alpha, "PageRank damping");

    CLI::App* eval = app.add_subcommand("eval", "leaderboard vs ground truth");
    eval->add_option("--leaderboard", board_path, "leaderboard file (json format)")
        ->required();
    eval->add_option("--truth", truth_path, "ground-truth file");
    eval->add_option("--out", out_path, "report output path")->required();
    eval->add_option("--k", k_list, "comma-separated cutoffs");
    eval->add_option("--corpus", corpus_path, "corpus metadata file");
    eval->add_flag("--in-corpus-recall", corpus_recall,
                   "restrict recall denominators to corpus papers");

    CLI11_PARSE(app, argc, argv);

    try {
        PipelineConfig cfg;
        if (!config_path.empty()) cfg = load_config(config_path);

        if (build->parsed()) {
            if (build->count("--threshold")) cfg.rei_threshold = threshold;
            if (build->count("--aggregation")) {
                auto scheme = scheme_from_string(aggregation);
                if (!scheme) {
                    std::cerr << "error: unknown aggregation '" << aggregation << "'\n";
                    return 2;
                }
                cfg.aggregation = *scheme;
            }
            if (build->count("--dummy")) {
                auto kind = dummy_kind_from_string(dummy);
                if (!kind) {
                    std::cerr << "error: unknown dummy mode '" << dummy << "'\n";
                    return 2;
                }
                cfg.dummy = *kind;
            }
            return run_build(records_path, out_prefix, cfg);
        }
        if (extract->parsed()) {
            return run_extract(in_dir, out_path);
        }
        if (rank->parsed()) {
            if (rank->count("--alpha")) cfg.pagerank.alpha = alpha;
            if (rank->count("--tol")) cfg.pagerank.tolerance = pr_tol;
            if (rank->count("--max-iter")) cfg.pagerank.max_iterations = pr_max_iter;
            std::string name =
                rank->count("--ranker") ? ranker_name : to_string(cfg.ranker);
            fs::path graph_file =
                rank->count("--graph") ? fs::path(graph_path) : fs::path(cfg.graph_path);
            return run_rank(graph_file, name, out_path, records_path, cfg);
        }
        if (board->parsed()) {
            if (board->count("--alpha")) cfg.pagerank.alpha = alpha;
            if (board->count("-k")) cfg.k = top_k;
            if (board->count("--ranker")) {
                auto ranker = ranker_from_string(ranker_name);
                if (!ranker) {
                    std::cerr << "error: unknown ranker '" << ranker_name
                              << "'; valid rankers: " << kRankerNames << '\n';
                    return 2;
                }
                cfg.ranker = *ranker;
            }
            fs::path corpus_file = board->count("--corpus") ? fs::path(corpus_path)
                                                            : fs::path(cfg.corpus_path);
            fs::path graph_file = board->count("--graph") ? fs::path(graph_path)
                                                          : fs::path(cfg.graph_path);
            fs::path records_file = board->count("--records")
                                        ? fs::path(records_path)
                                        : fs::path(cfg.records_path);
            return run_leaderboard(query, corpus_file, graph_file, out_path,
                                   records_file, improvement_path, format, cfg);
        }
        if (eval->parsed()) {
            fs::path truth_file = eval->count("--truth") ? fs::path(truth_path)
                                                         : fs::path(cfg.truth_path);
            fs::path corpus_file = eval->count("--corpus") ? fs::path(corpus_path)
                                                           : fs::path(cfg.corpus_path);
            return run_eval(board_path, truth_file, out_path, k_list, corpus_file,
                            corpus_recall);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tabrank/metrics.hpp"
#include "tabrank/records.hpp"

namespace tabrank {

/// A tabular environment expanded to a rectangular cell grid.
/// Cell text keeps \cite commands verbatim.
struct RawTable {
    std::string paper_id;  // reporting paper
    std::vector<std::vector<std::string>> cells;
    std::optional<std::string> caption;

    std::size_t rows() const { return cells.size(); }
    std::size_t cols() const { return cells.empty() ? 0 : cells.front().size(); }
};

struct ParseWarning {
    std::size_t offset = 0;  // byte offset into the source
    std::string message;
};

struct ParseResult {
    std::vector<RawTable> tables;
    std::vector<ParseWarning> warnings;
};

/// Extract every tabular environment as a RawTable, in document order.
/// Total: malformed blocks become warnings, never an abort.
ParseResult parse_tabular(std::string_view latex_source, std::string_view reporter);

/// Emit one ComparisonRecord per metric column and unordered pair of cited
/// rows with distinct cite keys and parseable, unequal numeric cells.
/// Orientation (cited rows vs cited columns) is detected from the grid.
std::vector<ComparisonRecord> extract_comparisons(const RawTable& table,
                                                  const MetricRegistry& registry);

/// Numeric cell parser: optional sign, decimals, trailing % (stripped, value
/// kept on its raw scale), $...$ math wrapping. Anything else is non-numeric.
std::optional<double> parse_numeric_cell(std::string_view cell);

/// First key of the first explicit cite command in the text, if any.
std::optional<std::string> first_cite_key(std::string_view text);

}  // namespace tabrank

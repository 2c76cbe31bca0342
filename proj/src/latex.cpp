#include "tabrank/latex.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>

namespace tabrank {

namespace {

constexpr std::string_view kBeginTabular = "\\begin{tabular}";
constexpr std::string_view kEndTabular = "\\end{tabular}";

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

// Unescaped % starts a comment running to end of line; the newline stays.
std::string strip_comments(std::string_view src) {
    std::string out;
    out.reserve(src.size());
    bool in_comment = false;
    for (std::size_t i = 0; i < src.size(); ++i) {
        char c = src[i];
        if (in_comment) {
            if (c == '\n') {
                in_comment = false;
                out.push_back(c);
            }
            continue;
        }
        if (c == '\\' && i + 1 < src.size()) {
            out.push_back(c);
            out.push_back(src[i + 1]);
            ++i;
            continue;
        }
        if (c == '%') {
            in_comment = true;
            continue;
        }
        out.push_back(c);
    }
    return out;
}

// Position just past the brace group starting at s[pos] == '{'; npos if unbalanced.
std::size_t skip_brace_group(std::string_view s, std::size_t pos) {
    int depth = 0;
    for (std::size_t i = pos; i < s.size(); ++i) {
        char c = s[i];
        if (c == '\\') {
            ++i;
            continue;
        }
        if (c == '{') {
            ++depth;
        } else if (c == '}') {
            if (--depth == 0) return i + 1;
        }
    }
    return std::string_view::npos;
}

std::size_t skip_bracket_group(std::string_view s, std::size_t pos) {
    if (pos >= s.size() || s[pos] != '[') return pos;
    std::size_t close = s.find(']', pos);
    return close == std::string_view::npos ? pos : close + 1;
}

std::size_t skip_whitespace(std::string_view s, std::size_t pos) {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return pos;
}

// Matching \end{tabular} for the \begin{tabular} at `begin`, nesting-aware.
std::size_t find_matching_end(std::string_view s, std::size_t begin) {
    std::size_t pos = begin + kBeginTabular.size();
    int depth = 1;
    while (pos < s.size()) {
        std::size_t next_begin = s.find(kBeginTabular, pos);
        std::size_t next_end = s.find(kEndTabular, pos);
        if (next_end == std::string_view::npos) return std::string_view::npos;
        if (next_begin != std::string_view::npos && next_begin < next_end) {
            ++depth;
            pos = next_begin + kBeginTabular.size();
        } else {
            if (--depth == 0) return next_end;
            pos = next_end + kEndTabular.size();
        }
    }
    return std::string_view::npos;
}

// Command name (letters) following a backslash at `pos`.
std::string_view command_name_at(std::string_view s, std::size_t pos) {
    std::size_t i = pos + 1;
    while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) ++i;
    return s.substr(pos + 1, i - pos - 1);
}

// Split the tabular body into rows of raw cell text. Breaks only apply at
// brace depth zero and outside nested environments, so nested tabulars and
// escaped specials stay opaque.
std::vector<std::vector<std::string>> split_rows(std::string_view body) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    std::string cell;
    int brace_depth = 0;
    int env_depth = 0;

    auto end_cell = [&] {
        row.push_back(cell);
        cell.clear();
    };
    auto end_row = [&] {
        end_cell();
        rows.push_back(std::move(row));
        row.clear();
    };

    for (std::size_t i = 0; i < body.size(); ++i) {
        char c = body[i];
        if (c == '\\' && i + 1 < body.size() && body[i + 1] == '\\' &&
            brace_depth == 0 && env_depth == 0) {
            end_row();
            i += 1;             // second backslash
            if (i + 1 < body.size() && body[i + 1] == '*') ++i;
            std::size_t after = skip_bracket_group(body, skip_whitespace(body, i + 1));
            if (after > i + 1) i = after - 1;
            continue;
        }
        if (c == '\\') {
            std::string_view name = command_name_at(body, i);
            if (name == "begin") ++env_depth;
            if (name == "end" && env_depth > 0) --env_depth;
            cell.push_back(c);
            if (i + 1 < body.size() && name.empty()) {
                cell.push_back(body[i + 1]);  // escaped special (\&, \%, \\ handled above)
                ++i;
            }
            continue;
        }
        if (c == '{') ++brace_depth;
        if (c == '}' && brace_depth > 0) --brace_depth;
        if (c == '&' && brace_depth == 0 && env_depth == 0) {
            end_cell();
            continue;
        }
        cell.push_back(c);
    }
    end_row();
    return rows;
}

// Drop horizontal-rule commands from a cell.
std::string remove_rules(std::string_view cell) {
    static constexpr std::array<std::string_view, 4> kBareRules = {
        "hline", "toprule", "midrule", "bottomrule"};
    std::string out;
    out.reserve(cell.size());
    for (std::size_t i = 0; i < cell.size(); ++i) {
        if (cell[i] != '\\') {
            out.push_back(cell[i]);
            continue;
        }
        std::string_view name = command_name_at(cell, i);
        if (std::find(kBareRules.begin(), kBareRules.end(), name) != kBareRules.end()) {
            i += name.size();
            continue;
        }
        if (name == "cline" || name == "cmidrule") {
            std::size_t pos = i + 1 + name.size();
            if (pos < cell.size() && cell[pos] == '(') {
                std::size_t close = cell.find(')', pos);
                if (close != std::string_view::npos) pos = close + 1;
            }
            pos = skip_whitespace(cell, pos);
            if (pos < cell.size() && cell[pos] == '{') {
                std::size_t after = skip_brace_group(cell, pos);
                if (after != std::string_view::npos) pos = after;
            }
            i = pos - 1;
            continue;
        }
        out.push_back(cell[i]);
    }
    return out;
}

// {n}{fmt}{content} following a \multicolumn; nullopt if malformed.
struct MultiSpec {
    int span = 1;
    std::string content;
};

std::optional<MultiSpec> parse_multi_args(std::string_view cell, std::size_t pos,
                                          bool has_span) {
    MultiSpec spec;
    pos = skip_whitespace(cell, pos);
    if (pos >= cell.size() || cell[pos] != '{') return std::nullopt;
    std::size_t after = skip_brace_group(cell, pos);
    if (after == std::string_view::npos) return std::nullopt;
    std::string first = trim(cell.substr(pos + 1, after - pos - 2));
    if (has_span) {
        char* parse_end = nullptr;
        long n = std::strtol(first.c_str(), &parse_end, 10);
        if (parse_end == first.c_str() || *parse_end != '\0' || n < 1) return std::nullopt;
        spec.span = static_cast<int>(n);
    }
    pos = skip_whitespace(cell, after);
    if (pos >= cell.size() || cell[pos] != '{') return std::nullopt;  // fmt / width
    after = skip_brace_group(cell, pos);
    if (after == std::string_view::npos) return std::nullopt;
    pos = skip_whitespace(cell, after);
    if (pos >= cell.size() || cell[pos] != '{') return std::nullopt;
    after = skip_brace_group(cell, pos);
    if (after == std::string_view::npos) return std::nullopt;
    spec.content = trim(cell.substr(pos + 1, after - pos - 2));
    return spec;
}

// Expand \multicolumn into span cells and unwrap \multirow content.
void expand_cell(const std::string& raw, std::vector<std::string>& out_row) {
    std::string cell = trim(raw);
    if (cell.rfind("\\multicolumn", 0) == 0) {
        auto spec = parse_multi_args(cell, std::string_view("\\multicolumn").size(), true);
        if (spec) {
            out_row.push_back(spec->content);
            for (int i = 1; i < spec->span; ++i) out_row.emplace_back();
            return;
        }
    }
    if (cell.rfind("\\multirow", 0) == 0) {
        auto spec = parse_multi_args(cell, std::string_view("\\multirow").size(), false);
        if (spec) {
            out_row.push_back(spec->content);
            return;
        }
    }
    out_row.push_back(cell);
}

std::vector<std::vector<std::string>> build_grid(std::string_view body) {
    std::vector<std::vector<std::string>> grid;
    for (const auto& raw_row : split_rows(body)) {
        std::vector<std::string> row;
        for (const std::string& raw_cell : raw_row) {
            expand_cell(remove_rules(raw_cell), row);
        }
        bool all_empty = std::all_of(row.begin(), row.end(),
                                     [](const std::string& c) { return c.empty(); });
        if (!all_empty) grid.push_back(std::move(row));
    }
    std::size_t width = 0;
    for (const auto& row : grid) width = std::max(width, row.size());
    for (auto& row : grid) row.resize(width);
    return grid;
}

// Caption of the innermost table environment wrapping [begin, end), if any.
std::optional<std::string> find_caption(std::string_view src, std::size_t begin,
                                        std::size_t end) {
    constexpr std::string_view kCaption = "\\caption";
    std::size_t search = 0;
    std::size_t best_begin = std::string_view::npos;
    std::size_t best_end = std::string_view::npos;
    while (true) {
        std::size_t tb = src.find("\\begin{table", search);
        if (tb == std::string_view::npos || tb > begin) break;
        std::size_t te = src.find("\\end{table", tb);
        if (te != std::string_view::npos && te >= end) {
            best_begin = tb;
            best_end = te;
        }
        search = tb + 1;
    }
    if (best_begin == std::string_view::npos) return std::nullopt;
    std::size_t cap_search = best_begin;
    while (true) {
        std::size_t cap = src.find(kCaption, cap_search);
        if (cap == std::string_view::npos || cap >= best_end) return std::nullopt;
        cap_search = cap + kCaption.size();
        std::size_t pos = cap_search;
        if (pos < src.size() && src[pos] == '*') ++pos;
        pos = skip_bracket_group(src, skip_whitespace(src, pos));
        pos = skip_whitespace(src, pos);
        if (pos >= src.size() || src[pos] != '{') continue;  // \captionsetup etc.
        std::size_t after = skip_brace_group(src, pos);
        if (after == std::string_view::npos) return std::nullopt;
        return trim(src.substr(pos + 1, after - pos - 2));
    }
}

std::vector<std::vector<std::string>> transpose(
        const std::vector<std::vector<std::string>>& grid) {
    if (grid.empty()) return {};
    std::vector<std::vector<std::string>> out(grid.front().size(),
                                              std::vector<std::string>(grid.size()));
    for (std::size_t r = 0; r < grid.size(); ++r) {
        for (std::size_t c = 0; c < grid[r].size(); ++c) {
            out[c][r] = grid[r][c];
        }
    }
    return out;
}

bool has_cite(std::string_view text) {
    return first_cite_key(text).has_value();
}

}  // namespace

ParseResult parse_tabular(std::string_view latex_source, std::string_view reporter) {
    ParseResult result;
    std::string source = strip_comments(latex_source);
    std::string_view src = source;

    std::size_t pos = 0;
    while (true) {
        std::size_t begin = src.find(kBeginTabular, pos);
        if (begin == std::string_view::npos) break;
        std::size_t end = find_matching_end(src, begin);
        if (end == std::string_view::npos) {
            result.warnings.push_back(
                {begin, "unbalanced tabular environment; block skipped"});
            pos = begin + kBeginTabular.size();
            continue;
        }

        std::size_t body_start = skip_bracket_group(
            src, skip_whitespace(src, begin + kBeginTabular.size()));
        body_start = skip_whitespace(src, body_start);
        if (body_start < end && src[body_start] == '{') {
            std::size_t after = skip_brace_group(src, body_start);
            if (after != std::string_view::npos && after <= end) {
                body_start = after;  // column spec
            }
        }

        RawTable table;
        table.paper_id = std::string(reporter);
        table.cells = build_grid(src.substr(body_start, end - body_start));
        table.caption = find_caption(src, begin, end + kEndTabular.size());
        result.tables.push_back(std::move(table));
        pos = end + kEndTabular.size();
    }
    return result;
}

std::optional<std::string> first_cite_key(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '\\') continue;
        std::string_view name = command_name_at(text, i);
        if (name != "cite" && name != "citet" && name != "citep") {
            i += name.size();
            continue;
        }
        std::size_t pos = i + 1 + name.size();
        if (pos < text.size() && text[pos] == '*') ++pos;
        pos = skip_whitespace(text, pos);
        pos = skip_bracket_group(text, pos);
        pos = skip_whitespace(text, pos);
        pos = skip_bracket_group(text, pos);
        pos = skip_whitespace(text, pos);
        if (pos >= text.size() || text[pos] != '{') continue;
        std::size_t after = skip_brace_group(text, pos);
        if (after == std::string_view::npos) continue;
        std::string keys(text.substr(pos + 1, after - pos - 2));
        std::size_t start = 0;
        while (start <= keys.size()) {
            std::size_t comma = keys.find(',', start);
            std::string key = trim(std::string_view(keys).substr(
                start, comma == std::string::npos ? std::string::npos : comma - start));
            if (!key.empty()) return key;
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return std::nullopt;
}

std::optional<double> parse_numeric_cell(std::string_view cell) {
    std::string s = trim(cell);
    if (s.size() >= 2 && s.front() == '$' && s.back() == '$') {
        s = trim(std::string_view(s).substr(1, s.size() - 2));
    }
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "\\%") == 0) {
        s = trim(std::string_view(s).substr(0, s.size() - 2));
    } else if (!s.empty() && s.back() == '%') {
        s = trim(std::string_view(s).substr(0, s.size() - 1));
    }
    if (s.empty()) return std::nullopt;

    std::size_t i = 0;
    if (s[i] == '+' || s[i] == '-') ++i;
    std::size_t digits = 0, dots = 0;
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            ++digits;
        } else if (s[i] == '.') {
            if (++dots > 1) return std::nullopt;
        } else {
            return std::nullopt;
        }
    }
    if (digits == 0) return std::nullopt;
    return std::strtod(s.c_str(), nullptr);
}

std::vector<ComparisonRecord> extract_comparisons(const RawTable& table,
                                                  const MetricRegistry& registry) {
    std::vector<ComparisonRecord> records;
    if (table.rows() < 2 || table.cols() < 2) return records;

    const auto& cells = table.cells;
    std::size_t rows_with_cite = 0;
    for (const auto& row : cells) {
        rows_with_cite += std::any_of(row.begin(), row.end(),
                                      [](const std::string& c) { return has_cite(c); });
    }
    std::size_t cols_with_cite = 0;
    for (std::size_t c = 0; c < table.cols(); ++c) {
        for (std::size_t r = 0; r < table.rows(); ++r) {
            if (has_cite(cells[r][c])) {
                ++cols_with_cite;
                break;
            }
        }
    }

    // Ties prefer citations-in-rows; the transposed style is the exception.
    std::vector<std::vector<std::string>> grid = cells;
    if (cols_with_cite > rows_with_cite) grid = transpose(grid);

    const std::size_t n_rows = grid.size();
    const std::size_t n_cols = grid.front().size();

    std::vector<std::optional<std::string>> owner(n_rows);
    for (std::size_t r = 1; r < n_rows; ++r) {
        for (const std::string& cell : grid[r]) {
            if (auto key = first_cite_key(cell)) {
                owner[r] = std::move(key);
                break;  // first occurrence wins
            }
        }
    }

    for (std::size_t c = 0; c < n_cols; ++c) {
        std::string metric = registry.canonical(grid[0][c]);
        std::vector<std::pair<std::string, double>> entries;
        for (std::size_t r = 1; r < n_rows; ++r) {
            if (!owner[r]) continue;
            if (auto value = parse_numeric_cell(grid[r][c])) {
                entries.emplace_back(*owner[r], *value);
            }
        }
        for (std::size_t i = 0; i < entries.size(); ++i) {
            for (std::size_t j = i + 1; j < entries.size(); ++j) {
                if (entries[i].first == entries[j].first) continue;
                if (entries[i].second == entries[j].second) continue;
                const auto& lo = entries[i].second <= entries[j].second ? entries[i]
                                                                        : entries[j];
                const auto& hi = entries[i].second <= entries[j].second ? entries[j]
                                                                        : entries[i];
                records.push_back(ComparisonRecord{metric, lo.first, lo.second,
                                                   hi.first, hi.second,
                                                   table.paper_id});
            }
        }
    }
    return records;
}

}  // namespace tabrank

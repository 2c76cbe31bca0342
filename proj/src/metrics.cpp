#include "tabrank/metrics.hpp"

#include <cctype>

namespace tabrank {

namespace {

bool is_trim_char(char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '.' ||
           c == ',' || c == ':' || c == ';' || c == '*';
}

}  // namespace

std::string normalize_metric(std::string_view raw_header) {
    // Strip LaTeX layer by layer: escaped specials keep their character,
    // command names and braces disappear, math delimiters disappear.
    std::string stripped;
    stripped.reserve(raw_header.size());
    for (std::size_t i = 0; i < raw_header.size(); ++i) {
        char c = raw_header[i];
        if (c == '\\') {
            if (i + 1 < raw_header.size() && !std::isalpha(static_cast<unsigned char>(raw_header[i + 1]))) {
                // Escaped special: unescape, then treat like the bare character
                // so a second pass changes nothing.
                char next = raw_header[i + 1];
                ++i;
                if (next == '{' || next == '}' || next == '$' || next == '\\') continue;
                stripped.push_back(next == '~' ? ' ' : next);  // \% \& \_ \# etc.
            } else {
                while (i + 1 < raw_header.size() &&
                       std::isalpha(static_cast<unsigned char>(raw_header[i + 1]))) {
                    ++i;  // swallow the command name
                }
            }
        } else if (c == '{' || c == '}' || c == '$') {
            continue;
        } else if (c == '~') {
            stripped.push_back(' ');
        } else {
            stripped.push_back(c);
        }
    }

    std::string collapsed;
    collapsed.reserve(stripped.size());
    bool in_space = false;
    for (unsigned char c : stripped) {
        if (std::isspace(c)) {
            if (!in_space && !collapsed.empty()) collapsed.push_back(' ');
            in_space = true;
        } else {
            collapsed.push_back(static_cast<char>(std::tolower(c)));
            in_space = false;
        }
    }

    std::size_t begin = 0, end = collapsed.size();
    while (begin < end && is_trim_char(collapsed[begin])) ++begin;
    while (end > begin && is_trim_char(collapsed[end - 1])) --end;
    std::string result = collapsed.substr(begin, end - begin);

    return result.empty() ? "unknown-metric" : result;
}

MetricRegistry MetricRegistry::with_default_seeds() {
    MetricRegistry registry;
    for (const char* name : {"accuracy", "f1", "recall", "precision", "map",
                             "auc", "bleu", "iou", "exact match"}) {
        registry.add(name, Polarity::benefit);
    }
    for (const char* name : {"time", "error", "perplexity", "wer"}) {
        registry.add(name, Polarity::cost);
    }
    return registry;
}

void MetricRegistry::add(std::string_view name, Polarity polarity) {
    std::string canonical_name = normalize_metric(name);
    entries_[canonical_name] = MetricSpec{canonical_name, polarity};
}

std::string MetricRegistry::canonical(std::string_view raw_header) const {
    return normalize_metric(raw_header);
}

MetricSpec MetricRegistry::resolve(std::string_view canonical_name) const {
    auto it = entries_.find(std::string(canonical_name));
    if (it != entries_.end()) return it->second;
    return MetricSpec{std::string(canonical_name), default_polarity_};
}

}  // namespace tabrank

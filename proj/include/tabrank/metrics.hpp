#pragma once

#include <map>
#include <string>
#include <string_view>

namespace tabrank {

enum class Polarity { benefit, cost };

/// Canonical metric name plus its improvement direction.
struct MetricSpec {
    std::string name;
    Polarity polarity = Polarity::benefit;
};

/// Canonicalize a raw table header: lowercase, LaTeX markup stripped,
/// surrounding punctuation/whitespace trimmed, internal whitespace collapsed.
/// An empty result maps to the sentinel "unknown-metric".
std::string normalize_metric(std::string_view raw_header);

/// Maps canonical metric names to their polarity. Metric polarity is
/// hardwired metadata; names not present resolve to the default polarity.
class MetricRegistry {
public:
    MetricRegistry() = default;

    /// Registry seeded with the common benefit/cost metrics.
    static MetricRegistry with_default_seeds();

    /// Register a metric; the name is canonicalized on insertion.
    void add(std::string_view name, Polarity polarity);

    /// Canonical form of a raw header (normalize_metric).
    std::string canonical(std::string_view raw_header) const;

    /// Resolve a canonical name to its spec, falling back to the default polarity.
    MetricSpec resolve(std::string_view canonical_name) const;

    Polarity default_polarity() const { return default_polarity_; }
    void set_default_polarity(Polarity p) { default_polarity_ = p; }

    const std::map<std::string, MetricSpec>& entries() const { return entries_; }

private:
    std::map<std::string, MetricSpec> entries_;
    Polarity default_polarity_ = Polarity::benefit;
};

}  // namespace tabrank

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace tabrank {

/// One extracted table comparison. "lo/hi" is raw numeric order
/// (value_lo <= value_hi), before any polarity-aware orientation.
struct ComparisonRecord {
    std::string metric;    // canonical metric name
    std::string paper_lo;
    double value_lo = 0.0;
    std::string paper_hi;
    double value_hi = 0.0;
    std::string reporter;  // paper that reported the comparison

    bool operator==(const ComparisonRecord&) const = default;
};

/// File-format contract violation; message names the offending line/field.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Read a JSON-lines record file. Throws IoError naming the line number for a
/// malformed line and the field name for a missing field.
std::vector<ComparisonRecord> load_records(const std::filesystem::path& path);

/// Write records as JSON lines. save then load is the identity.
void save_records(const std::vector<ComparisonRecord>& records,
                  const std::filesystem::path& path);

}  // namespace tabrank

#pragma once

#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "kddx/schema.hpp"

namespace kddx {

// One raw connection record. Fields keep their original text so a parsed
// record re-serializes byte-for-byte; numeric fields are validated at parse
// time but not converted until preprocessing.
struct ConnectionRecord {
    std::array<std::string, kNumFeatures> features;
    std::string label;

    std::string to_csv_line() const;
    bool operator==(const ConnectionRecord&) const = default;
};

struct RawDataset {
    std::vector<ConnectionRecord> records;
    std::string source;  // provenance: path + counts before/after cleaning
};

enum class LabelMode { Raw, FiveCategory, Binary };

struct LabelMapping {
    LabelMode mode = LabelMode::FiveCategory;
    std::unordered_map<std::string, std::string> table;  // raw token -> class

    // Two-column `token<TAB>category` text file.
    static LabelMapping load_five_category(const std::string& path);
    static LabelMapping binary();
    static LabelMapping raw();

    std::string class_of(const std::string& raw_label) const;
};

LabelMode label_mode_from_string(const std::string& s);
std::string to_string(LabelMode m);

// Parse comma-separated KDD records, one per line. `source_name` goes into
// provenance. strict=true aborts on the first malformed line; otherwise the
// line is counted and skipped.
RawDataset parse_kdd(std::istream& in, bool strict = true,
                     const std::string& source_name = "<stream>");

// Opens `path`, transparently gunzipping when the gzip magic is present.
RawDataset parse_kdd_file(const std::string& path, bool strict = true);

// Exact-match dedup over (features, label); first occurrence wins, relative
// order preserved. Removed count is appended to provenance.
RawDataset dedup(const RawDataset& ds);

// Replace every raw label by its class name. Fails with UnknownLabel on a
// token absent from the table (unless mode is Raw).
RawDataset map_labels(const RawDataset& ds, const LabelMapping& m);

}  // namespace kddx

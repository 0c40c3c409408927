#include "kddx/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

#include "kddx/error.hpp"

namespace kddx {

namespace {

bool parse_numeric_field(const std::string& s, double& out) {
    if (s.empty()) return false;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) return false;
    return std::isfinite(out) && out >= 0.0;
}

std::string gunzip(const std::string& compressed) {
    z_stream zs{};
    // 16+MAX_WBITS: gzip container
    if (inflateInit2(&zs, 16 + MAX_WBITS) != Z_OK)
        throw IoError("gzip: inflateInit failed");
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(compressed.data()));
    zs.avail_in = static_cast<uInt>(compressed.size());

    std::string out;
    char buf[1 << 16];
    int ret = Z_OK;
    do {
        zs.next_out = reinterpret_cast<Bytef*>(buf);
        zs.avail_out = sizeof(buf);
        ret = inflate(&zs, Z_NO_FLUSH);
        if (ret != Z_OK && ret != Z_STREAM_END) {
            inflateEnd(&zs);
            throw IoError("gzip: corrupt stream");
        }
        out.append(buf, sizeof(buf) - zs.avail_out);
    } while (ret != Z_STREAM_END && zs.avail_in > 0);
    inflateEnd(&zs);
    return out;
}

}  // namespace

std::string ConnectionRecord::to_csv_line() const {
    std::string out;
    for (const auto& f : features) {
        out += f;
        out += ',';
    }
    out += label;
    return out;
}

RawDataset parse_kdd(std::istream& in, bool strict, const std::string& source_name) {
    RawDataset ds;
    std::string line;
    std::size_t line_no = 0;
    std::size_t skipped = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        ConnectionRecord rec;
        std::size_t field = 0;
        std::size_t start = 0;
        bool bad = false;
        std::string reason;

        for (std::size_t i = 0; i <= line.size() && !bad; ++i) {
            if (i == line.size() || line[i] == ',') {
                std::string token = line.substr(start, i - start);
                start = i + 1;
                if (field < kNumFeatures) {
                    if (is_categorical(field)) {
                        if (token.empty()) {
                            bad = true;
                            reason = "empty token field";
                        }
                    } else {
                        double v;
                        if (!parse_numeric_field(token, v)) {
                            bad = true;
                            reason = "unparsable numeric '" + token + "'";
                        }
                    }
                    if (!bad) rec.features[field] = std::move(token);
                } else if (field == kNumFeatures) {
                    if (token.empty()) {
                        bad = true;
                        reason = "empty label";
                    } else {
                        rec.label = std::move(token);
                    }
                } else {
                    bad = true;
                    reason = "too many fields";
                }
                ++field;
            }
        }
        if (!bad && field != kNumFeatures + 1) {
            bad = true;
            reason = "expected 42 fields, got " + std::to_string(field);
        }

        if (bad) {
            std::string msg = source_name + ":" + std::to_string(line_no) + ": " + reason;
            if (strict) throw MalformedRecord(msg);
            std::cerr << "kddx: skipping malformed record: " << msg << "\n";
            ++skipped;
            continue;
        }
        ds.records.push_back(std::move(rec));
    }

    if (ds.records.empty()) throw EmptyInput(source_name + ": no records");

    std::ostringstream prov;
    prov << source_name << " (" << ds.records.size() << " records parsed";
    if (skipped > 0) prov << ", " << skipped << " malformed skipped";
    prov << ")";
    ds.source = prov.str();
    return ds;
}

RawDataset parse_kdd_file(const std::string& path, bool strict) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open dataset file: " + path);
    std::ostringstream raw;
    raw << f.rdbuf();
    std::string bytes = raw.str();

    if (bytes.size() >= 2 && static_cast<unsigned char>(bytes[0]) == 0x1f &&
        static_cast<unsigned char>(bytes[1]) == 0x8b) {
        bytes = gunzip(bytes);
    }
    std::istringstream in(bytes);
    return parse_kdd(in, strict, path);
}

RawDataset dedup(const RawDataset& ds) {
    RawDataset out;
    out.records.reserve(ds.records.size());
    std::unordered_set<std::string> seen;
    seen.reserve(ds.records.size() * 2);
    for (const auto& rec : ds.records) {
        if (seen.insert(rec.to_csv_line()).second) out.records.push_back(rec);
    }
    std::size_t removed = ds.records.size() - out.records.size();
    out.source = ds.source + "; dedup removed " + std::to_string(removed) + " of " +
                 std::to_string(ds.records.size());
    return out;
}

LabelMapping LabelMapping::load_five_category(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open label mapping file: " + path);
    LabelMapping m;
    m.mode = LabelMode::FiveCategory;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw IoError(path + ":" + std::to_string(line_no) +
                          ": expected token<TAB>category");
        m.table.emplace(line.substr(0, tab), line.substr(tab + 1));
    }
    if (m.table.empty()) throw IoError(path + ": empty mapping");
    return m;
}

LabelMapping LabelMapping::binary() {
    LabelMapping m;
    m.mode = LabelMode::Binary;
    return m;
}

LabelMapping LabelMapping::raw() {
    LabelMapping m;
    m.mode = LabelMode::Raw;
    return m;
}

std::string LabelMapping::class_of(const std::string& raw_label) const {
    switch (mode) {
        case LabelMode::Raw:
            return raw_label;
        case LabelMode::Binary:
            return raw_label == "normal." ? "normal" : "attack";
        case LabelMode::FiveCategory: {
            auto it = table.find(raw_label);
            if (it == table.end())
                throw UnknownLabel("label token not in mapping: '" + raw_label + "'");
            return it->second;
        }
    }
    throw UnknownLabel("invalid label mode");
}

LabelMode label_mode_from_string(const std::string& s) {
    if (s == "raw") return LabelMode::Raw;
    if (s == "five_category") return LabelMode::FiveCategory;
    if (s == "binary") return LabelMode::Binary;
    throw ConfigError("unknown label mode: '" + s + "'");
}

std::string to_string(LabelMode m) {
    switch (m) {
        case LabelMode::Raw: return "raw";
        case LabelMode::FiveCategory: return "five_category";
        case LabelMode::Binary: return "binary";
    }
    return "?";
}

RawDataset map_labels(const RawDataset& ds, const LabelMapping& m) {
    RawDataset out;
    out.records.reserve(ds.records.size());
    for (const auto& rec : ds.records) {
        ConnectionRecord r = rec;
        r.label = m.class_of(rec.label);
        out.records.push_back(std::move(r));
    }
    out.source = ds.source + "; labels mapped (" + to_string(m.mode) + ")";
    return out;
}

}  // namespace kddx

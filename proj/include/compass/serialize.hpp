#pragma once

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "compass/errors.hpp"
#include "compass/wigner.hpp"

namespace compass::io {

using metadata_list = std::vector<std::pair<std::string, std::string>>;

/// Locale-independent formatting with 17 significant digits ('.' decimal
/// point, byte-identical across runs).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Tabular payload shared by the CSV and JSON writers. `status` is parallel
/// to `rows`; non-"ok" entries mark flagged sweep points.
struct table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::vector<std::string> status;
    metadata_list metadata;
};

inline void write_table_csv(std::ostream& os, const table& t) {
    for (const auto& [k, v] : t.metadata) os << "# " << k << " = " << v << "\n";
    for (std::size_t c = 0; c < t.columns.size(); ++c)
        os << (c ? "," : "") << t.columns[c];
    if (!t.status.empty()) os << ",status";
    os << "\n";
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_double(row[c]);
        if (!t.status.empty()) os << "," << t.status[r];
        os << "\n";
    }
}

inline nlohmann::ordered_json table_json(const table& t) {
    nlohmann::ordered_json j;
    auto& meta = j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.metadata) meta[k] = v;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    if (!t.status.empty()) j["status"] = t.status;
    return j;
}

inline void write_table_json(std::ostream& os, const table& t) {
    os << table_json(t).dump(2) << "\n";
}

inline void write_file(const std::string& path, const std::string& payload) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open " + path + " for writing");
    os << payload;
    if (!os) throw io_error("write failed: " + path);
}

/// CSV form of a scalar field: one (x, y, value) row per grid point,
/// x-major, preceded by the metadata comments.
inline table field_table(const scalar_field& f, const std::string& x_label,
                         const std::string& y_label, const std::string& value_label,
                         metadata_list metadata) {
    table t;
    t.columns = {x_label, y_label, value_label};
    t.metadata = std::move(metadata);
    t.rows.reserve(f.values.size());
    for (int i = 0; i < f.grid.nx; ++i)
        for (int j = 0; j < f.grid.ny; ++j)
            t.rows.push_back({f.grid.x(i), f.grid.y(j), f.at(i, j)});
    return t;
}

/// Binary form: <path>.json carries the grid header and metadata,
/// <path>.bin the row-major (x-major) float64 samples in native
/// little-endian order.
inline void write_field_binary(const scalar_field& f, const std::string& base_path,
                               const std::string& x_label, const std::string& y_label,
                               const std::string& value_label, const metadata_list& metadata) {
    nlohmann::ordered_json j;
    j["format"] = "float64";
    j["byte_order"] = "little-endian";
    j["layout"] = "row-major";
    j["axes"] = {{"x", {{"label", x_label}, {"min", f.grid.x_min}, {"max", f.grid.x_max}, {"count", f.grid.nx}}},
                 {"y", {{"label", y_label}, {"min", f.grid.y_min}, {"max", f.grid.y_max}, {"count", f.grid.ny}}}};
    j["value"] = value_label;
    j["data_file"] = base_path.substr(base_path.find_last_of('/') + 1) + ".bin";
    auto& meta = j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : metadata) meta[k] = v;
    write_file(base_path + ".json", j.dump(2) + "\n");

    std::ofstream os(base_path + ".bin", std::ios::binary);
    if (!os) throw io_error("cannot open " + base_path + ".bin for writing");
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!os) throw io_error("write failed: " + base_path + ".bin");
}

} // namespace compass::io

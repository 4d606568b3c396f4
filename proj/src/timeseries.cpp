#include "nematic/timeseries.hpp"

#include <cmath>

#include "nematic/config.hpp"

namespace nematic::harness {

namespace {

// RFC 4180 quoting for header names.
std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + '"';
}

}  // namespace

TimeSeries::TimeSeries(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw SeriesError("a series needs at least a key column");
}

void TimeSeries::add_row(std::vector<double> row) {
    if (row.size() != columns_.size()) {
        throw SeriesError("row has " + std::to_string(row.size()) + " values, expected " +
                          std::to_string(columns_.size()));
    }
    if (!std::isfinite(row[0])) throw SeriesError("key column must be finite");
    if (!rows_.empty() && !(row[0] > rows_.back()[0])) {
        throw SeriesError(columns_[0] + " must be strictly increasing");
    }
    rows_.push_back(std::move(row));
}

void TimeSeries::set_meta(const std::string& key, std::string value) {
    for (auto& [k, v] : meta_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    meta_.emplace_back(key, std::move(value));
}

std::vector<double> TimeSeries::column(std::size_t j) const {
    if (j >= columns_.size()) throw SeriesError("column index out of range");
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) out.push_back(r[j]);
    return out;
}

std::string TimeSeries::to_csv() const {
    std::string out;
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (j) out += ',';
        out += quote(columns_[j]);
    }
    out += '\n';
    for (const auto& r : rows_) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) out += ',';
            out += format_double(r[j]);
        }
        out += '\n';
    }
    return out;
}

}  // namespace nematic::harness

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nematic::harness {

class SeriesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Table keyed by its first column (t, or lambda for parameter ladders),
/// which must be strictly increasing. Every row has the same arity.
class TimeSeries {
public:
    explicit TimeSeries(std::vector<std::string> columns);

    void add_row(std::vector<double> row);
    void set_meta(const std::string& key, std::string value);

    [[nodiscard]] const std::vector<std::string>& columns() const noexcept { return columns_; }
    [[nodiscard]] const std::vector<std::vector<double>>& rows() const noexcept { return rows_; }
    [[nodiscard]] const std::vector<std::pair<std::string, std::string>>& meta() const noexcept {
        return meta_;
    }
    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }
    [[nodiscard]] bool empty() const noexcept { return rows_.empty(); }
    [[nodiscard]] std::vector<double> column(std::size_t j) const;

    /// Header row plus one line per row, shortest round-trip numbers, LF endings.
    [[nodiscard]] std::string to_csv() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
};

}  // namespace nematic::harness

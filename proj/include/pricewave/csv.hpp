#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pricewave {

/// Full-precision scientific formatting (17 significant digits), so that
/// repeated runs diff byte-identically.
inline std::string csv_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i) body_ << ',';
            body_ << header[i];
        }
        body_ << '\n';
        columns_ = header.size();
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_)
            throw std::invalid_argument("CsvWriter: wrong number of columns");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) body_ << ',';
            body_ << csv_num(values[i]);
        }
        body_ << '\n';
    }

    void raw_row(const std::vector<std::string>& cells) {
        if (cells.size() != columns_)
            throw std::invalid_argument("CsvWriter: wrong number of columns");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body_ << ',';
            body_ << cells[i];
        }
        body_ << '\n';
    }

    std::string str() const { return body_.str(); }

    /// Buffers the whole document first, so a failed open leaves nothing
    /// behind.
    void write(const std::string& path) const {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path);
        out << body_.str();
        if (!out) throw std::runtime_error("short write to " + path);
    }

private:
    std::ostringstream body_;
    std::size_t columns_ = 0;
};

}  // namespace pricewave

#include "nkl/csvio.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nkl/common.hpp"

namespace nkl {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    bool needs = false;
    for (char ch : field)
        if (ch == ',' || ch == '"' || ch == '\n' || ch == '\r') {
            needs = true;
            break;
        }
    if (!needs) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (closed_) throw std::logic_error("CsvWriter: row after close");
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += csv_escape(fields[i]);
    }
    buffer_ += "\r\n";
}

void CsvWriter::close() {
    if (closed_) return;
    closed_ = true;
    std::FILE* fp = std::fopen(path_.c_str(), "wb");
    if (!fp) throw UsageError("cannot open output file: " + path_);
    const std::size_t written = std::fwrite(buffer_.data(), 1, buffer_.size(), fp);
    const int rc = std::fclose(fp);
    if (written != buffer_.size() || rc != 0)
        throw UsageError("failed to write output file: " + path_);
}

}  // namespace nkl

#pragma once

#include <string>
#include <vector>

namespace nkl {

// Shortest decimal representation that round-trips through binary64.
std::string format_double(double v);

// RFC 4180: fields containing commas, quotes, or newlines are quoted and
// embedded quotes doubled. Rows end with "\r\n".
std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    explicit CsvWriter(std::string path);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& fields);
    void close();
    const std::string& text() const { return buffer_; }

private:
    std::string path_;
    std::string buffer_;
    bool closed_ = false;
};

}  // namespace nkl

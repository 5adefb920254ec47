#pragma once

#include <ostream>
#include <string>

namespace fracseries {

/// Locale-independent float formatting: shortest-general form at 17
/// significant digits via std::to_chars. Identical inputs give identical
/// bytes, which is what makes the CSV outputs reproducible.
std::string format_double(double v);

/// CSV sink with '#'-prefixed header lines, a single column-name row, and
/// '\n' line endings.
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(const std::string& line);
    void row(const std::string& cells);  // pre-joined row

    template <typename... Cells>
    void cells(const Cells&... c) {
        std::string line;
        ((line += cell_string(c), line += ','), ...);
        if (!line.empty()) line.pop_back();
        row(line);
    }

  private:
    static std::string cell_string(double v) { return format_double(v); }
    static std::string cell_string(int v) { return std::to_string(v); }
    static std::string cell_string(long v) { return std::to_string(v); }
    static std::string cell_string(const std::string& s) { return s; }
    static std::string cell_string(const char* s) { return s; }

    std::ostream& os_;
};

}  // namespace fracseries

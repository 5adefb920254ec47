#include "fracseries/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace fracseries {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    if (ec != std::errc{}) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

void CsvWriter::comment(const std::string& line) { os_ << "# " << line << "\n"; }

void CsvWriter::row(const std::string& cells) { os_ << cells << "\n"; }

}  // namespace fracseries

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace windnet {

/// 12 significant digits; enough for byte-stable reruns without printing
/// noise digits.
std::string format_double(double value);

/// Accumulates CSV text with a header row and a trailing newline.
class CsvBuilder {
public:
    explicit CsvBuilder(std::vector<std::string> header);

    void row(const std::vector<std::string>& cells);

    const std::string& str() const { return text_; }
    std::size_t data_rows() const { return rows_; }

private:
    void append_line(const std::vector<std::string>& cells);

    std::string text_;
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
};

/// Writes via a temp file in the same directory plus rename, so a partial
/// run never leaves a truncated file behind.
void write_text_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_text(const std::filesystem::path& path);

}  // namespace windnet

#ifndef DTBC_CSV_HPP
#define DTBC_CSV_HPP

#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace dtbc {

// Shortest-exact-enough form: 17 significant digits in scientific notation.
// NaN is written as an empty field.
std::string format_double(double value);

// Quotes a field when it contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

class CsvWriter {
public:
    // `comment`, when given, is written first as a `# ...` line.
    CsvWriter(const std::string& path, const std::vector<std::string>& header,
              const std::optional<std::string>& comment = std::nullopt);

    CsvWriter& field(const std::string& text);
    CsvWriter& field(double value);
    CsvWriter& field(long long value);
    CsvWriter& field(int value) { return field(static_cast<long long>(value)); }
    void end_row();

    const std::string& path() const { return path_; }

private:
    std::string path_;
    std::ofstream out_;
    std::size_t columns_;
    std::size_t in_row_ = 0;
};

} // namespace dtbc

#endif // DTBC_CSV_HPP

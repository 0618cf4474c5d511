#include "dtbc/csv.hpp"

#include <cmath>
#include <cstdio>

#include "dtbc/error.hpp"

namespace dtbc {

std::string format_double(double value)
{
    if (std::isnan(value))
        return {};
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

std::string csv_escape(const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"')
            out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header,
                     const std::optional<std::string>& comment)
    : path_(path), out_(path, std::ios::binary), columns_(header.size())
{
    if (!out_)
        throw ValidationError("cannot write '" + path + "'");
    if (comment)
        out_ << "# " << *comment << "\r\n";
    for (const auto& name : header)
        field(name);
    end_row();
}

CsvWriter& CsvWriter::field(const std::string& text)
{
    if (in_row_ > 0)
        out_ << ',';
    out_ << csv_escape(text);
    ++in_row_;
    return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_double(value)); }

CsvWriter& CsvWriter::field(long long value) { return field(std::to_string(value)); }

void CsvWriter::end_row()
{
    if (in_row_ != columns_)
        throw NumericalError("csv row in '" + path_ + "' has " + std::to_string(in_row_) + " fields, expected " +
                             std::to_string(columns_));
    out_ << "\r\n";
    in_row_ = 0;
    if (!out_)
        throw NumericalError("write failed for '" + path_ + "'");
}

} // namespace dtbc

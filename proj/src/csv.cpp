#include "telegraph/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <system_error>

namespace telegraph {

namespace {

template <class T>
T parse_field(std::string_view text, std::size_t line) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("csv line " + std::to_string(line) + ": cannot parse '" +
                                 std::string(text) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    (void)ec;
    return std::string(buf, ptr);
}

std::string format_shortest(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    (void)ec;
    return std::string(buf, ptr);
}

void write_csv_header(std::ostream& out) { out << kCsvHeader << '\n'; }

void write_csv_row(std::ostream& out, const ExperimentRow& row) {
    out << format_double(row.K) << ',' << format_double(row.sigma) << ',' << format_double(row.lambda) << ','
        << row.n << ',' << format_double(row.brownian.mean) << ',' << format_double(row.brownian.std_error)
        << ',' << format_double(row.telegraph.mean) << ',' << format_double(row.telegraph.std_error) << ','
        << format_double(row.error) << ',' << format_double(row.bound_per_C) << ',' << to_string(row.variant)
        << ',' << row.seed << '\n';
}

void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    write_csv_header(out);
    for (const auto& row : rows) write_csv_row(out, row);
}

void write_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& path) {
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    write_csv(rows, file);
    file.flush();
    if (!file) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<ExperimentRow> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) {
        throw std::runtime_error("csv: missing or unexpected header");
    }
    std::vector<ExperimentRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split(line);
        if (f.size() != 12) {
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected 12 fields");
        }
        ExperimentRow row;
        row.K = parse_field<double>(f[0], line_no);
        row.sigma = parse_field<double>(f[1], line_no);
        row.lambda = parse_field<double>(f[2], line_no);
        row.n = parse_field<std::uint64_t>(f[3], line_no);
        row.brownian = {parse_field<double>(f[4], line_no), parse_field<double>(f[5], line_no), row.n};
        row.telegraph = {parse_field<double>(f[6], line_no), parse_field<double>(f[7], line_no), row.n};
        row.error = parse_field<double>(f[8], line_no);
        row.bound_per_C = parse_field<double>(f[9], line_no);
        row.variant = parse_variant(f[10]);
        row.seed = parse_field<std::uint64_t>(f[11], line_no);
        rows.push_back(row);
    }
    return rows;
}

std::vector<ExperimentRow> read_csv(const std::filesystem::path& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
    return read_csv(file);
}

}  // namespace telegraph

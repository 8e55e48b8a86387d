#pragma once

// Experiment rows as CSV: fixed header, '.' decimal point, 17 significant
// digits (lossless for doubles), LF line endings.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "telegraph/mc_engine.hpp"

namespace telegraph {

inline constexpr std::string_view kCsvHeader =
    "K,sigma,lambda,n,est_brownian,se_brownian,est_telegraph,se_telegraph,error,bound_per_C,variant,seed";

/// Locale-independent "%.17g".
std::string format_double(double value);

/// Shortest representation that round-trips.
std::string format_shortest(double value);

void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ExperimentRow& row);
void write_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

/// Throws std::runtime_error naming the path on I/O failure.
void write_csv(const std::vector<ExperimentRow>& rows, const std::filesystem::path& path);

std::vector<ExperimentRow> read_csv(std::istream& in);
std::vector<ExperimentRow> read_csv(const std::filesystem::path& path);

}  // namespace telegraph

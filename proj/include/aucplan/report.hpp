#pragma once

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "aucplan/requests.hpp"

namespace aucplan::app {

enum class OutputFormat { Text, Json, Csv };

OutputFormat parse_format(const std::string& name);

/// Reproduces one of the three published design grids (1: proposed kernel,
/// 2: difference of two AUCs, 3: Obuchowski kernel). One row per
/// (cell, assurance) pair; eap/ecp are filled only when runs > 0.
std::vector<Json> reproduce_table(int table, long runs, std::uint64_t seed, int threads = 0);

/// CSV with a header row from the first row's keys. eap/ecp are written as
/// percentages with 2 decimals, nulls as empty fields.
void write_csv(std::ostream& os, const std::vector<Json>& rows);

/// Aligned plain-text table, same cell formatting as CSV.
void write_text_table(std::ostream& os, const std::vector<Json>& rows);

/// One record as "key  value" lines.
void write_text_record(std::ostream& os, const Json& record);

void write_rows(std::ostream& os, const std::vector<Json>& rows, OutputFormat fmt);

/// Writes CSV to `path`; throws std::runtime_error naming the path on failure.
void write_csv_file(const std::filesystem::path& path, const std::vector<Json>& rows);

} // namespace aucplan::app

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mohl::post {

/// Plain numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// RFC-4180-style writer; numbers carry 17 significant digits so a read-back
/// reproduces the doubles exactly.
void export_csv(const CsvTable& table, const std::filesystem::path& path);

CsvTable read_csv(const std::filesystem::path& path);

/// Raw string-cell reader for schema validation.
std::vector<std::vector<std::string>> read_csv_cells(const std::filesystem::path& path);

}  // namespace mohl::post

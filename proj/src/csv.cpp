#include "mohl/post/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mohl/errors.hpp"

namespace mohl::post {

namespace {

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

void export_csv(const CsvTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    if (i) out << ',';
    out << quote_if_needed(table.header[i]);
  }
  out << '\n';
  char buf[40];
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out << buf;
    }
    out << '\n';
  }
  if (!out) throw IoFailure("write failed for " + path.string());
}

std::vector<std::vector<std::string>> read_csv_cells(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    rows.push_back(split_line(line));
  }
  return rows;
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto cells = read_csv_cells(path);
  if (cells.empty()) throw IoFailure("empty csv " + path.string());
  CsvTable t;
  t.header = cells.front();
  for (std::size_t r = 1; r < cells.size(); ++r) {
    std::vector<double> row;
    row.reserve(cells[r].size());
    for (const std::string& cell : cells[r]) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw SchemaViolation("non-numeric cell '" + cell + "' in " + path.string());
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace mohl::post

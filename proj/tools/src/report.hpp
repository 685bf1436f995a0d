#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace entclt::cli {

// %.17g: shortest text that round-trips a double bit-for-bit, so report
// bytes are stable across runs and worker counts.
std::string format_double(double x);

// RFC-4180 table: CRLF record separators, minimal quoting (fields holding
// comma, quote, CR or LF are quoted with internal quotes doubled).
class CsvTable {
  public:
    explicit CsvTable(std::vector<std::string> header);
    void add_row(std::vector<std::string> row);  // must match header width
    std::string to_string() const;

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

// Binary-mode write so the emitted bytes are exactly `content`.
void write_text_file(const std::string& path, const std::string& content);

void write_json_file(const std::string& path, const nlohmann::json& doc);

}  // namespace entclt::cli

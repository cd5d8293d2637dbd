#pragma once

#include <string>
#include <vector>

namespace nahmlab {

/// Shortest round-trip decimal form of a double (printf %.17g), so reruns are
/// bit-identical.
std::string fmt_g17(double v);

/// Simple deterministic CSV assembly: header once, then rows of preformatted
/// cells.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace nahmlab

#pragma once

#include <fstream>
#include <string>
#include <vector>

namespace fade {

/// CSV writer with '#'-prefixed header comments and locale-independent
/// %.17g numeric formatting (byte-identical output for identical inputs).
class CsvWriter {
  public:
    explicit CsvWriter(std::ostream& out) : out_(out) {}

    void comment(const std::string& text);
    void header(const std::vector<std::string>& names);
    void row(const std::vector<double>& values);
    void row_mixed(const std::vector<std::string>& cells);

    static std::string format(double x);

  private:
    std::ostream& out_;
};

}  // namespace fade

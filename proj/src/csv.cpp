#include "curlmesh/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace curlmesh::csv {

namespace {
constexpr const char* kToolVersion = "curlmesh 1.0";
}

std::uint64_t config_hash(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string Writer::num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::string Writer::quote(const std::string& s) {
  bool need = s.find_first_of(",\"\n") != std::string::npos;
  if (!need) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

Writer::Writer(const std::string& path, const std::vector<std::string>& columns,
               const std::string& config_text)
    : out_(path), ncols_(columns.size()) {
  if (!out_) throw std::runtime_error("csv: cannot open " + path);
  char hash[32];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(config_hash(config_text)));
  out_ << "# " << kToolVersion << " config=" << hash << "\n";
  for (size_t i = 0; i < columns.size(); ++i)
    out_ << quote(columns[i]) << (i + 1 < columns.size() ? "," : "\n");
}

void Writer::row(const std::vector<double>& values) {
  if (values.size() != ncols_) throw std::logic_error("csv: column count mismatch");
  for (size_t i = 0; i < values.size(); ++i)
    out_ << num(values[i]) << (i + 1 < values.size() ? "," : "\n");
}

void Writer::row_mixed(const std::vector<std::string>& cells) {
  if (cells.size() != ncols_) throw std::logic_error("csv: column count mismatch");
  for (size_t i = 0; i < cells.size(); ++i)
    out_ << quote(cells[i]) << (i + 1 < cells.size() ? "," : "\n");
}

}  // namespace curlmesh::csv

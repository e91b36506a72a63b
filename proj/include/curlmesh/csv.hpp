//! \file csv.hpp
//  \brief RFC-4180 CSV emission with a config-hash comment line.

#ifndef CURLMESH_CSV_HPP_
#define CURLMESH_CSV_HPP_

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

namespace curlmesh::csv {

//! FNV-1a over the canonicalized config text
std::uint64_t config_hash(const std::string& text);

class Writer {
 public:
  Writer(const std::string& path, const std::vector<std::string>& columns,
         const std::string& config_text);
  //! one row; numeric cells are printed in scientific notation, >=6 sig digits
  void row(const std::vector<double>& values);
  void row_mixed(const std::vector<std::string>& cells);
  static std::string num(double v);
  static std::string quote(const std::string& s);

 private:
  std::ofstream out_;
  size_t ncols_;
};

}  // namespace curlmesh::csv

#endif  // CURLMESH_CSV_HPP_

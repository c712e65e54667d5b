#include <saltice/io.hpp>

#include <cstdio>
#include <stdexcept>

namespace saltice {

std::string format_number(double value, int digits) {
  if (value == 0.0) return "0";  // folds -0 into 0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, value);
  return buf;
}

void write_header(std::ostream& os, const OutputHeader& header) {
  os << "# saltice " << kVersion << '\n';
  os << "# command: " << header.command << '\n';
  for (const auto& [key, value] : header.parameters) os << "# " << key << " = " << value << '\n';
  os << "# seed = " << (header.seed ? std::to_string(*header.seed) : std::string("none")) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path.string() + "'");
  return out;
}

}  // namespace saltice

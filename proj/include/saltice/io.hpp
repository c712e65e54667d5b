#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace saltice {

inline constexpr const char* kVersion = "0.1.0";

/// Locale-independent "%.<digits>g" formatting; deterministic output relies on it.
std::string format_number(double value, int digits = 9);

/// Comment block written at the top of every output file.
struct OutputHeader {
  std::string command;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::optional<std::uint64_t> seed;

  void add(std::string key, std::string value) {
    parameters.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, double value) { add(std::move(key), format_number(value)); }
};

void write_header(std::ostream& os, const OutputHeader& header);

/// Opens `path` for writing or throws std::runtime_error naming the path.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace saltice

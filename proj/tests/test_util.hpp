#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

namespace test_util {

inline std::filesystem::path temp_dir() {
  auto dir = std::filesystem::temp_directory_path() / "dirac_spectra_tests";
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline int count_occurrences(const std::string& text, const std::string& needle) {
  int count = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++count;
  return count;
}

// Deterministic RNG for sampled properties.
inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed1234);
  return gen;
}

}  // namespace test_util

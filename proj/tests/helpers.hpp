#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "wordshift/corpus.hpp"

namespace testing {

inline wordshift::TokenDistribution dist(const std::string& label, wordshift::TokenCounts counts) {
  return wordshift::TokenDistribution(label, std::move(counts));
}

// {a:.5, b:.5} and {a:.25, b:.75}: the two-word fixture used throughout.
inline wordshift::TokenDistribution half_half() { return dist("one", {{"a", 2}, {"b", 2}}); }
inline wordshift::TokenDistribution quarter() { return dist("two", {{"a", 1}, {"b", 3}}); }

// Scratch file under the build tree, removed on destruction.
class TempFile {
public:
  TempFile(const std::string& name, const std::string& content)
      : path_(std::filesystem::temp_directory_path() / ("wordshift_test_" + name)) {
    std::ofstream(path_, std::ios::binary) << content;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  TempFile(const TempFile&) = delete;
  TempFile& operator=(const TempFile&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::string str() const { return path_.string(); }

private:
  std::filesystem::path path_;
};

}  // namespace testing

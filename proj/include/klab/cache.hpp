#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "klab/zerosum.hpp"

namespace klab {

/// Persistent atom-set cache. One JSON file per (group, support, cap) key,
/// written to a temporary file and renamed into place.
class AtomCache {
 public:
  static constexpr int kFormatVersion = 1;

  explicit AtomCache(std::filesystem::path dir, int format_version = kFormatVersion);

  static std::string key(const Support& support, std::optional<std::size_t> cap);

  std::optional<AtomSet> get(const Support& support, std::optional<std::size_t> cap) const;
  void put(const Support& support, std::optional<std::size_t> cap, const AtomSet& atoms) const;

  /// Cached lookup, computing and storing on a miss.
  AtomSet atoms(const Support& support, std::optional<std::size_t> cap) const;

  const std::filesystem::path& directory() const noexcept { return dir_; }
  std::filesystem::path entry_path(const std::string& key) const;
  std::size_t entry_count() const;
  std::size_t clear() const;

 private:
  std::filesystem::path dir_;
  int version_;
};

}  // namespace klab

#pragma once

// On-disk cache of computed grid points, one small JSON file per point.

#include <filesystem>
#include <optional>
#include <string>

#include "harvest/sweep.hpp"

namespace harvest {

class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path dir);

  /// HARVEST_CACHE_DIR, else $XDG_CACHE_HOME/harvest, else ~/.cache/harvest.
  static std::filesystem::path default_directory();

  /// Hash of the resolved inputs, tolerances, edr flag and software version.
  static std::string key(const PointInput& in, const Tolerances& tol, bool edr);

  /// Exact hits only. Unreadable or mismatching entries are removed with a warning.
  std::optional<ResultRow> lookup(const std::string& key) const;
  void store(const std::string& key, const ResultRow& row) const;

  const std::filesystem::path& directory() const { return dir_; }

 private:
  std::filesystem::path entry_path(const std::string& key) const;
  std::filesystem::path dir_;
};

/// 64-bit FNV-1a, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace harvest

#include "harvest/result_cache.hpp"

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace harvest {

namespace {

std::string key_text(const PointInput& in, const Tolerances& tol, bool edr) {
  std::string s = std::string("harvest ") + kVersion;
  for (double x : {in.ads_length, in.mass, in.zeta, in.gap, in.d_a, in.d_ab, tol.contour.eta, tol.contour.rel_tol,
                   tol.contour.abs_tol, tol.truncation.tail_tol}) {
    s += ' ';
    s += format_double(x);
  }
  s += ' ' + std::to_string(tol.contour.max_subdivisions) + ' ' + std::to_string(tol.truncation.n_min) + ' ' +
       std::to_string(tol.truncation.n_max) + (edr ? " edr" : "");
  return s;
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ResultCache::ResultCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ResultCache::default_directory() {
  if (const char* d = std::getenv("HARVEST_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::filesystem::path(x) / "harvest";
  if (const char* h = std::getenv("HOME"); h && *h) return std::filesystem::path(h) / ".cache" / "harvest";
  return std::filesystem::temp_directory_path() / "harvest-cache";
}

// The full key text goes into the entry too, so a hash collision reads as a miss.
std::string ResultCache::key(const PointInput& in, const Tolerances& tol, bool edr) {
  return key_text(in, tol, edr);
}

std::filesystem::path ResultCache::entry_path(const std::string& key) const {
  return dir_ / (fnv1a_hex(key) + ".json");
}

std::optional<ResultRow> ResultCache::lookup(const std::string& key) const {
  const auto path = entry_path(key);
  std::ifstream f(path, std::ios::binary);
  if (!f) return std::nullopt;
  try {
    const nlohmann::json j = nlohmann::json::parse(f);
    if (j.at("key").get<std::string>() != key) return std::nullopt;
    return row_from_json(j.at("row"));
  } catch (const std::exception& e) {
    std::cerr << "warning: dropping corrupt cache entry " << path.string() << " (" << e.what() << ")\n";
    std::error_code ec;
    std::filesystem::remove(path, ec);
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const ResultRow& row) const {
  static std::atomic<unsigned> counter{0};
  const auto path = entry_path(key);
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id() << '.' << counter++;
  auto tmp = path;
  tmp += suffix.str();
  {
    std::ofstream f(tmp, std::ios::binary);
    f << nlohmann::json{{"key", key}, {"row", row_to_json(row)}}.dump() << '\n';
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace harvest

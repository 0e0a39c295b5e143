#include "klab/cache.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

#include "klab/io.hpp"

namespace klab {

namespace fs = std::filesystem;

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

AtomCache::AtomCache(fs::path dir, int format_version) : dir_(std::move(dir)), version_(format_version) {}

std::string AtomCache::key(const Support& support, std::optional<std::size_t> cap) {
  std::string k = format_group(support.group()) + "|";
  for (const auto& x : support.elements()) k += format_element(x) + ";";
  k += "|";
  k += cap ? std::to_string(*cap) : "none";
  return k;
}

fs::path AtomCache::entry_path(const std::string& key) const {
  char name[32];
  std::snprintf(name, sizeof name, "atoms-%016llx.json", static_cast<unsigned long long>(fnv1a(key)));
  return dir_ / name;
}

std::optional<AtomSet> AtomCache::get(const Support& support, std::optional<std::size_t> cap) const {
  const std::string k = key(support, cap);
  const fs::path path = entry_path(k);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    const auto j = io::Json::parse(in);
    if (j.at("format_version").get<int>() != version_) return std::nullopt;
    if (j.at("key").get<std::string>() != k) return std::nullopt;
    return io::atom_set_from_json(j.at("atoms"));
  } catch (const std::exception& e) {
    std::cerr << "klab: ignoring corrupt cache entry " << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
}

void AtomCache::put(const Support& support, std::optional<std::size_t> cap, const AtomSet& atoms) const {
  static std::atomic<unsigned> counter{0};
  const std::string k = key(support, cap);
  const fs::path path = entry_path(k);
  std::error_code ec;
  fs::create_directories(dir_, ec);

  const io::Json j{{"format_version", version_}, {"key", k}, {"atoms", io::to_json(atoms)}};
  const fs::path tmp = path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) return;  // unwritable cache directory: behave as if uncached
    out << j.dump() << "\n";
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) fs::remove(tmp, ec);
}

AtomSet AtomCache::atoms(const Support& support, std::optional<std::size_t> cap) const {
  if (auto hit = get(support, cap)) return *std::move(hit);
  AtomSet fresh = klab::atoms(support, cap);
  put(support, cap, fresh);
  return fresh;
}

std::size_t AtomCache::entry_count() const {
  std::error_code ec;
  std::size_t n = 0;
  for (const auto& e : fs::directory_iterator(dir_, ec))
    if (e.path().filename().string().starts_with("atoms-") && e.path().extension() == ".json") ++n;
  return n;
}

std::size_t AtomCache::clear() const {
  std::error_code ec;
  std::vector<fs::path> doomed;
  for (const auto& e : fs::directory_iterator(dir_, ec))
    if (e.path().filename().string().starts_with("atoms-")) doomed.push_back(e.path());
  for (const auto& p : doomed) fs::remove(p, ec);
  return doomed.size();
}

}  // namespace klab

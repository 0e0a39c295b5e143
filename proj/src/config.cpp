#include "klab/config.hpp"

#include <fstream>
#include <iostream>

#include "klab/io.hpp"
#include "text.hpp"

namespace klab {

std::size_t RunConfig::cap_for(const Group& g) const {
  if (default_cap) return *default_cap;
  if (!g.is_finite()) throw Error(ErrorKind::NeedsCap, "groups with free rank need an explicit --cap");
  const Integer n = *g.order() * 3;
  return n.fits_ulong_p() ? n.get_ui() : std::numeric_limits<std::size_t>::max();
}

namespace {

std::size_t parse_size(const char* what, std::string_view value) {
  const Integer v = text::parse_integer(value, ErrorKind::InvalidInput);
  if (v < 0 || !v.fits_ulong_p()) throw Error(ErrorKind::InvalidInput, std::string(what) + " must be a non-negative integer");
  return v.get_ui();
}

std::filesystem::path default_cache_dir(const EnvLookup& env) {
  if (const char* xdg = env("XDG_CACHE_HOME"); xdg && *xdg) return std::filesystem::path(xdg) / "klab";
  if (const char* home = env("HOME"); home && *home) return std::filesystem::path(home) / ".cache" / "klab";
  return ".klab-cache";
}

void apply_file(RunConfig& cfg, const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return;
  io::Json j;
  try {
    j = io::Json::parse(in);
  } catch (const std::exception& e) {
    throw Error(ErrorKind::InvalidInput, "cannot parse config file " + file.string() + ": " + e.what());
  }
  if (j.contains("default_cap")) cfg.default_cap = j.at("default_cap").get<std::size_t>();
  if (j.contains("subset_guard")) cfg.subset_guard = j.at("subset_guard").get<std::size_t>();
  if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
  if (j.contains("output")) cfg.json = j.at("output").get<std::string>() == "json";
  if (j.contains("cache")) cfg.use_cache = j.at("cache").get<bool>();
}

}  // namespace

RunConfig load_config(const EnvLookup& env, const std::optional<std::filesystem::path>& cache_dir_override) {
  RunConfig cfg;
  if (cache_dir_override) cfg.cache_dir = *cache_dir_override;
  else if (const char* dir = env("KLAB_CACHE_DIR"); dir && *dir) cfg.cache_dir = dir;
  else cfg.cache_dir = default_cache_dir(env);

  apply_file(cfg, cfg.cache_dir / "config.json");

  if (const char* t = env("KLAB_THREADS"); t && *t) cfg.threads = static_cast<unsigned>(parse_size("KLAB_THREADS", t));
  if (const char* c = env("KLAB_DEFAULT_CAP"); c && *c) cfg.default_cap = parse_size("KLAB_DEFAULT_CAP", c);
  if (cfg.threads == 0) cfg.threads = 1;
  return cfg;
}

}  // namespace klab

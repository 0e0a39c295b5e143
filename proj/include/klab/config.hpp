#pragma once

#include <filesystem>
#include <functional>
#include <optional>

#include "klab/lengths.hpp"

namespace klab {

/// Run settings. Precedence, lowest first: built-in defaults, the config
/// file `<cache_dir>/config.json`, environment variables, command-line flags.
///
/// Config file keys: "default_cap" (integer), "subset_guard" (integer),
/// "threads" (integer), "output" ("human" or "json"), "cache" (bool).
/// Environment: KLAB_CACHE_DIR, KLAB_THREADS, KLAB_DEFAULT_CAP.
struct RunConfig {
  std::filesystem::path cache_dir;
  std::optional<std::size_t> default_cap;  // unset: 3 * |G| for sweeps
  std::size_t subset_guard = kDefaultSubsetGuard;
  unsigned threads = 1;
  bool json = false;
  bool use_cache = true;

  std::size_t cap_for(const Group& g) const;
};

using EnvLookup = std::function<const char*(const char*)>;

/// Defaults, then config file, then environment. `cache_dir_override` (from
/// a flag) takes precedence over KLAB_CACHE_DIR when locating the file.
RunConfig load_config(const EnvLookup& env, const std::optional<std::filesystem::path>& cache_dir_override = std::nullopt);

}  // namespace klab

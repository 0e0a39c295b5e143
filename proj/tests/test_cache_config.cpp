#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>

#include "klab/cache.hpp"
#include "klab/config.hpp"
#include "klab/io.hpp"

using namespace klab;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("klab-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Support c3_support() {
  const Group g = group_from_spec(0, {3});
  return Support(g, {make_element(g, {}, {Integer(1)}), make_element(g, {}, {Integer(2)})});
}

void expect_same(const AtomSet& a, const AtomSet& b) {
  EXPECT_EQ(a.support, b.support);
  EXPECT_EQ(a.atoms, b.atoms);
  EXPECT_EQ(a.complete, b.complete);
  EXPECT_EQ(a.cap_used, b.cap_used);
  EXPECT_EQ(io::to_json(a).dump(), io::to_json(b).dump());
}

}  // namespace

TEST(Cache, RoundTrip) {
  const AtomCache cache(fresh_dir("rt"));
  const Support s = c3_support();
  const AtomSet a = atoms(s);
  cache.put(s, std::nullopt, a);
  const auto back = cache.get(s, std::nullopt);
  ASSERT_TRUE(back.has_value());
  expect_same(*back, a);
  EXPECT_EQ(cache.entry_count(), 1u);
}

TEST(Cache, MissOnEmptyAndOtherKeys) {
  const AtomCache cache(fresh_dir("miss"));
  const Support s = c3_support();
  EXPECT_FALSE(cache.get(s, std::nullopt).has_value());
  cache.put(s, std::nullopt, atoms(s));
  EXPECT_FALSE(cache.get(s, 5).has_value());
  EXPECT_FALSE(cache.get(Support::whole_group(s.group()), std::nullopt).has_value());
  EXPECT_NE(AtomCache::key(s, 5), AtomCache::key(s, std::nullopt));
}

TEST(Cache, VersionBumpRecomputes) {
  const fs::path dir = fresh_dir("ver");
  const Support s = c3_support();
  AtomCache(dir, 1).put(s, std::nullopt, atoms(s, 2));  // deliberately stale content
  const AtomCache bumped(dir, 2);
  EXPECT_FALSE(bumped.get(s, std::nullopt).has_value());
  const AtomSet fresh = bumped.atoms(s, std::nullopt);
  expect_same(fresh, atoms(s));
  ASSERT_TRUE(bumped.get(s, std::nullopt).has_value());
  EXPECT_FALSE(AtomCache(dir, 1).get(s, std::nullopt).has_value());
}

TEST(Cache, CorruptEntryIsMissThenOverwritten) {
  const fs::path dir = fresh_dir("bad");
  const AtomCache cache(dir);
  const Support s = c3_support();
  const fs::path path = cache.entry_path(AtomCache::key(s, std::nullopt));
  std::ofstream(path) << "{ not json";
  testing::internal::CaptureStderr();
  EXPECT_FALSE(cache.get(s, std::nullopt).has_value());
  const AtomSet a = cache.atoms(s, std::nullopt);
  const std::string log = testing::internal::GetCapturedStderr();
  EXPECT_NE(log.find("corrupt"), std::string::npos);
  expect_same(a, atoms(s));
  ASSERT_TRUE(cache.get(s, std::nullopt).has_value());

  std::ofstream(path) << R"({"format_version":1,"key":"x","atoms":{}})";
  EXPECT_FALSE(cache.get(s, std::nullopt).has_value());
}

TEST(Cache, HitsAreByteIdenticalToRecomputation) {
  const AtomCache cache(fresh_dir("bytes"));
  for (auto g : {group_from_spec(0, {6}), group_from_spec(0, {2, 4}), group_from_spec(0, {2, 2, 2})}) {
    const Support s = Support::whole_group(g);
    const auto first = cache.atoms(s, std::nullopt);
    const auto second = cache.atoms(s, std::nullopt);
    EXPECT_EQ(io::to_json(first).dump(), io::to_json(atoms(s)).dump());
    EXPECT_EQ(io::to_json(second).dump(), io::to_json(atoms(s)).dump());
  }
  const Group z = group_from_spec(1, {});
  const Support zs(z, {make_element(z, {Integer(-2)}, {}), make_element(z, {Integer(3)}, {})});
  cache.atoms(zs, 5);
  EXPECT_EQ(io::to_json(*cache.get(zs, 5)).dump(), io::to_json(atoms(zs, 5)).dump());
}

TEST(Cache, Clear) {
  const AtomCache cache(fresh_dir("clear"));
  const Support s = c3_support();
  cache.put(s, std::nullopt, atoms(s));
  cache.put(s, 4, atoms(s, 4));
  EXPECT_EQ(cache.entry_count(), 2u);
  EXPECT_EQ(cache.clear(), 2u);
  EXPECT_EQ(cache.entry_count(), 0u);
}

namespace {

struct FakeEnv {
  std::map<std::string, std::string> vars;
  EnvLookup lookup() const {
    return [this](const char* name) -> const char* {
      auto it = vars.find(name);
      return it == vars.end() ? nullptr : it->second.c_str();
    };
  }
};

}  // namespace

TEST(Config, Defaults) {
  FakeEnv env{{{"HOME", "/home/someone"}}};
  const RunConfig cfg = load_config(env.lookup());
  EXPECT_EQ(cfg.cache_dir, fs::path("/home/someone/.cache/klab"));
  EXPECT_FALSE(cfg.default_cap.has_value());
  EXPECT_EQ(cfg.subset_guard, kDefaultSubsetGuard);
  EXPECT_EQ(cfg.threads, 1u);
  EXPECT_FALSE(cfg.json);
  EXPECT_TRUE(cfg.use_cache);
  EXPECT_EQ(cfg.cap_for(group_from_spec(0, {2, 2})), 12u);
  EXPECT_THROW(cfg.cap_for(group_from_spec(1, {})), Error);

  FakeEnv xdg{{{"XDG_CACHE_HOME", "/x"}, {"HOME", "/h"}}};
  EXPECT_EQ(load_config(xdg.lookup()).cache_dir, fs::path("/x/klab"));
}

TEST(Config, FileThenEnvironment) {
  const fs::path dir = fresh_dir("cfg");
  std::ofstream(dir / "config.json") << R"({"default_cap": 7, "subset_guard": 12, "threads": 3, "output": "json", "cache": false})";
  FakeEnv env{{{"KLAB_CACHE_DIR", dir.string()}}};
  RunConfig cfg = load_config(env.lookup());
  EXPECT_EQ(cfg.default_cap, 7u);
  EXPECT_EQ(cfg.subset_guard, 12u);
  EXPECT_EQ(cfg.threads, 3u);
  EXPECT_TRUE(cfg.json);
  EXPECT_FALSE(cfg.use_cache);
  EXPECT_EQ(cfg.cap_for(group_from_spec(0, {5})), 7u);

  env.vars["KLAB_THREADS"] = "2";
  env.vars["KLAB_DEFAULT_CAP"] = "11";
  cfg = load_config(env.lookup());
  EXPECT_EQ(cfg.threads, 2u);
  EXPECT_EQ(cfg.default_cap, 11u);
  EXPECT_EQ(cfg.subset_guard, 12u);

  // A flag-supplied directory wins over the environment.
  const fs::path other = fresh_dir("cfg-other");
  cfg = load_config(env.lookup(), other);
  EXPECT_EQ(cfg.cache_dir, other);
  EXPECT_EQ(cfg.subset_guard, kDefaultSubsetGuard);
  EXPECT_EQ(cfg.default_cap, 11u);
}

TEST(Config, RejectsGarbage) {
  const fs::path dir = fresh_dir("cfg-bad");
  FakeEnv env{{{"KLAB_CACHE_DIR", dir.string()}, {"KLAB_THREADS", "many"}}};
  EXPECT_THROW(load_config(env.lookup()), Error);
  std::ofstream(dir / "config.json") << "[";
  env.vars.erase("KLAB_THREADS");
  EXPECT_THROW(load_config(env.lookup()), Error);
}

#include "klab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "klab/cache.hpp"
#include "klab/io.hpp"
#include "text.hpp"

namespace klab::cli {

namespace {

using io::Json;

struct Output {
  std::string headline;
  Json result;
};

std::string format_set(const std::vector<std::size_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

std::vector<long> parse_long_list(const std::string& s, const char* what) {
  std::vector<long> out;
  for (auto part : text::split_top_level(s, ',')) {
    const Integer v = text::parse_integer(part, ErrorKind::InvalidInput);
    if (!v.fits_slong_p()) throw Error(ErrorKind::InvalidInput, std::string(what) + " entry out of range");
    out.push_back(v.get_si());
  }
  return out;
}

std::vector<std::size_t> parse_size_list(const std::string& s, const char* what) {
  std::vector<std::size_t> out;
  for (long v : parse_long_list(s, what)) {
    if (v < 0) throw Error(ErrorKind::InvalidInput, std::string(what) + " entries must be non-negative");
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

std::vector<Group> parse_group_list(const std::vector<std::string>& specs) {
  std::vector<Group> out;
  for (const auto& spec : specs)
    for (auto part : text::split_top_level(spec, ',')) out.push_back(parse_group(part));
  return out;
}

void print_value(std::ostream& os, const Json& v, int indent);

bool is_scalar_array(const Json& v) {
  return v.is_array() && std::all_of(v.begin(), v.end(), [](const Json& e) { return e.is_primitive(); });
}

void print_scalar(std::ostream& os, const Json& v) {
  if (v.is_string()) os << v.get<std::string>();
  else if (v.is_null()) os << "-";
  else os << v.dump();
}

void print_value(std::ostream& os, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (v.is_object()) {
    for (const auto& [k, e] : v.items()) {
      os << pad << k << ":";
      if (e.is_primitive()) {
        os << " ";
        print_scalar(os, e);
        os << "\n";
      } else if (is_scalar_array(e)) {
        os << " [";
        bool first = true;
        for (const auto& x : e) {
          if (!first) os << ", ";
          first = false;
          print_scalar(os, x);
        }
        os << "]\n";
      } else {
        os << "\n";
        print_value(os, e, indent + 2);
      }
    }
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (e.is_primitive() || is_scalar_array(e)) {
        os << pad << "- " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
      } else {
        os << pad << "-\n";
        print_value(os, e, indent + 2);
      }
    }
  } else {
    os << pad;
    print_scalar(os, v);
    os << "\n";
  }
}

struct Args {
  // shared
  std::string group;
  std::string support = "all";
  std::optional<std::size_t> cap;
  std::optional<std::size_t> guard;
  // group / quotient
  std::string spec;
  std::vector<std::string> elements;
  std::vector<std::string> relations;
  // model / localize
  std::vector<std::string> components;
  std::optional<long> box;
  std::string presentation_file;
  std::vector<std::string> inversions;
  std::optional<std::size_t> keep_component;
  // lengths
  std::string sequence;
  bool list_factorizations = false;
  // aamp
  std::string set;
  long d = 0;
  std::optional<long> bound;
  // realize
  std::string lengths;
  std::string mult;
  std::vector<std::string> family;
  std::optional<std::size_t> max_support;
  std::optional<std::size_t> max_length;
  // cache
  std::string cache_action = "stats";
};

class Runner {
 public:
  Runner(const Args& a, const RunConfig& cfg) : a_(a), cfg_(cfg), cache_(cfg.cache_dir) {}

  Output group() {
    const Group g = parse_group(a_.spec);
    Json j{{"group", io::to_json(g)}};
    Json elems = Json::array();
    for (const auto& e : a_.elements) {
      const GroupElement x = parse_element(g, e);
      const auto order = element_order(g, x);
      elems.push_back(Json{{"element", format_element(x)}, {"order", order ? io::integer_json(*order) : Json("infinite")}});
    }
    if (!a_.elements.empty()) j["elements"] = elems;
    return {format_group(g), j};
  }

  Output quotient_cmd() {
    const Group g = parse_group(a_.group);
    std::vector<GroupElement> rels;
    for (const auto& r : a_.relations) rels.push_back(parse_element(g, r));
    const Quotient q = quotient(g, rels);
    Json images = Json::array();
    for (const auto& gen : standard_generators(g)) images.push_back(format_element(q.projection.apply(gen)));
    Json matrix = Json::array();
    for (std::size_t r = 0; r < q.projection.matrix().rows(); ++r) {
      Json row = Json::array();
      for (const auto& v : q.projection.matrix().row(r)) row.push_back(io::integer_json(v));
      matrix.push_back(row);
    }
    Json rj = Json::array();
    for (const auto& r : rels) rj.push_back(format_element(r));
    return {format_group(q.group),
            Json{{"group", io::to_json(g)},
                 {"relations", rj},
                 {"quotient", io::to_json(q.group)},
                 {"projection_matrix", matrix},
                 {"generator_images", images}}};
  }

  Output model() {
    const auto m = build_model();
    return {format_group(m.presentation.class_group()), model_json(m)};
  }

  Output localize_cmd() {
    KrullPresentation base = load_presentation();
    KrullPresentation result = base;
    if (a_.keep_component) {
      if (a_.components.empty())
        throw Error(ErrorKind::InvalidInput, "--keep-component needs the model's --component list");
      result = localize_to_component(build_model(), *a_.keep_component);
    }
    Inversion inv;
    for (const auto& spec : a_.inversions) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw Error(ErrorKind::InvalidInput, "--invert expects class=<element> or prime=<label>");
      const std::string kind = spec.substr(0, eq), value = spec.substr(eq + 1);
      if (kind == "class") inv.classes.push_back(parse_element(result.class_group(), value));
      else if (kind == "prime") inv.primes.push_back(value);
      else throw Error(ErrorKind::InvalidInput, "--invert expects class=<element> or prime=<label>");
    }
    if (!inv.classes.empty() || !inv.primes.empty()) result = localize(result, inv);
    return {format_group(result.class_group()),
            Json{{"source_class_group", format_group(base.class_group())}, {"localized", io::to_json(result)}}};
  }

  Output atoms_cmd() {
    const Support s = support();
    const AtomSet a = atom_set(s, a_.cap);
    return {std::to_string(a.atoms.size()) + " atoms" + (a.complete ? " (complete)" : " (cap-bounded)"),
            io::to_json(a)};
  }

  Output lengths() {
    const Support s = support();
    const Sequence seq = parse_sequence(s, a_.sequence);
    const AtomSet a = atom_set(s, a_.cap);
    const LengthReport r = length_set(seq, a, a_.list_factorizations);
    return {"L = " + format_set(r.length_set), io::to_json(r, &a)};
  }

  Output delta() {
    const Support s = support();
    const auto r = delta_of_monoid(s, a_.cap.value_or(cfg_.cap_for(s.group())));
    return {"Delta = " + format_set(r.deltas) + " (cap " + std::to_string(r.element_cap) + ")", io::to_json(r)};
  }

  Output delta_star_cmd() {
    const Group g = parse_group(a_.group);
    const auto r = delta_star(g, a_.cap.value_or(cfg_.cap_for(g)), a_.guard.value_or(cfg_.subset_guard), cfg_.threads);
    return {"Delta* = " + format_set(r.values) + " (cap " + std::to_string(r.element_cap) + ")", io::to_json(r)};
  }

  Output aamp() {
    const auto L = parse_long_list(a_.set, "--set");
    if (L.empty()) throw Error(ErrorKind::InvalidInput, "--set needs at least one integer");
    Json j{{"set", L}, {"d", a_.d}};
    if (a_.bound) {
      const auto w = aamp_check(L, a_.d, *a_.bound);
      j["bound"] = *a_.bound;
      j["is_aamp"] = w.has_value();
      j["witness"] = w ? io::to_json(*w) : Json(nullptr);
      return {w ? "AAMP witness found" : "not an AAMP with these parameters", j};
    }
    const auto w = minimal_aamp(L, a_.d);
    j["bound"] = nullptr;
    j["minimal_bound"] = w.bound;
    j["is_aamp"] = true;
    j["witness"] = io::to_json(w);
    return {"minimal bound " + std::to_string(w.bound), j};
  }

  Output survey() {
    const Group g = parse_group(a_.group);
    const auto r = aamp_survey(g, a_.cap.value_or(cfg_.cap_for(g)), a_.guard.value_or(cfg_.subset_guard), cfg_.threads);
    return {"0 failures, empirical bound " + std::to_string(r.empirical_bound), io::to_json(r)};
  }

  Output half_factorial() {
    const Support s = support();
    const auto r = half_factorial_check(s, a_.cap.value_or(cfg_.cap_for(s.group())));
    std::string head = r.half_factorial_at_cap
                           ? "half-factorial up to length " + std::to_string(r.element_cap)
                           : "not half-factorial: " + format_sequence(*r.counterexample) + " has L = " +
                                 format_set(r.counterexample_lengths);
    Json j = io::to_json(r);
    j["support"] = io::to_json(s);
    return {head, j};
  }

  Output realize() {
    RealizationTask task;
    task.target_lengths = parse_size_list(a_.lengths, "--lengths");
    task.multiplicities = parse_size_list(a_.mult, "--mult");
    task.family = parse_group_list(a_.family);
    task.max_support_size = a_.max_support;
    task.max_sequence_length = a_.max_length;
    const auto r = witness_search(task);
    std::string head = r.witness ? "witness " + format_sequence(r.witness->sequence) + " over " +
                                       format_group(r.witness->group)
                                 : "no witness within the search caps";
    return {head, io::to_json(r, task)};
  }

  Output cache_cmd() {
    Json j{{"directory", cfg_.cache_dir.string()}, {"format_version", AtomCache::kFormatVersion}};
    if (a_.cache_action == "clear") {
      j["removed"] = cache_.clear();
      return {"cleared " + j["removed"].dump() + " entries", j};
    }
    if (a_.cache_action == "path") return {cfg_.cache_dir.string(), j};
    j["entries"] = cache_.entry_count();
    return {j["entries"].dump() + " entries in " + cfg_.cache_dir.string(), j};
  }

 private:
  Support support() const { return parse_support(parse_group(a_.group), a_.support); }

  AtomSet atom_set(const Support& s, std::optional<std::size_t> cap) const {
    return cfg_.use_cache ? cache_.atoms(s, cap) : atoms(s, cap);
  }

  ComponentModel build_model() const {
    std::optional<Integer> box;
    if (a_.box) box = Integer(*a_.box);
    return component_model(parse_group_list(a_.components), box);
  }

  KrullPresentation load_presentation() const {
    if (!a_.presentation_file.empty()) {
      std::ifstream in(a_.presentation_file);
      if (!in) throw Error(ErrorKind::InvalidInput, "cannot read " + a_.presentation_file);
      Json j;
      try {
        j = Json::parse(in);
      } catch (const std::exception& e) {
        throw Error(ErrorKind::InvalidInput, std::string("bad presentation JSON: ") + e.what());
      }
      return io::presentation_from_json(j);
    }
    if (a_.components.empty()) throw Error(ErrorKind::InvalidInput, "give --presentation FILE or --component groups");
    return build_model().presentation;
  }

  static Json model_json(const ComponentModel& m) {
    Json comps = Json::array();
    for (std::size_t i = 0; i < m.components.size(); ++i) {
      Json gens = Json::array();
      for (const auto& x : m.component_generators[i]) gens.push_back(format_element(x));
      comps.push_back(Json{{"group", format_group(m.components[i])}, {"generator_classes", gens}});
    }
    return Json{{"presentation", io::to_json(m.presentation)}, {"components", comps}};
  }

  const Args& a_;
  const RunConfig& cfg_;
  AtomCache cache_;
};

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  CLI::App app{"klab: class groups, zero-sum sequences and sets of lengths"};
  app.name("klab");
  app.require_subcommand(1, 1);
  app.fallthrough();

  bool json = false, no_cache = false;
  std::optional<std::string> cache_dir;
  std::optional<unsigned> threads;
  app.add_flag("--json", json, "Machine-readable JSON output");
  app.add_flag("--no-cache", no_cache, "Do not read or write the atom cache");
  app.add_option("--cache-dir", cache_dir, "Cache directory (overrides KLAB_CACHE_DIR)");
  app.add_option("--threads", threads, "Worker threads (overrides KLAB_THREADS)");

  Args a;
  auto* group = app.add_subcommand("group", "Canonical form and invariants of a group");
  group->add_option("--spec", a.spec, "Group, e.g. \"Z^2 x C2 x C6\"")->required();
  group->add_option("--element", a.elements, "Element whose order to report (repeatable)");

  auto* quot = app.add_subcommand("quotient", "Quotient of a group by relations");
  quot->add_option("--group", a.group)->required();
  quot->add_option("--rel", a.relations, "Relation element (repeatable)");

  auto* model = app.add_subcommand("model", "Class group model of a direct sum with omega primes per class");
  model->add_option("--component", a.components, "Component group(s), comma separated or repeated")->required();
  model->add_option("--box", a.box, "Coordinate box for free-rank components");

  auto* loc = app.add_subcommand("localize", "Invert primes of a presentation");
  loc->add_option("--presentation", a.presentation_file, "Presentation JSON file");
  loc->add_option("--component", a.components, "Build the model from these components instead");
  loc->add_option("--box", a.box, "Coordinate box for free-rank components");
  loc->add_option("--invert", a.inversions, "class=<element> or prime=<label> (repeatable)");
  loc->add_option("--keep-component", a.keep_component, "Invert every other component's generator classes");

  auto* atoms_cmd = app.add_subcommand("atoms", "Atoms of the monoid of zero-sum sequences");
  auto* lengths = app.add_subcommand("lengths", "Set of lengths of a zero-sum sequence");
  auto* delta = app.add_subcommand("delta", "Set of distances up to an element cap");
  auto* hf = app.add_subcommand("halffactorial", "Half-factoriality check up to an element cap");
  for (auto* sub : {atoms_cmd, lengths, delta, hf}) {
    sub->add_option("--group", a.group)->required();
    sub->add_option("--support", a.support, "Support, e.g. \"[1,2]\" or \"all\"");
    sub->add_option("--cap", a.cap, "Element cap (length bound for atoms and sequences)");
  }
  lengths->add_option("--sequence", a.sequence, "e.g. \"[1^3,2^3]\"")->required();
  lengths->add_flag("--factorizations", a.list_factorizations, "List every factorization");

  auto* ds = app.add_subcommand("delta-star", "Set of minimal distances by subset sweep");
  auto* survey = app.add_subcommand("aamp-survey", "AAMP structure of every set of lengths up to a cap");
  for (auto* sub : {ds, survey}) {
    sub->add_option("--group", a.group)->required();
    sub->add_option("--cap", a.cap, "Element cap, default 3|G|");
    sub->add_option("--guard", a.guard, "Largest group order allowed for the subset sweep");
  }

  auto* aamp = app.add_subcommand("aamp", "Decide whether a set is an AAMP");
  aamp->add_option("--set", a.set, "Comma-separated integers")->required();
  aamp->add_option("--d", a.d, "Difference")->required();
  aamp->add_option("--bound", a.bound, "Bound; omit to report the minimal bound");

  auto* realize = app.add_subcommand("realize", "Search for an element with a prescribed set of lengths");
  realize->add_option("--lengths", a.lengths, "Comma-separated lengths, all >= 2")->required();
  realize->add_option("--mult", a.mult, "Minimum factorization counts, one per length")->required();
  realize->add_option("--family", a.family, "Candidate groups, comma separated");
  realize->add_option("--max-support", a.max_support, "Largest support size tried");
  realize->add_option("--max-length", a.max_length, "Longest sequence tried, default m1*D(G)");

  auto* cache = app.add_subcommand("cache", "Inspect or clear the atom cache");
  cache->add_option("action", a.cache_action, "stats, path or clear")->check(CLI::IsMember({"stats", "path", "clear"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    err << "klab: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  const bool want_json = [&] {
    try {
      return json || load_config(env, cache_dir).json;
    } catch (const Error&) {
      return json;
    }
  }();

  try {
    RunConfig cfg = load_config(env, cache_dir);
    if (json) cfg.json = true;
    if (no_cache) cfg.use_cache = false;
    if (threads) cfg.threads = std::max(1u, *threads);

    Runner run(a, cfg);
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    Output o;
    if (name == "group") o = run.group();
    else if (name == "quotient") o = run.quotient_cmd();
    else if (name == "model") o = run.model();
    else if (name == "localize") o = run.localize_cmd();
    else if (name == "atoms") o = run.atoms_cmd();
    else if (name == "lengths") o = run.lengths();
    else if (name == "delta") o = run.delta();
    else if (name == "delta-star") o = run.delta_star_cmd();
    else if (name == "aamp") o = run.aamp();
    else if (name == "aamp-survey") o = run.survey();
    else if (name == "halffactorial") o = run.half_factorial();
    else if (name == "realize") o = run.realize();
    else o = run.cache_cmd();

    if (cfg.json) {
      out << Json{{"schema_version", io::kSchemaVersion}, {"command", name}, {"result", o.result}}.dump(2) << "\n";
    } else {
      out << o.headline << "\n";
      print_value(out, o.result, 2);
    }
    return 0;
  } catch (const Error& e) {
    if (want_json)
      out << Json{{"schema_version", io::kSchemaVersion},
                  {"error", Json{{"kind", std::string(error_kind_name(e.kind()))}, {"message", e.what()}}}}
                 .dump(2)
          << "\n";
    err << "klab: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    if (want_json)
      out << Json{{"schema_version", io::kSchemaVersion}, {"error", Json{{"kind", "internal"}, {"message", e.what()}}}}
                 .dump(2)
          << "\n";
    err << "klab: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace klab::cli

#include "klab/io.hpp"

namespace klab::io {

Json integer_json(const Integer& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json to_json(const Group& g) {
  Json inv = Json::array();
  for (const auto& d : g.invariant_factors()) inv.push_back(integer_json(d));
  Json j{{"spec", format_group(g)}, {"free_rank", g.free_rank()}, {"invariant_factors", inv}};
  if (auto n = g.order()) j["order"] = integer_json(*n);
  else j["order"] = "infinite";
  if (auto e = exponent(g)) j["exponent"] = integer_json(*e);
  else j["exponent"] = "infinite";
  j["rank"] = rank(g);
  return j;
}

Json to_json(const GroupElement& x) { return format_element(x); }

Json to_json(const Support& s) {
  Json elems = Json::array();
  for (const auto& x : s.elements()) elems.push_back(to_json(x));
  return Json{{"group", format_group(s.group())}, {"elements", elems}};
}

Json to_json(const Sequence& s) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < s.support().size(); ++i)
    if (s.multiplicity(i) > 0)
      terms.push_back(Json{{"element", to_json(s.support().elements()[i])}, {"multiplicity", s.multiplicity(i)}});
  return Json{{"literal", format_sequence(s)}, {"length", s.length()}, {"terms", terms}};
}

Json to_json(const AtomSet& a) {
  Json atoms = Json::array();
  for (const auto& s : a.atoms) atoms.push_back(format_sequence(s));
  return Json{{"support", to_json(a.support)},
              {"complete", a.complete},
              {"cap_used", a.cap_used},
              {"count", a.atoms.size()},
              {"atoms", atoms}};
}

Json to_json(const LengthReport& r, const AtomSet* atoms) {
  Json counts = Json::object();
  for (const auto& [len, n] : r.factorization_counts) counts[std::to_string(len)] = integer_json(n);
  Json j{{"target", to_json(r.target)},
         {"length_set", r.length_set},
         {"delta_set", r.delta_set},
         {"factorization_counts", counts},
         {"complete", r.complete}};
  if (r.factorizations && atoms) {
    Json fs = Json::array();
    for (const auto& f : *r.factorizations) {
      Json parts = Json::array();
      for (auto a : f.atom_indices) parts.push_back(format_sequence(atoms->atoms[a]));
      fs.push_back(parts);
    }
    j["factorizations"] = fs;
  }
  return j;
}

Json to_json(const DeltaReport& r) {
  return Json{{"support", to_json(r.support)},
              {"deltas", r.deltas},
              {"min_delta", r.deltas.empty() ? Json(nullptr) : Json(r.deltas.front())},
              {"element_cap", r.element_cap},
              {"sequences_checked", r.sequences_checked},
              {"exhaustive", r.exhaustive}};
}

Json to_json(const DeltaStarReport& r) {
  Json subsets = Json::array();
  for (const auto& s : r.subsets) {
    Json elems = Json::array();
    for (const auto& x : s.support.elements()) elems.push_back(to_json(x));
    subsets.push_back(Json{{"support", elems}, {"min_delta", s.min_delta ? Json(*s.min_delta) : Json(nullptr)}});
  }
  Json j{{"group", to_json(r.group)},
         {"delta_star", r.values},
         {"max", r.values.empty() ? Json(nullptr) : Json(r.values.back())},
         {"element_cap", r.element_cap},
         {"exhaustive", false}};
  const auto order = r.group.order();
  if (order && *order >= 3) j["formula_max"] = integer_json(max_delta_star_formula(r.group));
  else j["formula_max"] = nullptr;
  j["subsets"] = subsets;
  return j;
}

Json to_json(const AampWitness& w) {
  return Json{{"d", w.d},          {"bound", w.bound},     {"y", w.y},           {"D_set", w.D_set},
              {"L_prime", w.L_prime}, {"L_star", w.L_star}, {"L_dprime", w.L_dprime}};
}

Json to_json(const HalfFactorialReport& r) {
  Json j{{"half_factorial_at_cap", r.half_factorial_at_cap},
         {"element_cap", r.element_cap},
         {"sequences_checked", r.sequences_checked},
         {"definitive", !r.half_factorial_at_cap}};
  if (r.counterexample) {
    j["counterexample"] = to_json(*r.counterexample);
    j["counterexample_lengths"] = r.counterexample_lengths;
  } else {
    j["counterexample"] = nullptr;
    j["counterexample_lengths"] = nullptr;
  }
  return j;
}

Json to_json(const KrullPresentation& p) {
  Json classes = Json::array();
  for (const auto& c : p.classes()) {
    Json cj{{"element", to_json(c.element)}};
    if (c.count.is_omega()) cj["count"] = "omega";
    else cj["count"] = c.count.value();
    if (!c.labels.empty()) cj["labels"] = c.labels;
    classes.push_back(cj);
  }
  return Json{{"class_group", format_group(p.class_group())},
              {"group", to_json(p.class_group())},
              {"classes", classes},
              {"every_class_populated", p.every_class_populated()},
              {"all_omega", p.all_omega()}};
}

Json to_json(const RealizationResult& r, const RealizationTask& task) {
  Json log = Json::array();
  for (const auto& l : r.log)
    log.push_back(Json{{"group", format_group(l.group)},
                       {"max_support_size", l.max_support_size},
                       {"max_sequence_length", l.max_sequence_length},
                       {"supports_tried", l.supports_tried},
                       {"sequences_tried", l.sequences_tried},
                       {"exhausted", l.exhausted}});
  Json j{{"target_lengths", task.target_lengths}, {"multiplicities", task.multiplicities}, {"found", r.witness.has_value()}};
  if (r.witness) {
    const auto& w = *r.witness;
    Json support = Json::array();
    for (const auto& x : w.support.elements()) support.push_back(to_json(x));
    j["witness"] = Json{{"group", format_group(w.group)},
                        {"support", support},
                        {"sequence", to_json(w.sequence)},
                        {"report", to_json(w.report)}};
  } else {
    j["witness"] = nullptr;
  }
  j["search_log"] = log;
  return j;
}

Json to_json(const SurveyReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"length_set", e.length_set},
                           {"example", format_sequence(e.example)},
                           {"d", e.d},
                           {"bound", e.bound}});
  return Json{{"group", to_json(r.group)},
              {"element_cap", r.element_cap},
              {"delta_star", r.delta_star},
              {"differences_tried", r.differences_tried},
              {"sequences_checked", r.sequences_checked},
              {"empirical_bound", r.empirical_bound},
              {"failures", Json::array()},
              {"exhaustive", false},
              {"length_sets", entries}};
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw Error(ErrorKind::InvalidInput, std::string("missing field '") + name + "'");
  return j.at(name);
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) throw Error(ErrorKind::InvalidInput, std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

}  // namespace

KrullPresentation presentation_from_json(const Json& j) {
  const Group g = parse_group(string_field(j, "class_group"));
  std::vector<PrimeClass> classes;
  const Json& cs = field(j, "classes");
  if (!cs.is_array()) throw Error(ErrorKind::InvalidInput, "'classes' must be an array");
  for (const auto& c : cs) {
    PrimeClass pc{parse_element(g, string_field(c, "element")), PrimeCount::omega(), {}};
    const Json& count = field(c, "count");
    if (count.is_string()) pc.count = parse_count(count.get<std::string>());
    else if (count.is_number_unsigned()) pc.count = PrimeCount::finite(count.get<std::size_t>());
    else throw Error(ErrorKind::InvalidInput, "'count' must be a non-negative integer or \"omega\"");
    if (c.contains("labels")) pc.labels = c.at("labels").get<std::vector<std::string>>();
    classes.push_back(std::move(pc));
  }
  return KrullPresentation(g, std::move(classes));
}

AtomSet atom_set_from_json(const Json& j) {
  const Json& sj = field(j, "support");
  const Group g = parse_group(string_field(sj, "group"));
  std::vector<GroupElement> elems;
  for (const auto& e : field(sj, "elements")) elems.push_back(parse_element(g, e.get<std::string>()));
  AtomSet out{Support(g, std::move(elems)), {}, field(j, "complete").get<bool>(), field(j, "cap_used").get<std::size_t>()};
  for (const auto& a : field(j, "atoms")) out.atoms.push_back(parse_sequence(out.support, a.get<std::string>()));
  return out;
}

}  // namespace klab::io

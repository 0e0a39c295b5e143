#pragma once

#include <json.hpp>

#include "klab/krull.hpp"
#include "klab/lengths.hpp"
#include "klab/realize.hpp"

namespace klab::io {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json integer_json(const Integer& v);
Json to_json(const Group& g);
Json to_json(const GroupElement& x);
Json to_json(const Support& s);
Json to_json(const Sequence& s);
Json to_json(const AtomSet& a);
Json to_json(const LengthReport& r, const AtomSet* atoms = nullptr);
Json to_json(const DeltaReport& r);
Json to_json(const DeltaStarReport& r);
Json to_json(const AampWitness& w);
Json to_json(const HalfFactorialReport& r);
Json to_json(const KrullPresentation& p);
Json to_json(const RealizationResult& r, const RealizationTask& task);
Json to_json(const SurveyReport& r);

/// `{ "class_group": "<spec>", "classes": [ {"element": ..., "count": n | "omega"} ] }`
KrullPresentation presentation_from_json(const Json& j);
AtomSet atom_set_from_json(const Json& j);

}  // namespace klab::io

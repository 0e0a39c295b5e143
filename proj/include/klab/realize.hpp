#pragma once

#include <optional>
#include <vector>

#include "klab/lengths.hpp"

namespace klab {

struct RealizationTask {
  std::vector<std::size_t> target_lengths;  // strictly increasing, all >= 2
  std::vector<std::size_t> multiplicities;  // minimum factorization count per length
  std::vector<Group> family;                // empty means default_family()
  std::optional<std::size_t> max_support_size;
  std::optional<std::size_t> max_sequence_length;
};

struct RealizationWitness {
  Group group;
  Support support;
  Sequence sequence;
  LengthReport report;
};

struct GroupSearchLog {
  Group group;
  std::size_t max_support_size = 0;
  std::size_t max_sequence_length = 0;
  std::size_t supports_tried = 0;
  std::size_t sequences_tried = 0;
  bool exhausted = false;  // every candidate within the caps was examined
};

struct RealizationResult {
  std::optional<RealizationWitness> witness;
  std::vector<GroupSearchLog> log;
};

/// C2..C8, C2^2, C2^3, C3^2, C2+C4, C2+C6.
std::vector<Group> default_family();

/// First sequence, in the fixed order (groups in family order, supports by
/// size then lex, sequences by length then lex), whose set of lengths is
/// exactly the target with enough factorizations of every length. The
/// sequence uses every element of its support.
RealizationResult witness_search(const RealizationTask& task);

struct SurveyEntry {
  std::vector<std::size_t> length_set;
  Sequence example;  // first sequence with this set of lengths
  std::size_t d = 1;
  std::size_t bound = 0;
};

struct SurveyReport {
  Group group;
  std::size_t element_cap = 0;
  std::vector<std::size_t> delta_star;
  std::vector<std::size_t> differences_tried;  // delta_star, or {1} when empty
  std::size_t sequences_checked = 0;
  std::size_t empirical_bound = 0;  // max over the corpus of the minimal bound
  std::vector<SurveyEntry> entries; // one per distinct set of lengths, in first-seen order
};

/// For every zero-sum sequence over G of length <= cap, the least bound for
/// which its set of lengths is an AAMP with a difference from Delta*(G).
/// Any failure throws ErrorKind::SurveyFailure naming the sequence.
SurveyReport aamp_survey(const Group& g, std::size_t element_cap, std::size_t guard = kDefaultSubsetGuard,
                         unsigned threads = 1);

}  // namespace klab

// Copyright (c) 2026 The fairser authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FAIRSER_CORPUS_HPP
#define FAIRSER_CORPUS_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace fairser {

enum class Split { Train, Dev, Test };

const char* to_string(Split split);
Split split_from_string(std::string_view name);

/// One classification trial: a labelled, fixed-dimension feature vector.
struct Utterance {
  std::string id;       // unique within a corpus, byte-wise sortable
  std::string speaker;
  Split split = Split::Train;
  int label = 0;        // 0..C-1
  std::vector<double> features;
};

struct Corpus {
  int num_classes = 0;
  int neutral_class = 0;
  int feature_dim = 0;
  std::vector<Utterance> utterances;

  /// Throws DataError on any invariant violation: duplicate ids, label out
  /// of range, dimension mismatch, non-finite features, speaker spanning
  /// two splits, neutral_class out of range.
  void validate() const;
};

/// Per-speaker enrolment slots: one per class, in class order. An empty id
/// marks an imputed slot (the speaker has no utterance of that class); it
/// contributes a zero feature vector downstream.
struct EnrolmentSet {
  std::string speaker;
  std::vector<std::string> slot_ids;  // size C, "" = imputed
};

/// All enrolment sets for one split plus the set of enrolled utterance ids,
/// so callers can exclude those utterances from training/evaluation pools.
struct EnrolmentTable {
  std::map<std::string, EnrolmentSet> by_speaker;
  std::set<std::string> enrolled_ids;
};

/// Per split: sort each speaker's utterances ascending by id (byte-wise
/// lexicographic), then fill slot c with the first utterance labelled c;
/// classes the speaker never exhibits stay imputed.
EnrolmentTable build_enrolment_sets(const Corpus& corpus, Split split);

enum class Variant { Base, PersN, PersE, PersA };

const char* to_string(Variant variant);
Variant variant_from_string(std::string_view name);

/// Slots actually used by a personalisation variant, in class order.
/// Base -> none; PersN -> the neutral slot; PersE -> all non-neutral slots;
/// PersA -> all slots. Imputed slots are retained.
std::vector<std::string> select_enrolment(const EnrolmentSet& set,
                                          Variant variant, int neutral_class);

struct SynthConfig {
  int speakers_train = 6;
  int speakers_dev = 2;
  int speakers_test = 8;
  int utterances_per_speaker = 30;
  int num_classes = 4;
  int feature_dim = 16;
  double class_mean_scale = 1.0;
  double speaker_offset_scale = 1.0;
  double noise_scale = 0.3;
  std::uint64_t seed = 0;

  void validate() const;  // counts >= 1 (C >= 2), scales >= 0
};

/// Deterministic synthetic corpus: features = class mean + per-speaker
/// per-class offset + gaussian noise, speaker-disjoint splits, labels
/// imbalanced with neutral (class 0) at probability 0.5.
Corpus generate_synthetic(const SynthConfig& config);

Corpus load_corpus(const std::string& path);
void save_corpus(const Corpus& corpus, const std::string& path);

/// Enrolment CSV: header `speaker,class,utterance_id`, one row per slot,
/// empty utterance_id for imputed slots.
void save_enrolment(const EnrolmentTable& table, int num_classes,
                    const std::string& path);
EnrolmentTable load_enrolment(const Corpus& corpus, const std::string& path);

}  // namespace fairser

#endif  // FAIRSER_CORPUS_HPP

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

#include "fairser/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "fairser/errors.hpp"
#include "fairser/rng.hpp"
#include "fairser/text_io.hpp"

namespace fairser {

const char* to_string(Split split) {
  switch (split) {
    case Split::Train: return "train";
    case Split::Dev: return "dev";
    case Split::Test: return "test";
  }
  return "?";
}

Split split_from_string(std::string_view name) {
  if (name == "train") return Split::Train;
  if (name == "dev") return Split::Dev;
  if (name == "test") return Split::Test;
  throw DataError("unknown split '" + std::string(name) + "'");
}

const char* to_string(Variant variant) {
  switch (variant) {
    case Variant::Base: return "base";
    case Variant::PersN: return "pers_n";
    case Variant::PersE: return "pers_e";
    case Variant::PersA: return "pers_a";
  }
  return "?";
}

Variant variant_from_string(std::string_view name) {
  if (name == "base") return Variant::Base;
  if (name == "pers_n") return Variant::PersN;
  if (name == "pers_e") return Variant::PersE;
  if (name == "pers_a") return Variant::PersA;
  throw DataError("unknown variant '" + std::string(name) + "'");
}

void Corpus::validate() const {
  if (num_classes < 2) throw DataError("corpus: C must be >= 2");
  if (neutral_class < 0 || neutral_class >= num_classes) {
    throw DataError("corpus: neutral class out of range");
  }
  if (feature_dim < 1) throw DataError("corpus: D must be >= 1");
  std::unordered_set<std::string> ids;
  std::unordered_map<std::string, Split> speaker_split;
  ids.reserve(utterances.size());
  for (const auto& u : utterances) {
    if (u.id.empty()) throw DataError("corpus: empty utterance id");
    if (!ids.insert(u.id).second) {
      throw DataError("corpus: duplicate utterance id '" + u.id + "'");
    }
    if (u.label < 0 || u.label >= num_classes) {
      throw DataError("corpus: label out of range for '" + u.id + "'");
    }
    if (static_cast<int>(u.features.size()) != feature_dim) {
      throw DataError("corpus: feature dimension mismatch for '" + u.id +
                      "'");
    }
    for (double f : u.features) {
      if (!std::isfinite(f)) {
        throw DataError("corpus: non-finite feature in '" + u.id + "'");
      }
    }
    const auto [it, inserted] = speaker_split.emplace(u.speaker, u.split);
    if (!inserted && it->second != u.split) {
      throw DataError("corpus: speaker '" + u.speaker +
                      "' appears in two splits");
    }
  }
}

EnrolmentTable build_enrolment_sets(const Corpus& corpus, Split split) {
  // Gather per-speaker utterance indices, then sort each list by id.
  std::map<std::string, std::vector<const Utterance*>> per_speaker;
  for (const auto& u : corpus.utterances) {
    if (u.split == split) per_speaker[u.speaker].push_back(&u);
  }
  if (per_speaker.empty()) {
    throw DataError(std::string("enrolment: split '") + to_string(split) +
                    "' is empty");
  }
  EnrolmentTable table;
  for (auto& [speaker, utts] : per_speaker) {
    std::sort(utts.begin(), utts.end(),
              [](const Utterance* a, const Utterance* b) {
                return a->id < b->id;  // byte-wise lexicographic
              });
    EnrolmentSet set;
    set.speaker = speaker;
    set.slot_ids.assign(corpus.num_classes, std::string());
    for (const Utterance* u : utts) {
      if (set.slot_ids[u->label].empty()) {
        set.slot_ids[u->label] = u->id;
        table.enrolled_ids.insert(u->id);
      }
    }
    table.by_speaker.emplace(speaker, std::move(set));
  }
  return table;
}

std::vector<std::string> select_enrolment(const EnrolmentSet& set,
                                          Variant variant,
                                          int neutral_class) {
  const int num_classes = static_cast<int>(set.slot_ids.size());
  if (neutral_class < 0 || neutral_class >= num_classes) {
    throw DataError("select_enrolment: neutral class out of range");
  }
  std::vector<std::string> slots;
  switch (variant) {
    case Variant::Base:
      break;
    case Variant::PersN:
      slots.push_back(set.slot_ids[neutral_class]);
      break;
    case Variant::PersE:
      for (int c = 0; c < num_classes; ++c) {
        if (c != neutral_class) slots.push_back(set.slot_ids[c]);
      }
      break;
    case Variant::PersA:
      slots = set.slot_ids;
      break;
  }
  return slots;
}

void SynthConfig::validate() const {
  if (speakers_train < 1 || speakers_dev < 1 || speakers_test < 1) {
    throw DataError("synth: speaker counts must be >= 1");
  }
  if (utterances_per_speaker < 1) {
    throw DataError("synth: utterances per speaker must be >= 1");
  }
  if (num_classes < 2) throw DataError("synth: C must be >= 2");
  if (feature_dim < 1) throw DataError("synth: D must be >= 1");
  if (class_mean_scale < 0 || speaker_offset_scale < 0 || noise_scale < 0) {
    throw DataError("synth: scales must be >= 0");
  }
}

namespace {

std::string zero_pad(int value, int width) {
  std::string s = std::to_string(value);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

Corpus generate_synthetic(const SynthConfig& config) {
  config.validate();
  Rng rng(config.seed);

  Corpus corpus;
  corpus.num_classes = config.num_classes;
  corpus.neutral_class = 0;
  corpus.feature_dim = config.feature_dim;

  const int C = config.num_classes;
  const int D = config.feature_dim;

  // Global class means, drawn once.
  std::vector<std::vector<double>> class_means(C, std::vector<double>(D));
  for (auto& mean : class_means) {
    for (double& v : mean) v = config.class_mean_scale * rng.gaussian();
  }

  struct SplitPlan {
    Split split;
    const char* prefix;
    int count;
  };
  const SplitPlan plans[] = {{Split::Train, "tr", config.speakers_train},
                             {Split::Dev, "dv", config.speakers_dev},
                             {Split::Test, "te", config.speakers_test}};

  for (const SplitPlan& plan : plans) {
    for (int s = 0; s < plan.count; ++s) {
      const std::string speaker = std::string(plan.prefix) + zero_pad(s, 3);
      // Per-speaker per-class offsets, drawn once per speaker.
      std::vector<std::vector<double>> offsets(C, std::vector<double>(D));
      for (auto& off : offsets) {
        for (double& v : off)v = config.speaker_offset_scale * rng.gaussian();
      }
      for (int t = 0; t < config.utterances_per_speaker; ++t) {
        // Imbalanced labels: neutral at 0.5, rest uniform.
        int label;
        if (rng.uniform() < 0.5) {
          label = corpus.neutral_class;
        } else {
          label = 1 + static_cast<int>(rng.uniform_int(
                          static_cast<std::uint64_t>(C - 1)));
        }
        Utterance u;
        u.id = speaker + "_u" + zero_pad(t, 4);
        u.speaker = speaker;
        u.split = plan.split;
        u.label = label;
        u.features.resize(D);
        for (int d = 0; d < D; ++d) {
          u.features[d] = class_means[label][d] + offsets[label][d] +
                          config.noise_scale * rng.gaussian();
        }
        corpus.utterances.push_back(std::move(u));
      }
    }
  }
  corpus.validate();
  return corpus;
}

namespace {

constexpr char kCorpusMagic[] = "fairser-corpus v1";

int parse_header_field(std::string_view token, std::string_view key) {
  if (token.size() <= key.size() + 1 || token.substr(0, key.size()) != key ||
      token[key.size()] != '=') {
    throw DataError("corpus header: expected " + std::string(key) +
                    "=<int>, got '" + std::string(token) + "'");
  }
  return static_cast<int>(
      parse_long(token.substr(key.size() + 1), "corpus header"));
}

}  // namespace

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) {
    throw DataError(path + ": empty file");
  }
  const auto header = split(line, ' ');
  if (header.size() != 5 || header[0] != "fairser-corpus" ||
      header[1] != "v1") {
    throw DataError(path + ":1: bad header '" + line + "'");
  }
  Corpus corpus;
  corpus.num_classes = parse_header_field(header[2], "C");
  corpus.feature_dim = parse_header_field(header[3], "D");
  corpus.neutral_class = parse_header_field(header[4], "neutral");

  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const auto fields = split(line, ',');
    if (fields.size() != 5) {
      throw DataError(where + ": expected 5 comma-separated fields");
    }
    Utterance u;
    u.id = std::string(fields[0]);
    u.speaker = std::string(fields[1]);
    u.split = split_from_string(fields[2]);
    u.label = static_cast<int>(parse_long(fields[3], where));
    const auto feats = split(fields[4], ';');
    if (static_cast<int>(feats.size()) != corpus.feature_dim) {
      throw DataError(where + ": feature dimension mismatch (got " +
                      std::to_string(feats.size()) + ", header says D=" +
                      std::to_string(corpus.feature_dim) + ")");
    }
    u.features.reserve(feats.size());
    for (const auto f : feats) u.features.push_back(parse_double(f, where));
    corpus.utterances.push_back(std::move(u));
  }
  try {
    corpus.validate();
  } catch (const DataError& e) {
    throw DataError(path + ": " + e.what());
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus file '" + path + "'");
  out << kCorpusMagic << " C=" << corpus.num_classes
      << " D=" << corpus.feature_dim << " neutral=" << corpus.neutral_class
      << "\n";
  for (const auto& u : corpus.utterances) {
    out << u.id << ',' << u.speaker << ',' << to_string(u.split) << ','
        << u.label << ',';
    for (std::size_t d = 0; d < u.features.size(); ++d) {
      if (d) out << ';';
      out << format_double(u.features[d]);
    }
    out << '\n';
  }
  if (!out.flush()) throw DataError("I/O failure writing '" + path + "'");
}

void save_enrolment(const EnrolmentTable& table, int num_classes,
                    const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write enrolment file '" + path + "'");
  out << "speaker,class,utterance_id\n";
  for (const auto& [speaker, set] : table.by_speaker) {
    for (int c = 0; c < num_classes; ++c) {
      out << speaker << ',' << c << ',' << set.slot_ids[c] << '\n';
    }
  }
  if (!out.flush()) throw DataError("I/O failure writing '" + path + "'");
}

EnrolmentTable load_enrolment(const Corpus& corpus, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open enrolment file '" + path + "'");
  std::unordered_map<std::string, const Utterance*> by_id;
  for (const auto& u : corpus.utterances) by_id.emplace(u.id, &u);

  std::string line;
  if (!std::getline(in, line) || line != "speaker,class,utterance_id") {
    throw DataError(path + ":1: bad enrolment header");
  }
  EnrolmentTable table;
  long line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw DataError(where + ": expected 3 comma-separated fields");
    }
    const std::string speaker(fields[0]);
    const int cls = static_cast<int>(parse_long(fields[1], where));
    if (cls < 0 || cls >= corpus.num_classes) {
      throw DataError(where + ": class out of range");
    }
    auto& set = table.by_speaker[speaker];
    if (set.slot_ids.empty()) {
      set.speaker = speaker;
      set.slot_ids.assign(corpus.num_classes, std::string());
    }
    if (fields[2].empty()) continue;  // imputed slot
    const std::string id(fields[2]);
    const auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw DataError(where + ": unknown utterance id '" + id + "'");
    }
    if (it->second->speaker != speaker) {
      throw DataError(where + ": utterance '" + id +
                      "' does not belong to speaker '" + speaker + "'");
    }
    if (it->second->label != cls) {
      throw DataError(where + ": utterance '" + id + "' has label " +
                      std::to_string(it->second->label) + ", row says " +
                      std::to_string(cls));
    }
    set.slot_ids[cls] = id;
    table.enrolled_ids.insert(id);
  }
  return table;
}

}  // namespace fairser

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Interview corpus: the data object, a deterministic synthetic generator
// with planted salience, the label-aggregation rule, splits, and JSONL
// persistence.
//
// Generator design. Each candidate applies to one of `positions` open
// positions; every position carries a job-type token. In the context rule
// the job type decides which question index is decisive, and the label is
// "motif present in the decisive answer"; the other answers carry the same
// motif as a distractor with probability `distractor_rate`, uncorrelated
// with the label. In the ordered rule every answer carries the motif and
// its internal frame ORDER encodes the class; per-column aggregate
// statistics are identical for both orders by construction. All three
// modality variants of a candidate share one structural skeleton (lengths,
// motif slots, label), only the frame content differs.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hirenet/tensor.hpp"

namespace hirenet {

struct Annotation {
    int annotator_id = 0;
    bool liked = false;
    bool shortlisted = false;
    bool disliked = false;
};

struct QAPair {
    std::vector<int> question_tokens;
    Tensor answer;  // l_A x featureDim
    std::string modality;
};

struct Interview {
    int64_t candidate_id = 0;
    std::vector<int> job_tokens;
    std::vector<QAPair> qa;
    int label = 0;  // 1 = hirable
    std::vector<Annotation> annotations;

    void validate() const;
};

using Corpus = std::vector<Interview>;

enum class LabelRule { ContextMotif, OrderedMotif };

struct GeneratorSpec {
    size_t candidates = 2000;
    size_t positions = 40;
    size_t job_types = 8;          // distinct job-type tokens, mapped to decisive indices
    size_t context_vocab = 60;     // shared question/job-title token space
    size_t questions_min = 4, questions_max = 6;
    size_t answer_len_min = 20, answer_len_max = 60;
    std::map<std::string, size_t> feature_dims = {{"text", 8}, {"audio", 6}, {"video", 10}};
    std::vector<std::string> modalities = {"text", "audio", "video"};
    double hirable_rate = 0.45;
    double distractor_rate = 0.45;
    double noise_level = 1.0;
    double modality_drop_rate = 0.0;  // chance a candidate is absent from a non-text modality
    LabelRule label_rule = LabelRule::ContextMotif;
    uint64_t seed = 1;

    void validate() const;
};

// Ground truth for salience checks: which question decides and where the
// motif sits inside each answer (-1 = no motif in that answer).
struct CandidateTruth {
    int64_t candidate_id = 0;
    int position = 0;
    int job_type = 0;
    int decisive_index = 0;
    std::vector<int> motif_start;  // per QA pair
};

struct GeneratedCorpus {
    std::map<std::string, Corpus> by_modality;
    std::vector<CandidateTruth> truth;
};

GeneratedCorpus generate_corpus(const GeneratorSpec& spec);

// The rule the generator plants; classifies any generated interview
// perfectly. Used as the label oracle in tests.
int oracle_label(const GeneratorSpec& spec, const Interview& iv, const CandidateTruth& truth);

// Per-annotator vote: hirable iff liked or shortlisted. Majority over
// annotators; an exact tie is hirable.
int aggregate_annotations(const std::vector<Annotation>& annotations);

struct SplitIndices {
    std::vector<int64_t> train, validation, test;
};

// Candidate-level 80/10/10 split: sizes floor(0.8N) / floor(0.1N) /
// remainder, label-stratified, deterministic in seed.
SplitIndices split_corpus(const Corpus& corpus, uint64_t seed);

// JSON Lines, one interview per line. Field names are part of the format:
// candidate_id, job_tokens, qa[{q_tokens, answer, modality}], label,
// annotations.
void save_corpus(const Corpus& corpus, const std::string& path);
Corpus load_corpus(const std::string& path);

void save_truth(const std::vector<CandidateTruth>& truth, const std::string& path);
std::vector<CandidateTruth> load_truth(const std::string& path);

void save_splits(const SplitIndices& splits, const std::string& path);
SplitIndices load_splits(const std::string& path);

std::string generator_spec_to_json(const GeneratorSpec& spec);
GeneratorSpec generator_spec_from_json(const std::string& text);

// Convenience views.
Corpus select_by_ids(const Corpus& corpus, const std::vector<int64_t>& ids);
const Interview* find_candidate(const Corpus& corpus, int64_t id);

// Largest question/job-title token id + 1; the embedding vocabulary a
// model needs to cover this corpus.
size_t max_context_token(const Corpus& corpus);

}  // namespace hirenet

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Training loop, evaluation, attention export, baseline and fusion
// pipelines: everything between the model library and the CLI.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hirenet/baselines.hpp"
#include "hirenet/checkpoint.hpp"
#include "hirenet/data.hpp"
#include "hirenet/metrics.hpp"
#include "hirenet/model.hpp"

namespace hirenet {

struct EpochRecord {
    size_t epoch = 0;       // 1-based
    double train_loss = 0.0;
    Metrics validation;
};

struct TrainReport {
    std::vector<EpochRecord> epochs;
    size_t best_epoch = 0;
    double best_val_f1 = 0.0;
    std::string checkpoint_path;
    uint64_t seed = 0;
    size_t threads_used = 1;
    HireNetConfig config;
};

std::string train_report_to_json(const TrainReport& report);

// Mini-batch Adam with global-norm gradient clipping and early stopping on
// validation F1 (ties keep the earliest epoch). The best checkpoint is
// persisted to checkpoint_path as soon as it improves. Deterministic in
// config.seed for a fixed thread count. The answer-wise variant trains on
// per-answer examples carrying the candidate label; validation F1 is
// candidate-level for every variant.
TrainReport train(HireNetParams& params, const HireNetConfig& config, const Corpus& train_set,
                  const Corpus& validation_set, const std::string& checkpoint_path);

struct CandidateResult {
    int64_t candidate_id = 0;
    double score = 0.0;
    int predicted = 0;
    int label = 0;
};

struct EvalResult {
    Metrics metrics;
    std::vector<CandidateResult> candidates;
};

EvalResult evaluate(HireNetParams& params, const HireNetConfig& config, const Corpus& split);

std::string scores_to_csv(const EvalResult& result);
std::string metrics_csv_header();
std::string metrics_csv_row(const std::string& model, const std::string& modality,
                            const std::string& split, const Metrics& m);

// Relative-attention report for one interview; requires an attention
// variant (hirenet or hn_satt).
std::string export_attention(HireNetParams& params, const HireNetConfig& config,
                             const Interview& interview);

// --- non-sequential baseline pipelines --------------------------------------

struct StatsBaselineModel {
    std::vector<FeatureKind> kinds;
    std::vector<double> feat_mean, feat_std;  // z-score fit on train answers
    LogisticModel clf;
    double threshold = 0.5;
};

StatsBaselineModel train_stats_baseline(const Corpus& train_set, double l2 = 1e-4);
EvalResult eval_stats_baseline(const StatsBaselineModel& model, const Corpus& split);

struct BowBaselineModel {
    Codebook codebook;
    DocFreqs doc_freqs;
    LogisticModel clf;
    double threshold = 0.5;
};

BowBaselineModel train_bow_baseline(const Corpus& train_set, size_t k, uint64_t seed,
                                    double l2 = 1e-4);
EvalResult eval_bow_baseline(const BowBaselineModel& model, const Corpus& split);

void save_stats_baseline(const std::string& path, const StatsBaselineModel& model);
StatsBaselineModel load_stats_baseline(const std::string& path);
void save_bow_baseline(const std::string& path, const BowBaselineModel& model);
BowBaselineModel load_bow_baseline(const std::string& path);

// --- fusion ------------------------------------------------------------------

// Trained monomodal models keyed by modality, evaluated over the modality
// corpora; candidates missing from a modality file simply contribute fewer
// scores (late) or their training-mean summary (early).
struct ModalityModel {
    HireNetConfig config;
    HireNetParams params;
};

EvalResult late_fusion_eval(std::vector<ModalityModel>& models,
                            const std::map<std::string, Corpus>& corpora,
                            const std::vector<int64_t>& candidate_ids, double threshold = 0.5);

struct EarlyFusionModel {
    LogisticModel clf;
    std::array<std::vector<double>, 3> train_means;
    std::vector<std::string> modalities;
    double threshold = 0.5;
};

EarlyFusionModel train_early_fusion(std::vector<ModalityModel>& models,
                                    const std::map<std::string, Corpus>& corpora,
                                    const std::vector<int64_t>& train_ids, double l2 = 1e-4);

EvalResult early_fusion_eval(const EarlyFusionModel& fusion, std::vector<ModalityModel>& models,
                             const std::map<std::string, Corpus>& corpora,
                             const std::vector<int64_t>& candidate_ids);

}  // namespace hirenet

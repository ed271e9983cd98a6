// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Full model assembly: answer encoder, question/job context encoders,
// attention at both levels, logistic head. The ablation variants reuse the
// same parameter set and swap only the pooling:
//   hirenet           context attention at both levels
//   hn_satt           self-attention at both levels
//   hn_avg            masked averaging at both levels
//   bigru_answerwise  one BiGRU per answer, logistic head on the
//                     concatenated last states, candidate = mean of answers

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hirenet/attention.hpp"
#include "hirenet/baselines.hpp"
#include "hirenet/data.hpp"
#include "hirenet/encoders.hpp"

namespace hirenet {

enum class Variant { HireNet, HnSatt, HnAvg, BigruAnswerwise };

const char* variant_name(Variant v);
Variant variant_from_string(const std::string& s);

struct OptimizerSettings {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    size_t batch_size = 16;
    size_t max_epochs = 50;
    size_t patience = 5;
    double clip_norm = 5.0;
    double loss_floor = 0.0;  // stop once epoch train loss falls below; 0 disables
    size_t threads = 0;       // 0 = pick from hardware
};

struct HireNetConfig {
    size_t feature_dim = 6;
    size_t embed_dim = 32;
    size_t low_hidden = 64;      // d_h
    size_t question_hidden = 64; // d_q
    size_t high_hidden = 64;     // d_H
    size_t job_hidden = 64;      // d_J
    size_t low_attn_dim = 0;     // 0 = state dim (2*low_hidden)
    size_t high_attn_dim = 0;    // 0 = state dim (2*high_hidden)
    size_t question_vocab = 0;
    size_t job_vocab = 0;
    bool shared_embeddings = true;  // question and job title share one table
    Variant variant = Variant::HireNet;
    uint64_t seed = 1;
    OptimizerSettings optim;
    double threshold = 0.5;
    std::string modality = "audio";

    size_t low_attn() const { return low_attn_dim ? low_attn_dim : 2 * low_hidden; }
    size_t high_attn() const { return high_attn_dim ? high_attn_dim : 2 * high_hidden; }
    void validate() const;
};

struct HireNetParams {
    BiGRUParams answer;
    GRUCellParams question_cell;
    Tensor question_embed;  // "embed.shared" when shared_embeddings
    GRUCellParams job_cell;
    Tensor job_embed;       // present only when not shared
    bool shared_embed = true;
    ContextAttentionParams low_attn;
    BiGRUParams high_rnn;
    ContextAttentionParams high_attn;
    Tensor W_v, b_v;        // 1 x 2*d_H, scalar bias
    Tensor W_ans, b_ans;    // answer-wise head, 1 x 2*d_h

    // Canonical dotted names, stable across runs; checkpoint order.
    std::vector<std::pair<std::string, Tensor*>> named_params();
    void zero_grads();
    void validate(const HireNetConfig& config) const;
};

// Matrices uniform in +/- sqrt(6/(fanIn+fanOut)), embeddings +/- 0.05,
// biases zero; deterministic in config.seed.
HireNetParams init_model(const HireNetConfig& config);

struct Prediction {
    double score = 0.0;   // in (0,1)
    bool hirable = false; // score >= threshold
    AttentionTrace trace;
};

struct ForwardPass {
    Prediction prediction;
    Value score;                   // scalar node, for attaching the loss
    std::vector<double> summary;   // the pooled interview vector v
};

// Builds the whole forward graph for one interview. pad_answers_to > 0
// suffix-pads every answer to that length with masked rows; outputs are
// bit-identical to the unpadded pass.
ForwardPass forward_interview_pass(Graph& g, HireNetParams& params, const HireNetConfig& config,
                                   const Interview& interview, size_t pad_answers_to = 0);

Prediction forward_interview(HireNetParams& params, const HireNetConfig& config,
                             const Interview& interview);

// Answer-wise path for the bigru_answerwise variant.
Value forward_answer_pass(Graph& g, HireNetParams& params, const Interview& interview,
                          size_t qa_index, size_t pad_to = 0);

// -[y ln s + (1-y) ln(1-s)] with s clamped to [1e-12, 1-1e-12].
double bce_loss(double score, int label);

// Logistic score over the concatenated modality summaries; a missing
// modality is replaced by its training-set mean before concatenation.
double early_fusion(const std::array<std::optional<std::vector<double>>, 3>& summaries,
                    const std::array<std::vector<double>, 3>& train_means,
                    const LogisticModel& classifier);

// Mean of the available modality scores, thresholded.
CandidateScore late_fusion(const std::vector<double>& scores, double threshold = 0.5);

}  // namespace hirenet

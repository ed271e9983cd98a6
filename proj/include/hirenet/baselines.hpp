// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Non-sequential and codebook baselines plus the vote references.

#pragma once

#include <cstdint>
#include <vector>

#include "hirenet/errors.hpp"
#include "hirenet/metrics.hpp"
#include "hirenet/tensor.hpp"

namespace hirenet {

enum class FeatureKind { Continuous, Binary };

// Per-answer aggregate descriptor. Continuous columns contribute
// (mean, std, min, max, sum of positive gradients, sum of negative
// gradients as magnitude); binary columns contribute (mean, active segment
// count, active segment duration mean, duration std). Gradients are first
// differences along time; std is the population form.
struct StatVector {
    std::vector<double> values;
    std::vector<std::string> names;  // parallel to values
};

StatVector aggregate_stats(const Tensor& answer, const std::vector<FeatureKind>& kinds);

struct Codebook {
    Tensor centroids;  // k x featureDim
    size_t k() const { return centroids.rows(); }
};

// Lloyd iterations from a seeded distinct-point initialization until the
// assignment fixpoint or max_iters. An emptied cluster is re-seeded to the
// point farthest from its centroid. Inertia never increases.
Codebook kmeans_fit(const Tensor& frames, size_t k, uint64_t seed, size_t max_iters = 100);

size_t nearest_centroid(const Codebook& cb, const double* frame, size_t dim);

// Document frequencies over training answers only.
struct DocFreqs {
    std::vector<size_t> df;  // per codebook word
    size_t doc_count = 0;
};

DocFreqs count_doc_freqs(const Codebook& cb, const std::vector<Tensor>& train_answers);

// tf = count/totalFrames; idf = ln((1+N)/(1+df)) + 1; entry = tf * idf.
// Centroid ties resolve to the lowest index.
std::vector<double> bow_encode(const Tensor& answer, const Codebook& cb, const DocFreqs& dfs);

struct LogisticModel {
    std::vector<double> w;
    double b = 0.0;

    double score(const std::vector<double>& x) const;
};

// Minimizes mean BCE + l2*||w||^2 (bias excluded) by full-batch gradient
// descent with Armijo backtracking, until the gradient norm drops below
// 1e-6 or max_iters. Requires at least one example of each class.
LogisticModel train_linear_classifier(const std::vector<std::vector<double>>& xs,
                                      const std::vector<int>& ys, double l2,
                                      size_t max_iters = 5000);

double logistic_loss(const LogisticModel& m, const std::vector<std::vector<double>>& xs,
                     const std::vector<int>& ys, double l2);

// Mean answer score, thresholded.
struct CandidateScore {
    double score = 0.0;
    bool hirable = false;
};
CandidateScore candidate_score_from_answers(const std::vector<double>& answer_scores,
                                            double threshold = 0.5);

// Vote references. The random baseline draws each test prediction hirable
// with the training-set hirable rate and averages metrics over the draws;
// the majority baseline applies the per-position training majority label
// (ties hirable, unseen positions fall back to the global majority).
struct VoteBaselines {
    Metrics random_vote;
    Metrics majority_vote;
};

VoteBaselines vote_baselines(const std::vector<std::pair<int, int>>& train_position_labels,
                             const std::vector<std::pair<int, int>>& test_position_labels,
                             size_t draws, uint64_t seed);

}  // namespace hirenet

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "hirenet/rng.hpp"

namespace hirenet {

StatVector aggregate_stats(const Tensor& answer, const std::vector<FeatureKind>& kinds) {
    if (answer.rank() != 2 || answer.rows() == 0)
        throw ContractError("aggregate_stats: answer must have at least one frame");
    if (kinds.size() != answer.cols())
        throw ContractError("aggregate_stats: " + std::to_string(kinds.size()) +
                            " feature kinds for " + std::to_string(answer.cols()) + " columns");

    const size_t T = answer.rows();
    StatVector out;
    for (size_t c = 0; c < answer.cols(); ++c) {
        const std::string col = "col" + std::to_string(c);
        if (kinds[c] == FeatureKind::Continuous) {
            double mean = 0.0, mn = answer.at(0, c), mx = answer.at(0, c);
            for (size_t t = 0; t < T; ++t) {
                const double v = answer.at(t, c);
                mean += v;
                mn = std::min(mn, v);
                mx = std::max(mx, v);
            }
            mean /= static_cast<double>(T);
            double var = 0.0;
            for (size_t t = 0; t < T; ++t) {
                const double d = answer.at(t, c) - mean;
                var += d * d;
            }
            var /= static_cast<double>(T);  // population
            double sum_pos = 0.0, sum_neg = 0.0;
            for (size_t t = 1; t < T; ++t) {
                const double d = answer.at(t, c) - answer.at(t - 1, c);
                if (d > 0.0) sum_pos += d;
                else sum_neg += -d;
            }
            const double vals[] = {mean, std::sqrt(var), mn, mx, sum_pos, sum_neg};
            const char* tags[] = {"mean", "std", "min", "max", "sum_pos_grad", "sum_neg_grad"};
            for (size_t k = 0; k < 6; ++k) {
                out.values.push_back(vals[k]);
                out.names.push_back(col + "." + tags[k]);
            }
        } else {
            double mean = 0.0;
            std::vector<double> durations;
            size_t run = 0;
            for (size_t t = 0; t < T; ++t) {
                const double v = answer.at(t, c);
                if (v != 0.0 && v != 1.0)
                    throw ContractError("aggregate_stats: non-binary value " + std::to_string(v) +
                                        " in binary column " + std::to_string(c));
                mean += v;
                if (v == 1.0) {
                    ++run;
                } else if (run > 0) {
                    durations.push_back(static_cast<double>(run));
                    run = 0;
                }
            }
            if (run > 0) durations.push_back(static_cast<double>(run));
            mean /= static_cast<double>(T);
            double dur_mean = 0.0, dur_std = 0.0;
            if (!durations.empty()) {
                for (double d : durations) dur_mean += d;
                dur_mean /= static_cast<double>(durations.size());
                for (double d : durations) dur_std += (d - dur_mean) * (d - dur_mean);
                dur_std = std::sqrt(dur_std / static_cast<double>(durations.size()));
            }
            const double vals[] = {mean, static_cast<double>(durations.size()), dur_mean, dur_std};
            const char* tags[] = {"mean", "active_segments", "seg_dur_mean", "seg_dur_std"};
            for (size_t k = 0; k < 4; ++k) {
                out.values.push_back(vals[k]);
                out.names.push_back(col + "." + tags[k]);
            }
        }
    }
    return out;
}

namespace {

double sq_dist(const double* a, const double* b, size_t dim) {
    double s = 0.0;
    for (size_t i = 0; i < dim; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double inertia(const Tensor& frames, const Tensor& centroids,
               const std::vector<size_t>& assign) {
    double s = 0.0;
    for (size_t i = 0; i < frames.rows(); ++i)
        s += sq_dist(frames.row_ptr(i), centroids.row_ptr(assign[i]), frames.cols());
    return s;
}

}  // namespace

size_t nearest_centroid(const Codebook& cb, const double* frame, size_t dim) {
    size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t c = 0; c < cb.centroids.rows(); ++c) {
        const double d = sq_dist(frame, cb.centroids.row_ptr(c), dim);
        if (d < best_d) {  // strict: ties keep the lowest index
            best_d = d;
            best = c;
        }
    }
    return best;
}

Codebook kmeans_fit(const Tensor& frames, size_t k, uint64_t seed, size_t max_iters) {
    if (frames.rank() != 2 || frames.rows() == 0)
        throw ContractError("kmeans_fit: frames must be a non-empty matrix");
    if (k == 0 || k > frames.rows())
        throw ContractError("kmeans_fit: k = " + std::to_string(k) + " for " +
                            std::to_string(frames.rows()) + " frames");

    const size_t n = frames.rows(), dim = frames.cols();
    Rng rng(seed);

    // distinct random points as the initial centroids
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    rng.shuffle(idx);
    Codebook cb;
    cb.centroids = Tensor::matrix(k, dim);
    for (size_t c = 0; c < k; ++c)
        std::copy(frames.row_ptr(idx[c]), frames.row_ptr(idx[c]) + dim,
                  cb.centroids.row_ptr(c));

    std::vector<size_t> assign(n, 0), prev(n, SIZE_MAX);
    double prev_inertia = std::numeric_limits<double>::infinity();
    for (size_t iter = 0; iter < max_iters; ++iter) {
        for (size_t i = 0; i < n; ++i) assign[i] = nearest_centroid(cb, frames.row_ptr(i), dim);
        if (assign == prev) break;

        std::vector<double> sums(k * dim, 0.0);
        std::vector<size_t> counts(k, 0);
        for (size_t i = 0; i < n; ++i) {
            ++counts[assign[i]];
            const double* row = frames.row_ptr(i);
            double* dst = sums.data() + assign[i] * dim;
            for (size_t d = 0; d < dim; ++d) dst[d] += row[d];
        }
        for (size_t c = 0; c < k; ++c) {
            if (counts[c] == 0) {
                // re-seed an emptied cluster to the point farthest from its centroid
                size_t far_i = 0;
                double far_d = -1.0;
                for (size_t i = 0; i < n; ++i) {
                    const double d =
                        sq_dist(frames.row_ptr(i), cb.centroids.row_ptr(assign[i]), dim);
                    if (d > far_d) {
                        far_d = d;
                        far_i = i;
                    }
                }
                std::copy(frames.row_ptr(far_i), frames.row_ptr(far_i) + dim,
                          cb.centroids.row_ptr(c));
                continue;
            }
            double* dst = cb.centroids.row_ptr(c);
            for (size_t d = 0; d < dim; ++d)
                dst[d] = sums[c * dim + d] / static_cast<double>(counts[c]);
        }

        std::vector<size_t> fresh(n);
        for (size_t i = 0; i < n; ++i) fresh[i] = nearest_centroid(cb, frames.row_ptr(i), dim);
        const double cur = inertia(frames, cb.centroids, fresh);
        if (cur > prev_inertia + 1e-9)
            throw NumericError("kmeans_fit: inertia increased between iterations");
        prev_inertia = cur;
        prev = assign;
    }
    return cb;
}

DocFreqs count_doc_freqs(const Codebook& cb, const std::vector<Tensor>& train_answers) {
    DocFreqs out;
    out.df.assign(cb.k(), 0);
    out.doc_count = train_answers.size();
    for (const Tensor& a : train_answers) {
        std::vector<uint8_t> seen(cb.k(), 0);
        for (size_t t = 0; t < a.rows(); ++t)
            seen[nearest_centroid(cb, a.row_ptr(t), a.cols())] = 1;
        for (size_t c = 0; c < cb.k(); ++c) out.df[c] += seen[c];
    }
    return out;
}

std::vector<double> bow_encode(const Tensor& answer, const Codebook& cb, const DocFreqs& dfs) {
    if (answer.rows() == 0) throw DegenerateInputError("bow_encode: empty answer");
    if (answer.cols() != cb.centroids.cols())
        throw ContractError("bow_encode: frame dim != centroid dim");
    std::vector<double> counts(cb.k(), 0.0);
    for (size_t t = 0; t < answer.rows(); ++t)
        counts[nearest_centroid(cb, answer.row_ptr(t), answer.cols())] += 1.0;
    const double total = static_cast<double>(answer.rows());
    std::vector<double> out(cb.k(), 0.0);
    for (size_t c = 0; c < cb.k(); ++c) {
        const double tf = counts[c] / total;
        const double idf = std::log((1.0 + static_cast<double>(dfs.doc_count)) /
                                    (1.0 + static_cast<double>(dfs.df[c]))) +
                           1.0;
        out[c] = tf * idf;
    }
    return out;
}

double LogisticModel::score(const std::vector<double>& x) const {
    if (x.size() != w.size())
        throw ContractError("logistic: input length " + std::to_string(x.size()) +
                            " != weight length " + std::to_string(w.size()));
    double z = b;
    for (size_t i = 0; i < x.size(); ++i) z += w[i] * x[i];
    return 1.0 / (1.0 + std::exp(-z));
}

double logistic_loss(const LogisticModel& m, const std::vector<std::vector<double>>& xs,
                     const std::vector<int>& ys, double l2) {
    double loss = 0.0;
    constexpr double kEps = 1e-12;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double p = std::clamp(m.score(xs[i]), kEps, 1.0 - kEps);
        loss += -(ys[i] * std::log(p) + (1 - ys[i]) * std::log(1.0 - p));
    }
    loss /= static_cast<double>(xs.size());
    for (double wi : m.w) loss += l2 * wi * wi;
    return loss;
}

LogisticModel train_linear_classifier(const std::vector<std::vector<double>>& xs,
                                      const std::vector<int>& ys, double l2, size_t max_iters) {
    if (xs.empty() || xs.size() != ys.size())
        throw ContractError("train_linear_classifier: bad training set");
    bool has_pos = false, has_neg = false;
    for (int y : ys) {
        if (y == 1) has_pos = true;
        else if (y == 0) has_neg = true;
        else throw ContractError("train_linear_classifier: label must be 0 or 1");
    }
    if (!has_pos || !has_neg)
        throw ContractError("train_linear_classifier: training set has a single class");

    const size_t dim = xs[0].size(), n = xs.size();
    for (const auto& x : xs)
        if (x.size() != dim) throw ContractError("train_linear_classifier: ragged inputs");

    LogisticModel m;
    m.w.assign(dim, 0.0);
    m.b = 0.0;

    double loss = logistic_loss(m, xs, ys, l2);
    double step = 1.0;
    std::vector<double> gw(dim);
    for (size_t iter = 0; iter < max_iters; ++iter) {
        std::fill(gw.begin(), gw.end(), 0.0);
        double gb = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double err = m.score(xs[i]) - static_cast<double>(ys[i]);
            for (size_t d = 0; d < dim; ++d) gw[d] += err * xs[i][d];
            gb += err;
        }
        double norm2 = gb * gb / (static_cast<double>(n) * static_cast<double>(n));
        for (size_t d = 0; d < dim; ++d) {
            gw[d] = gw[d] / static_cast<double>(n) + 2.0 * l2 * m.w[d];
            norm2 += gw[d] * gw[d];
        }
        gb /= static_cast<double>(n);
        if (std::sqrt(norm2) < 1e-6) break;

        // Armijo backtracking keeps the loss monotone.
        step = std::min(step * 2.0, 1e4);
        LogisticModel trial = m;
        for (;;) {
            for (size_t d = 0; d < dim; ++d) trial.w[d] = m.w[d] - step * gw[d];
            trial.b = m.b - step * gb;
            const double trial_loss = logistic_loss(trial, xs, ys, l2);
            if (trial_loss <= loss - 1e-4 * step * norm2 || step < 1e-12) {
                m = trial;
                loss = trial_loss;
                break;
            }
            step *= 0.5;
        }
    }
    return m;
}

CandidateScore candidate_score_from_answers(const std::vector<double>& answer_scores,
                                            double threshold) {
    if (answer_scores.empty())
        throw DegenerateInputError("candidate_score_from_answers: no answer scores");
    double s = 0.0;
    for (double v : answer_scores) s += v;
    s /= static_cast<double>(answer_scores.size());
    return CandidateScore{s, s >= threshold};
}

VoteBaselines vote_baselines(const std::vector<std::pair<int, int>>& train_position_labels,
                             const std::vector<std::pair<int, int>>& test_position_labels,
                             size_t draws, uint64_t seed) {
    if (test_position_labels.empty())
        throw DegenerateInputError("vote_baselines: empty test set");
    if (train_position_labels.empty())
        throw DegenerateInputError("vote_baselines: empty training labels");
    if (draws == 0) throw ContractError("vote_baselines: draws must be >= 1");

    size_t train_pos = 0;
    std::map<int, std::pair<size_t, size_t>> by_position;  // position -> (hirable, total)
    for (const auto& [pos, label] : train_position_labels) {
        auto& [h, t] = by_position[pos];
        h += static_cast<size_t>(label != 0);
        ++t;
        train_pos += static_cast<size_t>(label != 0);
    }
    const double rate =
        static_cast<double>(train_pos) / static_cast<double>(train_position_labels.size());
    const bool global_majority = 2 * train_pos >= train_position_labels.size();  // tie: hirable

    std::vector<int> labels;
    labels.reserve(test_position_labels.size());
    for (const auto& [pos, label] : test_position_labels) labels.push_back(label);

    VoteBaselines out;
    Rng rng(seed);
    double p_sum = 0.0, r_sum = 0.0, f_sum = 0.0;
    std::vector<int> preds(labels.size());
    for (size_t d = 0; d < draws; ++d) {
        for (size_t i = 0; i < preds.size(); ++i) preds[i] = rng.bernoulli(rate) ? 1 : 0;
        const Metrics m = compute_metrics(preds, labels);
        p_sum += m.precision;
        r_sum += m.recall;
        f_sum += m.f1;
    }
    out.random_vote.precision = p_sum / static_cast<double>(draws);
    out.random_vote.recall = r_sum / static_cast<double>(draws);
    out.random_vote.f1 = f_sum / static_cast<double>(draws);

    for (size_t i = 0; i < preds.size(); ++i) {
        const auto it = by_position.find(test_position_labels[i].first);
        if (it == by_position.end()) {
            preds[i] = global_majority ? 1 : 0;  // unseen position
        } else {
            const auto& [h, t] = it->second;
            preds[i] = (2 * h >= t) ? 1 : 0;  // tie: hirable
        }
    }
    out.majority_vote = compute_metrics(preds, labels);
    return out;
}

}  // namespace hirenet

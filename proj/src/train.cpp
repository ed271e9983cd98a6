// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <thread>

#include "hirenet/harness.hpp"
#include "hirenet/rng.hpp"
#include "json.hpp"

namespace hirenet {

using nlohmann::json;

namespace {

struct AdamState {
    std::vector<std::vector<double>> m, v;
    size_t step = 0;

    explicit AdamState(HireNetParams& params) {
        for (auto& [name, t] : params.named_params()) {
            m.emplace_back(t->size(), 0.0);
            v.emplace_back(t->size(), 0.0);
        }
    }

    void update(HireNetParams& params, const OptimizerSettings& opt) {
        ++step;
        const double bc1 = 1.0 - std::pow(opt.beta1, static_cast<double>(step));
        const double bc2 = 1.0 - std::pow(opt.beta2, static_cast<double>(step));
        auto named = params.named_params();
        for (size_t p = 0; p < named.size(); ++p) {
            Tensor& t = *named[p].second;
            const auto& g = t.grad();
            for (size_t i = 0; i < t.size(); ++i) {
                m[p][i] = opt.beta1 * m[p][i] + (1.0 - opt.beta1) * g[i];
                v[p][i] = opt.beta2 * v[p][i] + (1.0 - opt.beta2) * g[i] * g[i];
                const double mhat = m[p][i] / bc1;
                const double vhat = v[p][i] / bc2;
                t.at(i) -= opt.learning_rate * mhat / (std::sqrt(vhat) + opt.epsilon);
            }
        }
    }
};

void scale_and_clip(HireNetParams& params, double inv_count, double clip_norm) {
    auto named = params.named_params();
    double norm2 = 0.0;
    for (auto& [name, t] : named) {
        auto& g = t->grad();
        for (double& x : g) {
            x *= inv_count;
            norm2 += x * x;
        }
    }
    const double norm = std::sqrt(norm2);
    if (clip_norm > 0.0 && norm > clip_norm) {
        const double s = clip_norm / norm;
        for (auto& [name, t] : named)
            for (double& x : t->grad()) x *= s;
    }
}

// One training example: an interview, or one of its answers for the
// answer-wise variant.
struct TrainItem {
    size_t interview = 0;
    size_t qa = 0;  // answer-wise only
};

double process_items(HireNetParams& local, const HireNetConfig& config, const Corpus& data,
                     const std::vector<TrainItem>& items, size_t begin, size_t end) {
    double loss_sum = 0.0;
    for (size_t i = begin; i < end; ++i) {
        const Interview& iv = data[items[i].interview];
        Graph g;
        Value score;
        if (config.variant == Variant::BigruAnswerwise) {
            score = forward_answer_pass(g, local, iv, items[i].qa);
        } else {
            score = forward_interview_pass(g, local, config, iv).score;
        }
        Value loss = g.bce_loss(score, iv.label);
        loss_sum += g.scalar_of(loss);
        g.backward(loss);
    }
    return loss_sum;
}

size_t resolve_threads(const OptimizerSettings& opt) {
    if (opt.threads > 0) return opt.threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min<unsigned>(hw, 8);
}

}  // namespace

EvalResult evaluate(HireNetParams& params, const HireNetConfig& config, const Corpus& split) {
    if (split.empty()) throw DegenerateInputError("evaluate: empty split");
    EvalResult res;
    std::vector<int> preds, labels;
    preds.reserve(split.size());
    labels.reserve(split.size());
    for (const Interview& iv : split) {
        const Prediction p = forward_interview(params, config, iv);
        res.candidates.push_back(
            CandidateResult{iv.candidate_id, p.score, p.hirable ? 1 : 0, iv.label});
        preds.push_back(p.hirable ? 1 : 0);
        labels.push_back(iv.label);
    }
    res.metrics = compute_metrics(preds, labels);
    return res;
}

TrainReport train(HireNetParams& params, const HireNetConfig& config, const Corpus& train_set,
                  const Corpus& validation_set, const std::string& checkpoint_path) {
    config.validate();
    params.validate(config);
    if (train_set.empty() || validation_set.empty())
        throw ContractError("train: empty train or validation split");
    {
        bool pos = false, neg = false;
        for (const Interview& iv : train_set) (iv.label == 1 ? pos : neg) = true;
        if (!pos || !neg) throw ContractError("train: training split has a single class");
    }

    std::vector<TrainItem> items;
    if (config.variant == Variant::BigruAnswerwise) {
        for (size_t i = 0; i < train_set.size(); ++i)
            for (size_t q = 0; q < train_set[i].qa.size(); ++q) items.push_back({i, q});
    } else {
        for (size_t i = 0; i < train_set.size(); ++i) items.push_back({i, 0});
    }

    const size_t threads = std::min(resolve_threads(config.optim), items.size());
    TrainReport report;
    report.seed = config.seed;
    report.threads_used = threads;
    report.config = config;
    report.checkpoint_path = checkpoint_path;

    AdamState adam(params);
    Rng shuffle_rng(Rng::substream(config.seed, 0x72A17ULL));
    HireNetParams best = params;
    double best_f1 = -1.0;
    size_t best_epoch = 0;

    // worker-local parameter copies; grads reduced in worker order
    std::vector<HireNetParams> locals(threads > 1 ? threads : 0, params);

    for (size_t epoch = 1; epoch <= config.optim.max_epochs; ++epoch) {
        shuffle_rng.shuffle(items);
        double epoch_loss = 0.0;

        for (size_t start = 0; start < items.size(); start += config.optim.batch_size) {
            const size_t end = std::min(items.size(), start + config.optim.batch_size);
            const size_t count = end - start;
            params.zero_grads();

            double batch_loss = 0.0;
            try {
                if (threads <= 1 || count < 2 * threads) {
                    batch_loss = process_items(params, config, train_set, items, start, end);
                } else {
                    std::vector<double> losses(threads, 0.0);
                    std::vector<std::thread> pool;
                    const size_t chunk = (count + threads - 1) / threads;
                    for (size_t w = 0; w < threads; ++w) {
                        const size_t b = start + w * chunk;
                        const size_t e = std::min(end, b + chunk);
                        if (b >= e) break;
                        locals[w] = params;  // fresh values, zero grads
                        locals[w].zero_grads();
                        pool.emplace_back([&, w, b, e]() {
                            losses[w] = process_items(locals[w], config, train_set, items, b, e);
                        });
                    }
                    for (auto& t : pool) t.join();
                    auto master = params.named_params();
                    for (size_t w = 0; w < threads; ++w) {
                        if (start + w * chunk >= end) break;
                        auto local_named = locals[w].named_params();
                        for (size_t p = 0; p < master.size(); ++p) {
                            auto& dst = master[p].second->grad();
                            const auto& src = local_named[p].second->grad();
                            for (size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
                        }
                        batch_loss += losses[w];
                    }
                }
            } catch (const NumericError& e) {
                throw NumericError("train: diverged at epoch " + std::to_string(epoch) + ": " +
                                   e.what());
            }

            epoch_loss += batch_loss;
            scale_and_clip(params, 1.0 / static_cast<double>(count), config.optim.clip_norm);
            adam.update(params, config.optim);
        }
        epoch_loss /= static_cast<double>(items.size());
        if (!std::isfinite(epoch_loss))
            throw NumericError("train: non-finite epoch loss at epoch " + std::to_string(epoch));

        const EvalResult val = evaluate(params, config, validation_set);
        report.epochs.push_back(EpochRecord{epoch, epoch_loss, val.metrics});

        if (val.metrics.f1 > best_f1) {  // ties keep the earliest epoch
            best_f1 = val.metrics.f1;
            best_epoch = epoch;
            best = params;
            if (!checkpoint_path.empty()) save_checkpoint(checkpoint_path, config, best);
        }
        if (epoch - best_epoch >= config.optim.patience) break;
        if (config.optim.loss_floor > 0.0 && epoch_loss <= config.optim.loss_floor) break;
    }

    report.best_epoch = best_epoch;
    report.best_val_f1 = best_f1;
    params = best;  // leave the caller holding the best parameters
    return report;
}

std::string train_report_to_json(const TrainReport& report) {
    json j;
    j["best_epoch"] = report.best_epoch;
    j["best_val_f1"] = report.best_val_f1;
    j["checkpoint_path"] = report.checkpoint_path;
    j["seed"] = report.seed;
    j["threads_used"] = report.threads_used;
    j["config"] = json::parse(config_to_json(report.config));
    json epochs = json::array();
    for (const EpochRecord& e : report.epochs)
        epochs.push_back({{"epoch", e.epoch},
                          {"train_loss", e.train_loss},
                          {"val_precision", e.validation.precision},
                          {"val_recall", e.validation.recall},
                          {"val_f1", e.validation.f1}});
    j["epochs"] = std::move(epochs);
    return j.dump(2);
}

}  // namespace hirenet

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Attention export, non-sequential baseline pipelines, and fusion.

#include <cmath>
#include <cstdio>

#include "hirenet/harness.hpp"
#include "hirenet/io_util.hpp"
#include "json.hpp"

namespace hirenet {

using nlohmann::json;

std::string metrics_csv_header() { return "model,modality,split,precision,recall,f1\n"; }

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

}  // namespace

std::string metrics_csv_row(const std::string& model, const std::string& modality,
                            const std::string& split, const Metrics& m) {
    return model + "," + modality + "," + split + "," + fmt(m.precision) + "," + fmt(m.recall) +
           "," + fmt(m.f1) + "\n";
}

std::string scores_to_csv(const EvalResult& result) {
    std::string out = "candidate_id,score,predicted,label\n";
    for (const CandidateResult& c : result.candidates)
        out += std::to_string(c.candidate_id) + "," + fmt(c.score) + "," +
               std::to_string(c.predicted) + "," + std::to_string(c.label) + "\n";
    return out;
}

std::string export_attention(HireNetParams& params, const HireNetConfig& config,
                             const Interview& interview) {
    if (config.variant != Variant::HireNet && config.variant != Variant::HnSatt)
        throw ContractError(std::string("export_attention: variant '") +
                            variant_name(config.variant) + "' has no attention weights");
    Graph g;
    const ForwardPass fp = forward_interview_pass(g, params, config, interview);
    const AttentionTrace& tr = fp.prediction.trace;

    json j;
    j["candidate_id"] = interview.candidate_id;
    j["variant"] = variant_name(config.variant);
    j["score"] = fp.prediction.score;
    j["predicted_hirable"] = fp.prediction.hirable;
    j["questions"] = json::array();
    for (size_t i = 0; i < tr.question_alphas.size(); ++i)
        j["questions"].push_back({{"question_index", i},
                                  {"alpha", tr.question_alphas[i]},
                                  {"p_q", tr.relative_question[i]}});
    j["answers"] = json::array();
    for (size_t i = 0; i < tr.frame_alphas.size(); ++i) {
        json steps = json::array();
        for (size_t t = 0; t < tr.frame_alphas[i].size(); ++t)
            steps.push_back({{"step", t},
                             {"alpha", tr.frame_alphas[i][t]},
                             {"p_w", tr.relative_word[i][t]},
                             {"combined", tr.combined[i][t]}});
        j["answers"].push_back({{"question_index", i}, {"steps", std::move(steps)}});
    }
    return j.dump(2);
}

// --- stats baseline ----------------------------------------------------------

namespace {

std::vector<FeatureKind> infer_kinds(const Corpus& train_set) {
    if (train_set.empty()) throw ContractError("stats baseline: empty training split");
    const size_t dim = train_set.front().qa.front().answer.cols();
    std::vector<FeatureKind> kinds(dim, FeatureKind::Binary);
    for (const Interview& iv : train_set)
        for (const QAPair& qa : iv.qa)
            for (size_t t = 0; t < qa.answer.rows(); ++t)
                for (size_t c = 0; c < dim; ++c) {
                    const double v = qa.answer.at(t, c);
                    if (v != 0.0 && v != 1.0) kinds[c] = FeatureKind::Continuous;
                }
    return kinds;
}

std::vector<double> standardized(const StatsBaselineModel& m, const Tensor& answer) {
    StatVector sv = aggregate_stats(answer, m.kinds);
    std::vector<double> x(sv.values.size());
    for (size_t i = 0; i < x.size(); ++i) {
        const double s = m.feat_std[i] > 1e-12 ? m.feat_std[i] : 1.0;
        x[i] = (sv.values[i] - m.feat_mean[i]) / s;
    }
    return x;
}

EvalResult eval_answerwise(const Corpus& split, double threshold,
                           const std::function<double(const Tensor&)>& answer_score) {
    if (split.empty()) throw DegenerateInputError("baseline eval: empty split");
    EvalResult res;
    std::vector<int> preds, labels;
    for (const Interview& iv : split) {
        std::vector<double> scores;
        scores.reserve(iv.qa.size());
        for (const QAPair& qa : iv.qa) scores.push_back(answer_score(qa.answer));
        const CandidateScore cs = candidate_score_from_answers(scores, threshold);
        res.candidates.push_back(
            CandidateResult{iv.candidate_id, cs.score, cs.hirable ? 1 : 0, iv.label});
        preds.push_back(cs.hirable ? 1 : 0);
        labels.push_back(iv.label);
    }
    res.metrics = compute_metrics(preds, labels);
    return res;
}

}  // namespace

StatsBaselineModel train_stats_baseline(const Corpus& train_set, double l2) {
    StatsBaselineModel m;
    m.kinds = infer_kinds(train_set);

    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (const Interview& iv : train_set)
        for (const QAPair& qa : iv.qa) {
            xs.push_back(aggregate_stats(qa.answer, m.kinds).values);
            ys.push_back(iv.label);
        }

    const size_t dim = xs.front().size();
    m.feat_mean.assign(dim, 0.0);
    m.feat_std.assign(dim, 0.0);
    for (const auto& x : xs)
        for (size_t i = 0; i < dim; ++i) m.feat_mean[i] += x[i];
    for (size_t i = 0; i < dim; ++i) m.feat_mean[i] /= static_cast<double>(xs.size());
    for (const auto& x : xs)
        for (size_t i = 0; i < dim; ++i) {
            const double d = x[i] - m.feat_mean[i];
            m.feat_std[i] += d * d;
        }
    for (size_t i = 0; i < dim; ++i)
        m.feat_std[i] = std::sqrt(m.feat_std[i] / static_cast<double>(xs.size()));

    for (auto& x : xs)
        for (size_t i = 0; i < dim; ++i) {
            const double s = m.feat_std[i] > 1e-12 ? m.feat_std[i] : 1.0;
            x[i] = (x[i] - m.feat_mean[i]) / s;
        }
    m.clf = train_linear_classifier(xs, ys, l2);
    return m;
}

EvalResult eval_stats_baseline(const StatsBaselineModel& model, const Corpus& split) {
    return eval_answerwise(split, model.threshold, [&](const Tensor& answer) {
        return model.clf.score(standardized(model, answer));
    });
}

// --- bag-of-words baseline -----------------------------------------------------

BowBaselineModel train_bow_baseline(const Corpus& train_set, size_t k, uint64_t seed, double l2) {
    if (train_set.empty()) throw ContractError("bow baseline: empty training split");
    const size_t dim = train_set.front().qa.front().answer.cols();
    size_t total_frames = 0;
    for (const Interview& iv : train_set)
        for (const QAPair& qa : iv.qa) total_frames += qa.answer.rows();

    Tensor frames = Tensor::matrix(total_frames, dim);
    std::vector<Tensor> train_answers;
    size_t row = 0;
    for (const Interview& iv : train_set)
        for (const QAPair& qa : iv.qa) {
            std::copy(qa.answer.values().begin(), qa.answer.values().end(), frames.row_ptr(row));
            row += qa.answer.rows();
            train_answers.push_back(qa.answer);
        }

    BowBaselineModel m;
    m.codebook = kmeans_fit(frames, k, seed);
    m.doc_freqs = count_doc_freqs(m.codebook, train_answers);

    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (const Interview& iv : train_set)
        for (const QAPair& qa : iv.qa) {
            xs.push_back(bow_encode(qa.answer, m.codebook, m.doc_freqs));
            ys.push_back(iv.label);
        }
    m.clf = train_linear_classifier(xs, ys, l2);
    return m;
}

EvalResult eval_bow_baseline(const BowBaselineModel& model, const Corpus& split) {
    return eval_answerwise(split, model.threshold, [&](const Tensor& answer) {
        return model.clf.score(bow_encode(answer, model.codebook, model.doc_freqs));
    });
}

// --- baseline persistence ------------------------------------------------------

namespace {

json logistic_json(const LogisticModel& m) { return {{"w", m.w}, {"b", m.b}}; }

LogisticModel logistic_from(const json& j) {
    LogisticModel m;
    m.w = j.at("w").get<std::vector<double>>();
    m.b = j.at("b").get<double>();
    return m;
}

json checkpoint_shell(const char* kind) {
    json j;
    j["format_version"] = kCheckpointVersion;
    j["kind"] = kind;
    return j;
}

json parse_checkpoint(const std::string& path, const char* kind) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError("checkpoint '" + path + "': " + e.what());
    }
    if (j.value("format_version", "") != kCheckpointVersion)
        throw ContractError("checkpoint '" + path + "': unsupported format version");
    if (j.value("kind", "") != kind)
        throw ContractError("checkpoint '" + path + "': expected kind '" + kind + "'");
    return j;
}

}  // namespace

void save_stats_baseline(const std::string& path, const StatsBaselineModel& model) {
    json j = checkpoint_shell("stats-baseline");
    std::vector<int> kinds;
    for (FeatureKind k : model.kinds) kinds.push_back(k == FeatureKind::Binary ? 1 : 0);
    j["kinds"] = kinds;
    j["feat_mean"] = model.feat_mean;
    j["feat_std"] = model.feat_std;
    j["classifier"] = logistic_json(model.clf);
    j["threshold"] = model.threshold;
    atomic_write_file(path, j.dump() + "\n");
}

StatsBaselineModel load_stats_baseline(const std::string& path) {
    const json j = parse_checkpoint(path, "stats-baseline");
    StatsBaselineModel m;
    for (int k : j.at("kinds").get<std::vector<int>>())
        m.kinds.push_back(k ? FeatureKind::Binary : FeatureKind::Continuous);
    m.feat_mean = j.at("feat_mean").get<std::vector<double>>();
    m.feat_std = j.at("feat_std").get<std::vector<double>>();
    m.clf = logistic_from(j.at("classifier"));
    m.threshold = j.at("threshold").get<double>();
    return m;
}

void save_bow_baseline(const std::string& path, const BowBaselineModel& model) {
    json j = checkpoint_shell("bow-baseline");
    j["centroids"] = {{"shape", model.codebook.centroids.shape()},
                      {"values", model.codebook.centroids.values()}};
    j["doc_freqs"] = model.doc_freqs.df;
    j["doc_count"] = model.doc_freqs.doc_count;
    j["classifier"] = logistic_json(model.clf);
    j["threshold"] = model.threshold;
    atomic_write_file(path, j.dump() + "\n");
}

BowBaselineModel load_bow_baseline(const std::string& path) {
    const json j = parse_checkpoint(path, "bow-baseline");
    BowBaselineModel m;
    const auto shape = j.at("centroids").at("shape").get<std::vector<size_t>>();
    if (shape.size() != 2) throw ContractError("bow checkpoint: centroid shape must be rank 2");
    m.codebook.centroids =
        Tensor::matrix(shape[0], shape[1], j.at("centroids").at("values").get<std::vector<double>>());
    m.doc_freqs.df = j.at("doc_freqs").get<std::vector<size_t>>();
    m.doc_freqs.doc_count = j.at("doc_count").get<size_t>();
    m.clf = logistic_from(j.at("classifier"));
    m.threshold = j.at("threshold").get<double>();
    return m;
}

// --- fusion ---------------------------------------------------------------------

namespace {

const Interview* lookup(const std::map<std::string, Corpus>& corpora, const std::string& modality,
                        int64_t id) {
    auto it = corpora.find(modality);
    if (it == corpora.end())
        throw ContractError("fusion: no corpus for modality '" + modality + "'");
    return find_candidate(it->second, id);
}

}  // namespace

EvalResult late_fusion_eval(std::vector<ModalityModel>& models,
                            const std::map<std::string, Corpus>& corpora,
                            const std::vector<int64_t>& candidate_ids, double threshold) {
    if (models.empty()) throw ContractError("late fusion: no models");
    EvalResult res;
    std::vector<int> preds, labels;
    for (int64_t id : candidate_ids) {
        std::vector<double> scores;
        int label = -1;
        for (ModalityModel& m : models) {
            const Interview* iv = lookup(corpora, m.config.modality, id);
            if (!iv) continue;
            scores.push_back(forward_interview(m.params, m.config, *iv).score);
            label = iv->label;
        }
        if (scores.empty()) continue;  // candidate absent from every modality
        const CandidateScore cs = late_fusion(scores, threshold);
        res.candidates.push_back(CandidateResult{id, cs.score, cs.hirable ? 1 : 0, label});
        preds.push_back(cs.hirable ? 1 : 0);
        labels.push_back(label);
    }
    if (preds.empty()) throw DegenerateInputError("late fusion: no scorable candidates");
    res.metrics = compute_metrics(preds, labels);
    return res;
}

namespace {

std::array<std::optional<std::vector<double>>, 3> candidate_summaries(
    std::vector<ModalityModel>& models, const std::map<std::string, Corpus>& corpora,
    int64_t id, int* label_out) {
    std::array<std::optional<std::vector<double>>, 3> out;
    for (size_t m = 0; m < models.size() && m < 3; ++m) {
        const Interview* iv = lookup(corpora, models[m].config.modality, id);
        if (!iv) continue;
        Graph g;
        ForwardPass fp = forward_interview_pass(g, models[m].params, models[m].config, *iv);
        if (fp.summary.empty())
            throw ContractError("early fusion: variant '" +
                                std::string(variant_name(models[m].config.variant)) +
                                "' exposes no summary vector");
        out[m] = std::move(fp.summary);
        if (label_out) *label_out = iv->label;
    }
    return out;
}

}  // namespace

EarlyFusionModel train_early_fusion(std::vector<ModalityModel>& models,
                                    const std::map<std::string, Corpus>& corpora,
                                    const std::vector<int64_t>& train_ids, double l2) {
    if (models.empty() || models.size() > 3)
        throw ContractError("early fusion: expected 1..3 modality models");
    EarlyFusionModel fusion;
    for (ModalityModel& m : models) fusion.modalities.push_back(m.config.modality);

    struct Row {
        std::array<std::optional<std::vector<double>>, 3> vs;
        int label;
    };
    std::vector<Row> rows;
    std::array<std::vector<double>, 3> sums;
    std::array<size_t, 3> counts{0, 0, 0};
    for (int64_t id : train_ids) {
        int label = -1;
        auto vs = candidate_summaries(models, corpora, id, &label);
        if (label < 0) continue;
        for (size_t m = 0; m < 3; ++m) {
            if (!vs[m]) continue;
            if (sums[m].empty()) sums[m].assign(vs[m]->size(), 0.0);
            for (size_t i = 0; i < vs[m]->size(); ++i) sums[m][i] += (*vs[m])[i];
            ++counts[m];
        }
        rows.push_back(Row{std::move(vs), label});
    }
    if (rows.empty()) throw DegenerateInputError("early fusion: no training candidates");

    for (size_t m = 0; m < models.size() && m < 3; ++m) {
        if (counts[m] == 0)
            throw DegenerateInputError("early fusion: modality '" + fusion.modalities[m] +
                                       "' has no training summaries");
        fusion.train_means[m] = sums[m];
        for (double& v : fusion.train_means[m]) v /= static_cast<double>(counts[m]);
    }

    std::vector<std::vector<double>> xs;
    std::vector<int> ys;
    for (const Row& r : rows) {
        std::vector<double> x;
        for (size_t m = 0; m < models.size() && m < 3; ++m) {
            const std::vector<double>& v = r.vs[m] ? *r.vs[m] : fusion.train_means[m];
            x.insert(x.end(), v.begin(), v.end());
        }
        xs.push_back(std::move(x));
        ys.push_back(r.label);
    }
    fusion.clf = train_linear_classifier(xs, ys, l2);
    return fusion;
}

EvalResult early_fusion_eval(const EarlyFusionModel& fusion, std::vector<ModalityModel>& models,
                             const std::map<std::string, Corpus>& corpora,
                             const std::vector<int64_t>& candidate_ids) {
    EvalResult res;
    std::vector<int> preds, labels;
    for (int64_t id : candidate_ids) {
        int label = -1;
        auto vs = candidate_summaries(models, corpora, id, &label);
        if (label < 0) continue;
        const double score = early_fusion(vs, fusion.train_means, fusion.clf);
        const int pred = score >= fusion.threshold ? 1 : 0;
        res.candidates.push_back(CandidateResult{id, score, pred, label});
        preds.push_back(pred);
        labels.push_back(label);
    }
    if (preds.empty()) throw DegenerateInputError("early fusion: no scorable candidates");
    res.metrics = compute_metrics(preds, labels);
    return res;
}

}  // namespace hirenet

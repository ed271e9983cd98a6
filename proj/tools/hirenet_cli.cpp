// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Exit codes: 0 success, 2 validation/contract
// error, 3 numeric failure.

#include <filesystem>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "hirenet/harness.hpp"
#include "hirenet/io_util.hpp"

namespace fs = std::filesystem;
using namespace hirenet;

namespace {

std::string data_file(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

Corpus load_modality(const std::string& dir, const std::string& modality) {
    return load_corpus(data_file(dir, modality + ".jsonl"));
}

const std::vector<int64_t>& split_ids(const SplitIndices& s, const std::string& name) {
    if (name == "train") return s.train;
    if (name == "val" || name == "validation") return s.validation;
    if (name == "test") return s.test;
    throw ContractError("unknown split '" + name + "'");
}

int cmd_generate(const std::string& spec_path, const std::string& out_dir) {
    const GeneratorSpec spec = generator_spec_from_json(read_file(spec_path));
    const GeneratedCorpus gen = generate_corpus(spec);
    fs::create_directories(out_dir);
    for (const auto& [modality, corpus] : gen.by_modality)
        save_corpus(corpus, data_file(out_dir, modality + ".jsonl"));
    save_truth(gen.truth, data_file(out_dir, "truth.json"));
    // one split shared by every modality; the first listed modality is complete
    const Corpus& anchor = gen.by_modality.at(spec.modalities.front());
    save_splits(split_corpus(anchor, spec.seed), data_file(out_dir, "splits.json"));
    atomic_write_file(data_file(out_dir, "gen_spec.json"), generator_spec_to_json(spec) + "\n");
    std::cout << "generated " << spec.candidates << " candidates, "
              << gen.by_modality.size() << " modality files under " << out_dir << "\n";
    return 0;
}

int cmd_train(const std::string& config_path, const std::string& data_dir,
              const std::string& modality, const std::string& variant, uint64_t seed,
              bool seed_set, const std::string& out_dir) {
    HireNetConfig config;
    if (!config_path.empty()) config = config_from_json(read_file(config_path));
    if (!modality.empty()) config.modality = modality;
    if (!variant.empty()) config.variant = variant_from_string(variant);
    if (seed_set) config.seed = seed;

    const Corpus corpus = load_modality(data_dir, config.modality);
    const SplitIndices splits = load_splits(data_file(data_dir, "splits.json"));
    if (corpus.empty()) throw ContractError("train: corpus is empty");
    config.feature_dim = corpus.front().qa.front().answer.cols();
    const size_t vocab = max_context_token(corpus);
    config.question_vocab = vocab;
    config.job_vocab = vocab;
    config.validate();

    fs::create_directories(out_dir);
    HireNetParams params = init_model(config);
    const std::string ckpt = data_file(out_dir, "checkpoint.json");
    const TrainReport report = train(params, config, select_by_ids(corpus, splits.train),
                                     select_by_ids(corpus, splits.validation), ckpt);
    atomic_write_file(data_file(out_dir, "report.json"), train_report_to_json(report) + "\n");
    std::cout << "best epoch " << report.best_epoch << ", val F1 " << report.best_val_f1
              << ", checkpoint " << ckpt << "\n";
    return 0;
}

int cmd_evaluate(const std::string& ckpt_path, const std::string& data_dir,
                 const std::string& split, const std::string& report_path,
                 std::string scores_path) {
    LoadedModel model = load_checkpoint(ckpt_path);
    const Corpus corpus = load_modality(data_dir, model.config.modality);
    const SplitIndices splits = load_splits(data_file(data_dir, "splits.json"));
    const Corpus subset = select_by_ids(corpus, split_ids(splits, split));
    if (subset.empty()) throw DegenerateInputError("evaluate: split '" + split + "' is empty");

    const EvalResult res = evaluate(model.params, model.config, subset);
    atomic_write_file(report_path,
                      metrics_csv_header() + metrics_csv_row(variant_name(model.config.variant),
                                                             model.config.modality, split,
                                                             res.metrics));
    if (scores_path.empty()) scores_path = report_path + ".scores.csv";
    atomic_write_file(scores_path, scores_to_csv(res));
    std::cout << variant_name(model.config.variant) << " " << model.config.modality << " "
              << split << ": P " << res.metrics.precision << " R " << res.metrics.recall
              << " F1 " << res.metrics.f1 << "\n";
    return 0;
}

int cmd_fuse(const std::string& mode, const std::vector<std::string>& ckpts,
             const std::string& data_dir, const std::string& split,
             const std::string& report_path) {
    std::vector<ModalityModel> models;
    std::map<std::string, Corpus> corpora;
    for (const std::string& path : ckpts) {
        LoadedModel m = load_checkpoint(path);
        if (!corpora.count(m.config.modality))
            corpora.emplace(m.config.modality, load_modality(data_dir, m.config.modality));
        models.push_back(ModalityModel{m.config, std::move(m.params)});
    }
    const SplitIndices splits = load_splits(data_file(data_dir, "splits.json"));

    EvalResult res;
    if (mode == "late") {
        res = late_fusion_eval(models, corpora, split_ids(splits, split));
    } else if (mode == "early") {
        const EarlyFusionModel fusion = train_early_fusion(models, corpora, splits.train);
        res = early_fusion_eval(fusion, models, corpora, split_ids(splits, split));
    } else {
        throw ContractError("fuse: mode must be 'early' or 'late'");
    }
    const std::string name = mode + "_fusion";
    if (!report_path.empty())
        atomic_write_file(report_path, metrics_csv_header() +
                                           metrics_csv_row(name, "multimodal", split, res.metrics));
    std::cout << name << " " << split << ": P " << res.metrics.precision << " R "
              << res.metrics.recall << " F1 " << res.metrics.f1 << "\n";
    return 0;
}

int cmd_baseline(const std::string& kind, const std::string& data_dir,
                 const std::string& modality, const std::string& split, size_t k, uint64_t seed,
                 double l2, const std::string& report_path, const std::string& model_out) {
    const Corpus corpus = load_modality(data_dir, modality);
    const SplitIndices splits = load_splits(data_file(data_dir, "splits.json"));
    const Corpus train_set = select_by_ids(corpus, splits.train);
    const Corpus eval_set = select_by_ids(corpus, split_ids(splits, split));

    std::string csv = metrics_csv_header();
    if (kind == "stats") {
        const StatsBaselineModel m = train_stats_baseline(train_set, l2);
        const EvalResult res = eval_stats_baseline(m, eval_set);
        csv += metrics_csv_row("stats_logistic", modality, split, res.metrics);
        if (!model_out.empty()) save_stats_baseline(model_out, m);
        std::cout << "stats_logistic " << split << ": F1 " << res.metrics.f1 << "\n";
    } else if (kind == "bow") {
        const BowBaselineModel m = train_bow_baseline(train_set, k, seed, l2);
        const EvalResult res = eval_bow_baseline(m, eval_set);
        csv += metrics_csv_row("bow_logistic", modality, split, res.metrics);
        if (!model_out.empty()) save_bow_baseline(model_out, m);
        std::cout << "bow_logistic " << split << ": F1 " << res.metrics.f1 << "\n";
    } else if (kind == "votes") {
        const auto truth = load_truth(data_file(data_dir, "truth.json"));
        std::map<int64_t, int> position;
        for (const CandidateTruth& t : truth) position[t.candidate_id] = t.position;
        auto pairs = [&](const Corpus& set) {
            std::vector<std::pair<int, int>> out;
            for (const Interview& iv : set) {
                auto it = position.find(iv.candidate_id);
                if (it == position.end())
                    throw ContractError("votes: candidate " + std::to_string(iv.candidate_id) +
                                        " missing from truth.json");
                out.emplace_back(it->second, iv.label);
            }
            return out;
        };
        const VoteBaselines vb = vote_baselines(pairs(train_set), pairs(eval_set), 1000, seed);
        csv += metrics_csv_row("random_vote", modality, split, vb.random_vote);
        csv += metrics_csv_row("majority_vote", modality, split, vb.majority_vote);
        std::cout << "random_vote F1 " << vb.random_vote.f1 << ", majority_vote F1 "
                  << vb.majority_vote.f1 << "\n";
    } else {
        throw ContractError("baseline: kind must be stats, bow, or votes");
    }
    if (!report_path.empty()) atomic_write_file(report_path, csv);
    return 0;
}

int cmd_attention(const std::string& ckpt_path, const std::string& data_dir, int64_t candidate,
                  const std::string& out_path) {
    LoadedModel model = load_checkpoint(ckpt_path);
    const Corpus corpus = load_modality(data_dir, model.config.modality);
    const Interview* iv = find_candidate(corpus, candidate);
    if (!iv)
        throw ContractError("attention-export: candidate " + std::to_string(candidate) +
                            " not found");
    atomic_write_file(out_path, export_attention(model.params, model.config, *iv) + "\n");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HireNet: hierarchical attention models for interview classification"};
    app.require_subcommand(1);

    // generate-data
    auto* gen = app.add_subcommand("generate-data", "Generate a synthetic corpus");
    std::string gen_spec, gen_out;
    gen->add_option("--spec", gen_spec, "Generator spec JSON")->required();
    gen->add_option("--out", gen_out, "Output directory")->required();

    // train
    auto* tr = app.add_subcommand("train", "Train a model variant");
    std::string tr_config, tr_data, tr_modality, tr_variant, tr_out;
    uint64_t tr_seed = 0;
    tr->add_option("--config", tr_config, "Config JSON (defaults when omitted)");
    tr->add_option("--data", tr_data, "Corpus directory")->required();
    tr->add_option("--modality", tr_modality, "text|audio|video");
    tr->add_option("--variant", tr_variant, "hirenet|hn_satt|hn_avg|bigru");
    auto* seed_opt = tr->add_option("--seed", tr_seed, "Training seed");
    tr->add_option("--out", tr_out, "Output directory")->required();

    // evaluate
    auto* ev = app.add_subcommand("evaluate", "Evaluate a checkpoint on a split");
    std::string ev_ckpt, ev_data, ev_split = "test", ev_report, ev_scores;
    ev->add_option("--checkpoint", ev_ckpt)->required();
    ev->add_option("--data", ev_data)->required();
    ev->add_option("--split", ev_split, "train|val|test");
    ev->add_option("--report", ev_report, "Metrics CSV path")->required();
    ev->add_option("--scores", ev_scores, "Per-candidate score CSV path");

    // fuse
    auto* fu = app.add_subcommand("fuse", "Early or late multimodal fusion");
    std::string fu_mode, fu_data, fu_split = "test", fu_report;
    std::vector<std::string> fu_ckpts;
    fu->add_option("--mode", fu_mode, "early|late")->required();
    fu->add_option("--checkpoints", fu_ckpts, "Monomodal checkpoints")->required()->expected(1, 3);
    fu->add_option("--data", fu_data)->required();
    fu->add_option("--split", fu_split, "train|val|test");
    fu->add_option("--report", fu_report, "Metrics CSV path");

    // baseline
    auto* ba = app.add_subcommand("baseline", "Non-sequential and vote baselines");
    std::string ba_kind, ba_data, ba_modality = "audio", ba_split = "test", ba_report, ba_out;
    size_t ba_k = 64;
    uint64_t ba_seed = 1;
    double ba_l2 = 1e-4;
    ba->add_option("--kind", ba_kind, "stats|bow|votes")->required();
    ba->add_option("--data", ba_data)->required();
    ba->add_option("--modality", ba_modality);
    ba->add_option("--split", ba_split);
    ba->add_option("--k", ba_k, "Codebook size (bow)");
    ba->add_option("--seed", ba_seed);
    ba->add_option("--l2", ba_l2);
    ba->add_option("--report", ba_report, "Metrics CSV path");
    ba->add_option("--model-out", ba_out, "Persist the trained baseline");

    // attention-export
    auto* at = app.add_subcommand("attention-export", "Relative-attention report");
    std::string at_ckpt, at_data, at_out;
    int64_t at_candidate = -1;
    at->add_option("--checkpoint", at_ckpt)->required();
    at->add_option("--data", at_data)->required();
    at->add_option("--candidate", at_candidate)->required();
    at->add_option("--out", at_out)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return cmd_generate(gen_spec, gen_out);
        if (tr->parsed())
            return cmd_train(tr_config, tr_data, tr_modality, tr_variant, tr_seed,
                             seed_opt->count() > 0, tr_out);
        if (ev->parsed()) return cmd_evaluate(ev_ckpt, ev_data, ev_split, ev_report, ev_scores);
        if (fu->parsed()) return cmd_fuse(fu_mode, fu_ckpts, fu_data, fu_split, fu_report);
        if (ba->parsed())
            return cmd_baseline(ba_kind, ba_data, ba_modality, ba_split, ba_k, ba_seed, ba_l2,
                                ba_report, ba_out);
        if (at->parsed()) return cmd_attention(at_ckpt, at_data, at_candidate, at_out);
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 3;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/checkpoint.hpp"

#include "hirenet/io_util.hpp"
#include "json.hpp"

namespace hirenet {

using nlohmann::json;

namespace {

json config_json(const HireNetConfig& c) {
    json j;
    j["feature_dim"] = c.feature_dim;
    j["embed_dim"] = c.embed_dim;
    j["low_hidden"] = c.low_hidden;
    j["question_hidden"] = c.question_hidden;
    j["high_hidden"] = c.high_hidden;
    j["job_hidden"] = c.job_hidden;
    j["low_attn_dim"] = c.low_attn_dim;
    j["high_attn_dim"] = c.high_attn_dim;
    j["question_vocab"] = c.question_vocab;
    j["job_vocab"] = c.job_vocab;
    j["shared_embeddings"] = c.shared_embeddings;
    j["variant"] = variant_name(c.variant);
    j["seed"] = c.seed;
    j["threshold"] = c.threshold;
    j["modality"] = c.modality;
    j["optim"] = {{"learning_rate", c.optim.learning_rate},
                  {"beta1", c.optim.beta1},
                  {"beta2", c.optim.beta2},
                  {"epsilon", c.optim.epsilon},
                  {"batch_size", c.optim.batch_size},
                  {"max_epochs", c.optim.max_epochs},
                  {"patience", c.optim.patience},
                  {"clip_norm", c.optim.clip_norm},
                  {"loss_floor", c.optim.loss_floor},
                  {"threads", c.optim.threads}};
    return j;
}

HireNetConfig config_from(const json& j) {
    HireNetConfig c;
    c.feature_dim = j.value("feature_dim", c.feature_dim);
    c.embed_dim = j.value("embed_dim", c.embed_dim);
    c.low_hidden = j.value("low_hidden", c.low_hidden);
    c.question_hidden = j.value("question_hidden", c.question_hidden);
    c.high_hidden = j.value("high_hidden", c.high_hidden);
    c.job_hidden = j.value("job_hidden", c.job_hidden);
    c.low_attn_dim = j.value("low_attn_dim", c.low_attn_dim);
    c.high_attn_dim = j.value("high_attn_dim", c.high_attn_dim);
    c.question_vocab = j.value("question_vocab", c.question_vocab);
    c.job_vocab = j.value("job_vocab", c.job_vocab);
    c.shared_embeddings = j.value("shared_embeddings", c.shared_embeddings);
    if (j.contains("variant")) c.variant = variant_from_string(j.at("variant").get<std::string>());
    c.seed = j.value("seed", c.seed);
    c.threshold = j.value("threshold", c.threshold);
    c.modality = j.value("modality", c.modality);
    if (j.contains("optim")) {
        const json& o = j.at("optim");
        c.optim.learning_rate = o.value("learning_rate", c.optim.learning_rate);
        c.optim.beta1 = o.value("beta1", c.optim.beta1);
        c.optim.beta2 = o.value("beta2", c.optim.beta2);
        c.optim.epsilon = o.value("epsilon", c.optim.epsilon);
        c.optim.batch_size = o.value("batch_size", c.optim.batch_size);
        c.optim.max_epochs = o.value("max_epochs", c.optim.max_epochs);
        c.optim.patience = o.value("patience", c.optim.patience);
        c.optim.clip_norm = o.value("clip_norm", c.optim.clip_norm);
        c.optim.loss_floor = o.value("loss_floor", c.optim.loss_floor);
        c.optim.threads = o.value("threads", c.optim.threads);
    }
    return c;
}

}  // namespace

std::string config_to_json(const HireNetConfig& config) { return config_json(config).dump(2); }

HireNetConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return config_from(j);
}

void save_checkpoint(const std::string& path, const HireNetConfig& config,
                     HireNetParams& params) {
    params.validate(config);
    json j;
    j["format_version"] = kCheckpointVersion;
    j["config"] = config_json(config);
    json p = json::object();
    for (auto& [name, t] : params.named_params()) {
        json entry;
        entry["shape"] = t->shape();
        entry["values"] = t->values();
        p[name] = std::move(entry);
    }
    j["params"] = std::move(p);
    atomic_write_file(path, j.dump() + "\n");
}

LoadedModel load_checkpoint(const std::string& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::exception& e) {
        throw ParseError("checkpoint '" + path + "': " + e.what());
    }
    if (j.value("format_version", "") != kCheckpointVersion)
        throw ContractError("checkpoint '" + path + "': unsupported format version '" +
                            j.value("format_version", "<missing>") + "'");
    LoadedModel m;
    m.config = config_from(j.at("config"));
    m.config.validate();
    m.params = init_model(m.config);  // right shapes; values overwritten below

    const json& p = j.at("params");
    for (auto& [name, t] : m.params.named_params()) {
        if (!p.contains(name))
            throw ContractError("checkpoint '" + path + "': missing parameter '" + name + "'");
        const json& entry = p.at(name);
        const auto shape = entry.at("shape").get<std::vector<size_t>>();
        if (shape != t->shape())
            throw ContractError("checkpoint '" + path + "': parameter '" + name +
                                "' shape mismatch");
        const auto values = entry.at("values").get<std::vector<double>>();
        if (values.size() != t->size())
            throw ContractError("checkpoint '" + path + "': parameter '" + name +
                                "' value count mismatch");
        t->values() = values;
        if (!t->all_finite())
            throw NumericError("checkpoint '" + path + "': non-finite value in '" + name + "'");
    }
    m.params.validate(m.config);
    return m;
}

}  // namespace hirenet

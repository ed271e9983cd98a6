// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/model.hpp"

#include <algorithm>
#include <cmath>

#include "hirenet/rng.hpp"

namespace hirenet {

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::HireNet: return "hirenet";
        case Variant::HnSatt: return "hn_satt";
        case Variant::HnAvg: return "hn_avg";
        case Variant::BigruAnswerwise: return "bigru";
    }
    return "?";
}

Variant variant_from_string(const std::string& s) {
    if (s == "hirenet") return Variant::HireNet;
    if (s == "hn_satt") return Variant::HnSatt;
    if (s == "hn_avg") return Variant::HnAvg;
    if (s == "bigru" || s == "bigru_answerwise") return Variant::BigruAnswerwise;
    throw ContractError("unknown variant '" + s + "'");
}

void HireNetConfig::validate() const {
    auto positive = [](size_t v, const char* what) {
        if (v == 0) throw ContractError(std::string("config: ") + what + " must be >= 1");
    };
    positive(feature_dim, "feature_dim");
    positive(embed_dim, "embed_dim");
    positive(low_hidden, "low_hidden");
    positive(question_hidden, "question_hidden");
    positive(high_hidden, "high_hidden");
    positive(job_hidden, "job_hidden");
    positive(question_vocab, "question_vocab");
    positive(job_vocab, "job_vocab");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw ContractError("config: threshold must lie in (0,1)");
    if (shared_embeddings && question_vocab != job_vocab)
        throw ContractError("config: shared embeddings require equal question/job vocab");
    if (optim.batch_size == 0 || optim.max_epochs == 0)
        throw ContractError("config: batch_size and max_epochs must be >= 1");
}

std::vector<std::pair<std::string, Tensor*>> HireNetParams::named_params() {
    std::vector<std::pair<std::string, Tensor*>> out;
    auto cell = [&out](const std::string& prefix, GRUCellParams& c) {
        out.emplace_back(prefix + ".W_z", &c.W_z);
        out.emplace_back(prefix + ".W_r", &c.W_r);
        out.emplace_back(prefix + ".W_h", &c.W_h);
        out.emplace_back(prefix + ".U_z", &c.U_z);
        out.emplace_back(prefix + ".U_r", &c.U_r);
        out.emplace_back(prefix + ".U_h", &c.U_h);
        out.emplace_back(prefix + ".b_z", &c.b_z);
        out.emplace_back(prefix + ".b_r", &c.b_r);
        out.emplace_back(prefix + ".b_h", &c.b_h);
    };
    auto attn = [&out](const std::string& prefix, ContextAttentionParams& a) {
        out.emplace_back(prefix + ".W_state", &a.W_state);
        out.emplace_back(prefix + ".W_ctx", &a.W_ctx);
        out.emplace_back(prefix + ".b", &a.b);
        out.emplace_back(prefix + ".u", &a.u);
    };
    cell("answer.fwd", answer.forward);
    cell("answer.bwd", answer.backward);
    cell("question.cell", question_cell);
    if (shared_embed) {
        out.emplace_back("embed.shared", &question_embed);
    } else {
        out.emplace_back("embed.question", &question_embed);
        out.emplace_back("embed.job", &job_embed);
    }
    cell("job.cell", job_cell);
    attn("low_attn", low_attn);
    cell("high_rnn.fwd", high_rnn.forward);
    cell("high_rnn.bwd", high_rnn.backward);
    attn("high_attn", high_attn);
    out.emplace_back("classifier.W_v", &W_v);
    out.emplace_back("classifier.b_v", &b_v);
    out.emplace_back("answer_head.W", &W_ans);
    out.emplace_back("answer_head.b", &b_ans);
    return out;
}

void HireNetParams::zero_grads() {
    for (auto& [name, t] : named_params()) t->zero_grad();
}

namespace {

void check_shape(const Tensor& t, size_t rows, size_t cols, const std::string& name) {
    const bool ok = cols == 0 ? (t.rank() == 1 && t.size() == rows)
                              : (t.rank() == 2 && t.rows() == rows && t.cols() == cols);
    if (!ok)
        throw ContractError("params: " + name + " has shape " + t.shape_str() + ", expected " +
                            (cols == 0 ? "[" + std::to_string(rows) + "]"
                                       : "[" + std::to_string(rows) + "," + std::to_string(cols) +
                                             "]"));
}

void check_cell(const GRUCellParams& c, size_t hidden, size_t input, const std::string& name) {
    check_shape(c.W_z, hidden, input, name + ".W_z");
    check_shape(c.W_r, hidden, input, name + ".W_r");
    check_shape(c.W_h, hidden, input, name + ".W_h");
    check_shape(c.U_z, hidden, hidden, name + ".U_z");
    check_shape(c.U_r, hidden, hidden, name + ".U_r");
    check_shape(c.U_h, hidden, hidden, name + ".U_h");
    check_shape(c.b_z, hidden, 0, name + ".b_z");
    check_shape(c.b_r, hidden, 0, name + ".b_r");
    check_shape(c.b_h, hidden, 0, name + ".b_h");
}

}  // namespace

void HireNetParams::validate(const HireNetConfig& config) const {
    config.validate();
    check_cell(answer.forward, config.low_hidden, config.feature_dim, "answer.fwd");
    check_cell(answer.backward, config.low_hidden, config.feature_dim, "answer.bwd");
    check_cell(question_cell, config.question_hidden, config.embed_dim, "question.cell");
    check_cell(job_cell, config.job_hidden, config.embed_dim, "job.cell");
    check_shape(question_embed, config.question_vocab, config.embed_dim,
                shared_embed ? "embed.shared" : "embed.question");
    if (!shared_embed) check_shape(job_embed, config.job_vocab, config.embed_dim, "embed.job");
    if (shared_embed != config.shared_embeddings)
        throw ContractError("params: embedding sharing flag disagrees with config");

    const size_t low_state = 2 * config.low_hidden;
    const size_t high_in = config.question_hidden + low_state;
    const size_t high_state = 2 * config.high_hidden;
    check_shape(low_attn.W_state, config.low_attn(), low_state, "low_attn.W_state");
    check_shape(low_attn.W_ctx, config.low_attn(), config.question_hidden, "low_attn.W_ctx");
    check_shape(low_attn.b, config.low_attn(), 0, "low_attn.b");
    check_shape(low_attn.u, config.low_attn(), 0, "low_attn.u");
    check_cell(high_rnn.forward, config.high_hidden, high_in, "high_rnn.fwd");
    check_cell(high_rnn.backward, config.high_hidden, high_in, "high_rnn.bwd");
    check_shape(high_attn.W_state, config.high_attn(), high_state, "high_attn.W_state");
    check_shape(high_attn.W_ctx, config.high_attn(), config.job_hidden, "high_attn.W_ctx");
    check_shape(high_attn.b, config.high_attn(), 0, "high_attn.b");
    check_shape(high_attn.u, config.high_attn(), 0, "high_attn.u");
    check_shape(W_v, 1, high_state, "classifier.W_v");
    check_shape(b_v, 1, 0, "classifier.b_v");
    check_shape(W_ans, 1, low_state, "answer_head.W");
    check_shape(b_ans, 1, 0, "answer_head.b");
}

namespace {

Tensor glorot(Rng& rng, size_t rows, size_t cols) {
    const double bound = std::sqrt(6.0 / static_cast<double>(rows + cols));
    Tensor t = Tensor::matrix(rows, cols);
    for (size_t i = 0; i < t.size(); ++i) t.at(i) = rng.uniform(-bound, bound);
    return t;
}

// Attention query vectors get the 1-row treatment: fan-out 1.
Tensor glorot_vec(Rng& rng, size_t n) {
    const double bound = std::sqrt(6.0 / static_cast<double>(n + 1));
    Tensor t = Tensor::vector(n);
    for (size_t i = 0; i < t.size(); ++i) t.at(i) = rng.uniform(-bound, bound);
    return t;
}

Tensor embedding_table(Rng& rng, size_t vocab, size_t dim) {
    Tensor t = Tensor::matrix(vocab, dim);
    for (size_t i = 0; i < t.size(); ++i) t.at(i) = rng.uniform(-0.05, 0.05);
    return t;
}

GRUCellParams init_cell(Rng& rng, size_t hidden, size_t input) {
    GRUCellParams c;
    c.W_z = glorot(rng, hidden, input);
    c.W_r = glorot(rng, hidden, input);
    c.W_h = glorot(rng, hidden, input);
    c.U_z = glorot(rng, hidden, hidden);
    c.U_r = glorot(rng, hidden, hidden);
    c.U_h = glorot(rng, hidden, hidden);
    c.b_z = Tensor::vector(hidden, 0.0);
    c.b_r = Tensor::vector(hidden, 0.0);
    c.b_h = Tensor::vector(hidden, 0.0);
    return c;
}

ContextAttentionParams init_attn(Rng& rng, size_t proj, size_t state, size_t ctx) {
    ContextAttentionParams a;
    a.W_state = glorot(rng, proj, state);
    a.W_ctx = glorot(rng, proj, ctx);
    a.b = Tensor::vector(proj, 0.0);
    a.u = glorot_vec(rng, proj);
    return a;
}

}  // namespace

HireNetParams init_model(const HireNetConfig& config) {
    config.validate();
    Rng rng(config.seed);
    HireNetParams p;
    p.shared_embed = config.shared_embeddings;
    p.answer.forward = init_cell(rng, config.low_hidden, config.feature_dim);
    p.answer.backward = init_cell(rng, config.low_hidden, config.feature_dim);
    p.question_cell = init_cell(rng, config.question_hidden, config.embed_dim);
    p.question_embed = embedding_table(rng, config.question_vocab, config.embed_dim);
    p.job_cell = init_cell(rng, config.job_hidden, config.embed_dim);
    if (!p.shared_embed) p.job_embed = embedding_table(rng, config.job_vocab, config.embed_dim);

    const size_t low_state = 2 * config.low_hidden;
    const size_t high_in = config.question_hidden + low_state;
    const size_t high_state = 2 * config.high_hidden;
    p.low_attn = init_attn(rng, config.low_attn(), low_state, config.question_hidden);
    p.high_rnn.forward = init_cell(rng, config.high_hidden, high_in);
    p.high_rnn.backward = init_cell(rng, config.high_hidden, high_in);
    p.high_attn = init_attn(rng, config.high_attn(), high_state, config.job_hidden);
    p.W_v = glorot(rng, 1, high_state);
    p.b_v = Tensor::vector(1, 0.0);
    p.W_ans = glorot(rng, 1, low_state);
    p.b_ans = Tensor::vector(1, 0.0);
    p.validate(config);
    return p;
}

namespace {

AttentionResult pool_states(Graph& g, Value states, const std::vector<uint8_t>& mask, Value ctx,
                            ContextAttentionParams& attn, Variant variant) {
    switch (variant) {
        case Variant::HireNet: return context_attention(g, states, mask, ctx, attn);
        case Variant::HnSatt: return self_attention(g, states, mask, attn);
        case Variant::HnAvg: return average_pool(g, states, mask);
        case Variant::BigruAnswerwise: break;
    }
    throw ContractError("pool_states: variant has no pooling");
}

SequenceBatchItem answer_item(const Tensor& answer, size_t pad_to) {
    const size_t len = answer.rows();
    if (pad_to <= len) return SequenceBatchItem::full(answer);
    Tensor padded = Tensor::matrix(pad_to, answer.cols());
    std::copy(answer.values().begin(), answer.values().end(), padded.values().begin());
    return SequenceBatchItem::from_features(std::move(padded), len);
}

std::vector<double> unmasked_alphas(const Tensor& alphas, size_t true_length) {
    return {alphas.values().begin(), alphas.values().begin() + static_cast<long>(true_length)};
}

}  // namespace

Value forward_answer_pass(Graph& g, HireNetParams& params, const Interview& interview,
                          size_t qa_index, size_t pad_to) {
    const QAPair& qa = interview.qa.at(qa_index);
    if (qa.answer.rows() == 0)
        throw DegenerateInputError("interview " + std::to_string(interview.candidate_id) +
                                   ": answer " + std::to_string(qa_index) + " is empty");
    SequenceBatchItem item = answer_item(qa.answer, pad_to);
    Value states = bigru_run(g, params.answer, item);
    // last forward state sits in row L-1's first half, last backward state
    // (which consumed the whole sequence) in row 0's second half
    const size_t h = params.answer.hidden_dim();
    Value last_fwd = g.slice(g.row_select(states, item.true_length - 1), 0, h);
    Value last_bwd = g.slice(g.row_select(states, 0), h, h);
    Value w = g.leaf(params.W_ans);
    Value b = g.leaf(params.b_ans);
    return g.sigmoid(g.affine(w, g.concat(last_fwd, last_bwd), b));
}

ForwardPass forward_interview_pass(Graph& g, HireNetParams& params, const HireNetConfig& config,
                                   const Interview& interview, size_t pad_answers_to) {
    params.validate(config);
    if (interview.qa.empty())
        throw DegenerateInputError("interview " + std::to_string(interview.candidate_id) +
                                   " has no question-answer pairs");
    if (interview.job_tokens.empty())
        throw DegenerateInputError("interview " + std::to_string(interview.candidate_id) +
                                   " has an empty job title");

    ForwardPass fp;
    const size_t n = interview.qa.size();

    if (config.variant == Variant::BigruAnswerwise) {
        std::vector<Value> scores;
        scores.reserve(n);
        for (size_t i = 0; i < n; ++i)
            scores.push_back(forward_answer_pass(g, params, interview, i, pad_answers_to));
        Value stacked = g.stack_scalars(scores);
        Value weights = g.input(Tensor::vector(n, 1.0 / static_cast<double>(n)));
        fp.score = g.dot(stacked, weights);
        fp.prediction.score = g.scalar_of(fp.score);
        fp.prediction.hirable = fp.prediction.score >= config.threshold;
        return fp;
    }

    std::vector<Value> high_rows;
    high_rows.reserve(n);
    std::vector<std::vector<double>> frame_alphas(n);
    Tensor& ctx_embed = params.question_embed;
    Tensor& job_embed_table = params.shared_embed ? params.question_embed : params.job_embed;

    for (size_t i = 0; i < n; ++i) {
        const QAPair& qa = interview.qa[i];
        if (qa.question_tokens.empty())
            throw DegenerateInputError("interview " + std::to_string(interview.candidate_id) +
                                       ": question " + std::to_string(i) + " is empty");
        if (qa.answer.rows() == 0)
            throw DegenerateInputError("interview " + std::to_string(interview.candidate_id) +
                                       ": answer " + std::to_string(i) + " is empty");
        SequenceBatchItem item = answer_item(qa.answer, pad_answers_to);
        Value states = bigru_run(g, params.answer, item);
        Value q_ctx =
            encode_token_sequence(g, ctx_embed, params.question_cell, qa.question_tokens);
        AttentionResult att =
            pool_states(g, states, item.mask, q_ctx, params.low_attn, config.variant);
        frame_alphas[i] = unmasked_alphas(g.tensor_of(att.alphas), item.true_length);
        high_rows.push_back(g.concat(q_ctx, att.pooled));
    }

    Value high_states = bigru_over_rows(g, params.high_rnn, high_rows, n);
    Value job_ctx =
        encode_token_sequence(g, job_embed_table, params.job_cell, interview.job_tokens);
    std::vector<uint8_t> high_mask(n, 1);
    AttentionResult top =
        pool_states(g, high_states, high_mask, job_ctx, params.high_attn, config.variant);

    Value w_v = g.leaf(params.W_v);
    Value b_v = g.leaf(params.b_v);
    fp.score = g.sigmoid(g.affine(w_v, top.pooled, b_v));

    fp.summary = g.tensor_of(top.pooled).values();
    fp.prediction.score = g.scalar_of(fp.score);
    fp.prediction.hirable = fp.prediction.score >= config.threshold;
    fp.prediction.trace = make_trace(std::move(frame_alphas),
                                     g.tensor_of(top.alphas).values(),
                                     config.variant == Variant::HnAvg);
    return fp;
}

Prediction forward_interview(HireNetParams& params, const HireNetConfig& config,
                             const Interview& interview) {
    Graph g;
    return forward_interview_pass(g, params, config, interview).prediction;
}

double bce_loss(double score, int label) {
    if (label != 0 && label != 1)
        throw ContractError("bce_loss: label must be 0 or 1, got " + std::to_string(label));
    constexpr double kEps = 1e-12;
    const double p = std::clamp(score, kEps, 1.0 - kEps);
    return -(label * std::log(p) + (1 - label) * std::log(1.0 - p));
}

double early_fusion(const std::array<std::optional<std::vector<double>>, 3>& summaries,
                    const std::array<std::vector<double>, 3>& train_means,
                    const LogisticModel& classifier) {
    if (!summaries[0] && !summaries[1] && !summaries[2])
        throw DegenerateInputError("early_fusion: all modalities missing");
    std::vector<double> concat;
    for (size_t m = 0; m < 3; ++m) {
        const std::vector<double>& v = summaries[m] ? *summaries[m] : train_means[m];
        concat.insert(concat.end(), v.begin(), v.end());
    }
    if (concat.size() != classifier.w.size())
        throw ContractError("early_fusion: classifier expects " +
                            std::to_string(classifier.w.size()) + " inputs, got " +
                            std::to_string(concat.size()));
    return classifier.score(concat);
}

CandidateScore late_fusion(const std::vector<double>& scores, double threshold) {
    if (scores.empty()) throw DegenerateInputError("late_fusion: no modality scores");
    double s = 0.0;
    for (double v : scores) s += v;
    s /= static_cast<double>(scores.size());
    return CandidateScore{s, s >= threshold};
}

}  // namespace hirenet

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0

#include "hirenet/attention.hpp"

#include <cmath>
#include <string>

namespace hirenet {

void ContextAttentionParams::validate(bool with_ctx) const {
    const size_t d = W_state.rows();
    if (d == 0 || W_state.rank() != 2)
        throw ContractError("attention: W_state must be a non-empty matrix");
    if (b.rank() != 1 || b.size() != d || u.rank() != 1 || u.size() != d)
        throw ContractError("attention: b and u must have length " + std::to_string(d));
    if (with_ctx && (W_ctx.rank() != 2 || W_ctx.rows() != d))
        throw ContractError("attention: W_ctx rows must equal projection dim");
}

namespace {

AttentionResult attend(Graph& g, Value states, const std::vector<uint8_t>& mask, Value* ctx,
                       ContextAttentionParams& params) {
    params.validate(ctx != nullptr);
    const Tensor& st = g.tensor_of(states);
    if (st.rank() != 2) throw ContractError("attention: states must be a matrix");
    if (st.cols() != params.state_dim())
        throw ContractError("attention: state dim " + std::to_string(st.cols()) +
                            " != W_state cols " + std::to_string(params.state_dim()));
    if (mask.size() != st.rows())
        throw ContractError("attention: mask length != state rows");

    Value w_state = g.leaf(params.W_state);
    Value u = g.leaf(params.u);
    // W_ctx ctx + b (shared across steps), or just the bias without context
    Value shift = ctx ? g.affine(g.leaf(params.W_ctx), *ctx, g.leaf(params.b))
                      : g.leaf(params.b);

    std::vector<Value> scores;
    scores.reserve(st.rows());
    for (size_t t = 0; t < st.rows(); ++t)
        scores.push_back(g.attn_score(w_state, g.row_select(states, t), shift, u));

    AttentionResult res;
    res.alphas = g.softmax_masked(g.stack_scalars(scores), mask);
    res.pooled = g.pool_rows(states, res.alphas, mask);
    return res;
}

}  // namespace

AttentionResult context_attention(Graph& g, Value states, const std::vector<uint8_t>& mask,
                                  Value ctx, ContextAttentionParams& params) {
    return attend(g, states, mask, &ctx, params);
}

AttentionResult self_attention(Graph& g, Value states, const std::vector<uint8_t>& mask,
                               ContextAttentionParams& params) {
    return attend(g, states, mask, nullptr, params);
}

AttentionResult average_pool(Graph& g, Value states, const std::vector<uint8_t>& mask) {
    const Tensor& st = g.tensor_of(states);
    if (st.rank() != 2) throw ContractError("average_pool: states must be a matrix");
    if (mask.size() != st.rows()) throw ContractError("average_pool: mask length != state rows");
    // Shares the attention code path with all-zero scores, so context
    // attention with u = 0 produces the same bits.
    AttentionResult res;
    Value zeros = g.input(Tensor::vector(st.rows(), 0.0));
    res.alphas = g.softmax_masked(zeros, mask);
    res.pooled = g.pool_rows(states, res.alphas, mask);
    return res;
}

void AttentionTrace::validate() const {
    auto check_sum = [](const std::vector<double>& v, const char* what) {
        if (v.empty()) return;
        double s = 0.0;
        for (double x : v) s += x;
        if (std::fabs(s - 1.0) > 1e-9)
            throw ContractError(std::string("attention trace: ") + what +
                                " does not sum to 1 (got " + std::to_string(s) + ")");
    };
    for (const auto& fa : frame_alphas) check_sum(fa, "frame alphas");
    check_sum(question_alphas, "question alphas");
    auto check_mean = [](const std::vector<double>& v, const char* what) {
        if (v.empty()) return;
        double s = 0.0;
        for (double x : v) s += x;
        if (std::fabs(s / static_cast<double>(v.size()) - 1.0) > 1e-9)
            throw ContractError(std::string("attention trace: mean of ") + what + " is not 1");
    };
    for (const auto& rw : relative_word) check_mean(rw, "relative word attention");
    check_mean(relative_question, "relative question attention");
}

AttentionTrace make_trace(std::vector<std::vector<double>> frame_alphas,
                          std::vector<double> question_alphas, bool uniform) {
    AttentionTrace tr;
    tr.frame_alphas = std::move(frame_alphas);
    tr.question_alphas = std::move(question_alphas);
    tr.uniform = uniform;

    const double n = static_cast<double>(tr.question_alphas.size());
    tr.relative_question.reserve(tr.question_alphas.size());
    for (double a : tr.question_alphas) tr.relative_question.push_back(a * n);

    tr.relative_word.resize(tr.frame_alphas.size());
    tr.combined.resize(tr.frame_alphas.size());
    for (size_t i = 0; i < tr.frame_alphas.size(); ++i) {
        const double l = static_cast<double>(tr.frame_alphas[i].size());
        const double pq = i < tr.relative_question.size() ? tr.relative_question[i] : 1.0;
        const double root_pq = std::sqrt(pq);
        for (double a : tr.frame_alphas[i]) {
            const double pw = a * l;
            tr.relative_word[i].push_back(pw);
            tr.combined[i].push_back(root_pq * pw);
        }
    }
    tr.validate();
    return tr;
}

}  // namespace hirenet

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// End-to-end acceptance suite. Eight gates, one pass/fail line each:
//   1  gradient checks: primitives, encoders, attention, full composition
//   2  attention invariants
//   3  scalar-oracle equivalence of the full forward pass
//   4  synthetic hypothesis ladder (context + ordered corpora, 3 seeds)
//   5  salience localization of the trained attention
//   6  vote baselines against the analytic anchor and a brute recount
//   7  protocol ops: annotation aggregation, split sizes
//   8  bit-reproducibility of the CLI pipeline
//
// Exits non-zero if any gate fails. The ladder retrains every variant, so
// the full run takes several minutes.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <vector>

#include "hirenet/gradcheck.hpp"
#include "hirenet/harness.hpp"
#include "hirenet/io_util.hpp"
#include "hirenet/rng.hpp"
#include "scalar_oracle.hpp"
#include "test_support.hpp"

using namespace hirenet;
namespace fs = std::filesystem;

namespace {

struct Gate {
    int id;
    bool pass;
    std::string detail;
};

std::vector<Gate> gates;

void report(int id, bool pass, const std::string& detail) {
    gates.push_back(Gate{id, pass, detail});
    std::printf("%s [%d] %s\n", pass ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof(buf), pattern, a, b, c);
    return buf;
}

Tensor rand_vec(Rng& rng, size_t n, double lo = -1.0, double hi = 1.0) {
    Tensor t = Tensor::vector(n);
    for (size_t i = 0; i < n; ++i) t.at(i) = rng.uniform(lo, hi);
    return t;
}

Tensor rand_mat(Rng& rng, size_t r, size_t c, double lo = -1.0, double hi = 1.0) {
    Tensor t = Tensor::matrix(r, c);
    for (size_t i = 0; i < t.size(); ++i) t.at(i) = rng.uniform(lo, hi);
    return t;
}

GRUCellParams rand_cell(Rng& rng, size_t hidden, size_t input) {
    GRUCellParams c;
    c.W_z = rand_mat(rng, hidden, input);
    c.W_r = rand_mat(rng, hidden, input);
    c.W_h = rand_mat(rng, hidden, input);
    c.U_z = rand_mat(rng, hidden, hidden);
    c.U_r = rand_mat(rng, hidden, hidden);
    c.U_h = rand_mat(rng, hidden, hidden);
    c.b_z = rand_vec(rng, hidden);
    c.b_r = rand_vec(rng, hidden);
    c.b_h = rand_vec(rng, hidden);
    return c;
}

std::vector<Tensor*> cell_tensors(GRUCellParams& c) {
    return {&c.W_z, &c.W_r, &c.W_h, &c.U_z, &c.U_r, &c.U_h, &c.b_z, &c.b_r, &c.b_h};
}

ContextAttentionParams rand_attn(Rng& rng, size_t proj, size_t state, size_t ctx) {
    ContextAttentionParams p;
    p.W_state = rand_mat(rng, proj, state);
    p.W_ctx = rand_mat(rng, proj, ctx);
    p.b = rand_vec(rng, proj);
    p.u = rand_vec(rng, proj);
    return p;
}

// ---------------------------------------------------------------------------
// 1. gradient suite
// ---------------------------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr double kEps = 1e-5;
    constexpr double kTol = 1e-4;
    double worst = 0.0;
    Rng rng(0xACC1);

    // primitives: shallow per-op checks where the exact error formula is
    // well-conditioned, 100 random instances each
    for (int trial = 0; trial < 100; ++trial) {
        const size_t m = 1 + rng.uniform_index(4);
        const size_t k = 1 + rng.uniform_index(4);
        Tensor W = rand_mat(rng, m, k);
        Tensor x = rand_vec(rng, k);
        Tensor b = rand_vec(rng, m);
        Tensor y = rand_vec(rng, m);
        Tensor s = rand_vec(rng, m, -3.0, 3.0);
        std::vector<uint8_t> mask(m, 0);
        for (size_t i = 0; i < 1 + rng.uniform_index(m); ++i) mask[i] = 1;
        const int label = static_cast<int>(rng.uniform_index(2));

        // affine + tanh + dot
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                return g.dot(g.tanh(g.affine(g.leaf(W), g.leaf(x), g.leaf(b))), g.leaf(y));
            },
            {&W, &x, &b, &y}, kEps));
        // sigmoid + hadamard + combine
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value p = g.hadamard(g.sigmoid(g.leaf(y)), g.leaf(b));
                Value c = g.combine(0.75, p, -1.25, g.leaf(y));
                return g.dot(c, c);
            },
            {&y, &b}, kEps));
        // concat + slice
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value c = g.concat(g.leaf(x), g.leaf(b));
                return g.dot(g.slice(c, 0, k), g.leaf(x));
            },
            {&x, &b}, kEps));
        // row select + stack + masked softmax + pooling
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value Wl = g.leaf(W);
                std::vector<Value> rows;
                for (size_t r = 0; r < m; ++r) rows.push_back(g.tanh(g.row_select(Wl, r)));
                Value pooled = g.pool_rows(g.stack_rows(rows),
                                           g.softmax_masked(g.leaf(s), mask), mask);
                return g.dot(pooled, pooled);
            },
            {&W, &s}, kEps));
        // bce over a squashed score
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                return g.bce_loss(g.sigmoid(g.dot(g.leaf(x), g.leaf(x))), label);
            },
            {&x}, kEps));
    }

    // recurrent and attention compositions carry the 1e-6 measurable floor:
    // chains this deep have coordinates whose true gradient falls below what
    // central differences can resolve at eps = 1e-5 in 64-bit
    constexpr double kFloor = 1e-6;

    for (int trial = 0; trial < 50; ++trial) {
        const size_t hd = 1 + rng.uniform_index(2);
        const size_t in = 1 + rng.uniform_index(2);
        const size_t len = 1 + rng.uniform_index(4);
        GRUCellParams cell = rand_cell(rng, hd, in);
        BiGRUParams bi{rand_cell(rng, hd, in), rand_cell(rng, hd, in)};
        SequenceBatchItem item = SequenceBatchItem::full(rand_mat(rng, len, in));
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                GruRunResult r = gru_run(g, cell, item);
                return g.dot(r.last, r.last);
            },
            cell_tensors(cell), kEps, kFloor));
        std::vector<Tensor*> bip = cell_tensors(bi.forward);
        for (Tensor* t : cell_tensors(bi.backward)) bip.push_back(t);
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                Value states = bigru_run(g, bi, item);
                Value row = g.row_select(states, len - 1);
                return g.dot(row, row);
            },
            bip, kEps, kFloor));
    }

    for (int trial = 0; trial < 50; ++trial) {
        const size_t proj = 1 + rng.uniform_index(2);
        const size_t state = 1 + rng.uniform_index(2);
        const size_t len = 1 + rng.uniform_index(4);
        ContextAttentionParams p = rand_attn(rng, proj, state, 2);
        Tensor states = rand_mat(rng, len, state);
        Tensor ctx = rand_vec(rng, 2);
        std::vector<uint8_t> mask(len, 0);
        for (size_t i = 0; i < 1 + rng.uniform_index(len); ++i) mask[i] = 1;
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                AttentionResult r = context_attention(g, g.leaf(states), mask, g.leaf(ctx), p);
                return g.dot(r.pooled, r.pooled);
            },
            {&p.W_state, &p.W_ctx, &p.b, &p.u, &states, &ctx}, kEps, kFloor));
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                AttentionResult r = self_attention(g, g.leaf(states), mask, p);
                return g.dot(r.pooled, r.pooled);
            },
            {&p.W_state, &p.b, &p.u, &states}, kEps, kFloor));
    }

    // full BCE(HireNet) composition, 20 instances; sub-measurable coordinates
    // must agree with zero (see grad_check docs)
    using namespace test_support;
    for (uint64_t seed = 1; seed <= 20; ++seed) {
        Rng mrng(seed * 131);
        HireNetConfig c = tiny_config(mrng);
        c.variant = seed % 3 == 0 ? Variant::HnSatt
                                  : (seed % 3 == 1 ? Variant::HireNet : Variant::HnAvg);
        HireNetParams p = init_model(c);
        randomize_params(p, mrng);
        Interview iv = random_interview(mrng, c, 2, 3);
        worst = std::max(worst, grad_check(
            [&](Graph& g) {
                ForwardPass fp = forward_interview_pass(g, p, c, iv);
                return g.bce_loss(fp.score, iv.label);
            },
            all_param_tensors(p), kEps, 1e-6));
    }

    const double secs = seconds_since(t0);
    report(1, worst < kTol && secs < 60.0,
           fmt("gradient suite: max rel error %.2e (tol 1e-4), %.1f s (limit 60)", worst, secs));
}

// ---------------------------------------------------------------------------
// 2. attention invariants
// ---------------------------------------------------------------------------

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(0xACC2);
    bool ok = true;
    std::string why = "attention invariants hold";

    for (int trial = 0; trial < 200 && ok; ++trial) {
        const size_t state = 1 + rng.uniform_index(4);
        const size_t len = 1 + rng.uniform_index(7);
        ContextAttentionParams p = rand_attn(rng, 3, state, 2);
        Tensor states = rand_mat(rng, len, state, -2.0, 2.0);
        Tensor ctx = rand_vec(rng, 2);
        std::vector<uint8_t> mask(len, 0);
        const size_t live = 1 + rng.uniform_index(len);
        for (size_t i = 0; i < live; ++i) mask[i] = 1;

        Graph g;
        AttentionResult r = context_attention(g, g.input(states), mask, g.input(ctx), p);
        const Tensor& alphas = g.tensor_of(r.alphas);
        double sum = 0.0;
        for (size_t i = 0; i < len; ++i) {
            if (!mask[i] && alphas.at(i) != 0.0) { ok = false; why = "masked alpha not zero"; }
            if (alphas.at(i) < 0.0) { ok = false; why = "negative alpha"; }
            sum += alphas.at(i);
        }
        if (std::fabs(sum - 1.0) > 1e-12) { ok = false; why = "alpha sum off by > 1e-12"; }

        const Tensor& pooled = g.tensor_of(r.pooled);
        for (size_t c = 0; c < state; ++c) {
            double lo = 1e300, hi = -1e300;
            for (size_t t = 0; t < live; ++t) {
                lo = std::min(lo, states.at(t, c));
                hi = std::max(hi, states.at(t, c));
            }
            if (pooled.at(c) < lo - 1e-12 || pooled.at(c) > hi + 1e-12) {
                ok = false;
                why = "pooled left the convex hull";
            }
        }

        // u = 0 collapses onto average pooling bit for bit
        ContextAttentionParams zu = p;
        zu.u = Tensor::vector(3, 0.0);
        Graph g1, g2;
        AttentionResult ra = context_attention(g1, g1.input(states), mask, g1.input(ctx), zu);
        AttentionResult rb = average_pool(g2, g2.input(states), mask);
        if (g1.tensor_of(ra.pooled).values() != g2.tensor_of(rb.pooled).values() ||
            g1.tensor_of(ra.alphas).values() != g2.tensor_of(rb.alphas).values()) {
            ok = false;
            why = "u=0 attention differs from average_pool";
        }
    }

    const double secs = seconds_since(t0);
    if (secs >= 10.0) { ok = false; why = "suite exceeded 10 s"; }
    report(2, ok, fmt(("attention invariants (200 instances): " + why + ", %.2f s (limit 10)").c_str(), secs));
}

// ---------------------------------------------------------------------------
// 3. scalar-oracle equivalence
// ---------------------------------------------------------------------------

void criterion_3() {
    using namespace test_support;
    double worst = 0.0;
    for (uint64_t seed = 1; seed <= 50; ++seed) {
        Rng rng(seed * 977);
        HireNetConfig c = tiny_config(rng);  // every dim drawn from {1,2}
        if (seed % 2 == 0) c.variant = Variant::HnSatt;
        HireNetParams p = init_model(c);
        randomize_params(p, rng);
        Interview iv = random_interview(rng, c, 1 + rng.uniform_index(3), 3);
        const double engine = forward_interview(p, c, iv).score;
        const double reference = oracle::forward(to_oracle_model(c, p), to_oracle_input(iv));
        worst = std::max(worst, std::fabs(engine - reference));
    }
    report(3, worst < 1e-10,
           fmt("scalar-oracle equivalence over 50 parameterizations: max |diff| %.2e (tol 1e-10)",
               worst));
}

// ---------------------------------------------------------------------------
// 4 + 5 + 6. the synthetic ladder, salience localization, vote baselines
// ---------------------------------------------------------------------------

HireNetConfig ladder_config(const Corpus& corpus, Variant v, uint64_t seed) {
    HireNetConfig c;
    c.feature_dim = corpus.front().qa.front().answer.cols();
    c.embed_dim = 8;
    c.low_hidden = c.question_hidden = c.high_hidden = c.job_hidden = 12;
    c.question_vocab = c.job_vocab = max_context_token(corpus);
    c.variant = v;
    c.seed = seed;
    c.optim.learning_rate = 3e-3;
    c.optim.max_epochs = 20;
    c.optim.patience = 8;
    c.optim.threads = 2;
    c.modality = "audio";
    return c;
}

struct LadderRun {
    double f1 = 0.0;
    double seconds = 0.0;
};

LadderRun ladder_run(const Corpus& corpus, const SplitIndices& s, Variant v, uint64_t seed,
                     HireNetParams* out_params = nullptr, HireNetConfig* out_config = nullptr) {
    const auto t0 = std::chrono::steady_clock::now();
    HireNetConfig c = ladder_config(corpus, v, seed);
    HireNetParams p = init_model(c);
    TrainReport r = train(p, c, select_by_ids(corpus, s.train),
                          select_by_ids(corpus, s.validation), "");
    (void)r;
    const EvalResult e = evaluate(p, c, select_by_ids(corpus, s.test));
    LadderRun run;
    run.f1 = e.metrics.f1;
    run.seconds = seconds_since(t0);
    if (out_params) *out_params = std::move(p);
    if (out_config) *out_config = c;
    return run;
}

void criteria_4_5_6() {
    // context-necessity corpus: the default generator spec
    GeneratorSpec ctx_spec;
    ctx_spec.seed = 7;
    const GeneratedCorpus ctx_gen = generate_corpus(ctx_spec);
    const Corpus& ctx = ctx_gen.by_modality.at("audio");
    const SplitIndices ctx_split = split_corpus(ctx, ctx_spec.seed);

    // order-sensitive corpus for the H1 comparison
    GeneratorSpec ord_spec;
    ord_spec.label_rule = LabelRule::OrderedMotif;
    ord_spec.seed = 11;
    ord_spec.modalities = {"audio"};
    const GeneratedCorpus ord_gen = generate_corpus(ord_spec);
    const Corpus& ord = ord_gen.by_modality.at("audio");
    const SplitIndices ord_split = split_corpus(ord, ord_spec.seed);

    double max_seconds = 0.0;
    auto mean3 = [&](const Corpus& corpus, const SplitIndices& s, Variant v,
                     HireNetParams* keep = nullptr, HireNetConfig* keep_cfg = nullptr) {
        double sum = 0.0;
        for (uint64_t seed = 1; seed <= 3; ++seed) {
            LadderRun run = ladder_run(corpus, s, v, seed, seed == 1 ? keep : nullptr,
                                       seed == 1 ? keep_cfg : nullptr);
            sum += run.f1;
            max_seconds = std::max(max_seconds, run.seconds);
        }
        return sum / 3.0;
    };

    HireNetParams hirenet_params;
    HireNetConfig hirenet_config;
    const double f1_hirenet = mean3(ctx, ctx_split, Variant::HireNet, &hirenet_params,
                                    &hirenet_config);
    const double f1_satt = mean3(ctx, ctx_split, Variant::HnSatt);
    const double f1_avg = mean3(ctx, ctx_split, Variant::HnAvg);
    const double f1_bigru_ctx = mean3(ctx, ctx_split, Variant::BigruAnswerwise);
    const double f1_bigru_ord = mean3(ord, ord_split, Variant::BigruAnswerwise);

    const StatsBaselineModel stats = train_stats_baseline(select_by_ids(ord, ord_split.train));
    const double f1_stats = eval_stats_baseline(stats, select_by_ids(ord, ord_split.test)).metrics.f1;

    // "ties allowed" for the H2/H3 ordering: a tolerance of 0.02 treats
    // sub-effect-size differences as ties (the reference results themselves
    // flip hn_satt vs hn_avg on one modality)
    constexpr double kTie = 0.02;
    const bool a = f1_hirenet >= 0.95;
    const bool b = f1_hirenet - f1_satt >= 0.05;
    const bool c = f1_satt >= f1_avg - kTie && f1_avg >= f1_bigru_ctx - kTie;
    const bool d = f1_bigru_ord - f1_stats >= 0.05;
    const bool timing = max_seconds < 300.0;

    report(4, a && b && c && d && timing,
           "hypothesis ladder: hirenet " + fmt("%.3f", f1_hirenet) + ", hn_satt " +
               fmt("%.3f", f1_satt) + ", hn_avg " + fmt("%.3f", f1_avg) + ", bigru " +
               fmt("%.3f", f1_bigru_ctx) + " (context); bigru " + fmt("%.3f", f1_bigru_ord) +
               " vs stats " + fmt("%.3f", f1_stats) + " (ordered); slowest run " +
               fmt("%.0f s", max_seconds) + (a ? "" : " [a]") + (b ? "" : " [b]") +
               (c ? "" : " [c]") + (d ? "" : " [d]") + (timing ? "" : " [time]"));

    // 5. salience localization on the seed-1 context model
    std::map<int64_t, const CandidateTruth*> truth;
    for (const CandidateTruth& t : ctx_gen.truth) truth[t.candidate_id] = &t;
    size_t correct_pos = 0, localized = 0;
    for (const Interview& iv : select_by_ids(ctx, ctx_split.test)) {
        if (iv.label != 1) continue;
        Graph g;
        const ForwardPass fp = forward_interview_pass(g, hirenet_params, hirenet_config, iv);
        if (!fp.prediction.hirable) continue;
        ++correct_pos;
        const CandidateTruth* t = truth.at(iv.candidate_id);
        const auto& qa = fp.prediction.trace.question_alphas;
        const size_t am = static_cast<size_t>(
            std::max_element(qa.begin(), qa.end()) - qa.begin());
        if (static_cast<int>(am) != t->decisive_index) continue;
        const auto& pw = fp.prediction.trace.relative_word[static_cast<size_t>(t->decisive_index)];
        std::vector<size_t> idx(pw.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        std::partial_sort(idx.begin(), idx.begin() + 3, idx.end(),
                          [&](size_t x, size_t y) { return pw[x] > pw[y]; });
        const int start = t->motif_start[static_cast<size_t>(t->decisive_index)];
        for (int k = 0; k < 3; ++k)
            if (idx[static_cast<size_t>(k)] >= static_cast<size_t>(start) &&
                idx[static_cast<size_t>(k)] < static_cast<size_t>(start) + 3) {
                ++localized;
                break;
            }
    }
    const double frac =
        correct_pos ? static_cast<double>(localized) / static_cast<double>(correct_pos) : 0.0;
    report(5, frac >= 0.80,
           fmt("salience localization: %.1f%% of %.0f correct positives (need 80%%)",
               100.0 * frac, static_cast<double>(correct_pos)));

    // 6. vote baselines on the context test split
    std::vector<std::pair<int, int>> train_pl, test_pl;
    for (int64_t id : ctx_split.train)
        train_pl.emplace_back(truth.at(id)->position, find_candidate(ctx, id)->label);
    for (int64_t id : ctx_split.test)
        test_pl.emplace_back(truth.at(id)->position, find_candidate(ctx, id)->label);
    const VoteBaselines vb = vote_baselines(train_pl, test_pl, 1000, 17);

    // brute-force per-position recount for the majority baseline
    std::map<int, std::pair<int, int>> counts;
    int global_h = 0;
    for (const auto& [pos, label] : train_pl) {
        counts[pos].first += label;
        counts[pos].second += 1;
        global_h += label;
    }
    std::vector<int> expect_preds, labels;
    for (const auto& [pos, label] : test_pl) {
        const auto it = counts.find(pos);
        int pred;
        if (it == counts.end())
            pred = 2 * global_h >= static_cast<int>(train_pl.size()) ? 1 : 0;
        else
            pred = 2 * it->second.first >= it->second.second ? 1 : 0;
        expect_preds.push_back(pred);
        labels.push_back(label);
    }
    const Metrics recount = compute_metrics(expect_preds, labels);
    const bool majority_exact = recount.precision == vb.majority_vote.precision &&
                                recount.recall == vb.majority_vote.recall &&
                                recount.f1 == vb.majority_vote.f1;
    const bool random_ok = std::fabs(vb.random_vote.f1 - ctx_spec.hirable_rate) <= 0.02;
    report(6, random_ok && majority_exact,
           fmt("vote baselines: random F1 %.3f vs rate 0.450 +/- 0.02; majority recount %s",
               vb.random_vote.f1, 0.0) +
               (majority_exact ? "exact" : "MISMATCH"));
}

// ---------------------------------------------------------------------------
// 7. protocol ops
// ---------------------------------------------------------------------------

void criterion_7() {
    bool ok = true;
    std::string why;

    // exhaustive annotation patterns, up to 4 annotators, all 7 non-empty
    // flag combinations per annotator, against a brute-force recount
    for (size_t n = 1; n <= 4 && ok; ++n) {
        std::vector<size_t> combo(n, 0);
        for (;;) {
            std::vector<Annotation> ann;
            size_t hirable_votes = 0;
            for (size_t a = 0; a < n; ++a) {
                const size_t bits = combo[a] + 1;  // 1..7, at least one flag
                Annotation v;
                v.annotator_id = static_cast<int>(a);
                v.liked = bits & 1;
                v.shortlisted = bits & 2;
                v.disliked = bits & 4;
                hirable_votes += static_cast<size_t>(v.liked || v.shortlisted);
                ann.push_back(v);
            }
            const int expect = 2 * hirable_votes >= n ? 1 : 0;  // draw -> hirable
            if (aggregate_annotations(ann) != expect) {
                ok = false;
                why = "aggregate_annotations disagrees with the recount";
                break;
            }
            size_t i = 0;
            while (i < n && ++combo[i] == 7) combo[i++] = 0;
            if (i == n) break;
        }
    }

    // split sizes and disjointness for N in {10, 100, 1234}
    for (size_t n : {size_t(10), size_t(100), size_t(1234)}) {
        if (!ok) break;
        GeneratorSpec spec;
        spec.candidates = n;
        spec.answer_len_min = 6;
        spec.answer_len_max = 8;
        spec.modalities = {"audio"};
        spec.seed = 3;
        const Corpus corpus = generate_corpus(spec).by_modality.at("audio");
        const SplitIndices s = split_corpus(corpus, 5);
        if (s.train.size() != (n * 8) / 10 || s.validation.size() != n / 10 ||
            s.test.size() != n - (n * 8) / 10 - n / 10) {
            ok = false;
            why = "split sizes wrong for N=" + std::to_string(n);
            break;
        }
        std::set<int64_t> seen;
        for (const auto* part : {&s.train, &s.validation, &s.test})
            for (int64_t id : *part)
                if (!seen.insert(id).second) {
                    ok = false;
                    why = "split overlap for N=" + std::to_string(n);
                }
        if (seen.size() != n) {
            ok = false;
            why = "split not exhaustive for N=" + std::to_string(n);
        }
    }

    report(7, ok, ok ? "protocol ops: 2800 annotation patterns exact, splits 10/100/1234 exact"
                     : ("protocol ops: " + why));
}

// ---------------------------------------------------------------------------
// 8. CLI pipeline determinism
// ---------------------------------------------------------------------------

int run_cmd(const std::string& cmd) {
    return std::system((cmd + " >/dev/null 2>&1").c_str());
}

void criterion_8() {
#ifndef HIRENET_CLI
    report(8, false, "pipeline determinism: CLI path not wired into the build");
#else
    const std::string cli = HIRENET_CLI;
    const fs::path base = fs::temp_directory_path() / "hirenet_acc8";
    std::error_code ec;
    fs::remove_all(base, ec);
    fs::create_directories(base);

    const std::string spec_path = (base / "spec.json").string();
    atomic_write_file(spec_path, R"({
      "candidates": 120, "positions": 12, "answer_len_min": 10, "answer_len_max": 16,
      "modalities": ["audio"], "seed": 21
    })");
    const std::string cfg_path = (base / "config.json").string();
    atomic_write_file(cfg_path, R"({
      "embed_dim": 8, "low_hidden": 8, "question_hidden": 8, "high_hidden": 8, "job_hidden": 8,
      "variant": "hirenet", "seed": 5, "modality": "audio",
      "optim": {"learning_rate": 0.003, "max_epochs": 4, "patience": 4, "threads": 2}
    })");

    // both runs use identical relative paths from their own directory, so
    // every produced byte (including path echoes in reports) must agree
    auto pipeline = [&](const std::string& tag) -> std::vector<std::string> {
        const fs::path dir = base / tag;
        fs::create_directories(dir);
        const std::string in_dir = "cd " + dir.string() + " && " + cli;
        if (run_cmd(in_dir + " generate-data --spec " + spec_path + " --out data")) return {};
        if (run_cmd(in_dir + " train --config " + cfg_path + " --data data --out run"))
            return {};
        if (run_cmd(in_dir + " evaluate --checkpoint run/checkpoint.json --data data"
                             " --split test --report run/metrics.csv"))
            return {};
        if (run_cmd(in_dir + " attention-export --checkpoint run/checkpoint.json --data data"
                             " --candidate 3 --out run/attention.json"))
            return {};
        const std::string d = dir.string();
        return {d + "/data/audio.jsonl",   d + "/data/splits.json",
                d + "/data/truth.json",    d + "/run/checkpoint.json",
                d + "/run/report.json",    d + "/run/metrics.csv",
                d + "/run/metrics.csv.scores.csv", d + "/run/attention.json"};
    };

    const std::vector<std::string> a = pipeline("run_a");
    const std::vector<std::string> b = pipeline("run_b");
    bool ok = !a.empty() && a.size() == b.size();
    std::string why = ok ? "" : "pipeline command failed";
    for (size_t i = 0; ok && i < a.size(); ++i) {
        if (read_file(a[i]) != read_file(b[i])) {
            ok = false;
            why = "byte mismatch in " + fs::path(a[i]).filename().string();
        }
    }
    fs::remove_all(base, ec);
    report(8, ok,
           ok ? "pipeline determinism: generate/train/evaluate/attention-export byte-identical "
                "across two runs"
              : ("pipeline determinism: " + why));
#endif
}

}  // namespace

int main(int argc, char** argv) {
    // optional arguments select criteria by number, e.g. `acceptance 1 8`
    std::set<int> wanted;
    for (int i = 1; i < argc; ++i) wanted.insert(std::atoi(argv[i]));
    auto selected = [&](int id) { return wanted.empty() || wanted.count(id) > 0; };

    const auto t0 = std::chrono::steady_clock::now();
    if (selected(1)) criterion_1();
    if (selected(2)) criterion_2();
    if (selected(3)) criterion_3();
    if (selected(4) || selected(5) || selected(6)) criteria_4_5_6();
    if (selected(7)) criterion_7();
    if (selected(8)) criterion_8();

    size_t passed = 0;
    for (const Gate& g : gates) passed += g.pass;
    std::printf("%zu/%zu acceptance criteria passed (%.0f s total)\n", passed, gates.size(),
                seconds_since(t0));
    return passed == gates.size() ? 0 : 1;
}

// Copyright (c) 2026 The HireNet Authors
// SPDX-License-Identifier: Apache-2.0
//
// Corpus generation layout.
//
// Context-token space (questions and job titles share it):
//   [0, 10)                   question-index markers
//   [10, 10 + job_types)      job-type tokens
//   [10 + job_types, vocab)   filler tokens
//
// Answer frames per modality:
//   text   each frame is the fixed code vector of a synthetic token;
//          tokens 0..2 are reserved for the motif trigram, background
//          draws from the rest
//   audio  channels 0..2 are reserved and zero in the background; the
//          motif is an amplitude burst walking across them; the remaining
//          channels carry Gaussian noise
//   video  binary; channels 0..2 reserved, motif activates them across
//          three consecutive frames; remaining channels flicker at random
//
// The motif always occupies three consecutive frames. Under the context
// rule its orientation is fixed and only its presence in the decisive
// answer determines the label; under the ordered rule every answer carries
// it and the orientation (forward vs reversed) is the label, which leaves
// all per-column aggregate statistics identical between the classes.

#include "hirenet/data.hpp"

#include <algorithm>
#include <fstream>

#include "hirenet/errors.hpp"
#include "hirenet/io_util.hpp"
#include "hirenet/rng.hpp"
#include "json.hpp"

namespace hirenet {

using nlohmann::json;

namespace {

constexpr int kQuestionMarkerBase = 0;
constexpr int kJobTypeBase = 10;
constexpr size_t kTextVocab = 40;
constexpr size_t kMotifLen = 3;
constexpr double kBurstAmplitude = 3.0;

size_t filler_base(const GeneratorSpec& spec) { return kJobTypeBase + spec.job_types; }

}  // namespace

void GeneratorSpec::validate() const {
    if (candidates == 0 || positions == 0 || job_types == 0)
        throw ContractError("generator spec: counts must be >= 1");
    if (!(hirable_rate > 0.0 && hirable_rate < 1.0))
        throw ContractError("generator spec: hirable_rate must lie in (0,1)");
    if (questions_min < 1 || questions_min > questions_max)
        throw ContractError("generator spec: invalid question count range");
    if (answer_len_min < kMotifLen + 2 || answer_len_min > answer_len_max)
        throw ContractError("generator spec: answers must fit the motif plus margin");
    if (context_vocab < filler_base(*this) + 8)
        throw ContractError("generator spec: context vocab too small for markers and fillers");
    if (modalities.empty()) throw ContractError("generator spec: no modalities requested");
    for (const auto& m : modalities)
        if (!feature_dims.count(m))
            throw ContractError("generator spec: no feature dim for modality '" + m + "'");
    if (feature_dims.count("text") && feature_dims.at("text") < 4)
        throw ContractError("generator spec: text feature dim must be >= 4");
    for (const auto& [m, d] : feature_dims)
        if (d < kMotifLen + 1)
            throw ContractError("generator spec: modality '" + m + "' needs feature dim >= 4");
    if (!(distractor_rate >= 0.0 && distractor_rate < 1.0))
        throw ContractError("generator spec: distractor_rate must lie in [0,1)");
    if (!(modality_drop_rate >= 0.0 && modality_drop_rate < 0.5))
        throw ContractError("generator spec: modality_drop_rate must lie in [0,0.5)");
    // every job type's decisive index must exist in the shortest interview
    if (questions_min == 0) throw ContractError("generator spec: questions_min must be >= 1");
}

void Interview::validate() const {
    const std::string who = "interview " + std::to_string(candidate_id);
    if (qa.empty()) throw ContractError(who + ": no question-answer pairs");
    if (job_tokens.empty()) throw ContractError(who + ": empty job title");
    if (label != 0 && label != 1) throw ContractError(who + ": label must be 0 or 1");
    const size_t dim = qa.front().answer.cols();
    for (size_t i = 0; i < qa.size(); ++i) {
        const std::string where = who + ", qa " + std::to_string(i);
        if (qa[i].question_tokens.empty()) throw ContractError(where + ": empty question");
        if (qa[i].answer.rank() != 2 || qa[i].answer.rows() == 0)
            throw ContractError(where + ": empty answer");
        if (qa[i].answer.cols() != dim)
            throw ContractError(where + ": feature dim differs within the interview");
        if (!qa[i].answer.all_finite())
            throw ContractError(where + ": non-finite feature value");
    }
    for (const Annotation& a : annotations)
        if (!a.liked && !a.shortlisted && !a.disliked)
            throw ContractError(who + ": annotation with no field set");
}

namespace {

// Structural skeleton shared by all modality variants of one candidate.
struct Skeleton {
    int64_t candidate_id;
    int position;
    int job_type;
    int decisive_index;
    int label;
    std::vector<int> job_tokens;
    std::vector<std::vector<int>> question_tokens;
    std::vector<size_t> answer_lengths;
    std::vector<int> motif_start;        // -1 = absent
    std::vector<bool> motif_forward;     // orientation per answer
    std::vector<Annotation> annotations;
};

int decisive_for_type(const GeneratorSpec& spec, int job_type) {
    return job_type % static_cast<int>(spec.questions_min);
}

std::vector<Annotation> make_annotations(Rng& rng, int label) {
    const size_t count = 1 + rng.uniform_index(3);
    // patterns that aggregate back to the label (a 1-1 draw is hirable)
    size_t hirable_votes;
    if (label == 1) {
        hirable_votes = count == 1 ? 1 : (count == 2 ? 1 + rng.uniform_index(2) : 2 + rng.uniform_index(2));
    } else {
        hirable_votes = count == 3 ? rng.uniform_index(2) : 0;
    }
    std::vector<Annotation> out;
    for (size_t a = 0; a < count; ++a) {
        Annotation an;
        an.annotator_id = static_cast<int>(a);
        if (a < hirable_votes) {
            const auto pick = rng.uniform_index(3);
            an.liked = pick != 1;
            an.shortlisted = pick != 0;
        } else {
            an.disliked = true;
        }
        out.push_back(an);
    }
    return out;
}

Skeleton make_skeleton(const GeneratorSpec& spec, int64_t cid) {
    Rng rng(Rng::substream(spec.seed, static_cast<uint64_t>(cid) * 2 + 1));
    Skeleton sk;
    sk.candidate_id = cid;
    sk.position = static_cast<int>(rng.uniform_index(spec.positions));
    sk.job_type = sk.position % static_cast<int>(spec.job_types);
    sk.decisive_index = decisive_for_type(spec, sk.job_type);
    sk.label = rng.bernoulli(spec.hirable_rate) ? 1 : 0;

    const int fillers = static_cast<int>(spec.context_vocab - filler_base(spec));
    auto filler = [&]() {
        return static_cast<int>(filler_base(spec)) + static_cast<int>(rng.uniform_index(fillers));
    };

    // job title: leading filler words, the type token last (the encoders keep
    // the final hidden state, so the informative token goes at the end)
    const size_t title_fillers = 1 + rng.uniform_index(2);
    for (size_t i = 0; i < title_fillers; ++i) sk.job_tokens.push_back(filler());
    sk.job_tokens.push_back(kJobTypeBase + sk.job_type);

    const size_t n =
        spec.questions_min + rng.uniform_index(spec.questions_max - spec.questions_min + 1);
    for (size_t i = 0; i < n; ++i) {
        std::vector<int> q;
        const size_t extra = 1 + rng.uniform_index(3);
        for (size_t e = 0; e < extra; ++e) q.push_back(filler());
        q.push_back(kQuestionMarkerBase + static_cast<int>(i));
        sk.question_tokens.push_back(std::move(q));

        const size_t len = spec.answer_len_min +
                           rng.uniform_index(spec.answer_len_max - spec.answer_len_min + 1);
        sk.answer_lengths.push_back(len);

        bool has_motif;
        bool forward = true;
        if (spec.label_rule == LabelRule::ContextMotif) {
            has_motif = (static_cast<int>(i) == sk.decisive_index)
                            ? sk.label == 1
                            : rng.bernoulli(spec.distractor_rate);
        } else {
            has_motif = true;
            forward = sk.label == 1;
        }
        if (has_motif) {
            const size_t start = 1 + rng.uniform_index(len - kMotifLen - 1);
            sk.motif_start.push_back(static_cast<int>(start));
        } else {
            sk.motif_start.push_back(-1);
        }
        sk.motif_forward.push_back(forward);
    }
    sk.annotations = make_annotations(rng, sk.label);
    return sk;
}

// Fixed code vector of a synthetic text token; recomputable by the oracle.
std::vector<double> text_code(const GeneratorSpec& spec, size_t dim, int token) {
    Rng rng(Rng::substream(spec.seed, 0xC0DE0000ULL + static_cast<uint64_t>(token)));
    std::vector<double> v(dim);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

Tensor make_answer(const GeneratorSpec& spec, const Skeleton& sk, size_t qa, size_t mod_index,
                   const std::string& modality) {
    const size_t dim = spec.feature_dims.at(modality);
    const size_t len = sk.answer_lengths[qa];
    Rng rng(Rng::substream(spec.seed, (static_cast<uint64_t>(sk.candidate_id) * 16 + qa) * 4 +
                                          mod_index + 0xA5A5ULL));
    Tensor frames = Tensor::matrix(len, dim);
    const int start = sk.motif_start[qa];
    const bool forward = sk.motif_forward[qa];
    auto motif_channel = [&](size_t step) {
        return forward ? step : kMotifLen - 1 - step;
    };

    // occasional high-magnitude "glare" frames, uncorrelated with the label:
    // attention can learn to skip them, uniform averaging cannot
    const double glare_rate = std::min(0.3, 0.15 * spec.noise_level);


    if (modality == "text") {
        // token 3 is the reserved glare token with an oversized code vector
        const size_t background = kTextVocab - kMotifLen - 1;
        for (size_t t = 0; t < len; ++t) {
            const bool in_motif = start >= 0 && t >= static_cast<size_t>(start) &&
                                  t < static_cast<size_t>(start) + kMotifLen;
            int token;
            if (in_motif) {
                token = static_cast<int>(motif_channel(t - static_cast<size_t>(start)));
            } else if (rng.bernoulli(glare_rate)) {
                token = static_cast<int>(kMotifLen);
            } else {
                token = static_cast<int>(kMotifLen + 1 + rng.uniform_index(background));
            }
            std::vector<double> code = text_code(spec, dim, token);
            if (token == static_cast<int>(kMotifLen))
                for (double& v : code) v *= 5.0;
            std::copy(code.begin(), code.end(), frames.row_ptr(t));
        }
    } else if (modality == "audio") {
        const double noise = 0.6 * spec.noise_level;
        for (size_t t = 0; t < len; ++t) {
            const double scale = rng.bernoulli(glare_rate) ? 10.0 : 1.0;
            for (size_t c = kMotifLen; c < dim; ++c)
                frames.at(t, c) = rng.normal(0.0, noise * scale);
        }
        if (start >= 0)
            for (size_t s = 0; s < kMotifLen; ++s)
                frames.at(static_cast<size_t>(start) + s, motif_channel(s)) =
                    kBurstAmplitude + rng.uniform(0.0, 0.5);
    } else if (modality == "video") {
        const double p = std::min(0.5, 0.15 * spec.noise_level);
        for (size_t t = 0; t < len; ++t) {
            const bool glare = rng.bernoulli(glare_rate);
            for (size_t c = kMotifLen; c < dim; ++c)
                frames.at(t, c) = (glare || rng.bernoulli(p)) ? 1.0 : 0.0;
        }
        if (start >= 0)
            for (size_t s = 0; s < kMotifLen; ++s)
                frames.at(static_cast<size_t>(start) + s, motif_channel(s)) = 1.0;
    } else {
        throw ContractError("generator: unknown modality '" + modality + "'");
    }
    return frames;
}

}  // namespace

GeneratedCorpus generate_corpus(const GeneratorSpec& spec) {
    spec.validate();
    GeneratedCorpus out;
    std::vector<Skeleton> skeletons;
    skeletons.reserve(spec.candidates);
    for (size_t c = 0; c < spec.candidates; ++c)
        skeletons.push_back(make_skeleton(spec, static_cast<int64_t>(c)));

    for (size_t m = 0; m < spec.modalities.size(); ++m) {
        const std::string& modality = spec.modalities[m];
        Corpus corpus;
        corpus.reserve(spec.candidates);
        for (const Skeleton& sk : skeletons) {
            if (m > 0 && spec.modality_drop_rate > 0.0) {
                Rng drop(Rng::substream(spec.seed,
                                        0xD809ULL + static_cast<uint64_t>(sk.candidate_id) * 4 + m));
                if (drop.bernoulli(spec.modality_drop_rate)) continue;
            }
            Interview iv;
            iv.candidate_id = sk.candidate_id;
            iv.job_tokens = sk.job_tokens;
            iv.label = sk.label;
            iv.annotations = sk.annotations;
            for (size_t q = 0; q < sk.question_tokens.size(); ++q) {
                QAPair qa;
                qa.question_tokens = sk.question_tokens[q];
                qa.answer = make_answer(spec, sk, q, m, modality);
                qa.modality = modality;
                iv.qa.push_back(std::move(qa));
            }
            iv.validate();
            corpus.push_back(std::move(iv));
        }
        out.by_modality.emplace(modality, std::move(corpus));
    }

    out.truth.reserve(spec.candidates);
    for (const Skeleton& sk : skeletons) {
        CandidateTruth t;
        t.candidate_id = sk.candidate_id;
        t.position = sk.position;
        t.job_type = sk.job_type;
        t.decisive_index = sk.decisive_index;
        t.motif_start = sk.motif_start;
        out.truth.push_back(std::move(t));
    }
    return out;
}

namespace {

int find_job_type(const GeneratorSpec& spec, const std::vector<int>& job_tokens) {
    for (int tok : job_tokens)
        if (tok >= kJobTypeBase && tok < kJobTypeBase + static_cast<int>(spec.job_types))
            return tok - kJobTypeBase;
    throw ContractError("oracle: no job-type token in the job title");
}

// Detects the planted trigram in an answer; returns 0 = absent,
// +1 = forward orientation, -1 = reversed.
int detect_motif(const GeneratorSpec& spec, const Tensor& answer, const std::string& modality) {
    const size_t dim = answer.cols();
    auto burst_at = [&](size_t t, size_t channel) {
        return answer.at(t, channel) > kBurstAmplitude / 2.0;
    };
    if (modality == "audio" || modality == "video") {
        auto active = [&](size_t t, size_t c) {
            return modality == "audio" ? burst_at(t, c) : answer.at(t, c) == 1.0;
        };
        for (size_t t = 0; t + kMotifLen <= answer.rows(); ++t) {
            bool fwd = true, rev = true;
            for (size_t s = 0; s < kMotifLen; ++s) {
                fwd &= active(t + s, s);
                rev &= active(t + s, kMotifLen - 1 - s);
            }
            if (fwd) return 1;
            if (rev) return -1;
        }
        return 0;
    }
    if (modality == "text") {
        std::vector<std::vector<double>> codes;
        for (size_t k = 0; k < kMotifLen; ++k)
            codes.push_back(text_code(spec, dim, static_cast<int>(k)));
        auto matches = [&](size_t t, size_t code_idx) {
            double d = 0.0;
            for (size_t c = 0; c < dim; ++c) {
                const double diff = answer.at(t, c) - codes[code_idx][c];
                d += diff * diff;
            }
            return d < 1e-12;
        };
        for (size_t t = 0; t + kMotifLen <= answer.rows(); ++t) {
            bool fwd = true, rev = true;
            for (size_t s = 0; s < kMotifLen; ++s) {
                fwd &= matches(t + s, s);
                rev &= matches(t + s, kMotifLen - 1 - s);
            }
            if (fwd) return 1;
            if (rev) return -1;
        }
        return 0;
    }
    throw ContractError("oracle: unknown modality '" + modality + "'");
}

}  // namespace

int oracle_label(const GeneratorSpec& spec, const Interview& iv, const CandidateTruth& truth) {
    const std::string& modality = iv.qa.front().modality;
    if (spec.label_rule == LabelRule::ContextMotif) {
        const int job_type = find_job_type(spec, iv.job_tokens);
        const int decisive = decisive_for_type(spec, job_type);
        if (truth.candidate_id == iv.candidate_id && decisive != truth.decisive_index)
            throw ContractError("oracle: decisive index disagrees with recorded truth");
        const int found = detect_motif(spec, iv.qa.at(static_cast<size_t>(decisive)).answer,
                                       modality);
        return found != 0 ? 1 : 0;
    }
    // ordered rule: orientation of the motif in any answer; they all agree
    const int found = detect_motif(spec, iv.qa.front().answer, modality);
    if (found == 0) throw ContractError("oracle: ordered corpus answer without motif");
    return found > 0 ? 1 : 0;
}

int aggregate_annotations(const std::vector<Annotation>& annotations) {
    if (annotations.empty())
        throw DegenerateInputError("aggregate_annotations: no annotations");
    size_t hirable = 0;
    for (const Annotation& a : annotations)
        hirable += static_cast<size_t>(a.liked || a.shortlisted);
    // majority; an exact draw is hirable
    return 2 * hirable >= annotations.size() ? 1 : 0;
}

SplitIndices split_corpus(const Corpus& corpus, uint64_t seed) {
    const size_t n = corpus.size();
    if (n < 10) throw DegenerateInputError("split_corpus: need at least 10 candidates");
    const size_t n_train = (n * 8) / 10;
    const size_t n_val = n / 10;
    if (n_val == 0 || n - n_train - n_val == 0)
        throw DegenerateInputError("split_corpus: a split would be empty");

    std::vector<int64_t> pos, neg;
    for (const Interview& iv : corpus)
        (iv.label == 1 ? pos : neg).push_back(iv.candidate_id);
    Rng rng(Rng::substream(seed, 0x5917ULL));
    rng.shuffle(pos);
    rng.shuffle(neg);

    // largest-remainder apportionment of the positives across the splits
    const size_t sizes[3] = {n_train, n_val, n - n_train - n_val};
    size_t alloc[3];
    double frac[3];
    size_t assigned = 0;
    for (int s = 0; s < 3; ++s) {
        const double quota = static_cast<double>(pos.size()) * static_cast<double>(sizes[s]) /
                             static_cast<double>(n);
        alloc[s] = static_cast<size_t>(quota);
        frac[s] = quota - static_cast<double>(alloc[s]);
        assigned += alloc[s];
    }
    while (assigned < pos.size()) {
        int best = 0;
        for (int s = 1; s < 3; ++s)
            if (frac[s] > frac[best]) best = s;
        ++alloc[best];
        frac[best] = -1.0;
        ++assigned;
    }
    for (int s = 0; s < 3; ++s) {  // capacity guard: never more positives than slots
        while (alloc[s] > sizes[s]) {
            --alloc[s];
            for (int o = 0; o < 3; ++o)
                if (o != s && alloc[o] < sizes[o]) {
                    ++alloc[o];
                    break;
                }
        }
    }

    SplitIndices out;
    std::vector<int64_t>* parts[3] = {&out.train, &out.validation, &out.test};
    size_t pi = 0, ni = 0;
    for (int s = 0; s < 3; ++s) {
        for (size_t i = 0; i < alloc[s]; ++i) parts[s]->push_back(pos[pi++]);
        while (parts[s]->size() < sizes[s]) parts[s]->push_back(neg[ni++]);
        rng.shuffle(*parts[s]);
    }
    return out;
}

// --- persistence -----------------------------------------------------------

namespace {

json interview_to_json(const Interview& iv) {
    json j;
    j["candidate_id"] = iv.candidate_id;
    j["job_tokens"] = iv.job_tokens;
    json qa = json::array();
    for (const QAPair& p : iv.qa) {
        json e;
        e["q_tokens"] = p.question_tokens;
        json rows = json::array();
        for (size_t t = 0; t < p.answer.rows(); ++t)
            rows.push_back(std::vector<double>(p.answer.row_ptr(t),
                                               p.answer.row_ptr(t) + p.answer.cols()));
        e["answer"] = std::move(rows);
        e["modality"] = p.modality;
        qa.push_back(std::move(e));
    }
    j["qa"] = std::move(qa);
    j["label"] = iv.label;
    json ann = json::array();
    for (const Annotation& a : iv.annotations)
        ann.push_back({{"annotator_id", a.annotator_id},
                       {"liked", a.liked},
                       {"shortlisted", a.shortlisted},
                       {"disliked", a.disliked}});
    j["annotations"] = std::move(ann);
    return j;
}

Interview interview_from_json(const json& j) {
    Interview iv;
    iv.candidate_id = j.at("candidate_id").get<int64_t>();
    iv.job_tokens = j.at("job_tokens").get<std::vector<int>>();
    iv.label = j.at("label").get<int>();
    for (const json& e : j.at("qa")) {
        QAPair p;
        p.question_tokens = e.at("q_tokens").get<std::vector<int>>();
        const json& rows = e.at("answer");
        const size_t r = rows.size();
        const size_t c = r > 0 ? rows.at(0).size() : 0;
        if (r == 0 || c == 0)
            throw ContractError("interview " + std::to_string(iv.candidate_id) +
                                ": empty answer matrix");
        p.answer = Tensor::matrix(r, c);
        for (size_t t = 0; t < r; ++t) {
            const json& row = rows.at(t);
            if (row.size() != c)
                throw ContractError("interview " + std::to_string(iv.candidate_id) +
                                    ": ragged answer matrix");
            for (size_t d = 0; d < c; ++d) p.answer.at(t, d) = row.at(d).get<double>();
        }
        p.modality = e.at("modality").get<std::string>();
        iv.qa.push_back(std::move(p));
    }
    if (j.contains("annotations"))
        for (const json& a : j.at("annotations")) {
            Annotation an;
            an.annotator_id = a.at("annotator_id").get<int>();
            an.liked = a.at("liked").get<bool>();
            an.shortlisted = a.at("shortlisted").get<bool>();
            an.disliked = a.at("disliked").get<bool>();
            iv.annotations.push_back(an);
        }
    return iv;
}

}  // namespace

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::string buf;
    for (const Interview& iv : corpus) {
        buf += interview_to_json(iv).dump();
        buf += '\n';
    }
    atomic_write_file(path, buf);
}

Corpus load_corpus(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open corpus file '" + path + "'");
    Corpus corpus;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        Interview iv;
        try {
            iv = interview_from_json(j);
        } catch (const json::exception& e) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        iv.validate();
        corpus.push_back(std::move(iv));
    }
    return corpus;
}

void save_truth(const std::vector<CandidateTruth>& truth, const std::string& path) {
    json arr = json::array();
    for (const CandidateTruth& t : truth)
        arr.push_back({{"candidate_id", t.candidate_id},
                       {"position", t.position},
                       {"job_type", t.job_type},
                       {"decisive_index", t.decisive_index},
                       {"motif_start", t.motif_start}});
    atomic_write_file(path, arr.dump(2) + "\n");
}

std::vector<CandidateTruth> load_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open truth file '" + path + "'");
    json arr = json::parse(in, nullptr, true);
    std::vector<CandidateTruth> out;
    for (const json& j : arr) {
        CandidateTruth t;
        t.candidate_id = j.at("candidate_id").get<int64_t>();
        t.position = j.at("position").get<int>();
        t.job_type = j.at("job_type").get<int>();
        t.decisive_index = j.at("decisive_index").get<int>();
        t.motif_start = j.at("motif_start").get<std::vector<int>>();
        out.push_back(std::move(t));
    }
    return out;
}

void save_splits(const SplitIndices& splits, const std::string& path) {
    json j;
    j["train"] = splits.train;
    j["validation"] = splits.validation;
    j["test"] = splits.test;
    atomic_write_file(path, j.dump(2) + "\n");
}

SplitIndices load_splits(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot open splits file '" + path + "'");
    json j = json::parse(in, nullptr, true);
    SplitIndices s;
    s.train = j.at("train").get<std::vector<int64_t>>();
    s.validation = j.at("validation").get<std::vector<int64_t>>();
    s.test = j.at("test").get<std::vector<int64_t>>();
    return s;
}

std::string generator_spec_to_json(const GeneratorSpec& spec) {
    json j;
    j["candidates"] = spec.candidates;
    j["positions"] = spec.positions;
    j["job_types"] = spec.job_types;
    j["context_vocab"] = spec.context_vocab;
    j["questions_min"] = spec.questions_min;
    j["questions_max"] = spec.questions_max;
    j["answer_len_min"] = spec.answer_len_min;
    j["answer_len_max"] = spec.answer_len_max;
    j["feature_dims"] = spec.feature_dims;
    j["modalities"] = spec.modalities;
    j["hirable_rate"] = spec.hirable_rate;
    j["distractor_rate"] = spec.distractor_rate;
    j["noise_level"] = spec.noise_level;
    j["modality_drop_rate"] = spec.modality_drop_rate;
    j["label_rule"] = spec.label_rule == LabelRule::ContextMotif ? "context" : "ordered";
    j["seed"] = spec.seed;
    return j.dump(2);
}

GeneratorSpec generator_spec_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("generator spec: ") + e.what());
    }
    GeneratorSpec s;
    s.candidates = j.value("candidates", s.candidates);
    s.positions = j.value("positions", s.positions);
    s.job_types = j.value("job_types", s.job_types);
    s.context_vocab = j.value("context_vocab", s.context_vocab);
    s.questions_min = j.value("questions_min", s.questions_min);
    s.questions_max = j.value("questions_max", s.questions_max);
    s.answer_len_min = j.value("answer_len_min", s.answer_len_min);
    s.answer_len_max = j.value("answer_len_max", s.answer_len_max);
    if (j.contains("feature_dims"))
        s.feature_dims = j.at("feature_dims").get<std::map<std::string, size_t>>();
    if (j.contains("modalities"))
        s.modalities = j.at("modalities").get<std::vector<std::string>>();
    s.hirable_rate = j.value("hirable_rate", s.hirable_rate);
    s.distractor_rate = j.value("distractor_rate", s.distractor_rate);
    s.noise_level = j.value("noise_level", s.noise_level);
    s.modality_drop_rate = j.value("modality_drop_rate", s.modality_drop_rate);
    if (j.contains("label_rule")) {
        const std::string rule = j.at("label_rule").get<std::string>();
        if (rule == "context") s.label_rule = LabelRule::ContextMotif;
        else if (rule == "ordered") s.label_rule = LabelRule::OrderedMotif;
        else throw ContractError("generator spec: unknown label_rule '" + rule + "'");
    }
    s.seed = j.value("seed", s.seed);
    s.validate();
    return s;
}

Corpus select_by_ids(const Corpus& corpus, const std::vector<int64_t>& ids) {
    std::map<int64_t, const Interview*> index;
    for (const Interview& iv : corpus) index[iv.candidate_id] = &iv;
    Corpus out;
    out.reserve(ids.size());
    for (int64_t id : ids) {
        auto it = index.find(id);
        if (it != index.end()) out.push_back(*it->second);
    }
    return out;
}

const Interview* find_candidate(const Corpus& corpus, int64_t id) {
    for (const Interview& iv : corpus)
        if (iv.candidate_id == id) return &iv;
    return nullptr;
}

size_t max_context_token(const Corpus& corpus) {
    int max_id = -1;
    for (const Interview& iv : corpus) {
        for (int t : iv.job_tokens) max_id = std::max(max_id, t);
        for (const QAPair& qa : iv.qa)
            for (int t : qa.question_tokens) max_id = std::max(max_id, t);
    }
    return static_cast<size_t>(max_id + 1);
}

}  // namespace hirenet

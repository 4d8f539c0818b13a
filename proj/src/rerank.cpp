#include "ncts/rerank.hpp"

#include "ncts/error.hpp"
#include "ncts/exact_sum.hpp"
#include "ncts/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace ncts {

namespace {

void check_logprob(double v, const char* what)
{
    if (!std::isfinite(v))
        throw ValidationError(std::string(what) + " must be finite");
    if (v > 0.0)
        throw ValidationError(std::string(what) + ": log-probability must be ≤ 0");
}

Selection make_selection(const CandidateSet& set, std::size_t index, double score,
                         SelectionMethod method)
{
    const Candidate& c = set.candidates[index];
    return Selection{set.id, c.rank, c.text, score, method};
}

void require_candidates(const CandidateSet& set)
{
    if (set.candidates.empty())
        throw ValidationError("set '" + set.id + "' has no candidates");
}

} // namespace

double aggregate_lm_logprob(std::span<const double> token_logps)
{
    for (double v : token_logps)
        check_logprob(v, "lm token log-probability");
    return exact_sum(token_logps);
}

ScoredCandidate combine_score(double logp_direct, double logp_channel, double logp_lm,
                              std::size_t n_tokens, const LambdaVector& lambdas)
{
    lambdas.validate();
    check_logprob(logp_direct, "logp_direct");
    check_logprob(logp_channel, "logp_channel");
    check_logprob(logp_lm, "logp_lm");
    if (n_tokens == 0)
        throw ValidationError("candidate length must be at least one token");

    ScoredCandidate scored;
    scored.terms.direct = lambdas.direct * logp_direct;
    scored.terms.channel = lambdas.channel * logp_channel;
    scored.terms.lm = lambdas.lm * logp_lm;
    scored.terms.length = lambdas.length * static_cast<double>(n_tokens);
    scored.combined_score =
        scored.terms.direct + scored.terms.channel + scored.terms.lm + scored.terms.length;
    return scored;
}

ScoredCandidate score_candidate(const Candidate& candidate, const LambdaVector& lambdas)
{
    ScoredCandidate scored =
        combine_score(candidate.logp_direct, candidate.logp_channel,
                      aggregate_lm_logprob(candidate.lm_token_logps),
                      whitespace_token_count(candidate.text), lambdas);
    scored.rank = candidate.rank;
    return scored;
}

Reranking rerank(const CandidateSet& set, const LambdaVector& lambdas)
{
    require_candidates(set);
    Reranking result;
    result.ordering.reserve(set.candidates.size());
    for (const Candidate& c : set.candidates)
        result.ordering.push_back(score_candidate(c, lambdas));
    std::sort(result.ordering.begin(), result.ordering.end(), ranks_before);

    const ScoredCandidate& best = result.ordering.front();
    const auto index = static_cast<std::size_t>(
        std::find_if(set.candidates.begin(), set.candidates.end(),
                     [&](const Candidate& c) { return c.rank == best.rank; }) -
        set.candidates.begin());
    result.selection =
        make_selection(set, index, best.combined_score, SelectionMethod::NoisyChannel);
    return result;
}

Selection rerank_select(const CandidateSet& set, const LambdaVector& lambdas)
{
    return rerank(set, lambdas).selection;
}

Selection first_beam_select(const CandidateSet& set)
{
    require_candidates(set);
    for (std::size_t i = 0; i < set.candidates.size(); ++i)
        if (set.candidates[i].rank == 0)
            return make_selection(set, i, set.candidates[i].logp_direct,
                                  SelectionMethod::FirstBeam);
    throw ValidationError("set '" + set.id + "' has no rank-0 candidate");
}

Selection oracle_select(const CandidateSet& set)
{
    require_candidates(set);
    if (!set.has_references())
        throw ValidationError("set '" + set.id + "' has no references; oracle needs them");
    std::vector<TokenSequence> refs;
    for (const auto& ref : *set.references)
        refs.push_back(tokenize(ref));
    const TokenSequence source = tokenize(set.source);

    std::size_t best = 0;
    double best_sari = -1.0;
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
        const double s = sari_tokens(source, tokenize(set.candidates[i].text), refs).final;
        if (s > best_sari) {
            best_sari = s;
            best = i;
        }
    }
    return make_selection(set, best, best_sari, SelectionMethod::Oracle);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b)
{
    if (a.size() != b.size())
        throw ValidationError("cosine of vectors with different dimensions");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return dot / (std::sqrt(na) * std::sqrt(nb));
}

double bag_of_tokens_cosine(std::string_view a, std::string_view b)
{
    const auto ta = tokenize(a);
    const auto tb = tokenize(b);
    const std::set<std::string> sa(ta.begin(), ta.end());
    const std::set<std::string> sb(tb.begin(), tb.end());
    if (sa.empty() || sb.empty())
        return 0.0;
    std::size_t shared = 0;
    for (const auto& t : sa)
        shared += sb.count(t);
    return static_cast<double>(shared) /
           std::sqrt(static_cast<double>(sa.size()) * static_cast<double>(sb.size()));
}

Selection cosine_select(const CandidateSet& set)
{
    require_candidates(set);
    const bool dense =
        set.source_embedding.has_value() &&
        std::all_of(set.candidates.begin(), set.candidates.end(),
                    [](const Candidate& c) { return c.embedding.has_value(); });

    std::size_t best = 0;
    double best_sim = -2.0;
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
        const Candidate& c = set.candidates[i];
        const double sim = dense ? cosine_similarity(*set.source_embedding, *c.embedding)
                                 : bag_of_tokens_cosine(set.source, c.text);
        if (sim > best_sim) {
            best_sim = sim;
            best = i;
        }
    }
    return make_selection(set, best, best_sim, SelectionMethod::Cosine);
}

} // namespace ncts

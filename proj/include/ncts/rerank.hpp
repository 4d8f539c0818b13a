#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ncts/data_model.hpp"

namespace ncts {

// The four addends of the noisy-channel score.
struct ScoreTerms {
    double direct = 0.0;   // lambda1 * log p(y|x)
    double channel = 0.0;  // lambda2 * log p(x|y)
    double lm = 0.0;       // lambda3 * log p(y)
    double length = 0.0;   // lambda4 * N
};

struct ScoredCandidate {
    int rank = 0;  // beam rank in the originating set
    ScoreTerms terms;
    double combined_score = 0.0;  // terms.direct + terms.channel + terms.lm + terms.length
};

// Masked-LM pseudo-log-likelihood: the sum of per-token log-probabilities.
// Entries must be finite and <= 0; the empty sequence gives 0.
double aggregate_lm_logprob(std::span<const double> token_logps);

// Throws ValidationError on invalid lambdas, positive or non-finite
// log-probabilities, or n_tokens == 0.
ScoredCandidate combine_score(double logp_direct, double logp_channel, double logp_lm,
                              std::size_t n_tokens, const LambdaVector& lambdas);

// Scores one candidate with N recomputed as its whitespace-token count.
ScoredCandidate score_candidate(const Candidate& candidate, const LambdaVector& lambdas);

// True when `a` ranks ahead of `b`: higher score, then lower beam rank.
inline bool ranks_before(const ScoredCandidate& a, const ScoredCandidate& b)
{
    if (a.combined_score != b.combined_score)
        return a.combined_score > b.combined_score;
    return a.rank < b.rank;
}

struct Reranking {
    Selection selection;
    std::vector<ScoredCandidate> ordering;  // best first; a permutation of the set
};

Reranking rerank(const CandidateSet& set, const LambdaVector& lambdas);
Selection rerank_select(const CandidateSet& set, const LambdaVector& lambdas);

// The direct model's own choice: always the rank-0 hypothesis.
Selection first_beam_select(const CandidateSet& set);

// Candidate with the highest sentence SARI against the set's references
// (ties to the lowest rank). Throws ValidationError without references.
Selection oracle_select(const CandidateSet& set);

// Cosine similarity of two dense vectors; 0 when either has zero norm.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

// Cosine of binary bag-of-token vectors built with the metrics tokenizer.
double bag_of_tokens_cosine(std::string_view a, std::string_view b);

// Highest cosine similarity to the source (ties to the lowest rank). Uses the
// stored embeddings when the source and every candidate carry one, the
// bag-of-tokens fallback otherwise.
Selection cosine_select(const CandidateSet& set);

} // namespace ncts

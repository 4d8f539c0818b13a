#pragma once

#include <array>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncts {

// Lowercased tokens; no token is empty or contains whitespace.
using TokenSequence = std::vector<std::string>;

// Lowercases ASCII letters, detaches . , ; : ! ? " ' ( ) [ ] into standalone
// tokens and splits on whitespace.
TokenSequence tokenize(std::string_view text);

// n-gram multiset keyed by the space-joined tokens.
using NgramCounts = std::map<std::string, long>;

inline constexpr int kMaxNgramOrder = 4;

// All contiguous windows of length n (1..4), with multiplicity.
NgramCounts ngrams(const TokenSequence& tokens, int n);

struct SariComponents {
    double keep_f1 = 0.0;
    double del_precision = 0.0;
    double add_f1 = 0.0;
};

struct SariBreakdown {
    std::array<SariComponents, kMaxNgramOrder> per_n{};  // index 0 is unigrams
    double final = 0.0;                                  // in [0, 100]
};

// Sentence-level SARI. Source and output n-gram counts are scaled by the
// number of references; references are pooled by summing their counts.
// Zero-denominator precision/recall terms count as 1. A deletion counts as
// good up to the amount by which the source exceeds the references.
SariBreakdown sari(std::string_view source, std::string_view output,
                   std::span<const std::string> references);

SariBreakdown sari_tokens(const TokenSequence& source, const TokenSequence& output,
                          std::span<const TokenSequence> references);

// Splits after '.', '!' or '?' when followed by whitespace or end of text.
// Sentences are trimmed; empty ones are dropped.
std::vector<std::string> split_sentences(std::string_view text);

// Vowel-group heuristic. Throws ValidationError when `word` has no letter.
int count_syllables(std::string_view word);

struct FkglReport {
    long n_words = 0;
    long n_sentences = 0;
    long n_syllables = 0;
    double grade = 0.0;
};

// 0.39 * words/sentences + 11.8 * syllables/words - 15.59
double fkgl_grade(long n_words, long n_sentences, long n_syllables);

// Corpus-level grade over pooled counts. Words are tokens containing at least
// one ASCII letter. Throws ValidationError("empty corpus") when there are no
// words or no sentences.
FkglReport fkgl(std::span<const std::string> corpus);

} // namespace ncts

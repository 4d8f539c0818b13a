#include "ncts/metrics.hpp"

#include "ncts/error.hpp"

#include <algorithm>

namespace ncts {

namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_detached_punct(char c)
{
    switch (c) {
    case '.': case ',': case ';': case ':': case '!': case '?':
    case '"': case '\'': case '(': case ')': case '[': case ']':
        return true;
    default:
        return false;
    }
}

bool is_ascii_letter(char c)
{
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

char ascii_lower(char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool is_vowel(char c)
{
    switch (c) {
    case 'a': case 'e': case 'i': case 'o': case 'u': case 'y':
        return true;
    default:
        return false;
    }
}

long lookup(const NgramCounts& counts, const std::string& gram)
{
    auto it = counts.find(gram);
    return it == counts.end() ? 0 : it->second;
}

double ratio_or_one(long num, long den)
{
    return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r)
{
    return (p + r) == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
}

SariComponents sari_order(const TokenSequence& source, const TokenSequence& output,
                          std::span<const TokenSequence> references, int n)
{
    const long r = static_cast<long>(references.size());

    NgramCounts src = ngrams(source, n);
    NgramCounts out = ngrams(output, n);
    for (auto& [gram, count] : src)
        count *= r;
    for (auto& [gram, count] : out)
        count *= r;
    NgramCounts ref;
    for (const auto& tokens : references)
        for (const auto& [gram, count] : ngrams(tokens, n))
            ref[gram] += count;

    // keep and delete are driven by source n-grams
    long keep = 0, keep_good = 0, keep_all = 0;
    long del = 0, del_good = 0;
    for (const auto& [gram, s] : src) {
        const long o = lookup(out, gram);
        const long g = lookup(ref, gram);
        const long k = std::min(s, o);
        keep += k;
        keep_good += std::min(k, g);
        keep_all += std::min(s, g);
        const long d = std::max(0L, s - o);
        del += d;
        del_good += std::min(d, std::max(0L, s - g));
    }

    // add works on distinct n-grams
    long add = 0, add_good = 0, add_all = 0;
    for (const auto& [gram, o] : out) {
        if (src.count(gram))
            continue;
        ++add;
        if (ref.count(gram))
            ++add_good;
    }
    for (const auto& [gram, g] : ref)
        if (!src.count(gram))
            ++add_all;

    SariComponents c;
    c.keep_f1 = harmonic(ratio_or_one(keep_good, keep), ratio_or_one(keep_good, keep_all));
    c.del_precision = ratio_or_one(del_good, del);
    c.add_f1 = harmonic(ratio_or_one(add_good, add), ratio_or_one(add_good, add_all));
    return c;
}

} // namespace

TokenSequence tokenize(std::string_view text)
{
    TokenSequence tokens;
    std::string current;
    auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    };
    for (char c : text) {
        if (is_space(c)) {
            flush();
        } else if (is_detached_punct(c)) {
            flush();
            tokens.emplace_back(1, c);
        } else {
            current.push_back(ascii_lower(c));
        }
    }
    flush();
    return tokens;
}

NgramCounts ngrams(const TokenSequence& tokens, int n)
{
    if (n < 1 || n > kMaxNgramOrder)
        throw ValidationError("n-gram order must be in 1..4, got " + std::to_string(n));
    NgramCounts counts;
    const auto len = tokens.size();
    const auto order = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + order <= len; ++i) {
        std::string gram = tokens[i];
        for (std::size_t j = 1; j < order; ++j) {
            gram += ' ';
            gram += tokens[i + j];
        }
        ++counts[gram];
    }
    return counts;
}

SariBreakdown sari_tokens(const TokenSequence& source, const TokenSequence& output,
                          std::span<const TokenSequence> references)
{
    if (references.empty())
        throw ValidationError("SARI needs at least one reference");
    SariBreakdown result;
    double sum = 0.0;
    for (int n = 1; n <= kMaxNgramOrder; ++n) {
        const SariComponents c = sari_order(source, output, references, n);
        result.per_n[static_cast<std::size_t>(n - 1)] = c;
        sum += (c.keep_f1 + c.del_precision + c.add_f1) / 3.0;
    }
    result.final = 100.0 * (sum / kMaxNgramOrder);
    return result;
}

SariBreakdown sari(std::string_view source, std::string_view output,
                   std::span<const std::string> references)
{
    std::vector<TokenSequence> refs;
    refs.reserve(references.size());
    for (const auto& ref : references)
        refs.push_back(tokenize(ref));
    return sari_tokens(tokenize(source), tokenize(output), refs);
}

std::vector<std::string> split_sentences(std::string_view text)
{
    std::vector<std::string> sentences;
    auto emit = [&](std::string_view piece) {
        while (!piece.empty() && is_space(piece.front()))
            piece.remove_prefix(1);
        while (!piece.empty() && is_space(piece.back()))
            piece.remove_suffix(1);
        if (!piece.empty())
            sentences.emplace_back(piece);
    };
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c != '.' && c != '!' && c != '?')
            continue;
        if (i + 1 == text.size() || is_space(text[i + 1])) {
            emit(text.substr(start, i + 1 - start));
            start = i + 1;
        }
    }
    if (start < text.size())
        emit(text.substr(start));
    return sentences;
}

int count_syllables(std::string_view word)
{
    if (std::none_of(word.begin(), word.end(), is_ascii_letter))
        throw ValidationError("cannot count syllables of '" + std::string(word) +
                              "': no alphabetic character");
    std::string lower;
    lower.reserve(word.size());
    for (char c : word)
        lower.push_back(ascii_lower(c));

    int groups = 0;
    bool in_group = false;
    for (char c : lower) {
        const bool vowel = is_vowel(c);
        if (vowel && !in_group)
            ++groups;
        in_group = vowel;
    }
    const bool silent_e = lower.back() == 'e' &&
                          !(lower.size() >= 2 && lower[lower.size() - 2] == 'l');
    if (silent_e && groups > 1)
        --groups;
    return std::max(1, groups);
}

double fkgl_grade(long n_words, long n_sentences, long n_syllables)
{
    const double words = static_cast<double>(n_words);
    return 0.39 * (words / static_cast<double>(n_sentences)) +
           11.8 * (static_cast<double>(n_syllables) / words) - 15.59;
}

FkglReport fkgl(std::span<const std::string> corpus)
{
    FkglReport report;
    for (const auto& text : corpus) {
        report.n_sentences += static_cast<long>(split_sentences(text).size());
        for (const auto& token : tokenize(text)) {
            if (std::none_of(token.begin(), token.end(), is_ascii_letter))
                continue;
            ++report.n_words;
            report.n_syllables += count_syllables(token);
        }
    }
    if (report.n_words == 0 || report.n_sentences == 0)
        throw ValidationError("empty corpus");
    report.grade = fkgl_grade(report.n_words, report.n_sentences, report.n_syllables);
    return report;
}

} // namespace ncts

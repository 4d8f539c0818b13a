#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace ncts {

// Maximum number of gold references per set (TurkCorpus ships eight).
inline constexpr std::size_t kMaxReferences = 8;

// One beam hypothesis. All log-probabilities are natural logs.
struct Candidate {
    int rank = 0;
    std::string text;
    double logp_direct = 0.0;   // log p(y|x), joint over the sequence
    double logp_channel = 0.0;  // log p(x|y)
    std::vector<double> lm_token_logps;  // one masked-LM term per whitespace token
    std::optional<std::vector<double>> embedding;

    bool operator==(const Candidate&) const = default;
};

// A complex source sentence with its n-best list: the unit of re-ranking.
struct CandidateSet {
    std::string id;
    std::string source;
    std::vector<Candidate> candidates;
    std::optional<std::vector<std::string>> references;
    std::optional<std::vector<double>> source_embedding;

    bool has_references() const { return references.has_value() && !references->empty(); }

    bool operator==(const CandidateSet&) const = default;
};

// Weights of the noisy-channel combination:
//   direct * log p(y|x) + channel * log p(x|y) + lm * log p(y) + length * N
struct LambdaVector {
    double direct = 0.0;
    double channel = 0.0;
    double lm = 0.0;
    double length = 0.0;

    // Throws ValidationError unless every weight is finite and >= 0.
    void validate() const;

    LambdaVector scaled(double factor) const
    {
        return {direct * factor, channel * factor, lm * factor, length * factor};
    }

    bool operator==(const LambdaVector&) const = default;
};

// Parses "a,b,c,d".
LambdaVector parse_lambdas(std::string_view text);
std::string format_lambdas(const LambdaVector& lambdas);

enum class SelectionMethod { FirstBeam, NoisyChannel, Oracle, Cosine };

std::string_view method_name(SelectionMethod method);
SelectionMethod parse_method(std::string_view name);

struct Selection {
    std::string set_id;
    int chosen_rank = 0;
    std::string chosen_text;
    double score = 0.0;
    SelectionMethod method = SelectionMethod::FirstBeam;

    bool operator==(const Selection&) const = default;
};

// Whitespace tokenization used for the length term N and for the masked-LM
// alignment. Splits on ASCII whitespace; never yields empty tokens.
std::vector<std::string_view> whitespace_tokens(std::string_view text);
std::size_t whitespace_token_count(std::string_view text);

struct ParseOptions {
    // Upper bound on candidates per set; 0 disables the check.
    std::size_t max_candidates = 0;
};

// Throws ValidationError naming the set id and offending field.
void validate_candidate_set(const CandidateSet& set, const ParseOptions& options = {});

CandidateSet candidate_set_from_json(const nlohmann::json& record);
nlohmann::ordered_json candidate_set_to_json(const CandidateSet& set);

Selection selection_from_json(const nlohmann::json& record);
nlohmann::ordered_json selection_to_json(const Selection& selection);

// JSON-Lines candidate files. Parsing is all-or-nothing: the first bad line
// aborts the load with its line number; set ids must be unique.
std::vector<CandidateSet> parse_candidates(std::string_view content,
                                           const ParseOptions& options = {});
std::vector<CandidateSet> parse_candidate_file(const std::filesystem::path& path,
                                               const ParseOptions& options = {});
std::string serialize_candidates(const std::vector<CandidateSet>& sets);
void write_candidate_file(const std::filesystem::path& path,
                          const std::vector<CandidateSet>& sets);

std::vector<Selection> parse_selections(std::string_view content);
std::vector<Selection> parse_selection_file(const std::filesystem::path& path);
std::string serialize_selections(const std::vector<Selection>& selections);
void serialize_selections(const std::vector<Selection>& selections,
                          const std::filesystem::path& path);

// Checks a selection against the set it names: rank exists and text matches.
void check_selection_against(const Selection& selection, const CandidateSet& set);

} // namespace ncts

#include "ncts/data_model.hpp"

#include "ncts/error.hpp"
#include "ncts/format.hpp"
#include "ncts/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_set>

namespace ncts {

namespace {

bool is_ascii_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ValidationError(where + ": " + what);
}

const nlohmann::json& require(const nlohmann::json& record, const char* key,
                              const std::string& where)
{
    auto it = record.find(key);
    if (it == record.end())
        fail(where, std::string("missing field '") + key + "'");
    return *it;
}

std::string as_string(const nlohmann::json& value, const std::string& where)
{
    if (!value.is_string())
        fail(where, "expected a string");
    return value.get<std::string>();
}

double as_double(const nlohmann::json& value, const std::string& where)
{
    if (!value.is_number())
        fail(where, "expected a number");
    return value.get<double>();
}

int as_int(const nlohmann::json& value, const std::string& where)
{
    if (!value.is_number_integer())
        fail(where, "expected an integer");
    auto v = value.get<std::int64_t>();
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        fail(where, "integer out of range");
    return static_cast<int>(v);
}

std::vector<double> as_double_array(const nlohmann::json& value, const std::string& where)
{
    if (!value.is_array())
        fail(where, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        out.push_back(as_double(value[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

void check_logprob(double v, const std::string& where)
{
    if (!std::isfinite(v))
        fail(where, "log-probability must be finite");
    if (v > 0.0)
        fail(where, "log-probability must be ≤ 0");
}

void check_embedding(const std::vector<double>& v, const std::string& where)
{
    if (v.empty())
        fail(where, "embedding must not be empty");
    for (double x : v)
        if (!std::isfinite(x))
            fail(where, "embedding values must be finite");
}

} // namespace

void LambdaVector::validate() const
{
    const double values[] = {direct, channel, lm, length};
    for (double v : values) {
        if (!std::isfinite(v))
            throw ValidationError("lambda weights must be finite");
        if (v < 0.0)
            throw ValidationError("lambda weights must be non-negative");
    }
}

LambdaVector parse_lambdas(std::string_view text)
{
    std::vector<double> values;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view part = text.substr(start, comma == std::string_view::npos
                                                       ? std::string_view::npos
                                                       : comma - start);
        while (!part.empty() && is_ascii_space(part.front()))
            part.remove_prefix(1);
        while (!part.empty() && is_ascii_space(part.back()))
            part.remove_suffix(1);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc() || ptr != part.data() + part.size())
            throw ValidationError("invalid lambda value '" + std::string(part) + "'");
        values.push_back(v);
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    if (values.size() != 4)
        throw ValidationError("expected four comma-separated lambda weights, got " +
                              std::to_string(values.size()));
    LambdaVector lambdas{values[0], values[1], values[2], values[3]};
    lambdas.validate();
    return lambdas;
}

std::string format_lambdas(const LambdaVector& l)
{
    return format_shortest(l.direct) + "," + format_shortest(l.channel) + "," +
           format_shortest(l.lm) + "," + format_shortest(l.length);
}

std::string_view method_name(SelectionMethod method)
{
    switch (method) {
    case SelectionMethod::FirstBeam: return "first-beam";
    case SelectionMethod::NoisyChannel: return "noisy-channel";
    case SelectionMethod::Oracle: return "oracle";
    case SelectionMethod::Cosine: return "cosine";
    }
    return "unknown";
}

SelectionMethod parse_method(std::string_view name)
{
    for (auto m : {SelectionMethod::FirstBeam, SelectionMethod::NoisyChannel,
                   SelectionMethod::Oracle, SelectionMethod::Cosine})
        if (method_name(m) == name)
            return m;
    throw ValidationError("unknown selection method '" + std::string(name) + "'");
}

std::vector<std::string_view> whitespace_tokens(std::string_view text)
{
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_ascii_space(text[i]))
            ++i;
        std::size_t start = i;
        while (i < text.size() && !is_ascii_space(text[i]))
            ++i;
        if (i > start)
            tokens.push_back(text.substr(start, i - start));
    }
    return tokens;
}

std::size_t whitespace_token_count(std::string_view text)
{
    return whitespace_tokens(text).size();
}

void validate_candidate_set(const CandidateSet& set, const ParseOptions& options)
{
    const std::string where = "set '" + set.id + "'";
    if (whitespace_token_count(set.source) == 0)
        fail(where + ": source", "source must be non-empty");
    if (set.candidates.empty())
        fail(where + ": candidates", "at least one candidate is required");
    if (options.max_candidates > 0 && set.candidates.size() > options.max_candidates)
        fail(where + ": candidates", "has " + std::to_string(set.candidates.size()) +
                                         " candidates, more than k = " +
                                         std::to_string(options.max_candidates));
    if (set.references) {
        const auto& refs = *set.references;
        if (refs.empty() || refs.size() > kMaxReferences)
            fail(where + ": references", "expected 1 to " + std::to_string(kMaxReferences) +
                                             " references, got " + std::to_string(refs.size()));
        for (std::size_t i = 0; i < refs.size(); ++i)
            if (whitespace_token_count(refs[i]) == 0)
                fail(where + ": references[" + std::to_string(i) + "]",
                     "reference must be non-empty");
    }
    if (set.source_embedding)
        check_embedding(*set.source_embedding, where + ": source_embedding");

    std::optional<std::size_t> dim;
    if (set.source_embedding)
        dim = set.source_embedding->size();
    for (std::size_t i = 0; i < set.candidates.size(); ++i) {
        const Candidate& c = set.candidates[i];
        const std::string cw = where + ": candidates[" + std::to_string(i) + "]";
        if (c.rank != static_cast<int>(i))
            fail(cw + ".rank", "ranks must be contiguous from 0 in ascending order, expected " +
                                   std::to_string(i) + ", got " + std::to_string(c.rank));
        const std::size_t n_tokens = whitespace_token_count(c.text);
        if (n_tokens == 0)
            fail(cw + ".text", "text must be non-empty");
        check_logprob(c.logp_direct, cw + ".logp_direct");
        check_logprob(c.logp_channel, cw + ".logp_channel");
        if (c.lm_token_logps.size() != n_tokens)
            fail(cw + ".lm_token_logps",
                 "has " + std::to_string(c.lm_token_logps.size()) + " entries but text has " +
                     std::to_string(n_tokens) + " whitespace tokens");
        for (std::size_t t = 0; t < c.lm_token_logps.size(); ++t)
            check_logprob(c.lm_token_logps[t], cw + ".lm_token_logps[" + std::to_string(t) + "]");
        if (c.embedding) {
            check_embedding(*c.embedding, cw + ".embedding");
            if (dim && *dim != c.embedding->size())
                fail(cw + ".embedding", "dimension " + std::to_string(c.embedding->size()) +
                                            " differs from " + std::to_string(*dim));
            dim = c.embedding->size();
        }
    }
}

CandidateSet candidate_set_from_json(const nlohmann::json& record)
{
    if (!record.is_object())
        throw ValidationError("record must be a JSON object");
    CandidateSet set;
    set.id = as_string(require(record, "id", "record"), "id");
    const std::string where = "set '" + set.id + "'";
    set.source = as_string(require(record, "source", where), where + ": source");

    if (auto it = record.find("references"); it != record.end()) {
        if (!it->is_array())
            fail(where + ": references", "expected an array of strings");
        std::vector<std::string> refs;
        for (std::size_t i = 0; i < it->size(); ++i)
            refs.push_back(as_string((*it)[i], where + ": references[" + std::to_string(i) + "]"));
        set.references = std::move(refs);
    }
    if (auto it = record.find("source_embedding"); it != record.end())
        set.source_embedding = as_double_array(*it, where + ": source_embedding");

    const auto& cands = require(record, "candidates", where);
    if (!cands.is_array())
        fail(where + ": candidates", "expected an array");
    for (std::size_t i = 0; i < cands.size(); ++i) {
        const auto& rec = cands[i];
        const std::string cw = where + ": candidates[" + std::to_string(i) + "]";
        if (!rec.is_object())
            fail(cw, "expected an object");
        Candidate c;
        c.rank = as_int(require(rec, "rank", cw), cw + ".rank");
        c.text = as_string(require(rec, "text", cw), cw + ".text");
        c.logp_direct = as_double(require(rec, "logp_direct", cw), cw + ".logp_direct");
        c.logp_channel = as_double(require(rec, "logp_channel", cw), cw + ".logp_channel");
        c.lm_token_logps =
            as_double_array(require(rec, "lm_token_logps", cw), cw + ".lm_token_logps");
        if (auto it = rec.find("embedding"); it != rec.end())
            c.embedding = as_double_array(*it, cw + ".embedding");
        set.candidates.push_back(std::move(c));
    }
    return set;
}

nlohmann::ordered_json candidate_set_to_json(const CandidateSet& set)
{
    nlohmann::ordered_json out;
    out["id"] = set.id;
    out["source"] = set.source;
    if (set.references)
        out["references"] = *set.references;
    if (set.source_embedding)
        out["source_embedding"] = *set.source_embedding;
    auto cands = nlohmann::ordered_json::array();
    for (const Candidate& c : set.candidates) {
        nlohmann::ordered_json rec;
        rec["rank"] = c.rank;
        rec["text"] = c.text;
        rec["logp_direct"] = c.logp_direct;
        rec["logp_channel"] = c.logp_channel;
        rec["lm_token_logps"] = c.lm_token_logps;
        if (c.embedding)
            rec["embedding"] = *c.embedding;
        cands.push_back(std::move(rec));
    }
    out["candidates"] = std::move(cands);
    return out;
}

Selection selection_from_json(const nlohmann::json& record)
{
    if (!record.is_object())
        throw ValidationError("record must be a JSON object");
    Selection s;
    s.set_id = as_string(require(record, "set_id", "record"), "set_id");
    const std::string where = "selection '" + s.set_id + "'";
    s.chosen_rank = as_int(require(record, "chosen_rank", where), where + ": chosen_rank");
    if (s.chosen_rank < 0)
        fail(where + ": chosen_rank", "rank must be non-negative");
    s.chosen_text = as_string(require(record, "chosen_text", where), where + ": chosen_text");
    s.score = as_double(require(record, "score", where), where + ": score");
    s.method = parse_method(as_string(require(record, "method", where), where + ": method"));
    return s;
}

nlohmann::ordered_json selection_to_json(const Selection& s)
{
    nlohmann::ordered_json out;
    out["set_id"] = s.set_id;
    out["chosen_rank"] = s.chosen_rank;
    out["chosen_text"] = s.chosen_text;
    out["score"] = s.score;
    out["method"] = std::string(method_name(s.method));
    return out;
}

namespace {

// Applies `convert` to every non-blank line, prefixing errors with the line
// number. Nothing is returned unless every line converts.
template <typename T, typename Convert>
std::vector<T> parse_json_lines(std::string_view content, Convert convert)
{
    std::vector<T> out;
    const auto lines = split_lines(content);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::string& line = lines[i];
        if (whitespace_token_count(line) == 0)
            continue;
        const std::string prefix = "line " + std::to_string(i + 1) + ": ";
        nlohmann::json record;
        try {
            record = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(prefix + "malformed JSON (" + e.what() + ")");
        }
        try {
            out.push_back(convert(record));
        } catch (const ValidationError& e) {
            throw ValidationError(prefix + e.what());
        }
    }
    return out;
}

template <typename T, typename ToJson>
std::string dump_json_lines(const std::vector<T>& items, ToJson to_json)
{
    std::string out;
    for (const T& item : items) {
        try {
            out += to_json(item).dump();
        } catch (const nlohmann::json::type_error& e) {
            throw ValidationError(std::string("cannot serialize record: ") + e.what());
        }
        out += '\n';
    }
    return out;
}

} // namespace

std::vector<CandidateSet> parse_candidates(std::string_view content, const ParseOptions& options)
{
    std::unordered_set<std::string> seen;
    return parse_json_lines<CandidateSet>(content, [&](const nlohmann::json& record) {
        CandidateSet set = candidate_set_from_json(record);
        validate_candidate_set(set, options);
        if (!seen.insert(set.id).second)
            throw ValidationError("duplicate set id '" + set.id + "'");
        return set;
    });
}

std::vector<CandidateSet> parse_candidate_file(const std::filesystem::path& path,
                                               const ParseOptions& options)
{
    return parse_candidates(read_text_file(path), options);
}

std::string serialize_candidates(const std::vector<CandidateSet>& sets)
{
    return dump_json_lines(sets, candidate_set_to_json);
}

void write_candidate_file(const std::filesystem::path& path, const std::vector<CandidateSet>& sets)
{
    write_text_file(path, serialize_candidates(sets));
}

std::vector<Selection> parse_selections(std::string_view content)
{
    std::unordered_set<std::string> seen;
    return parse_json_lines<Selection>(content, [&](const nlohmann::json& record) {
        Selection s = selection_from_json(record);
        if (!seen.insert(s.set_id).second)
            throw ValidationError("duplicate selection for set '" + s.set_id + "'");
        return s;
    });
}

std::vector<Selection> parse_selection_file(const std::filesystem::path& path)
{
    return parse_selections(read_text_file(path));
}

std::string serialize_selections(const std::vector<Selection>& selections)
{
    return dump_json_lines(selections, selection_to_json);
}

void serialize_selections(const std::vector<Selection>& selections,
                          const std::filesystem::path& path)
{
    write_text_file(path, serialize_selections(selections));
}

void check_selection_against(const Selection& selection, const CandidateSet& set)
{
    const std::string where = "selection '" + selection.set_id + "'";
    if (selection.set_id != set.id)
        fail(where, "does not belong to set '" + set.id + "'");
    if (selection.chosen_rank < 0 ||
        static_cast<std::size_t>(selection.chosen_rank) >= set.candidates.size())
        fail(where, "chosen_rank " + std::to_string(selection.chosen_rank) +
                        " does not exist in the set");
    if (set.candidates[static_cast<std::size_t>(selection.chosen_rank)].text !=
        selection.chosen_text)
        fail(where, "chosen_text differs from candidate " +
                        std::to_string(selection.chosen_rank));
}

} // namespace ncts

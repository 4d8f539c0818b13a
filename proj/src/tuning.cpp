#include "ncts/tuning.hpp"

#include "ncts/error.hpp"
#include "ncts/exact_sum.hpp"
#include "ncts/format.hpp"
#include "ncts/io.hpp"
#include "ncts/metrics.hpp"
#include "ncts/rerank.hpp"

#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace ncts {

namespace {

constexpr std::size_t kMaxGridPoints = 10'000'000;

// Smallest number of decimal places that represents `v` exactly enough.
int decimal_places(double v)
{
    double scale = 1.0;
    for (int d = 0; d <= 12; ++d, scale *= 10.0) {
        const double scaled = v * scale;
        if (std::fabs(scaled - std::round(scaled)) <= 1e-9 * std::max(1.0, std::fabs(scaled)))
            return d;
    }
    return 12;
}

struct CandidateFeatures {
    int rank = 0;
    double logp_direct = 0.0;
    double logp_channel = 0.0;
    double logp_lm = 0.0;
    std::size_t n_tokens = 0;
    double sari = 0.0;
};

using SetFeatures = std::vector<CandidateFeatures>;

std::vector<SetFeatures> precompute(const std::vector<CandidateSet>& dev)
{
    std::vector<SetFeatures> out;
    out.reserve(dev.size());
    for (const CandidateSet& set : dev) {
        if (!set.has_references())
            throw ValidationError("set '" + set.id + "' has no references; grid search needs them");
        if (set.candidates.empty())
            throw ValidationError("set '" + set.id + "' has no candidates");
        std::vector<TokenSequence> refs;
        for (const auto& ref : *set.references)
            refs.push_back(tokenize(ref));
        const TokenSequence source = tokenize(set.source);
        SetFeatures features;
        for (const Candidate& c : set.candidates) {
            CandidateFeatures f;
            f.rank = c.rank;
            f.logp_direct = c.logp_direct;
            f.logp_channel = c.logp_channel;
            f.logp_lm = aggregate_lm_logprob(c.lm_token_logps);
            f.n_tokens = whitespace_token_count(c.text);
            f.sari = sari_tokens(source, tokenize(c.text), refs).final;
            features.push_back(f);
        }
        out.push_back(std::move(features));
    }
    return out;
}

// Mirrors rerank_select: the first candidate of the sorted ordering.
double selected_sari(const SetFeatures& set, const LambdaVector& lambdas)
{
    const CandidateFeatures* best = nullptr;
    ScoredCandidate best_score;
    for (const CandidateFeatures& f : set) {
        ScoredCandidate s =
            combine_score(f.logp_direct, f.logp_channel, f.logp_lm, f.n_tokens, lambdas);
        s.rank = f.rank;
        if (best == nullptr || ranks_before(s, best_score)) {
            best = &f;
            best_score = s;
        }
    }
    return best->sari;
}

bool lexicographically_less(const LambdaVector& a, const LambdaVector& b)
{
    if (a.direct != b.direct) return a.direct < b.direct;
    if (a.channel != b.channel) return a.channel < b.channel;
    if (a.lm != b.lm) return a.lm < b.lm;
    return a.length < b.length;
}

double parse_double(std::string_view text, std::string_view what)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size())
        throw ValidationError("invalid " + std::string(what) + " '" + std::string(text) + "'");
    return v;
}

} // namespace

void GridSpec::validate() const
{
    if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step))
        throw ValidationError("grid bounds and step must be finite");
    if (min < 0.0)
        throw ValidationError("grid minimum must be non-negative");
    if (min > max)
        throw ValidationError("grid minimum exceeds maximum");
    if (step <= 0.0)
        throw ValidationError("grid step must be positive");
    const double per_axis = std::floor((max - min) / step + 1e-9) + 1.0;
    if (per_axis * per_axis * per_axis * per_axis > static_cast<double>(kMaxGridPoints))
        throw ValidationError("grid has more than " + std::to_string(kMaxGridPoints) + " points");
}

std::vector<double> GridSpec::axis() const
{
    validate();
    const int places = std::max(decimal_places(min), decimal_places(step));
    const double scale = std::pow(10.0, places);
    const double min_units = std::round(min * scale);
    const double step_units = std::round(step * scale);
    const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;

    std::vector<double> values;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        values.push_back((min_units + static_cast<double>(i) * step_units) / scale);
    return values;
}

std::vector<LambdaVector> enumerate_grid(const GridSpec& spec)
{
    const auto axis = spec.axis();
    std::vector<LambdaVector> grid;
    grid.reserve(axis.size() * axis.size() * axis.size() * axis.size());
    for (double a : axis)
        for (double b : axis)
            for (double c : axis)
                for (double d : axis)
                    grid.push_back({a, b, c, d});
    return grid;
}

double dev_sari_at(const std::vector<CandidateSet>& dev, const LambdaVector& lambdas)
{
    if (dev.empty())
        throw ValidationError("empty development corpus");
    std::vector<double> scores;
    scores.reserve(dev.size());
    for (const CandidateSet& set : dev) {
        if (!set.has_references())
            throw ValidationError("set '" + set.id + "' has no references");
        const Selection chosen = rerank_select(set, lambdas);
        scores.push_back(sari(set.source, chosen.chosen_text, *set.references).final);
    }
    return exact_mean(scores);
}

GridResult grid_search(const std::vector<CandidateSet>& dev, const GridSpec& spec,
                       const GridSearchOptions& options)
{
    if (dev.empty())
        throw ValidationError("empty development corpus");
    const auto grid = enumerate_grid(spec);
    for (const LambdaVector& l : grid)
        l.validate();
    const auto features = precompute(dev);

    std::vector<double> sari_at(grid.size());
    auto evaluate_range = [&](std::size_t begin, std::size_t end) {
        std::vector<double> per_set(features.size());
        for (std::size_t g = begin; g < end; ++g) {
            for (std::size_t s = 0; s < features.size(); ++s)
                per_set[s] = selected_sari(features[s], grid[g]);
            sari_at[g] = exact_mean(per_set);
        }
    };

    unsigned threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(grid.size())));
    if (threads == 1) {
        evaluate_range(0, grid.size());
    } else {
        std::exception_ptr failure;
        std::mutex failure_mutex;
        {
            std::vector<std::jthread> workers;
            const std::size_t chunk = (grid.size() + threads - 1) / threads;
            for (unsigned t = 0; t < threads; ++t) {
                const std::size_t begin = t * chunk;
                const std::size_t end = std::min(grid.size(), begin + chunk);
                if (begin >= end)
                    break;
                workers.emplace_back([&, begin, end] {
                    try {
                        evaluate_range(begin, end);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                });
            }
        }
        if (failure)
            std::rethrow_exception(failure);
    }

    GridResult result;
    result.n_evaluated = grid.size();
    std::size_t best = 0;
    for (std::size_t g = 1; g < grid.size(); ++g) {
        if (sari_at[g] > sari_at[best] ||
            (sari_at[g] == sari_at[best] && lexicographically_less(grid[g], grid[best])))
            best = g;
    }
    result.best_lambda = grid[best];
    result.dev_sari = sari_at[best];
    if (options.keep_full_table) {
        std::vector<GridRow> rows;
        rows.reserve(grid.size());
        for (std::size_t g = 0; g < grid.size(); ++g)
            rows.push_back({grid[g], sari_at[g]});
        result.full_table = std::move(rows);
    }
    return result;
}

std::string grid_result_to_json(const GridResult& result)
{
    nlohmann::ordered_json out;
    const auto& l = result.best_lambda;
    out["best_lambda"] = {l.direct, l.channel, l.lm, l.length};
    out["dev_sari"] = result.dev_sari;
    out["n_evaluated"] = result.n_evaluated;
    return out.dump() + "\n";
}

GridResult parse_grid_result(std::string_view content)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(content);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValidationError(std::string("malformed grid result JSON (") + e.what() + ")");
    }
    if (!doc.is_object())
        throw ValidationError("grid result must be a JSON object");
    const auto lam = doc.find("best_lambda");
    if (lam == doc.end() || !lam->is_array() || lam->size() != 4)
        throw ValidationError("grid result: best_lambda must be an array of four numbers");
    for (const auto& v : *lam)
        if (!v.is_number())
            throw ValidationError("grid result: best_lambda must be an array of four numbers");
    const auto sari_it = doc.find("dev_sari");
    if (sari_it == doc.end() || !sari_it->is_number())
        throw ValidationError("grid result: dev_sari must be a number");
    const auto n_it = doc.find("n_evaluated");
    if (n_it == doc.end() || !n_it->is_number_unsigned())
        throw ValidationError("grid result: n_evaluated must be a non-negative integer");

    GridResult result;
    result.best_lambda = {(*lam)[0].get<double>(), (*lam)[1].get<double>(),
                          (*lam)[2].get<double>(), (*lam)[3].get<double>()};
    result.best_lambda.validate();
    result.dev_sari = sari_it->get<double>();
    result.n_evaluated = n_it->get<std::size_t>();
    return result;
}

std::string grid_table_tsv(const std::vector<GridRow>& rows)
{
    std::string out = "l1\tl2\tl3\tl4\tsari\n";
    for (const GridRow& row : rows) {
        const auto& l = row.lambdas;
        out += format_shortest(l.direct) + '\t' + format_shortest(l.channel) + '\t' +
               format_shortest(l.lm) + '\t' + format_shortest(l.length) + '\t' +
               format_shortest(row.sari) + '\n';
    }
    return out;
}

std::vector<GridRow> parse_grid_table_tsv(std::string_view content)
{
    const auto lines = split_lines(content);
    if (lines.empty() || lines.front() != "l1\tl2\tl3\tl4\tsari")
        throw ValidationError("grid table: missing header 'l1 l2 l3 l4 sari'");
    std::vector<GridRow> rows;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        std::vector<std::string_view> cells;
        std::string_view line = lines[i];
        std::size_t start = 0;
        while (true) {
            const std::size_t tab = line.find('\t', start);
            cells.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
            if (tab == std::string_view::npos)
                break;
            start = tab + 1;
        }
        if (cells.size() != 5)
            throw ValidationError("grid table line " + std::to_string(i + 1) +
                                  ": expected 5 columns");
        GridRow row;
        row.lambdas = {parse_double(cells[0], "l1"), parse_double(cells[1], "l2"),
                       parse_double(cells[2], "l3"), parse_double(cells[3], "l4")};
        row.sari = parse_double(cells[4], "sari");
        rows.push_back(row);
    }
    return rows;
}

} // namespace ncts

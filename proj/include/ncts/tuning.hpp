#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncts/data_model.hpp"

namespace ncts {

// The same axis is used for all four weights.
struct GridSpec {
    double min = 0.0;
    double max = 1.0;
    double step = 0.1;

    void validate() const;

    // min + i*step for i = 0..floor((max-min)/step + eps), each value the
    // double nearest to the exact decimal.
    std::vector<double> axis() const;
};

// Cartesian product of four axes, lexicographic in (direct, channel, lm, length).
std::vector<LambdaVector> enumerate_grid(const GridSpec& spec);

struct GridRow {
    LambdaVector lambdas;
    double sari = 0.0;
};

struct GridResult {
    LambdaVector best_lambda;
    double dev_sari = 0.0;
    std::size_t n_evaluated = 0;
    std::optional<std::vector<GridRow>> full_table;
};

struct GridSearchOptions {
    bool keep_full_table = false;
    unsigned threads = 1;  // 0 picks hardware concurrency
};

// Mean sentence SARI of the selections produced by rerank_select(lambdas).
double dev_sari_at(const std::vector<CandidateSet>& dev, const LambdaVector& lambdas);

// Exhaustive search maximizing mean sentence SARI of noisy-channel selections.
// Among maximizers the lexicographically smallest weight vector wins. The
// result does not depend on thread count or on the order of `dev`.
GridResult grid_search(const std::vector<CandidateSet>& dev, const GridSpec& spec,
                       const GridSearchOptions& options = {});

// {"best_lambda":[f,f,f,f],"dev_sari":f,"n_evaluated":int}
std::string grid_result_to_json(const GridResult& result);
GridResult parse_grid_result(std::string_view content);

// Header "l1\tl2\tl3\tl4\tsari" followed by one row per grid point.
std::string grid_table_tsv(const std::vector<GridRow>& rows);
std::vector<GridRow> parse_grid_table_tsv(std::string_view content);

} // namespace ncts

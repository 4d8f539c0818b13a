#include "ncts/cli.hpp"

#include "ncts/ab_test.hpp"
#include "ncts/data_model.hpp"
#include "ncts/error.hpp"
#include "ncts/io.hpp"
#include "ncts/report.hpp"
#include "ncts/rerank.hpp"
#include "ncts/tuning.hpp"

#include "CLI11.hpp"

#include <functional>
#include <optional>
#include <ostream>

namespace ncts {

namespace {

struct NamedPath {
    std::string name;
    std::string path;
};

// "name=path"; a bare path takes `fallback_name`.
NamedPath split_named_path(const std::string& arg, const std::string& fallback_name)
{
    const auto eq = arg.find('=');
    if (eq == std::string::npos)
        return {fallback_name, arg};
    if (eq == 0 || eq + 1 == arg.size())
        throw ValidationError("expected NAME=FILE, got '" + arg + "'");
    return {arg.substr(0, eq), arg.substr(eq + 1)};
}

using SelectFn = std::function<Selection(const CandidateSet&)>;

void write_selections_for(const std::string& input, const std::string& output,
                          std::size_t max_k, const SelectFn& select)
{
    const auto sets = parse_candidate_file(input, ParseOptions{max_k});
    std::vector<Selection> selections;
    selections.reserve(sets.size());
    for (const auto& set : sets)
        selections.push_back(select(set));
    serialize_selections(selections, output);
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Noisy-channel re-ranking and evaluation for sentence simplification", "ncts"};
    app.require_subcommand(1);

    std::string input, output, lambdas_arg, full_table, candidates_path, baseline, table_path;
    std::string a_arg, b_arg, sample_path, key_path, tally_output;
    std::vector<std::string> selection_args, judgment_paths;
    std::size_t max_k = 0, n_items = 0;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    GridSpec grid;

    auto add_input = [&](CLI::App* cmd) {
        cmd->add_option("--input", input, "Candidate file (JSON-Lines)")->required();
        cmd->add_option("--output", output, "Output file")->required();
        cmd->add_option("--k", max_k, "Reject sets with more than k candidates (0: no limit)");
    };

    auto* rerank_cmd = app.add_subcommand("rerank", "Select candidates by the noisy-channel score");
    add_input(rerank_cmd);
    rerank_cmd->add_option("--lambdas", lambdas_arg, "Weights l1,l2,l3,l4")->required();

    auto* first_cmd = app.add_subcommand("firstbeam", "Select the rank-0 candidate of every set");
    add_input(first_cmd);

    auto* oracle_cmd = app.add_subcommand("oracle", "Select the candidate with the best SARI");
    add_input(oracle_cmd);

    auto* cosine_cmd =
        app.add_subcommand("cosine", "Select the candidate most similar to the source");
    add_input(cosine_cmd);

    auto* grid_cmd = app.add_subcommand("gridsearch", "Tune the weights on a development set");
    add_input(grid_cmd);
    grid_cmd->add_option("--grid-min", grid.min, "Smallest weight")->capture_default_str();
    grid_cmd->add_option("--grid-max", grid.max, "Largest weight")->capture_default_str();
    grid_cmd->add_option("--grid-step", grid.step, "Grid increment")->capture_default_str();
    grid_cmd->add_option("--full-table", full_table, "Also write every grid point as TSV");
    grid_cmd->add_option("--threads", threads, "Worker threads (0: all cores)")
        ->capture_default_str();

    auto* eval_cmd = app.add_subcommand("evaluate", "Score systems with SARI and FKGL");
    eval_cmd->add_option("--candidates", candidates_path, "Candidate file with references")
        ->required();
    eval_cmd->add_option("--selections", selection_args, "NAME=FILE per system")->required();
    eval_cmd->add_option("--baseline", baseline, "System that deltas are measured against");
    eval_cmd->add_option("--output", output, "JSON report")->required();
    eval_cmd->add_option("--table", table_path, "Also write the text table to this file");

    auto* sample_cmd = app.add_subcommand("absample", "Draw a blinded, length-stratified A/B sample");
    sample_cmd->add_option("--candidates", candidates_path, "Candidate file (source sentences)")
        ->required();
    sample_cmd->add_option("--a", a_arg, "[NAME=]FILE selections of system A")->required();
    sample_cmd->add_option("--b", b_arg, "[NAME=]FILE selections of system B")->required();
    sample_cmd->add_option("--n", n_items, "Number of items")->required();
    sample_cmd->add_option("--seed", seed, "RNG seed")->required();
    sample_cmd->add_option("--sample", sample_path, "Blinded sample output")->required();
    sample_cmd->add_option("--key", key_path, "Key output")->required();

    auto* tally_cmd = app.add_subcommand("tally", "Un-blind judgments and count them by quartile");
    tally_cmd->add_option("--judgments", judgment_paths, "Judgment files (one per annotator)")
        ->required();
    tally_cmd->add_option("--key", key_path, "Key written by absample")->required();
    tally_cmd->add_option("--output", tally_output, "Also write the pooled tally as JSON");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitSuccess : kExitValidation;
    }

    try {
        if (rerank_cmd->parsed()) {
            const LambdaVector lambdas = parse_lambdas(lambdas_arg);
            write_selections_for(input, output, max_k, [&](const CandidateSet& set) {
                return rerank_select(set, lambdas);
            });
        } else if (first_cmd->parsed()) {
            write_selections_for(input, output, max_k, first_beam_select);
        } else if (oracle_cmd->parsed()) {
            write_selections_for(input, output, max_k, oracle_select);
        } else if (cosine_cmd->parsed()) {
            write_selections_for(input, output, max_k, cosine_select);
        } else if (grid_cmd->parsed()) {
            const auto dev = parse_candidate_file(input, ParseOptions{max_k});
            GridSearchOptions options;
            options.keep_full_table = !full_table.empty();
            options.threads = threads;
            const GridResult result = grid_search(dev, grid, options);
            write_text_file(output, grid_result_to_json(result));
            if (result.full_table)
                write_text_file(full_table, grid_table_tsv(*result.full_table));
            out << "best lambdas " << format_lambdas(result.best_lambda) << "  dev SARI "
                << result.dev_sari << "  (" << result.n_evaluated << " points)\n";
        } else if (eval_cmd->parsed()) {
            const auto sets = parse_candidate_file(candidates_path);
            std::vector<NamedSelections> systems;
            for (std::size_t i = 0; i < selection_args.size(); ++i) {
                const auto np = split_named_path(selection_args[i], "");
                if (np.name.empty())
                    throw ValidationError("--selections expects NAME=FILE, got '" +
                                          selection_args[i] + "'");
                systems.push_back({np.name, parse_selection_file(np.path)});
            }
            const std::optional<std::string> base =
                baseline.empty() ? std::nullopt : std::optional<std::string>(baseline);
            const auto reports = evaluate_systems(sets, systems, base);
            write_text_file(output, reports_to_json(reports, base));
            const std::string table = reports_to_table(reports);
            if (!table_path.empty())
                write_text_file(table_path, table);
            out << table;
        } else if (sample_cmd->parsed()) {
            const auto sets = parse_candidate_file(candidates_path);
            const auto na = split_named_path(a_arg, "A");
            const auto nb = split_named_path(b_arg, "B");
            const SystemOutputs a{na.name, parse_selection_file(na.path)};
            const SystemOutputs b{nb.name, parse_selection_file(nb.path)};
            const auto [sample, key] = draw_ab_sample(sets, a, b, n_items, seed);
            write_text_file(sample_path, ab_sample_to_json(sample));
            write_text_file(key_path, ab_key_to_json(key));
            out << "sampled " << sample.items.size() << " of " << sample.pool_size
                << " differing items (" << sample.excluded_identical
                << " identical outputs excluded)\n";
        } else if (tally_cmd->parsed()) {
            const AbKey key = parse_ab_key(read_text_file(key_path));
            std::optional<TallyTable> pooled;
            for (const auto& path : judgment_paths) {
                TallyTable t = tally(parse_judgments(read_text_file(path)), key);
                if (judgment_paths.size() > 1)
                    out << "# " << path << "\n" << format_tally(t) << "\n";
                pooled = pooled ? merge_tallies(*pooled, t) : t;
            }
            if (judgment_paths.size() > 1)
                out << "# pooled\n";
            out << format_tally(*pooled);
            if (!tally_output.empty())
                write_text_file(tally_output, tally_to_json(*pooled));
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitSuccess;
}

} // namespace ncts

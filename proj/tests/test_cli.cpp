#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncts/ab_test.hpp"
#include "ncts/cli.hpp"
#include "ncts/data_model.hpp"
#include "ncts/io.hpp"
#include "ncts/tuning.hpp"

#include <filesystem>
#include <regex>
#include <sstream>

using namespace ncts;
namespace fs = std::filesystem;

namespace {

const fs::path kSourceDir = NCTS_SOURCE_DIR;
const fs::path kToy = kSourceDir / "data" / "toy_candidates.jsonl";

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ncts");
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "ncts_cli_test";
    fs::create_directories(dir);
    return dir / name;
}

} // namespace

TEST_CASE("selection commands")
{
    for (const std::string cmd : {"firstbeam", "oracle", "cosine"}) {
        const auto out = scratch(cmd + ".jsonl");
        const Run r = run({cmd, "--input", kToy.string(), "--output", out.string()});
        CHECK_MESSAGE(r.code == 0, r.err);
        CHECK(parse_selection_file(out).size() == 20);
    }
    const auto out = scratch("rerank.jsonl");
    const Run r = run({"rerank", "--input", kToy.string(), "--lambdas", "0.5,0,0.1,0.6", "--output",
                       out.string()});
    CHECK(r.code == 0);
    const auto sel = parse_selection_file(out);
    REQUIRE(sel.size() == 20);
    CHECK(sel[0].method == SelectionMethod::NoisyChannel);
}

TEST_CASE("exit codes")
{
    SUBCASE("unknown subcommand and missing flags")
    {
        CHECK(run({"frobnicate"}).code == kExitValidation);
        CHECK(run({"rerank", "--input", kToy.string()}).code == kExitValidation);
        CHECK(run({}).code == kExitValidation);
    }
    SUBCASE("bad lambdas")
    {
        const Run r = run({"rerank", "--input", kToy.string(), "--lambdas", "1,2", "--output",
                           scratch("x.jsonl").string()});
        CHECK(r.code == kExitValidation);
        CHECK(r.err.find("error:") != std::string::npos);
    }
    SUBCASE("missing input file")
    {
        CHECK(run({"oracle", "--input", "/nonexistent/in.jsonl", "--output",
                   scratch("y.jsonl").string()})
                  .code == kExitIo);
    }
    SUBCASE("unwritable output")
    {
        CHECK(run({"oracle", "--input", kToy.string(), "--output", "/nonexistent/dir/o.jsonl"})
                  .code == kExitIo);
    }
    SUBCASE("invalid candidate file")
    {
        const auto bad = scratch("bad.jsonl");
        write_text_file(bad, "{\"id\":\"x\"}\n");
        const Run r = run({"oracle", "--input", bad.string(), "--output", scratch("z.jsonl").string()});
        CHECK(r.code == kExitValidation);
        CHECK(r.err.find("line 1") != std::string::npos);
    }
    SUBCASE("k limit")
    {
        CHECK(run({"firstbeam", "--input", kToy.string(), "--k", "2", "--output",
                   scratch("k.jsonl").string()})
                  .code == kExitValidation);
    }
    SUBCASE("help")
    {
        CHECK(run({"--help"}).code == kExitSuccess);
    }
}

TEST_CASE("gridsearch, evaluate, absample and tally")
{
    const auto grid_out = scratch("grid.json");
    const auto table = scratch("grid.tsv");
    Run r = run({"gridsearch", "--input", kToy.string(), "--grid-step", "0.5", "--full-table",
                 table.string(), "--threads", "2", "--output", grid_out.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const GridResult g = parse_grid_result(read_text_file(grid_out));
    CHECK(g.n_evaluated == 81);
    CHECK(parse_grid_table_tsv(read_text_file(table)).size() == 81);

    const auto base = scratch("base.jsonl");
    const auto nc = scratch("nc.jsonl");
    REQUIRE(run({"firstbeam", "--input", kToy.string(), "--output", base.string()}).code == 0);
    REQUIRE(run({"rerank", "--input", kToy.string(), "--lambdas", format_lambdas(g.best_lambda),
                 "--output", nc.string()})
                .code == 0);

    const auto report = scratch("report.json");
    const auto text_table = scratch("report.tsv");
    r = run({"evaluate", "--candidates", kToy.string(), "--selections", "BART=" + base.string(),
             "NC-TS=" + nc.string(), "--baseline", "BART", "--output", report.string(), "--table",
             text_table.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(std::regex_search(r.out, std::regex(R"(NC-TS\s+\d+\.\d\d \([+-]\d+\.\d\))")));
    CHECK(read_text_file(text_table) == r.out);

    const auto sample = scratch("sample.json");
    const auto key = scratch("key.json");
    r = run({"absample", "--candidates", kToy.string(), "--a", "BART=" + base.string(), "--b",
             "NC-TS=" + nc.string(), "--n", "8", "--seed", "7", "--sample", sample.string(), "--key",
             key.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const AbSample s = parse_ab_sample(read_text_file(sample));
    CHECK(s.items.size() == 8);

    std::vector<Judgment> judgments;
    for (const auto& item : s.items)
        judgments.push_back({item.id, Choice::Right});
    const auto jfile = scratch("judgments.jsonl");
    write_text_file(jfile, serialize_judgments(judgments));
    r = run({"tally", "--judgments", jfile.string(), "--key", key.string()});
    CHECK_MESSAGE(r.code == 0, r.err);
    CHECK(r.out.find("Total") != std::string::npos);

    const auto unknown = scratch("unknown.jsonl");
    write_text_file(unknown, "{\"id\":\"nope\",\"choice\":\"left\"}\n");
    r = run({"tally", "--judgments", unknown.string(), "--key", key.string()});
    CHECK(r.code == kExitValidation);
    CHECK(r.err.find("nope") != std::string::npos);
}

TEST_CASE("tally fixture gives 15/30/5 totals")
{
    const auto key = kSourceDir / "tests" / "data" / "tally_key.json";
    const auto judgments = kSourceDir / "tests" / "data" / "tally_judgments.jsonl";
    const auto json = scratch("tally.json");
    const Run r = run({"tally", "--judgments", judgments.string(), "--key", key.string(),
                       "--output", json.string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    const TallyTable t = tally(parse_judgments(read_text_file(judgments)),
                               parse_ab_key(read_text_file(key)));
    CHECK(t.counts[0] == std::array<int, 4>{5, 4, 3, 3});
    CHECK(t.counts[1] == std::array<int, 4>{6, 8, 9, 7});
    CHECK(t.counts[2] == std::array<int, 4>{1, 1, 1, 2});
    CHECK(t.row_total(0) == 15);
    CHECK(t.row_total(1) == 30);
    CHECK(t.row_total(2) == 5);
    CHECK(r.out == format_tally(t));
}

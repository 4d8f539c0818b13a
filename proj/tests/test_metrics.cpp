#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ncts/error.hpp"
#include "ncts/exact_sum.hpp"
#include "ncts/metrics.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace ncts;

TEST_CASE("tokenize")
{
    CHECK(tokenize("The cat sat.") == TokenSequence{"the", "cat", "sat", "."});
    CHECK(tokenize("").empty());
    CHECK(tokenize("Don't stop") == TokenSequence{"don", "'", "t", "stop"});
    CHECK(tokenize("(A) [b]; \"c\"!?") ==
          TokenSequence{"(", "a", ")", "[", "b", "]", ";", "\"", "c", "\"", "!", "?"});
    CHECK(tokenize("  Mixed\tCASE\nwords ") == TokenSequence{"mixed", "case", "words"});
}

TEST_CASE("ngrams")
{
    const NgramCounts uni = ngrams({"a", "b", "a"}, 1);
    CHECK(uni.size() == 2);
    CHECK(uni.at("a") == 2);
    CHECK(uni.at("b") == 1);

    const NgramCounts bi = ngrams({"a", "b", "c"}, 2);
    CHECK(bi == NgramCounts{{"a b", 1}, {"b c", 1}});

    CHECK(ngrams({"a", "b"}, 3).empty());
    CHECK_THROWS_AS(ngrams({"a"}, 0), ValidationError);
    CHECK_THROWS_AS(ngrams({"a"}, 5), ValidationError);
}

TEST_CASE("ngram totals equal the window count")
{
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const auto tokens = tokenize(testing::random_sentence(rng, 0, 12));
        for (int n = 1; n <= 4; ++n) {
            long sum = 0;
            for (const auto& [g, c] : ngrams(tokens, n))
                sum += c;
            const long expected = std::max(0L, static_cast<long>(tokens.size()) - n + 1);
            CHECK(sum == expected);
        }
    }
}

TEST_CASE("SARI hand cases")
{
    const std::vector<std::string> s{"the quick brown fox jumps ."};
    CHECK(sari(s[0], s[0], s).final == 100.0);

    const std::vector<std::string> ref{"a b"};
    const SariBreakdown b = sari("a b c", "a b", ref);
    CHECK(b.final == 100.0);
    for (const auto& c : b.per_n) {
        CHECK(c.keep_f1 == 1.0);
        CHECK(c.del_precision == 1.0);
        CHECK(c.add_f1 == 1.0);
    }

    CHECK_THROWS_AS(sari("a", "a", std::vector<std::string>{}), ValidationError);
}

TEST_CASE("SARI partial credit matches hand enumeration")
{
    // source "a b", output "a c", reference "a d"; r = 1.
    // n=1: keep K={a}, Kgood={a}, Kall={a} -> 1; delete D={b}, Dgood={b} -> 1;
    //      add A={c}, Agood={}, Aall={d} -> P=0, R=0 -> 0.  order mean = 2/3.
    // n=2: K={}, Kall={} -> 1; D={ab}, Dgood={ab} -> 1; A={ac}, Agood={}, Aall={ad} -> 0.
    // n=3,4: everything empty -> 1.
    const std::vector<std::string> ref{"a d"};
    const SariBreakdown b = sari("a b", "a c", ref);
    CHECK(b.per_n[0].add_f1 == 0.0);
    CHECK(b.per_n[1].add_f1 == 0.0);
    CHECK(b.per_n[2].add_f1 == 1.0);
    CHECK(b.final == doctest::Approx(100.0 * (2.0 / 3.0 + 2.0 / 3.0 + 1.0 + 1.0) / 4.0));
}

TEST_CASE("SARI credits deleting one copy of a repeated n-gram")
{
    // "the" occurs twice in the source and once in the output and reference.
    const std::vector<std::string> ref{"the cat sat ."};
    const SariBreakdown b = sari("the old cat sat on the mat .", "the cat sat .", ref);
    CHECK(b.per_n[0].del_precision == 1.0);
    CHECK(b.final == 100.0);
}

TEST_CASE("SARI agrees with the brute-force oracle")
{
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> nrefs(1, 3);
    for (int trial = 0; trial < 300; ++trial) {
        const auto src = tokenize(testing::random_sentence(rng, 0, 8, 6));
        const auto out = tokenize(testing::random_sentence(rng, 0, 8, 6));
        std::vector<TokenSequence> refs;
        const int r = nrefs(rng);
        for (int i = 0; i < r; ++i)
            refs.push_back(tokenize(testing::random_sentence(rng, 0, 8, 6)));
        const SariBreakdown got = sari_tokens(src, out, refs);
        const auto want = testing::brute_force_sari(src, out, refs);
        for (int n = 0; n < 4; ++n) {
            CHECK(got.per_n[n].keep_f1 == doctest::Approx(want.keep[n]).epsilon(1e-12));
            CHECK(got.per_n[n].del_precision == doctest::Approx(want.del[n]).epsilon(1e-12));
            CHECK(got.per_n[n].add_f1 == doctest::Approx(want.add[n]).epsilon(1e-12));
        }
        CHECK(std::fabs(got.final - want.final) <= 1e-9);
    }
}

TEST_CASE("SARI properties")
{
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string s = testing::random_sentence(rng, 1, 12);
        const std::string o = testing::random_sentence(rng, 1, 12);
        std::vector<std::string> refs{testing::random_sentence(rng, 1, 12),
                                      testing::random_sentence(rng, 1, 12),
                                      testing::random_sentence(rng, 1, 12)};
        const SariBreakdown b = sari(s, o, refs);
        CHECK(b.final >= 0.0);
        CHECK(b.final <= 100.0);
        double mean = 0;
        for (const auto& c : b.per_n) {
            for (double v : {c.keep_f1, c.del_precision, c.add_f1}) {
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
            }
            mean += (c.keep_f1 + c.del_precision + c.add_f1) / 3.0;
        }
        CHECK(std::fabs(b.final - 100.0 * mean / 4.0) <= 1e-9);

        std::vector<std::string> permuted{refs[2], refs[0], refs[1]};
        CHECK(sari(s, o, permuted).final == b.final);
        CHECK(sari(s, o, refs).final == b.final);
        CHECK(sari(s, s, std::vector<std::string>{s}).final == 100.0);
    }
}

TEST_CASE("split_sentences")
{
    CHECK(split_sentences("A b. C d!") == std::vector<std::string>{"A b.", "C d!"});
    CHECK(split_sentences("no terminator") == std::vector<std::string>{"no terminator"});
    CHECK(split_sentences("").empty());
    CHECK(split_sentences("   ").empty());
    CHECK(split_sentences("Wait... what? Yes") ==
          std::vector<std::string>{"Wait...", "what?", "Yes"});
    CHECK(split_sentences("e.g.this stays") == std::vector<std::string>{"e.g.this stays"});
}

TEST_CASE("count_syllables")
{
    CHECK(count_syllables("cat") == 1);
    CHECK(count_syllables("simple") == 2);
    CHECK(count_syllables("queue") == 1);
    CHECK(count_syllables("make") == 1);
    CHECK(count_syllables("the") == 1);
    CHECK(count_syllables("rhythm") == 1);
    CHECK(count_syllables("extraordinarily") == 6);
    CHECK(count_syllables("hmm") == 1);
    CHECK_THROWS_AS(count_syllables("123"), ValidationError);
    CHECK_THROWS_AS(count_syllables(""), ValidationError);
}

TEST_CASE("fkgl")
{
    const std::vector<std::string> corpus{"the cat sat on the mat ."};
    const FkglReport r = fkgl(corpus);
    CHECK(r.n_words == 6);
    CHECK(r.n_sentences == 1);
    CHECK(r.n_syllables == 6);
    CHECK(r.grade == doctest::Approx(-1.45).epsilon(1e-12));
    CHECK(std::fabs(r.grade - (0.39 * 6 + 11.8 * 1 - 15.59)) <= 1e-9);

    CHECK_THROWS_WITH_AS(fkgl(std::vector<std::string>{}), "empty corpus", ValidationError);
    CHECK_THROWS_AS(fkgl(std::vector<std::string>{". , !"}), ValidationError);
}

TEST_CASE("fkgl: appending a five-syllable one-word sentence")
{
    const std::vector<std::string> base{"the cat sat on the mat .", "a dog ran ."};
    const FkglReport before = fkgl(base);
    auto extended = base;
    extended.push_back("extraordinary .");
    const FkglReport after = fkgl(extended);
    const int syl = count_syllables("extraordinary");
    CHECK(after.n_words == before.n_words + 1);
    CHECK(after.n_sentences == before.n_sentences + 1);
    CHECK(after.n_syllables == before.n_syllables + syl);
    CHECK(after.grade ==
          doctest::Approx(0.39 * double(after.n_words) / double(after.n_sentences) +
                          11.8 * double(after.n_syllables) / double(after.n_words) - 15.59));

    auto five = base;
    five.push_back("unbelievably .");  // u, e, ie, a, y -> 5 groups
    CHECK(count_syllables("unbelievably") == 5);
    const FkglReport with_five = fkgl(five);
    CHECK(double(with_five.n_syllables) / double(with_five.n_words) >
          double(before.n_syllables) / double(before.n_words));
    CHECK(with_five.grade == doctest::Approx(fkgl_grade(9 + 1, 3, before.n_syllables + 5)));
}

TEST_CASE("exact_sum is correctly rounded and order independent")
{
    CHECK(exact_sum(std::vector<double>{}) == 0.0);
    CHECK(exact_sum(std::vector<double>{1e100, 1.0, -1e100}) == 1.0);
    CHECK(exact_sum(std::vector<double>{0.1, 0.2, 0.3}) == 0.6);
    std::vector<double> xs;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i)
        xs.push_back(u(rng));
    const double forward = exact_sum(xs);
    std::shuffle(xs.begin(), xs.end(), rng);
    CHECK(exact_sum(xs) == forward);
    CHECK_THROWS(exact_mean(std::vector<double>{}));
}

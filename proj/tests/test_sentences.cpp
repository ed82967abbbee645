#include "subtitler/sentences.hpp"

#include "generators.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace subtitler;

TEST_CASE("terminators end sentences, trailing fragments close the last one")
{
    CHECK(split_sentences({"Ahoj", "svete", "."}).lengths == std::vector<std::size_t>{3});
    CHECK(split_sentences({"A", ".", "B", "?"}).lengths == std::vector<std::size_t>{2, 2});
    CHECK(split_sentences({"Hello", "world"}).lengths == std::vector<std::size_t>{2});
    CHECK(split_sentences({}).count() == 0);
    CHECK(split_sentences({"Na!", "dobrou", "noc."}).lengths == std::vector<std::size_t>{1, 2});
}

TEST_CASE("closing quotes and brackets after the terminator are ignored")
{
    CHECK(is_sentence_terminal("konec.\""));
    CHECK(is_sentence_terminal("fertig.)"));
    CHECK(is_sentence_terminal("dobre.”"));
    CHECK(is_sentence_terminal("ano?"));
    CHECK_FALSE(is_sentence_terminal("(a)"));
    CHECK_FALSE(is_sentence_terminal("a.b"));
    CHECK_FALSE(is_sentence_terminal("\"\""));
}

TEST_CASE("sentence_of locates 1-based words")
{
    SentenceIndex index;
    index.lengths = {4, 3};
    index.starts = {0, 4};
    CHECK(sentence_of(index, 6).sentence == 2);
    CHECK(sentence_of(index, 6).position == 2);
    CHECK(sentence_of(index, 1).sentence == 1);
    CHECK(sentence_of(index, 1).position == 1);
    CHECK(sentence_of(index, 4).sentence == 1);
    CHECK(sentence_of(index, 4).position == 4);
    CHECK(sentence_of(index, 5).sentence == 2);
    CHECK_THROWS_AS(sentence_of(index, 8), std::out_of_range);
    CHECK_THROWS_AS(sentence_of(index, 0), std::out_of_range);
}

TEST_CASE("splitting preserves every token and cumulative lookup inverts sentence_of")
{
    std::mt19937 rng(71);
    for (int i = 0; i < 100; ++i)
    {
        const TokenSeq tokens = testgen::random_tokens(rng, 30);
        const SentenceIndex index = split_sentences(tokens);
        const std::size_t total =
            std::accumulate(index.lengths.begin(), index.lengths.end(), std::size_t{0});
        CHECK(total == tokens.size());
        CHECK(index.total_words() == tokens.size());
        for (std::size_t word = 1; word <= tokens.size(); ++word)
        {
            const WordLocation loc = sentence_of(index, word);
            CHECK(loc.position >= 1);
            CHECK(loc.position <= index.lengths[loc.sentence - 1]);
            CHECK(index.starts[loc.sentence - 1] + loc.position == word);
        }
    }
}

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "yulesimon/corpus.hpp"
#include "yulesimon/error.hpp"
#include "yulesimon/rng.hpp"

using namespace yulesimon;
using Tokens = std::vector<std::string>;

TEST_CASE("tokenize") {
  CHECK(tokenize("The cat, the hat.") == Tokens{"the", "cat", "the", "hat"});
  CHECK(tokenize("don't Don't") == Tokens{"don't", "don't"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("don\xE2\x80\x99t") == Tokens{"don't"});
  CHECK(tokenize("'tis the dogs' well-known _Ulysses_ 1922") ==
        Tokens{"tis", "the", "dogs", "well", "known", "ulysses"});
  CHECK(tokenize("rock''n") == Tokens{"rock", "n"});
  CHECK(tokenize("CAF\xC3\x89 caf\xC3\xA9") == Tokens{"caf\xC3\xA9", "caf\xC3\xA9"});
  TokenizerRules keep;
  keep.case_folding = false;
  CHECK(tokenize("The the", keep) == Tokens{"The", "the"});
}

TEST_CASE("tokenize rejects malformed UTF-8 with the byte offset") {
  try {
    tokenize("abc \xC3\x28 def");
    FAIL("expected DecodeError");
  } catch (const DecodeError& e) {
    CHECK(e.offset() == 4);
  }
  CHECK_THROWS_AS(tokenize("x\xED\xA0\x80"), DecodeError);  // surrogate
  CHECK_THROWS_AS(tokenize("\xC0\xAF"), DecodeError);       // overlong
  CHECK_THROWS_AS(tokenize("ok \xE2\x80"), DecodeError);    // truncated
}

TEST_CASE("word_frequencies") {
  const auto f = word_frequencies({"the", "cat", "the"});
  CHECK(f.n() == 2);
  CHECK(f.total_tokens() == 3);
  CHECK(f.entries() == std::vector<FrequencyVector::Entry>{{"the", 2}, {"cat", 1}});
  CHECK(f.to_csv() == "word,count\nthe,2\ncat,1\n");
  CHECK(word_frequencies({}).n() == 0);
}

TEST_CASE("frequency vector invariants") {
  RngState rng(3);
  Tokens tokens;
  const Tokens vocab = {"a", "b", "c", "d", "e", "f", "g"};
  for (int i = 0; i < 2000; ++i) tokens.push_back(vocab[rng.next_u64() % 5 + (i % 3)]);
  const auto f = word_frequencies(tokens);
  CHECK(f.total_tokens() == tokens.size());
  CHECK(f.n() == f.entries().size());
  for (std::size_t i = 1; i < f.n(); ++i) {
    const auto& [w0, c0] = f.entries()[i - 1];
    const auto& [w1, c1] = f.entries()[i];
    CHECK((c0 > c1 || (c0 == c1 && w0 < w1)));
  }
  // Permutation invariance.
  for (std::size_t i = tokens.size() - 1; i > 0; --i)
    std::swap(tokens[i], tokens[rng.next_u64() % (i + 1)]);
  CHECK(word_frequencies(tokens) == f);
}

TEST_CASE("count_words matches tokenize + word_frequencies, serial and parallel") {
  std::string text;
  RngState rng(5);
  const Tokens vocab = {"alpha", "Beta", "don't", "caf\xC3\xA9", "x", "y'all", "zeta"};
  // Large enough for several 1 MiB segments.
  while (text.size() < 3'500'000) {
    text += vocab[rng.next_u64() % vocab.size()];
    text += (rng.next_u64() % 7 == 0) ? ",\n" : " ";
  }
  const auto expected = word_frequencies(tokenize(text));
  CHECK(count_words(text, {}, kernels::Exec::serial) == expected);
  CHECK(count_words(text, {}, kernels::Exec::parallel) == expected);

  const auto bad = text.find(' ', 2'100'000);
  text[bad] = '\xFF';
  try {
    count_words(text, {}, kernels::Exec::parallel);
    FAIL("expected DecodeError");
  } catch (const DecodeError& e) {
    CHECK(e.offset() == bad);
  }
}

TEST_CASE("strip_gutenberg_boilerplate") {
  const std::string with =
      "Title: Foo\nLicense stuff\n*** START OF THE PROJECT GUTENBERG EBOOK FOO ***\n"
      "Body line one.\nBody two.\n*** END OF THE PROJECT GUTENBERG EBOOK FOO ***\nMore license\n";
  const auto s = strip_gutenberg_boilerplate(with);
  CHECK(s.markers_found);
  CHECK(s.body == "Body line one.\nBody two.\n");

  const std::string without = "Just a story.\nThe end.\n";
  const auto u = strip_gutenberg_boilerplate(without);
  CHECK_FALSE(u.markers_found);
  CHECK(u.body == without);

  const std::string only_start =
      "*** START OF THIS PROJECT GUTENBERG EBOOK BAR ***\nstory about the start of things\n";
  const auto o = strip_gutenberg_boilerplate(only_start);
  CHECK_FALSE(o.markers_found);
  CHECK(o.body == only_start);
}

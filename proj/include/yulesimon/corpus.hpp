#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "yulesimon/distribution.hpp"
#include "yulesimon/kernels.hpp"

namespace yulesimon {

/// Word = maximal run of letters, possibly joined by single apostrophes
/// (ASCII ' or U+2019, both emitted as '). Everything else separates words.
/// Letters are ASCII letters and the Latin-1 / Latin Extended-A letters.
struct TokenizerRules {
  bool case_folding = true;
};

/// Throws DecodeError (with byte offset) on malformed UTF-8.
std::vector<std::string> tokenize(std::string_view text, const TokenizerRules& rules = {});

class FrequencyVector {
 public:
  using Entry = std::pair<std::string, Count>;

  FrequencyVector() = default;
  /// Entries are merged by word and sorted by descending count, then word.
  explicit FrequencyVector(std::vector<Entry> entries);

  std::size_t n() const noexcept { return entries_.size(); }
  std::uint64_t total_tokens() const noexcept { return total_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  std::vector<Count> counts() const;

  /// CSV `word,count`, one line per word in entry order, with header.
  std::string to_csv() const;

  friend bool operator==(const FrequencyVector&, const FrequencyVector&) = default;

 private:
  std::vector<Entry> entries_;
  std::uint64_t total_ = 0;
};

FrequencyVector word_frequencies(const std::vector<std::string>& tokens);

/// Tokenize and count in one pass. The parallel path splits the text at ASCII
/// whitespace into segments, counts each independently, then merges.
FrequencyVector count_words(std::string_view text, const TokenizerRules& rules = {},
                            kernels::Exec exec = kernels::Exec::automatic);

struct StrippedText {
  std::string body;
  bool markers_found = false;
};

/// Keeps only the text between the Project Gutenberg "*** START OF" and
/// "*** END OF" marker lines. Without both markers the text is returned
/// unchanged and markers_found is false.
StrippedText strip_gutenberg_boilerplate(std::string_view text);

}  // namespace yulesimon

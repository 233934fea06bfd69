#include "yulesimon/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <exception>
#include <map>
#include <unordered_map>

#include "yulesimon/error.hpp"

namespace yulesimon {

namespace {

constexpr std::size_t kSegmentBytes = 1 << 20;

// Decodes one code point at text[pos]; advances pos. Throws on malformed input.
char32_t decode_utf8(std::string_view text, std::size_t& pos, std::size_t base_offset) {
  const auto at = [&](std::size_t i) { return static_cast<unsigned char>(text[i]); };
  const std::size_t start = pos;
  const unsigned char c0 = at(pos);
  auto fail = [&](const char* why) -> char32_t {
    throw DecodeError(std::string("invalid UTF-8 (") + why + ") at byte " +
                          std::to_string(base_offset + start),
                      base_offset + start);
  };
  if (c0 < 0x80) {
    ++pos;
    return c0;
  }
  std::size_t len;
  char32_t cp;
  char32_t min;
  if ((c0 & 0xE0) == 0xC0) {
    len = 2, cp = c0 & 0x1F, min = 0x80;
  } else if ((c0 & 0xF0) == 0xE0) {
    len = 3, cp = c0 & 0x0F, min = 0x800;
  } else if ((c0 & 0xF8) == 0xF0) {
    len = 4, cp = c0 & 0x07, min = 0x10000;
  } else {
    return fail("bad lead byte");
  }
  if (pos + len > text.size()) return fail("truncated sequence");
  for (std::size_t i = 1; i < len; ++i) {
    const unsigned char c = at(pos + i);
    if ((c & 0xC0) != 0x80) return fail("bad continuation byte");
    cp = (cp << 6) | (c & 0x3F);
  }
  if (cp < min) return fail("overlong encoding");
  if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return fail("invalid code point");
  pos += len;
  return cp;
}

bool is_letter(char32_t cp) {
  if (cp < 0x80) return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z');
  if (cp == 0xD7 || cp == 0xF7) return false;
  return cp >= 0xC0 && cp <= 0x17F;
}

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019; }

char32_t fold_case(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp == 0x178) return 0xFF;
  // Latin Extended-A: upper/lower pairs alternate, with the phase flipping
  // at U+0138 and back at U+0149.
  if ((cp >= 0x100 && cp <= 0x137) || (cp >= 0x14A && cp <= 0x177))
    return (cp % 2 == 0) ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E))
    return (cp % 2 == 1) ? cp + 1 : cp;
  return cp;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

template <class Emit>
void for_each_token(std::string_view text, const TokenizerRules& rules, std::size_t base_offset,
                    Emit&& emit) {
  std::string token;
  bool pending_apostrophe = false;
  auto flush = [&] {
    if (!token.empty()) emit(token);
    token.clear();
    pending_apostrophe = false;
  };
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = decode_utf8(text, pos, base_offset);
    if (is_letter(cp)) {
      if (pending_apostrophe) token.push_back('\'');
      pending_apostrophe = false;
      append_utf8(token, rules.case_folding ? fold_case(cp) : cp);
    } else if (is_apostrophe(cp) && !token.empty() && !pending_apostrophe) {
      pending_apostrophe = true;
    } else {
      flush();
    }
  }
  flush();
}

using CountMap = std::unordered_map<std::string, Count>;

CountMap count_segment(std::string_view seg, const TokenizerRules& rules, std::size_t offset) {
  CountMap m;
  for_each_token(seg, rules, offset, [&](const std::string& tok) { ++m[tok]; });
  return m;
}

bool is_ascii_space(char c) {
  return c == ' ' || c == '\n' || c == '\r' || c == '\t' || c == '\f' || c == '\v';
}

std::vector<std::pair<std::size_t, std::size_t>> segment_bounds(std::string_view text) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t begin = 0;
  while (begin < text.size()) {
    std::size_t end = std::min(text.size(), begin + kSegmentBytes);
    while (end < text.size() && !is_ascii_space(text[end])) ++end;
    out.emplace_back(begin, end);
    begin = end;
  }
  return out;
}

std::string upper_ascii(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

bool is_marker(std::string_view line, std::string_view what) {
  const auto first = line.find_first_not_of(" \t");
  if (first == std::string_view::npos || line.substr(first, 3) != "***") return false;
  const auto up = upper_ascii(line);
  return up.find(what) != std::string::npos && up.find("PROJECT GUTENBERG") != std::string::npos;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerRules& rules) {
  std::vector<std::string> out;
  for_each_token(text, rules, 0, [&](const std::string& tok) { out.push_back(tok); });
  return out;
}

FrequencyVector::FrequencyVector(std::vector<Entry> entries) {
  std::map<std::string, Count> merged;
  for (auto& [word, count] : entries) {
    if (count < 1) throw DataError("word count must be >= 1 for \"" + word + "\"");
    merged[word] += count;
  }
  entries_.assign(merged.begin(), merged.end());
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const Entry& x, const Entry& y) { return x.second > y.second; });
  for (const auto& e : entries_) total_ += e.second;
}

std::vector<Count> FrequencyVector::counts() const {
  std::vector<Count> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.second);
  return out;
}

std::string FrequencyVector::to_csv() const {
  std::string out = "word,count\n";
  for (const auto& [word, count] : entries_) {
    out += word;
    out += ',';
    out += std::to_string(count);
    out += '\n';
  }
  return out;
}

FrequencyVector word_frequencies(const std::vector<std::string>& tokens) {
  CountMap m;
  for (const auto& t : tokens) ++m[t];
  return FrequencyVector(std::vector<FrequencyVector::Entry>(m.begin(), m.end()));
}

FrequencyVector count_words(std::string_view text, const TokenizerRules& rules,
                            kernels::Exec exec) {
  const auto bounds = segment_bounds(text);
  std::vector<CountMap> maps(bounds.size());
  std::vector<std::exception_ptr> errors(bounds.size());
  const bool parallel = exec == kernels::Exec::parallel ||
                        (exec == kernels::Exec::automatic && bounds.size() > 1);
  const auto ns = static_cast<std::ptrdiff_t>(bounds.size());
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (std::ptrdiff_t s = 0; s < ns; ++s) {
    const auto [b, e] = bounds[s];
    try {
      maps[s] = count_segment(text.substr(b, e - b), rules, b);
    } catch (...) {
      errors[s] = std::current_exception();
    }
  }
  for (const auto& err : errors)
    if (err) std::rethrow_exception(err);

  CountMap total;
  for (auto& m : maps)
    for (auto& [word, count] : m) total[word] += count;
  return FrequencyVector(std::vector<FrequencyVector::Entry>(total.begin(), total.end()));
}

StrippedText strip_gutenberg_boilerplate(std::string_view text) {
  std::size_t body_begin = std::string_view::npos;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    const std::size_t next = eol == std::string_view::npos ? text.size() : eol + 1;
    const auto line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    if (body_begin == std::string_view::npos) {
      if (is_marker(line, "START OF")) body_begin = next;
    } else if (is_marker(line, "END OF")) {
      return {std::string(text.substr(body_begin, pos - body_begin)), true};
    }
    pos = next;
  }
  return {std::string(text), false};
}

}  // namespace yulesimon

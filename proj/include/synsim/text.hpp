#ifndef SYNSIM_TEXT_HPP
#define SYNSIM_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

#include "synsim/unicode.hpp"

namespace synsim {

/// Splits text into maximal runs of Unicode letters. Everything else
/// (whitespace, punctuation, digits, ill-formed bytes) separates tokens and
/// is discarded.
inline std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t run_begin = std::string_view::npos;
  unicode::for_each_code_point(text, [&](UChar32 c, std::size_t begin, std::size_t) {
    if (unicode::is_letter(c)) {
      if (run_begin == std::string_view::npos) run_begin = begin;
    } else if (run_begin != std::string_view::npos) {
      tokens.emplace_back(text.substr(run_begin, begin - run_begin));
      run_begin = std::string_view::npos;
    }
  });
  if (run_begin != std::string_view::npos) tokens.emplace_back(text.substr(run_begin));
  return tokens;
}

/// Lowercase fold. Kazakh Cyrillic capitals (Ә Ғ Қ Ң Ө Ұ Ү Һ І) fold like any
/// other letter; there is no transliteration.
inline std::string normalize(std::string_view token) { return unicode::to_lower(token); }

}  // namespace synsim

#endif  // SYNSIM_TEXT_HPP

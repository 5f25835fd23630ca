#ifndef SYNSIM_UNICODE_HPP
#define SYNSIM_UNICODE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <unicode/uchar.h>
#include <unicode/utf8.h>

#include "synsim/error.hpp"

// Thin UTF-8 layer over ICU character properties. Nothing here consults the
// process locale.
namespace synsim::unicode {

/// Calls fn(code_point, begin, end) for each code point of s. Ill-formed
/// sequences are reported with a negative code point.
template <typename Fn>
void for_each_code_point(std::string_view s, Fn&& fn) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto length = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t begin = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    fn(c, static_cast<std::size_t>(begin), static_cast<std::size_t>(i));
  }
}

/// Byte offset of the first ill-formed sequence, if any.
inline std::optional<std::size_t> find_invalid_utf8(std::string_view s) {
  const auto* bytes = reinterpret_cast<const std::uint8_t*>(s.data());
  const auto length = static_cast<std::int32_t>(s.size());
  std::int32_t i = 0;
  while (i < length) {
    const std::int32_t begin = i;
    UChar32 c;
    U8_NEXT(bytes, i, length, c);
    if (c < 0) return static_cast<std::size_t>(begin);
  }
  return std::nullopt;
}

inline void require_valid_utf8(std::string_view s, const std::string& where = {}) {
  if (auto bad = find_invalid_utf8(s)) throw DecodeError(*bad, where);
}

/// General category L* (Lu, Ll, Lt, Lm, Lo).
inline bool is_letter(UChar32 c) { return c >= 0 && u_isalpha(c); }

inline void append_code_point(std::string& out, UChar32 c) {
  std::uint8_t buf[U8_MAX_LENGTH];
  std::int32_t n = 0;
  U8_APPEND_UNSAFE(buf, n, c);
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

/// Simple (one-to-one) lowercase mapping per code point. Ill-formed bytes are
/// copied through unchanged.
inline std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for_each_code_point(s, [&](UChar32 c, std::size_t begin, std::size_t end) {
    if (c < 0) {
      out.append(s.substr(begin, end - begin));
    } else {
      append_code_point(out, u_tolower(c));
    }
  });
  return out;
}

inline bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && is_space(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace synsim::unicode

#endif  // SYNSIM_UNICODE_HPP

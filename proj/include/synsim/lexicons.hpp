#ifndef SYNSIM_LEXICONS_HPP
#define SYNSIM_LEXICONS_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <istream>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "synsim/error.hpp"
#include "synsim/text.hpp"
#include "synsim/unicode.hpp"

namespace synsim {

namespace detail {

inline std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Calls fn(line_number, line) for every line that is not blank and not a
/// `#` comment. Trailing CR is stripped, so CRLF files load like LF files.
template <typename Fn>
void for_each_content_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto trimmed = unicode::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    fn(line_no, line);
  }
}

}  // namespace detail

class StopwordList {
 public:
  StopwordList() = default;

  /// Entries are normalized on insertion; empty entries are ignored.
  void insert(std::string_view word) {
    auto w = normalize(unicode::trim(word));
    if (!w.empty()) words_.insert(std::move(w));
  }

  /// Exact match; callers pass an already normalized token.
  bool contains(std::string_view token) const { return words_.find(token) != words_.end(); }

  std::size_t size() const noexcept { return words_.size(); }
  bool empty() const noexcept { return words_.empty(); }
  const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

inline StopwordList load_stopwords(std::istream& source) {
  const auto text = detail::read_all(source);
  unicode::require_valid_utf8(text, "stopwords");
  StopwordList list;
  detail::for_each_content_line(text, [&](std::size_t, std::string_view line) { list.insert(line); });
  return list;
}

class StemLexicon {
 public:
  StemLexicon() = default;

  /// Later insertions of the same surface form replace earlier ones.
  void insert(std::string_view surface, std::string_view stem) {
    entries_.insert_or_assign(normalize(surface), normalize(stem));
  }

  /// nullopt on a miss; a hit is never empty.
  std::optional<std::string> lookup(std::string_view surface) const {
    auto it = entries_.find(surface);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  const std::map<std::string, std::string, std::less<>>& entries() const noexcept { return entries_; }

 private:
  std::map<std::string, std::string, std::less<>> entries_;
};

/// Format: one `surface<TAB>stem` pair per line.
inline StemLexicon load_stem_lexicon(std::istream& source) {
  const auto text = detail::read_all(source);
  unicode::require_valid_utf8(text, "stem lexicon");
  StemLexicon lexicon;
  detail::for_each_content_line(text, [&](std::size_t line_no, std::string_view line) {
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos || line.find('\t', tab + 1) != std::string_view::npos) {
      throw FormatError(line_no, "expected exactly one TAB between surface form and stem");
    }
    const auto surface = unicode::trim(line.substr(0, tab));
    const auto stem = unicode::trim(line.substr(tab + 1));
    if (surface.empty() || stem.empty()) {
      throw FormatError(line_no, "empty surface form or stem");
    }
    lexicon.insert(surface, stem);
  });
  return lexicon;
}

/// Optional external stemmer consulted on lexicon misses. Returning nullopt
/// (or an empty string) falls through to the identity.
using StemHook = std::function<std::optional<std::string>(std::string_view)>;

/// Lexicon lookup, then the hook, then identity. Holds a reference to the
/// lexicon, which must outlive the stemmer.
class Stemmer {
 public:
  explicit Stemmer(const StemLexicon& lexicon, StemHook hook = {})
      : lexicon_(&lexicon), hook_(std::move(hook)) {}

  std::string operator()(std::string_view token) const {
    if (auto hit = lexicon_->lookup(token)) return *std::move(hit);
    if (hook_) {
      if (auto ruled = hook_(token); ruled && !ruled->empty()) return *std::move(ruled);
    }
    return std::string(token);
  }

 private:
  const StemLexicon* lexicon_;
  StemHook hook_;
};

struct SynonymRow {
  std::size_t row_index = 0;
  /// Position 0 is the headword.
  std::vector<std::string> terms;
};

/// Rows of mutually synonymous stemmed terms plus a term -> row index. A term
/// listed in several rows resolves to the lowest row.
class SynonymTable {
 public:
  SynonymTable() = default;

  /// Deduplicates terms keeping first occurrences; rows shorter than two
  /// terms afterwards are dropped. Returns whether the row was kept.
  bool add_row(std::vector<std::string> terms) {
    std::vector<std::string> unique;
    unique.reserve(terms.size());
    for (auto& t : terms) {
      if (t.empty()) continue;
      if (std::find(unique.begin(), unique.end(), t) == unique.end()) unique.push_back(std::move(t));
    }
    if (unique.size() < 2) return false;
    const auto idx = rows_.size();
    for (const auto& t : unique) index_.try_emplace(t, idx);
    rows_.push_back(SynonymRow{idx, std::move(unique)});
    return true;
  }

  const SynonymRow* row_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    return it == index_.end() ? nullptr : &rows_[it->second];
  }

  std::optional<std::size_t> row_index_of(std::string_view term) const {
    auto it = index_.find(std::string(term));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  const std::vector<SynonymRow>& rows() const noexcept { return rows_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }

 private:
  std::vector<SynonymRow> rows_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One row per line, comma-separated. Each entry is trimmed, normalized and
/// stemmed so lookups happen in the same space as document terms.
inline SynonymTable load_synonym_table(std::istream& source, const Stemmer& stemmer) {
  const auto text = detail::read_all(source);
  unicode::require_valid_utf8(text, "synonym table");
  SynonymTable table;
  detail::for_each_content_line(text, [&](std::size_t, std::string_view line) {
    std::vector<std::string> terms;
    std::size_t start = 0;
    while (start <= line.size()) {
      auto comma = line.find(',', start);
      if (comma == std::string_view::npos) comma = line.size();
      const auto word = unicode::trim(line.substr(start, comma - start));
      if (!word.empty()) terms.push_back(stemmer(normalize(word)));
      start = comma + 1;
    }
    table.add_row(std::move(terms));
  });
  return table;
}

/// Alternatives for term in row order, excluding term itself. Empty when the
/// term is in no row.
inline std::vector<std::string> synonym_candidates(const SynonymTable& table, std::string_view term) {
  std::vector<std::string> out;
  const auto* row = table.row_of(term);
  if (row == nullptr) return out;
  out.reserve(row->terms.size() - 1);
  for (const auto& t : row->terms) {
    if (t != term) out.push_back(t);
  }
  return out;
}

}  // namespace synsim

#endif  // SYNSIM_LEXICONS_HPP

#ifndef SYNSIM_PIPELINE_HPP
#define SYNSIM_PIPELINE_HPP

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "synsim/lexicons.hpp"
#include "synsim/text.hpp"

namespace synsim {

struct RawDocument {
  std::string id;
  std::string text;
};

/// Bag of stemmed terms. total_tokens is the sum of all counts, i.e. the
/// document length used as the TF denominator.
struct ProcessedDocument {
  std::string id;
  std::map<std::string, std::size_t, std::less<>> counts;
  std::size_t total_tokens = 0;

  void add(std::string term, std::size_t n = 1) {
    if (n == 0) return;
    counts[std::move(term)] += n;
    total_tokens += n;
  }
};

/// Order-preserving removal of every token that is in the list.
inline std::vector<std::string> filter_stopwords(std::vector<std::string> tokens, const StopwordList& list) {
  std::erase_if(tokens, [&](const std::string& t) { return list.contains(t); });
  return tokens;
}

inline std::string stem(std::string_view token, const StemLexicon& lexicon, const StemHook& hook = {}) {
  return Stemmer(lexicon, hook)(token);
}

/// One surviving token with the intermediate forms, for tracing.
struct TokenTrace {
  std::string surface;
  std::string normalized;
  bool stopword = false;
  std::string stem;  // empty when stopword
};

/// tokenize -> normalize -> drop stopwords -> stem, recording each step.
inline std::vector<TokenTrace> trace_tokens(std::string_view text, const StopwordList& stopwords,
                                            const Stemmer& stemmer) {
  std::vector<TokenTrace> out;
  for (auto& surface : tokenize(text)) {
    TokenTrace t;
    t.normalized = normalize(surface);
    t.surface = std::move(surface);
    t.stopword = stopwords.contains(t.normalized);
    if (!t.stopword) t.stem = stemmer(t.normalized);
    out.push_back(std::move(t));
  }
  return out;
}

inline ProcessedDocument preprocess(const RawDocument& doc, const StopwordList& stopwords,
                                    const Stemmer& stemmer) {
  ProcessedDocument out;
  out.id = doc.id;
  std::vector<std::string> normalized;
  for (const auto& t : tokenize(doc.text)) normalized.push_back(normalize(t));
  for (const auto& token : filter_stopwords(std::move(normalized), stopwords)) out.add(stemmer(token));
  return out;
}

inline ProcessedDocument preprocess(const RawDocument& doc, const StopwordList& stopwords,
                                    const StemLexicon& lexicon) {
  return preprocess(doc, stopwords, Stemmer(lexicon));
}

inline std::size_t term_count(const ProcessedDocument& doc, std::string_view term) {
  auto it = doc.counts.find(term);
  return it == doc.counts.end() ? 0 : it->second;
}

}  // namespace synsim

#endif  // SYNSIM_PIPELINE_HPP

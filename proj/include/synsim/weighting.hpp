#ifndef SYNSIM_WEIGHTING_HPP
#define SYNSIM_WEIGHTING_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "synsim/error.hpp"
#include "synsim/lexicons.hpp"
#include "synsim/pipeline.hpp"

namespace synsim {

enum class WeightingMode { traditional, modified };

/// plus_one_when_zero replaces a zero document frequency by one. Nonzero
/// frequencies are never shifted, so idf stays >= 0.
enum class Smoothing { none, plus_one_when_zero };

/// Which document frequency the modified scheme feeds into idf: the
/// synonym-resolved one (default) or the raw term frequency.
enum class IdfSource { resolved, raw };

struct WeightingConfig {
  WeightingMode mode = WeightingMode::traditional;
  Smoothing smoothing = Smoothing::plus_one_when_zero;
  std::shared_ptr<const SynonymTable> synonyms;
  IdfSource modified_idf = IdfSource::resolved;

  void validate() const {
    if (mode == WeightingMode::modified && !synonyms) {
      throw ConfigError("modified weighting requires a synonym table");
    }
  }
};

/// The count N used for a term in a document, and the synonym that supplied
/// it when the term itself is absent.
struct ResolvedCount {
  std::size_t count = 0;
  std::optional<std::string> matched_term;

  friend bool operator==(const ResolvedCount&, const ResolvedCount&) = default;
};

/// Raw count when positive. Otherwise walks the term's synonym row from
/// position 0 to the end and takes the first alternative that occurs in the
/// document (first hit, not most frequent).
inline ResolvedCount resolve_count(std::string_view term, const ProcessedDocument& doc,
                                   const SynonymTable& table) {
  if (const auto n = term_count(doc, term); n > 0) return {n, std::nullopt};
  const auto* row = table.row_of(term);
  if (row == nullptr) return {};
  for (const auto& candidate : row->terms) {
    if (candidate == term) continue;
    if (const auto n = term_count(doc, candidate); n > 0) return {n, candidate};
  }
  return {};
}

inline double tf(std::size_t count, std::size_t total_tokens) {
  if (total_tokens == 0) return 0.0;
  return static_cast<double>(count) / static_cast<double>(total_tokens);
}

/// Ordered, immutable document collection with document frequencies
/// precomputed for every term it contains. When constructed with a synonym
/// table the synonym-resolved frequencies are cached too.
class Corpus {
 public:
  explicit Corpus(std::vector<ProcessedDocument> docs,
                  std::shared_ptr<const SynonymTable> synonyms = nullptr)
      : docs_(std::move(docs)), synonyms_(std::move(synonyms)) {
    if (docs_.empty()) throw EmptyCorpusError("corpus contains no documents");
    std::unordered_set<std::string_view> ids;
    for (std::size_t i = 0; i < docs_.size(); ++i) {
      if (!ids.insert(docs_[i].id).second) {
        throw DuplicateIdError("duplicate document id '" + docs_[i].id + "'");
      }
      by_id_.emplace(docs_[i].id, i);
    }
    for (const auto& d : docs_) {
      for (const auto& [term, n] : d.counts) {
        if (n > 0) ++df_traditional_[term];
      }
    }
    if (synonyms_) {
      for (const auto& [term, df] : df_traditional_) {
        df_modified_.emplace(term, scan_modified(term, *synonyms_));
      }
    }
  }

  std::size_t size() const noexcept { return docs_.size(); }
  const std::vector<ProcessedDocument>& docs() const noexcept { return docs_; }
  const std::shared_ptr<const SynonymTable>& synonyms() const noexcept { return synonyms_; }

  const ProcessedDocument* find(std::string_view id) const {
    auto it = by_id_.find(std::string(id));
    return it == by_id_.end() ? nullptr : &docs_[it->second];
  }

  const ProcessedDocument& at(std::string_view id) const {
    if (const auto* d = find(id)) return *d;
    throw LookupError("unknown document id '" + std::string(id) + "'");
  }

  std::size_t df_traditional(std::string_view term) const {
    auto it = df_traditional_.find(std::string(term));
    return it == df_traditional_.end() ? 0 : it->second;
  }

  /// Synonym-resolved frequency. Served from the cache when table is the
  /// corpus's own table, computed by a scan otherwise.
  std::size_t df_modified(std::string_view term, const SynonymTable& table) const {
    if (&table == synonyms_.get()) {
      if (auto it = df_modified_.find(std::string(term)); it != df_modified_.end()) return it->second;
    }
    return scan_modified(term, table);
  }

 private:
  std::size_t scan_modified(std::string_view term, const SynonymTable& table) const {
    return static_cast<std::size_t>(std::count_if(docs_.begin(), docs_.end(), [&](const auto& d) {
      return resolve_count(term, d, table).count > 0;
    }));
  }

  std::vector<ProcessedDocument> docs_;
  std::shared_ptr<const SynonymTable> synonyms_;
  std::unordered_map<std::string, std::size_t> by_id_;
  std::unordered_map<std::string, std::size_t> df_traditional_;
  std::unordered_map<std::string, std::size_t> df_modified_;
};

inline std::size_t document_frequency(const Corpus& corpus, std::string_view term, WeightingMode mode,
                                      const SynonymTable* table = nullptr) {
  if (mode == WeightingMode::traditional) return corpus.df_traditional(term);
  if (table == nullptr) throw ConfigError("modified document frequency requires a synonym table");
  return corpus.df_modified(term, *table);
}

/// log2(|D| / df), with the zero-df case handled per smoothing.
inline double idf_from_df(std::size_t corpus_size, std::size_t df, Smoothing smoothing,
                          std::string_view term = {}) {
  if (df == 0) {
    if (smoothing == Smoothing::none) throw DivisionByZeroError(std::string(term));
    df = 1;
  }
  return std::log2(static_cast<double>(corpus_size) / static_cast<double>(df));
}

inline double idf(const Corpus& corpus, std::string_view term, WeightingMode mode, Smoothing smoothing,
                  const SynonymTable* table = nullptr) {
  return idf_from_df(corpus.size(), document_frequency(corpus, term, mode, table), smoothing, term);
}

/// Sorted union of both documents' terms (byte order, which for UTF-8 is code
/// point order). Index i of the result is component i of both vectors.
inline std::vector<std::string> build_vocabulary(const ProcessedDocument& a, const ProcessedDocument& b) {
  std::vector<std::string> vocab;
  vocab.reserve(a.counts.size() + b.counts.size());
  // std::map keys are already sorted.
  auto ia = a.counts.begin();
  auto ib = b.counts.begin();
  while (ia != a.counts.end() || ib != b.counts.end()) {
    if (ib == b.counts.end() || (ia != a.counts.end() && ia->first < ib->first)) {
      vocab.push_back((ia++)->first);
    } else if (ia == a.counts.end() || ib->first < ia->first) {
      vocab.push_back((ib++)->first);
    } else {
      vocab.push_back(ia->first);
      ++ia;
      ++ib;
    }
  }
  return vocab;
}

/// Dense tf-idf vector over an explicit vocabulary.
struct DocumentVector {
  std::string doc_id;
  std::vector<std::string> vocabulary;
  std::vector<double> weights;  // weights[i] belongs to vocabulary[i]

  double weight(std::string_view term) const {
    auto it = std::find(vocabulary.begin(), vocabulary.end(), term);
    return it == vocabulary.end() ? 0.0 : weights[static_cast<std::size_t>(it - vocabulary.begin())];
  }
};

inline DocumentVector vectorize(const ProcessedDocument& doc, const Corpus& corpus,
                                std::span<const std::string> vocabulary, const WeightingConfig& config) {
  config.validate();
  DocumentVector out;
  out.doc_id = doc.id;
  out.vocabulary.assign(vocabulary.begin(), vocabulary.end());
  out.weights.reserve(vocabulary.size());
  const bool modified = config.mode == WeightingMode::modified;
  const SynonymTable* table = config.synonyms.get();
  const WeightingMode df_mode =
      modified && config.modified_idf == IdfSource::resolved ? WeightingMode::modified
                                                             : WeightingMode::traditional;
  for (const auto& term : vocabulary) {
    const std::size_t count = modified ? resolve_count(term, doc, *table).count : term_count(doc, term);
    const double w = tf(count, doc.total_tokens) * idf(corpus, term, df_mode, config.smoothing, table);
    out.weights.push_back(w);
  }
  return out;
}

}  // namespace synsim

#endif  // SYNSIM_WEIGHTING_HPP

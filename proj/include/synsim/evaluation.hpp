#ifndef SYNSIM_EVALUATION_HPP
#define SYNSIM_EVALUATION_HPP

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "synsim/error.hpp"
#include "synsim/lexicons.hpp"
#include "synsim/pipeline.hpp"
#include "synsim/similarity.hpp"
#include "synsim/unicode.hpp"
#include "synsim/weighting.hpp"

namespace synsim {

/// The lexical resources a corpus is preprocessed with. synonyms may be null
/// when only traditional weighting is wanted.
struct Lexicons {
  StopwordList stopwords;
  StemLexicon stems;
  StemHook stem_hook;
  std::shared_ptr<const SynonymTable> synonyms;

  Stemmer stemmer() const { return Stemmer(stems, stem_hook); }
};

struct DocumentSource {
  std::string id;
  std::filesystem::path path;
};

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read '" + path.string() + "'");
  return std::move(buf).str();
}

/// The `.txt` files directly inside dir, sorted by id (basename without
/// extension). Subdirectories are not descended into.
inline std::vector<DocumentSource> scan_corpus_dir(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a readable directory: '" + dir.string() + "'");
  std::vector<DocumentSource> out;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IoError("cannot list '" + dir.string() + "': " + ec.message());
  for (const auto& entry : it) {
    if (!entry.is_regular_file(ec) || entry.path().extension() != ".txt") continue;
    out.push_back({entry.path().stem().string(), entry.path()});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return out;
}

inline RawDocument read_document(const DocumentSource& source) {
  RawDocument doc{source.id, read_file(source.path)};
  unicode::require_valid_utf8(doc.text, source.path.string());
  return doc;
}

/// Preprocesses every document of every directory into one corpus ordered by
/// id. Document frequencies for both weighting modes are built up front.
inline Corpus load_corpus(std::span<const std::filesystem::path> dirs, const Lexicons& lexicons) {
  std::vector<DocumentSource> sources;
  for (const auto& dir : dirs) {
    auto found = scan_corpus_dir(dir);
    sources.insert(sources.end(), found.begin(), found.end());
  }
  std::stable_sort(sources.begin(), sources.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 1; i < sources.size(); ++i) {
    if (sources[i].id == sources[i - 1].id) {
      throw DuplicateIdError("document id '" + sources[i].id + "' appears in both '" +
                             sources[i - 1].path.string() + "' and '" + sources[i].path.string() + "'");
    }
  }
  if (sources.empty()) throw EmptyCorpusError("no .txt documents found");

  const auto stemmer = lexicons.stemmer();
  std::vector<ProcessedDocument> docs;
  docs.reserve(sources.size());
  for (const auto& s : sources) docs.push_back(preprocess(read_document(s), lexicons.stopwords, stemmer));
  return Corpus(std::move(docs), lexicons.synonyms);
}

inline Corpus load_corpus(const std::filesystem::path& dir, const Lexicons& lexicons) {
  return load_corpus(std::span<const std::filesystem::path>(&dir, 1), lexicons);
}

/// Settings shared by the traditional and modified runs of a comparison.
struct ComparisonConfig {
  Smoothing smoothing = Smoothing::plus_one_when_zero;
  std::shared_ptr<const SynonymTable> synonyms;
  IdfSource modified_idf = IdfSource::resolved;

  WeightingConfig traditional() const {
    return {WeightingMode::traditional, smoothing, synonyms, modified_idf};
  }
  WeightingConfig modified() const {
    if (!synonyms) throw ConfigError("modified weighting requires a synonym table");
    return {WeightingMode::modified, smoothing, synonyms, modified_idf};
  }
};

struct PairResult {
  std::string anchor_id;
  std::string target_id;
  Measure measure = Measure::cosine;
  double traditional = 0.0;
  double modified = 0.0;
  double delta = 0.0;  // modified - traditional
};

/// Scores one document pair under both schemes for each requested measure.
/// Vectors are built once per scheme.
inline std::vector<PairResult> compare_pair(const Corpus& corpus, std::string_view id_a, std::string_view id_b,
                                            std::span<const Measure> measures, const ComparisonConfig& config) {
  const auto& a = corpus.at(id_a);
  const auto& b = corpus.at(id_b);
  const auto vocab = build_vocabulary(a, b);
  const auto trad_cfg = config.traditional();
  const auto mod_cfg = config.modified();
  const auto ta = vectorize(a, corpus, vocab, trad_cfg);
  const auto tb = vectorize(b, corpus, vocab, trad_cfg);
  const auto ma = vectorize(a, corpus, vocab, mod_cfg);
  const auto mb = vectorize(b, corpus, vocab, mod_cfg);

  std::vector<PairResult> out;
  out.reserve(measures.size());
  for (auto m : measures) {
    PairResult r{a.id, b.id, m, similarity(m, ta.weights, tb.weights).value,
                 similarity(m, ma.weights, mb.weights).value, 0.0};
    r.delta = r.modified - r.traditional;
    out.push_back(std::move(r));
  }
  return out;
}

inline PairResult compare_pair(const Corpus& corpus, std::string_view id_a, std::string_view id_b, Measure measure,
                               const ComparisonConfig& config) {
  return compare_pair(corpus, id_a, id_b, std::span<const Measure>(&measure, 1), config).front();
}

struct GroupAverage {
  Measure measure = Measure::cosine;
  double traditional = 0.0;
  double modified = 0.0;
  double delta = 0.0;  // modified - traditional of the averages
  std::size_t count = 0;
};

/// One anchor against a group of targets. Rows run target-major in the order
/// the targets were given, measures in the order requested.
struct ReportTable {
  std::string anchor_id;
  std::vector<Measure> measures;
  std::vector<PairResult> rows;
  std::vector<GroupAverage> averages;  // one per measure

  const GroupAverage* average(Measure m) const {
    for (const auto& a : averages) {
      if (a.measure == m) return &a;
    }
    return nullptr;
  }
};

inline ReportTable anchor_matrix(const Corpus& corpus, std::string_view anchor_id,
                                 std::span<const std::string> target_ids, std::span<const Measure> measures,
                                 const ComparisonConfig& config) {
  if (target_ids.empty()) throw LookupError("anchor '" + std::string(anchor_id) + "' has no targets");
  if (measures.empty()) throw ConfigError("no similarity measures requested");
  (void)corpus.at(anchor_id);
  for (const auto& t : target_ids) (void)corpus.at(t);

  ReportTable table;
  table.anchor_id = std::string(anchor_id);
  table.measures.assign(measures.begin(), measures.end());
  for (const auto& target : target_ids) {
    auto pair_rows = compare_pair(corpus, anchor_id, target, measures, config);
    table.rows.insert(table.rows.end(), pair_rows.begin(), pair_rows.end());
  }
  for (auto m : measures) {
    GroupAverage avg{m};
    for (const auto& r : table.rows) {
      if (r.measure != m) continue;
      avg.traditional += r.traditional;
      avg.modified += r.modified;
      ++avg.count;
    }
    avg.traditional /= static_cast<double>(avg.count);
    avg.modified /= static_cast<double>(avg.count);
    avg.delta = avg.modified - avg.traditional;
    table.averages.push_back(avg);
  }
  return table;
}

struct MeasureDelta {
  Measure measure = Measure::cosine;
  double similar_delta = 0.0;
  double dissimilar_delta = 0.0;
  double gap = 0.0;  // similar_delta - dissimilar_delta
};

struct DeltaSummary {
  std::vector<MeasureDelta> entries;
};

/// Per measure: change of the group average from traditional to modified for
/// the similar and the dissimilar group, and the difference between the two.
inline DeltaSummary delta_summary(const ReportTable& similar, const ReportTable& dissimilar) {
  if (similar.measures != dissimilar.measures) {
    throw ConfigError("similar and dissimilar tables cover different measures");
  }
  DeltaSummary summary;
  for (auto m : similar.measures) {
    const auto* s = similar.average(m);
    const auto* d = dissimilar.average(m);
    if (s == nullptr || d == nullptr) throw ConfigError("missing average for " + std::string(to_string(m)));
    MeasureDelta e{m, s->modified - s->traditional, d->modified - d->traditional, 0.0};
    e.gap = e.similar_delta - e.dissimilar_delta;
    summary.entries.push_back(e);
  }
  return summary;
}

enum class ReportFormat { json, csv };

inline ReportFormat parse_format(std::string_view name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ConfigError("unknown output format '" + std::string(name) + "'");
}

struct RenderOptions {
  /// Fixed decimals for numbers. Unset: CSV uses 6, JSON keeps full
  /// round-trip precision.
  std::optional<int> decimals;
};

/// Fixed-point, dot separator, independent of the C/C++ locale. A rounded
/// negative zero prints without its sign.
inline std::string format_fixed(double v, int decimals = 6) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  std::string s(buf, res.ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

namespace detail {

inline std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline nlohmann::ordered_json json_number(double v, const RenderOptions& opts) {
  if (!opts.decimals) return v;
  const auto text = format_fixed(v, *opts.decimals);
  double rounded = 0.0;
  std::from_chars(text.data(), text.data() + text.size(), rounded);
  return rounded;
}

}  // namespace detail

inline constexpr std::string_view kReportCsvHeader = "anchor,target,measure,traditional,modified,delta";
inline constexpr std::string_view kSummaryCsvHeader = "measure,similar_delta,dissimilar_delta,gap";

/// CSV: one line per pair and measure, then one average line per measure with
/// an empty target field. JSON: {"anchor", "rows": [...], "averages": [...]}.
inline std::string render_report(const ReportTable& table, ReportFormat format, const RenderOptions& opts = {}) {
  if (format == ReportFormat::csv) {
    const int d = opts.decimals.value_or(6);
    std::string out(kReportCsvHeader);
    out += '\n';
    for (const auto& r : table.rows) {
      out += detail::csv_field(r.anchor_id) + ',' + detail::csv_field(r.target_id) + ',' +
             std::string(to_string(r.measure)) + ',' + format_fixed(r.traditional, d) + ',' +
             format_fixed(r.modified, d) + ',' + format_fixed(r.delta, d) + '\n';
    }
    for (const auto& a : table.averages) {
      out += detail::csv_field(table.anchor_id) + ",," + std::string(to_string(a.measure)) + ',' +
             format_fixed(a.traditional, d) + ',' + format_fixed(a.modified, d) + ',' + format_fixed(a.delta, d) +
             '\n';
    }
    return out;
  }

  nlohmann::ordered_json j;
  j["anchor"] = table.anchor_id;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : table.rows) {
    j["rows"].push_back({{"anchor", r.anchor_id},
                         {"target", r.target_id},
                         {"measure", to_string(r.measure)},
                         {"traditional", detail::json_number(r.traditional, opts)},
                         {"modified", detail::json_number(r.modified, opts)},
                         {"delta", detail::json_number(r.delta, opts)}});
  }
  j["averages"] = nlohmann::ordered_json::array();
  for (const auto& a : table.averages) {
    j["averages"].push_back({{"measure", to_string(a.measure)},
                             {"count", a.count},
                             {"traditional", detail::json_number(a.traditional, opts)},
                             {"modified", detail::json_number(a.modified, opts)},
                             {"delta", detail::json_number(a.delta, opts)}});
  }
  return j.dump(2) + '\n';
}

inline std::string render_report(const DeltaSummary& summary, ReportFormat format, const RenderOptions& opts = {}) {
  if (format == ReportFormat::csv) {
    const int d = opts.decimals.value_or(6);
    std::string out(kSummaryCsvHeader);
    out += '\n';
    for (const auto& e : summary.entries) {
      out += std::string(to_string(e.measure)) + ',' + format_fixed(e.similar_delta, d) + ',' +
             format_fixed(e.dissimilar_delta, d) + ',' + format_fixed(e.gap, d) + '\n';
    }
    return out;
  }
  nlohmann::ordered_json j;
  j["measures"] = nlohmann::ordered_json::array();
  for (const auto& e : summary.entries) {
    j["measures"].push_back({{"measure", to_string(e.measure)},
                             {"similar_delta", detail::json_number(e.similar_delta, opts)},
                             {"dissimilar_delta", detail::json_number(e.dissimilar_delta, opts)},
                             {"gap", detail::json_number(e.gap, opts)}});
  }
  return j.dump(2) + '\n';
}

}  // namespace synsim

#endif  // SYNSIM_EVALUATION_HPP

#ifndef SYNSIM_CLI_HPP
#define SYNSIM_CLI_HPP

#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "synsim/error.hpp"
#include "synsim/evaluation.hpp"
#include "synsim/lexicons.hpp"
#include "synsim/pipeline.hpp"
#include "synsim/similarity.hpp"
#include "synsim/weighting.hpp"

// Command implementations behind the `synsim` executable. Argument parsing
// lives in tools/synsim.cpp; everything here works on a resolved CliConfig
// and plain streams so it can be driven from tests.
namespace synsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitConfig = 64;

enum class RunMode { traditional, modified, both };

inline RunMode parse_mode(std::string_view s) {
  if (s == "traditional") return RunMode::traditional;
  if (s == "modified") return RunMode::modified;
  if (s == "both") return RunMode::both;
  throw ConfigError("unknown mode '" + std::string(s) + "' (expected traditional, modified or both)");
}

inline Smoothing parse_smoothing(std::string_view s) {
  if (s == "none") return Smoothing::none;
  if (s == "plus_one_when_zero") return Smoothing::plus_one_when_zero;
  throw ConfigError("unknown smoothing '" + std::string(s) + "' (expected none or plus_one_when_zero)");
}

inline IdfSource parse_idf_source(std::string_view s) {
  if (s == "resolved") return IdfSource::resolved;
  if (s == "raw") return IdfSource::raw;
  throw ConfigError("unknown modified-idf source '" + std::string(s) + "' (expected resolved or raw)");
}

/// Comma-separated measure names, duplicates collapsed, order kept.
inline std::vector<Measure> parse_measures(std::string_view list) {
  std::vector<Measure> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    auto comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    const auto name = unicode::trim(list.substr(start, comma - start));
    if (!name.empty()) {
      const auto m = parse_measure(name);
      if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    start = comma + 1;
  }
  if (out.empty()) throw ConfigError("--measures must name at least one measure");
  return out;
}

struct CliConfig {
  std::optional<std::filesystem::path> stopwords_path;
  std::optional<std::filesystem::path> stem_lexicon_path;
  std::optional<std::filesystem::path> synonyms_path;
  RunMode mode = RunMode::both;
  std::vector<Measure> measures{kAllMeasures.begin(), kAllMeasures.end()};
  Smoothing smoothing = Smoothing::plus_one_when_zero;
  IdfSource modified_idf = IdfSource::resolved;
  ReportFormat output_format = ReportFormat::csv;
  std::optional<std::filesystem::path> output_path;

  bool wants_modified() const { return mode != RunMode::traditional; }

  /// Checks needed by every weighting command.
  void validate() const {
    if (measures.empty()) throw ConfigError("no similarity measures requested");
    if (wants_modified() && !synonyms_path) {
      throw ConfigError("mode '" + std::string(mode == RunMode::both ? "both" : "modified") +
                        "' requires --synonyms");
    }
  }
};

/// Raw option values as given on the command line or in a config file.
/// Unset fields fall through to the next layer.
struct ConfigLayer {
  std::optional<std::string> stopwords;
  std::optional<std::string> stems;
  std::optional<std::string> synonyms;
  std::optional<std::string> mode;
  std::optional<std::string> measures;
  std::optional<std::string> smoothing;
  std::optional<std::string> modified_idf;
  std::optional<std::string> format;
  std::optional<std::string> out;
};

/// Reads a JSON config object. Keys match the long flag names; `measures`
/// may be a comma-separated string or an array of names.
inline ConfigLayer parse_config_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must contain a JSON object");
  ConfigLayer layer;
  auto str = [](const std::string& key, const nlohmann::json& v) {
    if (!v.is_string()) throw ConfigError("config key '" + key + "' must be a string");
    return v.get<std::string>();
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "stopwords") layer.stopwords = str(key, value);
    else if (key == "stems") layer.stems = str(key, value);
    else if (key == "synonyms") layer.synonyms = str(key, value);
    else if (key == "mode") layer.mode = str(key, value);
    else if (key == "smoothing") layer.smoothing = str(key, value);
    else if (key == "modified_idf") layer.modified_idf = str(key, value);
    else if (key == "format") layer.format = str(key, value);
    else if (key == "out") layer.out = str(key, value);
    else if (key == "measures") {
      if (value.is_array()) {
        std::string joined;
        for (const auto& m : value) joined += str(key, m) + ",";
        layer.measures = joined;
      } else {
        layer.measures = str(key, value);
      }
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  return layer;
}

/// Precedence: flags, then the config file, then built-in defaults.
inline CliConfig resolve_config(const ConfigLayer& flags, const std::optional<std::filesystem::path>& config_file) {
  ConfigLayer file;
  if (config_file) file = parse_config_json(read_file(*config_file));
  auto pick = [](const std::optional<std::string>& a, const std::optional<std::string>& b) {
    return a ? a : b;
  };
  CliConfig cfg;
  if (auto v = pick(flags.stopwords, file.stopwords)) cfg.stopwords_path = *v;
  if (auto v = pick(flags.stems, file.stems)) cfg.stem_lexicon_path = *v;
  if (auto v = pick(flags.synonyms, file.synonyms)) cfg.synonyms_path = *v;
  if (auto v = pick(flags.mode, file.mode)) cfg.mode = parse_mode(*v);
  if (auto v = pick(flags.measures, file.measures)) cfg.measures = parse_measures(*v);
  if (auto v = pick(flags.smoothing, file.smoothing)) cfg.smoothing = parse_smoothing(*v);
  if (auto v = pick(flags.modified_idf, file.modified_idf)) cfg.modified_idf = parse_idf_source(*v);
  if (auto v = pick(flags.format, file.format)) cfg.output_format = parse_format(*v);
  if (auto v = pick(flags.out, file.out)) cfg.output_path = *v;
  return cfg;
}

namespace detail {

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  return in;
}

inline void require_file(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) throw IoError("no such file: '" + path.string() + "'");
}

/// Stopwords and stems always; the synonym table only when requested. A
/// traditional-only run gets an empty table so the comparison machinery
/// still has one.
inline Lexicons load_lexicons(const CliConfig& cfg, bool with_synonyms) {
  Lexicons lex;
  if (cfg.stopwords_path) {
    auto in = open_input(*cfg.stopwords_path);
    lex.stopwords = load_stopwords(in);
  }
  if (cfg.stem_lexicon_path) {
    auto in = open_input(*cfg.stem_lexicon_path);
    lex.stems = load_stem_lexicon(in);
  }
  if (with_synonyms && cfg.synonyms_path) {
    auto in = open_input(*cfg.synonyms_path);
    lex.synonyms = std::make_shared<const SynonymTable>(load_synonym_table(in, lex.stemmer()));
  } else {
    lex.synonyms = std::make_shared<const SynonymTable>();
  }
  return lex;
}

inline ComparisonConfig comparison_config(const CliConfig& cfg, const Lexicons& lex) {
  return {cfg.smoothing, lex.synonyms, cfg.modified_idf};
}

/// Writes to --out when set, otherwise to the given stream.
inline void emit(const CliConfig& cfg, std::ostream& out, std::string_view text) {
  if (!cfg.output_path) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.output_path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write '" + cfg.output_path->string() + "'");
  f << text;
  if (!f) throw IoError("cannot write '" + cfg.output_path->string() + "'");
}

inline std::vector<std::string> ids_except(const std::vector<DocumentSource>& sources, std::string_view skip) {
  std::vector<std::string> ids;
  for (const auto& s : sources) {
    if (s.id != skip) ids.push_back(s.id);
  }
  return ids;
}

}  // namespace detail

/// Maps the error hierarchy onto exit statuses and prints the message.
inline int run_guarded(const std::function<void()>& body, std::ostream& err) {
  try {
    body();
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "synsim: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InputError& e) {
    err << "synsim: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "synsim: " << e.what() << '\n';
    return kExitFailure;
  }
}

/// `synsim sim A B --corpus DIR`: one line per measure.
inline int cmd_sim(const CliConfig& cfg, const std::filesystem::path& file_a, const std::filesystem::path& file_b,
                   const std::filesystem::path& corpus_dir, std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&] {
        cfg.validate();
        detail::require_file(file_a);
        detail::require_file(file_b);
        const auto lex = detail::load_lexicons(cfg, cfg.wants_modified());
        const auto corpus = load_corpus(corpus_dir, lex);
        auto id_in_corpus = [&](const std::filesystem::path& file) {
          const auto id = file.stem().string();
          std::error_code ec;
          const auto member = corpus_dir / (id + ".txt");
          if (corpus.find(id) == nullptr || !std::filesystem::equivalent(file, member, ec)) {
            throw LookupError("'" + file.string() + "' is not a document of corpus '" + corpus_dir.string() + "'");
          }
          return id;
        };
        const auto a = id_in_corpus(file_a);
        const auto b = id_in_corpus(file_b);
        const auto results = compare_pair(corpus, a, b, cfg.measures, detail::comparison_config(cfg, lex));
        std::string text;
        for (const auto& r : results) {
          text += std::string(to_string(r.measure)) + " traditional=" + format_fixed(r.traditional);
          if (cfg.wants_modified()) {
            text += " modified=" + format_fixed(r.modified) + " delta=" + format_fixed(r.delta);
          }
          text += '\n';
        }
        detail::emit(cfg, out, text);
      },
      err);
}

/// `synsim matrix --corpus DIR --anchor ID`: anchor against every other
/// document of the corpus.
inline int cmd_matrix(const CliConfig& cfg, const std::filesystem::path& corpus_dir, const std::string& anchor_id,
                      std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&] {
        cfg.validate();
        const auto lex = detail::load_lexicons(cfg, cfg.wants_modified());
        const auto corpus = load_corpus(corpus_dir, lex);
        (void)corpus.at(anchor_id);
        std::vector<std::string> targets;
        for (const auto& d : corpus.docs()) {
          if (d.id != anchor_id) targets.push_back(d.id);
        }
        const auto table = anchor_matrix(corpus, anchor_id, targets, cfg.measures, detail::comparison_config(cfg, lex));
        detail::emit(cfg, out, render_report(table, cfg.output_format));
      },
      err);
}

/// Both directories form one corpus (one IDF collection). The anchor is
/// compared against the rest of the similar directory and against the whole
/// dissimilar directory.
inline DeltaSummary run_report(const CliConfig& cfg, const std::filesystem::path& similar_dir,
                               const std::filesystem::path& dissimilar_dir, const std::string& anchor_id) {
  const auto lex = detail::load_lexicons(cfg, cfg.wants_modified());
  const auto similar_sources = scan_corpus_dir(similar_dir);
  const auto dissimilar_sources = scan_corpus_dir(dissimilar_dir);
  const std::vector<std::filesystem::path> dirs{similar_dir, dissimilar_dir};
  const auto corpus = load_corpus(dirs, lex);
  (void)corpus.at(anchor_id);
  const auto ccfg = detail::comparison_config(cfg, lex);
  const auto similar =
      anchor_matrix(corpus, anchor_id, detail::ids_except(similar_sources, anchor_id), cfg.measures, ccfg);
  const auto dissimilar =
      anchor_matrix(corpus, anchor_id, detail::ids_except(dissimilar_sources, anchor_id), cfg.measures, ccfg);
  return delta_summary(similar, dissimilar);
}

inline int cmd_report(const CliConfig& cfg, const std::filesystem::path& similar_dir,
                      const std::filesystem::path& dissimilar_dir, const std::string& anchor_id, std::ostream& out,
                      std::ostream& err) {
  return run_guarded(
      [&] {
        cfg.validate();
        const auto summary = run_report(cfg, similar_dir, dissimilar_dir, anchor_id);
        detail::emit(cfg, out, render_report(summary, cfg.output_format));
      },
      err);
}

/// Token-by-token trace of the preparation steps, then the final counts.
/// Tab-separated:
///   token <surface> <normalized> stopword
///   token <surface> <normalized> stem=<stem>
///   count <term> <n>
///   total <n>
/// An input without tokens produces no output.
inline int cmd_preprocess(const CliConfig& cfg, const std::filesystem::path& file, std::ostream& out,
                          std::ostream& err) {
  return run_guarded(
      [&] {
        detail::require_file(file);
        const auto lex = detail::load_lexicons(cfg, false);
        const auto raw = read_document({file.stem().string(), file});
        const auto stemmer = lex.stemmer();
        const auto trace = trace_tokens(raw.text, lex.stopwords, stemmer);
        std::string text;
        for (const auto& t : trace) {
          text += "token\t" + t.surface + '\t' + t.normalized + '\t' + (t.stopword ? "stopword" : "stem=" + t.stem) +
                  '\n';
        }
        if (!trace.empty()) {
          const auto doc = preprocess(raw, lex.stopwords, stemmer);
          for (const auto& [term, n] : doc.counts) text += "count\t" + term + '\t' + std::to_string(n) + '\n';
          text += "total\t" + std::to_string(doc.total_tokens) + '\n';
        }
        detail::emit(cfg, out, text);
      },
      err);
}

/// Weights of every term of one document, sorted by term.
inline int cmd_vector(const CliConfig& cfg, const std::filesystem::path& corpus_dir, const std::string& doc_id,
                      std::ostream& out, std::ostream& err) {
  return run_guarded(
      [&] {
        cfg.validate();
        const auto lex = detail::load_lexicons(cfg, cfg.wants_modified());
        const auto corpus = load_corpus(corpus_dir, lex);
        const auto& doc = corpus.at(doc_id);
        const auto vocab = build_vocabulary(doc, doc);
        const auto ccfg = detail::comparison_config(cfg, lex);
        const auto trad = vectorize(doc, corpus, vocab, ccfg.traditional());
        std::optional<DocumentVector> mod;
        if (cfg.wants_modified()) mod = vectorize(doc, corpus, vocab, ccfg.modified());
        std::string text;
        for (std::size_t i = 0; i < vocab.size(); ++i) {
          text += vocab[i] + " traditional=" + format_fixed(trad.weights[i]);
          if (mod) text += " modified=" + format_fixed(mod->weights[i]);
          text += '\n';
        }
        detail::emit(cfg, out, text);
      },
      err);
}

}  // namespace synsim::cli

#endif  // SYNSIM_CLI_HPP

// synsim: text-document similarity with synonym-aware TF-IDF.
//
//   synsim sim A.txt B.txt --corpus DIR [flags]
//   synsim matrix --corpus DIR --anchor ID [flags]
//   synsim report --similar DIR --dissimilar DIR --anchor ID [flags]
//   synsim preprocess FILE [flags]
//   synsim vector --corpus DIR --doc ID [flags]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "synsim/cli.hpp"

namespace {

struct SharedFlags {
  synsim::cli::ConfigLayer layer;
  std::optional<std::string> config_path;
};

void add_shared_flags(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--stopwords", f.layer.stopwords, "Stopword list (one word per line)");
  cmd->add_option("--stems", f.layer.stems, "Stem lexicon (surface<TAB>stem)");
  cmd->add_option("--synonyms", f.layer.synonyms, "Synonym table (comma-separated rows)");
  cmd->add_option("--mode", f.layer.mode, "traditional | modified | both (default both)");
  cmd->add_option("--measures", f.layer.measures, "Comma-separated subset of cosine,jaccard,dice");
  cmd->add_option("--smoothing", f.layer.smoothing, "none | plus_one_when_zero (default)");
  cmd->add_option("--modified-idf", f.layer.modified_idf, "resolved (default) | raw");
  cmd->add_option("--format", f.layer.format, "csv (default) | json");
  cmd->add_option("--out", f.layer.out, "Write the result to this file instead of stdout");
  cmd->add_option("--config", f.config_path, "JSON config file; flags take precedence");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = synsim::cli;

  CLI::App app{"Text-document similarity with synonym-aware TF-IDF"};
  app.require_subcommand(1);
  SharedFlags flags;

  std::string file_a, file_b, corpus_dir, anchor, similar_dir, dissimilar_dir, file, doc_id;

  auto* sim = app.add_subcommand("sim", "Compare two documents of a corpus");
  sim->add_option("file_a", file_a)->required();
  sim->add_option("file_b", file_b)->required();
  sim->add_option("--corpus", corpus_dir, "Corpus directory supplying document frequencies")->required();
  add_shared_flags(sim, flags);

  auto* matrix = app.add_subcommand("matrix", "Compare one document with every other document");
  matrix->add_option("--corpus", corpus_dir)->required();
  matrix->add_option("--anchor", anchor)->required();
  add_shared_flags(matrix, flags);

  auto* report = app.add_subcommand("report", "Average deltas for similar and dissimilar groups");
  report->add_option("--similar", similar_dir)->required();
  report->add_option("--dissimilar", dissimilar_dir)->required();
  report->add_option("--anchor", anchor)->required();
  add_shared_flags(report, flags);

  auto* prep = app.add_subcommand("preprocess", "Trace tokenization, stopword removal and stemming");
  prep->add_option("file", file)->required();
  add_shared_flags(prep, flags);

  auto* vector = app.add_subcommand("vector", "Dump the tf-idf weights of one document");
  vector->add_option("--corpus", corpus_dir)->required();
  vector->add_option("--doc", doc_id)->required();
  add_shared_flags(vector, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::kExitConfig;
  }

  cli::CliConfig cfg;
  if (int rc = cli::run_guarded([&] { cfg = cli::resolve_config(flags.layer, flags.config_path); }, std::cerr);
      rc != cli::kExitOk) {
    return rc;
  }

  auto& out = std::cout;
  auto& err = std::cerr;
  if (sim->parsed()) return cli::cmd_sim(cfg, file_a, file_b, corpus_dir, out, err);
  if (matrix->parsed()) return cli::cmd_matrix(cfg, corpus_dir, anchor, out, err);
  if (report->parsed()) return cli::cmd_report(cfg, similar_dir, dissimilar_dir, anchor, out, err);
  if (prep->parsed()) return cli::cmd_preprocess(cfg, file, out, err);
  if (vector->parsed()) return cli::cmd_vector(cfg, corpus_dir, doc_id, out, err);
  return cli::kExitConfig;
}

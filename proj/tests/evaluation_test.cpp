#include <gtest/gtest.h>

#include <numeric>
#include <sstream>

#include <json.hpp>

#include "oracle.hpp"
#include "synsim/evaluation.hpp"
#include "test_support.hpp"

using namespace synsim;
using testing_support::kDataDir;
using testing_support::TempDir;

namespace {

Lexicons fixture_lexicons(bool with_synonyms = true) {
  Lexicons lex;
  std::ifstream stop(kDataDir / "lexicon/stopwords.txt");
  lex.stopwords = load_stopwords(stop);
  std::ifstream stems(kDataDir / "lexicon/stems.tsv");
  lex.stems = load_stem_lexicon(stems);
  if (with_synonyms) {
    std::ifstream syn(kDataDir / "lexicon/synonyms.txt");
    lex.synonyms = std::make_shared<const SynonymTable>(load_synonym_table(syn, lex.stemmer()));
  } else {
    lex.synonyms = std::make_shared<const SynonymTable>();
  }
  return lex;
}

Lexicons planted_lexicons(bool with_row) {
  Lexicons lex;
  auto table = std::make_shared<SynonymTable>();
  if (with_row) {
    std::ifstream syn(kDataDir / "planted/synonyms.txt");
    *table = load_synonym_table(syn, lex.stemmer());
  }
  lex.synonyms = table;
  return lex;
}

ComparisonConfig config_for(const Lexicons& lex) { return {Smoothing::plus_one_when_zero, lex.synonyms}; }

std::vector<std::string> ids_of(const Corpus& c) {
  std::vector<std::string> ids;
  for (const auto& d : c.docs()) ids.push_back(d.id);
  return ids;
}

}  // namespace

TEST(LoadCorpus, DirectoryOfTxtFilesSortedById) {
  TempDir tmp;
  tmp.write("a2.txt", "екі");
  tmp.write("a1.txt", "бір екі");
  tmp.write("notes.md", "ignored");
  auto c = load_corpus(tmp.path(), Lexicons{});
  EXPECT_EQ(c.size(), 2u);
  EXPECT_EQ(ids_of(c), (std::vector<std::string>{"a1", "a2"}));
  EXPECT_EQ(c.at("a1").total_tokens, 2u);
}

TEST(LoadCorpus, Errors) {
  EXPECT_THROW(load_corpus(kDataDir / "does-not-exist", Lexicons{}), IoError);
  TempDir empty;
  EXPECT_THROW(load_corpus(empty.path(), Lexicons{}), EmptyCorpusError);

  TempDir tmp;
  tmp.write("x/a.txt", "бір");
  tmp.write("y/a.txt", "екі");
  const std::vector<std::filesystem::path> dirs{tmp.path() / "x", tmp.path() / "y"};
  EXPECT_THROW(load_corpus(dirs, Lexicons{}), DuplicateIdError);

  TempDir bad;
  bad.write("b.txt", "ok \xC3");
  try {
    load_corpus(bad.path(), Lexicons{});
    FAIL();
  } catch (const DecodeError& e) {
    EXPECT_EQ(e.offset(), 3u);
  }
}

TEST(LoadCorpus, StemHookHandlesLexiconMisses) {
  TempDir tmp;
  tmp.write("a.txt", "балалар бала кітаптар");
  Lexicons lex;
  lex.stems.insert("кітаптар", "кітап");
  lex.stem_hook = [](std::string_view w) -> std::optional<std::string> {
    if (w.size() > 6 && w.substr(w.size() - 6) == "лар") return std::string(w.substr(0, w.size() - 6));
    return std::nullopt;
  };
  auto c = load_corpus(tmp.path(), lex);
  EXPECT_EQ(term_count(c.at("a"), "бала"), 2u);
  EXPECT_EQ(term_count(c.at("a"), "кітап"), 1u);
}

TEST(LoadCorpus, FixtureClusters) {
  const std::vector<std::filesystem::path> dirs{kDataDir / "corpus/telegram", kDataDir / "corpus/oil"};
  auto c = load_corpus(dirs, fixture_lexicons());
  EXPECT_EQ(c.size(), 20u);
  EXPECT_EQ(c.docs().front().id, "a01");
  EXPECT_EQ(c.docs().back().id, "b10");
}

TEST(ComparePair, IdenticalDocumentsScoreOne) {
  TempDir tmp;
  tmp.write("p.txt", "мұнай бағасы өсті");
  tmp.write("q.txt", "мұнай бағасы өсті");
  tmp.write("r.txt", "telegram бұғатталды");
  const auto lex = fixture_lexicons();
  auto c = load_corpus(tmp.path(), lex);
  for (auto m : kAllMeasures) {
    auto r = compare_pair(c, "p", "q", m, config_for(lex));
    EXPECT_EQ(r.traditional, 1.0);
    EXPECT_EQ(r.modified, 1.0);
    EXPECT_EQ(r.delta, 0.0);
    EXPECT_EQ(r.anchor_id, "p");
    EXPECT_EQ(r.target_id, "q");
  }
}

TEST(ComparePair, EmptyTableGivesZeroDelta) {
  const std::vector<std::filesystem::path> dirs{kDataDir / "corpus/telegram", kDataDir / "corpus/oil"};
  const auto lex = fixture_lexicons(false);
  auto c = load_corpus(dirs, lex);
  const auto ids = ids_of(c);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      for (const auto& r : compare_pair(c, ids[i], ids[j], kAllMeasures, config_for(lex))) {
        EXPECT_EQ(r.delta, 0.0);
        EXPECT_EQ(r.modified, r.traditional);
      }
    }
  }
}

TEST(ComparePair, PlantedSynonymRaisesEveryMeasure) {
  const auto lex = planted_lexicons(true);
  auto c = load_corpus(kDataDir / "planted/docs", lex);
  ASSERT_EQ(c.size(), 4u);
  for (auto m : kAllMeasures) {
    const auto r = compare_pair(c, "q", "d", m, config_for(lex));
    EXPECT_GT(r.modified, r.traditional) << to_string(m);
  }
  // Hand-computed: traditional (cos, jac, dice) = (0.2, 1/9, 0.2); modified all 1.
  const auto r = compare_pair(c, "q", "d", kAllMeasures, config_for(lex));
  EXPECT_NEAR(r[0].traditional, 0.2, 1e-12);
  EXPECT_NEAR(r[1].traditional, 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(r[2].traditional, 0.2, 1e-12);
  for (const auto& x : r) EXPECT_NEAR(x.modified, 1.0, 1e-12);

  const auto plain = planted_lexicons(false);
  auto c2 = load_corpus(kDataDir / "planted/docs", plain);
  for (const auto& x : compare_pair(c2, "q", "d", kAllMeasures, config_for(plain))) EXPECT_EQ(x.delta, 0.0);
}

TEST(ComparePair, MatchesBruteForceOnFixture) {
  const std::vector<std::filesystem::path> dirs{kDataDir / "corpus/telegram", kDataDir / "corpus/oil"};
  const auto lex = fixture_lexicons();
  auto c = load_corpus(dirs, lex);
  std::map<std::string, oracle::Bag> bags;
  for (const auto& d : c.docs()) {
    for (const auto& [t, n] : d.counts) bags[d.id][t] = int(n);
  }
  oracle::Table rows;
  for (const auto& r : lex.synonyms->rows()) rows.push_back(r.terms);
  for (const auto& [a, b] : std::vector<std::pair<std::string, std::string>>{
           {"a01", "a02"}, {"a01", "a06"}, {"a01", "b02"}, {"b01", "b04"}, {"b01", "a06"}}) {
    const auto vocab = oracle::union_vocab(bags[a], bags[b]);
    const auto trad = oracle::measures(oracle::weights(bags, a, vocab, nullptr), oracle::weights(bags, b, vocab, nullptr));
    const auto mod = oracle::measures(oracle::weights(bags, a, vocab, &rows), oracle::weights(bags, b, vocab, &rows));
    const auto got = compare_pair(c, a, b, kAllMeasures, config_for(lex));
    EXPECT_NEAR(got[0].traditional, trad.cosine, 1e-12);
    EXPECT_NEAR(got[1].traditional, trad.jaccard, 1e-12);
    EXPECT_NEAR(got[2].traditional, trad.dice, 1e-12);
    EXPECT_NEAR(got[0].modified, mod.cosine, 1e-12);
    EXPECT_NEAR(got[1].modified, mod.jaccard, 1e-12);
    EXPECT_NEAR(got[2].modified, mod.dice, 1e-12);
  }
}

TEST(ComparePair, UnknownId) {
  const auto lex = planted_lexicons(true);
  auto c = load_corpus(kDataDir / "planted/docs", lex);
  EXPECT_THROW(compare_pair(c, "q", "nope", Measure::cosine, config_for(lex)), LookupError);
}

TEST(AnchorMatrix, SingleTargetAverageEqualsPair) {
  const auto lex = fixture_lexicons();
  auto c = load_corpus(kDataDir / "corpus/telegram", lex);
  const std::vector<std::string> targets{"a02"};
  auto t = anchor_matrix(c, "a01", targets, kAllMeasures, config_for(lex));
  ASSERT_EQ(t.rows.size(), 3u);
  ASSERT_EQ(t.averages.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(t.averages[i].traditional, t.rows[i].traditional);
    EXPECT_EQ(t.averages[i].modified, t.rows[i].modified);
    EXPECT_EQ(t.averages[i].count, 1u);
  }
}

TEST(AnchorMatrix, NineTargetsAveragesAndOrder) {
  const std::vector<std::filesystem::path> dirs{kDataDir / "corpus/telegram", kDataDir / "corpus/oil"};
  const auto lex = fixture_lexicons();
  auto c = load_corpus(dirs, lex);
  // Deliberately unsorted target order.
  const std::vector<std::string> targets{"a10", "a02", "a09", "a03", "a08", "a04", "a07", "a05", "a06"};
  auto t = anchor_matrix(c, "a01", targets, kAllMeasures, config_for(lex));
  ASSERT_EQ(t.rows.size(), 27u);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(t.rows[i * 3 + k].target_id, targets[i]);
      EXPECT_EQ(t.rows[i * 3 + k].measure, kAllMeasures[k]);
    }
  }
  for (std::size_t k = 0; k < 3; ++k) {
    double trad = 0, mod = 0;
    for (const auto& r : t.rows) {
      if (r.measure == kAllMeasures[k]) {
        trad += r.traditional;
        mod += r.modified;
      }
    }
    EXPECT_NEAR(t.averages[k].traditional, trad / 9.0, 1e-9);
    EXPECT_NEAR(t.averages[k].modified, mod / 9.0, 1e-9);
    EXPECT_EQ(t.averages[k].count, 9u);
  }
  for (const auto& r : t.rows) EXPECT_NEAR(r.delta, r.modified - r.traditional, 1e-12);
}

TEST(AnchorMatrix, Errors) {
  const auto lex = planted_lexicons(true);
  auto c = load_corpus(kDataDir / "planted/docs", lex);
  EXPECT_THROW(anchor_matrix(c, "q", std::vector<std::string>{}, kAllMeasures, config_for(lex)), LookupError);
  EXPECT_THROW(anchor_matrix(c, "zz", std::vector<std::string>{"d"}, kAllMeasures, config_for(lex)), LookupError);
  EXPECT_THROW(anchor_matrix(c, "q", std::vector<std::string>{"zz"}, kAllMeasures, config_for(lex)), LookupError);
}

namespace {

ReportTable table_with_average(Measure m, double trad, double mod) {
  ReportTable t;
  t.anchor_id = "x";
  t.measures = {m};
  t.averages.push_back({m, trad, mod, mod - trad, 1});
  return t;
}

}  // namespace

TEST(DeltaSummary, TableFiveCosineColumn) {
  const auto s = delta_summary(table_with_average(Measure::cosine, 0.77, 0.79),
                               table_with_average(Measure::cosine, 0.049, 0.061));
  ASSERT_EQ(s.entries.size(), 1u);
  EXPECT_NEAR(s.entries[0].similar_delta, 0.020, 1e-12);
  EXPECT_NEAR(s.entries[0].dissimilar_delta, 0.012, 1e-12);
  EXPECT_NEAR(s.entries[0].gap, 0.008, 1e-12);
}

TEST(DeltaSummary, IdenticalTablesAndMismatch) {
  const auto t = table_with_average(Measure::dice, 0.4, 0.5);
  const auto s = delta_summary(t, t);
  EXPECT_EQ(s.entries[0].gap, 0.0);
  EXPECT_THROW(delta_summary(t, table_with_average(Measure::cosine, 0.4, 0.5)), ConfigError);
}

TEST(DeltaSummary, GapsMatchResummation) {
  const std::vector<std::filesystem::path> dirs{kDataDir / "corpus/telegram", kDataDir / "corpus/oil"};
  const auto lex = fixture_lexicons();
  auto c = load_corpus(dirs, lex);
  const std::vector<std::string> similar{"a02", "a03", "a04", "a05", "a06", "a07", "a08", "a09", "a10"};
  const std::vector<std::string> dissimilar{"b01", "b02", "b03", "b04", "b05", "b06", "b07", "b08", "b09", "b10"};
  const auto st = anchor_matrix(c, "a01", similar, kAllMeasures, config_for(lex));
  const auto dt = anchor_matrix(c, "a01", dissimilar, kAllMeasures, config_for(lex));
  const auto s = delta_summary(st, dt);
  for (std::size_t k = 0; k < 3; ++k) {
    double sd = 0, dd = 0;
    for (const auto& r : st.rows) sd += r.measure == kAllMeasures[k] ? r.delta : 0.0;
    for (const auto& r : dt.rows) dd += r.measure == kAllMeasures[k] ? r.delta : 0.0;
    sd /= double(similar.size());
    dd /= double(dissimilar.size());
    EXPECT_NEAR(s.entries[k].similar_delta, sd, 1e-12);
    EXPECT_NEAR(s.entries[k].dissimilar_delta, dd, 1e-12);
    EXPECT_NEAR(s.entries[k].gap, sd - dd, 1e-12);
    EXPECT_EQ(s.entries[k].gap, s.entries[k].similar_delta - s.entries[k].dissimilar_delta);
  }
}

TEST(RenderReport, EmptyTableIsHeaderOnlyCsv) {
  EXPECT_EQ(render_report(ReportTable{}, ReportFormat::csv), "anchor,target,measure,traditional,modified,delta\n");
}

TEST(RenderReport, CsvLayoutAndQuoting) {
  ReportTable t;
  t.anchor_id = "a,1";
  t.measures = {Measure::jaccard};
  t.rows.push_back({"a,1", "b\"2", Measure::jaccard, 0.5, 0.75, 0.25});
  t.averages.push_back({Measure::jaccard, 0.5, 0.75, 0.25, 1});
  EXPECT_EQ(render_report(t, ReportFormat::csv),
            "anchor,target,measure,traditional,modified,delta\n"
            "\"a,1\",\"b\"\"2\",jaccard,0.500000,0.750000,0.250000\n"
            "\"a,1\",,jaccard,0.500000,0.750000,0.250000\n");
}

TEST(RenderReport, FormatFixed) {
  EXPECT_EQ(format_fixed(1.0), "1.000000");
  EXPECT_EQ(format_fixed(0.3899750004807708), "0.389975");
  EXPECT_EQ(format_fixed(-1e-9), "0.000000");
  EXPECT_EQ(format_fixed(-0.25, 2), "-0.25");
}

TEST(RenderReport, DeterministicAndJsonRoundTrips) {
  const std::vector<std::filesystem::path> dirs{kDataDir / "corpus/telegram", kDataDir / "corpus/oil"};
  const auto lex = fixture_lexicons();
  auto c = load_corpus(dirs, lex);
  const std::vector<std::string> targets{"a02", "a03", "b01"};
  const auto t = anchor_matrix(c, "a01", targets, kAllMeasures, config_for(lex));
  const auto json = render_report(t, ReportFormat::json);
  EXPECT_EQ(json, render_report(t, ReportFormat::json));
  EXPECT_EQ(render_report(t, ReportFormat::csv), render_report(t, ReportFormat::csv));

  const auto j = nlohmann::json::parse(json);
  ASSERT_EQ(j["rows"].size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_EQ(j["rows"][i]["target"], t.rows[i].target_id);
    EXPECT_EQ(j["rows"][i]["measure"], to_string(t.rows[i].measure));
    EXPECT_EQ(j["rows"][i]["traditional"].get<double>(), t.rows[i].traditional);
    EXPECT_EQ(j["rows"][i]["modified"].get<double>(), t.rows[i].modified);
    EXPECT_EQ(j["rows"][i]["delta"].get<double>(), t.rows[i].delta);
  }
  for (std::size_t i = 0; i < t.averages.size(); ++i) {
    EXPECT_EQ(j["averages"][i]["traditional"].get<double>(), t.averages[i].traditional);
    EXPECT_EQ(j["averages"][i]["modified"].get<double>(), t.averages[i].modified);
  }

  const auto s = delta_summary(t, t);
  const auto sj = nlohmann::json::parse(render_report(s, ReportFormat::json));
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    EXPECT_EQ(sj["measures"][i]["gap"].get<double>(), s.entries[i].gap);
  }
  EXPECT_EQ(render_report(s, ReportFormat::csv).substr(0, 41), "measure,similar_delta,dissimilar_delta,ga");
}

TEST(RenderReport, RoundedJsonOption) {
  ReportTable t;
  t.anchor_id = "a";
  t.rows.push_back({"a", "b", Measure::cosine, 1.0 / 3.0, 0.5, 0.5 - 1.0 / 3.0});
  const auto j = nlohmann::json::parse(render_report(t, ReportFormat::json, RenderOptions{2}));
  EXPECT_EQ(j["rows"][0]["traditional"].get<double>(), 0.33);
}

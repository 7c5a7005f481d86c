#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles/oracles.hpp"
#include "salaffect/format.hpp"
#include "salaffect/image_io.hpp"
#include "salaffect/report.hpp"
#include "salaffect/synth.hpp"
#include "support/test_support.hpp"

using namespace salaffect;
using testing_support::TempDir;

namespace {

// In-memory trial with `frames` frames and a deterministic AU pattern.
TrialRecord make_record(const std::string& id, oracle::Rng& rng, std::size_t frames = 6) {
  TrialRecord rec;
  rec.trial_id = id;
  std::vector<FrameFeatures> ff;
  std::vector<AuFrame> au(frames);
  for (std::size_t f = 0; f < frames; ++f) {
    ff.push_back({f, 0.5 * static_cast<double>(f), rng.uniform(0.0, 0.2), 1 + static_cast<std::size_t>(rng.uniform() * 3)});
    au[f].frame_index = f;
    for (std::size_t a = 0; a < kAuCount; ++a) au[f].presence[a] = rng.uniform() < 0.3;
  }
  rec.features = aggregate_trial(id, ff);
  rec.au = au;
  return rec;
}

Corpus make_corpus(std::size_t trials, std::uint64_t seed) {
  oracle::Rng rng(seed);
  Corpus c;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::string id = "t" + std::to_string(100 + t);
    c.trials.push_back(make_record(id, rng));
    c.labels.emplace_back(id, rng.uniform(1, 9), rng.uniform(1, 9));
  }
  c.digest = "0000000000000000";
  return c;
}

const PccCell& cell(const AnalysisReport& r, const std::string& feature, const std::string& emotion) {
  for (const auto& c : r.pcc_table) {
    if (c.feature == feature && c.emotion == emotion) return c;
  }
  throw std::runtime_error("missing cell");
}

}  // namespace

TEST(RunAnalysis, PccTableMatchesOracleOnTrialMeans) {
  const Corpus corpus = make_corpus(30, 1);
  const auto report = run_analysis(corpus, {});
  ASSERT_EQ(report.pcc_table.size(), 4u);
  std::vector<double> regions, valence;
  for (std::size_t i = 0; i < corpus.trials.size(); ++i) {
    regions.push_back(corpus.trials[i].features->mean_region_count);
    valence.push_back(corpus.labels[i].valence());
  }
  const auto& c = cell(report, "region_count", "valence");
  ASSERT_TRUE(c.result);
  EXPECT_NEAR(c.result->r, oracle::pearson_r(regions, valence), 1e-12);
  EXPECT_EQ(c.result->n, 30u);
}

TEST(RunAnalysis, ConstantLabelsReportedPerCell) {
  Corpus corpus = make_corpus(10, 2);
  for (auto& l : corpus.labels) l = EmotionLabel(l.trial_id(), 6.0, 6.0);
  const auto report = run_analysis(corpus, {});
  for (const auto& c : report.pcc_table) {
    EXPECT_FALSE(c.result);
    ASSERT_TRUE(c.error);
    EXPECT_NE(c.error->find("DegenerateInput"), std::string::npos);
  }
  EXPECT_TRUE(report.cca_au_vs_emotion.error);
  EXPECT_EQ(report.quadrant_census.at("HighValenceHighArousal"), 10u);
}

TEST(RunAnalysis, MissingAuExcludesFromAuAnalysesOnly) {
  Corpus corpus = make_corpus(12, 3);
  corpus.trials[4].au.reset();
  corpus.trials[4].missing_au_reason = "AU file missing";
  const std::string gone = corpus.trials[4].trial_id;
  const auto report = run_analysis(corpus, {});
  EXPECT_EQ(cell(report, "saliency_area", "valence").result->n, 12u);
  EXPECT_EQ(report.cca_au_vs_emotion.observations, 11u);
  EXPECT_EQ(report.cca_saliency_vs_au.observations, 11u * 6u);
  const std::vector<Exclusion> expected{{gone, "cca_au_emotion", "AU file missing"},
                                        {gone, "cca_saliency_au", "AU file missing"}};
  EXPECT_EQ(report.provenance.excluded, expected);
}

TEST(RunAnalysis, TooFewTrials) {
  EXPECT_ERROR_CODE(run_analysis(make_corpus(2, 4), {}), ErrorCode::TooFewTrials);
}

TEST(RunAnalysis, CensusSumsToLabelledTrialsAndTopListsBounded) {
  const Corpus corpus = make_corpus(25, 5);
  const auto report = run_analysis(corpus, {});
  std::size_t total = 0;
  for (const auto& [q, n] : report.quadrant_census) total += n;
  EXPECT_EQ(total, 25u);
  EXPECT_EQ(report.quadrant_census.size(), 5u);
  ASSERT_EQ(report.cca_saliency_vs_au.top5.size(), 2u);
  ASSERT_EQ(report.cca_au_vs_emotion.top5.size(), 2u);
  for (const auto* sec : {&report.cca_saliency_vs_au, &report.cca_au_vs_emotion}) {
    for (const auto& [target, list] : sec->top5) {
      EXPECT_LE(list.entries.size(), 5u) << target;
      if (!list.error) EXPECT_EQ(list.entries.size(), 5u) << target;
    }
  }
}

TEST(RunAnalysis, IndependentOfTrialOrder) {
  Corpus a = make_corpus(20, 6);
  Corpus b = a;
  std::mt19937 shuffle_rng(7);
  std::shuffle(b.trials.begin(), b.trials.end(), shuffle_rng);
  std::shuffle(b.labels.begin(), b.labels.end(), shuffle_rng);
  EXPECT_EQ(emit_json(run_analysis(a, {})), emit_json(run_analysis(b, {})));
}

TEST(EmitJson, CanonicalRoundTrip) {
  Corpus corpus = make_corpus(15, 8);
  corpus.trials[0].features.reset();
  corpus.trials[0].missing_saliency_reason = "no saliency frames";
  const auto report = run_analysis(corpus, {});
  const std::string json = emit_json(report);
  EXPECT_EQ(json, emit_json(report));
  EXPECT_EQ(emit_json(parse_report_json(json)), json);
  EXPECT_EQ(json.back(), '\n');
  EXPECT_NE(json.find("\"error\": null"), std::string::npos);
  // keys appear in sorted order at top level
  const auto cca_pos = json.find("\"cca_au_emotion\"");
  const auto pcc_pos = json.find("\"pcc\"");
  const auto prov_pos = json.find("\"provenance\"");
  EXPECT_LT(cca_pos, pcc_pos);
  EXPECT_LT(pcc_pos, prov_pos);
}

TEST(EmitJson, NullsForEmptySections) {
  AnalysisReport report;
  report.pcc_table.push_back({"saliency_area", "valence", std::nullopt, "DegenerateInput: constant"});
  const std::string json = emit_json(report);
  EXPECT_NE(json.find("\"result\": null"), std::string::npos);
  EXPECT_NE(json.find("\"r\": null"), std::string::npos);
  EXPECT_EQ(emit_json(parse_report_json(json)), json);
  EXPECT_ERROR_CODE(parse_report_json("{"), ErrorCode::MalformedRow);
}

TEST(EmitPlotData, ShapesAndValuesMatchJson) {
  const auto report = run_analysis(make_corpus(40, 9), {});
  const auto files = emit_plot_data(report);
  const std::string json = emit_json(report);
  std::map<std::string, std::string> by_name;
  for (const auto& f : files) by_name[f.name] = f.content;
  ASSERT_TRUE(by_name.count("pcc_bars.csv"));
  ASSERT_TRUE(by_name.count("cca_saliency_au.csv"));
  ASSERT_TRUE(by_name.count("cca_au_emotion.csv"));
  for (const auto& [name, content] : by_name) {
    EXPECT_EQ(content.substr(0, content.find('\n')), "name,value,sign") << name;
    const auto rows = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n')) - 1;
    if (name.rfind("top5_", 0) == 0) EXPECT_LE(rows, 5u) << name;
    if (name == "pcc_bars.csv") EXPECT_EQ(rows, 4u);
    if (name == "cca_au_emotion.csv" || name == "cca_saliency_au.csv") {
      const auto& sec = name == "cca_au_emotion.csv" ? report.cca_au_vs_emotion : report.cca_saliency_vs_au;
      EXPECT_EQ(rows, kAuCount - sec.dropped_columns.size()) << name;
    }
  }
  const auto& c = report.pcc_table.front();
  const std::string line = c.feature + "_vs_" + c.emotion + "," + format_fixed17(c.result->r);
  EXPECT_NE(by_name["pcc_bars.csv"].find(line), std::string::npos);
  EXPECT_NE(json.find(format_fixed17(c.result->r)), std::string::npos);
}

TEST(FeatureCsv, HeadersAndRows) {
  oracle::Rng rng(10);
  const std::vector<TrialFeatures> trials{*make_record("a", rng, 2).features, *make_record("b", rng, 3).features};
  const auto frame_csv = emit_frame_features_csv(trials);
  const auto trial_csv = emit_trial_features_csv(trials);
  EXPECT_EQ(frame_csv.substr(0, frame_csv.find('\n')), "trial_id,frame_index,timestamp,saliency_area,region_count");
  EXPECT_EQ(trial_csv.substr(0, trial_csv.find('\n')), "trial_id,mean_saliency_area,mean_region_count");
  EXPECT_EQ(std::count(frame_csv.begin(), frame_csv.end(), '\n'), 6);
  EXPECT_EQ(std::count(trial_csv.begin(), trial_csv.end(), '\n'), 3);
}

TEST(LoadCorpus, DigestIndependentOfManifestOrderAndMissingStreamsRecorded) {
  TempDir dir("load_corpus");
  SynthConfig cfg;
  cfg.trial_count = 12;
  cfg.frames_per_trial = 4;
  cfg.width = cfg.height = 32;
  const auto synth = synth_corpus(cfg, dir.path());
  auto manifest = read_manifest_file(synth.manifest_path);
  const auto labels = read_labels_csv(read_file_text(synth.labels_path));
  std::filesystem::remove(manifest[3].au_csv);
  std::filesystem::remove_all(manifest[5].saliency_dir);

  const Corpus a = load_corpus(manifest, labels, {});
  std::reverse(manifest.begin(), manifest.end());
  const Corpus b = load_corpus(manifest, labels, {});
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_FALSE(a.trials[3].au);
  EXPECT_EQ(a.trials[3].missing_au_reason, "AU file missing");
  EXPECT_FALSE(a.trials[5].features);

  const auto report = run_analysis(a, {});
  EXPECT_EQ(cell(report, "region_count", "valence").result->n, 11u);
  EXPECT_EQ(report.cca_au_vs_emotion.observations, 11u);
}

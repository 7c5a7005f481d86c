#include <gtest/gtest.h>

#include "oracles/oracles.hpp"
#include "salaffect/features.hpp"
#include "salaffect/image_io.hpp"
#include "salaffect/report.hpp"
#include "salaffect/stats.hpp"
#include "salaffect/synth.hpp"
#include "support/test_support.hpp"

using namespace salaffect;
using testing_support::TempDir;

namespace {

std::map<std::string, std::string> snapshot(const std::filesystem::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : std::filesystem::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[std::filesystem::relative(e.path(), root).string()] = read_file_text(e.path());
  }
  return files;
}

}  // namespace

TEST(RenderSynthFrame, RegionCountMatchesFloodFill) {
  std::uint64_t state = 99;
  for (std::size_t regions = 1; regions <= 4; ++regions) {
    for (int rep = 0; rep < 25; ++rep) {
      double area = 0.0;
      const auto map = render_synth_frame(64, 64, regions, state, &area);
      const auto mask = binarize(map, 0.5);
      const std::vector<std::uint8_t> bits(mask.bits().begin(), mask.bits().end());
      const auto ref = oracle::flood_fill(bits, 64, 64, 8);
      EXPECT_EQ(ref.sizes.size(), regions);
      const auto f = extract_frame_features(map, FeatureConfig{}, 0, 0.0);
      EXPECT_EQ(f.region_count, regions);
      EXPECT_DOUBLE_EQ(f.saliency_area, area);
    }
  }
}

TEST(SynthCorpus, Deterministic) {
  TempDir a("synth_a");
  TempDir b("synth_b");
  SynthConfig cfg;
  cfg.seed = 7;
  cfg.trial_count = 10;
  cfg.frames_per_trial = 3;
  cfg.width = cfg.height = 24;
  synth_corpus(cfg, a.path());
  synth_corpus(cfg, b.path());
  EXPECT_EQ(snapshot(a.path()), snapshot(b.path()));
  cfg.seed = 8;
  synth_corpus(cfg, b.path());
  EXPECT_NE(snapshot(a.path()), snapshot(b.path()));
}

TEST(SynthCorpus, NoiselessPlantIsExactlyLinear) {
  TempDir dir("synth_plant");
  SynthConfig cfg;
  cfg.trial_count = 30;
  cfg.frames_per_trial = 6;
  cfg.width = cfg.height = 32;
  cfg.noise_sd = 0.0;
  cfg.region_valence_slope = 1.0;
  cfg.area_valence_slope = 0.0;
  const auto synth = synth_corpus(cfg, dir.path());
  const auto manifest = read_manifest_file(synth.manifest_path);
  const auto labels = read_labels_csv(read_file_text(synth.labels_path));
  const auto report = run_analysis(load_corpus(manifest, labels, {}), {});
  for (const auto& c : report.pcc_table) {
    if (c.feature == "region_count" && c.emotion == "valence") {
      ASSERT_TRUE(c.result);
      EXPECT_NEAR(c.result->r, 1.0, 1e-9);
    }
  }
}

TEST(SynthCorpus, ExtractedFeaturesMatchTruth) {
  TempDir dir("synth_truth");
  SynthConfig cfg;
  cfg.trial_count = 10;
  cfg.frames_per_trial = 4;
  const auto synth = synth_corpus(cfg, dir.path());
  const auto corpus = load_corpus(read_manifest_file(synth.manifest_path), {}, {});
  ASSERT_EQ(corpus.trials.size(), synth.truth.size());
  for (std::size_t t = 0; t < synth.truth.size(); ++t) {
    ASSERT_TRUE(corpus.trials[t].features);
    EXPECT_EQ(corpus.trials[t].trial_id, synth.truth[t].trial_id);
    EXPECT_DOUBLE_EQ(corpus.trials[t].features->mean_region_count, synth.truth[t].mean_region_count);
    ASSERT_TRUE(corpus.trials[t].au);
    EXPECT_EQ(corpus.trials[t].au->size(), 4u);
  }
}

TEST(SynthConfig, Validation) {
  SynthConfig cfg;
  cfg.trial_count = 5;
  EXPECT_ERROR_CODE(cfg.validate(), ErrorCode::InvalidArgument);
  cfg = {};
  cfg.frames_per_trial = 1;
  EXPECT_ERROR_CODE(cfg.validate(), ErrorCode::InvalidArgument);
  cfg = {};
  cfg.noise_sd = -1;
  EXPECT_ERROR_CODE(cfg.validate(), ErrorCode::InvalidArgument);
}

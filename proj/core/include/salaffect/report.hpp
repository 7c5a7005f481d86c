#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "salaffect/cca.hpp"
#include "salaffect/features.hpp"
#include "salaffect/ingest.hpp"
#include "salaffect/stats.hpp"
#include "salaffect/types.hpp"

namespace salaffect {

inline constexpr double kDefaultTargetFps = 2.0;
inline constexpr std::size_t kTopContributors = 5;
inline constexpr int kReportSchemaVersion = 1;

struct AnalysisConfig {
  FeatureConfig features;
  double target_fps = kDefaultTargetFps;
  double ridge = kDefaultRidge;
};

/// One trial as seen by the analysis. A stream that could not be found on
/// disk is absent; the trial is then left out of every analysis needing it.
struct TrialRecord {
  std::string trial_id;
  std::optional<TrialFeatures> features;
  std::optional<std::vector<AuFrame>> au;
  std::string missing_saliency_reason;
  std::string missing_au_reason;
};

struct Corpus {
  std::vector<TrialRecord> trials;
  std::vector<EmotionLabel> labels;
  std::string digest;  // hex, independent of manifest order
};

/// Loads every manifest trial (concurrently), extracting per-frame features.
/// A missing saliency directory, an empty one, or a missing AU file marks
/// the stream absent; any other read failure propagates.
Corpus load_corpus(const std::vector<TrialManifestEntry>& manifest, std::vector<EmotionLabel> labels,
                   const AnalysisConfig& config);

struct PccCell {
  std::string feature;  // saliency_area | region_count
  std::string emotion;  // valence | arousal
  std::optional<PccResult> result;
  std::optional<std::string> error;
};

struct TopList {
  std::vector<NamedShare> entries;
  std::optional<std::string> error;
};

struct CcaSection {
  std::size_t observations = 0;
  std::vector<std::string> dropped_columns;
  std::optional<CcaResult> result;
  std::optional<std::string> error;
  std::map<std::string, TopList> top5;  // keyed by target variable
};

struct Exclusion {
  std::string trial_id;
  std::string analysis;  // pcc | cca_saliency_au | cca_au_emotion | labels
  std::string reason;

  friend bool operator==(const Exclusion&, const Exclusion&) = default;
};

struct Provenance {
  double threshold = 0.5;
  int connectivity = 8;
  double min_region_fraction = 0.001;
  double ridge = kDefaultRidge;
  double target_fps = kDefaultTargetFps;
  std::string corpus_digest;
  std::size_t trials_total = 0;
  std::vector<Exclusion> excluded;
};

struct AnalysisReport {
  std::vector<PccCell> pcc_table;  // saliency_area x {valence, arousal}, then region_count x ...
  CcaSection cca_saliency_vs_au;   // frame level
  CcaSection cca_au_vs_emotion;    // trial level, AU presence rates
  std::map<std::string, std::size_t> quadrant_census;
  Provenance provenance;
};

/// Trial-level Pearson table, frame-level saliency-vs-AU CCA, trial-level
/// AU-vs-emotion CCA and the circumplex census. Statistical failures inside
/// one cell are recorded in that cell; fewer than 3 trials with both
/// features and labels throws TooFewTrials.
AnalysisReport run_analysis(const Corpus& corpus, const AnalysisConfig& config);

/// Canonical JSON: sorted keys, two-space indent, "%.17g" floats, explicit
/// nulls, trailing newline.
std::string emit_json(const AnalysisReport& report);
AnalysisReport parse_report_json(std::string_view text);

struct OutputFile {
  std::string name;
  std::string content;
};

/// pcc_bars.csv, cca_saliency_au.csv, cca_au_emotion.csv and one
/// top5_<target>.csv per ranked target; every file is `name,value,sign`.
std::vector<OutputFile> emit_plot_data(const AnalysisReport& report);

// Tabular emitters shared by the CLI and the synthetic corpus writer.
std::string emit_au_csv(const std::vector<AuFrame>& frames);
std::string emit_labels_csv(const std::vector<EmotionLabel>& labels);
std::string emit_frame_features_csv(const std::vector<TrialFeatures>& trials);
std::string emit_trial_features_csv(const std::vector<TrialFeatures>& trials);

}  // namespace salaffect

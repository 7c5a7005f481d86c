#include "salaffect/report.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <tuple>

#include "salaffect/format.hpp"

namespace salaffect {

namespace fs = std::filesystem;

namespace {

TrialRecord load_record(const TrialManifestEntry& entry, const AnalysisConfig& config, std::uint64_t& digest) {
  TrialRecord record;
  record.trial_id = entry.trial_id;
  digest = fnv1a64(entry.trial_id);

  std::error_code ec;
  if (!fs::is_directory(entry.saliency_dir, ec)) {
    record.missing_saliency_reason = "saliency directory missing";
  } else {
    try {
      const SaliencyStream stream = load_saliency_stream(entry, config.target_fps);
      std::vector<FrameFeatures> frames;
      frames.reserve(stream.maps.size());
      for (std::size_t i = 0; i < stream.maps.size(); ++i) {
        frames.push_back(
            extract_frame_features(stream.maps[i], config.features, stream.frame_indices[i], stream.timestamps[i]));
      }
      record.features = aggregate_trial(entry.trial_id, std::move(frames));
      digest = fnv1a64("S" + hex64(stream.content_digest), digest);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyTrial) throw;
      record.missing_saliency_reason = "no saliency frames";
    }
  }

  if (!fs::is_regular_file(entry.au_csv, ec)) {
    record.missing_au_reason = "AU file missing";
  } else {
    try {
      AuStream stream = load_au_stream(entry, config.target_fps);
      record.au = std::move(stream.frames);
      digest = fnv1a64("A" + hex64(stream.content_digest), digest);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EmptyTrial) throw;
      record.missing_au_reason = "no AU rows";
    }
  }
  return record;
}

template <class Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  if (workers == 1 || count < 2) {
    work();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w) pool.emplace_back(work);
}

std::string describe(const Error& e) { return e.what(); }

// Runs the full CCA plus one single-target CCA per column of `targets`,
// whose partner-side shares rank the contributors for that target.
CcaSection analyse_cca(const DataMatrix& x, const DataMatrix& y, bool rank_against_x, double ridge) {
  CcaSection section;
  section.observations = x.rows();
  const DataMatrix& targets = rank_against_x ? x : y;
  for (const auto& name : targets.column_names()) section.top5[name] = TopList{};

  DataMatrix xs, ys;
  try {
    auto [xk, xd] = drop_constant_columns(x);
    auto [yk, yd] = drop_constant_columns(y);
    xs = std::move(xk);
    ys = std::move(yk);
    section.dropped_columns = xd;
    section.dropped_columns.insert(section.dropped_columns.end(), yd.begin(), yd.end());
  } catch (const Error& e) {
    section.error = describe(e);
    for (auto& [name, list] : section.top5) list.error = section.error;
    return section;
  }

  try {
    section.result = cca(xs, ys, ridge);
  } catch (const Error& e) {
    section.error = describe(e);
  }

  const DataMatrix& kept_targets = rank_against_x ? xs : ys;
  const DataMatrix& partners = rank_against_x ? ys : xs;
  for (auto& [name, list] : section.top5) {
    const auto& kept = kept_targets.column_names();
    const auto it = std::find(kept.begin(), kept.end(), name);
    if (it == kept.end()) {
      list.error = std::string(to_string(ErrorCode::DegenerateInput)) + ": '" + name + "' is constant";
      continue;
    }
    const std::size_t col = static_cast<std::size_t>(it - kept.begin());
    try {
      const CcaResult single = cca(kept_targets.select_columns(std::span(&col, 1)), partners, ridge);
      const auto shares = single.named_y_shares();
      list.entries = top_k_contributors(shares, std::min(kTopContributors, shares.size()));
    } catch (const Error& e) {
      list.error = describe(e);
    }
  }
  return section;
}

std::vector<std::string> au_column_names() {
  std::vector<std::string> names;
  for (const auto& d : AuCatalog::entries()) names.emplace_back(d.code);
  return names;
}

}  // namespace

Corpus load_corpus(const std::vector<TrialManifestEntry>& manifest, std::vector<EmotionLabel> labels,
                   const AnalysisConfig& config) {
  config.features.validate();
  std::vector<TrialManifestEntry> entries = manifest;
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.trial_id < b.trial_id; });

  std::vector<TrialRecord> records(entries.size());
  std::vector<std::uint64_t> digests(entries.size());
  std::vector<std::exception_ptr> failures(entries.size());
  parallel_for(entries.size(), [&](std::size_t i) {
    try {
      records[i] = load_record(entries[i], config, digests[i]);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  });
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) { return a.trial_id() < b.trial_id(); });
  std::uint64_t digest = kFnvOffset;
  for (const auto d : digests) digest = fnv1a64(hex64(d), digest);
  for (const auto& l : labels) {
    digest = fnv1a64(l.trial_id() + "," + format_shortest(l.valence()) + "," + format_shortest(l.arousal()), digest);
  }
  return Corpus{std::move(records), std::move(labels), hex64(digest)};
}

AnalysisReport run_analysis(const Corpus& corpus, const AnalysisConfig& config) {
  AnalysisReport report;
  auto& prov = report.provenance;
  prov.threshold = config.features.threshold;
  prov.connectivity = static_cast<int>(config.features.connectivity);
  prov.min_region_fraction = config.features.min_region_fraction;
  prov.ridge = config.ridge;
  prov.target_fps = config.target_fps;
  prov.corpus_digest = corpus.digest;
  prov.trials_total = corpus.trials.size();

  std::vector<const TrialRecord*> trials;
  for (const auto& t : corpus.trials) trials.push_back(&t);
  std::sort(trials.begin(), trials.end(), [](const auto* a, const auto* b) { return a->trial_id < b->trial_id; });

  std::map<std::string, const EmotionLabel*> label_of;
  for (const auto& l : corpus.labels) label_of[l.trial_id()] = &l;
  std::map<std::string, bool> in_manifest;
  for (const auto* t : trials) in_manifest[t->trial_id] = true;
  for (const auto& [id, label] : label_of) {
    if (!in_manifest.count(id)) prov.excluded.push_back({id, "labels", "label has no manifest entry"});
  }

  auto exclude = [&](const TrialRecord& t, const char* analysis, bool need_features, bool need_au, bool need_label) {
    std::vector<std::string> reasons;
    if (need_features && !t.features) reasons.push_back(t.missing_saliency_reason);
    if (need_au && !t.au) reasons.push_back(t.missing_au_reason);
    if (need_label && !label_of.count(t.trial_id)) reasons.push_back("label missing");
    if (reasons.empty()) return false;
    std::string reason = reasons.front();
    for (std::size_t i = 1; i < reasons.size(); ++i) reason += "; " + reasons[i];
    prov.excluded.push_back({t.trial_id, analysis, reason});
    return true;
  };

  // Pearson table at trial level
  std::vector<double> area, regions, valence, arousal;
  for (const auto* t : trials) {
    if (exclude(*t, "pcc", true, false, true)) continue;
    const EmotionLabel& l = *label_of.at(t->trial_id);
    area.push_back(t->features->mean_saliency_area);
    regions.push_back(t->features->mean_region_count);
    valence.push_back(l.valence());
    arousal.push_back(l.arousal());
  }
  if (area.size() < 3) {
    throw Error(ErrorCode::TooFewTrials,
                std::to_string(area.size()) + " trials with features and labels (at least 3 required)");
  }
  const std::pair<const char*, const std::vector<double>*> features[] = {{"saliency_area", &area},
                                                                         {"region_count", &regions}};
  const std::pair<const char*, const std::vector<double>*> emotions[] = {{"valence", &valence}, {"arousal", &arousal}};
  for (const auto& [fname, fvals] : features) {
    for (const auto& [ename, evals] : emotions) {
      PccCell cell{fname, ename, std::nullopt, std::nullopt};
      try {
        cell.result = pearson(*fvals, *evals);
      } catch (const Error& e) {
        cell.error = describe(e);
      }
      report.pcc_table.push_back(std::move(cell));
    }
  }

  const auto au_names = au_column_names();

  // saliency vs AU, frame level, streams paired by sample ordinal
  {
    std::vector<double> xv, yv;
    std::size_t rows = 0;
    for (const auto* t : trials) {
      if (exclude(*t, "cca_saliency_au", true, true, false)) continue;
      const auto& frames = t->features->frames;
      const auto& au = *t->au;
      const std::size_t paired = std::min(frames.size(), au.size());
      for (std::size_t i = 0; i < paired; ++i) {
        xv.push_back(frames[i].saliency_area);
        xv.push_back(static_cast<double>(frames[i].region_count));
        for (const auto p : au[i].presence) yv.push_back(p);
        ++rows;
      }
    }
    report.cca_saliency_vs_au = analyse_cca(DataMatrix({"saliency_area", "region_count"}, rows, std::move(xv)),
                                            DataMatrix(au_names, rows, std::move(yv)), true, config.ridge);
  }

  // AU presence rates vs felt emotion, trial level
  {
    std::vector<double> xv, yv;
    std::size_t rows = 0;
    for (const auto* t : trials) {
      if (exclude(*t, "cca_au_emotion", false, true, true)) continue;
      std::array<double, kAuCount> rate{};
      for (const auto& f : *t->au) {
        for (std::size_t a = 0; a < kAuCount; ++a) rate[a] += f.presence[a];
      }
      for (auto& r : rate) xv.push_back(r / static_cast<double>(t->au->size()));
      const EmotionLabel& l = *label_of.at(t->trial_id);
      yv.push_back(l.valence());
      yv.push_back(l.arousal());
      ++rows;
    }
    report.cca_au_vs_emotion = analyse_cca(DataMatrix(au_names, rows, std::move(xv)),
                                           DataMatrix({"valence", "arousal"}, rows, std::move(yv)), false, config.ridge);
  }

  for (const auto q : kAllQuadrants) report.quadrant_census[std::string(to_string(q))] = 0;
  for (const auto* t : trials) {
    const auto it = label_of.find(t->trial_id);
    if (it != label_of.end()) ++report.quadrant_census[std::string(to_string(classify_quadrant(*it->second)))];
  }

  std::sort(prov.excluded.begin(), prov.excluded.end(), [](const Exclusion& a, const Exclusion& b) {
    return std::tie(a.trial_id, a.analysis) < std::tie(b.trial_id, b.analysis);
  });
  return report;
}

}  // namespace salaffect

#include "salaffect/format.hpp"
#include "salaffect/report.hpp"

namespace salaffect {

namespace {

std::string sign_of(double v) {
  if (v > 0.0) return "+";
  if (v < 0.0) return "-";
  return "0";
}

std::string share_rows(const std::vector<NamedShare>& shares) {
  std::string out = "name,value,sign\n";
  for (const auto& s : shares) out += s.name + "," + format_fixed17(s.share) + "," + sign_of(s.share) + "\n";
  return out;
}

}  // namespace

std::string emit_au_csv(const std::vector<AuFrame>& frames) {
  std::string out = "frame, timestamp";
  for (std::size_t a = 0; a < kAuCount; ++a) out += ", " + AuCatalog::presence_column(a);
  out += "\n";
  for (const auto& f : frames) {
    out += std::to_string(f.frame_index) + ", " + format_shortest(f.timestamp);
    for (const auto p : f.presence) out += p ? ", 1" : ", 0";
    out += "\n";
  }
  return out;
}

std::string emit_labels_csv(const std::vector<EmotionLabel>& labels) {
  std::string out = "trial_id,valence,arousal\n";
  for (const auto& l : labels) {
    out += l.trial_id() + "," + format_shortest(l.valence()) + "," + format_shortest(l.arousal()) + "\n";
  }
  return out;
}

std::string emit_frame_features_csv(const std::vector<TrialFeatures>& trials) {
  std::string out = "trial_id,frame_index,timestamp,saliency_area,region_count\n";
  for (const auto& t : trials) {
    for (const auto& f : t.frames) {
      out += t.trial_id + "," + std::to_string(f.frame_index) + "," + format_fixed17(f.timestamp) + "," +
             format_fixed17(f.saliency_area) + "," + std::to_string(f.region_count) + "\n";
    }
  }
  return out;
}

std::string emit_trial_features_csv(const std::vector<TrialFeatures>& trials) {
  std::string out = "trial_id,mean_saliency_area,mean_region_count\n";
  for (const auto& t : trials) {
    out += t.trial_id + "," + format_fixed17(t.mean_saliency_area) + "," + format_fixed17(t.mean_region_count) + "\n";
  }
  return out;
}

std::vector<OutputFile> emit_plot_data(const AnalysisReport& report) {
  std::vector<OutputFile> files;

  std::string pcc = "name,value,sign\n";
  for (const auto& cell : report.pcc_table) {
    const std::string name = cell.feature + "_vs_" + cell.emotion;
    if (cell.result) {
      pcc += name + "," + format_fixed17(cell.result->r) + "," + sign_of(cell.result->r) + "\n";
    } else {
      pcc += name + ",NA,NA\n";
    }
  }
  files.push_back({"pcc_bars.csv", std::move(pcc)});

  const auto& sal = report.cca_saliency_vs_au;
  files.push_back({"cca_saliency_au.csv", share_rows(sal.result ? sal.result->named_y_shares() : std::vector<NamedShare>{})});
  const auto& emo = report.cca_au_vs_emotion;
  files.push_back({"cca_au_emotion.csv", share_rows(emo.result ? emo.result->named_x_shares() : std::vector<NamedShare>{})});

  for (const auto* section : {&sal, &emo}) {
    for (const auto& [target, list] : section->top5) files.push_back({"top5_" + target + ".csv", share_rows(list.entries)});
  }
  return files;
}

}  // namespace salaffect

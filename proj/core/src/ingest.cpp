#include "salaffect/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "salaffect/format.hpp"
#include "salaffect/image_io.hpp"

namespace salaffect {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct CsvLine {
  std::size_t line_number;  // 1-based
  std::vector<std::string_view> fields;
};

// Splits into trimmed comma-separated fields; blank lines are skipped.
std::vector<CsvLine> split_csv(std::string_view text) {
  std::vector<CsvLine> lines;
  std::size_t line_number = 0;
  for (auto raw : split(text, '\n')) {
    ++line_number;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (trim(raw).empty()) continue;
    CsvLine line{line_number, split(raw, ',')};
    for (auto& f : line.fields) f = trim(f);
    lines.push_back(std::move(line));
  }
  return lines;
}

std::map<std::string, std::size_t> header_index(const CsvLine& header) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.fields.size(); ++i) index.emplace(to_lower(header.fields[i]), i);
  return index;
}

std::size_t require_column(const std::map<std::string, std::size_t>& index, const std::string& name) {
  const auto it = index.find(to_lower(name));
  if (it == index.end()) throw Error(ErrorCode::MissingColumn, name);
  return it->second;
}

[[noreturn]] void malformed(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line) + ": " + what);
}

double field_double(const CsvLine& line, std::size_t col, std::string_view name) {
  double v = 0.0;
  if (!parse_double(line.fields[col], v) || !std::isfinite(v)) {
    malformed(line.line_number, "column '" + std::string(name) + "' is not a number: '" +
                                    std::string(line.fields[col]) + "'");
  }
  return v;
}

}  // namespace

std::vector<TrialManifestEntry> read_manifest(std::string_view json_text, const fs::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::BadManifest, std::string("invalid JSON: ") + e.what());
  }
  const json* trials = &doc;
  if (doc.is_object()) {
    if (!doc.contains("trials")) throw Error(ErrorCode::BadManifest, "missing 'trials' array");
    trials = &doc["trials"];
  }
  if (!trials->is_array()) throw Error(ErrorCode::BadManifest, "'trials' must be an array");

  auto resolve = [&](const std::string& p) {
    const fs::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  };

  std::vector<TrialManifestEntry> entries;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < trials->size(); ++i) {
    const json& t = (*trials)[i];
    TrialManifestEntry e;
    try {
      e.trial_id = t.at("trial_id").get<std::string>();
      e.saliency_dir = resolve(t.at("saliency_dir").get<std::string>());
      e.saliency_fps = t.at("saliency_fps").get<double>();
      e.au_csv = resolve(t.at("au_csv").get<std::string>());
      e.au_fps = t.at("au_fps").get<double>();
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::BadManifest, "entry " + std::to_string(i) + ": " + ex.what());
    }
    if (e.trial_id.empty()) throw Error(ErrorCode::BadManifest, "entry " + std::to_string(i) + ": empty trial_id");
    if (!(e.saliency_fps > 0.0) || !(e.au_fps > 0.0) || !std::isfinite(e.saliency_fps) || !std::isfinite(e.au_fps)) {
      throw Error(ErrorCode::BadManifest, "trial '" + e.trial_id + "': frame rates must be positive");
    }
    if (!seen.insert(e.trial_id).second) {
      throw Error(ErrorCode::BadManifest, "duplicate trial_id '" + e.trial_id + "'");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<TrialManifestEntry> read_manifest_file(const fs::path& manifest_path) {
  return read_manifest(read_file_text(manifest_path), manifest_path.parent_path());
}

std::string write_manifest(const std::vector<TrialManifestEntry>& entries) {
  json trials = json::array();
  for (const auto& e : entries) {
    trials.push_back({{"trial_id", e.trial_id},
                      {"saliency_dir", e.saliency_dir.generic_string()},
                      {"saliency_fps", e.saliency_fps},
                      {"au_csv", e.au_csv.generic_string()},
                      {"au_fps", e.au_fps}});
  }
  return json{{"trials", trials}}.dump(2) + "\n";
}

std::vector<AuFrame> read_au_csv(std::string_view text) {
  const auto lines = split_csv(text);
  if (lines.empty()) throw Error(ErrorCode::MissingColumn, "frame (empty AU CSV)");
  const auto index = header_index(lines.front());
  const std::size_t frame_col = require_column(index, "frame");
  const std::size_t time_col = require_column(index, "timestamp");
  std::array<std::size_t, kAuCount> au_cols{};
  for (std::size_t a = 0; a < kAuCount; ++a) au_cols[a] = require_column(index, AuCatalog::presence_column(a));
  const std::size_t width = lines.front().fields.size();

  std::vector<AuFrame> frames;
  frames.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const CsvLine& line = lines[r];
    if (line.fields.size() != width) {
      malformed(line.line_number, "expected " + std::to_string(width) + " fields, found " +
                                      std::to_string(line.fields.size()));
    }
    AuFrame frame;
    const double frame_value = field_double(line, frame_col, "frame");
    if (frame_value < 0.0 || frame_value != std::floor(frame_value)) {
      malformed(line.line_number, "frame must be a non-negative integer");
    }
    frame.frame_index = static_cast<std::size_t>(frame_value);
    frame.timestamp = field_double(line, time_col, "timestamp");
    if (frame.timestamp < 0.0) malformed(line.line_number, "negative timestamp");
    for (std::size_t a = 0; a < kAuCount; ++a) {
      double v = 0.0;
      const std::string_view raw = line.fields[au_cols[a]];
      const bool ok = parse_double(raw, v) && std::abs(v - std::round(v)) <= 1e-6 &&
                      (std::round(v) == 0.0 || std::round(v) == 1.0);
      if (!ok) {
        throw Error(ErrorCode::NonBinaryPresence, "line " + std::to_string(line.line_number) + ", column " +
                                                      AuCatalog::presence_column(a) + ": '" + std::string(raw) + "'");
      }
      frame.presence[a] = std::round(v) == 1.0 ? 1 : 0;
    }
    frames.push_back(frame);
  }
  return frames;
}

std::vector<EmotionLabel> read_labels_csv(std::string_view text) {
  const auto lines = split_csv(text);
  if (lines.empty()) throw Error(ErrorCode::MissingColumn, "trial_id (empty labels CSV)");
  const auto index = header_index(lines.front());
  const std::size_t id_col = require_column(index, "trial_id");
  const std::size_t v_col = require_column(index, "valence");
  const std::size_t a_col = require_column(index, "arousal");
  const std::size_t width = lines.front().fields.size();

  std::vector<EmotionLabel> labels;
  std::set<std::string> seen;
  for (std::size_t r = 1; r < lines.size(); ++r) {
    const CsvLine& line = lines[r];
    if (line.fields.size() != width) {
      malformed(line.line_number, "expected " + std::to_string(width) + " fields");
    }
    std::string id(line.fields[id_col]);
    if (id.empty()) malformed(line.line_number, "empty trial_id");
    if (!seen.insert(id).second) malformed(line.line_number, "duplicate trial_id '" + id + "'");
    labels.emplace_back(std::move(id), field_double(line, v_col, "valence"), field_double(line, a_col, "arousal"));
  }
  return labels;
}

std::vector<std::size_t> sample_frames(double native_fps, double target_fps, std::size_t frame_count) {
  if (!(native_fps > 0.0) || !(target_fps > 0.0) || !std::isfinite(native_fps) || !std::isfinite(target_fps)) {
    throw Error(ErrorCode::InvalidArgument, "frame rates must be positive and finite");
  }
  if (target_fps > native_fps) {
    std::ostringstream msg;
    msg << "target " << target_fps << " fps exceeds native " << native_fps << " fps";
    throw Error(ErrorCode::TargetRateExceedsNative, msg.str());
  }
  if (frame_count == 0) throw Error(ErrorCode::InvalidArgument, "frame_count must be positive");

  std::vector<std::size_t> indices;
  for (std::size_t k = 0;; ++k) {
    const double position = std::floor(static_cast<double>(k) * native_fps / target_fps);
    if (position >= static_cast<double>(frame_count)) break;
    const auto index = static_cast<std::size_t>(position);
    if (indices.empty() || index > indices.back()) indices.push_back(index);
  }
  return indices;
}

std::vector<fs::path> list_saliency_frames(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::IoError, "saliency directory '" + dir.string() + "' not found");

  std::vector<std::pair<std::size_t, fs::path>> numbered;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    const std::string ext = to_lower(entry.path().extension().string());
    if ((ext != ".pgm" && ext != ".png") || name.rfind("frame_", 0) != 0) continue;
    const std::string_view digits = std::string_view(name).substr(6, name.size() - 6 - ext.size());
    std::size_t number = 0;
    if (digits.size() < 6 ||  // frame_%06d
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }) ||
        !parse_size(digits, number)) {
      continue;
    }
    numbered.emplace_back(number, entry.path());
  }
  std::sort(numbered.begin(), numbered.end());
  std::vector<fs::path> paths;
  paths.reserve(numbered.size());
  for (auto& [n, p] : numbered) paths.push_back(std::move(p));
  return paths;
}

SaliencyStream load_saliency_stream(const TrialManifestEntry& entry, double target_fps) {
  const auto files = list_saliency_frames(entry.saliency_dir);
  if (files.empty()) {
    throw Error(ErrorCode::EmptyTrial, "trial '" + entry.trial_id + "': no saliency frames in '" +
                                           entry.saliency_dir.string() + "'");
  }
  SaliencyStream stream;
  stream.frame_indices = sample_frames(entry.saliency_fps, target_fps, files.size());
  stream.content_digest = kFnvOffset;
  for (const std::size_t idx : stream.frame_indices) {
    const auto bytes = read_file_bytes(files[idx]);
    stream.content_digest = fnv1a64(bytes, stream.content_digest);
    try {
      stream.maps.push_back(read_saliency_frame(bytes));
    } catch (const Error& e) {
      throw Error(e.code(), files[idx].string() + ": " + e.what());
    }
    stream.timestamps.push_back(static_cast<double>(idx) / entry.saliency_fps);
  }
  return stream;
}

AuStream load_au_stream(const TrialManifestEntry& entry, double target_fps) {
  const std::string text = read_file_text(entry.au_csv);
  std::vector<AuFrame> all;
  try {
    all = read_au_csv(text);
  } catch (const Error& e) {
    throw Error(e.code(), entry.au_csv.string() + ": " + e.what());
  }
  if (all.empty()) {
    throw Error(ErrorCode::EmptyTrial, "trial '" + entry.trial_id + "': AU CSV has no data rows");
  }
  AuStream stream;
  stream.content_digest = fnv1a64(text);
  for (const std::size_t idx : sample_frames(entry.au_fps, target_fps, all.size())) {
    stream.frames.push_back(all[idx]);
  }
  return stream;
}

TrialStreams load_trial(const TrialManifestEntry& entry, double target_fps) {
  TrialStreams streams;
  std::error_code ec;
  if (!fs::is_directory(entry.saliency_dir, ec)) {
    throw Error(ErrorCode::EmptyTrial, "trial '" + entry.trial_id + "': saliency directory '" +
                                           entry.saliency_dir.string() + "' missing");
  }
  streams.saliency = load_saliency_stream(entry, target_fps);
  streams.au = load_au_stream(entry, target_fps);
  return streams;
}

}  // namespace salaffect

#include <cmath>

#include <json.hpp>

#include "salaffect/format.hpp"
#include "salaffect/report.hpp"

namespace salaffect {

using json = nlohmann::json;

namespace {

// ---- canonical writer ------------------------------------------------------

void write_canonical(const json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      // object_t is std::map, so iteration is already in sorted key order
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(it.key()).dump(-1, ' ', false) + ": ";
        write_canonical(it.value(), out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write_canonical(j[i], out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case json::value_t::number_float: {
      const double v = j.get<double>();
      out += std::isfinite(v) ? format_fixed17(v) : "null";
      return;
    }
    default:
      out += j.dump(-1, ' ', false);
  }
}

// ---- report <-> json --------------------------------------------------------

json opt_string(const std::optional<std::string>& s) { return s ? json(*s) : json(nullptr); }

std::optional<std::string> read_opt_string(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::string>();
}

json shares_json(const std::vector<NamedShare>& shares) {
  json arr = json::array();
  for (const auto& s : shares) arr.push_back({{"name", s.name}, {"share", s.share}});
  return arr;
}

std::vector<NamedShare> read_shares(const json& j) {
  std::vector<NamedShare> out;
  for (const auto& e : j) out.push_back({e.at("name").get<std::string>(), e.at("share").get<double>()});
  return out;
}

json cca_json(const CcaResult& r) {
  return {{"correlations", r.correlations}, {"observations", r.observations}, {"x_names", r.x_names},
          {"y_names", r.y_names},           {"x_weights", r.x_weights},       {"y_weights", r.y_weights},
          {"x_shares", r.x_shares},         {"y_shares", r.y_shares}};
}

CcaResult read_cca(const json& j) {
  CcaResult r;
  r.correlations = j.at("correlations").get<std::vector<double>>();
  r.observations = j.at("observations").get<std::size_t>();
  r.x_names = j.at("x_names").get<std::vector<std::string>>();
  r.y_names = j.at("y_names").get<std::vector<std::string>>();
  r.x_weights = j.at("x_weights").get<std::vector<std::vector<double>>>();
  r.y_weights = j.at("y_weights").get<std::vector<std::vector<double>>>();
  r.x_shares = j.at("x_shares").get<std::vector<double>>();
  r.y_shares = j.at("y_shares").get<std::vector<double>>();
  return r;
}

json section_json(const CcaSection& s) {
  json top = json::object();
  for (const auto& [target, list] : s.top5) {
    top[target] = {{"entries", shares_json(list.entries)}, {"error", opt_string(list.error)}};
  }
  return {{"observations", s.observations},
          {"dropped_columns", s.dropped_columns},
          {"result", s.result ? cca_json(*s.result) : json(nullptr)},
          {"error", opt_string(s.error)},
          {"top5", top}};
}

CcaSection read_section(const json& j) {
  CcaSection s;
  s.observations = j.at("observations").get<std::size_t>();
  s.dropped_columns = j.at("dropped_columns").get<std::vector<std::string>>();
  if (!j.at("result").is_null()) s.result = read_cca(j.at("result"));
  s.error = read_opt_string(j.at("error"));
  for (auto it = j.at("top5").begin(); it != j.at("top5").end(); ++it) {
    s.top5[it.key()] = TopList{read_shares(it.value().at("entries")), read_opt_string(it.value().at("error"))};
  }
  return s;
}

json report_json(const AnalysisReport& report) {
  json pcc = json::array();
  for (const auto& c : report.pcc_table) {
    pcc.push_back({{"feature", c.feature},
                   {"emotion", c.emotion},
                   {"r", c.result ? json(c.result->r) : json(nullptr)},
                   {"p", c.result ? json(c.result->p) : json(nullptr)},
                   {"n", c.result ? json(c.result->n) : json(nullptr)},
                   {"error", opt_string(c.error)}});
  }
  const auto& p = report.provenance;
  json excluded = json::array();
  for (const auto& e : p.excluded) {
    excluded.push_back({{"trial_id", e.trial_id}, {"analysis", e.analysis}, {"reason", e.reason}});
  }
  json census = json::object();
  for (const auto& [name, count] : report.quadrant_census) census[name] = count;

  return {{"schema_version", kReportSchemaVersion},
          {"pcc", pcc},
          {"cca_saliency_au", section_json(report.cca_saliency_vs_au)},
          {"cca_au_emotion", section_json(report.cca_au_vs_emotion)},
          {"quadrant_census", census},
          {"provenance",
           {{"threshold", p.threshold},
            {"connectivity", p.connectivity},
            {"min_region_fraction", p.min_region_fraction},
            {"ridge", p.ridge},
            {"target_fps", p.target_fps},
            {"corpus_digest", p.corpus_digest},
            {"trials_total", p.trials_total},
            {"excluded", excluded}}}};
}

// Integral doubles are written without a fraction ("1"), which parses back
// as an integer; these fields must stay floats so the re-emit is identical.
double as_double(const json& j) { return j.get<double>(); }

}  // namespace

std::string emit_json(const AnalysisReport& report) {
  std::string out;
  write_canonical(report_json(report), out, 0);
  out += "\n";
  return out;
}

AnalysisReport parse_report_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::MalformedRow, std::string("report JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw Error(ErrorCode::UnsupportedFormat, "report schema version mismatch");
    }
    AnalysisReport report;
    for (const auto& c : j.at("pcc")) {
      PccCell cell{c.at("feature").get<std::string>(), c.at("emotion").get<std::string>(), std::nullopt,
                   read_opt_string(c.at("error"))};
      if (!c.at("r").is_null()) {
        cell.result = PccResult{as_double(c.at("r")), as_double(c.at("p")), c.at("n").get<std::size_t>()};
      }
      report.pcc_table.push_back(std::move(cell));
    }
    report.cca_saliency_vs_au = read_section(j.at("cca_saliency_au"));
    report.cca_au_vs_emotion = read_section(j.at("cca_au_emotion"));
    for (auto it = j.at("quadrant_census").begin(); it != j.at("quadrant_census").end(); ++it) {
      report.quadrant_census[it.key()] = it.value().get<std::size_t>();
    }
    const json& p = j.at("provenance");
    auto& prov = report.provenance;
    prov.threshold = as_double(p.at("threshold"));
    prov.connectivity = p.at("connectivity").get<int>();
    prov.min_region_fraction = as_double(p.at("min_region_fraction"));
    prov.ridge = as_double(p.at("ridge"));
    prov.target_fps = as_double(p.at("target_fps"));
    prov.corpus_digest = p.at("corpus_digest").get<std::string>();
    prov.trials_total = p.at("trials_total").get<std::size_t>();
    for (const auto& e : p.at("excluded")) {
      prov.excluded.push_back(
          {e.at("trial_id").get<std::string>(), e.at("analysis").get<std::string>(), e.at("reason").get<std::string>()});
    }
    return report;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::MalformedRow, std::string("report JSON: ") + e.what());
  }
}

}  // namespace salaffect

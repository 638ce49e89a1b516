#include "kmeff/report.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace kmeff::harness {

namespace {

using Json = nlohmann::ordered_json;

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace

void ExperimentReport::add(const std::string& key, double value) {
  summary.push_back({key, value, std::nullopt});
}

void ExperimentReport::add(const std::string& key, const stats::Estimate& estimate) {
  summary.push_back({key, estimate.value, estimate.half_width});
}

void ExperimentReport::note(const std::string& key, const std::string& text) {
  notes.push_back({key, text});
}

void ExperimentReport::verdict(const std::string& id, bool pass, double margin,
                               const std::string& detail) {
  verdicts.push_back({id, pass, margin, detail});
}

bool ExperimentReport::all_pass() const {
  for (const auto& v : verdicts) {
    if (!v.pass) return false;
  }
  return true;
}

double ExperimentReport::value(const std::string& key) const {
  for (const auto& s : summary) {
    if (s.key == key) return s.value;
  }
  throw std::out_of_range("report has no summary entry '" + key + "'");
}

const Verdict& ExperimentReport::find_verdict(const std::string& id) const {
  for (const auto& v : verdicts) {
    if (v.id == id) return v;
  }
  throw std::out_of_range("report has no verdict '" + id + "'");
}

std::string report_json(const ExperimentReport& report) {
  Json j;
  j["experiment"] = report.experiment;
  j["config"] = Json::parse(config_to_json(report.config));
  j["seed"] = report.config.seed;
  j["revision"] = report.revision;
  Json summaries = Json::object();
  for (const auto& s : report.summary) {
    if (s.half_width) {
      summaries[s.key] = Json{{"value", s.value}, {"half_width", *s.half_width}};
    } else {
      summaries[s.key] = s.value;
    }
  }
  j["summaries"] = summaries;
  Json notes = Json::object();
  for (const auto& n : report.notes) notes[n.key] = n.text;
  j["notes"] = notes;
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    verdicts.push_back(
        Json{{"id", v.id}, {"pass", v.pass}, {"margin", v.margin}, {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;
  j["samples"] = Json{{"file", "samples.csv"},
                      {"columns", report.columns},
                      {"count", report.rows.size()}};
  return j.dump(2) + "\n";
}

std::string samples_csv(const ExperimentReport& report) {
  std::string out;
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    if (i) out += ',';
    out += report.columns[i];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof(buf), "%.17g", row[i]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_report(const ExperimentReport& report, const std::string& dir) {
  const std::filesystem::path root(dir);
  std::error_code ec;
  std::filesystem::create_directories(root, ec);
  if (ec) throw std::runtime_error("cannot create output directory '" + dir + "': " + ec.message());
  write_file(root / "report.json", report_json(report));
  write_file(root / "samples.csv", samples_csv(report));
}

}  // namespace kmeff::harness

#include "dcg/report.hpp"

#include <cstdio>
#include <limits>
#include <ostream>

namespace dcg {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

int ExperimentReport::passed() const {
  int n = 0;
  for (const auto& t : trials) n += t.status == TrialStatus::Pass;
  return n;
}

int ExperimentReport::failed() const {
  int n = 0;
  for (const auto& t : trials) n += t.status == TrialStatus::Fail;
  return n;
}

int ExperimentReport::skipped() const {
  int n = 0;
  for (const auto& t : trials) n += t.status == TrialStatus::Skip;
  return n;
}

double ExperimentReport::worst_margin() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& t : trials)
    if (t.status != TrialStatus::Skip && t.margin < m) m = t.margin;
  return m;
}

namespace {
const char* status_name(TrialStatus s) {
  switch (s) {
    case TrialStatus::Pass: return "pass";
    case TrialStatus::Fail: return "fail";
    case TrialStatus::Skip: return "skip";
  }
  return "?";
}
}  // namespace

void ExperimentReport::write_text(std::ostream& os) const {
  os << "experiment: " << name << "\n";
  os << "seed: " << config.seed << "\n";
  os << "trials: " << config.trials << "\n";
  os << "size: " << config.size << "\n";
  os << "amplitude: " << format_double(config.amplitude) << "\n";
  os << "tolerance: " << format_double(config.tolerance) << "\n";
  for (const auto& t : trials) {
    os << "trial " << t.index << ": " << status_name(t.status);
    if (t.status != TrialStatus::Skip) os << " margin=" << format_double(t.margin);
    if (!t.note.empty()) os << " " << t.note;
    os << "\n";
  }
  for (const auto& row : table) os << "table: " << row << "\n";
  os << "summary: trials=" << trials.size() << " passed=" << passed() << " failed=" << failed()
     << " skipped=" << skipped() << " worst_margin=" << format_double(worst_margin()) << "\n";
}

void ExperimentReport::write_csv(std::ostream& os) const {
  if (!table.empty()) {
    for (const auto& row : table) os << row << "\n";
    return;
  }
  os << "trial,status,margin,note\n";
  for (const auto& t : trials) {
    os << t.index << "," << status_name(t.status) << ","
       << (t.status == TrialStatus::Skip ? "" : format_double(t.margin)) << "," << t.note << "\n";
  }
}

}  // namespace dcg

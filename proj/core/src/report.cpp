#include "flp/report.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

namespace flp {

void Report::add(const std::string& key, const std::string& value) {
  lines_.push_back({key, value, false});
}

void Report::add(const std::string& key, const Rat& value) { add(key, format_rat(value)); }

void Report::add(const std::string& key, std::size_t value) { add(key, std::to_string(value)); }

void Report::add_timing(const std::string& key, double seconds) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", seconds);
  lines_.push_back({key, std::string(buf) + "s", true});
}

void Report::write_human(std::ostream& out) const {
  std::size_t width = 0;
  for (const Line& line : lines_) width = std::max(width, line.key.size());
  for (const Line& line : lines_) {
    out << line.key;
    for (std::size_t pad = line.key.size(); pad < width + 2; ++pad) out << ' ';
    out << line.value << "\n";
  }
}

void Report::write_machine(std::ostream& out) const {
  std::vector<const Line*> kept;
  for (const Line& line : lines_)
    if (!line.timing) kept.push_back(&line);
  std::stable_sort(kept.begin(), kept.end(),
                   [](const Line* a, const Line* b) { return a->key < b->key; });
  for (const Line* line : kept) out << line->key << "\t" << line->value << "\n";
}

std::string format_rat(const Rat& value) { return value.get_str(); }

std::string format_decimal(const Rat& value, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, to_double(value));
  return buf;
}

void append_bound(Report& rep, const BoundResult& result) {
  std::string base = "bound.k" + std::to_string(result.level) + ".";
  rep.add(base + "omega", result.omega);
  rep.add(base + "omega_decimal", format_decimal(result.omega, 6));
  rep.add(base + "subsets", result.family_size);
  rep.add(base + "subsets_solved", result.solved_size);
  rep.add_timing(base + "subproblem_time", result.subproblem_seconds);
  rep.add_timing(base + "master_time", result.master_seconds);
}

void append_audit(Report& rep, const AuditReport& audit) {
  std::string base = "audit." + audit.name + ".";
  for (const FamilyVerdict& fv : audit.families) {
    std::string fbase = base + "family." + fv.family + ".";
    rep.add(fbase + "rows", fv.rows);
    rep.add(fbase + "ok", std::string(fv.satisfied ? "1" : "0"));
    rep.add(fbase + "mode", fv.mode);
    if (!fv.satisfied) {
      rep.add(fbase + "worst", fv.worst);
      rep.add(fbase + "worst_row", fv.worst_row);
    }
  }
  rep.add(base + "objective", audit.objective);
  rep.add(base + "expected", audit.expected);
  rep.add(base + "objective_match", std::string(audit.objective_match ? "1" : "0"));
  rep.add(base + "pass", std::string(audit.pass ? "1" : "0"));
}

}  // namespace flp

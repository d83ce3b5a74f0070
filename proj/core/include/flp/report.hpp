#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "flp/bound.hpp"
#include "flp/theory_audit.hpp"

namespace flp {

// Key/value report with two renderings. The machine form is line-oriented
// `key<TAB>value`, sorted by key, with timing lines left out, so identical
// computations produce byte-identical output regardless of insertion order
// or wall clock. The human form keeps insertion order and shows timings.
class Report {
 public:
  void add(const std::string& key, const std::string& value);
  void add(const std::string& key, const Rat& value);
  void add(const std::string& key, std::size_t value);
  void add_timing(const std::string& key, double seconds);

  void write_human(std::ostream& out) const;
  void write_machine(std::ostream& out) const;

 private:
  struct Line {
    std::string key;
    std::string value;
    bool timing = false;
  };
  std::vector<Line> lines_;
};

// Canonical value renderings shared by both forms.
std::string format_rat(const Rat& value);                  // "p" or "p/q"
std::string format_decimal(const Rat& value, int places);  // fixed decimal

// One key block per hierarchy level: omega, family and row counts, timings.
void append_bound(Report& rep, const BoundResult& result);

// One key block per audit: per-family verdicts, objective comparison, pass.
void append_audit(Report& rep, const AuditReport& audit);

}  // namespace flp

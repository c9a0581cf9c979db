#pragma once

#include "qlift/diagrams.hpp"

namespace qlift {

inline constexpr const char* kToolVersion = "0.1.0";

struct VerifyOptions {
  UniverseConfig universe;
  SweepOptions sweep;
  std::string universe_file;  // load instead of building when nonempty
};

struct Report {
  std::string tool_version = kToolVersion;
  VerifyOptions options;
  std::string universe_digest;
  int group_count = 0;
  int morphism_count = 0;
  std::vector<Verdict> verdicts;
  std::vector<std::pair<std::string, double>> timing;  // phase -> seconds
  bool pass = false;
};

/// Build (or load) the universe, run the sweep, assemble the report.
/// The morphism pool is built only when a selected diagram needs it.
Report run_verification(const VerifyOptions& options);

ordered_json verdict_to_json(const Verdict& v);
ordered_json report_to_json(const Report& r, bool include_timing = true);
/// Brief, catalog-independent morphism serialization (for counterexamples).
ordered_json morphism_brief_json(const Morphism& m);

std::string render_report_text(const Report& r);

}  // namespace qlift

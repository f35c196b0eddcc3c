#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "linechase/adversaries.hpp"
#include "linechase/chase_core.hpp"

namespace linechase {

class InstanceParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// Flips `line` so the first nonzero component of its direction is positive.
Line canonical_line(const Line& line);

/// Parses the JSON instance document
///   {"dim": d, "start": [...], "initial_line": {"point": [...], "dir": [...]},
///    "lines": [{"point": [...], "dir": [...]}, ...]}
/// ("initial_line" optional). Directions are normalized and sign-canonicalized.
/// Errors name the offending field, e.g. "lines[3].dir".
Instance parse_instance(const std::string& text);
Instance load_instance(const std::string& path);

std::string serialize_instance(const Instance& instance);
void save_instance(const Instance& instance, const std::string& path);

/// %.17g, so doubles round-trip.
std::string format_real(double v);

/// step, x0..x{d-1}, step_cost, cumulative_cost
void write_path_csv(std::ostream& out, const Path& path);

/// step, line point/dir, alg point, adversary point, per-step costs for both.
void write_transcript_csv(std::ostream& out, const AdversaryTranscript& transcript);

struct SweepRow {
  double beta = 0.0;
  double simulated_ratio = 0.0;
  double theoretical_ratio = 0.0;
  double gap = 0.0;
};

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct RatioRow {
  std::string instance_id;
  std::string policy;
  double alg_cost = 0.0;
  double opt_cost = 0.0;
  double ratio = 0.0;
  std::string notes;
};

void write_ratio_csv(std::ostream& out, const std::vector<RatioRow>& rows);

}  // namespace linechase

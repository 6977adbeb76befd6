#pragma once

#include <string>
#include <vector>

#include "subplanck/io.hpp"

namespace subplanck::cli {

/// Exit codes shared by every subcommand.
enum Exit : int { ok = 0, other = 1, validation = 2, truncation = 3, solver = 4 };

/// Top-level keys a run configuration may carry.
const std::vector<std::string>& config_keys();

/// Rejects unknown top-level keys.
void validate_config(const Json& cfg);

/// Each command reads the merged effective configuration, prints a JSON
/// summary to stdout and writes files under cfg["out"] when present.
int run_state(const Json& cfg);
int run_wigner(const Json& cfg);
int run_overlap(const Json& cfg);
int run_cfa(const Json& cfg);
int run_qfi(const Json& cfg);
int run_fidelity(const Json& cfg);
int run_locus(const Json& cfg);
int run_figure(const Json& cfg);
int run_verify_oracle(const Json& cfg);

/// "3" -> {3}; "0..2" -> {0, 1, 2}; "1,2,4" -> {1, 2, 4}.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace subplanck::cli

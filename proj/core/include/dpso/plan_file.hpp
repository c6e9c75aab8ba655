#pragma once

#include <filesystem>
#include <string_view>

#include "dpso/harness.hpp"

namespace dpso {

// Plain-text plan files: one `key = value` per line, `#` starts a comment,
// lists are comma separated. Recognised keys:
//
//   functions      all | name[,name...]
//   dimensions     10,30,50
//   algorithms     pso,dpso
//   runs           30
//   seed           42
//   kernel         gaussian | kl | hellinger
//   beta           0.1
//   alpha          1.0
//   c3             1.0
//   draws          per-dimension | scalar
//   omega, c1, c2, vmax_fraction, iterations, swarm_size, workers
//
// Keys not present keep the value already in `plan`.

/// Throws ParseError (with line number) or UnknownFunction.
void apply_plan_text(std::string_view text, ExperimentPlan& plan);

/// Throws IoFailure when the file cannot be read.
void apply_plan_file(const std::filesystem::path& path, ExperimentPlan& plan);

}  // namespace dpso

#pragma once

#include <string>
#include <vector>

namespace attnav {

// Subcommand entry point used by the binary and by in-process tests.
// Subcommands: train, distill, eval-nav, explain, metrics, plan-debug.
// Returns 0 on success; prints a diagnostic and returns nonzero otherwise.
int run_subcommand(const std::vector<std::string>& args);

}  // namespace attnav

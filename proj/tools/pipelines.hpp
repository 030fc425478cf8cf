#pragma once

// The verification pipelines behind each CLI subcommand. Every pipeline is a
// pure function of the config (and the seed inside it) and returns its checks
// and output files; nothing is written here.

#include "config.hpp"
#include "report.hpp"

namespace cgo::cli {

Report run_appendix_checks(const Config& config);
Report run_cauchy_checks(const Config& config);
Report run_decay(const Config& config);
Report run_cgo(const Config& config);
Report run_reconstruct(const Config& config);

}  // namespace cgo::cli

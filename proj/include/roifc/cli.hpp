#pragma once

#include <filesystem>

#include "roifc/report.hpp"

namespace roifc {

/// Writes report.json, embedding.csv, and figures/*.svg under `outdir`
/// (created if missing). All output bytes are deterministic functions of the
/// report.
void write_report_files(const AnalysisReport& report, const std::filesystem::path& outdir);

/// Full command-line entry point. Never calls exit(); returns the process
/// exit code: 0 success, 1 input or usage error, 2 numerical failure.
int run_cli(int argc, const char* const* argv);

}  // namespace roifc

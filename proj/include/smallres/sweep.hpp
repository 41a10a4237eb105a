#pragma once

/**
 * @file sweep.hpp
 * @brief Config-driven sweep campaigns that write CSV + JSON reports.
 *
 * Config files are flat `key = value` text; `#` starts a comment.
 *
 *   campaign    theorem | density | expsum | patterns
 *   name        report file stem (default: the campaign name)
 *   p_lo, p_hi  prime range, inclusive
 *   primes      explicit comma-separated prime list (overrides the range)
 *   sample      evenly strided sample size, 0 = all
 *   k           comma-separated list of k (theorem), or one k (density)
 *   q, a        progression; theorem: q fixes the largest modulus
 *   target      residue | nonresidue
 *   epsilon     exponent slack in the bound formula
 *   x_rule      fixed | bound | field (density)
 *   x           cutoff for x_rule = fixed
 *   scan_limit  least-prime scan limit (theorem)
 *   output_dir  directory for report files
 *   workers     worker threads
 *
 * Integers accept the base^exp+offset form.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "smallres/apsearch.hpp"
#include "smallres/report.hpp"

namespace smallres {

enum class Campaign { Theorem, Density, ExpSum, Patterns };

const char* to_string(Campaign c);

struct SweepConfig {
  Campaign campaign = Campaign::Theorem;
  std::string name;
  std::uint64_t p_lo = 100'000;
  std::uint64_t p_hi = 200'000;
  std::vector<std::uint64_t> primes;
  std::size_t sample = 0;
  std::vector<std::uint64_t> ks{2};
  std::optional<std::uint64_t> q;
  std::uint64_t a = 0;
  Verdict target = Verdict::Nonresidue;
  double epsilon = 0.5;
  XRule x_rule = XRule::WholeField;
  double x = 0;
  std::uint64_t scan_limit = kDefaultScanLimit;
  std::filesystem::path output_dir = "reports";
  unsigned workers = 1;
};

/// Throws UsageError on unknown keys or malformed values.
SweepConfig parse_sweep_config(std::string_view text, unsigned default_workers = 1);
SweepConfig load_sweep_config(const std::filesystem::path& path, unsigned default_workers = 1);

struct SweepResult {
  ReportEnvelope envelope;
  std::vector<std::filesystem::path> files;
  /// Theorem campaign: searches that ended beyond the bound or found nothing.
  std::size_t violations = 0;
};

/// Runs the campaign and builds its report without touching the disk.
ReportEnvelope build_sweep_report(const SweepConfig& cfg, std::size_t* violations = nullptr);

/// build_sweep_report + write_report into cfg.output_dir.
SweepResult run_sweep(const SweepConfig& cfg);

}  // namespace smallres

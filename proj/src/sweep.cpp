#include "smallres/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "smallres/errors.hpp"
#include "smallres/expr.hpp"
#include "smallres/expsum.hpp"
#include "smallres/parallel.hpp"
#include "smallres/patterns.hpp"

namespace smallres {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::uint64_t> parse_list(const std::string& value) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw UsageError("empty item in list '" + value + "'");
    out.push_back(parse_u64_expression(item));
  }
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || !std::isfinite(v)) throw UsageError("bad number for " + key + ": " + value);
  return v;
}

Verdict parse_target(const std::string& value) {
  if (value == "residue") return Verdict::Residue;
  if (value == "nonresidue") return Verdict::Nonresidue;
  throw UsageError("target must be residue or nonresidue, got '" + value + "'");
}

std::vector<std::uint64_t> campaign_primes(const SweepConfig& cfg) {
  std::vector<std::uint64_t> primes;
  if (!cfg.primes.empty()) {
    for (auto p : cfg.primes) {
      if (p < 3 || !is_prime(p)) throw DomainError(std::to_string(p) + " is not an odd prime");
      primes.push_back(p);
    }
  } else if (cfg.p_lo <= cfg.p_hi) {
    primes = primes_between(std::max<std::uint64_t>(cfg.p_lo, 3), cfg.p_hi);
  }
  return stride_sample(primes, cfg.sample);
}

std::vector<Table> theorem_report(const SweepConfig& cfg, std::size_t& violations) {
  TheoremSweepConfig t;
  t.p_lo = cfg.p_lo;
  t.p_hi = cfg.p_hi;
  t.sample = cfg.sample;
  t.ks = cfg.ks;
  t.target = cfg.target;
  t.epsilon = cfg.epsilon;
  t.fixed_q = cfg.q;
  t.scan_limit = cfg.scan_limit;
  t.workers = cfg.workers;
  std::vector<TheoremRow> rows;
  if (!cfg.primes.empty()) {
    for (auto p : campaign_primes(cfg)) {
      t.p_lo = t.p_hi = p;
      t.sample = 0;
      auto part = theorem_sweep(t);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  } else if (cfg.p_lo <= cfg.p_hi) {
    rows = theorem_sweep(t);
  }

  Table searches{"searches", {"p", "k", "q", "a", "found_n", "bound_x", "within_bound", "out_of_regime"}, {}};
  Table counter{"counterexamples", searches.columns, {}};
  std::map<std::uint64_t, bool> primes_seen;
  double worst = 0;
  for (const auto& r : rows) {
    std::vector<Cell> row = {Cell::integer(r.p), Cell::integer(r.k), Cell::integer(r.cls.q()),
                             Cell::integer(r.cls.a()), Cell::maybe_integer(r.found_n),
                             Cell::real(r.bound), Cell::boolean(r.within_bound),
                             Cell::boolean(r.out_of_regime)};
    if (!r.within_bound) counter.add(row);
    searches.add(std::move(row));
    primes_seen[r.p] = true;
    if (r.found_n) worst = std::max(worst, static_cast<double>(*r.found_n) / r.bound);
  }
  violations = counter.rows.size();
  Table summary{"summary", {"primes", "searches", "violations", "max_found_over_bound", "epsilon", "target"}, {}};
  summary.add({Cell::integer(static_cast<std::int64_t>(primes_seen.size())),
               Cell::integer(static_cast<std::int64_t>(rows.size())),
               Cell::integer(static_cast<std::int64_t>(violations)), Cell::real(worst),
               Cell::real(cfg.epsilon), Cell::text(cfg.target == Verdict::Residue ? "residue" : "nonresidue")});
  return {summary, searches, counter};
}

std::vector<Table> density_report(const SweepConfig& cfg) {
  const std::uint64_t k = cfg.ks.empty() ? 2 : cfg.ks.front();
  const auto cls = cfg.q && *cfg.q > 1 ? ResidueClass::make(cfg.a, *cfg.q) : ResidueClass::trivial();
  XSpec x{cfg.x_rule, cfg.x, cfg.epsilon};
  DensitySweep sweep;
  if (!cfg.primes.empty()) {
    for (auto p : campaign_primes(cfg)) {
      auto part = density_sweep(cfg.target, k, cls, p, p, x, cfg.workers);
      sweep.samples.insert(sweep.samples.end(), part.samples.begin(), part.samples.end());
      sweep.skipped.insert(sweep.skipped.end(), part.skipped.begin(), part.skipped.end());
    }
  } else if (cfg.p_lo <= cfg.p_hi) {
    sweep = density_sweep(cfg.target, k, cls, cfg.p_lo, cfg.p_hi, x, cfg.workers, cfg.sample);
  }

  Table samples{"samples",
                {"p", "k", "q", "a", "x", "hits", "primes_in_class", "primes_total",
                 "observed_fraction", "correction_estimate"},
                {}};
  double mean = 0;
  double max_dev = 0;
  const double expected = 1.0 / static_cast<double>(k);
  for (const auto& s : sweep.samples) {
    samples.add({Cell::integer(s.p), Cell::integer(s.k), Cell::integer(s.cls.q()),
                 Cell::integer(s.cls.a()), Cell::real(s.x), Cell::integer(s.hits),
                 Cell::integer(s.primes_in_class), Cell::integer(s.primes_total),
                 Cell::real(s.observed_fraction), Cell::real(s.correction_estimate)});
    mean += s.correction_estimate;
    max_dev = std::max(max_dev, std::abs(s.observed_fraction - expected));
  }
  const auto n = sweep.samples.size();
  Table summary{"summary", {"primes", "skipped", "mean_correction_estimate", "max_fraction_deviation"}, {}};
  summary.add({Cell::integer(static_cast<std::int64_t>(n)),
               Cell::integer(static_cast<std::int64_t>(sweep.skipped.size())),
               n ? Cell::real(mean / static_cast<double>(n)) : Cell::null(),
               n ? Cell::real(max_dev) : Cell::null()});
  return {summary, samples};
}

std::vector<Table> expsum_report(const SweepConfig& cfg) {
  Table rows{"ratios", {"p", "tau", "worst_b", "worst_x", "max_magnitude", "bound", "max_ratio"}, {}};
  for (auto p : campaign_primes(cfg)) {
    if (p > CharacterSumOracle::kMaxPrime) throw ResourceError("expsum sweep needs p <= 10^5");
    const auto table = build_small_field_table(p);
    const auto r = expsum_ratio_scan(table, cfg.workers);
    rows.add({Cell::integer(r.p), Cell::integer(r.tau), Cell::integer(r.worst_b),
              Cell::integer(r.worst_x), Cell::real(r.max_magnitude), Cell::real(r.bound),
              Cell::real(r.max_ratio)});
  }
  return {rows};
}

std::vector<Table> patterns_report(const SweepConfig& cfg) {
  Table pairs{"pairs",
              {"p", "RR", "RN", "NR", "NN", "max_deviation", "twin_qualifying", "twin_total",
               "twin_fraction", "twin_weighted", "nn_gap_mean", "nn_run_gap_mean", "nn_max_gap",
               "nn_ks", "rr_ks"},
              {}};
  Table refined{"refined", {"p", "pattern", "cc", "cp", "pc", "pp"}, {}};
  const auto primes = campaign_primes(cfg);
  const auto censuses = parallel_map(primes.size(), cfg.workers,
                                     [&](std::size_t i) { return pattern_census(primes[i]); });
  for (const auto& c : censuses) {
    double dev = 0;
    for (auto pat : kPairPatterns)
      dev = std::max(dev, std::abs(static_cast<double>(c.pair_counts.at(pat)) -
                                   static_cast<double>(c.p - 2) / 4.0));
    pairs.add({Cell::integer(c.p), Cell::integer(c.pair_counts.at(PairPattern::RR)),
               Cell::integer(c.pair_counts.at(PairPattern::RN)),
               Cell::integer(c.pair_counts.at(PairPattern::NR)),
               Cell::integer(c.pair_counts.at(PairPattern::NN)), Cell::real(dev),
               Cell::integer(c.twins.qualifying), Cell::integer(c.twins.total_twins),
               Cell::maybe_real(c.twins.fraction), Cell::real(c.twins.weighted),
               Cell::maybe_real(c.nonresidue_gaps.raw_mean),
               Cell::maybe_real(c.nonresidue_gaps.run_mean),
               Cell::maybe_integer(c.nonresidue_gaps.max_gap),
               Cell::maybe_real(c.nonresidue_gaps.ks_statistic),
               Cell::maybe_real(c.residue_gaps.ks_statistic)});
    for (auto pat : kPairPatterns) {
      const auto& r = c.refined_counts.at(pat);
      refined.add({Cell::integer(c.p), Cell::text(to_string(pat)), Cell::integer(r.cc),
                   Cell::integer(r.cp), Cell::integer(r.pc), Cell::integer(r.pp)});
    }
  }
  return {pairs, refined};
}

}  // namespace

const char* to_string(Campaign c) {
  switch (c) {
    case Campaign::Theorem: return "theorem";
    case Campaign::Density: return "density";
    case Campaign::ExpSum: return "expsum";
    case Campaign::Patterns: return "patterns";
  }
  return "?";
}

SweepConfig parse_sweep_config(std::string_view text, unsigned default_workers) {
  SweepConfig cfg;
  cfg.workers = default_workers;
  std::map<std::string, std::string> seen;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.emplace(key, value).second)
      throw UsageError("config line " + std::to_string(line_no) + ": duplicate key " + key);

    if (key == "campaign") {
      if (value == "theorem") cfg.campaign = Campaign::Theorem;
      else if (value == "density") cfg.campaign = Campaign::Density;
      else if (value == "expsum") cfg.campaign = Campaign::ExpSum;
      else if (value == "patterns") cfg.campaign = Campaign::Patterns;
      else throw UsageError("unknown campaign '" + value + "'");
    } else if (key == "name") {
      if (value.empty() || value.find_first_of("/\\") != std::string::npos)
        throw UsageError("name must be a plain file stem");
      cfg.name = value;
    } else if (key == "p_lo") {
      cfg.p_lo = parse_u64_expression(value);
    } else if (key == "p_hi") {
      cfg.p_hi = parse_u64_expression(value);
    } else if (key == "primes") {
      cfg.primes = parse_list(value);
    } else if (key == "sample") {
      cfg.sample = parse_u64_expression(value);
    } else if (key == "k") {
      cfg.ks = parse_list(value);
      for (auto k : cfg.ks)
        if (k < 2) throw UsageError("k must be >= 2");
    } else if (key == "q") {
      cfg.q = parse_u64_expression(value);
      if (*cfg.q < 1) throw UsageError("q must be >= 1");
    } else if (key == "a") {
      cfg.a = parse_u64_expression(value);
    } else if (key == "target") {
      cfg.target = parse_target(value);
    } else if (key == "epsilon") {
      cfg.epsilon = parse_double(key, value);
      if (cfg.epsilon < 0) throw UsageError("epsilon must be >= 0");
    } else if (key == "x_rule") {
      if (value == "fixed") cfg.x_rule = XRule::Fixed;
      else if (value == "bound") cfg.x_rule = XRule::BoundFormula;
      else if (value == "field") cfg.x_rule = XRule::WholeField;
      else throw UsageError("x_rule must be fixed, bound or field");
    } else if (key == "x") {
      cfg.x = parse_double(key, value);
    } else if (key == "scan_limit") {
      cfg.scan_limit = parse_u64_expression(value);
    } else if (key == "output_dir") {
      if (value.empty()) throw UsageError("output_dir is empty");
      cfg.output_dir = value;
    } else if (key == "workers") {
      const auto w = parse_u64_expression(value);
      if (w < 1 || w > 1024) throw UsageError("workers must be in [1, 1024]");
      cfg.workers = static_cast<unsigned>(w);
    } else {
      throw UsageError("config line " + std::to_string(line_no) + ": unknown key " + key);
    }
  }
  if (cfg.name.empty()) cfg.name = to_string(cfg.campaign);
  if (cfg.x_rule == XRule::Fixed && cfg.x < 2) throw UsageError("x_rule = fixed needs x >= 2");
  return cfg;
}

SweepConfig load_sweep_config(const std::filesystem::path& path, unsigned default_workers) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_sweep_config(ss.str(), default_workers);
}

ReportEnvelope build_sweep_report(const SweepConfig& cfg, std::size_t* violations) {
  std::size_t v = 0;
  std::vector<Table> sections;
  switch (cfg.campaign) {
    case Campaign::Theorem: sections = theorem_report(cfg, v); break;
    case Campaign::Density: sections = density_report(cfg); break;
    case Campaign::ExpSum: sections = expsum_report(cfg); break;
    case Campaign::Patterns: sections = patterns_report(cfg); break;
  }
  if (violations) *violations = v;
  return make_envelope(std::move(sections));
}

SweepResult run_sweep(const SweepConfig& cfg) {
  // Fail before the campaign runs rather than after.
  std::error_code ec;
  std::filesystem::create_directories(cfg.output_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.output_dir))
    throw ResourceError("cannot create output directory " + cfg.output_dir.string());
  SweepResult r;
  r.envelope = build_sweep_report(cfg, &r.violations);
  r.files = write_report(cfg.output_dir, cfg.name, r.envelope);
  return r;
}

}  // namespace smallres

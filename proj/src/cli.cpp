#include "smallres/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "smallres/apsearch.hpp"
#include "smallres/errors.hpp"
#include "smallres/expr.hpp"
#include "smallres/expsum.hpp"
#include "smallres/parallel.hpp"
#include "smallres/patterns.hpp"
#include "smallres/report.hpp"
#include "smallres/reproduce.hpp"
#include "smallres/residues.hpp"
#include "smallres/sweep.hpp"

namespace smallres {

namespace {

enum class Format { Text, Csv, Json };

const std::map<std::string, Format> kFormats = {
    {"text", Format::Text}, {"csv", Format::Csv}, {"json", Format::Json}};
const std::map<std::string, Verdict> kTargets = {
    {"residue", Verdict::Residue}, {"nonresidue", Verdict::Nonresidue}};

void print_text(std::ostream& out, const Table& t) {
  std::vector<std::size_t> width(t.columns.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) width[i] = t.columns[i].size();
  for (const auto& row : t.rows)
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].csv().size());
  auto line = [&](auto get) {
    std::string s;
    for (std::size_t i = 0; i < width.size(); ++i) {
      std::string cell = get(i);
      if (i + 1 < width.size()) cell.resize(width[i], ' ');
      s += cell;
      if (i + 1 < width.size()) s += "  ";
    }
    out << s << '\n';
  };
  line([&](std::size_t i) { return t.columns[i]; });
  for (const auto& row : t.rows) line([&](std::size_t i) { return row[i].csv(); });
}

void emit(std::ostream& out, Format f, std::vector<Table> tables) {
  switch (f) {
    case Format::Text:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out << '\n';
        print_text(out, tables[i]);
      }
      break;
    case Format::Csv:
      for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i) out << "\r\n";
        out << to_csv(tables[i]);
      }
      break;
    case Format::Json:
      out << to_json(make_envelope(std::move(tables)));
      break;
  }
}

/// Key/value pairs as a one-row table.
Table record(std::string name, std::vector<std::pair<std::string, Cell>> fields) {
  Table t;
  t.name = std::move(name);
  std::vector<Cell> row;
  for (auto& [k, v] : fields) {
    t.columns.push_back(k);
    row.push_back(std::move(v));
  }
  t.add(std::move(row));
  return t;
}

void print_record(std::ostream& out, const Table& t) {
  std::size_t w = 0;
  for (const auto& c : t.columns) w = std::max(w, c.size());
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    std::string key = t.columns[i] + ":";
    key.resize(w + 2, ' ');
    out << key << t.rows[0][i].csv() << '\n';
  }
}

void emit_record(std::ostream& out, Format f, const Table& t) {
  if (f == Format::Text) {
    print_record(out, t);
  } else {
    emit(out, f, {t});
  }
}

ResidueClass make_class(std::uint64_t a, std::uint64_t q) {
  return q == 1 ? ResidueClass::make(0, 1) : ResidueClass::make(a, q);
}

struct Common {
  std::string format = "text";
  unsigned workers = 1;
};

void add_format(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"text", "csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small prime kth-power residues and nonresidues in arithmetic progressions"};
  app.name("smallres");
  app.require_subcommand(1);
  app.allow_windows_style_options(false);

  Common common;
  common.workers = default_workers();
  std::function<int()> action;

  // symbol
  auto* symbol = app.add_subcommand("symbol", "kth-power residue verdict of n modulo p");
  std::string sym_n, sym_p;
  std::uint64_t sym_k = 2;
  bool sym_small = false;
  symbol->add_option("--n", sym_n, "Integer n (decimal or base^exp+offset)")->required();
  symbol->add_option("--p", sym_p, "Odd prime modulus")->required();
  symbol->add_option("--k", sym_k, "Power k dividing p-1")->capture_default_str();
  symbol->add_flag("--allow-small", sym_small, "Accept p < 17");
  add_format(symbol, common);
  symbol->callback([&] {
    action = [&] {
      const auto ctx = OddPrimeContext::make(parse_big_expression(sym_p), sym_small);
      const auto start = std::chrono::steady_clock::now();
      const auto v = kth_power_verdict(parse_big_expression(sym_n), sym_k, ctx);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      emit_record(out, kFormats.at(common.format),
                  record("symbol", {{"n", Cell::big(v.n)},
                                    {"p", Cell::big(ctx.p())},
                                    {"k", Cell::integer(static_cast<std::int64_t>(sym_k))},
                                    {"verdict", Cell::text(to_string(v.verdict))},
                                    {"witness", Cell::big(v.witness)},
                                    {"elapsed_ms", Cell::real(ms)}}));
      return kExitOk;
    };
  });

  // search
  auto* search = app.add_subcommand("search", "Least prime residue or nonresidue in a progression");
  std::string s_target = "nonresidue", s_p;
  std::uint64_t s_k = 2, s_q = 1, s_a = 0, s_limit = kDefaultScanLimit;
  double s_eps = 0;
  bool s_small = false;
  search->add_option("--target", s_target, "residue or nonresidue")
      ->check(CLI::IsMember({"residue", "nonresidue"}))
      ->capture_default_str();
  search->add_option("--k", s_k, "Power k dividing p-1")->capture_default_str();
  search->add_option("--q", s_q, "Progression modulus")->capture_default_str();
  search->add_option("--a", s_a, "Progression residue (0 when q = 1)")->capture_default_str();
  search->add_option("--p", s_p, "Odd prime modulus")->required();
  search->add_option("--epsilon", s_eps, "Slack in the bound exponent")->capture_default_str();
  search->add_option("--scan-limit", s_limit, "Largest candidate examined")->capture_default_str();
  search->add_flag("--allow-small", s_small, "Accept p < 17");
  add_format(search, common);
  search->callback([&] {
    action = [&] {
      const auto ctx = OddPrimeContext::make(parse_big_expression(s_p), s_small);
      const auto r = least_prime_with_verdict(kTargets.at(s_target), s_k, make_class(s_a, s_q), ctx,
                                              s_limit, s_eps);
      emit_record(out, kFormats.at(common.format),
                  record("search", {{"target", Cell::text(s_target)},
                                    {"k", Cell::integer(static_cast<std::int64_t>(s_k))},
                                    {"q", Cell::integer(static_cast<std::int64_t>(r.cls.q()))},
                                    {"a", Cell::integer(static_cast<std::int64_t>(r.cls.a()))},
                                    {"found_n", Cell::maybe_integer(r.found_n)},
                                    {"bound_x", Cell::real(r.bound_x)},
                                    {"within_bound", Cell::boolean(r.within_bound)},
                                    {"scan_limit", Cell::integer(static_cast<std::int64_t>(r.scan_limit))}}));
      if (!r.found_n) return kExitAbsent;
      return r.within_bound ? kExitOk : kExitBeyondBound;
    };
  });

  // count
  auto* count = app.add_subcommand("count", "Weighted and unweighted counts against the main term");
  std::string c_target = "nonresidue", c_p;
  std::uint64_t c_k = 2, c_q = 1, c_a = 0;
  double c_eps = 0;
  std::optional<double> c_x;
  bool c_small = false;
  count->add_option("--target", c_target, "residue or nonresidue")
      ->check(CLI::IsMember({"residue", "nonresidue"}))
      ->capture_default_str();
  count->add_option("--k", c_k, "Power k dividing p-1")->capture_default_str();
  count->add_option("--q", c_q, "Progression modulus")->capture_default_str();
  count->add_option("--a", c_a, "Progression residue (0 when q = 1)")->capture_default_str();
  count->add_option("--p", c_p, "Odd prime modulus")->required();
  count->add_option("--x", c_x, "Cutoff (default: the bound formula)");
  count->add_option("--epsilon", c_eps, "Slack in the bound exponent")->capture_default_str();
  count->add_flag("--allow-small", c_small, "Accept p < 17");
  add_format(count, common);
  count->callback([&] {
    action = [&] {
      const auto ctx = OddPrimeContext::make(parse_big_expression(c_p), c_small);
      const double x = c_x.value_or(bound_x(ctx, c_k, c_eps));
      const auto r = weighted_count(kTargets.at(c_target), c_k, make_class(c_a, c_q), x, ctx);
      emit_record(out, kFormats.at(common.format),
                  record("count", {{"target", Cell::text(c_target)},
                                   {"k", Cell::integer(static_cast<std::int64_t>(c_k))},
                                   {"q", Cell::integer(static_cast<std::int64_t>(r.cls.q()))},
                                   {"a", Cell::integer(static_cast<std::int64_t>(r.cls.a()))},
                                   {"x", Cell::real(r.x)},
                                   {"weighted_count", Cell::real(r.weighted_count)},
                                   {"unweighted_count", Cell::integer(static_cast<std::int64_t>(r.unweighted_count))},
                                   {"primes_in_class", Cell::integer(static_cast<std::int64_t>(r.primes_in_class))},
                                   {"main_term", Cell::real(r.main_term)},
                                   {"error_term", Cell::real(r.error_term)},
                                   {"error_shape_ratio", Cell::real(error_shape_ratio(r, ctx))},
                                   {"density_estimate", Cell::real(r.density_estimate)}}));
      return kExitOk;
    };
  });

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "Re-run a published example and compare");
  std::string r_name, r_dir;
  bool r_list = false;
  reproduce->add_option("scenario", r_name, "Scenario name");
  reproduce->add_flag("--list", r_list, "List scenario names");
  reproduce->add_option("--output-dir", r_dir, "Also write CSV + JSON reports here");
  add_format(reproduce, common);
  reproduce->callback([&] {
    action = [&] {
      if (r_list) {
        for (const auto& n : scenario_names()) out << n << '\n';
        return kExitOk;
      }
      if (r_name.empty()) throw UsageError("reproduce needs a scenario name (see --list)");
      const auto r = reproduce_scenario(r_name);
      const Table t = to_table(r);
      emit(out, kFormats.at(common.format), {t});
      if (kFormats.at(common.format) == Format::Text) {
        out << '\n'
            << r.name << ": " << r.count(CheckStatus::Pass) << " pass, " << r.count(CheckStatus::Fail)
            << " fail, " << r.count(CheckStatus::Discrepancy) << " discrepancy ("
            << format_real(r.seconds) << " s)\n";
      }
      if (!r_dir.empty()) write_report(r_dir, r.name, make_envelope({t}));
      return r.failed() ? kExitIntegrity : kExitOk;
    };
  });

  // expsum
  auto* expsum = app.add_subcommand("expsum", "Exponential sums over a primitive-root orbit");
  std::uint64_t e_p = 0, e_b = 1;
  std::optional<std::uint64_t> e_x;
  bool e_scan = false, e_uhat = false;
  expsum->add_option("--p", e_p, "Odd prime, at most 10^5")->required();
  expsum->add_option("--b", e_b, "Frequency b")->capture_default_str();
  expsum->add_option("--x", e_x, "Cutoff (default p-1)");
  expsum->add_flag("--scan", e_scan, "Worst case over every b and cutoff");
  expsum->add_flag("--u-hat", e_uhat, "U-hat at every quadratic residue");
  expsum->add_option("--workers", common.workers, "Worker threads");
  add_format(expsum, common);
  expsum->callback([&] {
    action = [&] {
      if (e_p > CharacterSumOracle::kMaxPrime) throw ResourceError("expsum needs p <= 10^5");
      if (e_p < 3 || !is_prime(e_p)) throw DomainError("p must be an odd prime");
      const auto table = build_small_field_table(e_p);
      const Format f = kFormats.at(common.format);
      if (e_scan) {
        const auto r = expsum_ratio_scan(table, common.workers);
        emit_record(out, f, record("expsum_scan", {{"p", Cell::integer(r.p)},
                                                   {"tau", Cell::integer(r.tau)},
                                                   {"worst_b", Cell::integer(r.worst_b)},
                                                   {"worst_x", Cell::integer(r.worst_x)},
                                                   {"max_magnitude", Cell::real(r.max_magnitude)},
                                                   {"bound", Cell::real(r.bound)},
                                                   {"max_ratio", Cell::real(r.max_ratio)}}));
      } else if (e_uhat) {
        Table t{"u_hat", {"a", "re", "im", "magnitude", "ratio", "residual"}, {}};
        for (const auto& u : fourier_U_hat_all_residues(table)) {
          t.add({Cell::integer(u.a), Cell::real(u.value.real()), Cell::real(u.value.imag()),
                 Cell::real(u.magnitude), Cell::real(u.ratio),
                 Cell::real(std::abs(u.decomposition_residual))});
        }
        emit(out, f, {t});
      } else {
        const auto s = incomplete_expsum(e_b, e_x.value_or(e_p - 1), table);
        emit_record(out, f, record("expsum", {{"p", Cell::integer(s.p)},
                                              {"tau", Cell::integer(s.tau)},
                                              {"b", Cell::integer(s.b)},
                                              {"x", Cell::integer(s.x_cutoff)},
                                              {"re", Cell::real(s.value.real())},
                                              {"im", Cell::real(s.value.imag())},
                                              {"magnitude", Cell::real(s.magnitude)},
                                              {"bound", Cell::real(s.bound)},
                                              {"ratio", Cell::real(s.ratio)}}));
      }
      return kExitOk;
    };
  });

  // patterns
  auto* patterns = app.add_subcommand("patterns", "Consecutive residue/nonresidue pair census");
  std::uint64_t pt_p = 0;
  std::optional<std::uint64_t> pt_x;
  patterns->add_option("--p", pt_p, "Odd prime, at most 10^7")->required();
  patterns->add_option("--x", pt_x, "Cutoff for the weighted sums (default p-1)");
  add_format(patterns, common);
  patterns->callback([&] {
    action = [&] {
      if (pt_p < 3 || !is_prime(pt_p)) throw DomainError("p must be an odd prime");
      const auto c = pattern_census(pt_p);
      const std::uint64_t x = pt_x.value_or(pt_p - 1);
      const auto w = weighted_pattern_sum(pt_p, x);
      const auto tw = x == pt_p - 1 ? c.twins : twin_nonresidue_density(pt_p, x);

      Table pairs{"pairs", {"pattern", "count", "cc", "cp", "pc", "pp"}, {}};
      for (auto pat : kPairPatterns) {
        const auto& r = c.refined_counts.at(pat);
        pairs.add({Cell::text(to_string(pat)), Cell::integer(c.pair_counts.at(pat)),
                   Cell::integer(r.cc), Cell::integer(r.cp), Cell::integer(r.pc), Cell::integer(r.pp)});
      }
      Table twins = record("twins", {{"x", Cell::integer(x)},
                                     {"qualifying", Cell::integer(tw.qualifying)},
                                     {"total", Cell::integer(tw.total_twins)},
                                     {"fraction", Cell::maybe_real(tw.fraction)},
                                     {"weighted", Cell::real(tw.weighted)},
                                     {"nn_weighted_jacobi", Cell::real(w.quarter_form)},
                                     {"nn_weighted_euler", Cell::real(w.kappa_form)}});
      Table gaps{"gaps", {"class", "pair_starts", "raw_mean", "run_mean", "max_gap", "ks"}, {}};
      for (const auto* g : {&c.residue_gaps, &c.nonresidue_gaps}) {
        gaps.add({Cell::text(g == &c.residue_gaps ? "RR" : "NN"),
                  Cell::integer(static_cast<std::int64_t>(g->starts.size())), Cell::maybe_real(g->raw_mean),
                  Cell::maybe_real(g->run_mean), Cell::maybe_integer(g->max_gap),
                  Cell::maybe_real(g->ks_statistic)});
      }
      emit(out, kFormats.at(common.format), {pairs, twins, gaps});
      return kExitOk;
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a config-driven campaign and write reports");
  std::string sw_config;
  std::optional<unsigned> sw_workers;
  sweep->add_option("--config", sw_config, "key = value config file")->required();
  sweep->add_option("--workers", sw_workers, "Override the worker count");
  sweep->callback([&] {
    action = [&] {
      auto cfg = load_sweep_config(sw_config, common.workers);
      if (sw_workers) cfg.workers = std::max(1u, *sw_workers);
      const auto r = run_sweep(cfg);
      for (const auto& path : r.files) out << path.string() << '\n';
      if (cfg.campaign == Campaign::Theorem) out << "violations: " << r.violations << '\n';
      return kExitOk;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    return action();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const NumericalIntegrityError& e) {
    err << "integrity error: " << e.what() << '\n';
    return kExitIntegrity;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitIntegrity;
  }
}

}  // namespace smallres

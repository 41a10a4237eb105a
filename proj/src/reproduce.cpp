#include "smallres/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include <json.hpp>

#include "scenarios_data.hpp"
#include "smallres/apsearch.hpp"
#include "smallres/errors.hpp"
#include "smallres/expr.hpp"
#include "smallres/patterns.hpp"
#include "smallres/residues.hpp"

namespace smallres {

using nlohmann::json;

namespace {

constexpr std::uint64_t kReproScanLimit = 10'000'000;
constexpr std::size_t kTrueListLength = 10;

const json& fixture() {
  static const json doc = json::parse(detail::kScenarioFixture);
  return doc;
}

const json* find_scenario(std::string_view name) {
  for (const auto& s : fixture().at("scenarios"))
    if (s.at("name").get<std::string>() == name) return &s;
  return nullptr;
}

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string factor_string(std::uint64_t n) {
  std::string out;
  for (const auto& [r, e] : factor_trial(n)) {
    if (!out.empty()) out += " * ";
    out += std::to_string(r);
    if (e > 1) out += "^" + std::to_string(e);
  }
  return out;
}

/// Primality by trial division only; independent of is_prime.
bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  const auto f = factor_trial(n);
  return f.size() == 1 && f[0].second == 1;
}

Verdict parse_claim(const std::string& s) {
  if (s == "residue") return Verdict::Residue;
  if (s == "nonresidue") return Verdict::Nonresidue;
  throw std::logic_error("bad claim in scenario fixture: " + s);
}

std::string verdict_word(Verdict v) { return v == Verdict::Residue ? "residue" : "nonresidue"; }

class Runner {
 public:
  explicit Runner(const json& s) : s_(s) {
    out_.name = s.at("name").get<std::string>();
    out_.description = s.at("description").get<std::string>();
  }

  void add(CheckRow row) { out_.rows.push_back(std::move(row)); }

  ScenarioReport finish() { return std::move(out_); }

 protected:
  const json& s_;
  ScenarioReport out_;
};

/// The four large-prime examples.
class ModulusRunner : public Runner {
 public:
  explicit ModulusRunner(const json& s)
      : Runner(s),
        ctx_(OddPrimeContext::make(parse_big_expression(s.at("p").get<std::string>()))),
        k_(s.at("k").get<std::uint64_t>()),
        q_(s.at("q").get<std::uint64_t>()),
        epsilon_(s.at("epsilon").get<double>()) {}

  ScenarioReport run() {
    check_structure();
    check_values();
    if (s_.contains("order")) check_order();
    for (const auto& list : s_.at("lists")) check_list(list);
    for (const auto& least : s_.at("least")) check_least(least);
    true_lists();
    return finish();
  }

 private:
  void check_structure() {
    const BigInt& p = ctx_.p();
    add({"structure", "p = " + s_.at("p").get<std::string>() + " is prime", to_string(p), "prime",
         std::nullopt, CheckStatus::Pass, "published", "Baillie-PSW"});
    const bool divides = ctx_.k_divides_order(k_);
    add({"structure", std::to_string(k_) + " divides p-1", divides ? "yes" : "no", "yes", std::nullopt,
         divides ? CheckStatus::Pass : CheckStatus::Fail, "published", ""});

    BigInt product = 1;
    bool all_prime = true;
    for (const auto& f : s_.at("p_minus_1")) {
      const BigInt r(f.at(0).get<std::string>());
      const unsigned e = f.at(1).get<unsigned>();
      factors_.emplace_back(r, e);
      all_prime = all_prime && is_prime(r);
      BigInt pw;
      mpz_pow_ui(pw.get_mpz_t(), r.get_mpz_t(), e);
      product *= pw;
    }
    const bool ok = all_prime && product == ctx_.p_minus_1();
    add({"factorization", "p-1 factorization", ok ? "complete" : "incomplete", "complete",
         std::nullopt, ok ? CheckStatus::Pass : CheckStatus::Fail, "derived",
         "product of fixture factors, each tested prime"});
    if (!ok) throw NumericalIntegrityError("fixture factorization of p-1 is wrong for " + out_.name);
  }

  void check_values() {
    const auto pred = unweighted_prediction(ctx_, k_, q_, epsilon_);
    std::map<std::string, double> computed = {
        {"bound_x", pred.x},
        {"loglog_p", ctx_.loglog_p()},
        {"loglog_p_squared", ctx_.loglog_p() * ctx_.loglog_p()},
        {"main_term", pred.main_term},
        {"unweighted_prediction", pred.loglog_convention},
    };
    for (const auto& v : s_.at("values")) {
      const auto name = v.at("quantity").get<std::string>();
      const double expected = v.at("value").get<double>();
      const double tol = v.at("tolerance").get<double>();
      const double got = computed.at(name);
      const double delta = std::abs(got - expected);
      std::string note = "tolerance " + format_real(tol);
      if (name == "unweighted_prediction")
        note += "; main term / log log p (main term / log x = " + fixed2(pred.log_x_convention) + ")";
      add({"value", name, fixed2(got), format_real(expected), delta,
           delta <= tol ? CheckStatus::Pass : CheckStatus::Fail, v.at("origin").get<std::string>(), note});
    }
  }

  void check_order() {
    const auto& o = s_.at("order");
    const BigInt expected(o.at("value").get<std::string>());
    BigInt quotient, remainder;
    mpz_tdiv_qr_ui(quotient.get_mpz_t(), remainder.get_mpz_t(), ctx_.p_minus_1().get_mpz_t(), k_);
    const bool ok = remainder == 0 && quotient == expected;
    add({"exact", "(p-1)/" + std::to_string(k_), to_string(quotient), to_string(expected),
         std::nullopt, ok ? CheckStatus::Pass : CheckStatus::Fail, o.at("origin").get<std::string>(),
         "exact integer division"});
  }

  BigInt order_of(std::uint64_t n) const {
    return multiplicative_order(BigInt(std::to_string(n)), ctx_.p(), factors_);
  }

  /// Residuosity from the multiplicative order: n is a kth power exactly
  /// when its order divides (p-1)/k.
  Verdict order_verdict(std::uint64_t n) const {
    const BigInt sub = ctx_.p_minus_1() / static_cast<unsigned long>(k_);
    return mpz_divisible_p(sub.get_mpz_t(), order_of(n).get_mpz_t()) ? Verdict::Residue
                                                                       : Verdict::Nonresidue;
  }

  Verdict euler_verdict(std::uint64_t n) const {
    return kth_power_verdict(BigInt(std::to_string(n)), k_, ctx_).verdict;
  }

  std::string list_label(std::uint64_t a, Verdict claim) const {
    return std::string(claim == Verdict::Residue ? "R" : "N") + std::to_string(a) + " mod " +
           std::to_string(q_);
  }

  void check_list(const json& list) {
    const auto a = list.at("a").get<std::uint64_t>();
    const Verdict claim = parse_claim(list.at("claim"));
    const auto elements = list.at("elements").get<std::vector<std::uint64_t>>();
    const std::string origin = list.at("origin");
    const std::string label = list_label(a, claim);
    const bool all_prime = list.value("all_prime", false);
    std::set<std::uint64_t> marked;
    if (list.contains("marked_prime"))
      for (auto n : list.at("marked_prime")) marked.insert(n.get<std::uint64_t>());
    const std::uint64_t limit = s_.value("listing_limit", std::uint64_t{0});

    std::uint64_t exact_order = 0;
    const BigInt sub = ctx_.p_minus_1() / static_cast<unsigned long>(k_);
    for (std::uint64_t n : elements) {
      const std::string tag = label + " element " + std::to_string(n);
      if (n % q_ != a) {
        add({"class", tag + " class", std::to_string(n % q_) + " mod " + std::to_string(q_),
             std::to_string(a) + " mod " + std::to_string(q_), std::nullopt, CheckStatus::Discrepancy,
             origin, "listed in the wrong progression"});
      }
      if (limit && n > limit) {
        add({"range", tag + " range", std::to_string(n), "<= " + std::to_string(limit), std::nullopt,
             CheckStatus::Discrepancy, origin, "beyond the stated listing range"});
      }

      const Verdict euler = euler_verdict(n);
      const Verdict by_order = order_verdict(n);
      const BigInt ord = order_of(n);
      if (ord == sub) ++exact_order;
      CheckStatus st = CheckStatus::Pass;
      std::string note = "order " + (ord == sub ? std::string("(p-1)/") + std::to_string(k_)
                                                : to_string(ord));
      if (euler != claim) st = by_order == euler ? CheckStatus::Discrepancy : CheckStatus::Fail;
      if (euler != by_order) {
        st = CheckStatus::Fail;
        note += "; Euler criterion and order disagree";
      }
      add({"verdict", tag + " verdict", verdict_word(euler), verdict_word(claim), std::nullopt, st,
           origin, note});

      const bool claimed_prime = all_prime || marked.count(n);
      const bool fast = is_prime(n);
      const bool slow = trial_prime(n);
      if (fast != slow) {
        add({"primality", tag + " primality", fast ? "prime" : "composite", "", std::nullopt,
             CheckStatus::Fail, origin, "primality test and trial division disagree"});
      } else if (claimed_prime) {
        add({"primality", tag + " primality", fast ? "prime" : factor_string(n), "prime",
             std::nullopt, fast ? CheckStatus::Pass : CheckStatus::Discrepancy, origin,
             fast ? "" : "composite by trial division"});
      } else if (!marked.empty() && fast) {
        add({"primality", tag + " primality", "prime", "unmarked", std::nullopt,
             CheckStatus::Discrepancy, origin, "prime but not marked as prime"});
      }
    }
    if (s_.contains("order"))
      add({"listing", label + " elements of order (p-1)/" + std::to_string(k_),
         std::to_string(exact_order) + " of " + std::to_string(elements.size()), "", std::nullopt,
         CheckStatus::Info, "computed",
         "such elements are kth powers; kth-power nonresidues have order not dividing (p-1)/k"});

    if (list.value("first_n", false)) {
      const auto truth = first_primes(claim, a, elements.size());
      const auto confirm = first_primes_slow(claim, a, elements.size());
      CheckStatus st = CheckStatus::Pass;
      if (truth != elements) st = truth == confirm ? CheckStatus::Discrepancy : CheckStatus::Fail;
      add({"first_n", label + " first " + std::to_string(elements.size()) + " primes", join(truth),
           join(elements), std::nullopt, st, origin,
           st == CheckStatus::Pass ? "" : "confirmed by trial division and the order route"});
    }
  }

  std::vector<std::uint64_t> first_primes(Verdict target, std::uint64_t a, std::size_t count) const {
    std::vector<std::uint64_t> out;
    const PowerResidueTest test(ctx_, k_);
    PrimeCursor primes;
    for (std::uint64_t n = primes.next(); out.size() < count && n <= kReproScanLimit;
         n = primes.next()) {
      if (n % q_ == a && !ctx_.divides(n) && test.verdict(n) == target) out.push_back(n);
    }
    return out;
  }

  std::vector<std::uint64_t> first_primes_slow(Verdict target, std::uint64_t a,
                                               std::size_t count) const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = a; out.size() < count && n <= kReproScanLimit; n += q_) {
      if (trial_prime(n) && !ctx_.divides(n) && order_verdict(n) == target) out.push_back(n);
    }
    return out;
  }

  void check_least(const json& least) {
    const auto a = least.at("a").get<std::uint64_t>();
    const Verdict target = parse_claim(least.at("target"));
    const auto expected = least.at("value").get<std::uint64_t>();
    const auto found = least_prime_with_verdict(target, k_, ResidueClass::make(a, q_), ctx_,
                                                kReproScanLimit, epsilon_);
    const std::string label = "least prime " + verdict_word(target) + " = " + std::to_string(a) +
                              " mod " + std::to_string(q_);
    if (!found.found_n) {
      add({"least", label, "none", std::to_string(expected), std::nullopt, CheckStatus::Fail,
           least.at("origin").get<std::string>(), "nothing below the scan limit"});
      return;
    }
    const auto confirm = first_primes_slow(target, a, 1);
    CheckStatus st = CheckStatus::Pass;
    std::string note = found.within_bound ? "within x" : "beyond x";
    if (*found.found_n != expected) {
      const bool agree = !confirm.empty() && confirm[0] == *found.found_n;
      st = agree ? CheckStatus::Discrepancy : CheckStatus::Fail;
      note += "; " + std::to_string(expected) + " is a " +
              verdict_word(euler_verdict(expected)) + " (confirmed by its order)";
    }
    add({"least", label, std::to_string(*found.found_n), std::to_string(expected), std::nullopt, st,
         least.at("origin").get<std::string>(), note});
  }

  void true_lists() {
    std::set<std::pair<std::uint64_t, std::string>> seen;
    for (const auto& list : s_.at("lists")) {
      const auto a = list.at("a").get<std::uint64_t>();
      const Verdict claim = parse_claim(list.at("claim"));
      if (!seen.insert({a, verdict_word(claim)}).second) continue;
      add({"listing", "true first " + std::to_string(kTrueListLength) + " prime " +
                          verdict_word(claim) + "s = " + std::to_string(a) + " mod " +
                          std::to_string(q_),
           join(first_primes(claim, a, kTrueListLength)), "", std::nullopt, CheckStatus::Info,
           "computed", ""});
    }
  }

  OddPrimeContext ctx_;
  std::uint64_t k_;
  std::uint64_t q_;
  double epsilon_;
  BigFactorization factors_;
};

/// The small-field example over F_p.
class FieldRunner : public Runner {
 public:
  explicit FieldRunner(const json& s)
      : Runner(s), p_(parse_u64_expression(s.at("p").get<std::string>())), chi_(p_) {}

  ScenarioReport run() {
    check_set("residues", 1);
    check_set("nonresidues", -1);
    for (const auto& pair : s_.at("nonresidue_pairs")) {
      const auto n = pair.at(0).get<std::uint64_t>();
      const auto m = pair.at(1).get<std::uint64_t>();
      const bool ok = m == n + 1 && chi_.is_nonresidue(n) && chi_.is_nonresidue(m);
      add({"structure", "(" + std::to_string(n) + ", " + std::to_string(m) + ") consecutive nonresidues",
           ok ? "yes" : "no", "yes", std::nullopt, ok ? CheckStatus::Pass : CheckStatus::Fail,
           "published", ""});
    }
    check_pairs();
    check_twins();
    return finish();
  }

 private:
  void check_set(const std::string& key, int sign) {
    std::vector<std::uint64_t> truth;
    for (std::uint64_t n = 1; n < p_; ++n)
      if (chi_.chi(n) == sign) truth.push_back(n);
    const auto listed = s_.at(key).get<std::vector<std::uint64_t>>();
    add({"structure", key + " of F_" + std::to_string(p_), join(truth), join(listed), std::nullopt,
         truth == listed ? CheckStatus::Pass : CheckStatus::Fail, "published", ""});
  }

  void check_pairs() {
    const auto census = pattern_census(p_);
    const auto& expected = s_.at("pair_counts");
    std::uint64_t total = 0;
    for (auto pattern : kPairPatterns) {
      const auto got = census.pair_counts.at(pattern);
      total += got;
      const auto want = expected.at(to_string(pattern)).get<std::uint64_t>();
      add({"value", std::string(to_string(pattern)) + " pairs", std::to_string(got),
           std::to_string(want), std::abs(static_cast<double>(got) - static_cast<double>(want)),
           got == want ? CheckStatus::Pass : CheckStatus::Fail, expected.at("origin").get<std::string>(), ""});
    }
    add({"structure", "pattern partition", std::to_string(total), std::to_string(p_ - 2),
         std::nullopt, total == p_ - 2 ? CheckStatus::Pass : CheckStatus::Fail, "derived", ""});
  }

  void check_twins() {
    const auto& t = s_.at("twins");
    const auto x = t.at("x").get<std::uint64_t>();
    const auto got = twin_nonresidue_density(p_, x);

    // Independent recount: trial division and the Euler criterion.
    std::uint64_t total = 0;
    std::uint64_t qualifying = 0;
    std::vector<std::string> pairs;
    for (std::uint64_t n = 2; n + 2 <= x; ++n) {
      if (!trial_prime(n) || !trial_prime(n + 2) || n % p_ == 0 || (n + 2) % p_ == 0) continue;
      ++total;
      pairs.push_back("(" + std::to_string(n) + "," + std::to_string(n + 2) + ")");
      const auto half = (p_ - 1) / 2;
      if (mod_pow(n, half, p_) == p_ - 1 && mod_pow(n + 2, half, p_) == p_ - 1) ++qualifying;
    }
    const bool agree = total == got.total_twins && qualifying == got.qualifying;
    std::string twin_list;
    for (const auto& s : pairs) twin_list += (twin_list.empty() ? "" : " ") + s;

    const std::string recount = agree ? "confirmed by an independent recount" : "";
    auto status = [&](bool match) {
      if (match) return CheckStatus::Pass;
      return agree ? CheckStatus::Discrepancy : CheckStatus::Fail;
    };
    const std::string origin = t.at("origin");
    const auto want_q = t.at("qualifying").get<std::uint64_t>();
    const auto want_t = t.at("total").get<std::uint64_t>();
    const double want_f = t.at("fraction").get<double>();
    add({"value", "twin pairs with both members nonresidues", std::to_string(got.qualifying),
         std::to_string(want_q), std::nullopt, status(got.qualifying == want_q), origin,
         got.qualifying == want_q ? "" : recount});
    add({"value", "twin pairs up to " + std::to_string(x), std::to_string(got.total_twins),
         std::to_string(want_t), std::nullopt, status(got.total_twins == want_t), origin, twin_list});
    const double frac = got.fraction.value_or(std::nan(""));
    add({"value", "twin nonresidue density", format_real(frac), format_real(want_f),
         std::abs(frac - want_f), status(std::abs(frac - want_f) < 1e-12), origin,
         std::abs(frac - want_f) < 1e-12 ? "" : recount});
  }

  std::uint64_t p_;
  QuadraticTable chi_;
};

}  // namespace

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::Discrepancy: return "DISCREPANCY";
    case CheckStatus::Info: return "INFO";
  }
  return "?";
}

bool ScenarioReport::failed() const { return count(CheckStatus::Fail) > 0; }

std::size_t ScenarioReport::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& r : rows) n += r.status == s;
  return n;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> out;
  for (const auto& s : fixture().at("scenarios")) out.push_back(s.at("name"));
  return out;
}

ScenarioReport reproduce_scenario(std::string_view name) {
  const json* s = find_scenario(name);
  if (!s) throw UsageError("unknown scenario '" + std::string(name) + "'");
  const auto start = std::chrono::steady_clock::now();
  ScenarioReport r = s->contains("residues") ? FieldRunner(*s).run() : ModulusRunner(*s).run();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Table to_table(const ScenarioReport& r) {
  Table t;
  t.name = "reproduce";
  t.columns = {"scenario", "kind", "check", "computed", "expected", "delta", "status", "origin", "note"};
  for (const auto& row : r.rows) {
    t.add({Cell::text(r.name), Cell::text(row.kind), Cell::text(row.check), Cell::text(row.computed),
           Cell::text(row.expected), Cell::maybe_real(row.delta), Cell::text(to_string(row.status)),
           Cell::text(row.origin), Cell::text(row.note)});
  }
  return t;
}

}  // namespace smallres

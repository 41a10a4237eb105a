#include "smallres/expr.hpp"

#include <regex>
#include <string>

#include "smallres/errors.hpp"

namespace smallres {

namespace {

constexpr unsigned long kMaxExponent = 100'000;

BigInt decimal(const std::string& digits) {
  BigInt v;
  if (v.set_str(digits, 10) != 0) throw UsageError("not a decimal integer: " + digits);
  return v;
}

}  // namespace

BigInt parse_big_expression(std::string_view text) {
  static const std::regex plain(R"(\d+)");
  static const std::regex power(R"((\d+)\^(\d+)(?:([+-])(\d+))?)");
  const auto first = text.find_first_not_of(" \t");
  const auto last = text.find_last_not_of(" \t");
  const std::string s(first == std::string_view::npos ? std::string_view{}
                                                      : text.substr(first, last - first + 1));
  std::smatch m;
  if (std::regex_match(s, m, plain)) return decimal(s);
  if (!std::regex_match(s, m, power)) throw UsageError("cannot parse integer expression '" + s + "'");

  const BigInt exponent = decimal(m[2]);
  if (exponent > kMaxExponent) throw UsageError("exponent too large in '" + s + "'");
  BigInt v;
  mpz_pow_ui(v.get_mpz_t(), decimal(m[1]).get_mpz_t(), exponent.get_ui());
  if (m[3].matched) {
    const BigInt offset = decimal(m[4]);
    v = m[3] == "+" ? BigInt(v + offset) : BigInt(v - offset);
  }
  if (v < 0) throw UsageError("expression '" + s + "' is negative");
  return v;
}

std::uint64_t parse_u64_expression(std::string_view text) {
  const BigInt v = parse_big_expression(text);
  if (v > BigInt(std::to_string(UINT64_MAX))) throw UsageError("value out of range: " + std::string(text));
  return std::stoull(v.get_str());
}

}  // namespace smallres

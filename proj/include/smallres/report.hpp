#pragma once

/**
 * @file report.hpp
 * @brief Tabular report emission as CSV and JSON.
 *
 * Reals are written with 6 significant digits and big integers as decimal
 * strings. Column order is fixed by the table. The only run-dependent byte
 * in any report is the generated_at line of the JSON envelope.
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "smallres/bigmod.hpp"

namespace smallres {

inline constexpr const char* kReportSchemaVersion = "1.0";

class Cell {
 public:
  enum class Kind { Null, Integer, Real, Text, BigInteger, Boolean };

  Cell() = default;
  static Cell integer(std::int64_t v);
  static Cell real(double v);
  static Cell text(std::string v);
  static Cell big(const BigInt& v);
  static Cell boolean(bool v);
  static Cell null() { return Cell(); }
  template <typename T>
  static Cell maybe_integer(const std::optional<T>& v) {
    return v ? integer(static_cast<std::int64_t>(*v)) : null();
  }
  static Cell maybe_real(const std::optional<double>& v) { return v ? real(*v) : null(); }

  Kind kind() const { return kind_; }
  /// Text as written to CSV (empty for Null).
  const std::string& csv() const { return text_; }

 private:
  Kind kind_ = Kind::Null;
  std::string text_;
  std::int64_t int_ = 0;
  double real_ = 0;
  bool bool_ = false;

  friend struct CellJson;
};

/// 6 significant digits, no trailing zeros; "nan"/"inf" spelled out.
std::string format_real(double v);

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row);
};

/// RFC 4180: CRLF line ends, fields quoted when they hold a comma, quote,
/// CR or LF.
std::string to_csv(const Table& t);

/// Lowercase hex SHA-256 of the bytes.
std::string sha256_hex(const std::string& bytes);

struct ReportEnvelope {
  std::string schema_version = kReportSchemaVersion;
  std::string generated_at;
  std::vector<Table> sections;
};

/// ISO-8601 UTC timestamp; SOURCE_DATE_EPOCH wins over the clock.
std::string report_timestamp();

ReportEnvelope make_envelope(std::vector<Table> sections);

/// JSON with stable key order; each section carries a checksum of its CSV
/// rendering.
std::string to_json(const ReportEnvelope& env);

/// Writes <stem>.json and <stem>-<section>.csv per section into `dir`,
/// creating it if needed. Returns the paths written. Throws ResourceError
/// when the directory cannot be created or a file cannot be written.
std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir,
                                                const std::string& stem,
                                                const ReportEnvelope& env);

}  // namespace smallres

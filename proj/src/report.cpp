#include "smallres/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <system_error>

#include <json.hpp>
#include <openssl/evp.h>

#include "smallres/errors.hpp"

namespace smallres {

struct CellJson {
  static nlohmann::ordered_json value(const Cell& c) {
    switch (c.kind_) {
      case Cell::Kind::Null: return nullptr;
      case Cell::Kind::Integer: return c.int_;
      case Cell::Kind::Real:
        if (!std::isfinite(c.real_)) return c.text_;
        return std::stod(c.text_);
      case Cell::Kind::Text:
      case Cell::Kind::BigInteger: return c.text_;
      case Cell::Kind::Boolean: return c.bool_;
    }
    return nullptr;
  }
};

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Cell Cell::integer(std::int64_t v) {
  Cell c;
  c.kind_ = Kind::Integer;
  c.int_ = v;
  c.text_ = std::to_string(v);
  return c;
}

Cell Cell::real(double v) {
  Cell c;
  c.kind_ = Kind::Real;
  c.real_ = v;
  c.text_ = format_real(v);
  return c;
}

Cell Cell::text(std::string v) {
  Cell c;
  c.kind_ = Kind::Text;
  c.text_ = std::move(v);
  return c;
}

Cell Cell::big(const BigInt& v) {
  Cell c;
  c.kind_ = Kind::BigInteger;
  c.text_ = to_string(v);
  return c;
}

Cell Cell::boolean(bool v) {
  Cell c;
  c.kind_ = Kind::Boolean;
  c.bool_ = v;
  c.text_ = v ? "true" : "false";
  return c;
}

void Table::add(std::vector<Cell> row) {
  if (row.size() != columns.size())
    throw std::logic_error("row width does not match columns of " + name);
  rows.push_back(std::move(row));
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void csv_line(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  csv_line(out, t.columns);
  std::vector<std::string> fields;
  for (const auto& row : t.rows) {
    fields.clear();
    for (const auto& c : row) fields.push_back(c.csv());
    csv_line(out, fields);
  }
  return out;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw ResourceError("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string report_timestamp() {
  std::time_t t;
  const char* epoch = std::getenv("SOURCE_DATE_EPOCH");
  if (epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ReportEnvelope make_envelope(std::vector<Table> sections) {
  ReportEnvelope env;
  env.generated_at = report_timestamp();
  env.sections = std::move(sections);
  return env;
}

std::string to_json(const ReportEnvelope& env) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = env.schema_version;
  doc["generated_at"] = env.generated_at;
  auto& sections = doc["sections"] = nlohmann::ordered_json::array();
  for (const auto& t : env.sections) {
    nlohmann::ordered_json s;
    s["name"] = t.name;
    s["columns"] = t.columns;
    s["sha256"] = sha256_hex(to_csv(t));
    auto& rows = s["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
      nlohmann::ordered_json r;
      for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = CellJson::value(row[i]);
      rows.push_back(std::move(r));
    }
    sections.push_back(std::move(s));
  }
  return doc.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
  out << bytes;
  out.close();
  if (!out) throw ResourceError("write to " + path.string() + " failed");
}

}  // namespace

std::vector<std::filesystem::path> write_report(const std::filesystem::path& dir,
                                                const std::string& stem,
                                                const ReportEnvelope& env) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir))
    throw ResourceError("cannot create output directory " + dir.string());

  std::vector<std::filesystem::path> written;
  for (const auto& t : env.sections) {
    auto path = dir / (stem + "-" + t.name + ".csv");
    write_file(path, to_csv(t));
    written.push_back(path);
  }
  auto path = dir / (stem + ".json");
  write_file(path, to_json(env));
  written.push_back(path);
  return written;
}

}  // namespace smallres

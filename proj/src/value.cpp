#include "lakeprune/value.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>

#include "lakeprune/errors.hpp"

namespace lakeprune {

namespace {

constexpr int64_t kMicrosPerSecond = 1000000;
constexpr int64_t kSecondsPerDay = 86400;

// Days-from-civil / civil-from-days as in Howard Hinnant's public-domain
// chrono algorithms; valid far beyond the year range we accept.
int64_t days_from_civil(int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<int64_t>(doe) - 719468;
}

void civil_from_days(int64_t z, int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const int64_t yr = static_cast<int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp + (mp < 10 ? 3 : -9);
  y = yr + (m <= 2);
}

bool is_leap(int64_t y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

unsigned days_in_month(int64_t y, unsigned m) {
  static const unsigned kDays[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return kDays[m - 1];
}

bool parse_fixed_digits(std::string_view s, size_t pos, size_t count, unsigned& out) {
  if (pos + count > s.size()) return false;
  unsigned v = 0;
  for (size_t i = 0; i < count; ++i) {
    char c = s[pos + i];
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  out = v;
  return true;
}

int64_t floor_div(int64_t a, int64_t b) {
  int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::string_view value_type_name(ValueType type) {
  switch (type) {
    case ValueType::Null: return "null";
    case ValueType::Integer: return "integer";
    case ValueType::Float: return "float";
    case ValueType::Text: return "text";
    case ValueType::Timestamp: return "timestamp";
  }
  throw Error("unreachable value type");
}

ValueType value_type_from_name(std::string_view name) {
  if (name == "integer") return ValueType::Integer;
  if (name == "float") return ValueType::Float;
  if (name == "text") return ValueType::Text;
  if (name == "timestamp") return ValueType::Timestamp;
  if (name == "null") return ValueType::Null;
  throw ParseError("unknown value type name: " + std::string(name));
}

Value Value::integer(int64_t v) {
  Value out;
  out.type_ = ValueType::Integer;
  out.int_ = v;
  return out;
}

Value Value::floating(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("float values must be finite");
  Value out;
  out.type_ = ValueType::Float;
  out.float_ = (v == 0.0) ? 0.0 : v;  // normalize -0.0
  return out;
}

Value Value::text(std::string v) {
  Value out;
  out.type_ = ValueType::Text;
  out.text_ = std::move(v);
  return out;
}

Value Value::timestamp(int64_t micros) {
  Value out;
  out.type_ = ValueType::Timestamp;
  out.int_ = micros;
  return out;
}

int64_t Value::as_integer() const {
  if (type_ != ValueType::Integer) throw TypeMismatch("value is not an integer");
  return int_;
}

double Value::as_float() const {
  if (type_ != ValueType::Float) throw TypeMismatch("value is not a float");
  return float_;
}

const std::string& Value::as_text() const {
  if (type_ != ValueType::Text) throw TypeMismatch("value is not text");
  return text_;
}

int64_t Value::as_timestamp() const {
  if (type_ != ValueType::Timestamp) throw TypeMismatch("value is not a timestamp");
  return int_;
}

std::string render_float(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string render_timestamp_micros(int64_t micros) {
  const int64_t day = floor_div(micros, kSecondsPerDay * kMicrosPerSecond);
  int64_t rem = micros - day * kSecondsPerDay * kMicrosPerSecond;
  int64_t y;
  unsigned m, d;
  civil_from_days(day, y, m, d);
  const unsigned hh = static_cast<unsigned>(rem / (3600 * kMicrosPerSecond));
  rem %= 3600 * kMicrosPerSecond;
  const unsigned mm = static_cast<unsigned>(rem / (60 * kMicrosPerSecond));
  rem %= 60 * kMicrosPerSecond;
  const unsigned ss = static_cast<unsigned>(rem / kMicrosPerSecond);
  unsigned frac = static_cast<unsigned>(rem % kMicrosPerSecond);

  char buf[48];
  int n = std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02u:%02u:%02u",
                        static_cast<long long>(y), m, d, hh, mm, ss);
  std::string out(buf, static_cast<size_t>(n));
  if (frac != 0) {
    char fb[16];
    std::snprintf(fb, sizeof(fb), "%06u", frac);
    std::string f(fb);
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += '.';
    out += f;
  }
  out += 'Z';
  return out;
}

std::string Value::render() const {
  switch (type_) {
    case ValueType::Null: return std::string(kNullToken);
    case ValueType::Integer: return std::to_string(int_);
    case ValueType::Float: return render_float(float_);
    case ValueType::Text: return text_;
    case ValueType::Timestamp: return render_timestamp_micros(int_);
  }
  throw Error("unreachable value type");
}

std::optional<int64_t> try_parse_integer(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int64_t v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v, 10);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::optional<double> try_parse_float(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<int64_t> try_parse_timestamp_micros(std::string_view s) {
  // YYYY-MM-DD[T ]hh:mm:ss[.frac][Z|±hh:mm]; no zone means UTC.
  unsigned year, month, day, hh, mm, ss;
  if (!parse_fixed_digits(s, 0, 4, year)) return std::nullopt;
  if (s.size() < 19 || s[4] != '-' || s[7] != '-') return std::nullopt;
  if (!parse_fixed_digits(s, 5, 2, month) || !parse_fixed_digits(s, 8, 2, day)) return std::nullopt;
  if (s[10] != 'T' && s[10] != 't' && s[10] != ' ') return std::nullopt;
  if (s[13] != ':' || s[16] != ':') return std::nullopt;
  if (!parse_fixed_digits(s, 11, 2, hh) || !parse_fixed_digits(s, 14, 2, mm) ||
      !parse_fixed_digits(s, 17, 2, ss)) {
    return std::nullopt;
  }
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) return std::nullopt;
  if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;

  size_t pos = 19;
  int64_t frac_micros = 0;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    size_t digits = 0;
    int64_t scale = 100000;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      if (digits >= 6) return std::nullopt;  // finer than microseconds
      frac_micros += (s[pos] - '0') * scale;
      scale /= 10;
      ++digits;
      ++pos;
    }
    if (digits == 0) return std::nullopt;
  }

  int64_t offset_micros = 0;
  if (pos < s.size()) {
    char c = s[pos];
    if (c == 'Z' || c == 'z') {
      ++pos;
    } else if (c == '+' || c == '-') {
      unsigned oh, om;
      if (pos + 6 != s.size() || s[pos + 3] != ':') return std::nullopt;
      if (!parse_fixed_digits(s, pos + 1, 2, oh) || !parse_fixed_digits(s, pos + 4, 2, om)) {
        return std::nullopt;
      }
      if (oh > 23 || om > 59) return std::nullopt;
      offset_micros = (static_cast<int64_t>(oh) * 3600 + om * 60) * kMicrosPerSecond;
      if (c == '-') offset_micros = -offset_micros;
      pos += 6;
    } else {
      return std::nullopt;
    }
  }
  if (pos != s.size()) return std::nullopt;

  const int64_t days = days_from_civil(year, month, day);
  int64_t micros = ((days * kSecondsPerDay) + hh * 3600 + mm * 60 + ss) * kMicrosPerSecond;
  micros += frac_micros;
  micros -= offset_micros;
  return micros;
}

Value Value::parse(std::string_view text, ValueType type) {
  switch (type) {
    case ValueType::Null:
      if (text == kNullToken) return Value::null();
      throw ParseError("expected null token, got: " + std::string(text));
    case ValueType::Integer: {
      auto v = try_parse_integer(text);
      if (!v) throw ParseError("not an integer: " + std::string(text));
      return Value::integer(*v);
    }
    case ValueType::Float: {
      auto v = try_parse_float(text);
      if (!v) throw ParseError("not a finite float: " + std::string(text));
      return Value::floating(*v);
    }
    case ValueType::Text:
      return Value::text(std::string(text));
    case ValueType::Timestamp: {
      auto v = try_parse_timestamp_micros(text);
      if (!v) throw ParseError("not a timestamp: " + std::string(text));
      return Value::timestamp(*v);
    }
  }
  throw Error("unreachable value type");
}

bool Value::operator==(const Value& o) const {
  if (type_ != o.type_) return false;
  switch (type_) {
    case ValueType::Null: return true;
    case ValueType::Integer:
    case ValueType::Timestamp: return int_ == o.int_;
    case ValueType::Float: return float_ == o.float_;
    case ValueType::Text: return text_ == o.text_;
  }
  return false;
}

int compare_values(const Value& a, const Value& b) {
  if (a.type() != b.type() || a.is_null()) {
    throw TypeMismatch("cannot order values of types " + std::string(value_type_name(a.type())) +
                       " and " + std::string(value_type_name(b.type())));
  }
  switch (a.type()) {
    case ValueType::Integer: {
      int64_t x = a.as_integer(), y = b.as_integer();
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case ValueType::Timestamp: {
      int64_t x = a.as_timestamp(), y = b.as_timestamp();
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case ValueType::Float: {
      double x = a.as_float(), y = b.as_float();
      return x < y ? -1 : (x > y ? 1 : 0);
    }
    case ValueType::Text:
      return a.as_text().compare(b.as_text()) < 0 ? -1 : (a.as_text() == b.as_text() ? 0 : 1);
    default:
      throw TypeMismatch("cannot order null values");
  }
}

bool is_ordered_type(ValueType type) { return type != ValueType::Null; }

void append_tagged_cell(std::string& out, const Value& v) {
  static const char kTags[] = {'n', 'i', 'f', 's', 't'};
  out += kTags[static_cast<size_t>(v.type())];
  std::string rendered = v.is_null() ? std::string() : v.render();
  uint32_t len = static_cast<uint32_t>(rendered.size());
  char lenb[4] = {static_cast<char>(len & 0xff), static_cast<char>((len >> 8) & 0xff),
                  static_cast<char>((len >> 16) & 0xff), static_cast<char>((len >> 24) & 0xff)};
  out.append(lenb, 4);
  out += rendered;
}

std::string encode_row(const Row& row) {
  std::string out;
  out.reserve(row.size() * 12);
  for (const Value& v : row) append_tagged_cell(out, v);
  return out;
}

std::string encode_projected_row(const Row& row, const std::vector<size_t>& indexes) {
  std::string out;
  out.reserve(indexes.size() * 12);
  for (size_t i : indexes) append_tagged_cell(out, row[i]);
  return out;
}

}  // namespace lakeprune

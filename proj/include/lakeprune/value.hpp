#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lakeprune {

enum class ValueType : uint8_t { Null, Integer, Float, Text, Timestamp };

std::string_view value_type_name(ValueType type);
ValueType value_type_from_name(std::string_view name);

// A single typed cell. Timestamps are microseconds since the Unix epoch in
// UTC. Floats are always finite; negative zero is normalized to zero so that
// value equality coincides with canonical-rendering equality.
class Value {
 public:
  Value() : type_(ValueType::Null) {}

  static Value null() { return Value(); }
  static Value integer(int64_t v);
  static Value floating(double v);
  static Value text(std::string v);
  static Value timestamp(int64_t micros);

  ValueType type() const { return type_; }
  bool is_null() const { return type_ == ValueType::Null; }

  int64_t as_integer() const;
  double as_float() const;
  const std::string& as_text() const;
  int64_t as_timestamp() const;

  // Canonical rendering: base-10 integers, shortest round-trip floats,
  // RFC 3339 UTC timestamps, text verbatim, "\N" for null.
  std::string render() const;

  // Strict inverse of render() for a known column type. Throws ParseError.
  static Value parse(std::string_view text, ValueType type);

  bool operator==(const Value& o) const;
  bool operator!=(const Value& o) const { return !(*this == o); }

 private:
  ValueType type_;
  int64_t int_ = 0;  // Integer and Timestamp payloads
  double float_ = 0.0;
  std::string text_;
};

// Total order within one non-null type; throws TypeMismatch otherwise.
// Returns <0, 0, >0.
int compare_values(const Value& a, const Value& b);

// Every concrete type carries a total order (text is ordered bytewise).
bool is_ordered_type(ValueType type);

// Strict full-string parsers used by type inference.
std::optional<int64_t> try_parse_integer(std::string_view s);
std::optional<double> try_parse_float(std::string_view s);
std::optional<int64_t> try_parse_timestamp_micros(std::string_view s);

std::string render_timestamp_micros(int64_t micros);
std::string render_float(double v);

// Row encodings for hash-set membership: type-tagged and length-prefixed,
// so equal encodings imply equal projected rows.
using Row = std::vector<Value>;

void append_tagged_cell(std::string& out, const Value& v);
std::string encode_row(const Row& row);
std::string encode_projected_row(const Row& row, const std::vector<size_t>& indexes);

// The payload null marker. A text cell is not allowed to hold this exact
// string; the store rejects it at write time to keep decoding unambiguous.
inline constexpr std::string_view kNullToken = "\\N";

}  // namespace lakeprune

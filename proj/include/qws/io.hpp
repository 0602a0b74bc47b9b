#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qws/dynamics.hpp"

namespace qws {

// %.{sig}g formatting; the workhorse behind all numeric output. Output is
// locale-independent and byte-stable for a given value.
std::string format_double(double v, int significant_digits);

inline std::string fmt_json(double v) { return format_double(v, 17); }
inline std::string fmt_csv(double v) { return format_double(v, 12); }

// Small JSON document builder. Numbers are emitted at 17 significant digits;
// key order is exactly insertion order, so identical content gives identical
// bytes.
class JsonValue {
 public:
  static JsonValue number(double v);
  static JsonValue integer(long long v);
  static JsonValue boolean(bool v);
  static JsonValue string(std::string v);
  static JsonValue array();
  static JsonValue object();

  JsonValue& push(JsonValue v);                       // arrays
  JsonValue& set(const std::string& key, JsonValue v);  // objects

  std::string dump(int indent = 2) const;

 private:
  enum class Type { Null, Number, Integer, Bool, String, Array, Object };
  Type type_ = Type::Null;
  double num_ = 0.0;
  long long int_ = 0;
  bool bool_ = false;
  std::string str_;
  std::vector<JsonValue> arr_;
  std::vector<std::pair<std::string, JsonValue>> obj_;

  void dump_to(std::string& out, int indent, int depth) const;
};

// CSV with header "t,prob_<label>,..." and 12-significant-digit values.
void write_trace_csv(const EvolutionTrace& trace, std::ostream& out);

// Config files are flat "dotted.key = value" lines; '#' starts a comment.
std::map<std::string, std::string> parse_config(std::istream& in);
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace qws

#include "qws/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "qws/errors.hpp"

namespace qws {

std::string format_double(double v, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant_digits, v);
  return buf;
}

JsonValue JsonValue::number(double v) {
  JsonValue j;
  j.type_ = Type::Number;
  j.num_ = v;
  return j;
}

JsonValue JsonValue::integer(long long v) {
  JsonValue j;
  j.type_ = Type::Integer;
  j.int_ = v;
  return j;
}

JsonValue JsonValue::boolean(bool v) {
  JsonValue j;
  j.type_ = Type::Bool;
  j.bool_ = v;
  return j;
}

JsonValue JsonValue::string(std::string v) {
  JsonValue j;
  j.type_ = Type::String;
  j.str_ = std::move(v);
  return j;
}

JsonValue JsonValue::array() {
  JsonValue j;
  j.type_ = Type::Array;
  return j;
}

JsonValue JsonValue::object() {
  JsonValue j;
  j.type_ = Type::Object;
  return j;
}

JsonValue& JsonValue::push(JsonValue v) {
  if (type_ != Type::Array)
    throw InvalidParameter("push is only valid on JSON arrays");
  arr_.push_back(std::move(v));
  return *this;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
  if (type_ != Type::Object)
    throw InvalidParameter("set is only valid on JSON objects");
  for (auto& [k, existing] : obj_) {
    if (k == key) {
      existing = std::move(v);
      return *this;
    }
  }
  obj_.emplace_back(key, std::move(v));
  return *this;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

}  // namespace

void JsonValue::dump_to(std::string& out, int indent, int depth) const {
  const std::string pad(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  const std::string close_pad(static_cast<std::size_t>(indent) * depth, ' ');
  switch (type_) {
    case Type::Null: out += "null"; break;
    case Type::Number: out += fmt_json(num_); break;
    case Type::Integer: out += std::to_string(int_); break;
    case Type::Bool: out += bool_ ? "true" : "false"; break;
    case Type::String: append_escaped(out, str_); break;
    case Type::Array:
      if (arr_.empty()) {
        out += "[]";
        break;
      }
      out += "[\n";
      for (std::size_t i = 0; i < arr_.size(); ++i) {
        out += pad;
        arr_[i].dump_to(out, indent, depth + 1);
        if (i + 1 < arr_.size()) out += ',';
        out += '\n';
      }
      out += close_pad;
      out += ']';
      break;
    case Type::Object:
      if (obj_.empty()) {
        out += "{}";
        break;
      }
      out += "{\n";
      for (std::size_t i = 0; i < obj_.size(); ++i) {
        out += pad;
        append_escaped(out, obj_[i].first);
        out += ": ";
        obj_[i].second.dump_to(out, indent, depth + 1);
        if (i + 1 < obj_.size()) out += ',';
        out += '\n';
      }
      out += close_pad;
      out += '}';
      break;
  }
}

std::string JsonValue::dump(int indent) const {
  std::string out;
  dump_to(out, indent, 0);
  out += '\n';
  return out;
}

void write_trace_csv(const EvolutionTrace& trace, std::ostream& out) {
  out << 't';
  for (const auto& label : trace.labels) out << ",prob_" << label;
  out << '\n';
  for (int t = 0; t < trace.steps(); ++t) {
    out << fmt_csv(trace.times[t]);
    for (int j = 0; j < trace.dim(); ++j)
      out << ',' << fmt_csv(trace.probability(t, j));
    out << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw ParseError("expected 'key = value'", lineno);
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));
    if (key.empty()) throw ParseError("empty config key", lineno);
    if (value.empty()) throw ParseError("empty value for key '" + key + "'",
                                        lineno);
    out[key] = value;
  }
  return out;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameter("cannot open config file '" + path + "'");
  return parse_config(in);
}

}  // namespace qws

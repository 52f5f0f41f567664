#include "paraferm/report.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace paraferm {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
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
  return out;
}

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!stack_.empty() && !first_.back()) out_ += ',';
  if (!first_.empty()) first_.back() = false;
}

JsonWriter& JsonWriter::begin_object() {
  comma();
  out_ += '{';
  stack_.push_back('{');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  stack_.pop_back();
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  comma();
  out_ += '[';
  stack_.push_back('[');
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  stack_.pop_back();
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  if (!stack_.empty() && !first_.back()) out_ += ',';
  if (!first_.empty()) first_.back() = false;
  out_ += '"' + json_escape(k) + "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  comma();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  comma();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  comma();
  out_ += '"' + json_escape(v) + '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::value_complex(std::complex<double> v) {
  begin_array();
  value(v.real());
  value(v.imag());
  end_array();
  return *this;
}

JsonWriter& JsonWriter::null_value() {
  comma();
  out_ += "null";
  return *this;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open: " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RunSummary parse_run_report(const std::string& path) {
  RunSummary rs;
  rs.path = path;
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  rs.verb = j.value("verb", std::string("?"));
  rs.model = j.value("model", std::string("-"));
  rs.pass = j.value("pass", false);
  rs.parsed = true;
  return rs;
}

std::string aggregate_reports(const std::vector<std::string>& paths, bool* all_pass) {
  std::vector<RunSummary> runs;
  for (const auto& p : paths) runs.push_back(parse_run_report(p));

  std::map<std::string, std::map<std::string, bool>> matrix;  // model -> verb -> pass
  bool ok = true;
  for (const auto& r : runs) {
    auto it = matrix[r.model].find(r.verb);
    matrix[r.model][r.verb] = (it == matrix[r.model].end() ? true : it->second) && r.pass;
    ok = ok && r.pass;
  }

  JsonWriter w;
  w.begin_object();
  w.key("runs").begin_array();
  for (const auto& r : runs) {
    w.begin_object();
    w.key("path").value(r.path);
    w.key("verb").value(r.verb);
    w.key("model").value(r.model);
    w.key("pass").value(r.pass);
    w.end_object();
  }
  w.end_array();
  w.key("matrix").begin_object();
  for (const auto& [model, row] : matrix) {
    w.key(model).begin_object();
    for (const auto& [verb, pass] : row) w.key(verb).value(pass);
    w.end_object();
  }
  w.end_object();
  w.key("all_pass").value(ok);
  w.end_object();
  if (all_pass) *all_pass = ok;
  return w.str();
}

}  // namespace paraferm

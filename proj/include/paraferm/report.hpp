#pragma once

#include <complex>
#include <string>
#include <vector>

namespace paraferm {

/// Minimal streaming JSON writer with deterministic output: keys appear in
/// call order and every double is formatted with %.17g.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& value_complex(std::complex<double> v);  // [re, im]
  JsonWriter& null_value();

  const std::string& str() const { return out_; }

 private:
  void comma();
  std::string out_;
  std::vector<char> stack_;   // '{' or '['
  std::vector<bool> first_;
  bool pending_key_ = false;
};

std::string format_double(double v);  // %.17g
std::string json_escape(const std::string& s);

/// Pass/fail summary of a set of run reports.
struct RunSummary {
  std::string path;
  std::string verb;
  std::string model;
  bool pass = false;
  bool parsed = false;
};

RunSummary parse_run_report(const std::string& path);
std::string aggregate_reports(const std::vector<std::string>& paths, bool* all_pass);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace paraferm

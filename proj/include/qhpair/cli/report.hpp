// JSON plumbing shared by manifests and reports. Exact values travel as
// strings ("p/q"); floats are written with 17 significant digits.
#ifndef QHPAIR_CLI_REPORT_HPP
#define QHPAIR_CLI_REPORT_HPP

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qhpair/core.hpp"

namespace qhpair::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const Vec<Rational>& v);
/// Row-major nested arrays.
Json to_json(const Mat<Rational>& m);

/// Accepts a string "p/q" or a JSON integer. `where` names the field for
/// error messages.
Rational rational_from_json(const Json& j, const std::string& where);
Vec<Rational> vec_from_json(const Json& j, const std::string& where);
Mat<Rational> mat_from_json(const Json& j, const std::string& where);

/// Pretty-printed, deterministic, floats as %.17g, trailing newline.
void write_json(std::ostream& os, const Json& j);
std::string dump_json(const Json& j);

/// A command's report: configuration echo, results and named checks.
class Report {
 public:
  explicit Report(std::string command);

  Json& config() { return config_; }
  Json& results() { return results_; }
  void check(const std::string& name, bool pass, Json detail = Json::object());
  void set_timing(double seconds) { timing_ = seconds; }

  bool pass() const;
  Json to_json() const;

 private:
  std::string command_;
  Json config_ = Json::object();
  Json results_ = Json::object();
  Json checks_ = Json::array();
  double timing_ = -1;
};

}  // namespace qhpair::cli

#endif  // QHPAIR_CLI_REPORT_HPP

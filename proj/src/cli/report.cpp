#include "qhpair/cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace qhpair::cli {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const Vec<Rational>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
  return out;
}

Json to_json(const Mat<Rational>& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(to_json(Vec<Rational>(m.row(i).transpose())));
  return out;
}

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": expected a rational string \"p/q\" or an integer");
}

Vec<Rational> vec_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array");
  Vec<Rational> v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i)
    v(static_cast<Index>(i)) = rational_from_json(j[i], where + "[" + std::to_string(i) + "]");
  return v;
}

Mat<Rational> mat_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of rows");
  if (j.empty()) return Mat<Rational>(0, 0);
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  Mat<Rational> m(static_cast<Index>(j.size()), static_cast<Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vec<Rational> row = vec_from_json(j[i], where + "[" + std::to_string(i) + "]");
    if (static_cast<std::size_t>(row.size()) != cols) throw ParseError(where + ": ragged rows");
    m.row(static_cast<Index>(i)) = row.transpose();
  }
  return m;
}

namespace {

void write_value(std::ostream& os, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close(static_cast<std::size_t>(2 * depth), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(k).dump() << ": ";
        write_value(os, v, depth + 1);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& v : j) flat = flat && !v.is_structured();
      os << (flat ? "[" : "[\n");
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << (flat ? ", " : ",\n");
        if (!flat) os << pad;
        write_value(os, j[i], depth + 1);
      }
      if (!flat) os << "\n" << close;
      os << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        os << "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

void write_json(std::ostream& os, const Json& j) {
  write_value(os, j, 0);
  os << "\n";
}

std::string dump_json(const Json& j) {
  std::ostringstream os;
  write_json(os, j);
  return os.str();
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::check(const std::string& name, bool pass, Json detail) {
  Json c = Json::object();
  c["name"] = name;
  c["pass"] = pass;
  for (const auto& [k, v] : detail.items()) c[k] = v;
  checks_.push_back(std::move(c));
}

bool Report::pass() const {
  for (const auto& c : checks_)
    if (!c["pass"].get<bool>()) return false;
  return true;
}

Json Report::to_json() const {
  Json out = Json::object();
  out["tool"] = "qhpair";
  out["format"] = 1;
  out["command"] = command_;
  out["config"] = config_;
  out["results"] = results_;
  out["checks"] = checks_;
  out["pass"] = pass();
  if (timing_ >= 0) out["timing_seconds"] = timing_;
  return out;
}

}  // namespace qhpair::cli

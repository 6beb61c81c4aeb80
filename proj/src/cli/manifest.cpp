#include "qhpair/cli/manifest.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "qhpair/cli/expression.hpp"

namespace qhpair::cli {

namespace {

void check_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  for (const auto& [k, v] : j.items())
    if (!allowed.count(k)) throw ParseError(where + ": unknown key '" + k + "'");
}

const Json& required(const Json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ParseError(where + ": missing key '" + key + "'");
  return j.at(key);
}

std::string get_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

long long get_integer(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": expected an integer");
  return j.get<long long>();
}

double get_number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw ParseError(where + ": expected a number");
  return j.get<double>();
}

std::vector<int> indices_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of indices");
  std::vector<int> out;
  for (const auto& v : j) {
    const long long i = get_integer(v, where);
    if (i < 1) throw ParseError(where + ": indices are 1-based");
    out.push_back(static_cast<int>(i - 1));
  }
  return out;
}

Json indices_to_json(const std::vector<int>& v) {
  Json out = Json::array();
  for (int i : v) out.push_back(i + 1);
  return out;
}

std::vector<LinearForm> forms_from_json(const Json& j, int rank, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of linear forms");
  std::vector<LinearForm> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(parse_linear_form(get_string(j[i], where + "[" + std::to_string(i) + "]"), rank));
  return out;
}

Json forms_to_json(const std::vector<LinearForm>& forms) {
  Json out = Json::array();
  for (const auto& f : forms) out.push_back(format_linear_form(f));
  return out;
}

// Lists of vectors become matrix columns.
Mat<Rational> columns_from_json(const Json& j, int rank, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + ": expected an array of vectors");
  Mat<Rational> m(rank, static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Vec<Rational> v = vec_from_json(j[i], where + "[" + std::to_string(i) + "]");
    if (v.size() != rank) throw PreconditionError(where + ": vector has the wrong length");
    m.col(static_cast<Index>(i)) = v;
  }
  return m;
}

Json columns_to_json(const Mat<Rational>& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.cols(); ++i) out.push_back(to_json(Vec<Rational>(m.col(i))));
  return out;
}

MeroFunction expr_from_json(const Json& j, int rank, const std::string& where) {
  return parse_mero_expression(get_string(j, where), rank);
}

bool same_group(const GroupData& a, const GroupData& b) {
  return a.name == b.name && a.rank == b.rank && a.gram == b.gram && a.simple_roots == b.simple_roots &&
         a.positive_roots == b.positive_roots && a.rho == b.rho && a.weyl_order == b.weyl_order &&
         a.integer_lattice.generators() == b.integer_lattice.generators() &&
         a.weight_lattice.generators() == b.weight_lattice.generators();
}

GroupData group_from_json(const Json& j) {
  if (j.is_string()) return GroupData::parse(j.get<std::string>());
  const std::string w = "problem.group";
  check_keys(j, {"name", "rank", "gram", "simple_roots", "positive_roots", "integer_lattice", "weight_lattice",
                 "rho", "weyl_order"},
             w);
  GroupData g;
  g.name = get_string(required(j, "name", w), w + ".name");
  g.rank = static_cast<int>(get_integer(required(j, "rank", w), w + ".rank"));
  if (g.rank < 0) throw PreconditionError(w + ".rank must be nonnegative");
  g.gram = mat_from_json(required(j, "gram", w), w + ".gram");
  if (g.gram.rows() != g.rank || g.gram.cols() != g.rank) throw PreconditionError(w + ".gram has the wrong shape");
  g.simple_roots = forms_from_json(j.value("simple_roots", Json::array()), g.rank, w + ".simple_roots");
  g.positive_roots = forms_from_json(j.value("positive_roots", Json::array()), g.rank, w + ".positive_roots");
  g.integer_lattice =
      LatticeBasis(columns_from_json(required(j, "integer_lattice", w), g.rank, w + ".integer_lattice"), g.gram);
  g.weight_lattice =
      LatticeBasis(columns_from_json(required(j, "weight_lattice", w), g.rank, w + ".weight_lattice"), g.gram);
  g.rho = j.contains("rho") ? vec_from_json(j["rho"], w + ".rho") : Vec<Rational>::Zero(g.rank);
  if (g.rho.size() != g.rank) throw PreconditionError(w + ".rho has the wrong length");
  if (j.contains("weyl_order")) {
    g.weyl_order = Integer(std::to_string(get_integer(j["weyl_order"], w + ".weyl_order")));
    if (g.weyl_order < 1) throw PreconditionError(w + ".weyl_order must be positive");
  }
  return g;
}

Json group_to_json(const GroupData& g) {
  try {
    if (same_group(GroupData::parse(g.name), g)) return g.name;
  } catch (const Error&) {
  }
  Json out = Json::object();
  out["name"] = g.name;
  out["rank"] = g.rank;
  out["gram"] = to_json(g.gram);
  out["simple_roots"] = forms_to_json(g.simple_roots);
  out["positive_roots"] = forms_to_json(g.positive_roots);
  out["integer_lattice"] = columns_to_json(g.integer_lattice.generators());
  out["weight_lattice"] = columns_to_json(g.weight_lattice.generators());
  out["rho"] = to_json(g.rho);
  out["weyl_order"] = std::stoll(g.weyl_order.get_str());
  return out;
}

RawArrangement arrangement_from_json(const Json& j) {
  const std::string w = "arrangement";
  check_keys(j, {"rank", "forms", "gram", "lattice"}, w);
  RawArrangement a;
  a.rank = static_cast<int>(get_integer(required(j, "rank", w), w + ".rank"));
  if (a.rank < 1) throw PreconditionError(w + ".rank must be positive");
  a.forms = forms_from_json(required(j, "forms", w), a.rank, w + ".forms");
  if (j.contains("gram")) {
    a.gram = mat_from_json(j["gram"], w + ".gram");
    if (a.gram->rows() != a.rank || a.gram->cols() != a.rank)
      throw PreconditionError(w + ".gram has the wrong shape");
  }
  if (j.contains("lattice")) {
    const Mat<Rational> cols = columns_from_json(j["lattice"], a.rank, w + ".lattice");
    a.lattice.emplace();
    for (Index i = 0; i < cols.cols(); ++i) a.lattice->push_back(cols.col(i));
  }
  return a;
}

Json arrangement_to_json(const RawArrangement& a) {
  Json out = Json::object();
  out["rank"] = a.rank;
  out["forms"] = forms_to_json(a.forms);
  if (a.gram) out["gram"] = to_json(*a.gram);
  if (a.lattice) {
    Json l = Json::array();
    for (const auto& v : *a.lattice) l.push_back(to_json(v));
    out["lattice"] = l;
  }
  return out;
}

RunParams run_from_json(const Json& j) {
  const std::string w = "run";
  check_keys(j, {"box", "expr", "t", "lattice", "basis", "cap", "max_cap", "numeric_check", "tolerance", "seed",
                 "points"},
             w);
  RunParams r;
  if (j.contains("box")) r.box = static_cast<int>(get_integer(j["box"], w + ".box"));
  if (j.contains("expr")) r.expr = get_string(j["expr"], w + ".expr");
  if (j.contains("t")) r.t = vec_from_json(j["t"], w + ".t");
  if (j.contains("lattice")) {
    r.lattice = get_string(j["lattice"], w + ".lattice");
    if (*r.lattice != "weight" && *r.lattice != "integer" && *r.lattice != "manifest")
      throw ParseError(w + ".lattice must be weight, integer or manifest");
  }
  if (j.contains("basis")) r.basis = indices_from_json(j["basis"], w + ".basis");
  if (j.contains("cap")) r.cap = static_cast<int>(get_integer(j["cap"], w + ".cap"));
  if (j.contains("max_cap")) r.max_cap = static_cast<int>(get_integer(j["max_cap"], w + ".max_cap"));
  if (j.contains("numeric_check")) {
    if (!j["numeric_check"].is_boolean()) throw ParseError(w + ".numeric_check: expected a boolean");
    r.numeric_check = j["numeric_check"].get<bool>();
  }
  if (j.contains("tolerance")) r.tolerance = get_number(j["tolerance"], w + ".tolerance");
  if (j.contains("seed")) {
    const long long s = get_integer(j["seed"], w + ".seed");
    if (s < 0) throw ParseError(w + ".seed must be nonnegative");
    r.seed = static_cast<std::uint64_t>(s);
  }
  if (j.contains("points")) r.points = static_cast<int>(get_integer(j["points"], w + ".points"));
  return r;
}

Json run_to_json(const RunParams& r) {
  Json out = Json::object();
  if (r.box) out["box"] = *r.box;
  if (r.expr) out["expr"] = *r.expr;
  if (r.t) out["t"] = to_json(*r.t);
  if (r.lattice) out["lattice"] = *r.lattice;
  if (r.basis) out["basis"] = indices_to_json(*r.basis);
  if (r.cap) out["cap"] = *r.cap;
  if (r.max_cap) out["max_cap"] = *r.max_cap;
  if (r.numeric_check) out["numeric_check"] = *r.numeric_check;
  if (r.tolerance) out["tolerance"] = *r.tolerance;
  if (r.seed) out["seed"] = *r.seed;
  if (r.points) out["points"] = *r.points;
  return out;
}

}  // namespace

PairingProblem problem_from_json(const Json& j) {
  const std::string w = "problem";
  check_keys(j, {"name", "group", "constants", "box", "subgroups", "fixed_points"}, w);
  PairingProblem p;
  if (j.contains("name")) p.name = get_string(j["name"], w + ".name");
  p.group = group_from_json(required(j, "group", w));
  const int r = p.group.rank;
  if (j.contains("constants")) {
    const Json& c = j["constants"];
    check_keys(c, {"n1", "n0_prime", "k", "vol_t"}, w + ".constants");
    if (c.contains("n1")) p.constants.n1 = rational_from_json(c["n1"], w + ".constants.n1");
    if (c.contains("n0_prime")) p.constants.n0_prime = rational_from_json(c["n0_prime"], w + ".constants.n0_prime");
    if (c.contains("k")) p.constants.k = rational_from_json(c["k"], w + ".constants.k");
    if (c.contains("vol_t")) p.constants.vol_t = get_number(c["vol_t"], w + ".constants.vol_t");
    if (p.constants.n0_prime.is_zero()) throw PreconditionError("n0_prime must be nonzero");
  }
  if (j.contains("box")) p.box = static_cast<int>(get_integer(j["box"], w + ".box"));
  const Json& subs = j.value("subgroups", Json::array());
  if (!subs.is_array()) throw ParseError(w + ".subgroups: expected an array");
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const std::string ws = w + ".subgroups[" + std::to_string(i) + "]";
    const Json& s = subs[i];
    check_keys(s, {"id", "basis", "arrangement", "amw_arrangement", "order", "amw_order"}, ws);
    SubgroupDatum d;
    d.id = get_string(required(s, "id", ws), ws + ".id");
    d.basis = columns_from_json(required(s, "basis", ws), r, ws + ".basis");
    const int dim = static_cast<int>(d.basis.cols());
    if (s.contains("arrangement")) d.arrangement = forms_from_json(s["arrangement"], dim, ws + ".arrangement");
    if (s.contains("amw_arrangement"))
      d.amw_arrangement = forms_from_json(s["amw_arrangement"], dim, ws + ".amw_arrangement");
    if (s.contains("order")) d.order = indices_from_json(s["order"], ws + ".order");
    if (s.contains("amw_order")) d.amw_order = indices_from_json(s["amw_order"], ws + ".amw_order");
    p.subgroups.push_back(std::move(d));
  }
  const Json& fps = j.value("fixed_points", Json::array());
  if (!fps.is_array()) throw ParseError(w + ".fixed_points: expected an array");
  for (std::size_t i = 0; i < fps.size(); ++i) {
    const std::string wf = w + ".fixed_points[" + std::to_string(i) + "]";
    const Json& f = fps[i];
    check_keys(f, {"label", "subgroup", "mu", "normal_weights", "h"}, wf);
    FixedPointDatum d;
    d.label = get_string(required(f, "label", wf), wf + ".label");
    d.subgroup = get_string(required(f, "subgroup", wf), wf + ".subgroup");
    d.mu = f.contains("mu") ? vec_from_json(f["mu"], wf + ".mu") : Vec<Rational>::Zero(r);
    d.normal_weights = forms_from_json(f.value("normal_weights", Json::array()), r, wf + ".normal_weights");
    d.h = expr_from_json(required(f, "h", wf), r, wf + ".h");
    p.fixed_points.push_back(std::move(d));
  }
  validate(p);
  return p;
}

Json problem_to_json(const PairingProblem& p) {
  Json out = Json::object();
  out["name"] = p.name;
  out["group"] = group_to_json(p.group);
  Json c = Json::object();
  c["n1"] = to_json(p.constants.n1);
  c["n0_prime"] = to_json(p.constants.n0_prime);
  c["k"] = to_json(p.constants.k);
  c["vol_t"] = p.constants.vol_t;
  out["constants"] = c;
  out["box"] = p.box;
  Json subs = Json::array();
  for (const auto& s : p.subgroups) {
    Json d = Json::object();
    d["id"] = s.id;
    d["basis"] = columns_to_json(s.basis);
    if (s.arrangement) d["arrangement"] = forms_to_json(*s.arrangement);
    if (s.amw_arrangement) d["amw_arrangement"] = forms_to_json(*s.amw_arrangement);
    if (!s.order.empty()) d["order"] = indices_to_json(s.order);
    if (!s.amw_order.empty()) d["amw_order"] = indices_to_json(s.amw_order);
    subs.push_back(d);
  }
  out["subgroups"] = subs;
  Json fps = Json::array();
  for (const auto& f : p.fixed_points) {
    Json d = Json::object();
    d["label"] = f.label;
    d["subgroup"] = f.subgroup;
    d["mu"] = to_json(f.mu);
    d["normal_weights"] = forms_to_json(f.normal_weights);
    d["h"] = format_mero(f.h);
    fps.push_back(d);
  }
  out["fixed_points"] = fps;
  return out;
}

Manifest manifest_from_json(const Json& j) {
  check_keys(j, {"version", "group", "arrangement", "order", "functions", "problem", "run"}, "manifest");
  Manifest m;
  m.version = static_cast<int>(get_integer(required(j, "version", "manifest"), "version"));
  if (m.version != 1) throw ParseError("unsupported manifest version " + std::to_string(m.version));
  if (j.contains("group")) {
    m.group = get_string(j["group"], "group");
    RootSystem::parse(*m.group);
  }
  if (j.contains("arrangement")) m.arrangement = arrangement_from_json(j["arrangement"]);
  if (m.group && m.arrangement) throw PreconditionError("manifest gives both a group and an arrangement");
  if (j.contains("order")) m.order = indices_from_json(j["order"], "order");
  if (j.contains("functions")) {
    if (!j["functions"].is_object()) throw ParseError("functions: expected an object of expressions");
    for (const auto& [k, v] : j["functions"].items()) m.functions[k] = get_string(v, "functions." + k);
  }
  if (j.contains("problem")) m.problem = problem_from_json(j["problem"]);
  if (j.contains("run")) m.run = run_from_json(j["run"]);
  return m;
}

Json manifest_to_json(const Manifest& m) {
  Json out = Json::object();
  out["version"] = m.version;
  if (m.group) out["group"] = *m.group;
  if (m.arrangement) out["arrangement"] = arrangement_to_json(*m.arrangement);
  if (m.order) out["order"] = indices_to_json(*m.order);
  if (!m.functions.empty()) {
    Json f = Json::object();
    for (const auto& [k, v] : m.functions) f[k] = v;
    out["functions"] = f;
  }
  if (m.problem) out["problem"] = problem_to_json(*m.problem);
  const Json run = run_to_json(m.run);
  if (!run.empty()) out["run"] = run;
  return out;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open manifest '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return manifest_from_json(j);
}

std::vector<std::string> builtin_problem_names() {
  return {"su2-single-block", "torus-free", "su3-circles", "su3-circles-decaying"};
}

PairingProblem load_problem(const std::string& spec) {
  const std::string prefix = "builtin:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string name = spec.substr(prefix.size());
    if (name == "su2-single-block") return su2_single_block_problem();
    if (name == "torus-free") return example_torus_free_problem();
    if (name == "su3-circles") return example_circle_problem();
    if (name == "su3-circles-decaying") {
      PairingProblem p = example_circle_problem("1/(Y1^2*Y2^2*(Y1+Y2)^2)");
      p.name = name;
      return p;
    }
    throw ParseError("unknown built-in problem '" + name + "'");
  }
  Manifest m = load_manifest(spec);
  if (!m.problem) throw PreconditionError("manifest '" + spec + "' has no problem block");
  return *m.problem;
}

}  // namespace qhpair::cli

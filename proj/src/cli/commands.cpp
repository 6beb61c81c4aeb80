#include "qhpair/cli/commands.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qhpair/arrangement.hpp"
#include "qhpair/cli/expression.hpp"
#include "qhpair/cli/manifest.hpp"
#include "qhpair/cli/report.hpp"
#include "qhpair/pairing.hpp"
#include "qhpair/parallel.hpp"
#include "qhpair/residue.hpp"
#include "qhpair/rootsystem.hpp"
#include "qhpair/szenes.hpp"

namespace qhpair::cli {

namespace {

struct Flags {
  std::string manifest, group, order, basis, expr, t, lattice, lambda, problem, report;
  int box = 0;
  int cap = -1;
  int max_cap = 0;
  int points = 0;
  long long seed = -1;
  double tolerance = 0;
  bool numeric_check = false;
  bool timing = false;
  int jobs = 0;
};

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<int> parse_indices(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& s : split_list(text)) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError(what + ": expected 1-based indices separated by commas");
    const int i = std::stoi(s);
    if (i < 1) throw ParseError(what + ": indices are 1-based");
    out.push_back(i - 1);
  }
  return out;
}

Vec<Rational> parse_rationals(const std::string& text, const std::string& what) {
  const auto parts = split_list(text);
  Vec<Rational> v(static_cast<Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v(static_cast<Index>(i)) = Rational::parse(parts[i]);
    } catch (const Error& e) {
      throw ParseError(what + ": " + e.what());
    }
  }
  return v;
}

std::string indices_text(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + ")";
}

Json indices_json(const std::vector<int>& v) {
  Json out = Json::array();
  for (int i : v) out.push_back(i + 1);
  return out;
}

Json forms_json(const std::vector<LinearForm>& forms) {
  Json out = Json::array();
  for (const auto& f : forms) out.push_back(format_linear_form(f));
  return out;
}

Json float_json(double x) { return Json(x); }

// Everything a command needs, resolved from flags over the manifest.
struct Context {
  Flags flags;
  std::optional<Manifest> manifest;
  std::optional<RootSystem> rs;

  void load() {
    if (!flags.manifest.empty()) manifest = load_manifest(flags.manifest);
    if (!flags.group.empty()) {
      rs.emplace(RootSystem::parse(flags.group));
    } else if (manifest && manifest->group) {
      rs.emplace(RootSystem::parse(*manifest->group));
    }
  }

  const RunParams& run() const {
    static const RunParams empty;
    return manifest ? manifest->run : empty;
  }

  int rank() const {
    if (rs) return rs->rank();
    if (manifest && manifest->arrangement) return manifest->arrangement->rank;
    throw PreconditionError("give --group or a manifest with a group or an arrangement");
  }

  Arrangement arrangement() const {
    std::vector<int> order;
    if (!flags.order.empty()) {
      order = parse_indices(flags.order, "--order");
    } else if (manifest && manifest->order) {
      order = *manifest->order;
    }
    if (rs) return Arrangement(rs->rank(), rs->positive_roots(), order);
    if (manifest && manifest->arrangement)
      return Arrangement(manifest->arrangement->rank, manifest->arrangement->forms, order);
    throw PreconditionError("give --group or a manifest with a group or an arrangement");
  }

  MeroFunction expression() const {
    std::string text = flags.expr;
    if (text.empty() && run().expr) text = *run().expr;
    if (text.empty()) throw PreconditionError("no function given (--expr)");
    if (manifest) {
      auto it = manifest->functions.find(text);
      if (it != manifest->functions.end()) text = it->second;
    }
    return parse_mero_expression(text, rank());
  }

  ResidueOptions residue_options() const {
    ResidueOptions o;
    if (flags.max_cap > 0) {
      o.max_cap = flags.max_cap;
    } else if (run().max_cap) {
      o.max_cap = *run().max_cap;
    }
    if (flags.cap >= 0) {
      o.extra_cap = flags.cap;
    } else if (run().cap) {
      o.extra_cap = *run().cap;
    }
    if (o.max_cap < 1 || o.extra_cap < 0) throw PreconditionError("caps must be positive");
    return o;
  }

  int box(int fallback) const {
    const int b = flags.box > 0 ? flags.box : run().box.value_or(fallback);
    if (b < 1) throw PreconditionError("box bound must be positive");
    return b;
  }

  double tolerance(double fallback) const {
    return flags.tolerance > 0 ? flags.tolerance : run().tolerance.value_or(fallback);
  }

  std::uint64_t seed(std::uint64_t fallback) const {
    return flags.seed >= 0 ? static_cast<std::uint64_t>(flags.seed) : run().seed.value_or(fallback);
  }

  int points(int fallback) const {
    const int p = flags.points > 0 ? flags.points : run().points.value_or(fallback);
    if (p < 1) throw PreconditionError("points must be positive");
    return p;
  }

  bool numeric_check() const { return flags.numeric_check || run().numeric_check.value_or(false); }

  void echo(Report& r) const {
    if (!flags.manifest.empty()) r.config()["manifest"] = flags.manifest;
    if (rs) r.config()["group"] = rs->name();
  }
};

Json arrangement_json(const Arrangement& a) {
  Json out = Json::object();
  out["rank"] = a.rank();
  out["forms"] = forms_json(a.forms());
  out["order"] = indices_json(a.order());
  Json prop = Json::array();
  for (const auto& [i, j] : a.proportional_pairs()) prop.push_back(indices_json({i, j}));
  if (!prop.empty()) out["proportional_pairs"] = prop;
  return out;
}

void cmd_arr(Context& c, Report& r, const std::string& what) {
  const Arrangement a = c.arrangement();
  c.echo(r);
  r.config()["arrangement"] = arrangement_json(a);
  if (what == "bases") {
    Json list = Json::array();
    const auto bases = enumerate_bases(a);
    for (const auto& b : bases) list.push_back(indices_text(b));
    r.results()["count"] = bases.size();
    r.results()["bases"] = list;
  } else if (what == "circuits") {
    Json list = Json::array();
    const auto cs = circuits(a);
    for (const auto& b : cs) list.push_back(indices_text(b));
    r.results()["count"] = cs.size();
    r.results()["circuits"] = list;
  } else if (what == "diagonal") {
    const DiagonalBasis ob = diagonal_basis(a, c.residue_options());
    Json members = Json::array();
    std::string text;
    for (const auto& m : ob.members) {
      members.push_back(indices_text(m));
      text += (text.empty() ? "" : ",") + indices_text(m);
    }
    r.results()["count"] = ob.members.size();
    r.results()["members"] = members;
    r.results()["members_text"] = text;
    r.results()["certificate"] = to_json(ob.certificate);
    const Index n = ob.certificate.rows();
    r.check("certificate is the identity", ob.certificate == Mat<Rational>::Identity(n, n));
  } else {
    const DiagonalBasis ob = diagonal_basis(a, c.residue_options());
    const std::uint64_t seed = c.seed(1);
    const int points = c.points(20);
    r.config()["seed"] = seed;
    r.config()["points"] = points;
    const SpanningCheck s = check_spanning(a, ob, seed, points, c.residue_options());
    Json members = Json::array();
    for (const auto& m : ob.members) members.push_back(indices_text(m));
    Json coeffs = Json::object();
    const auto bases = enumerate_bases(a);
    for (std::size_t i = 0; i < bases.size(); ++i) {
      Json row = Json::array();
      for (const auto& x : s.coefficients[i]) row.push_back(to_json(x));
      coeffs[indices_text(bases[i])] = row;
    }
    r.results()["members"] = members;
    r.results()["bases"] = s.bases;
    r.results()["coefficients"] = coeffs;
    r.results()["failures"] = s.failures;
    r.check("spanning identity holds at every point", s.failures == 0,
            Json{{"evaluations", s.bases * s.points}});
  }
}

void cmd_res(Context& c, Report& r) {
  const Arrangement a = c.arrangement();
  std::vector<int> basis;
  if (!c.flags.basis.empty()) {
    basis = parse_indices(c.flags.basis, "--basis");
  } else if (c.run().basis) {
    basis = *c.run().basis;
  } else {
    throw PreconditionError("no basis given (--basis)");
  }
  std::vector<LinearForm> tau;
  for (int i : basis) {
    if (i >= a.size()) throw PreconditionError("--basis index " + std::to_string(i + 1) + " out of range");
    tau.push_back(a.form(i));
  }
  const MeroFunction f = c.expression();
  c.echo(r);
  r.config()["forms"] = forms_json(a.forms());
  r.config()["basis"] = indices_json(basis);
  r.config()["tau"] = forms_json(tau);
  r.config()["expr"] = format_mero(f);
  const Rational v = res_tau(tau, f, c.residue_options());
  r.results()["value"] = to_json(v);
  r.results()["value_float"] = float_json(v.to_double());
  if (c.numeric_check()) {
    const double tol = c.tolerance(1e-8);
    const auto z = res_tau_numeric(tau, f);
    const double scale = std::max(1.0, std::abs(v.to_double()));
    const double diff = std::abs(z.real() - v.to_double());
    r.results()["numeric_real"] = float_json(z.real());
    r.results()["numeric_imag"] = float_json(z.imag());
    r.results()["numeric_difference"] = float_json(diff);
    r.check("numeric oracle agrees", diff <= tol * scale && std::abs(z.imag()) <= tol * scale,
            Json{{"tolerance", tol * scale}});
  }
}

void cmd_szenes(Context& c, Report& r) {
  SzenesCase sc;
  sc.arrangement = c.arrangement();
  const int rank = sc.arrangement.rank();
  std::string lattice = c.flags.lattice;
  if (lattice.empty()) lattice = c.run().lattice.value_or(c.rs ? "weight" : "manifest");
  if (c.rs) {
    if (lattice == "weight") {
      sc.lattice = c.rs->weight_lattice();
    } else if (lattice == "integer") {
      sc.lattice = c.rs->integer_lattice();
    } else {
      throw PreconditionError("--lattice must be weight or integer for a group");
    }
  } else {
    if (lattice != "manifest") throw PreconditionError("a raw arrangement uses the lattice from its manifest");
    const RawArrangement& raw = *c.manifest->arrangement;
    const Mat<Rational> gram = raw.gram.value_or(Mat<Rational>::Identity(rank, rank));
    Mat<Rational> gens = Mat<Rational>::Identity(rank, rank);
    if (raw.lattice) {
      gens = Mat<Rational>(rank, static_cast<Index>(raw.lattice->size()));
      for (std::size_t i = 0; i < raw.lattice->size(); ++i) gens.col(static_cast<Index>(i)) = (*raw.lattice)[i];
    }
    sc.lattice = LatticeBasis(gens, gram);
  }
  sc.f = c.expression();
  if (!c.flags.t.empty()) {
    sc.t = parse_rationals(c.flags.t, "--t");
  } else {
    sc.t = c.run().t.value_or(Vec<Rational>::Zero(rank));
  }
  if (sc.t.size() != rank) throw PreconditionError("--t must have " + std::to_string(rank) + " entries");
  sc.box = c.box(100);

  c.echo(r);
  r.config()["arrangement"] = arrangement_json(sc.arrangement);
  r.config()["lattice"] = lattice;
  r.config()["expr"] = format_mero(sc.f);
  r.config()["t"] = to_json(sc.t);
  r.config()["box"] = sc.box;

  const SzenesReport rep = verify_szenes(sc, c.rs ? &*c.rs : nullptr, c.residue_options());
  r.results()["rhs"] = to_json(rep.rhs);
  r.results()["rhs_float"] = float_json(rep.rhs.to_double());
  if (rep.sun_rhs) r.results()["sun_rhs"] = to_json(*rep.sun_rhs);
  r.results()["lhs_raw"] = float_json(rep.lhs.raw);
  r.results()["lhs_imag"] = float_json(rep.lhs.imag);
  r.results()["lhs_estimate"] = float_json(rep.lhs.estimate);
  r.results()["tail"] = float_json(rep.lhs.tail);
  r.results()["points"] = rep.lhs.points;
  r.results()["difference"] = float_json(rep.difference);
  r.results()["tolerance"] = float_json(rep.tolerance);
  r.check("lattice sum agrees with residues", rep.difference <= rep.tolerance);
  r.check("imaginary part vanishes", rep.imag_ok);
  if (rep.sun_rhs) r.check("SU(n) form agrees", *rep.sun_rhs == rep.rhs);
}

void cmd_rootsys(Context& c, Report& r, const std::string& what) {
  if (!c.rs) throw PreconditionError("rootsys needs --group");
  const RootSystem& rs = *c.rs;
  c.echo(r);
  if (what == "dims") {
    if (c.flags.lambda.empty()) throw PreconditionError("rootsys dims needs --lambda");
    const Vec<Rational> lambda = parse_rationals(c.flags.lambda, "--lambda");
    r.config()["lambda"] = to_json(lambda);
    r.results()["dim"] = weyl_dim(rs, lambda).get_str();
  } else if (what == "rho") {
    r.results()["rho"] = to_json(rs.rho());
    r.results()["rho_product"] = rho_product(rs).get_str();
  } else if (what == "roots") {
    r.results()["simple_roots"] = forms_json(rs.simple_roots());
    r.results()["positive_roots"] = forms_json(rs.positive_roots());
    Json labels = Json::array();
    for (const auto& [j, k] : rs.root_labels()) labels.push_back("(" + std::to_string(j) + "," + std::to_string(k) + ")");
    r.results()["labels"] = labels;
    r.results()["cartan"] = to_json(rs.cartan());
    r.results()["gram"] = to_json(rs.gram());
  } else {
    r.results()["vol_ratio"] = float_json(vol_ratio(rs));
    r.results()["rho_product"] = rho_product(rs).get_str();
  }
}

Json constants_json(const PairingProblem& p) {
  Json out = Json::object();
  out["n1"] = to_json(p.constants.n1);
  out["n0_prime"] = to_json(p.constants.n0_prime);
  out["k"] = to_json(p.constants.k);
  out["vol_t"] = float_json(p.constants.vol_t);
  out["weyl_order"] = p.group.weyl_order.get_str();
  out["residue_prefactor"] = to_json(residue_prefactor(p));
  out["amw_prefactor"] = to_json(amw_prefactor(p));
  // k (2 pi)^{2 n_+} / (|W| vol_t^2), the metric-dependent AMW constant.
  const double two_pi = 2 * std::numbers::pi;
  out["amw_metric_constant"] =
      float_json(p.constants.k.to_double() * std::pow(two_pi, 2.0 * static_cast<double>(p.group.positive_roots.size())) /
                 (Rational(p.group.weyl_order).to_double() * p.constants.vol_t * p.constants.vol_t));
  out["amw_volume_prefactor"] = float_json(amw_volume_prefactor(p));
  return out;
}

Json terms_json(const std::vector<PairingTerm>& terms) {
  Json out = Json::array();
  for (const auto& t : terms) {
    Json e = Json::object();
    e["subgroup"] = t.subgroup;
    e["fixed_point"] = t.label;
    e["sigma"] = indices_text(t.integrand.sigma);
    e["value"] = to_json(t.value);
    out.push_back(e);
  }
  return out;
}

void cmd_pairing(Context& c, Report& r, const std::string& what) {
  if (c.flags.problem.empty()) throw PreconditionError("pairing needs --problem FILE or builtin:NAME");
  PairingProblem p = load_problem(c.flags.problem);
  if (c.flags.box > 0) p.box = c.flags.box;
  validate(p);
  const ResidueOptions opts = c.residue_options();
  r.config()["problem"] = c.flags.problem;
  r.config()["name"] = p.name;
  r.config()["group"] = p.group.name;
  r.config()["box"] = p.box;
  r.config()["constants"] = constants_json(p);

  if (what == "residue") {
    const Rational v = residue_pairing(p, opts);
    r.results()["value"] = to_json(v);
    r.results()["value_float"] = float_json(v.to_double());
    r.results()["terms"] = terms_json(pairing_terms(p, false, opts));
    return;
  }
  if (what == "amw-residue") {
    const Rational v = amw_residue_form(p, opts);
    r.results()["value"] = to_json(v);
    r.results()["value_float"] = float_json(v.to_double());
    r.results()["terms"] = terms_json(pairing_terms(p, true, opts));
    return;
  }
  if (what == "amw") {
    const SSum s = amw_lattice_sum(p);
    r.results()["value"] = float_json(s.value);
    r.results()["raw"] = float_json(s.raw);
    r.results()["imag"] = float_json(s.imag);
    r.results()["tail"] = float_json(s.tail);
    r.results()["points"] = s.points;
    return;
  }
  // compare: both formulas, then the transform identity block by block.
  const Rational res = residue_pairing(p, opts);
  const Rational amw = amw_residue_form(p, opts);
  r.results()["residue_pairing"] = to_json(res);
  r.results()["amw_residue_form"] = to_json(amw);
  const Rational rp(p.group.rho_product());
  Json blocks = Json::array();
  double total = 0;
  double total_tail = 0;
  for (const auto& sub : p.subgroups) {
    const Block b = make_block(p, sub);
    const Rational exact = block_amw_residue(p, b, opts) / (rp * rp);
    const SSum s = s_sum(p, b);
    const double diff = std::abs(s.value - exact.to_double());
    const double tol = std::max(1e-6, 10 * s.tail);
    Json e = Json::object();
    e["subgroup"] = sub.id;
    e["residue_block"] = to_json(block_residue(p, b, opts));
    e["amw_block"] = to_json(exact);
    e["s_sum"] = float_json(s.value);
    e["s_sum_imag"] = float_json(s.imag);
    e["tail"] = float_json(s.tail);
    e["difference"] = float_json(diff);
    blocks.push_back(e);
    r.check("transform consistency " + sub.id, diff <= tol && std::abs(s.imag) <= 1e-10 * (1 + std::abs(s.raw)),
            Json{{"tolerance", tol}});
    total += s.value;
    total_tail += s.tail;
  }
  r.results()["blocks"] = blocks;
  const double k = (p.constants.k / Rational(p.group.weyl_order)).to_double();
  r.results()["amw_lattice_sum"] = float_json(k * total);
  const double diff = std::abs(k * total - amw.to_double());
  r.check("lattice sum matches amw residue form", diff <= std::max(1e-6, 10 * std::abs(k) * total_tail));
}

void print_table(std::ostream& os, const Json& report) {
  os << report["command"].get<std::string>() << "\n";
  auto line = [&](const std::string& key, const Json& v) {
    os << "  " << key;
    for (std::size_t i = key.size(); i < 26; ++i) os << ' ';
    if (v.is_string()) {
      os << v.get<std::string>();
    } else if (v.is_number_float()) {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.12g", v.get<double>());
      os << buf;
    } else {
      os << v.dump();
    }
    os << "\n";
  };
  for (const auto& [k, v] : report["results"].items()) {
    if (v.is_array() && !v.empty() && v[0].is_object()) {
      os << "  " << k << ":\n";
      for (const auto& e : v) os << "    " << e.dump() << "\n";
    } else {
      line(k, v);
    }
  }
  for (const auto& chk : report["checks"])
    os << "  " << (chk["pass"].get<bool>() ? "PASS " : "FAIL ") << chk["name"].get<std::string>() << "\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Residue calculus for quasi-Hamiltonian intersection pairings", "qhpair"};
  app.require_subcommand(1);
  Context ctx;
  Flags& f = ctx.flags;
  app.add_option("--report", f.report, "write the JSON report here ('-' for stdout)");
  app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", f.timing, "include wall time in the report");

  auto common = [&](CLI::App* s) {
    s->add_option("--manifest", f.manifest, "manifest file");
    s->add_option("--group", f.group, "su2, su3, ...");
    s->add_option("--order", f.order, "total order, 1-based indices");
    s->add_option("--cap", f.cap, "extra truncation orders");
    s->add_option("--max-cap", f.max_cap, "largest truncation order");
  };

  std::string command;
  std::function<void(Context&, Report&)> action;
  auto bind = [&](CLI::App* s, const std::string& name, std::function<void(Context&, Report&)> fn) {
    s->callback([&command, &action, name, fn] {
      command = name;
      action = fn;
    });
  };

  CLI::App* arr = app.add_subcommand("arr", "hyperplane arrangements");
  arr->require_subcommand(1);
  for (const std::string what : {"bases", "circuits", "diagonal", "spanning"}) {
    CLI::App* s = arr->add_subcommand(what);
    common(s);
    if (what == "spanning") {
      s->add_option("--seed", f.seed, "random seed");
      s->add_option("--points", f.points, "points per basis");
    }
    bind(s, "arr " + what, [what](Context& c, Report& r) { cmd_arr(c, r, what); });
  }

  CLI::App* res = app.add_subcommand("res", "iterated residue Res^tau");
  common(res);
  res->add_option("--basis", f.basis, "ordered basis, 1-based indices");
  res->add_option("--expr", f.expr, "function or manifest function name");
  res->add_flag("--numeric-check", f.numeric_check, "compare with contour integration");
  res->add_option("--tolerance", f.tolerance, "numeric check tolerance");
  bind(res, "res", [](Context& c, Report& r) { cmd_res(c, r); });

  CLI::App* sz = app.add_subcommand("szenes", "lattice sum against residues");
  sz->require_subcommand(1);
  CLI::App* verify = sz->add_subcommand("verify");
  common(verify);
  verify->add_option("--expr", f.expr, "function or manifest function name");
  verify->add_option("--t", f.t, "shift, comma separated");
  verify->add_option("--lattice", f.lattice, "weight | integer | manifest");
  verify->add_option("--box", f.box, "box bound B");
  bind(verify, "szenes verify", [](Context& c, Report& r) { cmd_szenes(c, r); });

  CLI::App* rsys = app.add_subcommand("rootsys", "SU(n) root data");
  rsys->require_subcommand(1);
  for (const std::string what : {"dims", "rho", "roots", "volratio"}) {
    CLI::App* s = rsys->add_subcommand(what);
    s->add_option("--group", f.group, "su2, su3, ...")->required();
    if (what == "dims") s->add_option("--lambda", f.lambda, "dominant weight, comma separated")->required();
    bind(s, "rootsys " + what, [what](Context& c, Report& r) { cmd_rootsys(c, r, what); });
  }

  CLI::App* pairing = app.add_subcommand("pairing", "intersection pairings");
  pairing->require_subcommand(1);
  for (const std::string what : {"amw", "residue", "amw-residue", "compare"}) {
    CLI::App* s = pairing->add_subcommand(what);
    s->add_option("--problem", f.problem, "manifest with a problem block, or builtin:NAME")->required();
    s->add_option("--box", f.box, "box bound for lattice sums");
    s->add_option("--cap", f.cap, "extra truncation orders");
    s->add_option("--max-cap", f.max_cap, "largest truncation order");
    bind(s, "pairing " + what, [what](Context& c, Report& r) { cmd_pairing(c, r, what); });
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kParse;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    if (f.jobs > 0) set_jobs(f.jobs);
    ctx.load();
    Report report(command);
    action(ctx, report);
    if (f.timing)
      report.set_timing(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    const Json j = report.to_json();
    if (f.report == "-") {
      write_json(out, j);
    } else {
      print_table(out, j);
      if (!f.report.empty()) {
        std::ofstream file(f.report, std::ios::binary);
        if (!file) throw PreconditionError("cannot write report '" + f.report + "'");
        write_json(file, j);
      }
    }
    return report.pass() ? kOk : kVerification;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "computation: " << e.what() << "\n";
    return kComputation;
  }
}

}  // namespace qhpair::cli

#include "cli.hpp"

#include "jks/arrangement.hpp"
#include "jks/errors.hpp"
#include "jks/quiver_jk.hpp"
#include "jks/scattering.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

namespace jks::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else if (c != ' ' && c != '\t') {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& block : split(text, ';'))
    for (const auto& item : split(block, ',')) {
      if (item.empty()) throw Error(ErrorKind::ParseError, "empty entry in list \"" + text + "\"");
      out.push_back(parse_rational(item));
    }
  return out;
}

int to_int(const Rational& q, const std::string& what) {
  if (denominator(q) != 1 || abs(q) > 1000000) throw Error(ErrorKind::InvalidInput, what + " must be a small integer");
  return static_cast<int>(numerator(q));
}

std::vector<int> parse_ints(const std::string& text, const std::string& what) {
  std::vector<int> out;
  for (const auto& q : parse_rationals(text)) out.push_back(to_int(q, what));
  return out;
}

// "a;b" blocks for bipartite input, or a flat list of the combined length.
template <class T, class Parse>
std::vector<T> bipartite_list(const std::string& text, int l1, int l2, const std::string& what, Parse parse) {
  const auto blocks = split(text, ';');
  if (blocks.size() > 2) throw Error(ErrorKind::InvalidInput, what + ": at most one ';' separator is allowed");
  std::vector<T> out = parse(text);
  if (blocks.size() == 2) {
    const auto first = parse(blocks[0]);
    if (static_cast<int>(first.size()) != l1)
      throw Error(ErrorKind::InvalidInput, what + ": expected " + std::to_string(l1) + " source entries");
  }
  if (static_cast<int>(out.size()) != l1 + l2)
    throw Error(ErrorKind::InvalidInput, what + ": expected " + std::to_string(l1 + l2) + " entries");
  return out;
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

std::string joined(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string joined(const std::vector<Rational>& items, const std::string& sep) {
  std::vector<std::string> s;
  for (const auto& q : items) s.push_back(to_string(q));
  return joined(s, sep);
}

json quiver_json(const Quiver& q, const DimVector& d, const Stability* theta) {
  json arrows = json::array();
  for (const auto& a : q.arrows) arrows.push_back({{"tail", q.vertices[a.tail]}, {"head", q.vertices[a.head]}});
  json dim = json::object();
  for (int v = 0; v < q.vertex_count(); ++v) dim[q.vertices[v]] = d[v];
  json out = {{"vertices", q.vertices}, {"arrows", arrows}, {"dimension", dim}};
  if (theta) {
    json st = json::object();
    for (int v = 0; v < q.vertex_count(); ++v) st[q.vertices[v]] = to_string((*theta)[v]);
    out["stability"] = st;
  }
  return out;
}

json witness_json(const WallWitness& w) {
  json span = json::array();
  for (const auto& v : w.span) span.push_back(rationals(v));
  return {{"context", w.context}, {"point", rationals(w.point)}, {"span", span}, {"labels", w.labels}};
}

struct Options {
  std::string quiver_path;
  int l1 = 0;
  int l2 = 0;
  std::string d;
  std::string zeta;
  int order = 4;
  std::string rcharges = "seed:1";
  std::string lambda = "1";
  std::string lambdas;
  std::string ray;
  bool infinity = false;
  bool split = true;
  bool csv = false;
  bool timing = false;
};

struct Problem {
  Quiver quiver;
  DimVector dimension;
  Stability zeta;
  bool has_zeta = false;
  int l1 = 0;
  int l2 = 0;
};

Problem load_problem(const Options& o, bool need_zeta) {
  Problem p;
  if (!o.quiver_path.empty()) {
    QuiverInput in = parse_quiver_file(o.quiver_path);
    p.quiver = std::move(in.quiver);
    p.dimension = std::move(in.dimension);
    p.zeta = std::move(in.stability);
    p.has_zeta = true;
    const int n = p.quiver.vertex_count();
    if (!o.d.empty()) {
      p.dimension = parse_ints(o.d, "--d");
      if (static_cast<int>(p.dimension.size()) != n)
        throw Error(ErrorKind::InvalidInput, "--d: expected " + std::to_string(n) + " entries");
    }
    if (!o.zeta.empty()) {
      p.zeta = parse_rationals(o.zeta);
      if (static_cast<int>(p.zeta.size()) != n)
        throw Error(ErrorKind::InvalidInput, "--zeta: expected " + std::to_string(n) + " entries");
    }
  } else if (o.l1 > 0 && o.l2 > 0) {
    p.l1 = o.l1;
    p.l2 = o.l2;
    p.quiver = Quiver::complete_bipartite(o.l1, o.l2);
    const auto ints = [](const std::string& s) { return parse_ints(s, "--d"); };
    p.dimension = o.d.empty() ? DimVector(o.l1 + o.l2, 1) : bipartite_list<int>(o.d, o.l1, o.l2, "--d", ints);
    if (!o.zeta.empty()) {
      p.zeta = bipartite_list<Rational>(o.zeta, o.l1, o.l2, "--zeta", parse_rationals);
      p.has_zeta = true;
    }
  } else {
    throw Error(ErrorKind::InvalidInput, "give either --quiver FILE or positive --l1 and --l2");
  }
  for (int v : p.dimension)
    if (v < 0) throw Error(ErrorKind::InvalidInput, "--d: dimension entries must be nonnegative");
  if (total_dimension(p.dimension) == 0) throw Error(ErrorKind::InvalidInput, "--d: zero dimension vector");
  if (need_zeta) {
    if (!p.has_zeta) throw Error(ErrorKind::InvalidInput, "--zeta is required");
    check_normalized(p.quiver, p.dimension, p.zeta);
  }
  return p;
}

RChargeSpec parse_rcharges(const std::string& text) {
  if (text.rfind("seed:", 0) == 0) {
    const std::string digits = text.substr(5);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorKind::ParseError, "--rcharges: expected seed:<u64>");
    try {
      return RChargeSpec::seeded(std::stoull(digits));
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::ParseError, "--rcharges: seed out of range");
    }
  }
  return RChargeSpec::explicit_values(parse_rationals(text));
}

bool is_abelian(const DimVector& d) {
  return std::all_of(d.begin(), d.end(), [](int v) { return v <= 1; });
}

Stability restrict(const Stability& theta, const std::vector<int>& kept) {
  Stability out;
  for (int v : kept) out.push_back(theta[v]);
  return out;
}

struct Output {
  json report;
  std::vector<std::string> csv_rows;  // first row is the header
  int code = kPass;
};

json problem_inputs(const Problem& p) {
  json in = quiver_json(p.quiver, p.dimension, p.has_zeta ? &p.zeta : nullptr);
  if (p.l1 > 0) in["bipartite"] = {p.l1, p.l2};
  return in;
}

Output cmd_trees(const Options& o) {
  const Problem p = load_problem(o, true);
  if (!is_abelian(p.dimension)) throw Error(ErrorKind::InvalidInput, "trees: the dimension vector must be abelian");
  std::vector<int> kept;
  const Quiver sub = restrict_to_support(p.quiver, p.dimension, &kept);
  const Stability theta = restrict(p.zeta, kept);
  validate_quiver(sub, true);
  const ReducedQuiver r = reduced_quiver(sub);
  stable_trees(r.quiver, theta);  // raises the wall witness for non-regular theta

  Output out;
  out.report["command"] = "trees";
  out.report["inputs"] = problem_inputs(p);
  json reduced = json::array();
  for (int a = 0; a < r.quiver.arrow_count(); ++a)
    reduced.push_back({{"arrow", r.quiver.arrow_label(a)}, {"multiplicity", r.multiplicity[a]}});
  json trees = json::array();
  out.csv_rows.push_back("tree,arrows,c,stable,contribution");
  const auto all = spanning_trees(r.quiver);
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& t = all[i];
    const auto c = tree_components(r.quiver, t, theta);
    const bool stable = std::all_of(c.begin(), c.end(), [](const Rational& x) { return x < 0; });
    Rational contribution = 0;
    if (stable) {
      contribution = 1;
      for (int a : t.arrows) contribution *= r.multiplicity[a];
    }
    std::vector<std::string> labels;
    for (int a : t.arrows) labels.push_back(r.quiver.arrow_label(a));
    trees.push_back({{"id", i + 1},
                     {"arrows", labels},
                     {"c", rationals(c)},
                     {"stable", stable},
                     {"contribution", to_string(contribution)}});
    out.csv_rows.push_back(std::to_string(i + 1) + "," + joined(labels, " ") + "," + joined(c, " ") + "," +
                           (stable ? "true" : "false") + "," + to_string(contribution));
  }
  out.report["result"] = {{"reduced_arrows", reduced},
                          {"trees", trees},
                          {"weist_count", to_string(weist_count(sub, theta))}};
  return out;
}

Output cmd_jk(const Options& o) {
  const Problem p = load_problem(o, true);
  std::vector<int> kept;
  const Quiver sub = restrict_to_support(p.quiver, p.dimension, &kept);
  const Stability theta = restrict(p.zeta, kept);
  DimVector d;
  for (int v : kept) d.push_back(p.dimension[v]);
  validate_quiver(sub, true);
  const Rational lambda = parse_rational(o.lambda);
  Arrangement a = build_arrangement(sub, d, parse_rcharges(o.rcharges), std::nullopt, o.split);
  if (lambda != 1) a = scale_rcharges(a, lambda);

  Output out;
  out.report["command"] = "jk";
  out.report["inputs"] = problem_inputs(p);
  out.report["inputs"]["rcharges"] = o.rcharges;
  out.report["inputs"]["lambda"] = to_string(lambda);
  out.report["inputs"]["split_multiplicities"] = o.split;
  const Rational value = jk_global_theta(sub, d, theta, a);
  json result = {{"value", to_string(value)},
                 {"rcharges", rationals(a.arrow_rcharges)},
                 {"singular_points", singular_points(a).size()}};
  out.csv_rows.push_back("tree,arrows,c,stable,contribution");
  if (is_abelian(d)) {
    const TreeExpansion ex = jk_tree_expansion(sub, theta, a);
    const ReducedQuiver r = reduced_quiver(sub);
    json terms = json::array();
    for (std::size_t i = 0; i < ex.terms.size(); ++i) {
      const auto& t = ex.terms[i];
      std::vector<std::string> labels;
      for (int arrow : t.tree.arrows) labels.push_back(r.quiver.arrow_label(arrow));
      const Rational contribution = t.indicator ? t.local_value : Rational(0);
      terms.push_back({{"id", i + 1},
                       {"arrows", labels},
                       {"lift", t.lift},
                       {"c", rationals(t.components)},
                       {"location", rationals(t.location)},
                       {"local_value", to_string(t.local_value)},
                       {"stable", t.indicator == 1},
                       {"contribution", to_string(contribution)}});
      out.csv_rows.push_back(std::to_string(i + 1) + "," + joined(labels, " ") + "," + joined(t.components, " ") +
                             "," + (t.indicator ? "true" : "false") + "," + to_string(contribution));
    }
    result["tree_expansion"] = terms;
  }
  out.report["result"] = result;
  return out;
}

json abelian_terms(const AbelianJk& ab, std::vector<std::string>& csv) {
  json terms = json::array();
  csv.push_back("term,vertices,coefficient,value,contribution");
  for (std::size_t i = 0; i < ab.terms.size(); ++i) {
    const auto& t = ab.terms[i];
    json mult = json::array();
    for (const auto& m : t.term.multiplicities) mult.push_back(m);
    const Rational contribution = t.term.coefficient * t.value;
    terms.push_back({{"id", i + 1},
                     {"quiver", quiver_json(t.term.quiver, t.term.dimension, &t.term.stability)},
                     {"multiplicities", mult},
                     {"coefficient", to_string(t.term.coefficient)},
                     {"value", to_string(t.value)},
                     {"contribution", to_string(contribution)}});
    csv.push_back(std::to_string(i + 1) + "," + joined(t.term.quiver.vertices, " ") + "," +
                  to_string(t.term.coefficient) + "," + to_string(t.value) + "," + to_string(contribution));
  }
  return terms;
}

Output cmd_jk_ab(const Options& o) {
  const Problem p = load_problem(o, true);
  Output out;
  out.report["command"] = "jk-ab";
  out.report["inputs"] = problem_inputs(p);
  if (o.infinity) {
    out.report["inputs"]["infinity"] = true;
    const AbelianJk ab = jk_ab_infinity(p.quiver, p.dimension, p.zeta);
    out.report["result"] = {{"value", to_string(ab.value)}, {"terms", abelian_terms(ab, out.csv_rows)}};
    return out;
  }
  const RChargeSpec spec = parse_rcharges(o.rcharges);
  out.report["inputs"]["rcharges"] = o.rcharges;
  out.report["inputs"]["split_multiplicities"] = o.split;
  if (!o.lambdas.empty()) {
    const auto lambdas = parse_rationals(o.lambdas);
    out.report["inputs"]["lambdas"] = rationals(lambdas);
    const LambdaSweep sweep = lambda_sweep(p.quiver, p.dimension, p.zeta, spec, lambdas);
    json rows = json::array();
    out.csv_rows.push_back("lambda,value,distance");
    for (const auto& r : sweep.rows) {
      rows.push_back({{"lambda", to_string(r.lambda)}, {"value", to_string(r.value)}, {"distance", to_string(r.distance)}});
      out.csv_rows.push_back(to_string(r.lambda) + "," + to_string(r.value) + "," + to_string(r.distance));
    }
    out.csv_rows.push_back("infinity," + to_string(sweep.limit) + ",0/1");
    out.report["result"] = {{"limit", to_string(sweep.limit)}, {"sweep", rows}};
    return out;
  }
  const Rational lambda = parse_rational(o.lambda);
  out.report["inputs"]["lambda"] = to_string(lambda);
  const AbelianJk ab = jk_ab(p.quiver, p.dimension, p.zeta, spec, lambda, o.split);
  out.report["result"] = {{"value", to_string(ab.value)}, {"terms", abelian_terms(ab, out.csv_rows)}};
  return out;
}

json bipartite_inputs(const Options& o) { return {{"l1", o.l1}, {"l2", o.l2}, {"order", o.order}}; }

void require_bipartite(const Options& o) {
  if (o.l1 < 1 || o.l2 < 1) throw Error(ErrorKind::InvalidInput, "--l1 and --l2 must be at least 1");
}

Output cmd_scatter(const Options& o) {
  require_bipartite(o);
  const ScatteringDiagram d = scatter(init_bipartite(o.l1, o.l2, o.order));
  std::optional<Direction> filter;
  if (!o.ray.empty()) {
    const auto v = parse_ints(o.ray, "--ray");
    if (v.size() != 2) throw Error(ErrorKind::InvalidInput, "--ray expects a,b");
    filter = primitive(v[0], v[1]);
  }
  Output out;
  out.report["command"] = "scatter";
  out.report["inputs"] = bipartite_inputs(o);
  if (filter) out.report["inputs"]["ray"] = {(*filter)[0], (*filter)[1]};
  std::vector<std::string> names{"x", "y"};
  names.insert(names.end(), d.ring->params.begin(), d.ring->params.end());
  json walls = json::array();
  out.csv_rows.push_back("direction,support,function");
  for (const auto& w : d.walls) {
    if (filter && w.direction != *filter) continue;
    json terms = json::array();
    for (const auto& [e, c] : w.function.terms()) {
      json exponent = json::object();
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] != 0) exponent[names[i]] = e[i];
      terms.push_back({{"exponent", exponent}, {"coefficient", to_string(c)}});
    }
    const std::string support = w.support == WallSupport::Line ? "line" : "ray";
    walls.push_back({{"direction", {w.direction[0], w.direction[1]}},
                     {"support", support},
                     {"function", w.function.to_string()},
                     {"terms", terms}});
    out.csv_rows.push_back(std::to_string(w.direction[0]) + " " + std::to_string(w.direction[1]) + "," + support +
                           "," + w.function.to_string());
  }
  out.report["result"] = {{"walls", walls}};
  return out;
}

std::pair<std::vector<int>, std::vector<int>> bipartite_dimension(const Options& o) {
  if (o.d.empty()) throw Error(ErrorKind::InvalidInput, "--d is required");
  const auto ints = [](const std::string& s) { return parse_ints(s, "--d"); };
  const auto d = bipartite_list<int>(o.d, o.l1, o.l2, "--d", ints);
  return {std::vector<int>(d.begin(), d.begin() + o.l1), std::vector<int>(d.begin() + o.l1, d.end())};
}

Output cmd_extract_cd(const Options& o) {
  require_bipartite(o);
  const auto [p1, p2] = bipartite_dimension(o);
  const int a = std::accumulate(p1.begin(), p1.end(), 0);
  const int b = std::accumulate(p2.begin(), p2.end(), 0);
  if (a + b > o.order)
    throw Error(ErrorKind::CutoffTooSmall,
                "|d| = " + std::to_string(a + b) + " exceeds the cutoff " + std::to_string(o.order));
  const ScatteringDiagram d = scatter(init_bipartite(o.l1, o.l2, o.order));
  const Rational cd = extract_cd(d, p1, p2);
  Output out;
  out.report["command"] = "extract-cd";
  out.report["inputs"] = bipartite_inputs(o);
  out.report["inputs"]["d"] = {p1, p2};
  const Direction ray = primitive(a, b);
  out.report["result"] = {{"ray", {ray[0], ray[1]}}, {"k", std::gcd(a, b)}, {"c_d", to_string(cd)}};
  out.csv_rows = {"quantity,value", "c_d," + to_string(cd)};
  return out;
}

Output cmd_verify_main(const Options& o) {
  require_bipartite(o);
  const auto [p1, p2] = bipartite_dimension(o);
  if (o.zeta.empty()) throw Error(ErrorKind::InvalidInput, "--zeta is required");
  const Stability zeta = bipartite_list<Rational>(o.zeta, o.l1, o.l2, "--zeta", parse_rationals);
  const MainTheoremCheck check = verify_main_theorem(o.l1, o.l2, p1, p2, zeta, o.order);
  Output out;
  out.report["command"] = "verify-main";
  out.report["inputs"] = bipartite_inputs(o);
  out.report["inputs"]["d"] = {p1, p2};
  out.report["inputs"]["zeta"] = rationals(zeta);
  out.report["result"] = {{"pass", check.pass},
                          {"lhs", to_string(check.lhs)},
                          {"rhs", to_string(check.rhs)},
                          {"jk_ab_infinity", to_string(check.jk_ab_infinity)},
                          {"moduli_dimension", check.moduli_dimension}};
  out.csv_rows = {"quantity,value",
                  std::string("pass,") + (check.pass ? "true" : "false"),
                  "lhs," + to_string(check.lhs),
                  "rhs," + to_string(check.rhs),
                  "jk_ab_infinity," + to_string(check.jk_ab_infinity),
                  "moduli_dimension," + std::to_string(check.moduli_dimension)};
  out.code = check.pass ? kPass : kFail;
  return out;
}

void add_quiver_options(CLI::App* sub, Options& o) {
  sub->add_option("--quiver", o.quiver_path, "quiver JSON file");
  sub->add_option("--l1", o.l1, "number of sources of K(l1,l2)");
  sub->add_option("--l2", o.l2, "number of sinks of K(l1,l2)");
  sub->add_option("--d", o.d, "dimension vector, e.g. \"1,1;1\"");
  sub->add_option("--zeta", o.zeta, "stability vector, e.g. \"1,1;-2\"");
}

void add_rcharge_options(CLI::App* sub, Options& o) {
  auto* rc = sub->add_option("--rcharges", o.rcharges, "seed:<u64> or explicit list of R-charges")->capture_default_str();
  sub->add_option_function<std::uint64_t>(
         "--seed", [&o](std::uint64_t seed) { o.rcharges = "seed:" + std::to_string(seed); },
         "same as --rcharges seed:<u64>")
      ->excludes(rc);
  sub->add_option("--lambda", o.lambda, "scale factor for the R-charges")->capture_default_str();
  sub->add_flag("--split-multiplicities,!--no-split-multiplicities", o.split,
                "one R-charge per original arrow (default) or per reduced arrow");
}

void print_csv(std::ostream& out, const std::vector<std::string>& rows) {
  for (const auto& r : rows) out << r << '\n';
}

}  // namespace

QuiverInput parse_quiver_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, "invalid JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  const auto fail = [](const std::string& rule, const std::string& message) {
    throw Error(ErrorKind::ValidationError, rule + ": " + message);
  };
  if (!doc.is_object() || !doc.contains("vertices") || !doc["vertices"].is_array())
    fail("schema", "expected an object with a \"vertices\" array");
  const auto id_of = [&](const json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    fail("schema", "vertex ids must be strings");
    return {};
  };
  QuiverInput in;
  for (const auto& v : doc["vertices"]) {
    const std::string id = id_of(v);
    if (std::find(in.quiver.vertices.begin(), in.quiver.vertices.end(), id) != in.quiver.vertices.end())
      fail("schema", "duplicate vertex \"" + id + "\"");
    in.quiver.vertices.push_back(id);
  }
  const auto index = [&](const std::string& id) {
    const auto it = std::find(in.quiver.vertices.begin(), in.quiver.vertices.end(), id);
    if (it == in.quiver.vertices.end()) fail("unknown-vertex", "\"" + id + "\" is not a vertex");
    return static_cast<int>(it - in.quiver.vertices.begin());
  };
  if (doc.contains("arrows")) {
    if (!doc["arrows"].is_array()) fail("schema", "\"arrows\" must be an array");
    for (const auto& a : doc["arrows"]) {
      if (!a.is_object() || !a.contains("tail") || !a.contains("head"))
        fail("schema", "each arrow needs \"tail\" and \"head\"");
      in.quiver.arrows.push_back({index(id_of(a["tail"])), index(id_of(a["head"]))});
    }
  }
  const int n = in.quiver.vertex_count();
  in.dimension.assign(n, 0);
  in.stability.assign(n, Rational(0));
  if (doc.contains("dimension")) {
    if (!doc["dimension"].is_object()) fail("schema", "\"dimension\" must map vertex ids to integers");
    for (const auto& [k, v] : doc["dimension"].items()) {
      if (!v.is_number_integer() || v.get<long long>() < 0)
        fail("dimension", "entries must be nonnegative integers");
      in.dimension[index(k)] = static_cast<int>(v.get<long long>());
    }
  }
  if (doc.contains("stability")) {
    if (!doc["stability"].is_object()) fail("schema", "\"stability\" must map vertex ids to rational strings");
    for (const auto& [k, v] : doc["stability"].items()) {
      if (!v.is_string()) fail("stability", "entries must be rational strings such as \"1/2\"");
      in.stability[index(k)] = parse_rational(v.get<std::string>());
    }
  }
  const QuiverDiagnostics diag = check_quiver(in.quiver);
  if (!diag.ok) fail(diag.kind == ErrorKind::HasLoop ? "loop" : "cycle", diag.message);
  Rational total = 0;
  for (int v = 0; v < n; ++v) total += in.dimension[v] * in.stability[v];
  if (total != 0) fail("normalization", "sum of d_v * theta_v is " + to_string(total) + ", expected 0");
  return in;
}

QuiverInput parse_quiver_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorKind::ParseError, "cannot open " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_quiver_json(buffer.str());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact JK residues, quiver invariants and bipartite scattering diagrams", "jkscatter"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--csv", o.csv, "print flat CSV tables instead of JSON");
  app.add_flag("--timing", o.timing, "add elapsed wall time to the report");

  auto* trees = app.add_subcommand("trees", "spanning trees, stability coefficients and the Weist count");
  add_quiver_options(trees, o);
  auto* jk = app.add_subcommand("jk", "global JK residue of Z_Q");
  add_quiver_options(jk, o);
  add_rcharge_options(jk, o);
  auto* jk_ab_cmd = app.add_subcommand("jk-ab", "abelianized JK residue");
  add_quiver_options(jk_ab_cmd, o);
  add_rcharge_options(jk_ab_cmd, o);
  jk_ab_cmd->add_flag("--infinity", o.infinity, "closed-form large R-charge limit");
  jk_ab_cmd->add_option("--lambdas", o.lambdas, "comma list of scale factors for a sweep");
  auto* scatter_cmd = app.add_subcommand("scatter", "consistent completion of the bipartite diagram");
  auto* extract = app.add_subcommand("extract-cd", "log coefficient c_d of a ray function");
  auto* verify = app.add_subcommand("verify-main", "compare c_d with the abelianized JK limit");
  for (auto* sub : {scatter_cmd, extract, verify}) {
    sub->add_option("--l1", o.l1, "number of sources")->required();
    sub->add_option("--l2", o.l2, "number of sinks")->required();
    sub->add_option("--order", o.order, "parameter-degree cutoff")->capture_default_str();
  }
  scatter_cmd->add_option("--ray", o.ray, "only the wall with this direction, e.g. 1,1");
  for (auto* sub : {extract, verify}) sub->add_option("--d", o.d, "dimension vector \"p1;p2\"")->required();
  verify->add_option("--zeta", o.zeta, "stability vector \"sources;sinks\"")->required();
  for (auto* sub : {trees, jk, jk_ab_cmd, scatter_cmd, extract, verify}) {
    sub->add_flag("--csv", o.csv, "print flat CSV tables instead of JSON");
    sub->add_flag("--timing", o.timing, "add elapsed wall time to the report");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  std::string command = app.get_subcommands().front()->get_name();
  Output result;
  try {
    if (command == "trees") result = cmd_trees(o);
    else if (command == "jk") result = cmd_jk(o);
    else if (command == "jk-ab") result = cmd_jk_ab(o);
    else if (command == "scatter") result = cmd_scatter(o);
    else if (command == "extract-cd") result = cmd_extract_cd(o);
    else result = cmd_verify_main(o);
  } catch (const NonRegularStabilityError& e) {
    json report = {{"command", command},
                   {"error", {{"kind", error_name(e.kind())}, {"message", e.what()}, {"witness", witness_json(e.witness())}}}};
    out << report.dump(2) << '\n';
    err << "jkscatter: " << error_name(e.kind()) << ": " << e.what() << '\n';
    return kNonRegular;
  } catch (const Error& e) {
    json report = {{"command", command}, {"error", {{"kind", error_name(e.kind())}, {"message", e.what()}}}};
    out << report.dump(2) << '\n';
    err << "jkscatter: " << error_name(e.kind()) << ": " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "jkscatter: internal error: " << e.what() << '\n';
    return kFail;
  }

  if (o.csv) {
    print_csv(out, result.csv_rows);
  } else {
    if (o.timing) {
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      result.report["timing"] = {{"seconds", elapsed.count()}};
    }
    out << result.report.dump(2) << '\n';
  }
  return result.code;
}

}  // namespace jks::cli

#ifndef LFLOW_CLI_APP_HPP
#define LFLOW_CLI_APP_HPP

// Command dispatch for the lflow executable. run() never writes to the terminal itself;
// it returns the text for standard output and the exit code, so tests can drive it.

#include "lflow/lflow.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace lflow::cli {

using nlohmann::json;

enum Exit { kFeasible = 0, kInfeasible = 1, kUsage = 2, kCap = 3 };

struct Outcome {
  int code = kUsage;
  std::string out;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- serialization

inline std::vector<std::string> rats(const std::vector<Rational>& v) { return to_strings(v); }

inline json opt_rat(const std::optional<Rational>& x) { return x ? json(to_string(*x)) : json(nullptr); }

inline json flow_json(const Graph& g, const FlowAssignment& w) {
  json arr = json::array();
  for (EdgeId e = 0; e < g.m(); ++e) arr.push_back({{"u", g.edge(e).u}, {"v", g.edge(e).v}, {"value", to_string(w[e])}});
  return arr;
}

inline json label_json(const LabelSet& s) {
  json j;
  switch (s.kind()) {
    case LabelSet::Kind::Finite:
      j["kind"] = "list";
      j["values"] = rats(s.values());
      break;
    case LabelSet::Kind::Interval:
    case LabelSet::Kind::Punctured: {
      const auto& l = s.interval_spec();
      j["kind"] = s.kind() == LabelSet::Kind::Interval ? "interval" : "punctured";
      j["lo"] = opt_rat(l.lo);
      j["hi"] = opt_rat(l.hi);
      j["open_low"] = l.open_low;
      j["open_high"] = l.open_high;
      break;
    }
    case LabelSet::Kind::NonzeroReals:
      j["kind"] = "nonzero-reals";
      break;
    case LabelSet::Kind::NonzeroIntegers:
      j["kind"] = "nonzero-ints";
      break;
  }
  j["text"] = s.to_string();
  return j;
}

inline Rational rat_field(const json& j) {
  if (!j.is_string()) throw UsageError("expected a rational string, got " + j.dump());
  return parse_rational(j.get<std::string>());
}

inline std::vector<Rational> rat_list(const json& j) {
  if (!j.is_array()) throw UsageError("expected a list of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rat_field(x));
  return out;
}

inline LabelSet label_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "list") return LabelSet::finite(rat_list(j.at("values")));
  if (kind == "nonzero-reals") return LabelSet::nonzero_reals();
  if (kind == "nonzero-ints") return LabelSet::nonzero_integers();
  if (kind == "interval" || kind == "punctured") {
    IntervalSpec l;
    if (!j.at("lo").is_null()) l.lo = rat_field(j.at("lo"));
    if (!j.at("hi").is_null()) l.hi = rat_field(j.at("hi"));
    l.open_low = j.value("open_low", false);
    l.open_high = j.value("open_high", false);
    return kind == "interval" ? LabelSet::interval(l) : LabelSet::punctured(l);
  }
  throw UsageError("unknown label set kind '" + kind + "'");
}

inline json base_doc(const std::vector<std::string>& argv, int graph_index) {
  json d;
  d["schema_version"] = "1";
  d["command"] = {{"name", argv.empty() ? "" : argv[0]}, {"argv", argv}, {"graph_index", graph_index}};
  return d;
}

inline void put_flow(json& d, const Graph& g, const FlowAssignment& w, const GammaVector& gamma, const LabelSet& set) {
  d["flow"] = flow_json(g, w);
  d["gamma"] = rats(gamma);
  d["label_set"] = label_json(set);
}

inline void put_problem(json& d, const GammaVector& gamma, const LabelSet& set) {
  d["gamma"] = rats(gamma);
  d["label_set"] = label_json(set);
}

inline json error_doc(const std::string& kind, const std::string& message) {
  return {{"schema_version", "1"}, {"error", {{"kind", kind}, {"message", message}}}};
}

// ---------------------------------------------------------------- inputs

inline Graph load_graph(const std::string& path) {
  if (path == "-") return io::read_graph(std::cin).graph;
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open graph file '" + path + "'");
  return io::read_graph(in).graph;
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

inline GammaVector parse_gamma(const Graph& g, const std::string& spec) {
  if (spec.rfind("const:", 0) == 0) return constant_gamma(g, parse_rational(spec.substr(6)));
  std::ifstream in(spec);
  if (!in) throw UsageError("--gamma must be const:<q> or a readable file, got '" + spec + "'");
  auto v = io::read_rationals(in);
  if (static_cast<int>(v.size()) != g.n())
    throw UsageError("gamma file has " + std::to_string(v.size()) + " values for " + std::to_string(g.n()) + " vertices");
  return v;
}

/// "-inf,b" would be taken for a cluster of short flags; it is renamed before option
/// parsing and mapped back here.
inline constexpr const char* kMinusInf = "~inf";

inline std::optional<Rational> parse_bound(const std::string& s, bool upper) {
  if (s == "inf" || s == "+inf") {
    if (!upper) throw UsageError("lower bound cannot be +inf");
    return std::nullopt;
  }
  if (s == "-inf" || s == kMinusInf) {
    if (upper) throw UsageError("upper bound cannot be -inf");
    return std::nullopt;
  }
  return parse_rational(s);
}

/// interval a,b [open|open-low|open-high|punctured ...] | list v1,... | nonzero-reals | nonzero-ints | reals
inline LabelSet parse_set(const std::vector<std::string>& tokens) {
  if (tokens.empty()) throw UsageError("--set needs a kind");
  const auto& kind = tokens[0];
  if (kind == "nonzero-reals" || kind == "nonzero-ints" || kind == "reals") {
    if (tokens.size() != 1) throw UsageError("--set " + kind + " takes no values");
    if (kind == "reals") return LabelSet::interval(IntervalSpec::real_line());
    return kind == "nonzero-reals" ? LabelSet::nonzero_reals() : LabelSet::nonzero_integers();
  }
  if (kind == "list") {
    if (tokens.size() != 2) throw UsageError("--set list v1,v2,...");
    std::vector<Rational> v;
    for (const auto& t : split(tokens[1], ',')) v.push_back(parse_rational(t));
    return LabelSet::finite(std::move(v));
  }
  if (kind == "interval") {
    if (tokens.size() < 2) throw UsageError("--set interval a,b [flags]");
    auto ends = split(tokens[1], ',');
    if (ends.size() != 2) throw UsageError("--set interval expects 'a,b'");
    IntervalSpec l;
    l.lo = parse_bound(ends[0], false);
    l.hi = parse_bound(ends[1], true);
    bool punctured = false;
    for (std::size_t i = 2; i < tokens.size(); ++i)
      for (const auto& f : split(tokens[i], ',')) {
        if (f == "open") l.open_low = l.open_high = true;
        else if (f == "open-low") l.open_low = true;
        else if (f == "open-high") l.open_high = true;
        else if (f == "punctured") punctured = true;
        else throw UsageError("unknown interval flag '" + f + "'");
      }
    // Infinite ends are open by nature; keep them flagged closed so "closed" means
    // "no finite open end".
    if (!l.lo) l.open_low = false;
    if (!l.hi) l.open_high = false;
    validate(l);
    return punctured ? LabelSet::punctured(l) : LabelSet::interval(l);
  }
  throw UsageError("unknown --set kind '" + kind + "'");
}

// ---------------------------------------------------------------- exists

inline json imbalance_json(const GammaDecision& d) {
  return {{"kind", "imbalance"}, {"y", rats(d.obstruction)}, {"imbalance", to_string(d.imbalance)}};
}

inline int exists_decide(json& d, const Graph& g, const GammaVector& gamma, const LabelSet& set) {
  put_problem(d, gamma, set);
  auto feasible = [&](const FlowAssignment& w, const std::string& how) {
    auto bad = flow_violation(g, w, gamma, set);
    if (!bad.empty()) throw ConstructionDefect("exists: emitted flow fails re-verification: " + bad);
    d["decision"] = "feasible";
    d["flow"] = flow_json(g, w);
    d["provenance"] = how;
    return kFeasible;
  };
  auto infeasible = [&](json cert, const std::string& how) {
    d["decision"] = "infeasible";
    d["certificate"] = std::move(cert);
    d["provenance"] = how;
    return kInfeasible;
  };
  if (set.kind() == LabelSet::Kind::Finite) {
    const bool constant = std::all_of(gamma.begin(), gamma.end(), [&](const Rational& x) { return x == gamma[0]; });
    if (!constant) throw UsageError("finite label sets need a constant gamma (const:<q>)");
    auto rep = oracle::enumerate_finite_flows(g, set.values(), gamma.empty() ? Rational(0) : gamma[0], 1, 100000000, 1);
    if (rep.count > 0) return feasible(rep.solutions.front(), "exhaustive enumeration over the label list");
    return infeasible({{"kind", "exhaustive"}, {"nodes", rep.nodes}}, "exhaustive enumeration over the label list");
  }
  require_connected(g, "exists");
  auto gd = gamma_flow_exists(g, gamma);
  if (!gd.feasible) d["obstruction"] = imbalance_json(gd);
  if (set.kind() == LabelSet::Kind::NonzeroReals || set.kind() == LabelSet::Kind::NonzeroIntegers) {
    const bool integral = set.kind() == LabelSet::Kind::NonzeroIntegers;
    if (!gd.feasible) return infeasible(imbalance_json(gd), "no gamma-flow: bipartite imbalance");
    if (auto nz = nowhere_zero_gamma_flow(g, gamma, integral)) return feasible(nz->flow, nz->provenance);
    auto forced = oracle::forced_edge_values(g, gamma);
    for (EdgeId e = 0; e < g.m(); ++e)
      if (forced[e] && *forced[e] == 0)
        return infeasible({{"kind", "forced-zero"}, {"edge", e}}, "edge value is 0 in every gamma-flow");
    return infeasible({{"kind", "no-integral-flow"}}, "no integral gamma-flow exists");
  }
  const auto& l = set.interval_spec();
  const bool punctured = set.kind() == LabelSet::Kind::Punctured;
  if (!gd.feasible) return infeasible(imbalance_json(gd), "no gamma-flow: bipartite imbalance");
  if (punctured || !l.is_closed()) {
    auto r = restricted_interval_flow(g, gamma, l, punctured);
    if (r.feasible) return feasible(r.flow, punctured ? "interior point, zeros removed by convex moves"
                                                      : "margin LP for the open ends");
    json cert{{"kind", "recomputed"}};
    if (r.forced_zero) cert["forced_zero_edge"] = *r.forced_zero;
    return infeasible(cert, "margin LP / edge range LP");
  }
  if (!l.lo && !l.hi) {
    auto w = solve_gamma_flow(g, gamma);
    return feasible(*w, "exact solve of A w = gamma");
  }
  if (l.lo) {
    auto r = interval_flow(g, gamma, l);
    if (r.feasible) return feasible(r.flow, "exact simplex");
    return infeasible({{"kind", "farkas"}, {"z", rats(r.certificate.z)}, {"w", rats(r.certificate.w)}},
                      "exact simplex, phase-1 duals");
  }
  // (-inf, b]: solve the mirrored instance -gamma on [-b, inf).
  GammaVector neg(gamma.size());
  for (std::size_t i = 0; i < gamma.size(); ++i) neg[i] = -gamma[i];
  auto r = interval_flow(g, neg, IntervalSpec::at_least(-*l.hi));
  if (r.feasible) {
    for (auto& x : r.flow) x = -x;
    return feasible(r.flow, "exact simplex on the mirrored instance");
  }
  return infeasible({{"kind", "farkas-mirrored"}, {"z", rats(r.certificate.z)}, {"w", rats(r.certificate.w)}},
                    "exact simplex on the mirrored instance (-gamma, [-b, inf))");
}

// ---------------------------------------------------------------- reports

inline json tree_report_json(const TreeRangeReport& r, const PruningTrace& trace) {
  json levels = json::array();
  for (const auto& lv : r.levels)
    levels.push_back({{"p", lv.p},
                      {"edge_sum", to_string(lv.edge_sum)},
                      {"bound", to_string(lv.bound)},
                      {"sign_ok", lv.sign_ok},
                      {"bound_ok", lv.bound_ok}});
  return {{"n", r.n},
          {"p1", r.p1},
          {"k", trace.k()},
          {"level_sizes", trace.sizes()},
          {"residual", trace.residual == PruningTrace::Residual::K2 ? "K2" : "star"},
          {"levels", levels},
          {"predicted", {to_string(r.predicted_lo), to_string(r.predicted_hi)}},
          {"achieved_values", rats(r.achieved_values)},
          {"integral", r.integral},
          {"first_level_ones", r.first_level_ones},
          {"signs_alternate", r.signs_alternate},
          {"partial_sums_ok", r.partial_sums_ok},
          {"leaf_in_each_part", r.leaf_in_each_part},
          {"within_predicted", r.within_predicted},
          {"within_size_window", r.within_size_window}};
}

inline const char* case_name(UnicyclicCase c) {
  switch (c) {
    case UnicyclicCase::Cycle:
      return "cycle";
    case UnicyclicCase::OneLeaf:
      return "one-leaf";
    case UnicyclicCase::NonBipartite:
      return "non-bipartite";
    case UnicyclicCase::Bipartite:
      return "bipartite";
  }
  return "";
}

// ---------------------------------------------------------------- verify

/// Empty on success, otherwise the first violated constraint.
inline std::string verify_document(const Graph& g, const json& doc, const std::string& graph_path);

inline FlowAssignment flow_from_json(const Graph& g, const json& arr) {
  if (!arr.is_array()) throw UsageError("document flow is not a list");
  FlowAssignment w(g.m());
  std::vector<bool> seen(g.m(), false);
  for (const auto& item : arr) {
    Vertex u = item.at("u").get<int>(), v = item.at("v").get<int>();
    if (u < 0 || v < 0 || u >= g.n() || v >= g.n()) throw UsageError("flow entry has an endpoint out of range");
    auto e = g.find_edge(u, v);
    if (!e) throw UsageError("flow entry " + std::to_string(u) + "-" + std::to_string(v) + " is not an edge");
    if (seen[*e]) throw UsageError("flow entry for edge " + std::to_string(*e) + " repeated");
    seen[*e] = true;
    w[*e] = rat_field(item.at("value"));
  }
  for (EdgeId e = 0; e < g.m(); ++e)
    if (!seen[e]) throw UsageError("flow misses edge " + std::to_string(e));
  return w;
}

inline std::string verify_certificate(const Graph& g, const GammaVector& gamma, const LabelSet& set, const json& cert) {
  const auto kind = cert.at("kind").get<std::string>();
  if (kind == "farkas" || kind == "farkas-mirrored") {
    FarkasCertificate c{rat_list(cert.at("z")), rat_list(cert.at("w"))};
    if (static_cast<int>(c.z.size()) != g.n() || static_cast<int>(c.w.size()) != g.m())
      return "certificate dimensions do not match the graph";
    if (set.kind() != LabelSet::Kind::Interval || !set.interval_spec().is_closed())
      return "Farkas certificate needs a closed interval";
    auto l = set.interval_spec();
    GammaVector gm = gamma;
    if (kind == "farkas-mirrored") {
      if (!l.hi) return "mirrored certificate needs a finite upper bound";
      for (auto& x : gm) x = -x;
      l = IntervalSpec::at_least(-*l.hi);
    } else if (!l.lo) {
      return "Farkas certificate needs a finite lower bound";
    }
    for (const auto& x : c.w)
      if (x < 0) return "certificate has a negative w entry";
    auto atz = detail::transpose_apply(g, c.z);
    for (EdgeId e = 0; e < g.m(); ++e)
      if (atz[e] > c.w[e]) return "A^T z <= w fails at edge " + std::to_string(e);
    if (!verify_farkas(g, gm, l, c)) return "Farkas inequality fails";
    return {};
  }
  if (kind == "imbalance") {
    auto y = rat_list(cert.at("y"));
    if (static_cast<int>(y.size()) != g.n()) return "obstruction has wrong length";
    auto aty = detail::transpose_apply(g, y);
    for (EdgeId e = 0; e < g.m(); ++e)
      if (aty[e] != 0) return "obstruction is not in ker A^T at edge " + std::to_string(e);
    Rational dot = 0;
    for (Vertex v = 0; v < g.n(); ++v) dot += y[v] * gamma[v];
    if (dot == 0) return "obstruction is orthogonal to gamma";
    return {};
  }
  if (kind == "forced-zero") {
    EdgeId e = cert.at("edge").get<int>();
    if (e < 0 || e >= g.m()) return "forced-zero edge out of range";
    auto forced = oracle::forced_edge_values(g, gamma);
    if (!forced[e] || *forced[e] != 0) return "edge " + std::to_string(e) + " is not forced to 0";
    return {};
  }
  if (kind == "exhaustive") {
    if (set.kind() != LabelSet::Kind::Finite) return "exhaustive certificate needs a finite label set";
    auto rep = oracle::enumerate_finite_flows(g, set.values(), gamma.empty() ? Rational(0) : gamma[0], 0);
    if (rep.count != 0) return "enumeration finds " + std::to_string(rep.count) + " solutions";
    return {};
  }
  return "recompute";
}

// ---------------------------------------------------------------- gen

inline Graph gen_family(const std::vector<std::string>& spec, std::string& comment) {
  if (spec.empty()) throw UsageError("--family needs a name");
  const auto& name = spec[0];
  auto arg = [&](std::size_t i) {
    if (i >= spec.size()) throw UsageError("family '" + name + "' needs more parameters");
    try {
      std::size_t used = 0;
      int v = std::stoi(spec[i], &used);
      if (used != spec[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw UsageError("parameter '" + spec[i] + "' is not an integer");
    }
  };
  auto expect = [&](std::size_t count) {
    if (spec.size() != count + 1)
      throw UsageError("family '" + name + "' takes " + std::to_string(count) + " parameter(s)");
  };
  auto tree = [&](ExtremalTree k) {
    expect(1);
    return make_extremal_tree(k, arg(1));
  };
  comment = "family";
  for (const auto& s : spec) comment += " " + s;
  if (name == "cycle") return expect(1), gen::cycle(arg(1));
  if (name == "path") return expect(1), gen::path(arg(1));
  if (name == "star") return expect(1), gen::star(arg(1));
  if (name == "complete") return expect(1), gen::complete(arg(1));
  if (name == "complete-bipartite") return expect(2), gen::complete_bipartite(arg(1), arg(2));
  if (name == "petersen") return expect(0), gen::petersen();
  if (name == "circulant") {
    expect(2);
    std::vector<int> offsets;
    for (const auto& t : split(spec[2], ',')) {
      try {
        offsets.push_back(std::stoi(t));
      } catch (const std::exception&) {
        throw UsageError("circulant offset '" + t + "' is not an integer");
      }
    }
    return gen::circulant(arg(1), offsets);
  }
  if (name == "tmin") return tree(ExtremalTree::Tmin);
  if (name == "tmax") return tree(ExtremalTree::Tmax);
  if (name == "topt") return tree(ExtremalTree::Topt);
  if (name == "s1") return tree(ExtremalTree::S1);
  if (name == "s2") return tree(ExtremalTree::S2);
  if (name == "example2") {
    expect(2);
    auto jb = gen::example_joined_bicliques(arg(1), arg(2));
    comment += "; joining edges";
    for (EdgeId e : jb.joining_edges) comment += " " + std::to_string(e);
    return jb.graph;
  }
  if (name == "unicyclic-extremal") {
    expect(2);
    const int p = arg(1), which = arg(2);
    if (which == 3) return gen::unicyclic_triangle_star(p, gen::TriangleJoin::Leaf);
    if (which == 4) return gen::unicyclic_square_stars(p);
    throw UsageError("unicyclic-extremal case must be 3 (non-bipartite) or 4 (bipartite)");
  }
  throw UsageError("unknown family '" + name + "'");
}

// ---------------------------------------------------------------- dispatch

inline Outcome run(const std::vector<std::string>& argv_in);

inline Outcome run_checked(const std::vector<std::string>& args) {
  CLI::App app{"Exact L-flow decision and construction tool", "lflow"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string graph_path, gamma_spec = "const:1", method, doc_path;
  std::vector<std::string> set_tokens{"interval", "0,1"}, family;
  bool integral = false, count_only = false;
  int k_param = 0;
  std::size_t cap = 1000;
  std::uint64_t budget = 100000000;
  std::string list_spec, c_spec = "1";

  auto* exists = app.add_subcommand("exists", "decide a gamma-L-flow and emit a witness or certificate");
  exists->add_option("graph", graph_path, "graph file ('-' for stdin)")->required();
  exists->add_option("--gamma", gamma_spec, "const:<q> or a file of n rationals");
  exists->add_option("--set", set_tokens,
                     "interval a,b [open|open-low|open-high|punctured] | list v1,... | nonzero-reals | nonzero-ints | reals")
      ->expected(1, 3);

  auto* tree_range = app.add_subcommand("tree-range", "unique 1-sum flow of a tree and its range report");
  tree_range->add_option("graph", graph_path)->required();

  auto* construct = app.add_subcommand("construct", "run a named flow construction");
  construct->add_option("graph", graph_path)->required();
  construct
      ->add_option("--method", method,
                   "pm1-regular | 3flow | zero3flow | zeroone | positive | nowherezero | kfactor | unicyclic | general")
      ->required();
  construct->add_flag("--integral", integral, "nowherezero: integral values");
  construct->add_option("--k", k_param, "kfactor: k");

  auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive enumeration over a finite label list");
  oracle_cmd->add_option("graph", graph_path)->required();
  oracle_cmd->add_option("--list", list_spec, "v1,v2,...")->required();
  oracle_cmd->add_option("--c", c_spec, "vertex sum");
  oracle_cmd->add_flag("--count-only", count_only);
  oracle_cmd->add_option("--cap", cap, "maximum solutions listed");
  oracle_cmd->add_option("--budget", budget, "maximum search nodes");

  auto* verify = app.add_subcommand("verify", "re-verify an emitted result document");
  verify->add_option("graph", graph_path)->required();
  verify->add_option("document", doc_path)->required();

  auto* gen_cmd = app.add_subcommand("gen", "write a named graph to standard output");
  gen_cmd->add_option("--family", family, "name and parameters")->required()->expected(1, 3);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  for (auto& a : rev)
    if (a.rfind("-inf,", 0) == 0) a = kMinusInf + a.substr(4);
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    return {kFeasible, json{{"schema_version", "1"}, {"help", app.help()}}.dump(2) + "\n"};
  } catch (const CLI::CallForAllHelp&) {
    return {kFeasible, json{{"schema_version", "1"}, {"help", app.help("", CLI::AppFormatMode::All)}}.dump(2) + "\n"};
  } catch (const CLI::ParseError& e) {
    return {kUsage, error_doc("usage", e.what()).dump(2) + "\n"};
  }

  auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  // Position of the graph argument in args (the first non-option token after the command).
  int graph_index = -1;
  for (std::size_t i = 1; i < args.size(); ++i)
    if (args[i] == graph_path) {
      graph_index = static_cast<int>(i);
      break;
    }
  json d = base_doc(args, graph_index);

  if (name == "gen") {
    std::string comment;
    Graph g = gen_family(family, comment);
    std::ostringstream out;
    io::write_graph(out, g, {}, comment);
    return {kFeasible, out.str()};
  }

  Graph g = load_graph(graph_path);
  d["graph"] = {{"n", g.n()}, {"m", g.m()}};
  int code = kFeasible;

  if (name == "exists") {
    auto gamma = parse_gamma(g, gamma_spec);
    auto set = parse_set(set_tokens);
    code = exists_decide(d, g, gamma, set);
  } else if (name == "tree-range") {
    if (!is_tree(g) || g.n() < 2) throw StructuralError("tree-range: input is not a tree with at least one edge");
    auto gd = gamma_flow_exists(g, constant_gamma(g, 1));
    put_problem(d, constant_gamma(g, 1), LabelSet::interval(IntervalSpec::real_line()));
    if (!gd.feasible) {
      d["decision"] = "infeasible";
      d["certificate"] = imbalance_json(gd);
      d["provenance"] = "unbalanced tree";
      code = kInfeasible;
    } else {
      auto rep = tree_range_report(g);
      d["decision"] = "feasible";
      d["flow"] = flow_json(g, rep.flow);
      d["report"] = tree_report_json(rep, prune(g));
      d["provenance"] = "leaf-pruning recursion";
    }
  } else if (name == "construct") {
    auto emit = [&](const FlowResult& r) {
      put_flow(d, g, r.flow, r.gamma, r.claimed);
      d["decision"] = "feasible";
      d["provenance"] = r.provenance;
      return kFeasible;
    };
    auto none = [&](const GammaVector& gamma, const LabelSet& set, const std::string& why) {
      put_problem(d, gamma, set);
      d["decision"] = "infeasible";
      d["certificate"] = {{"kind", "recomputed"}};
      d["provenance"] = why;
      return kInfeasible;
    };
    const auto ones = constant_gamma(g, 1);
    if (method == "pm1-regular") {
      auto r = regular_degree(g);
      if (!r) throw StructuralError("pm1-regular: graph is not regular");
      if (*r % 2 == 1) code = emit(pm1_flow_odd_regular(g));
      else if (*r % 4 == 2) code = emit(pm1_flow_mod4_regular(g));
      else throw PreconditionError("pm1-regular: degree divisible by 4 is an open case");
    } else if (method == "3flow") {
      code = emit(one_sum_3flow(g));
    } else if (method == "zero3flow") {
      code = emit(zero_sum_3flow(g));
    } else if (method == "zeroone") {
      auto r = one_zero_one_flow(g);
      code = r ? emit(*r) : none(ones, detail::zero_half_one(), "no perfect matching / {1,2}-factor");
    } else if (method == "positive") {
      auto r = one_positive_flow(g);
      IntervalSpec positive{Rational(0), Rational(1), true, false};
      d["uncovered_edge"] = r.uncovered ? json(*r.uncovered) : json(nullptr);
      if (!r.exists) {
        code = none(ones, LabelSet::interval(positive), "an edge lies in no factor");
      } else if (r.witness) {
        code = emit(*r.witness);
      } else {
        put_problem(d, ones, LabelSet::interval(positive));
        d["decision"] = "feasible";
        d["witness_capped"] = true;
        d["provenance"] = "every edge lies in some factor; witness skipped above the edge cap";
        code = kFeasible;
      }
    } else if (method == "nowherezero") {
      const auto set = integral ? LabelSet::nonzero_integers() : LabelSet::nonzero_reals();
      auto parts = bipartition(g);
      std::optional<FlowResult> r;
      if (parts && !parts->balanced()) {
        code = none(ones, set, "unbalanced bipartite graph has no 1-sum flow");
      } else {
        r = parts ? nowhere_zero_one_sum(g, integral) : nowhere_zero_gamma_flow(g, ones, integral);
        code = r ? emit(*r) : none(ones, set, "some edge is 0 in every 1-sum flow");
      }
    } else if (method == "kfactor") {
      if (k_param < 1) throw UsageError("kfactor needs --k >= 1");
      auto r = kfactor_scaled_flow(g, k_param);
      code = r ? emit(*r)
               : none(ones, LabelSet::finite({Rational(0), Rational(1, k_param)}), "no k-factor");
    } else if (method == "unicyclic") {
      if (!is_unicyclic(g)) throw StructuralError("unicyclic: graph is not connected unicyclic");
      auto r = unicyclic_flow(g);
      if (!r) {
        code = none(ones, LabelSet::interval(IntervalSpec::real_line()), "unbalanced bipartite unicyclic graph");
      } else {
        put_flow(d, g, r->flow, ones, LabelSet::interval(IntervalSpec::real_line()));
        d["decision"] = "feasible";
        d["report"] = {{"case", case_name(r->kind)},
                       {"leaves", r->leaves},
                       {"interval", {to_string(r->lo), to_string(r->hi)}},
                       {"within_interval", r->within_interval}};
        d["provenance"] = "leaf-pair induction";
      }
    } else if (method == "general") {
      auto r = general_range_flow(g);
      if (!r) {
        code = none(ones, LabelSet::interval(IntervalSpec::real_line()), "unbalanced bipartite graph");
      } else {
        code = emit(r->result);
        d["report"] = {{"bipartite", r->bipartite},
                       {"values", rats(r->values)},
                       {"window", {to_string(r->window_lo), to_string(r->window_hi)}},
                       {"window_applies", r->window_applies},
                       {"within_window", r->within_window}};
      }
    } else {
      throw UsageError("unknown --method '" + method + "'");
    }
  } else if (name == "oracle") {
    std::vector<Rational> labels;
    for (const auto& t : split(list_spec, ',')) labels.push_back(parse_rational(t));
    const Rational c = parse_rational(c_spec);
    auto rep = oracle::enumerate_finite_flows(g, labels, c, count_only ? 0 : cap, budget);
    const auto set = LabelSet::finite(labels);
    put_problem(d, constant_gamma(g, c), set);
    d["count"] = rep.count;
    d["nodes"] = rep.nodes;
    d["wall_ms"] = rep.wall_ms;
    d["instance"] = rep.instance;
    d["solutions_truncated"] = rep.solutions_truncated;
    json sols = json::array();
    for (const auto& w : rep.solutions) sols.push_back(rats(w));
    d["solutions"] = sols;
    d["provenance"] = "backtracking over edges by min endpoint degree";
    if (rep.count > 0) {
      d["decision"] = "feasible";
      if (!rep.solutions.empty()) d["flow"] = flow_json(g, rep.solutions.front());
      code = kFeasible;
    } else {
      d["decision"] = "infeasible";
      d["certificate"] = {{"kind", "exhaustive"}, {"nodes", rep.nodes}};
      code = kInfeasible;
    }
  } else if (name == "verify") {
    std::ifstream in(doc_path);
    if (!in) throw UsageError("cannot open document '" + doc_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::exception& e) {
      throw UsageError(std::string("document is not JSON: ") + e.what());
    }
    auto bad = verify_document(g, doc, graph_path);
    d["verified"] = bad.empty();
    if (!bad.empty()) d["violation"] = bad;
    code = bad.empty() ? kFeasible : kInfeasible;
  }
  return {code, d.dump(2) + "\n"};
}

inline std::string verify_document(const Graph& g, const json& doc, const std::string& graph_path) {
  if (doc.value("schema_version", "") != "1") return "schema_version is not \"1\"";
  if (!doc.contains("decision")) return "document has no decision";
  const auto decision = doc.at("decision").get<std::string>();
  if (doc.contains("graph") && (doc["graph"].value("n", -1) != g.n() || doc["graph"].value("m", -1) != g.m()))
    return "document was produced for a graph of different size";
  if (!doc.contains("gamma") || !doc.contains("label_set")) return "document lacks gamma or label_set";
  const auto gamma = rat_list(doc.at("gamma"));
  if (static_cast<int>(gamma.size()) != g.n()) return "gamma length does not match the graph";
  const auto set = label_from_json(doc.at("label_set"));
  if (decision == "feasible") {
    if (!doc.contains("flow")) {
      if (doc.value("witness_capped", false)) return {};
      return "feasible document has no flow";
    }
    auto w = flow_from_json(g, doc.at("flow"));
    return flow_violation(g, w, gamma, set);
  }
  if (decision != "infeasible") return "unknown decision '" + decision + "'";
  const json cert = doc.value("certificate", json{{"kind", "recomputed"}});
  auto verdict = verify_certificate(g, gamma, set, cert);
  if (verdict != "recompute") return verdict;
  // No self-contained certificate: re-run the echoed command on this graph.
  const auto& cmd = doc.at("command");
  auto argv = cmd.at("argv").get<std::vector<std::string>>();
  const int gi = cmd.at("graph_index").get<int>();
  if (gi < 0 || gi >= static_cast<int>(argv.size())) return "document command echo has no graph argument";
  argv[gi] = graph_path;
  auto again = run(argv);
  if (again.code != kInfeasible) return "re-running the command does not reproduce the infeasible decision";
  return {};
}

/// argv excludes the program name.
inline Outcome run(const std::vector<std::string>& args) {
  try {
    return run_checked(args);
  } catch (const CapExceeded& e) {
    return {kCap, error_doc("cap-exceeded", e.what()).dump(2) + "\n"};
  } catch (const io::ParseError& e) {
    return {kUsage, error_doc("parse", e.what()).dump(2) + "\n"};
  } catch (const UsageError& e) {
    return {kUsage, error_doc("usage", e.what()).dump(2) + "\n"};
  } catch (const ConjectureCase& e) {
    return {kUsage, error_doc("conjecture", e.what()).dump(2) + "\n"};
  } catch (const StructuralError& e) {
    return {kUsage, error_doc("structure", e.what()).dump(2) + "\n"};
  } catch (const PreconditionError& e) {
    return {kUsage, error_doc("precondition", e.what()).dump(2) + "\n"};
  } catch (const ConstructionDefect& e) {
    return {kUsage, error_doc("construction-defect", e.what()).dump(2) + "\n"};
  } catch (const json::exception& e) {
    return {kUsage, error_doc("document", e.what()).dump(2) + "\n"};
  } catch (const std::invalid_argument& e) {
    return {kUsage, error_doc("usage", e.what()).dump(2) + "\n"};
  }
}

}  // namespace lflow::cli

#endif  // LFLOW_CLI_APP_HPP

#pragma once

#include "surgerylab/json_io.hpp"
#include "surgerylab/surgerylab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace surgerylab::cli {

using json = nlohmann::json;

enum ExitCode { kOk = 0, kVerificationFailed = 1, kUsage = 2 };

struct RunReport {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  json verification = json::array();
  std::optional<double> elapsed_ms;

  void check(const std::string& name, bool passed) {
    verification.push_back({{"check", name}, {"passed", passed}});
  }
  bool passed() const {
    return std::all_of(verification.begin(), verification.end(),
                       [](const json& c) { return c.at("passed").get<bool>(); });
  }
  json to_json() const {
    json j = {{"command", command},
              {"inputs", inputs},
              {"outputs", outputs},
              {"verification", verification}};
    if (elapsed_ms) j["elapsed_ms"] = *elapsed_ms;
    return j;
  }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational parse_rational(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const std::exception&) {
    throw UsageError("not a rational number: '" + text + "'");
  }
}

inline Integer parse_int(const std::string& text) {
  try {
    return parse_integer(text);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + text + "'");
  }
}

inline std::string pair_label(const Integer& p, const Integer& q) {
  return "(" + p.str() + "," + q.str() + ")";
}

inline void add_stage_checks(RunReport& report, const std::vector<CobordismStage>& stages) {
  for (const auto& st : stages)
    for (const auto& c : st.checks) report.check(st.description + ": " + c.check, c.passed);
}

inline ExtendedInteger parse_coefficient(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return ExtendedInteger::infinity();
  return ExtendedInteger(parse_int(text));
}

}  // namespace detail

struct Args {
  bool timing = false;

  std::vector<std::string> cf_values;
  std::string cf_evaluate;

  std::string p, q, r;
  bool oracle = false;
  std::string denoms;
  std::vector<std::string> window;
  bool dot = false;

  std::string gram_path;
  bool enumerate = false;
  std::size_t kmax = 0;
  std::uint64_t node_limit = 0;

  std::string s, m, n, l;
  std::vector<std::string> pq;

  int pmax = 12;
};

inline RunReport cmd_cf(const Args& a) {
  RunReport rep;
  rep.command = "cf";
  if (!a.cf_evaluate.empty()) {
    Convention conv;
    if (a.cf_evaluate == "plus") {
      conv = Convention::Plus;
    } else if (a.cf_evaluate == "minus") {
      conv = Convention::Minus;
    } else {
      throw UsageError("--evaluate takes 'plus' or 'minus'");
    }
    std::vector<ExtendedInteger> coeffs;
    for (const auto& v : a.cf_values) coeffs.push_back(detail::parse_coefficient(v));
    const ContinuedFraction cf(conv, coeffs);
    rep.inputs = json_io::to_json(cf);
    rep.outputs["value"] = json_io::to_json(eval_cf(cf));
    rep.outputs["canonical"] = is_canonical(cf);
    return rep;
  }
  if (a.cf_values.size() != 1) throw UsageError("cf takes one rational (or --evaluate)");
  const Rational x = detail::parse_rational(a.cf_values.front());
  if (x.sign() <= 0) throw DomainError("cf needs a positive rational, got " + x.str());
  rep.inputs["x"] = json_io::to_json(x);
  const ContinuedFraction plus = cf_plus(x);
  const ContinuedFraction minus = cf_minus(x);
  rep.outputs["plus"] = json_io::to_json(plus);
  rep.outputs["minus"] = json_io::to_json(minus);
  rep.check("plus expansion evaluates to x", eval_cf(plus) == ExtendedRational(x));
  rep.check("minus expansion evaluates to x", eval_cf(minus) == ExtendedRational(x));
  const Integer& p = x.numerator();
  const Integer& q = x.denominator();
  if (p > q) {
    if (plus.size() >= 2) {
      const ContinuedFraction converted = plus_to_minus(plus);
      rep.outputs["plus_to_minus"] = json_io::to_json(converted);
      rep.check("plus-to-minus pattern equals the minus expansion", converted == minus);
    }
    const ContinuedFraction comp = cf_complement(p, q);
    rep.outputs["complement"] = json_io::to_json(comp);
    rep.check("complement pattern equals the minus expansion of p/(p-q)",
              comp == cf_minus(Rational(p, p - q)));
    const ReversedExpansion dual = reverse_dual(p, q);
    rep.outputs["qstar"] = json_io::to_json(dual.qstar);
    rep.outputs["reversed"] = json_io::to_json(dual.reversed);
    rep.check("reversed expansion evaluates to p/q*",
              eval_cf(dual.reversed) == ExtendedRational(Rational(p, dual.qstar)));
  }
  return rep;
}

inline RunReport cmd_mu(const Args& a) {
  RunReport rep;
  rep.command = "mu";
  const Integer p = detail::parse_int(a.p), q = detail::parse_int(a.q);
  rep.inputs = {{"p", json_io::to_json(p)}, {"q", json_io::to_json(q)}};
  const Rational value = mu(p, q);
  rep.outputs["mu"] = json_io::to_json(value);
  if (q < 0) {
    rep.outputs["formula"] = "0 (negative torus knot)";
  } else if (q == 1) {
    rep.outputs["formula"] = "0 (unknot)";
  } else {
    const std::size_t n = euclid_length(p, q);
    rep.outputs["euclid_length"] = n;
    if (n % 2 == 0) {
      rep.outputs["formula"] = "pq - q/p*";
      rep.outputs["pstar"] = json_io::to_json(mod_inverse(p, q));
    } else {
      rep.outputs["formula"] = "pq - p/q*";
      rep.outputs["qstar"] = json_io::to_json(mod_inverse(q, p));
    }
    const GramMatrix g = surgery_plumbing({p, q, value}).gram();
    rep.check("mu-plumbing has |det| = numerator of mu",
              abs(determinant(g)) == value.numerator());
  }
  if (a.oracle) {
    if (q < 2) throw DomainError("--oracle needs q >= 2");
    const Integer denoms = a.denoms.empty() ? value.denominator() : detail::parse_int(a.denoms);
    Rational lo(1), hi(p * q - 1);
    if (!a.window.empty()) {
      if (a.window.size() != 2) throw UsageError("--window takes LO HI");
      lo = detail::parse_rational(a.window[0]);
      hi = detail::parse_rational(a.window[1]);
    }
    rep.inputs["denoms"] = json_io::to_json(denoms);
    rep.inputs["window"] = {json_io::to_json(lo), json_io::to_json(hi)};
    const ThresholdResult t = mu_threshold_oracle(p, q, denoms, lo, hi);
    json failures = json::array();
    for (const auto& f : t.certified_failures) failures.push_back(json_io::to_json(f));
    rep.outputs["oracle"] = {{"value", json_io::to_json(t.value)},
                             {"exhausted_failures", failures},
                             {"witness", json_io::to_json(t.witness)}};
    rep.check("threshold oracle agrees with the closed form", t.value == value);
  }
  return rep;
}

inline RunReport cmd_plumbing(const Args& a, std::string* dot) {
  RunReport rep;
  rep.command = "plumbing";
  const Integer p = detail::parse_int(a.p), q = detail::parse_int(a.q);
  const Rational r = detail::parse_rational(a.r);
  rep.inputs = {{"p", json_io::to_json(p)}, {"q", json_io::to_json(q)}, {"r", json_io::to_json(r)}};
  const PlumbingTree tree = surgery_plumbing({p, q, r});
  if (dot) *dot = tree.to_dot();
  const GramMatrix g = tree.gram();
  const Integer det = determinant(g);
  const SignatureTriple sig = signature(g);
  rep.outputs["tree"] = json_io::to_json(tree);
  rep.outputs["gram"] = json_io::to_json(g);
  rep.outputs["determinant"] = json_io::to_json(det);
  rep.outputs["signature"] = json_io::to_json(sig);
  rep.check("positive-definite", sig.positive_definite());
  rep.check("|det| equals the numerator of r", abs(det) == r.numerator());
  return rep;
}

inline RunReport cmd_seifert(const Args& a) {
  RunReport rep;
  rep.command = "seifert";
  const Integer p = detail::parse_int(a.p), q = detail::parse_int(a.q);
  const Rational r = detail::parse_rational(a.r);
  rep.inputs = {{"p", json_io::to_json(p)}, {"q", json_io::to_json(q)}, {"r", json_io::to_json(r)}};
  const SeifertData sd = torus_surgery_to_seifert({p, q, r});
  rep.outputs["seifert"] = json_io::to_json(sd);
  try {
    const FramedLinkMatrix m = seifert_to_matrix(sd);
    const Integer order = h1_order(m);
    rep.outputs["matrix"] = json_io::to_json(m);
    rep.outputs["h1_order"] = json_io::to_json(order);
    rep.check("|H1| equals |numerator of r|", order == abs(r.numerator()));
  } catch (const InfiniteHomologyError&) {
    rep.outputs["matrix"] = nullptr;
    rep.outputs["h1_order"] = "infinite";
    rep.check("zero fibre coefficient exactly when r = pq", r == Rational(p * q));
  } catch (const DomainError& e) {
    rep.outputs["matrix"] = nullptr;
    rep.outputs["note"] = e.what();
  }
  return rep;
}

inline RunReport cmd_embed(const Args& a) {
  RunReport rep;
  rep.command = "embed";
  std::ifstream in(a.gram_path);
  if (!in) throw UsageError("cannot open " + a.gram_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(a.gram_path + ": " + e.what());
  }
  const GramMatrix g = json_io::gram_from_json(j);
  rep.inputs["gram"] = json_io::to_json(g);
  EmbeddingOptions options;
  if (a.kmax) options.k_max = a.kmax;
  options.node_limit = a.node_limit;
  if (a.kmax) rep.inputs["kmax"] = a.kmax;
  EmbeddingReport report;
  report = a.enumerate ? enumeration_report(g, options) : find_embedding(g, options);
  rep.outputs = json_io::to_json(report);
  if (a.enumerate) {
    json primitive = json::array();
    for (const auto& w : report.witnesses) primitive.push_back(is_primitive(w));
    rep.outputs["primitive"] = primitive;
  }
  for (std::size_t i = 0; i < report.witnesses.size(); ++i)
    rep.check("witness " + std::to_string(i + 1) + " reproduces the Gram matrix",
              report.witnesses[i].gram() == g);
  return rep;
}

inline RunReport cmd_blowdown(const Args& a) {
  RunReport rep;
  rep.command = "blowdown";
  const Integer p = detail::parse_int(a.p), q = detail::parse_int(a.q);
  rep.inputs = {{"p", json_io::to_json(p)}, {"q", json_io::to_json(q)}};
  const FramedLinkMatrix m = augmented_mu_diagram(p, q);
  const Reduction red = reduce_to_zero(m);
  rep.outputs["matrix"] = json_io::to_json(m);
  rep.outputs["success"] = red.success;
  rep.outputs["blowdowns"] = json_io::blowdowns_to_json(red.steps);
  rep.outputs["residue"] = json_io::to_json(red.residue);
  if (!red.success) rep.outputs["exhausted"] = red.exhausted;
  rep.check("blow-downs reach the 0-framed unknot",
            red.success && replay_blowdowns(m, red.steps) == FramedLinkMatrix({{0}}));
  return rep;
}

inline RunReport cmd_cobordism_chain(const Args& a) {
  RunReport rep;
  rep.command = "cobordism chain";
  const Rational s = detail::parse_rational(a.s), r = detail::parse_rational(a.r);
  rep.inputs = {{"s", json_io::to_json(s)}, {"r", json_io::to_json(r)}};
  const auto stages = step_cobordism_chain(s, r);
  rep.outputs["stages"] = json_io::to_json(stages);
  detail::add_stage_checks(rep, stages);
  return rep;
}

inline RunReport cmd_cobordism_sum(const Args& a) {
  RunReport rep;
  rep.command = "cobordism sum";
  const Integer m = detail::parse_int(a.m), n = detail::parse_int(a.n);
  rep.inputs = {{"m", json_io::to_json(m)}, {"n", json_io::to_json(n)}};
  std::vector<CobordismStage> stages;
  if (!a.pq.empty()) {
    if (a.pq.size() != 2) throw UsageError("--pq takes P Q");
    const Integer p = detail::parse_int(a.pq[0]), q = detail::parse_int(a.pq[1]);
    rep.inputs["p"] = json_io::to_json(p);
    rep.inputs["q"] = json_io::to_json(q);
    stages = sum_cobordism_fractional(m, n, p, q);
  } else {
    stages.push_back(sum_cobordism_integer(m, n));
  }
  rep.outputs["stages"] = json_io::to_json(stages);
  detail::add_stage_checks(rep, stages);
  return rep;
}

inline RunReport cmd_cobordism_half(const Args& a) {
  RunReport rep;
  rep.command = "cobordism half";
  const Integer l = detail::parse_int(a.l), m = detail::parse_int(a.m), n = detail::parse_int(a.n);
  rep.inputs = {{"l", json_io::to_json(l)}, {"m", json_io::to_json(m)}, {"n", json_io::to_json(n)}};
  const CobordismStage st = sum_cobordism_half(l, m, n);
  rep.outputs["stages"] = json_io::to_json(std::vector<CobordismStage>{st});
  rep.outputs["determinant"] = json_io::to_json(determinant(st.matrix));
  rep.outputs["signature"] = json_io::to_json(signature(st.matrix));
  detail::add_stage_checks(rep, {st});
  return rep;
}

inline RunReport cmd_verify_all(const Args& a, bool timing) {
  RunReport rep;
  rep.command = "verify-all";
  VerifyOptions opt;
  opt.grid_pmax = a.pmax;
  rep.inputs["pmax"] = a.pmax;
  json criteria = json::array();
  for (const auto& c : verify_all(opt)) {
    json entry = {{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"cases", c.cases},
                  {"detail", c.detail}};
    if (timing) entry["seconds"] = c.seconds;
    criteria.push_back(entry);
    rep.check(std::to_string(c.id) + ". " + c.name, c.passed);
  }
  rep.outputs["criteria"] = criteria;
  return rep;
}

/// Parses args (without the program name), runs one subcommand and writes
/// the report to out. Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact surgery, lattice and Kirby-calculus computations for torus knots",
               "surgerylab"};
  app.require_subcommand(1);
  Args a;
  app.add_flag("--timing", a.timing, "Include elapsed_ms in the report");

  auto* cf = app.add_subcommand("cf", "Plus/Minus continued fractions of a positive rational");
  cf->add_option("values", a.cf_values, "Rational x, or coefficients with --evaluate")->required();
  cf->add_option("--evaluate", a.cf_evaluate, "Evaluate coefficients in the plus or minus convention");

  auto* mu_cmd = app.add_subcommand("mu", "Closed-form mu(p,q), optionally checked by the embedding oracle");
  mu_cmd->add_option("p", a.p)->required();
  mu_cmd->add_option("q", a.q)->required();
  mu_cmd->add_flag("--oracle", a.oracle, "Recompute mu by scanning for the least embeddable r");
  mu_cmd->add_option("--denoms", a.denoms, "Largest candidate denominator (default: that of mu)");
  mu_cmd->add_option("--window", a.window, "Scan window LO HI (default: 1 to pq-1)")->expected(2);

  auto* plumb = app.add_subcommand("plumbing", "Positive-definite plumbing bounded by S^3_r(T(p,q))");
  plumb->add_option("p", a.p)->required();
  plumb->add_option("q", a.q)->required();
  plumb->add_option("r", a.r)->required();
  plumb->add_flag("--dot", a.dot, "Print a DOT graph instead of the JSON report");

  auto* seif = app.add_subcommand("seifert", "Seifert invariants and linking matrix of S^3_r(T(p,q))");
  seif->add_option("p", a.p)->required();
  seif->add_option("q", a.q)->required();
  seif->add_option("r", a.r)->required();

  auto* emb = app.add_subcommand("embed", "Search for embeddings of a Gram matrix into Z^k");
  emb->add_option("gram", a.gram_path, "JSON file: matrix or {\"gram\": matrix}")->required();
  emb->add_flag("--enumerate", a.enumerate, "List every embedding class");
  emb->add_option("--kmax", a.kmax, "Ambient rank bound (default: trace)");
  emb->add_option("--node-limit", a.node_limit, "Stop after this many search nodes (0: none)");

  auto* blow = app.add_subcommand("blowdown", "Blow the augmented mu-diagram down to [0]");
  blow->add_option("p", a.p)->required();
  blow->add_option("q", a.q)->required();

  auto* cob = app.add_subcommand("cobordism", "Negative-definite cobordism constructions");
  cob->require_subcommand(1);
  auto* chain = cob->add_subcommand("chain", "Stages from S^3_s(K) to S^3_r(K), r > s > 0");
  chain->add_option("s", a.s)->required();
  chain->add_option("r", a.r)->required();
  auto* sum = cob->add_subcommand("sum", "Cobordism to the surgery on K#C");
  sum->add_option("m", a.m)->required();
  sum->add_option("n", a.n)->required();
  sum->add_option("--pq", a.pq, "Fractional case r = m - q/p, s = n - (p-q)/p")->expected(2);
  auto* half = cob->add_subcommand("half", "Cobordism to S^3_{m+n+1/l}(K#C)");
  half->add_option("l", a.l)->required();
  half->add_option("m", a.m)->required();
  half->add_option("n", a.n)->required();

  auto* verify = app.add_subcommand("verify-all", "Run every acceptance grid");
  verify->add_option("--pmax", a.pmax, "Largest p in the plumbing and blow-down grids")
      ->check(CLI::Range(3, 1000));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "surgerylab: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  RunReport rep;
  std::string dot;
  try {
    if (*cf) {
      rep = cmd_cf(a);
    } else if (*mu_cmd) {
      rep = cmd_mu(a);
    } else if (*plumb) {
      rep = cmd_plumbing(a, a.dot ? &dot : nullptr);
    } else if (*seif) {
      rep = cmd_seifert(a);
    } else if (*emb) {
      rep = cmd_embed(a);
    } else if (*blow) {
      rep = cmd_blowdown(a);
    } else if (*chain) {
      rep = cmd_cobordism_chain(a);
    } else if (*sum) {
      rep = cmd_cobordism_sum(a);
    } else if (*half) {
      rep = cmd_cobordism_half(a);
    } else if (*verify) {
      rep = cmd_verify_all(a, a.timing);
    }
  } catch (const UsageError& e) {
    err << "surgerylab: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "surgerylab: " << e.what() << "\n";
    return kUsage;
  }
  if (a.timing) {
    rep.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }

  if (a.dot) {
    out << dot;
  } else {
    out << rep.to_json().dump(2) << "\n";
  }
  if (!rep.passed()) {
    err << "surgerylab: verification failed\n";
    return kVerificationFailed;
  }
  return kOk;
}

}  // namespace surgerylab::cli

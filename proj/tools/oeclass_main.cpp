#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oeclass/classify.hpp"
#include "oeclass/equivrel.hpp"
#include "oeclass/invariants.hpp"
#include "oeclass/refreport.hpp"
#include "oeclass/spaces.hpp"
#include "oeclass/verify.hpp"

namespace {

using namespace oeclass;

// Exit codes: 0 yes/valid/pass, 1 failed check or internal inconsistency,
// 2 bad usage or malformed input, 3 no, 4 hypothesis not met.
constexpr int kExitYes = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNo = 3;
constexpr int kExitHypothesis = 4;

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::yes: return kExitYes;
    case Verdict::no: return kExitNo;
    case Verdict::hypothesis_not_met: return kExitHypothesis;
    default: return kExitFail;
  }
}

Int parse_int(const std::string& s, const std::string& what) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not an integer: " + s);
  }
}

// rankR:[a1,...,ak] with reduced coordinates in generator order.
BundleClass parse_bundle(const SpaceModel& x, const std::string& lit) {
  std::string diag = "bundle literal '" + lit + "'";
  if (lit.rfind("rank", 0) != 0 || lit.find(":[") == std::string::npos || lit.back() != ']')
    throw std::invalid_argument(diag + ": expected rankR:[a1,...,ak]");
  std::size_t colon = lit.find(":[");
  Int rank = parse_int(lit.substr(4, colon - 4), diag + " rank");
  std::string body = lit.substr(colon + 2, lit.size() - colon - 3);
  std::vector<Int> coords;
  if (!body.empty()) {
    std::istringstream in(body);
    std::string piece;
    while (std::getline(in, piece, ',')) coords.push_back(parse_int(piece, diag + " coordinate"));
    if (!body.empty() && body.back() == ',') throw std::invalid_argument(diag + ": trailing comma");
  }
  if (coords.size() != x.kring.num_generators())
    throw std::invalid_argument(diag + ": expected " + std::to_string(x.kring.num_generators()) +
                                " coordinates for " + x.name);
  return make_bundle(rank, make_element(x.kring, coords));
}

struct Output {
  bool json = false;
  Json doc;  // filled only in json mode

  void line(const std::string& text) {
    if (!json) std::cout << text << "\n";
  }
};

void fill_report(Output& out, const DecisionReport& rep) {
  out.line("verdict: " + verdict_name(rep.verdict));
  out.line("theorem path: " + rep.theorem_path);
  for (const std::string& h : rep.hypothesis_log) out.line("hypothesis: " + h);
  for (const std::string& n : rep.notes) out.line("note: " + n);
  if (rep.witness) out.line("witness: " + pretty(*rep.witness));
  if (rep.count) out.line("count: " + rep.count->str());
  if (out.json) {
    out.doc["verdict"] = verdict_name(rep.verdict);
    out.doc["theorem_path"] = rep.theorem_path;
    out.doc["hypothesis_log"] = rep.hypothesis_log;
    out.doc["notes"] = rep.notes;
    if (rep.witness) {
      Json w;
      w["rank_part"] = oeclass::detail::int_to_json(rep.witness->n);
      w["reduced"] = oeclass::detail::int_vector_to_json(rep.witness->t.coeff);
      w["display"] = pretty(*rep.witness);
      out.doc["witness"] = w;
    }
    if (rep.count) out.doc["count"] = oeclass::detail::int_to_json(*rep.count);
  }
}

int finish(Output& out, int code) {
  if (out.json) {
    out.doc["exit_code"] = code;
    std::cout << out.doc.dump(2) << "\n";
  }
  return code;
}

int cmd_validate(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "cannot open space file: " << path << "\n";
    return kExitUsage;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    std::cerr << "space document: " << e.what() << "\n";
    return kExitUsage;
  }
  SpaceModel x = load_raw(j);
  std::vector<SpaceViolation> violations = validate_space(x);
  if (!violations.empty()) {
    std::cout << "invalid: " << x.name << "\n";
    for (const SpaceViolation& v : violations)
      std::cout << "  " << v.rule << " [" << v.witness << "]\n";
    return kExitFail;
  }
  std::cout << "valid: " << x.name << "\n";
  return kExitYes;
}

int cmd_decide(const std::string& kind, const std::string& space_arg, const std::string& e_lit,
               const std::string& f_lit, Output& out) {
  SpaceModel x = resolve_space(space_arg);
  BundleClass e = parse_bundle(x, e_lit);
  bool wants_f = kind != "trivial";
  if (wants_f && f_lit.empty())
    throw std::invalid_argument("decide " + kind + " requires --f");
  if (!wants_f && !f_lit.empty())
    throw std::invalid_argument("decide trivial takes only --e");

  out.line("decide " + kind + " on " + x.name);
  out.line("E = " + e_lit);
  if (wants_f) out.line("F = " + f_lit);
  if (out.json) {
    out.doc["command"] = "decide " + kind;
    out.doc["space"] = x.name;
    out.doc["e"] = e_lit;
    if (wants_f) out.doc["f"] = f_lit;
  }

  DecisionReport rep;
  if (kind == "iso") {
    rep = decide_isomorphism(x, e, parse_bundle(x, f_lit));
  } else if (kind == "embed") {
    rep = decide_embedding(x, e, parse_bundle(x, f_lit));
  } else if (kind == "trivial") {
    rep = trivialization_test(x, e);
  } else if (kind == "suspension") {
    rep = decide_suspension(x, e.rank - 1, e, parse_bundle(x, f_lit));
  } else {  // line
    BundleClass f = parse_bundle(x, f_lit);
    if (e.rank != 1 || f.rank != 1)
      throw std::invalid_argument("decide line expects rank-1 bundle literals");
    if (!x.cohomology)
      throw std::invalid_argument("decide line needs cohomology data for " + x.name);
    CohomologyClass c1e = bundle_s_classes(x, e.reduced, 1).front();
    CohomologyClass c1f = bundle_s_classes(x, f.reduced, 1).front();
    rep = decide_line_bundle(*x.cohomology, c1e, c1f);
  }
  fill_report(out, rep);
  return finish(out, verdict_exit(rep.verdict));
}

// Canonical representative of the given coordinates modulo the filtration
// step, the ring relations, and the lattice m^n * (every generator).
std::vector<Int> mod_power_coords(const RingPresentation& r, const FiltrationCoset& c,
                                  const Int& modulus) {
  IntMatrix rows = filtration_submodule(r, c.modulus_level).as_matrix(r.num_generators());
  for (std::size_t i = 0; i < r.relation_rows().rows(); ++i)
    rows.append_row(r.relation_rows().row(i));
  for (std::size_t i = 0; i < r.num_generators(); ++i) {
    std::vector<Int> v(r.num_generators(), Int(0));
    v[i] = modulus;
    rows.append_row(v);
  }
  return hermite_reduce(c.coeff, hermite_row_basis(rows));
}

int cmd_invariant(const std::string& kind, const std::string& space_arg, const std::string& e_lit,
                  const std::string& f_lit, int n, const Int& m_flag, bool m_given, Output& out) {
  SpaceModel x = resolve_space(space_arg);
  BundleClass e = parse_bundle(x, e_lit);
  Int m = e.rank - 1;
  if (m < 1) throw std::invalid_argument("invariant: bundle rank must be at least 2");
  if (m_given && m_flag != m)
    throw std::invalid_argument("--m " + m_flag.str() + " contradicts rank " + Int(e.rank).str() +
                                " (expected m = rank - 1)");
  Int modulus = pow_int(m, static_cast<unsigned>(n));

  out.line("invariant " + kind + " on " + x.name);
  out.line("E = " + e_lit);
  out.line("n = " + std::to_string(n) + ", m = " + m.str());
  if (out.json) {
    out.doc["command"] = "invariant " + kind;
    out.doc["space"] = x.name;
    out.doc["e"] = e_lit;
    if (!f_lit.empty()) out.doc["f"] = f_lit;
    out.doc["n"] = n;
    out.doc["m"] = oeclass::detail::int_to_json(m);
    out.doc["modulus"] = oeclass::detail::int_to_json(modulus);
  }

  if (kind == "mu") {
    const RingPresentation& r = x.kring;
    FiltrationCoset c = mu_n(r, m, e, n);
    std::vector<Int> residue = mod_power_coords(r, c, modulus);
    std::string shown = pretty(RingElement{&r, residue});
    out.line("mu_" + std::to_string(n) + "(E) = " + pretty(c));
    out.line("mod " + modulus.str() + ": " + shown);
    if (out.json) {
      out.doc["value"] = pretty(c);
      out.doc["value_coords"] = oeclass::detail::int_vector_to_json(c.coeff);
      out.doc["residue"] = shown;
      out.doc["residue_coords"] = oeclass::detail::int_vector_to_json(residue);
    }
    if (!f_lit.empty()) {
      BundleClass f = parse_bundle(x, f_lit);
      out.line("F = " + f_lit);
      out.line("mu_" + std::to_string(n) + "(F) = " + pretty(mu_n(r, m, f, n)));
      MuDivisibility d = mu_divisibility_test(r, m, e, f, n);
      out.line("difference: " + pretty(d.difference));
      out.line("divisible by " + modulus.str() + ": " + (d.divisible ? "yes" : "no"));
      if (d.witness) out.line("witness: " + pretty(*d.witness));
      if (out.json) {
        out.doc["difference"] = pretty(d.difference);
        out.doc["divisible"] = d.divisible;
        if (d.witness) out.doc["witness"] = pretty(*d.witness);
      }
    }
    return finish(out, kExitYes);
  }

  // q invariant: s-classes come from the space's tables.
  if (!x.cohomology)
    throw std::invalid_argument("invariant q needs cohomology data for " + x.name);
  const CohomologyRing& h = *x.cohomology;
  std::vector<CohomologyClass> se = bundle_s_classes(x, e.reduced, n);
  QInvariant q = q_invariant(h, m, se, n);
  std::string residue = pretty(cohomology_class(h, n, q.mod_coords).element);
  out.line("q_" + std::to_string(n) + "(E) = " + pretty(q.integral.element));
  out.line("mod " + modulus.str() + ": " + residue);
  if (out.json) {
    out.doc["value"] = pretty(q.integral.element);
    out.doc["value_coords"] = oeclass::detail::int_vector_to_json(degree_coordinates(h, q.integral));
    out.doc["residue"] = residue;
    out.doc["residue_coords"] = oeclass::detail::int_vector_to_json(q.mod_coords);
  }
  if (!f_lit.empty()) {
    BundleClass f = parse_bundle(x, f_lit);
    out.line("F = " + f_lit);
    std::vector<CohomologyClass> sf = bundle_s_classes(x, f.reduced, n);
    out.line("q_" + std::to_string(n) + "(F) = " + pretty(q_invariant(h, m, sf, n).integral.element));
    QDivisibility d = q_divisibility_test(h, m, se, sf, n);
    out.line("difference: " + pretty(d.difference.element));
    out.line("divisible by " + modulus.str() + ": " + (d.divisible ? "yes" : "no"));
    if (out.json) {
      out.doc["difference"] = pretty(d.difference.element);
      out.doc["divisible"] = d.divisible;
    }
  }
  return finish(out, kExitYes);
}

int cmd_count(const std::string& space_arg, const Int& m, Output& out) {
  SpaceModel x = resolve_space(space_arg);
  out.line("count on " + x.name + ", m = " + m.str());
  if (out.json) {
    out.doc["command"] = "count";
    out.doc["space"] = x.name;
    out.doc["m"] = oeclass::detail::int_to_json(m);
  }
  DecisionReport rep = count_algebras(x, m);
  fill_report(out, rep);
  return finish(out, verdict_exit(rep.verdict));
}

int cmd_reps(const std::string& space_arg, const Int& m, Output& out) {
  SpaceModel x = resolve_space(space_arg);
  if (m < 1) throw std::invalid_argument("reps: m must be >= 1");
  out.line("reps on " + x.name + ", m = " + m.str());
  std::vector<RingElement> reps = canonical_representatives(x.kring, m);
  Json list = Json::array();
  for (std::size_t i = 0; i < reps.size(); ++i) {
    out.line("rep " + std::to_string(i + 1) + ": " + pretty(reps[i]));
    if (out.json) {
      Json r;
      r["coords"] = oeclass::detail::int_vector_to_json(reps[i].coeff);
      r["display"] = pretty(reps[i]);
      list.push_back(r);
    }
  }
  out.line("count: " + std::to_string(reps.size()));
  if (out.json) {
    out.doc["command"] = "reps";
    out.doc["space"] = x.name;
    out.doc["m"] = oeclass::detail::int_to_json(m);
    out.doc["reps"] = list;
    out.doc["count"] = reps.size();
  }
  return finish(out, kExitYes);
}

int cmd_verify(int max_n, int max_m, bool corrupt_p, Output& out) {
  IdentitySuiteReport rep = run_identity_suite(max_n, max_m, FaultInjection{corrupt_p});
  std::size_t failed = 0;
  Json list = Json::array();
  for (const IdentityCheck& c : rep.checks) {
    if (!c.passed) ++failed;
    std::string line = std::string(c.passed ? "[ok] " : "[FAIL] ") + c.name;
    if (!c.detail.empty()) line += ": " + c.detail;
    out.line(line);
    if (out.json) {
      Json e;
      e["name"] = c.name;
      e["passed"] = c.passed;
      e["detail"] = c.detail;
      list.push_back(e);
    }
  }
  out.line("identity suite: " + std::to_string(rep.checks.size()) + " checks, " +
           (failed == 0 ? "all passed" : std::to_string(failed) + " failed"));
  if (out.json) {
    out.doc["command"] = "verify-identities";
    out.doc["max_n"] = max_n;
    out.doc["max_m"] = max_m;
    out.doc["checks"] = list;
    out.doc["all_passed"] = rep.all_passed;
  }
  return finish(out, rep.all_passed ? kExitYes : kExitFail);
}

int cmd_reproduce(const std::string& dir, const std::string& only, bool write) {
  auto sections = reference_report_sections();
  if (!only.empty()) {
    decltype(sections) kept;
    for (auto& s : sections)
      if (s.first == only) kept.push_back(s);
    if (kept.empty()) {
      std::ostringstream names;
      for (auto& s : sections) names << " " << s.first;
      throw std::invalid_argument("unknown section '" + only + "'; known:" + names.str());
    }
    sections = kept;
  }
  if (write) {
    std::filesystem::create_directories(dir);
    for (auto& [name, content] : sections) {
      std::string path = dir + "/" + name + ".txt";
      std::ofstream f(path, std::ios::binary);
      if (!f) throw FileOpenError("cannot write golden file: " + path);
      f << content;
      std::cout << "wrote " << path << "\n";
    }
    return kExitYes;
  }
  int bad = 0;
  for (auto& [name, content] : sections) {
    std::string path = dir + "/" + name + ".txt";
    std::ifstream f(path, std::ios::binary);
    if (!f) {
      std::cout << "section " << name << ": missing golden " << path << "\n";
      ++bad;
      continue;
    }
    std::ostringstream buf;
    buf << f.rdbuf();
    std::string golden = buf.str();
    if (golden == content) {
      std::cout << "section " << name << ": ok\n";
      continue;
    }
    ++bad;
    std::cout << "section " << name << ": DIFFERS\n";
    std::istringstream ga(golden), ca(content);
    std::string gl, cl;
    for (int k = 1;; ++k) {
      bool hg = static_cast<bool>(std::getline(ga, gl));
      bool hc = static_cast<bool>(std::getline(ca, cl));
      if (!hg && !hc) break;
      if (hg && hc && gl == cl) continue;
      std::cout << "  first difference at line " << k << "\n";
      std::cout << "  golden:   " << (hg ? gl : "<end of file>") << "\n";
      std::cout << "  computed: " << (hc ? cl : "<end of file>") << "\n";
      break;
    }
  }
  if (bad == 0) {
    std::cout << "all " << sections.size() << " sections match\n";
    return kExitYes;
  }
  std::cout << bad << " of " << sections.size() << " sections differ\n";
  return kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact decision procedures for algebras attached to vector bundles"};
  app.require_subcommand(1);

  std::string space_arg, e_lit, f_lit, kind, format = "text";
  std::string validate_path, only, golden_dir = "paper";
  std::string m_str = "0";
  bool m_given = false, corrupt_p = false, write_goldens = false;
  int n_flag = 1, max_n = 8, max_m = 5;

  CLI::App* validate = app.add_subcommand("validate", "check a space file against the ring axioms");
  validate->add_option("file", validate_path, "space document")->required();

  CLI::App* decide = app.add_subcommand("decide", "decide a relation between two bundles");
  decide->add_option("kind", kind, "iso, embed, trivial, line, or suspension")
      ->required()
      ->check(CLI::IsMember({"iso", "embed", "trivial", "line", "suspension"}));
  decide->add_option("--space", space_arg, "builtin name or space file")->required();
  decide->add_option("--e", e_lit, "bundle literal rankR:[a1,...,ak]")->required();
  decide->add_option("--f", f_lit, "bundle literal rankR:[a1,...,ak]");
  decide->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* invariant = app.add_subcommand("invariant", "print an invariant and its reduction");
  invariant->add_option("kind", kind, "mu or q")
      ->required()
      ->check(CLI::IsMember({"mu", "q"}));
  invariant->add_option("--n", n_flag, "invariant index")->required()->check(CLI::PositiveNumber);
  invariant->add_option("--m", m_str, "cross-check against rank - 1")
      ->each([&m_given](const std::string&) { m_given = true; });
  invariant->add_option("--space", space_arg, "builtin name or space file")->required();
  invariant->add_option("--e", e_lit, "bundle literal")->required();
  invariant->add_option("--f", f_lit, "second bundle for the divisibility test");
  invariant->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* count = app.add_subcommand("count", "number of classes over a space");
  count->add_option("--space", space_arg, "builtin name or space file")->required();
  count->add_option("--m", m_str, "rank parameter")->required();
  count->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* reps = app.add_subcommand("reps", "canonical class representatives");
  reps->add_option("--space", space_arg, "builtin name or space file")->required();
  reps->add_option("--m", m_str, "rank parameter")->required();
  reps->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* verify = app.add_subcommand("verify-identities", "run the symbolic identity suite");
  verify->add_option("--max-n", max_n, "degree bound")->check(CLI::PositiveNumber);
  verify->add_option("--max-m", max_m, "parameter bound")->check(CLI::PositiveNumber);
  verify->add_flag("--corrupt-p", corrupt_p)->group("");  // test hook, hidden from help
  verify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* reproduce = app.add_subcommand("reproduce-paper", "diff computed sections against goldens");
  reproduce->add_option("--only", only, "restrict to one section");
  reproduce->add_option("--dir", golden_dir, "golden directory (default paper)");
  reproduce->add_flag("--write", write_goldens, "write the computed sections as goldens");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  Output out;
  out.json = format == "json";
  auto t0 = std::chrono::steady_clock::now();
  int code = kExitFail;
  try {
    if (validate->parsed()) {
      code = cmd_validate(validate_path);
    } else if (decide->parsed()) {
      code = cmd_decide(kind, space_arg, e_lit, f_lit, out);
    } else if (invariant->parsed()) {
      code = cmd_invariant(kind, space_arg, e_lit, f_lit, n_flag,
                           parse_int(m_str, "--m"), m_given, out);
    } else if (count->parsed()) {
      code = cmd_count(space_arg, parse_int(m_str, "--m"), out);
    } else if (reps->parsed()) {
      code = cmd_reps(space_arg, parse_int(m_str, "--m"), out);
    } else if (verify->parsed()) {
      code = cmd_verify(max_n, max_m, corrupt_p, out);
    } else if (reproduce->parsed()) {
      code = cmd_reproduce(golden_dir, only, write_goldens);
    }
  } catch (const HypothesisError& e) {
    std::cerr << e.what() << "\n";
    code = kExitHypothesis;
  } catch (const FileOpenError& e) {
    std::cerr << e.what() << "\n";
    code = kExitUsage;
  } catch (const RankRoutingError& e) {
    std::cerr << e.what() << "\n";
    code = kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    code = kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    code = kExitFail;
  }
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << "elapsed: " << ms << " ms\n";
  return code;
}

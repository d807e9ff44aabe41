// kmarith command-line front end. Prints one JSON report on stdout and a
// short summary on stderr. Exit codes: 0 decided, 1 invalid input or failed
// verification, 2 inconclusive within budget.

#include <chrono>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kmarith.hpp"
#include "kmarith/cli/io.hpp"
#include "kmarith/cli/report.hpp"

using namespace kmarith;
using namespace kmarith::cli;

namespace {

struct Outcome {
  json result;
  int exit_code = Success;
  std::string summary;
};

json input_json(const std::string& path, const std::string& text, const MatrixDocument& doc) {
  return {{"path", path}, {"kind", doc.kind}, {"size", doc.size}, {"rows", to_json(doc.rows)}, {"sha256", sha256_hex(text)}};
}

struct Loaded {
  MatrixDocument doc;
  json echo;
};

Loaded load(const std::string& path, const std::string& kind) {
  std::string text = read_file(path);
  MatrixDocument doc = parse_document(text);
  json echo = input_json(path, text, doc);
  if (doc.kind != kind) throw Error(Errc::Parse, path + ": expected a '" + kind + "' document, got '" + doc.kind + "'");
  return {std::move(doc), std::move(echo)};
}

std::string matrix_line(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ",[" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? "," : "") + m(i, j).get_str();
    s += "]";
  }
  return s + "]";
}

Outcome cmd_validate(const MatrixDocument& doc) {
  Outcome out;
  GeneralizedCartanMatrix a = validate_gcm(doc.matrix());
  json comps = json::array();
  for (const auto& c : indecomposable_components(a)) {
    json cj = json::array();
    for (auto i : c) cj.push_back(i + 1);
    comps.push_back(cj);
  }
  out.result = {{"valid", true}, {"components", comps}, {"indecomposable", is_indecomposable(a)}};
  bool symmetrizable = false;
  if (is_indecomposable(a)) {
    try {
      symmetrize(a);
      symmetrizable = true;
    } catch (const Error&) {
    }
    out.result["symmetrizable"] = symmetrizable;
  }
  out.summary = "valid GCM with " + std::to_string(comps.size()) + " indecomposable component(s)";
  return out;
}

Outcome cmd_classify(const MatrixDocument& doc, const SearchBudget& budget) {
  Outcome out;
  GeneralizedCartanMatrix a = validate_gcm(doc.matrix());
  Symmetrization sym = symmetrize(a);
  TypeClass tc = classify(a, budget);
  out.result = {{"type", type_kind_name(tc.kind)},
                {"signature", to_json(tc.signature)},
                {"symmetrization", {{"epsilons", to_json(sym.epsilons)}, {"b", to_json(sym.b)}}},
                {"arithmetic", tc.arithmetic()}};
  if (tc.reason) out.result["reason"] = reason_name(*tc.reason);
  if (!tc.detail.empty()) out.result["detail"] = tc.detail;
  if (tc.certificate) out.result["certificate"] = to_json(*tc.certificate);
  if (tc.spacelike_ray) out.result["spacelike_ray"] = to_json(*tc.spacelike_ray);
  if (tc.signature.minus == 1 && tc.signature.plus >= 1) {
    QuotientLattice lat = kernel_quotient(sym.b);
    out.result["quotient"] = {{"rank", lat.rank()}, {"gram", to_json(lat.gram)}, {"projection", to_json(lat.projection)}};
  }
  if (tc.kind == TypeKind::Inconclusive) out.exit_code = Inconclusive;
  out.summary = std::string(type_kind_name(tc.kind)) + ", signature (" + std::to_string(tc.signature.plus) + "," +
                std::to_string(tc.signature.minus) + "," + std::to_string(tc.signature.zero) + ")";
  return out;
}

Outcome cmd_roots(const MatrixDocument& doc, std::int64_t height) {
  Outcome out;
  GeneralizedCartanMatrix a = validate_gcm(doc.matrix());
  RootSystem rs(a);
  RootSlice slice = root_slice(rs, height);
  out.result = {{"height_bound", height},
                {"real_roots", roots_json(slice.real_roots, rs)},
                {"imaginary_roots", roots_json(slice.imaginary_roots, rs)},
                {"k_set", roots_json(k_set(rs, height), rs)}};
  out.summary = std::to_string(slice.real_roots.size()) + " positive real and " +
                std::to_string(slice.imaginary_roots.size()) + " positive imaginary roots of height <= " +
                std::to_string(height);
  return out;
}

Outcome cmd_reflective(const MatrixDocument& doc, bool two, const SearchBudget& budget) {
  Outcome out;
  QuotientLattice lat = QuotientLattice::from_gram(doc.matrix());
  ReflectivityReport rep = two ? is_two_reflective(lat, budget) : is_reflective(lat, budget);
  out.result = {{"mode", two ? "2-reflective" : "reflective"},
                {"verdict", verdict_name(rep.verdict)},
                {"polyhedron", to_json(rep.polyhedron)},
                {"generates_lattice", rep.generates_lattice},
                {"base_point", to_json(rep.base_point)},
                {"candidate_norms", to_json(rep.candidate_norms)},
                {"budget_spent", to_json(rep.spent)},
                {"stop_reason", rep.stop_reason},
                {"notes", rep.notes}};
  if (rep.verdict == Verdict::Inconclusive) out.exit_code = Inconclusive;
  out.summary = std::string(verdict_name(rep.verdict)) + " with " + std::to_string(rep.polyhedron.facets.size()) +
                " facet(s): " + rep.stop_reason;
  return out;
}

json synthesized_json(const InvariantTriple& t, bool round) {
  GeneralizedCartanMatrix a = synthesize_gcm(t);
  json j{{"lambda", to_json(t.lambda.values)}, {"gcm", to_json(a.matrix())}};
  if (round) {
    auto perm = round_trip(a);
    json rt{{"ok", perm.has_value()}};
    if (perm) {
      json p = json::array();
      for (auto i : *perm) p.push_back(i + 1);
      rt["permutation"] = p;
    }
    j["round_trip"] = rt;
  }
  return j;
}

Outcome cmd_synth(const MatrixDocument& gram, const MatrixDocument& facets_doc, const std::optional<std::string>& lambda_spec,
                  bool enumerate, bool round) {
  Outcome out;
  QuotientLattice lat = QuotientLattice::from_gram(gram.matrix());
  const std::vector<IntVector>& facets = facets_doc.rows;
  if (!facets.empty() && facets.front().size() != lat.rank())
    throw Error(Errc::Parse, "facet length differs from the Gram matrix size");
  FacetVerification ver = verify_fundamental_polyhedron(lat, facets);
  json where = json::array();
  for (auto i : ver.where) where.push_back(i + 1);
  out.result["verification"] = {{"valid", ver.valid},
                                {"reason", ver.valid ? json(nullptr) : json(ver.reason)},
                                {"facets", where},
                                {"generates_lattice", ver.generates_lattice},
                                {"polyhedron", to_json(ver.polyhedron)}};
  if (!ver.valid) {
    out.exit_code = Invalid;
    out.summary = "facet set rejected: " + ver.reason;
    return out;
  }
  if (enumerate) {
    json list = json::array();
    for (const auto& lam : enumerate_lambda(lat, facets)) list.push_back(synthesized_json(make_triple(lat, facets, lam), round));
    out.summary = std::to_string(list.size()) + " admissible lambda function(s)";
    out.result["lambdas"] = std::move(list);
    return out;
  }
  LambdaFunction lam;
  if (lambda_spec) {
    lam.values = parse_int_list(*lambda_spec);
  } else {
    lam.values.assign(facets.size(), Int(1));
    if (!ver.generates_lattice) {
      out.exit_code = Invalid;
      out.result["violated"] = "facets-generate-lattice";
      out.summary = "facets do not generate the lattice (facets-generate-lattice)";
      return out;
    }
  }
  LambdaCheck lc = check_lambda(lat, facets, lam);
  if (!lc.ok) {
    json w = json::array();
    for (auto i : lc.where) w.push_back(i + 1);
    out.exit_code = Invalid;
    out.result["violated"] = "lambda-" + lc.violation;
    out.result["violation_facets"] = w;
    out.summary = "lambda rejected: " + lc.violation;
    return out;
  }
  InvariantTriple t = make_triple(lat, facets, lam);
  out.result["synthesized"] = synthesized_json(t, round);
  out.summary = "synthesized " + matrix_line(synthesize_gcm(t).matrix());
  return out;
}

Outcome cmd_corpus(const SearchBudget& budget) {
  Outcome out;
  std::map<std::string, int> counts;
  json members = json::array();
  for (const auto& a : small_gcms()) {
    TypeClass tc = classify(a, budget);
    ++counts[type_kind_name(tc.kind)];
    members.push_back({{"gcm", to_json(a.matrix())}, {"type", type_kind_name(tc.kind)}});
  }
  out.result = {{"counts", counts}, {"members", members}, {"size", members.size()}};
  out.summary = std::to_string(members.size()) + " matrices classified";
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmarith: arithmetic-type Kac-Moody algebras and reflective hyperbolic lattices"};
  app.require_subcommand(1);

  SearchBudget budget;
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--max-norm", budget.max_norm, "largest candidate root norm")->capture_default_str();
    sub->add_option("--max-iter", budget.max_iter, "iteration cap")->capture_default_str();
    sub->add_option("--max-height", budget.max_height, "height cap")->capture_default_str();
  };

  std::string path, facets_path;
  std::int64_t height = 10;
  bool two = false, enumerate = false, round = false;
  std::optional<std::string> lambda_spec;

  auto* validate = app.add_subcommand("validate", "check the GCM axioms and split into components");
  validate->add_option("path", path, "gcm document")->required();
  auto* cls = app.add_subcommand("classify", "classify a GCM by arithmetic type");
  cls->add_option("path", path, "gcm document")->required();
  add_budget(cls);
  auto* roots = app.add_subcommand("roots", "real and imaginary roots up to a height");
  roots->add_option("path", path, "gcm document")->required();
  roots->add_option("--height", height, "height bound")->capture_default_str()->check(CLI::Range(1, 1000));
  auto* refl = app.add_subcommand("reflective", "search for the fundamental polyhedron of a hyperbolic lattice");
  refl->add_option("path", path, "gram document")->required();
  refl->add_flag("--two", two, "only reflections in norm-2 roots");
  add_budget(refl);
  auto* synth = app.add_subcommand("synth", "verify a facet set and build GCMs from it");
  synth->add_option("gram", path, "gram document")->required();
  synth->add_option("facets", facets_path, "facets document")->required();
  auto* lam_opt = synth->add_option("--lambda", lambda_spec, "comma-separated facet weights");
  synth->add_flag("--enumerate", enumerate, "list every admissible weight function")->excludes(lam_opt);
  synth->add_flag("--round-trip", round, "re-extract the synthesized matrix and compare");
  auto* corp = app.add_subcommand("corpus", "classify every small GCM of the built-in corpus");
  add_budget(corp);

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  json report;
  json args = json::object();
  json inputs = json::array();
  Outcome out;
  std::string command = app.get_subcommands().front()->get_name();
  report["command"] = command;
  try {
    if (command == "validate") {
      Loaded in = load(path, "gcm");
      inputs.push_back(in.echo);
      out = cmd_validate(in.doc);
    } else if (command == "classify") {
      args["budget"] = to_json(budget);
      Loaded in = load(path, "gcm");
      inputs.push_back(in.echo);
      out = cmd_classify(in.doc, budget);
    } else if (command == "roots") {
      args["height"] = height;
      Loaded in = load(path, "gcm");
      inputs.push_back(in.echo);
      out = cmd_roots(in.doc, height);
    } else if (command == "reflective") {
      args["budget"] = to_json(budget);
      args["two"] = two;
      Loaded in = load(path, "gram");
      inputs.push_back(in.echo);
      out = cmd_reflective(in.doc, two, budget);
    } else if (command == "synth") {
      args["enumerate"] = enumerate;
      args["round_trip"] = round;
      args["lambda"] = lambda_spec ? json(*lambda_spec) : json(nullptr);
      Loaded g = load(path, "gram");
      Loaded f = load(facets_path, "facets");
      inputs.push_back(g.echo);
      inputs.push_back(f.echo);
      out = cmd_synth(g.doc, f.doc, lambda_spec, enumerate, round);
    } else if (command == "corpus") {
      args["budget"] = to_json(budget);
      out = cmd_corpus(budget);
    }
  } catch (const Error& e) {
    out.result = {{"error", to_json(e)}};
    out.exit_code = e.code() == Errc::BudgetExhausted ? Inconclusive : Invalid;
    out.summary = std::string("error: ") + errc_name(e.code()) + ": " + e.what();
  }
  const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  report["args"] = args;
  report["inputs"] = inputs;
  json digest_src = inputs;
  report["input_digest"] = sha256_hex(digest_src.dump());
  report["result"] = out.result;
  report["exit_code"] = out.exit_code;
  report["status"] = out.exit_code == Success ? "ok" : (out.exit_code == Inconclusive ? "inconclusive" : "invalid");
  json doc{{"report", report}, {"timing", {{"elapsed_ms", elapsed}}}};
  std::cout << doc.dump(2) << "\n";
  std::cerr << command << ": " << out.summary << "\n";
  return out.exit_code;
}

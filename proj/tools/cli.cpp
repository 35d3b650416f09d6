#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "possdom/classify.hpp"
#include "possdom/errors.hpp"
#include "possdom/oracle.hpp"
#include "possdom/recognize.hpp"
#include "possdom/synthesize.hpp"

namespace possdom::cli {

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream o(path, std::ios::binary);
  if (!o || !(o << text)) throw InputError("cannot write '" + path + "'");
}

// One result line. JSON keys are fixed: class, verdict, witness, method,
// counterexample.
struct Row {
  std::string cls;
  bool verdict = false;
  json witness;  // null when absent
  std::string method;
  json counterexample;
  std::string detail;  // human rendering of the witness
};

json var_set_json(const VarSet& s) { return json(s); }

json aggregator_json(const Aggregator& f) {
  json a = json::array();
  for (const auto& g : f.components()) {
    auto name = known_name(g);
    a.push_back(name ? *name : "t:" + g.bits());
  }
  return a;
}

json rows_json(const std::vector<Assignment>& rows) {
  json a = json::array();
  for (const auto& r : rows) a.push_back(r.to_string());
  return a;
}

void emit(std::ostream& out, const std::vector<Row>& rows, bool as_json, json extra = json::object()) {
  if (as_json) {
    json results = json::array();
    for (const auto& r : rows)
      results.push_back({{"class", r.cls},
                         {"verdict", r.verdict},
                         {"witness", r.witness},
                         {"method", r.method.empty() ? json(nullptr) : json(r.method)},
                         {"counterexample", r.counterexample}});
    extra["results"] = results;
    out << extra.dump(2) << '\n';
    return;
  }
  for (const auto& r : rows) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%-30s %-4s", r.cls.c_str(), r.verdict ? "yes" : "no");
    std::string line = buf;
    if (!r.method.empty()) line += " [" + r.method + "]";
    if (!r.detail.empty()) line += " " + r.detail;
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  }
}

std::string rph_detail(const RphWitness& w) {
  return "V0=" + format_var_set(w.admissible) + " V*=" + format_var_set(w.renamed);
}

json rph_json(const RphWitness& w) {
  return {{"V0", var_set_json(w.admissible)}, {"renamed", var_set_json(w.renamed)}};
}

std::string lpic_detail(const LpicWitness& w) {
  return "V0=" + format_var_set(w.v0) + " V1=" + format_var_set(w.v1) + " V2=" + format_var_set(w.v2) +
         " V*=" + format_var_set(w.renamed);
}

json lpic_json(const LpicWitness& w) {
  return {{"V0", var_set_json(w.v0)},
          {"V1", var_set_json(w.v1)},
          {"V2", var_set_json(w.v2)},
          {"renamed", var_set_json(w.renamed)}};
}

int classify_formula_cmd(const std::string& path, bool as_json, std::ostream& out) {
  const Formula f = parse_formula(read_file(path));
  const auto r = classify_formula(f);
  std::vector<Row> rows;
  rows.push_back({"horn", r.syntactic.horn});
  rows.push_back({"dual_horn", r.syntactic.dual_horn});
  rows.push_back({"bijunctive", r.syntactic.bijunctive});
  rows.push_back({"affine", r.syntactic.affine});
  {
    Row row{"renamable_horn", r.renamable_horn.has_value()};
    if (r.renamable_horn) {
      row.witness = {{"renamed", var_set_json(*r.renamable_horn)}};
      row.detail = "V*=" + format_var_set(*r.renamable_horn);
    }
    rows.push_back(row);
  }
  {
    Row row{"separable", r.separable.has_value()};
    if (r.separable) {
      row.witness = {{"part1", var_set_json(r.separable->part1)}, {"part2", var_set_json(r.separable->part2)}};
      row.detail = format_var_set(r.separable->part1) + " | " + format_var_set(r.separable->part2);
    }
    rows.push_back(row);
  }
  {
    Row row{"partially_horn", r.partially_horn.has_value()};
    if (r.partially_horn) {
      row.witness = {{"V0", var_set_json(*r.partially_horn)}};
      row.detail = "V0=" + format_var_set(*r.partially_horn);
    }
    rows.push_back(row);
  }
  {
    Row row{"renamable_partially_horn", r.renamable_partially_horn.has_value()};
    if (r.renamable_partially_horn) {
      row.witness = rph_json(*r.renamable_partially_horn);
      row.detail = rph_detail(*r.renamable_partially_horn);
    }
    rows.push_back(row);
  }
  rows.push_back({"pic", r.pic});
  {
    Row row{"lpic", r.lpic.has_value()};
    if (r.lpic) {
      row.witness = lpic_json(*r.lpic);
      row.detail = lpic_detail(*r.lpic);
    }
    rows.push_back(row);
  }
  emit(out, rows, as_json,
       {{"variables", f.num_vars()}, {"clauses", f.clauses().size()}, {"mixed_clause_extension", r.mixed_clause_extension}});
  return r.pic ? kAccept : kReject;
}

Row verdict_row(const std::string& cls, const Verdict& v, bool with_witness) {
  Row row{cls, v.holds};
  row.method = v.method;
  if (with_witness && v.witness) {
    row.witness = aggregator_json(*v.witness);
    row.detail = describe(*v.witness);
  }
  return row;
}

Row synthesis_row(const std::string& cls, const std::optional<SynthesisResult>& s) {
  Row row{cls, s.has_value()};
  if (!s) return row;
  row.method = to_string(s->cls);
  if (s->lpic) {
    row.witness = lpic_json(*s->lpic);
    row.detail = lpic_detail(*s->lpic);
  } else if (s->rph) {
    row.witness = rph_json(*s->rph);
    row.detail = rph_detail(*s->rph);
  } else if (s->separable) {
    row.witness = {{"part1", var_set_json(s->separable->part1)}, {"part2", var_set_json(s->separable->part2)}};
    row.detail = format_var_set(s->separable->part1) + " | " + format_var_set(s->separable->part2);
  }
  return row;
}

int classify_domain_cmd(const std::string& path, bool witness, const ClassifyOptions& opt, bool as_json,
                        std::ostream& out) {
  const Domain d = parse_domain(read_file(path));
  const auto c = classify_domain(d, opt);
  std::vector<Row> rows = {
      verdict_row("possibility", c.possibility, witness),
      verdict_row("local_possibility", c.local_possibility, witness),
      verdict_row("anonymous", c.anonymous, witness),
      verdict_row("monotone_nondictatorial", c.monotone_nondictatorial, witness),
      verdict_row("strongdem", c.strongdem, witness),
      verdict_row("non_generalized_dictatorship", c.non_generalized_dictatorship, witness),
      Row{"systematic_and", c.systematic.and_closed},
      Row{"systematic_or", c.systematic.or_closed},
      Row{"systematic_maj", c.systematic.maj_closed},
      Row{"systematic_xor", c.systematic.xor_closed},
      synthesis_row("pic", c.pic),
      synthesis_row("lpic", c.lpic),
  };
  const auto deg = degeneracy(d);
  json fixed = json::array();
  for (auto [j, v] : deg.fixed_coordinates) fixed.push_back({{"coordinate", j}, {"value", v}});
  emit(out, rows, as_json, {{"arity", d.arity()}, {"size", d.size()}, {"fixed_coordinates", fixed}});
  return c.possibility.holds ? kAccept : kReject;
}

int synthesize_cmd(const std::string& path, bool lpic, const SynthesisOptions& opt, const std::string& out_path,
                   bool as_json, std::ostream& out, std::ostream& err) {
  const Domain d = parse_domain(read_file(path));
  const auto s = lpic ? lpic_for(d, opt) : pic_for(d, opt);
  if (!s) {
    if (as_json)
      emit(out, {Row{lpic ? "lpic" : "pic", false, nullptr, lpic ? "lpic-synthesis-reject" : "pic-synthesis-reject"}},
           true);
    else
      err << (lpic ? "no local possibility integrity constraint exists for this domain\n"
                   : "no possibility integrity constraint exists for this domain (impossibility domain)\n");
    return kReject;
  }
  const std::string text = render_formula(s->formula);
  if (!(models(parse_formula(text), opt.enumeration_cap) == d))
    throw VerificationFailure("synthesized formula does not re-parse to the input domain");
  if (!out_path.empty()) write_file(out_path, text);
  if (as_json) {
    emit(out, {synthesis_row(lpic ? "lpic" : "pic", s)}, true, {{"formula", text}});
  } else if (out_path.empty()) {
    out << text;
  } else {
    out << "wrote " << to_string(s->cls) << " formula with " << s->formula.clauses().size() << " clauses to "
        << out_path << '\n';
  }
  return kAccept;
}

int models_cmd(const std::string& path, int cap, std::ostream& out) {
  const Domain d = models(parse_formula(read_file(path)), cap);
  out << render_domain(d);
  return d.empty() ? kReject : kAccept;
}

int aggregator_check_cmd(const std::string& dpath, const std::string& apath, std::uint64_t tuple_cap, bool as_json,
                         std::ostream& out) {
  const Domain d = parse_domain(read_file(dpath));
  const Aggregator f = parse_aggregator(read_file(apath));
  const auto chk = is_aggregator(f, d, tuple_cap);
  Row agg{"aggregator", chk.ok};
  if (!chk.ok) {
    agg.counterexample = rows_json(chk.counterexample);
    for (const auto& r : chk.counterexample) agg.detail += (agg.detail.empty() ? "" : " ") + r.to_string();
    agg.detail = "counterexample: " + agg.detail + " -> " + possdom::apply(f, chk.counterexample).to_string();
  }
  std::vector<Row> rows = {agg,
                           Row{"dictatorial", is_dictatorial(f)},
                           Row{"projection_aggregator", is_projection_aggregator(f)},
                           Row{"systematic", is_systematic(f)},
                           Row{"anonymous", is_anonymous(f)},
                           Row{"monotone", is_monotone(f)},
                           Row{"strongdem", is_strongdem(f)},
                           Row{"locally_nondictatorial", is_locally_nondictatorial(f)}};
  const auto gd = is_generalized_dictatorship(f, d, tuple_cap);
  Row g{"generalized_dictatorship", gd.ok};
  if (!gd.ok) {
    g.counterexample = rows_json(gd.counterexample);
    for (const auto& r : gd.counterexample) g.detail += (g.detail.empty() ? "" : " ") + r.to_string();
    g.detail = "counterexample: " + g.detail;
  }
  rows.push_back(g);
  emit(out, rows, as_json, {{"aggregator", aggregator_json(f)}});
  return chk.ok ? kAccept : kReject;
}

int aggregator_find_cmd(const std::string& dpath, const std::string& kind, const SearchSpaceSpec& caps, bool as_json,
                        std::ostream& out) {
  const Domain d = parse_domain(read_file(dpath));
  SearchSpaceSpec spec = caps;
  Property p = Property::Any;
  if (kind == "binary") {
    spec.candidates = CandidateSet::BinaryUnanimous;
    p = Property::NonDictatorial;
  } else if (kind == "ternary-commutative") {
    spec.candidates = CandidateSet::TernaryCommutative;
  } else if (kind == "strongdem") {
    spec.candidates = CandidateSet::TernaryCommutativeNoXor;
    p = Property::StrongDem;
  } else if (kind == "anonymous") {
    spec.candidates = CandidateSet::TernaryCommutative;
    p = Property::Anonymous;
  } else {
    throw InputError("unknown kind '" + kind + "'");
  }
  const auto found = brute_property(d, p, spec);
  if (as_json) {
    Row row{kind, found.has_value()};
    row.method = "exhaustive-search";
    if (found) row.witness = aggregator_json(*found);
    emit(out, {row}, true);
  } else if (found) {
    out << render_aggregator(*found);
  } else {
    out << "no " << kind << " aggregator found\n";
  }
  return found ? kAccept : kReject;
}

std::string verdict_string(const CensusVerdicts& v) {
  std::string s;
  for (bool b : {v.possibility, v.local_possibility, v.strongdem, v.anonymous, v.monotone,
                 v.non_generalized_dictatorship})
    s += b ? 'y' : 'n';
  return s;
}

json verdict_json(const CensusVerdicts& v) {
  return {{"possibility", v.possibility},
          {"local_possibility", v.local_possibility},
          {"strongdem", v.strongdem},
          {"anonymous", v.anonymous},
          {"monotone", v.monotone},
          {"non_generalized_dictatorship", v.non_generalized_dictatorship}};
}

int census_cmd(int n, std::optional<std::size_t> sample, std::uint64_t seed, bool as_json, std::ostream& out) {
  std::vector<Domain> domains;
  if (sample) domains = sample_domains(n, *sample, seed);
  else if (n <= 3) domains = census_domains(n);
  else throw InputError("census over n > 3 needs --sample");
  const auto report = census(domains, n);
  if (as_json) {
    json a = json::array();
    for (const auto& e : report.entries)
      a.push_back({{"domain_bits", e.domain_bits},
                   {"theory_verdicts", verdict_json(e.theory)},
                   {"oracle_verdicts", verdict_json(e.oracle)},
                   {"match", e.match},
                   {"synthesis_ok", e.synthesis_ok}});
    out << a.dump(2) << '\n';
  } else {
    out << "# verdict order: possibility local_possibility strongdem anonymous monotone non_gd\n";
    for (const auto& e : report.entries)
      out << e.domain_bits << " theory=" << verdict_string(e.theory) << " oracle=" << verdict_string(e.oracle)
          << (e.match ? " match" : " MISMATCH") << (e.synthesis_ok ? "" : " SYNTHESIS-FAILED") << '\n';
    out << "domains " << report.entries.size() << ", mismatches " << report.mismatches() << '\n';
  }
  return report.mismatches() == 0 ? kAccept : kReject;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Possibility domains: recognition, synthesis, classification"};
  app.name(args.empty() ? "possdom" : args[0]);
  app.require_subcommand(1);

  bool as_json = false;
  app.add_flag("--json", as_json, "machine-readable output");

  int enum_cap = 24;
  std::uint64_t tuple_cap = kDefaultTupleCap;
  std::uint64_t coordinate_cap = std::uint64_t{1} << 20;
  auto add_caps = [&](CLI::App* sub) {
    sub->add_option("--enum-cap", enum_cap, "largest n for exhaustive enumeration")->check(CLI::Range(1, 64));
    sub->add_option("--tuple-cap", tuple_cap, "largest |D|^k tuple space");
    sub->add_flag("--json", as_json, "machine-readable output");
  };

  std::string path, path2, out_path, kind;
  bool witness = false, permissive = false, lpic = false;

  auto* cf = app.add_subcommand("classify-formula", "classify an extended DIMACS formula");
  cf->add_option("file", path)->required();
  add_caps(cf);

  auto* cd = app.add_subcommand("classify-domain", "classify a domain and build witnesses");
  cd->add_option("file", path)->required();
  cd->add_flag("--witness", witness, "print witness aggregators");
  cd->add_flag("--permissive", permissive, "classify degenerate domains on their free coordinates");
  add_caps(cd);

  auto* sy = app.add_subcommand("synthesize", "write a pic (or lpic) whose models are the domain");
  sy->add_option("domain", path)->required();
  sy->add_flag("--lpic", lpic, "synthesize a local possibility integrity constraint");
  sy->add_flag("--permissive", permissive, "allow degenerate domains");
  sy->add_option("--out", out_path, "output file");
  add_caps(sy);

  auto* mo = app.add_subcommand("models", "print the model set of a formula as a domain file");
  mo->add_option("formula", path)->required();
  add_caps(mo);

  auto* ag = app.add_subcommand("aggregator", "check or search aggregators");
  ag->require_subcommand(1);
  auto* ac = ag->add_subcommand("check", "test an aggregator file against a domain");
  ac->add_option("domain", path)->required();
  ac->add_option("aggregator", path2)->required();
  add_caps(ac);
  auto* af = ag->add_subcommand("find", "exhaustive search for an aggregator of the given kind");
  af->add_option("domain", path)->required();
  af->add_option("--kind", kind, "binary, ternary-commutative, strongdem or anonymous")
      ->required()
      ->check(CLI::IsMember({"binary", "ternary-commutative", "strongdem", "anonymous"}));
  af->add_option("--coordinate-cap", coordinate_cap, "largest |candidates|^n search space");
  add_caps(af);

  int n = 0;
  std::size_t sample = 0;
  std::uint64_t seed = 0;
  auto* ce = app.add_subcommand("census", "compare theory and brute force over many domains");
  ce->add_option("n", n)->required()->check(CLI::Range(1, 6));
  auto* sample_opt = ce->add_option("--sample", sample, "number of random domains");
  ce->add_option("--seed", seed, "sampling seed");
  add_caps(ce);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("possdom");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAccept : kInputError;
  }

  try {
    const DegeneracyPolicy policy = permissive ? DegeneracyPolicy::Permissive : DegeneracyPolicy::Strict;
    if (*cf) return classify_formula_cmd(path, as_json, out);
    if (*cd) return classify_domain_cmd(path, witness, {policy, enum_cap, tuple_cap}, as_json, out);
    if (*sy) return synthesize_cmd(path, lpic, {policy, enum_cap}, out_path, as_json, out, err);
    if (*mo) return models_cmd(path, enum_cap, out);
    if (*ac) return aggregator_check_cmd(path, path2, tuple_cap, as_json, out);
    if (*af) return aggregator_find_cmd(path, kind, {CandidateSet::BinaryUnanimous, 2, coordinate_cap, tuple_cap},
                                        as_json, out);
    if (*ce)
      return census_cmd(n, *sample_opt ? std::optional<std::size_t>(sample) : std::nullopt, seed, as_json, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << '\n';
    return kCapExceeded;
  } catch (const VerificationFailure& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  }
  return kInputError;
}

}  // namespace possdom::cli

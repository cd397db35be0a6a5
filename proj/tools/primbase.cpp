#include "primbase/base_search.hpp"
#include "primbase/class_table.hpp"
#include "primbase/classes.hpp"
#include "primbase/coset_action.hpp"
#include "primbase/fpr.hpp"
#include "primbase/ledger.hpp"
#include "primbase/manifest.hpp"
#include "primbase/probability.hpp"
#include "primbase/report.hpp"
#include "primbase/weyl_char.hpp"
#include "primbase/witness.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace primbase;
using nlohmann::json;

namespace {

struct Globals {
  std::uint64_t seed = kDefaultSeed;
  std::size_t budget = 0;
  std::string format = "text";
  std::string verify_cert;
  bool json() const { return format == "json"; }
};

std::string points_string(const std::vector<Point>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

std::vector<std::string> trace_strings(const std::vector<BigInt>& t) {
  std::vector<std::string> out;
  for (const auto& v : t) out.push_back(v.str());
  return out;
}

int cmd_order(const Globals& g, const std::string& group, const std::string& sub) {
  const ActionSpec a = resolve_action(group, sub, g.seed);
  const auto& G = a.group;
  if (g.json()) {
    std::cout << json{{"group", a.description},
                      {"degree", G.degree()},
                      {"order", G.order().str()},
                      {"transitive", is_transitive(G)},
                      {"base", G.chain().base_points()}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << a.description << "\n";
    std::cout << "degree: " << G.degree() << "\n";
    std::cout << "order: " << G.order() << "\n";
    std::cout << "transitive: " << (is_transitive(G) ? "yes" : "no") << "\n";
  }
  return 0;
}

int cmd_base(const Globals& g, const std::string& group, const std::string& sub, bool exact, bool greedy,
             const std::vector<std::size_t>& probe, const std::string& cert_out) {
  const ActionSpec a = resolve_action(group, sub, g.seed);
  const auto& G = a.group;
  json j{{"group", a.description}};
  std::ostringstream text;
  text << a.description << "\n";
  std::optional<BaseCertificate> cert;
  if (exact) {
    const auto r = minimal_base_size_exact(G, g.budget ? g.budget : kDefaultExactNodeBudget);
    if (r.exact) {
      text << "b = " << r.b << "\n";
      j["b"] = r.b;
    } else {
      text << r.lo << " <= b <= " << r.hi << " (node budget exhausted)\n";
      j["lower"] = r.lo;
      j["upper"] = r.hi;
    }
    text << "witness: " << points_string(r.witness.points) << "\n";
    j["witness"] = r.witness.points;
    j["trace"] = trace_strings(r.witness.stabilizer_order_trace);
    if (r.lower) {
      text << "lower bound: no base of size " << r.lower->c << " (" << r.lower->tuples_examined
           << " canonical prefixes, " << r.lower->pruned.size() << " pruned by the order bound"
           << (r.lower->explored_truncated ? ", record truncated" : "") << ")\n";
      j["lower_bound"] = {{"c", r.lower->c},
                          {"method", r.lower->method},
                          {"tuples_examined", r.lower->tuples_examined},
                          {"pruned", r.lower->pruned.size()}};
    }
    cert = r.witness;
  } else if (greedy) {
    const auto c = greedy_base(G);
    text << "b <= " << c.points.size() << "\n";
    text << "base: " << points_string(c.points) << "\n";
    j["upper"] = c.points.size();
    j["witness"] = c.points;
    j["trace"] = trace_strings(c.stabilizer_order_trace);
    cert = c;
  } else {
    if (probe.size() != 2) throw InputError("--probe needs c and the number of trials");
    const int c = static_cast<int>(probe[0]);
    const auto est = q_montecarlo(G, c, probe[1], g.seed);
    const std::size_t hits = est.trials - est.failures;
    text << "random " << c << "-tuples: " << hits << "/" << est.trials << " bases\n";
    text << "Q(G," << c << ") ~ " << est.estimate << "  95% interval [" << est.lower << ", " << est.upper << "]\n";
    j["c"] = c;
    j["trials"] = est.trials;
    j["failures"] = est.failures;
    j["estimate"] = est.estimate;
    j["interval"] = {est.lower, est.upper};
    if (!est.example_base.empty()) {
      text << "base found: " << points_string(est.example_base) << "\n";
      text << "b <= " << c << "\n";
      j["witness"] = est.example_base;
      j["upper"] = c;
      BaseCertificate bc;
      bc.points = est.example_base;
      bc.stabilizer_order_trace = stabilizer_order_trace(G, bc.points);
      cert = bc;
    } else {
      text << "no base found\n";
    }
  }
  if (cert && !cert_out.empty()) {
    std::ofstream out(cert_out);
    if (!out) throw InputError("cannot write '" + cert_out + "'");
    out << "certificate: base_size\n";
    out << "group: " << absolute_path("", group) << "\n";
    out << "subgroup: " << ((sub == "natural" || sub.rfind("stab:", 0) == 0) ? sub : absolute_path("", sub)) << "\n";
    out << "b: " << cert->points.size() << "\n";
    out << to_string(*cert) << "\n";
    text << "certificate written to " << cert_out << "\n";
  }
  if (g.json()) std::cout << j.dump(2) << "\n";
  else std::cout << text.str();
  return 0;
}

int cmd_fpr(const Globals& g, const std::string& group, const std::string& sub) {
  const std::string s = sub == "natural" ? "stab:0" : sub;
  const ActionSpec a = resolve_action(group, s, g.seed);
  const GroupHandle& G = a.ambient;
  const GroupHandle& H = *a.subgroup;
  const CosetLabeler lab(G, H);
  const CosetActionResult ca = coset_action(G, H);
  const ClassInventory inv = class_inventory(G, true);
  bool all_equal = true;
  json rows = json::array();
  std::ostringstream text;
  text << a.description << "\n";
  text << "class  order  |x^G|  fpr(fixed points)  fpr(fusion)\n";
  for (const auto& r : inv.records) {
    const Rational f1 = fpr_by_fixes(coset_image(ca, lab, r.representative), ca.index);
    const Rational f2 = fpr_by_fusion(G, H, r.representative);
    const bool eq = (f1 == f2);
    all_equal = all_equal && eq;
    text << r.label << "  " << r.element_order << "  " << r.class_size << "  " << to_string(f1) << "  "
         << to_string(f2) << (eq ? "" : "  MISMATCH") << "\n";
    rows.push_back({{"label", r.label},
                    {"order", r.element_order},
                    {"class_size", r.class_size.str()},
                    {"fpr_fixes", to_string(f1)},
                    {"fpr_fusion", to_string(f2)},
                    {"equal", eq}});
  }
  text << (all_equal ? "both pipelines agree on every class\n" : "pipelines disagree\n");
  if (g.json()) std::cout << json{{"action", a.description}, {"classes", rows}, {"agree", all_equal}}.dump(2) << "\n";
  else std::cout << text.str();
  return all_equal ? 0 : 1;
}

int cmd_qhat(const Globals& g, const std::string& group, const std::string& sub, const std::string& table, int c,
             bool csv) {
  BoundLedger L;
  std::string what;
  if (!table.empty()) {
    L = qhat_from_table(read_class_table_file(table), c);
    what = table;
  } else {
    if (group.empty()) throw InputError("qhat needs a group file or --table");
    const ActionSpec a = resolve_action(group, sub, g.seed);
    L = qhat_from_inventory(class_inventory(a.group, true), c);
    what = a.description;
  }
  if (g.json()) {
    json rows = json::array();
    for (const auto& r : L.per_class_contributions)
      rows.push_back({{"label", r.label},
                      {"class_size", r.class_size.str()},
                      {"fpr", to_string(r.fpr)},
                      {"contribution", to_string(r.contribution)}});
    std::cout << json{{"input", what},          {"c", c},
                      {"qhat", to_string(L.total)}, {"qhat_decimal", to_decimal(L.total)},
                      {"source", L.source},     {"certified", L.certified},
                      {"rows", rows}}
                     .dump(2)
              << "\n";
  } else if (csv) {
    write_ledger_csv(std::cout, L);
  } else {
    std::cout << what << "\n";
    write_ledger_text(std::cout, L);
    std::cout << "qhat = " << to_string(L.total) << "\n";
  }
  return 0;
}

int cmd_classes(const Globals& g, const std::string& group, const std::string& sub, bool prime_only, bool csv) {
  const ActionSpec a = resolve_action(group, sub, g.seed);
  const auto inv = class_inventory(a.group, prime_only);
  if (csv) {
    write_class_table(std::cout, inv);
    return 0;
  }
  if (g.json()) {
    json rows = json::array();
    for (const auto& r : inv.records)
      rows.push_back({{"label", r.label},
                      {"order", r.element_order},
                      {"class_size", r.class_size.str()},
                      {"centralizer_order", r.centralizer_order.str()},
                      {"fixed_points", r.fixed_point_count},
                      {"representative", r.representative.to_cycle_string()}});
    std::cout << json{{"group", a.description}, {"method", inv.method}, {"classes", rows}}.dump(2) << "\n";
    return 0;
  }
  std::cout << a.description << "  (" << inv.records.size() << " classes, " << inv.method << ")\n";
  for (const auto& r : inv.records)
    std::cout << r.label << "  |x^G| = " << r.class_size << "  |C(x)| = " << r.centralizer_order
              << "  fix = " << r.fixed_point_count << "\n";
  if (!prime_only) std::cout << "Burnside sum / |G| = " << to_string(Rational(burnside_sum(inv), inv.group_order)) << "\n";
  return 0;
}

int cmd_weylchar(const Globals& g, const std::string& query) {
  const ParabolicCharQuery qy = read_query_file(query);
  if (qy.twisted) throw InputError("twisted Steinberg endomorphisms are not supported; only split data is evaluated");
  IntPolynomial p;
  std::optional<BigInt> value;
  std::string what;
  std::size_t classes_used = 0;
  if (qy.kind == "index") {
    p = parabolic_index_poly(build_root_system(qy.type_label), qy.parabolic_subset);
    if (qy.q) value = p.eval(*qy.q);
    what = "parabolic index |G:P|";
  } else {
    const ChiResult r = chi_semisimple(qy, nullptr, g.budget ? g.budget : kWeylEnumerationBudget);
    p = r.polynomial;
    value = r.value;
    classes_used = r.classes_used;
    what = "permutation character value chi(x)";
  }
  if (g.json()) {
    json j{{"query", query},
           {"type", qy.type_label},
           {"kind", qy.kind},
           {"coefficients", p.coefficient_strings()},
           {"polynomial", p.pretty()}};
    if (value) j["value"] = value->str();
    if (qy.kind == "chi") {
      j["weyl_classes_used"] = classes_used;
      j["note"] = "isogeny type ignored; split data only";
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << qy.type_label << ": " << what << "\n";
    std::cout << p.pretty() << "\n";
    std::cout << "coefficients (ascending):";
    for (const auto& c : p.coefficient_strings()) std::cout << " " << c;
    std::cout << "\n";
    if (value) std::cout << "at q = " << *qy.q << ": " << *value << "\n";
    if (qy.kind == "chi") std::cout << "note: isogeny type ignored; split data only\n";
  }
  return 0;
}

int cmd_witness(const Globals& g, const std::string& group, const std::string& sub, int k, std::size_t trials) {
  const GroupHandle G = load_group(group, g.seed);
  const GroupHandle H = load_group(sub, g.seed);
  const auto r = conjugate_intersection_witness(G, H, k, trials ? trials : (g.budget ? g.budget : 100000), g.seed);
  std::vector<std::string> conj;
  for (const auto& x : r.witness.conjugators) conj.push_back(x.to_cycle_string());
  if (g.json()) {
    std::cout << json{{"k", k},
                      {"found", r.found},
                      {"trials", r.trials},
                      {"conjugators", conj},
                      {"intersection_order", r.witness.intersection_order.str()},
                      {"coset_points", r.coset_points}}
                     .dump(2)
              << "\n";
  } else if (r.found) {
    std::cout << "found " << k << " conjugates of " << H.name() << " with trivial intersection after " << r.trials
              << " trials\n";
    std::cout << "H";
    for (const auto& c : conj) std::cout << ", H^" << c;
    std::cout << "\nverified |intersection| = " << r.witness.intersection_order << "\n";
    std::cout << "coset points: " << points_string(r.coset_points) << "\n";
  } else {
    std::cout << "no witness with " << k << " conjugates in " << r.trials << " trials (not a proof of absence)\n";
  }
  return 0;
}

int cmd_verify(const Globals& g, const std::string& manifest, const std::string& certs, bool timings) {
  const auto entries = read_manifest_file(manifest);
  ReportDocument doc = run_manifest(entries, g.seed, certs, manifest);
  doc.show_timings = timings;
  const std::string ts = utc_timestamp();
  if (g.json()) std::cout << report_json(doc, ts).dump(2) << "\n";
  else write_report_text(std::cout, doc, ts);
  return doc.exit_code();
}

int verify_certificate_cli(const Globals& g) {
  const auto r = verify_certificate_file(g.verify_cert, g.seed);
  if (g.json()) std::cout << json{{"certificate", g.verify_cert}, {"ok", r.ok}, {"message", r.message}}.dump(2) << "\n";
  else std::cout << (r.ok ? "VERIFIED: " : "REJECTED: ") << r.message << "\n";
  return r.ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Base sizes, fixed point ratios and permutation characters of finite groups"};
  Globals g;
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--budget", g.budget, "work budget (nodes, trials or elements, per verb)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--verify", g.verify_cert, "re-verify a certificate file");
  app.require_subcommand(0, 1);

  std::string group, sub = "natural", table, query, manifest, certs, cert_out;
  bool exact = false, greedy = false, prime_only = false, csv = false, timings = false;
  std::vector<std::size_t> probe;
  int c = 0, k = 0;
  std::size_t trials = 0;

  auto* order = app.add_subcommand("order", "degree and order of a group or coset action");
  order->add_option("group", group, "group file")->required();
  order->add_option("--subgroup", sub, "subgroup file, stab:<point> or natural");

  auto* base = app.add_subcommand("base", "base size: exact, greedy or randomized probe");
  base->add_option("group", group, "group file")->required();
  base->add_option("--subgroup", sub, "subgroup file, stab:<point> or natural");
  auto* fx = base->add_flag("--exact", exact, "exact minimal base size with certificate");
  auto* fg = base->add_flag("--greedy", greedy, "greedy base (upper bound)");
  auto* fp = base->add_option("--probe", probe, "c and trials for a random search")->expected(2);
  fx->excludes(fg)->excludes(fp);
  fg->excludes(fp);
  base->add_option("--cert", cert_out, "write a base certificate to this file");

  auto* fpr = app.add_subcommand("fpr", "fixed point ratios by fixed points and by class fusion");
  fpr->add_option("group", group, "group file")->required();
  fpr->add_option("--subgroup", sub, "point stabilizer: file or stab:<point> (default stab:0)");

  auto* qhat = app.add_subcommand("qhat", "union bound on the probability that a random c-tuple is not a base");
  qhat->add_option("group", group, "group file");
  qhat->add_option("--subgroup", sub, "subgroup file, stab:<point> or natural");
  qhat->add_option("--table", table, "class table CSV instead of a group");
  qhat->add_option("--c", c, "tuple size")->required();
  qhat->add_flag("--csv", csv, "ledger as CSV");

  auto* classes = app.add_subcommand("classes", "conjugacy classes with fixed point counts");
  classes->add_option("group", group, "group file")->required();
  classes->add_option("--subgroup", sub, "subgroup file, stab:<point> or natural");
  classes->add_flag("--prime-only", prime_only, "only classes of prime order");
  classes->add_flag("--csv", csv, "class table CSV");

  auto* weyl = app.add_subcommand("weylchar", "parabolic index or semisimple character polynomial");
  weyl->add_option("query", query, "query file")->required();

  auto* wit = app.add_subcommand("witness", "conjugates of a subgroup with trivial intersection");
  wit->add_option("group", group, "group file")->required();
  wit->add_option("--subgroup", sub, "subgroup file")->required();
  wit->add_option("--k", k, "number of conjugates")->required();
  wit->add_option("--trials", trials, "random trials");

  auto* ver = app.add_subcommand("verify", "run a case manifest");
  ver->add_option("manifest", manifest, "manifest file")->required();
  ver->add_option("--certs", certs, "directory for certificates");
  ver->add_flag("--timings", timings, "include timings in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (!g.verify_cert.empty()) {
      const int rc = verify_certificate_cli(g);
      if (rc != 0 || app.get_subcommands().empty()) return rc;
    }
    if (*order) return cmd_order(g, group, sub);
    if (*base) {
      if (!exact && !greedy && probe.empty()) throw InputError("base needs --exact, --greedy or --probe");
      return cmd_base(g, group, sub, exact, greedy, probe, cert_out);
    }
    if (*fpr) return cmd_fpr(g, group, sub);
    if (*qhat) return cmd_qhat(g, group, sub, table, c, csv);
    if (*classes) return cmd_classes(g, group, sub, prime_only, csv);
    if (*weyl) return cmd_weylchar(g, query);
    if (*wit) return cmd_witness(g, group, sub, k, trials);
    if (*ver) return cmd_verify(g, manifest, certs, timings);
    std::cerr << app.help();
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const StateError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  }
}

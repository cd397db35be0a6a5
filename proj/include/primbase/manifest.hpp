#pragma once

#include "primbase/base_search.hpp"
#include "primbase/class_table.hpp"
#include "primbase/classes.hpp"
#include "primbase/coset_action.hpp"
#include "primbase/errors.hpp"
#include "primbase/group_io.hpp"
#include "primbase/ledger.hpp"
#include "primbase/probability.hpp"
#include "primbase/weyl_char.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace primbase {

enum class Verdict { Pass, Fail, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
  case Verdict::Pass: return "PASS";
  case Verdict::Fail: return "FAIL";
  default: return "INCONCLUSIVE";
  }
}

enum class ClaimKind { BaseSizeEq, BaseSizeLe, BaseSizeGe, QhatLessThanOne, ChiPolynomial, IrCount };

inline ClaimKind parse_claim(const std::string& s) {
  if (s == "base_size =" || s == "base_size=" || s == "base_size_eq") return ClaimKind::BaseSizeEq;
  if (s == "base_size <=" || s == "base_size<=" || s == "base_size ≤" || s == "base_size_le") return ClaimKind::BaseSizeLe;
  if (s == "base_size >=" || s == "base_size>=" || s == "base_size ≥" || s == "base_size_ge") return ClaimKind::BaseSizeGe;
  if (s == "qhat_less_than_1") return ClaimKind::QhatLessThanOne;
  if (s == "chi_polynomial") return ClaimKind::ChiPolynomial;
  if (s == "i_r_count") return ClaimKind::IrCount;
  throw InputError("unknown claim '" + s + "'");
}

inline std::string claim_name(ClaimKind k) {
  switch (k) {
  case ClaimKind::BaseSizeEq: return "base_size =";
  case ClaimKind::BaseSizeLe: return "base_size <=";
  case ClaimKind::BaseSizeGe: return "base_size >=";
  case ClaimKind::QhatLessThanOne: return "qhat_less_than_1";
  case ClaimKind::ChiPolynomial: return "chi_polynomial";
  default: return "i_r_count";
  }
}

struct CaseManifestEntry {
  std::string case_id;
  std::string group_file;
  std::string subgroup = "natural";  // "natural", "stab:<point>" or a group file
  ClaimKind claim = ClaimKind::BaseSizeEq;
  std::string claimed_value;
  bool certified = true;
  std::size_t budget = 0;  // 0 = default for the claim
  bool enabled = true;
  std::string base_dir;    // relative paths resolve against this
  std::size_t line = 0;
};

/// `case_id | group | subgroup | claim | value | mode | budget`, one per line.
/// Lines starting with `#` are comments; `#! ` marks a row shipped disabled.
inline std::vector<CaseManifestEntry> parse_manifest(std::istream& in, const std::string& source = "<manifest>",
                                                     const std::string& base_dir = ".") {
  std::vector<CaseManifestEntry> out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::trim(raw);
    bool enabled = true;
    if (line.rfind("#!", 0) == 0) {
      enabled = false;
      line = detail::trim(line.substr(2));
    } else if (line.empty() || line[0] == '#') {
      continue;
    }
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, '|')) f.push_back(detail::trim(cell));
    const std::string where = detail::where(source, lineno);
    if (f.size() != 7) throw InputError(where + "expected 7 '|'-separated fields, got " + std::to_string(f.size()));
    CaseManifestEntry e;
    e.case_id = f[0];
    e.group_file = f[1];
    e.subgroup = f[2].empty() ? "natural" : f[2];
    try {
      e.claim = parse_claim(f[3]);
    } catch (const InputError& err) {
      throw InputError(where + err.what());
    }
    e.claimed_value = f[4];
    if (f[5] == "certified") e.certified = true;
    else if (f[5] == "evidence") e.certified = false;
    else throw InputError(where + "mode must be 'certified' or 'evidence'");
    try {
      std::size_t pos = 0;
      const long long b = std::stoll(f[6], &pos);
      if (pos != f[6].size() || b < 0) throw std::invalid_argument("budget");
      e.budget = static_cast<std::size_t>(b);
    } catch (const std::exception&) {
      throw InputError(where + "invalid budget '" + f[6] + "'");
    }
    if (e.case_id.empty()) throw InputError(where + "empty case id");
    e.enabled = enabled;
    e.base_dir = base_dir;
    e.line = lineno;
    out.push_back(std::move(e));
  }
  return out;
}

inline std::vector<CaseManifestEntry> read_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open manifest '" + path + "'");
  const auto dir = std::filesystem::path(path).parent_path();
  return parse_manifest(in, path, dir.empty() ? "." : dir.string());
}

inline std::string resolve_path(const std::string& base_dir, const std::string& p) {
  const std::filesystem::path fp(p);
  if (fp.is_absolute() || base_dir.empty()) return p;
  return (std::filesystem::path(base_dir) / fp).lexically_normal().string();
}

inline std::string absolute_path(const std::string& base_dir, const std::string& p) {
  return std::filesystem::absolute(resolve_path(base_dir, p)).lexically_normal().string();
}

/// The permutation group a case talks about: G itself, or G on the cosets of
/// a subgroup given by file or as `stab:<point>`.
struct ActionSpec {
  GroupHandle group;          // the acting permutation group
  GroupHandle ambient;        // G as loaded
  std::optional<GroupHandle> subgroup;
  std::string description;
};

inline ActionSpec resolve_action(const std::string& group_path, const std::string& subgroup,
                                 std::uint64_t seed = kDefaultSeed, std::size_t index_budget = kDefaultIndexBudget,
                                 const std::string& base_dir = "") {
  ActionSpec a;
  a.ambient = load_group(resolve_path(base_dir, group_path), seed);
  if (subgroup.empty() || subgroup == "natural") {
    a.group = a.ambient;
    a.description = a.ambient.name() + " natural (degree " + std::to_string(a.ambient.degree()) + ")";
    return a;
  }
  GroupHandle H;
  if (subgroup.rfind("stab:", 0) == 0) {
    const std::string v = subgroup.substr(5);
    Point p = 0;
    try {
      p = static_cast<Point>(std::stoul(v));
    } catch (const std::exception&) {
      throw InputError("invalid point in '" + subgroup + "'");
    }
    if (p >= a.ambient.degree()) throw InputError("point " + v + " out of range");
    H = pointwise_stabilizer(a.ambient, {p});
  } else {
    H = load_group(resolve_path(base_dir, subgroup), seed);
  }
  const CosetActionResult ca = coset_action(a.ambient, H, index_budget);
  if (!ca.faithful) throw InputError("the action of " + a.ambient.name() + " on the cosets of " + H.name() + " is not faithful");
  a.group = ca.quotient_group;
  a.subgroup = H;
  a.description = a.ambient.name() + " on cosets of " + H.name() + " (degree " + std::to_string(ca.index) + ")";
  return a;
}

// ---- case execution --------------------------------------------------------

struct CaseResult {
  std::string case_id;
  std::string claim;
  std::string claimed_value;
  std::string mode;
  Verdict verdict = Verdict::Inconclusive;
  std::string observed;                   // what was computed
  std::vector<std::string> details;       // statistics, reasons
  std::optional<std::string> certificate; // re-verifiable certificate text
  double seconds = 0;
};

inline constexpr std::size_t kDefaultExactNodeBudget = 50000000;
inline constexpr std::size_t kDefaultEvidenceTrials = 1000000;

namespace detail {

inline int parse_int_value(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw InputError("invalid " + what + " '" + s + "'");
  }
}

inline bool base_claim_holds(ClaimKind k, int b, int v) {
  if (k == ClaimKind::BaseSizeEq) return b == v;
  if (k == ClaimKind::BaseSizeLe) return b <= v;
  return b >= v;
}

inline std::string join_points(const std::vector<Point>& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? " " : "") + std::to_string(p[i]);
  return s;
}

inline std::string subgroup_ref(const CaseManifestEntry& e) {
  if (e.subgroup == "natural" || e.subgroup.rfind("stab:", 0) == 0) return e.subgroup;
  return absolute_path(e.base_dir, e.subgroup);
}

inline std::string base_certificate_text(const CaseManifestEntry& e, const MinimalBaseResult& r) {
  std::ostringstream os;
  os << "certificate: base_size\n";
  os << "group: " << absolute_path(e.base_dir, e.group_file) << "\n";
  os << "subgroup: " << subgroup_ref(e) << "\n";
  os << "b: " << r.b << "\n";
  os << to_string(r.witness) << "\n";
  if (r.lower) {
    os << "lower_bound_c: " << r.lower->c << "\n";
    os << "lower_bound_method: " << r.lower->method << "\n";
    os << "lower_bound_tuples: " << r.lower->tuples_examined << "\n";
    os << "lower_bound_pruned: " << r.lower->pruned.size() << "\n";
  }
  return os.str();
}

inline void run_base_case(const CaseManifestEntry& e, const ActionSpec& a, std::uint64_t seed, CaseResult& res) {
  const int v = parse_int_value(e.claimed_value, "base size");
  const auto& G = a.group;
  if (e.certified) {
    const auto r = minimal_base_size_exact(G, e.budget ? e.budget : kDefaultExactNodeBudget);
    if (!r.exact) {
      res.observed = std::to_string(r.lo) + " <= b <= " + std::to_string(r.hi);
      res.details.push_back("exact search ran out of budget");
      if (r.hi <= v && e.claim == ClaimKind::BaseSizeLe) res.verdict = Verdict::Pass;
      else if (r.lo >= v && e.claim == ClaimKind::BaseSizeGe) res.verdict = Verdict::Pass;
      else if ((e.claim != ClaimKind::BaseSizeGe && r.lo > v) || (e.claim != ClaimKind::BaseSizeLe && r.hi < v))
        res.verdict = Verdict::Fail;
      return;
    }
    res.observed = "b = " + std::to_string(r.b);
    res.details.push_back("witness: " + join_points(r.witness.points));
    if (r.lower)
      res.details.push_back("lower bound: no base of size " + std::to_string(r.lower->c) + " (" +
                            std::to_string(r.lower->tuples_examined) + " canonical prefixes, " +
                            std::to_string(r.lower->pruned.size()) + " pruned by the order bound)");
    res.verdict = base_claim_holds(e.claim, r.b, v) ? Verdict::Pass : Verdict::Fail;
    res.certificate = base_certificate_text(e, r);
    return;
  }
  // Evidence mode: random (v-1)-tuples and v-tuples.
  const std::size_t small_trials = e.budget ? e.budget : kDefaultEvidenceTrials;
  const std::size_t big_trials = std::max<std::size_t>(1, small_trials / 10);
  TupleTree tree(G, seed);
  const auto big = q_montecarlo(tree, v, big_trials, seed);
  const auto small = v > 0 ? q_montecarlo(tree, v - 1, small_trials, seed + 1) : MonteCarloEstimate{};
  const bool found_v = !big.example_base.empty();
  const bool found_smaller = v > 0 && !small.example_base.empty();
  std::ostringstream os;
  os << "random " << v << "-tuples: " << (big.trials - big.failures) << "/" << big.trials << " bases";
  res.details.push_back(os.str());
  os.str("");
  if (v > 0) {
    os << "random " << (v - 1) << "-tuples: " << (small.trials - small.failures) << "/" << small.trials
       << " bases (failure rate 95% interval [" << small.lower << ", " << small.upper << "])";
    res.details.push_back(os.str());
  }
  if (found_v) res.details.push_back("base of size " + std::to_string(v) + ": " + join_points(big.example_base));
  if (found_smaller) {
    res.details.push_back("base of size " + std::to_string(v - 1) + ": " + join_points(small.example_base));
    res.observed = "b <= " + std::to_string(v - 1);
    res.verdict = e.claim == ClaimKind::BaseSizeLe ? Verdict::Pass : Verdict::Fail;
    return;
  }
  res.observed = found_v ? "b <= " + std::to_string(v) + "; no smaller base found" : "no base found";
  res.details.push_back("evidence only, not certified");
  if (found_v) res.verdict = Verdict::Pass;
}

inline void run_qhat_case(const CaseManifestEntry& e, const ActionSpec& a, CaseResult& res) {
  const int c = parse_int_value(e.claimed_value, "c");
  ClassOptions opt;
  const auto inv = class_inventory(a.group, true, opt);
  const auto L = qhat_from_inventory(inv, c);
  res.observed = "qhat(" + std::to_string(c) + ") = " + to_string(L.total) + " ~ " + to_decimal(L.total);
  res.details.push_back(std::to_string(L.per_class_contributions.size()) + " prime-order classes");
  res.verdict = L.total < 1 ? Verdict::Pass : Verdict::Fail;
  if (!e.certified && res.verdict == Verdict::Fail) res.verdict = Verdict::Inconclusive;
  res.certificate = "certificate: qhat\ngroup: " + absolute_path(e.base_dir, e.group_file) + "\nsubgroup: " + subgroup_ref(e) +
                    "\nc: " + std::to_string(c) + "\nqhat: " + to_string(L.total) + "\n";
}

inline void run_ir_case(const CaseManifestEntry& e, const ActionSpec& a, CaseResult& res) {
  const auto eq = e.claimed_value.find('=');
  if (eq == std::string::npos) throw InputError("i_r_count value must look like 'r=count'");
  const int r = parse_int_value(detail::trim(e.claimed_value.substr(0, eq)), "prime r");
  const BigInt want(detail::trim(e.claimed_value.substr(eq + 1)));
  const auto inv = class_inventory(a.ambient, true);
  const BigInt got = count_elements_of_prime_order(inv, static_cast<std::uint64_t>(r));
  res.observed = "i_" + std::to_string(r) + " = " + got.str();
  res.verdict = got == want ? Verdict::Pass : Verdict::Fail;
  res.certificate = "certificate: i_r_count\ngroup: " + absolute_path(e.base_dir, e.group_file) + "\nr: " +
                    std::to_string(r) + "\ncount: " + got.str() + "\n";
}

inline void run_chi_case(const CaseManifestEntry& e, CaseResult& res) {
  const ParabolicCharQuery qy = read_query_file(resolve_path(e.base_dir, e.group_file));
  IntPolynomial got;
  if (qy.kind == "index") got = parabolic_index_poly(build_root_system(qy.type_label), qy.parabolic_subset);
  else got = chi_semisimple(qy).polynomial;
  const IntPolynomial want = detail::parse_coefficients(e.claimed_value);
  res.observed = got.pretty();
  res.verdict = got == want ? Verdict::Pass : Verdict::Fail;
  res.certificate = "certificate: chi_polynomial\nquery: " + absolute_path(e.base_dir, e.group_file) +
                    "\npolynomial: " + got.pretty() + "\n";
}

} // namespace detail

/// Runs one manifest entry. Missing files and exhausted budgets give
/// INCONCLUSIVE with a reason; they never abort the campaign.
inline CaseResult run_case(const CaseManifestEntry& e, std::uint64_t seed = kDefaultSeed) {
  CaseResult res;
  res.case_id = e.case_id;
  res.claim = claim_name(e.claim);
  res.claimed_value = e.claimed_value;
  res.mode = e.certified ? "certified" : "evidence";
  if (!e.enabled) {
    res.details.push_back("disabled in the manifest");
    return res;
  }
  try {
    if (e.claim == ClaimKind::ChiPolynomial) {
      detail::run_chi_case(e, res);
      return res;
    }
    const ActionSpec a = resolve_action(e.group_file, e.claim == ClaimKind::IrCount ? "natural" : e.subgroup, seed,
                                        kDefaultIndexBudget, e.base_dir);
    res.details.push_back("action: " + a.description);
    switch (e.claim) {
    case ClaimKind::BaseSizeEq:
    case ClaimKind::BaseSizeLe:
    case ClaimKind::BaseSizeGe: detail::run_base_case(e, a, seed, res); break;
    case ClaimKind::QhatLessThanOne: detail::run_qhat_case(e, a, res); break;
    case ClaimKind::IrCount: detail::run_ir_case(e, a, res); break;
    default: break;
    }
  } catch (const ResourceError& err) {
    res.verdict = Verdict::Inconclusive;
    res.details.push_back(std::string("resource limit: ") + err.what());
  } catch (const InputError& err) {
    res.verdict = Verdict::Inconclusive;
    res.details.push_back(std::string("input problem: ") + err.what());
  }
  if (!res.certificate || res.verdict != Verdict::Pass || !e.certified) res.certificate.reset();
  return res;
}

// ---- certificate re-verification ------------------------------------------

struct CertificateCheck {
  bool ok = false;
  std::string message;
};

/// Re-checks a certificate written by run_case. A base certificate is checked
/// point by point and its lower bound is re-derived by exhaustive search.
inline CertificateCheck verify_certificate_text(const std::string& text, std::uint64_t seed = kDefaultSeed) {
  std::map<std::string, std::string> kv;
  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    const std::string line = detail::trim(raw);
    if (line.empty() || line[0] == '#') continue;
    const auto sp = line.find_first_of(": ");
    if (sp == std::string::npos) continue;
    std::string key = line.substr(0, sp);
    std::string val = detail::trim(line.substr(sp + 1));
    if (!val.empty() && val[0] == ':') val = detail::trim(val.substr(1));
    kv[key] = val;
  }
  const auto need = [&](const std::string& k) -> const std::string& {
    auto it = kv.find(k);
    if (it == kv.end()) throw InputError("certificate has no '" + k + "' field");
    return it->second;
  };
  CertificateCheck out;
  const std::string kind = need("certificate");
  if (kind == "base_size") {
    const ActionSpec a = resolve_action(need("group"), need("subgroup"), seed);
    BaseCertificate c;
    std::istringstream ps(need("points"));
    unsigned long p;
    while (ps >> p) c.points.push_back(static_cast<Point>(p));
    std::istringstream ts(need("trace"));
    std::string t;
    while (ts >> t) c.stabilizer_order_trace.push_back(detail::parse_big(t, "certificate trace: "));
    std::string why;
    if (!verify_certificate(a.group, c, &why)) {
      out.message = "witness rejected: " + why;
      return out;
    }
    const int b = detail::parse_int_value(need("b"), "b");
    if (static_cast<int>(c.points.size()) != b) {
      out.message = "witness has " + std::to_string(c.points.size()) + " points, claimed b = " + std::to_string(b);
      return out;
    }
    const auto r = minimal_base_size_exact(a.group);
    if (!r.exact || r.b != b) {
      out.message = "recomputed base size does not match";
      return out;
    }
    out.ok = true;
    out.message = "base of size " + std::to_string(b) + " verified; no base of size " + std::to_string(b - 1) + " exists";
  } else if (kind == "qhat") {
    const ActionSpec a = resolve_action(need("group"), need("subgroup"), seed);
    const int c = detail::parse_int_value(need("c"), "c");
    const auto L = qhat_from_inventory(class_inventory(a.group, true), c);
    out.ok = to_string(L.total) == need("qhat") && L.total < 1;
    out.message = "qhat = " + to_string(L.total);
  } else if (kind == "i_r_count") {
    const ActionSpec a = resolve_action(need("group"), "natural", seed);
    const int r = detail::parse_int_value(need("r"), "r");
    const BigInt got = count_elements_of_prime_order(class_inventory(a.group, true), static_cast<std::uint64_t>(r));
    out.ok = got.str() == need("count");
    out.message = "i_" + std::to_string(r) + " = " + got.str();
  } else if (kind == "chi_polynomial") {
    const ParabolicCharQuery qy = read_query_file(need("query"));
    const IntPolynomial got = qy.kind == "index"
                                  ? parabolic_index_poly(build_root_system(qy.type_label), qy.parabolic_subset)
                                  : chi_semisimple(qy).polynomial;
    out.ok = got.pretty() == need("polynomial");
    out.message = got.pretty();
  } else {
    throw InputError("unknown certificate kind '" + kind + "'");
  }
  return out;
}

inline CertificateCheck verify_certificate_file(const std::string& path, std::uint64_t seed = kDefaultSeed) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open certificate '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return verify_certificate_text(ss.str(), seed);
}

} // namespace primbase

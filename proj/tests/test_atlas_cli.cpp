#include "oracles.hpp"

#include "primbase/manifest.hpp"
#include "primbase/report.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sys/wait.h>

#ifndef PRIMBASE_CLI
#define PRIMBASE_CLI "primbase"
#endif

using namespace primbase;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string("\"") + PRIMBASE_CLI + "\" " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("primbase_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir / name;
}

std::string write_file(const std::string& name, const std::string& text) {
  const auto p = scratch(name);
  std::ofstream(p) << text;
  return p.string();
}

std::vector<CaseManifestEntry> manifest(const std::string& text) {
  std::istringstream in(text);
  return parse_manifest(in, "t.cases", PRIMBASE_DATA_DIR "/manifests");
}

} // namespace

TEST(Manifest, ParsesRowsAndDisabledRows) {
  const auto m = read_manifest_file(oracle::data("manifests/theorem1_desk.cases"));
  ASSERT_GE(m.size(), 14u);
  std::size_t disabled = 0, evidence = 0;
  for (const auto& e : m) {
    disabled += !e.enabled;
    evidence += !e.certified;
  }
  EXPECT_EQ(disabled, 2u);
  EXPECT_GE(evidence, 3u);
  EXPECT_EQ(m[0].case_id, "m24_natural");
  EXPECT_EQ(m[0].claim, ClaimKind::BaseSizeEq);
  EXPECT_EQ(m[0].claimed_value, "7");
}

TEST(Manifest, RejectsMalformedRows) {
  EXPECT_THROW(manifest("a | b | natural | base_size = | 3 | certified\n"), InputError);
  EXPECT_THROW(manifest("a | b | natural | base_size ~ | 3 | certified | 0\n"), InputError);
  EXPECT_THROW(manifest("a | b | natural | base_size = | 3 | maybe | 0\n"), InputError);
  EXPECT_THROW(manifest("a | b | natural | base_size = | 3 | certified | -4\n"), InputError);
  try {
    manifest("# header\n\nbad row\n");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("t.cases:3"), std::string::npos) << e.what();
  }
}

TEST(RunCase, BaseSizeVerdicts) {
  const auto m = manifest(
      "s6_pgl | ../groups/s6.grp | ../groups/s6_pgl2_5.grp | base_size = | 5 | certified | 0\n"
      "s6_le  | ../groups/s6.grp | ../groups/s6_pgl2_5.grp | base_size <= | 4 | certified | 0\n"
      "m11_ge | ../groups/m11.grp | natural | base_size >= | 4 | certified | 0\n"
      "m12_ev | ../groups/m12.grp | stab:0 | base_size = | 5 | evidence | 20000\n"
      "gone   | ../groups/nothing.grp | natural | base_size = | 5 | certified | 0\n");
  const auto a = run_case(m[0]);
  EXPECT_EQ(a.verdict, Verdict::Pass) << a.observed;
  ASSERT_TRUE(a.certificate.has_value());
  EXPECT_EQ(run_case(m[1]).verdict, Verdict::Fail);
  EXPECT_EQ(run_case(m[2]).verdict, Verdict::Pass);
  const auto ev = run_case(m[3]);
  EXPECT_EQ(ev.verdict, Verdict::Pass);
  EXPECT_FALSE(ev.certificate.has_value());
  const auto gone = run_case(m[4]);
  EXPECT_EQ(gone.verdict, Verdict::Inconclusive);
  ASSERT_FALSE(gone.details.empty());
}

TEST(RunCase, OtherClaims) {
  const auto m = manifest(
      "q  | ../groups/m11.grp | natural | qhat_less_than_1 | 5 | certified | 0\n"
      "q2 | ../groups/m11.grp | natural | qhat_less_than_1 | 2 | certified | 0\n"
      "i  | ../groups/m11.grp | natural | i_r_count | 11=1440 | certified | 0\n"
      "x  | ../queries/a1_borel_index.query | - | chi_polynomial | 1,1 | certified | 0\n"
      "y  | ../queries/a1_borel_index.query | - | chi_polynomial | 1,2 | certified | 0\n");
  EXPECT_EQ(run_case(m[0]).verdict, Verdict::Pass);
  EXPECT_EQ(run_case(m[1]).verdict, Verdict::Fail);
  EXPECT_EQ(run_case(m[2]).verdict, Verdict::Pass);
  EXPECT_EQ(run_case(m[3]).verdict, Verdict::Pass);
  EXPECT_EQ(run_case(m[4]).verdict, Verdict::Fail);
}

TEST(RunCase, ContradictionManifestFails) {
  const auto m = read_manifest_file(oracle::data("manifests/contradiction.cases"));
  const auto doc = run_manifest(m, 1);
  ASSERT_EQ(doc.cases.size(), 1u);
  EXPECT_EQ(doc.cases[0].verdict, Verdict::Fail);
  EXPECT_EQ(doc.exit_code(), 1);
  std::ostringstream os;
  write_report_text(os, doc, "T");
  EXPECT_NE(os.str().find("FAIL"), std::string::npos);
}

TEST(Report, DeterministicApartFromTimestamp) {
  const auto m = manifest("s6 | ../groups/s6.grp | ../groups/s6_pgl2_5.grp | base_size = | 5 | certified | 0\n");
  std::ostringstream a, b;
  write_report_text(a, run_manifest(m, 7), "T");
  write_report_text(b, run_manifest(m, 7), "T");
  EXPECT_EQ(a.str(), b.str());
  const auto j = report_json(run_manifest(m, 7), "T");
  EXPECT_EQ(j["cases"][0]["verdict"], "PASS");
  EXPECT_EQ(j["exit_code"], 0);
}

TEST(Certificates, RoundTripAndTamper) {
  const auto m = manifest(
      "s8 | ../groups/s8.grp | ../groups/s8_s4wrs2.grp | base_size = | 5 | certified | 0\n"
      "i  | ../groups/m11.grp | natural | i_r_count | 2=165 | certified | 0\n"
      "x  | ../queries/a1_borel_index.query | - | chi_polynomial | 1,1 | certified | 0\n");
  for (const auto& e : m) {
    const auto r = run_case(e);
    ASSERT_EQ(r.verdict, Verdict::Pass) << e.case_id;
    ASSERT_TRUE(r.certificate.has_value());
    const auto chk = verify_certificate_text(*r.certificate);
    EXPECT_TRUE(chk.ok) << chk.message;
  }
  auto cert = *run_case(m[0]).certificate;
  const auto pos = cert.find("\nb: 5");
  ASSERT_NE(pos, std::string::npos);
  std::string wrong_b = cert;
  wrong_b.replace(pos, 5, "\nb: 4");
  EXPECT_FALSE(verify_certificate_text(wrong_b).ok);
  const auto tp = cert.find("trace");
  ASSERT_NE(tp, std::string::npos);
  std::string wrong_trace = cert.substr(0, tp) + "trace 1152 1 1 1 1\n";
  EXPECT_FALSE(verify_certificate_text(wrong_trace).ok);
  auto ir = *run_case(m[1]).certificate;
  ir.replace(ir.find("165"), 3, "166");
  EXPECT_FALSE(verify_certificate_text(ir).ok);
  EXPECT_THROW(verify_certificate_text("certificate: nonsense\n"), InputError);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli("order " + oracle::data("groups/m11.grp")).code, 0);
  EXPECT_EQ(cli("order " + oracle::data("groups/missing.grp")).code, 2);
  EXPECT_EQ(cli("--no-such-flag").code, 2);
  EXPECT_EQ(cli("base " + oracle::data("groups/m11.grp")).code, 2);
  EXPECT_EQ(cli("verify " + oracle::data("manifests/contradiction.cases")).code, 1);
}

TEST(Cli, OrderAndBase) {
  const auto o = cli("order " + oracle::data("groups/m12.grp") + " --subgroup stab:0");
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("degree: 12"), std::string::npos) << o.out;
  EXPECT_NE(o.out.find("order: 95040"), std::string::npos) << o.out;
  const auto e = cli("base --exact " + oracle::data("groups/s6.grp") + " --subgroup " + oracle::data("groups/s6_pgl2_5.grp"));
  EXPECT_EQ(e.code, 0);
  EXPECT_NE(e.out.find("b = 5"), std::string::npos) << e.out;
  const auto c7 = write_file("c7.grp", "degree: 7\nname: C7\n1 2 3 4 5 6 0\n");
  const auto g = cli("base --greedy " + c7);
  EXPECT_EQ(g.code, 0);
  EXPECT_NE(g.out.find("b <= 1"), std::string::npos) << g.out;
}

TEST(Cli, CertificateFlagRoundTrip) {
  const auto cert = scratch("m11.cert").string();
  EXPECT_EQ(cli("base --exact " + oracle::data("groups/m11.grp") + " --cert " + cert).code, 0);
  const auto v = cli("--verify " + cert);
  EXPECT_EQ(v.code, 0) << v.out;
  EXPECT_NE(v.out.find("VERIFIED"), std::string::npos);
  std::ifstream in(cert);
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  text.replace(text.find("b: 4"), 4, "b: 3");
  const auto bad = write_file("bad.cert", text);
  const auto r = cli("--verify " + bad);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("REJECTED"), std::string::npos);
}

TEST(Cli, Qhat) {
  const auto s3 = write_file("s3.grp", "degree: 3\nname: S3\n1 0 2\n1 2 0\n");
  const auto r = cli("qhat " + s3 + " --c 2");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("qhat = 1/3"), std::string::npos) << r.out;
  const auto t = cli("qhat --table " + oracle::data("tables/f4q2_fragment.csv") + " --c 5");
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("qhat = 1/8"), std::string::npos) << t.out;
  const auto j = cli("--format json qhat " + s3 + " --c 2");
  EXPECT_EQ(nlohmann::json::parse(j.out)["qhat"], "1/3");
}

TEST(Cli, FprAndClasses) {
  const auto f = cli("fpr " + oracle::data("groups/m11.grp"));
  EXPECT_EQ(f.code, 0) << f.out;
  const auto c = cli("--format json classes " + oracle::data("groups/m11.grp"));
  EXPECT_EQ(c.code, 0);
  EXPECT_EQ(nlohmann::json::parse(c.out)["classes"].size(), 10u);
}

TEST(Cli, WeylChar) {
  const auto r = cli("weylchar " + oracle::data("queries/e6_p16_index.query"));
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("at q = 2: 73518081"), std::string::npos) << r.out;
  const auto c = cli("weylchar " + oracle::data("queries/e6_a5a1_involution.query"));
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.out.find("coefficients (ascending): 4 11 20 28 38 42 41 33 26 16 8 2 1"), std::string::npos) << c.out;
  const auto tw = write_file("tw.query", "type: 2E6\nkind: chi\n");
  EXPECT_EQ(cli("weylchar " + tw).code, 2);
}

TEST(Cli, Witness) {
  const auto s8 = oracle::data("groups/s8.grp");
  const auto h = oracle::data("groups/s8_s4wrs2.grp");
  const auto r = cli("witness " + s8 + " --subgroup " + h + " --k 5 --trials 2000");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("verified |intersection| = 1"), std::string::npos) << r.out;
}

TEST(Cli, VerifyWritesCertificates) {
  const auto dir = scratch("certs");
  const auto mf = write_file("small.cases", "s6 | " + oracle::data("groups/s6.grp") + " | " +
                                                oracle::data("groups/s6_pgl2_5.grp") + " | base_size = | 5 | certified | 0\n");
  const auto r = cli("verify " + mf + " --certs " + dir.string());
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("# generated "), std::string::npos);
  ASSERT_TRUE(fs::exists(dir / "s6.cert"));
  EXPECT_EQ(cli("--verify " + (dir / "s6.cert").string()).code, 0);
}

#include <future>
#include <thread>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qmod/catalog.hpp"
#include "qmod/errors.hpp"
#include "qmod/verify.hpp"

namespace qmod {
namespace {

const Witness& witness(const CheckReport& r, const std::string& prefix) {
  for (const auto& w : r.witnesses) {
    if (w.name.rfind(prefix, 0) == 0) return w;
  }
  throw std::out_of_range("no witness " + prefix);
}

TEST(Eligibility, Reasons) {
  EXPECT_FALSE(ineligibility_reason(curve(27), 2));
  EXPECT_FALSE(ineligibility_reason(curve(27), 5));
  EXPECT_EQ(ineligibility_reason(curve(27), 7), "p not inert in the CM field");
  EXPECT_EQ(ineligibility_reason(curve(27), 3), "p not inert in the CM field");
  EXPECT_EQ(ineligibility_reason(curve(27), 9), "p is not prime");
  EXPECT_EQ(ineligibility_reason(curve(36), 2), "p | N or p < 5");
  EXPECT_EQ(ineligibility_reason(curve(144), 2), "p | N or p < 5");
  EXPECT_FALSE(ineligibility_reason(curve(36), 5));
  EXPECT_FALSE(ineligibility_reason(curve(32), 3));
  EXPECT_EQ(ineligibility_reason(curve(64), 5), "p not inert in the CM field");
}

TEST(CheckValuation, Examples) {
  ExpansionCache cache;
  CheckReport r = check_valuation(curve(27), 2, 1, cache);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.check_id, "check_valuation");
  EXPECT_EQ(witness(r, "C(p^(2m+1))").actual, "-6");
  EXPECT_EQ(witness(r, "v_p").actual, "1");
  CheckReport r5 = check_valuation(curve(27), 5, 1, cache);
  EXPECT_TRUE(r5.passed);
  EXPECT_EQ(witness(r5, "C(p^(2m+1))").actual, "480");
  EXPECT_THROW(check_valuation(curve(27), 7, 0, cache), PreconditionError);
  EXPECT_THROW(check_valuation(curve(36), 2, 0, cache), PreconditionError);
  EXPECT_THROW(check_valuation(curve(27), 2, -1, cache), PreconditionError);
}

TEST(CheckLimit, PassesAndRangeIsRecorded) {
  ExpansionCache cache;
  CheckReport r = check_limit(curve(32), 3, 1, 20, cache);
  EXPECT_TRUE(r.passed) << to_json(r);
  EXPECT_EQ(witness(r, "C(p^(2m+1))").actual, "-12");
  EXPECT_NE(r.notes.find("[0, 21)"), std::string::npos);
  EXPECT_THROW(check_limit(curve(32), 3, 0, 0, cache), PreconditionError);
}

TEST(CheckLimit, SmallerKIsImpliedByLargerK) {
  ExpansionCache cache;
  for (std::int64_t K : {5, 10, 20}) {
    EXPECT_TRUE(check_limit(curve(27), 2, 2, K, cache).passed) << K;
  }
}

TEST(CheckCongruence, Examples) {
  ExpansionCache cache;
  // C27(8) = -6 = -2 C27(2) mod 4.
  CheckReport r = check_congruence(27, 2, 1, cache);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(witness(r, "C(p^(2m+1)) mod").actual, "2");
  // C36(125) = 190 = -5 C36(5) mod 25.
  CheckReport r36 = check_congruence(36, 5, 1, cache);
  EXPECT_TRUE(r36.passed);
  EXPECT_EQ(witness(r36, "C(p^(2m+1))").actual, "190");
  EXPECT_THROW(check_congruence(27, 7, 0, cache), PreconditionError);
  EXPECT_THROW(check_congruence(32, 3, 0, cache), PreconditionError);
}

TEST(CheckHecke, Examples) {
  ExpansionCache cache;
  EXPECT_TRUE(check_hecke_decomposition(27, 2, 1, 30, cache).passed);
  EXPECT_TRUE(check_hecke_decomposition(27, 2, 2, 30, cache).passed);
  EXPECT_TRUE(check_hecke_decomposition(27, 7, 1, 30, cache).passed);
  EXPECT_TRUE(check_hecke_decomposition(36, 5, 1, 30, cache).passed);
  EXPECT_TRUE(check_hecke_decomposition(36, 7, 1, 30, cache).passed);
  EXPECT_THROW(check_hecke_decomposition(27, 3, 1, 30, cache), PreconditionError);
  EXPECT_THROW(check_hecke_decomposition(36, 2, 1, 30, cache), PreconditionError);
}

TEST(CheckThetaPsi, Examples) {
  ExpansionCache cache;
  CheckReport r = check_theta_psi(27, 5, 30, 1, cache);
  EXPECT_TRUE(r.passed) << to_json(r);
  EXPECT_EQ(r.witnesses.size(), 4u);
  EXPECT_TRUE(check_theta_psi(36, 11, 30, 0, cache).passed);
  EXPECT_THROW(check_theta_psi(27, 7, 30, 0, cache), PreconditionError);
  EXPECT_THROW(check_theta_psi(36, 7, 30, 0, cache), PreconditionError);
}

TEST(CheckResidue, Examples) {
  ExpansionCache cache;
  CheckReport r = check_residue(36, 5, 10, cache);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(witness(r, "C_p").actual, "3");
  EXPECT_TRUE(check_residue(27, 2, 10, cache).passed);
}

TEST(CheckNondivisibility, AllEligiblePrimesBelow50) {
  ExpansionCache cache;
  for (const auto& c : curves()) {
    for (std::int64_t p = 2; p <= 50; ++p) {
      if (ineligibility_reason(c, p)) continue;
      EXPECT_TRUE(check_nondivisibility(c, p, cache).passed) << c.level << " " << p;
    }
  }
}

TEST(CheckTwist, DefaultsAndCustomSamples) {
  ExpansionCache cache;
  EXPECT_TRUE(check_twist_consistency(200, cache).passed);
  std::pair<std::int64_t, int> samples[] = {{3, 1}, {11, 0}};
  CheckReport r = check_twist_consistency(100, samples, 20, cache);
  EXPECT_TRUE(r.passed);
  // two recipe comparisons and two samples, each with two witnesses
  EXPECT_EQ(r.witnesses.size(), 8u);
}

TEST(CheckSupport, AllCurves) {
  ExpansionCache cache;
  for (const auto& c : curves()) {
    CheckReport r = check_support(c, 300, cache);
    EXPECT_TRUE(r.passed) << to_json(r);
  }
}

TEST(Report, JsonShape) {
  ExpansionCache cache;
  CheckReport r = check_valuation(curve(27), 2, 0, cache);
  auto j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j["check_id"], "check_valuation");
  EXPECT_EQ(j["params"]["p"], "2");
  EXPECT_EQ(j["passed"], true);
  EXPECT_TRUE(j["expected"].is_object());
  EXPECT_TRUE(j["actual"].is_object());
  EXPECT_EQ(j["actual"]["C(p^(2m+1))"], "-1");
  EXPECT_TRUE(j.contains("notes"));

  ReportBundle b;
  b.reports.push_back(r);
  b.skipped.push_back({36, 2, std::nullopt, "p | N or p < 5"});
  auto jb = nlohmann::json::parse(to_json(b));
  EXPECT_EQ(jb["summary"]["passed"], "1");
  EXPECT_EQ(jb["summary"]["skipped"], "1");
  EXPECT_EQ(b.summary_line(), "PASSED 1/1 (skipped 1)");
  EXPECT_EQ(jb["skipped"][0]["reason"], "p | N or p < 5");
}

TEST(Report, FailureIsNotMasked) {
  CheckReport r;
  r.check_id = "x";
  r.inform("a", "1");
  r.finalize();
  EXPECT_FALSE(r.passed);  // nothing asserted
  r.expect("b", "1", "2", false);
  r.finalize();
  EXPECT_FALSE(r.passed);
}

TEST(Determinism, RepeatedChecksSerializeIdentically) {
  ExpansionCache a;
  ExpansionCache b(5000);
  EXPECT_EQ(to_json(check_limit(curve(64), 7, 0, 20, a)), to_json(check_limit(curve(64), 7, 0, 20, b)));
  EXPECT_EQ(to_json(check_theta_psi(27, 2, 20, 2, a)), to_json(check_theta_psi(27, 2, 20, 2, b)));
}

TEST(Cache, ReusesExpansions) {
  ExpansionCache cache;
  QSeries big = cache.get("G27", 500);
  EXPECT_EQ(cache.expansions(), 1u);
  EXPECT_EQ(cache.get("G27", 100), big.truncated(100));
  EXPECT_EQ(cache.expansions(), 1u);
  EXPECT_EQ(cache.cached_precision("G27"), 500);
  EXPECT_FALSE(cache.cached_precision("G32"));
  (void)cache.get("G27", 600);
  EXPECT_EQ(cache.expansions(), 2u);
  EXPECT_EQ(cache.get("G27", 600), catalog_form("G27", 600));
}

TEST(Cache, TwistBaseComesFromCache) {
  ExpansionCache cache;
  QSeries G64 = cache.get("G64", 300);
  EXPECT_EQ(G64, catalog_form("G64", 300));
  EXPECT_EQ(cache.cached_precision("G32"), 300);
}

TEST(Cache, CeilingAndUnknownNames) {
  ExpansionCache cache(100);
  EXPECT_NO_THROW(cache.get("g27", 100));
  EXPECT_THROW(cache.get("g27", 101), PrecisionError);
  EXPECT_THROW(cache.get("nope", 10), UnknownFormError);
}

TEST(Cache, ConcurrentRequestsExpandOnce) {
  ExpansionCache cache;
  std::vector<std::future<QSeries>> futures;
  for (int i = 0; i < 8; ++i) {
    futures.push_back(std::async(std::launch::async, [&cache] { return cache.get("G36", 20000); }));
  }
  QSeries first = futures[0].get();
  for (std::size_t i = 1; i < futures.size(); ++i) EXPECT_EQ(futures[i].get(), first);
  EXPECT_EQ(cache.expansions(), 1u);
}

}  // namespace
}  // namespace qmod

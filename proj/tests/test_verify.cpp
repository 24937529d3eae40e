#include <sstream>

#include "doctest.h"
#include "termdag/identity.hpp"
#include "termdag/verify.hpp"

using namespace termdag;

TEST_CASE("describe_term") {
  CHECK(describe_term(mk_one()) == "1");
  CHECK(describe_term(tower(1)) == "(1 1)");
  CHECK(describe_term(mk_add(tower(1), mk_one())) == "((1 1) 1)");
  CHECK(describe_term(tower(20)).find("tree") != std::string::npos);
}

TEST_CASE("is_maximally_shared") {
  CHECK(is_maximally_shared(tower(6)));
  CHECK_FALSE(is_maximally_shared(twin_disjoint(2)));
  CHECK_FALSE(is_maximally_shared(mk_add(mk_one(), mk_one())));
  CHECK(is_maximally_shared(share_common(twin_disjoint(6))));
}

TEST_CASE("verify suite passes") {
  VerifyOptions options;
  options.iterations = 30;
  const VerifyReport report = run_verify(options);
  CHECK(report.ok());
  CHECK(report.checks > 0);
  CHECK(report.dual_checks > 0);
  std::ostringstream os;
  print_report(os, report);
  CHECK(os.str().find("OK") != std::string::npos);
}

TEST_CASE("verify suite with no iterations") {
  VerifyOptions options;
  options.iterations = 0;
  const VerifyReport report = run_verify(options);
  CHECK(report.ok());
}

TEST_CASE("injected fault is reported with a counterexample") {
  VerifyOptions options;
  options.iterations = 5;
  options.inject_fault = true;
  const VerifyReport report = run_verify(options);
  REQUIRE_FALSE(report.ok());
  bool dual = false;
  for (const Violation& v : report.violations) {
    if (v.check == "dual_check") dual = true;
    CHECK_FALSE(v.counterexample.empty());
  }
  CHECK(dual);
  CHECK_FALSE(primitive_context().inject_fault);
  CHECK(purity_mode() == PurityMode::Accelerated);
}

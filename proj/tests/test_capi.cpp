#include <doctest.h>

#include <string>
#include <thread>

#include "tsdlink/tsdlink.h"

namespace {

bool contains(const char* haystack, const char* needle) {
  return haystack != nullptr && std::string(haystack).find(needle) != std::string::npos;
}

/// Frees whatever the test allocated.
struct Handles {
  tsdlink_algebra* algebra = nullptr;
  tsdlink_report* report = nullptr;
  ~Handles() {
    tsdlink_report_free(report);
    tsdlink_algebra_free(algebra);
  }
  void reset_report() {
    tsdlink_report_free(report);
    report = nullptr;
  }
};

std::string path(const char* name) { return std::string(TSDLINK_ALGEBRA_DIR) + "/" + name + ".json"; }
std::string fixture(const char* name) { return std::string(TSDLINK_FIXTURE_DIR) + "/" + name + ".json"; }

}  // namespace

TEST_CASE("loading and metadata") {
  Handles h;
  REQUIRE(tsdlink_algebra_load_file(path("nambu4").c_str(), &h.algebra) == TSDLINK_OK);
  CHECK(std::string(tsdlink_algebra_name(h.algebra)) == "nambu4");
  CHECK(tsdlink_algebra_dim(h.algebra) == 4);
  CHECK(tsdlink_algebra_arity(h.algebra) == 3);
  CHECK(std::string(tsdlink_version()).size() > 0);
  CHECK(std::string(tsdlink_status_name(TSDLINK_ERR_PARSE)).size() > 0);

  Handles b;
  REQUIRE(tsdlink_algebra_builtin("abelian3", &b.algebra) == TSDLINK_OK);
  CHECK(tsdlink_algebra_dim(b.algebra) == 3);
  CHECK(tsdlink_algebra_arity(b.algebra) == 2);
}

TEST_CASE("errors come back as status codes") {
  tsdlink_algebra* a = nullptr;
  CHECK(tsdlink_algebra_load_file("/no/such/file.json", &a) == TSDLINK_ERR_IO);
  CHECK(a == nullptr);
  CHECK(std::string(tsdlink_last_error()).size() > 0);
  CHECK(tsdlink_algebra_load_json("{", &a) == TSDLINK_ERR_PARSE);
  CHECK(tsdlink_algebra_load_file(fixture("bad_schema").c_str(), &a) == TSDLINK_ERR_SCHEMA);
  CHECK(tsdlink_algebra_load_json("{\"name\": 1}", &a) == TSDLINK_ERR_SCHEMA);
  CHECK(tsdlink_algebra_builtin("nonsense", &a) == TSDLINK_ERR_INVALID_ARGUMENT);
  CHECK(tsdlink_algebra_builtin(nullptr, &a) == TSDLINK_ERR_INVALID_ARGUMENT);
  CHECK(tsdlink_algebra_builtin("sl2", nullptr) == TSDLINK_ERR_INVALID_ARGUMENT);

  Handles h;
  REQUIRE(tsdlink_algebra_builtin("sl2", &h.algebra) == TSDLINK_OK);
  CHECK(tsdlink_invariant(h.algebra, 2, "s1 q", nullptr, 0, &h.report) == TSDLINK_ERR_PARSE);
  CHECK(contains(tsdlink_last_error(), "column 4"));
  CHECK(tsdlink_invariant(h.algebra, 2, "s2", nullptr, 0, &h.report) == TSDLINK_ERR_INVALID_ARGUMENT);
  CHECK(tsdlink_invariant(h.algebra, 3, "s1", nullptr, 100, &h.report) == TSDLINK_ERR_DIMENSION_CAP);
  CHECK(tsdlink_invariant(nullptr, 2, "s1", nullptr, 0, &h.report) == TSDLINK_ERR_INVALID_ARGUMENT);
  CHECK(tsdlink_check(h.algebra, "filippov", &h.report) == TSDLINK_ERR_INVALID_ARGUMENT);
  CHECK(tsdlink_check(h.algebra, "nonsense", &h.report) == TSDLINK_ERR_INVALID_ARGUMENT);
  CHECK(h.report == nullptr);
  CHECK(tsdlink_selftest(9, &h.report) == TSDLINK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("last error is per thread") {
  tsdlink_algebra* a = nullptr;
  REQUIRE(tsdlink_algebra_builtin("nonsense", &a) != TSDLINK_OK);
  std::string other = "unset";
  std::thread([&] { other = tsdlink_last_error(); }).join();
  CHECK(other.empty());
}

TEST_CASE("invariant values") {
  Handles h;
  REQUIRE(tsdlink_algebra_builtin("sl2", &h.algebra) == TSDLINK_OK);
  REQUIRE(tsdlink_invariant(h.algebra, 2, "s1 s1 s1", nullptr, 0, &h.report) == TSDLINK_OK);
  CHECK(tsdlink_report_passed(h.report) == 1);
  CHECK(std::string(tsdlink_report_value(h.report)) == "16");
  CHECK(contains(tsdlink_report_text(h.report), "value: 16"));
  CHECK(contains(tsdlink_report_json(h.report), "\"value\":\"16\""));
  h.reset_report();

  const long framings[] = {1, -1};
  REQUIRE(tsdlink_invariant(h.algebra, 2, "s1 s1", framings, 0, &h.report) == TSDLINK_OK);
  CHECK(std::string(tsdlink_report_value(h.report)) == "256");
  CHECK(contains(tsdlink_report_text(h.report), "(1,-1)"));
  h.reset_report();

  Handles n;
  REQUIRE(tsdlink_algebra_load_file(path("nambu4").c_str(), &n.algebra) == TSDLINK_OK);
  REQUIRE(tsdlink_invariant(n.algebra, 2, "s1 s1", nullptr, 0, &n.report) == TSDLINK_OK);
  CHECK(std::string(tsdlink_report_value(n.report)) == "625");
}

TEST_CASE("checks and validation") {
  Handles h;
  REQUIRE(tsdlink_algebra_builtin("heisenberg3", &h.algebra) == TSDLINK_OK);
  REQUIRE(tsdlink_validate(h.algebra, &h.report) == TSDLINK_OK);
  CHECK(tsdlink_report_passed(h.report) == 1);
  CHECK(tsdlink_report_value(h.report) == nullptr);
  CHECK(contains(tsdlink_report_text(h.report), "Jacobi"));
  h.reset_report();
  for (const char* p : {"jacobi", "tsd", "coalgebra", "reversibility", "mixed", "ybe", "slide", "fb-relations"}) {
    INFO(p);
    REQUIRE(tsdlink_check(h.algebra, p, &h.report) == TSDLINK_OK);
    CHECK(tsdlink_report_passed(h.report) == 1);
    CHECK(contains(tsdlink_report_json(h.report), "\"passed\":true"));
    h.reset_report();
  }

  Handles broken;
  REQUIRE(tsdlink_algebra_load_file(fixture("sl2_broken").c_str(), &broken.algebra) == TSDLINK_OK);
  REQUIRE(tsdlink_validate(broken.algebra, &broken.report) == TSDLINK_OK);
  CHECK(tsdlink_report_passed(broken.report) == 0);
  CHECK(contains(tsdlink_report_json(broken.report), "\"passed\":false"));
}

TEST_CASE("Markov runs") {
  Handles h;
  REQUIRE(tsdlink_algebra_builtin("sl2", &h.algebra) == TSDLINK_OK);
  tsdlink_markov_options options{4, 9, 0, TSDLINK_STABILIZE_OFF, 0};
  REQUIRE(tsdlink_markov(h.algebra, 2, "s1 s1 s1", &options, &h.report) == TSDLINK_OK);
  CHECK(tsdlink_report_passed(h.report) == 1);
  CHECK(std::string(tsdlink_report_value(h.report)) == "16");
  const std::string first = tsdlink_report_text(h.report);
  h.reset_report();
  REQUIRE(tsdlink_markov(h.algebra, 2, "s1 s1 s1", &options, &h.report) == TSDLINK_OK);
  CHECK(first == tsdlink_report_text(h.report));
  h.reset_report();
  options.trials = 0;
  CHECK(tsdlink_markov(h.algebra, 2, "s1", &options, &h.report) == TSDLINK_ERR_INVALID_ARGUMENT);
}

TEST_CASE("one self-test criterion") {
  Handles h;
  REQUIRE(tsdlink_selftest(3, &h.report) == TSDLINK_OK);
  CHECK(tsdlink_report_passed(h.report) == 1);
  CHECK(contains(tsdlink_report_text(h.report), "criterion 3 [PASS]"));
}

TEST_CASE("freeing NULL is a no-op") {
  tsdlink_algebra_free(nullptr);
  tsdlink_report_free(nullptr);
}

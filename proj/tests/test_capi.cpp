#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>
#include <padlift.h>

using nlohmann::json;

TEST_CASE("run job round trip") {
  const char* job = R"({"command":"certify","polynomial":"1 - z","p":2,)"
                    R"("depth":1,"graph":{"successors":[1,0]}})";
  char* report = nullptr;
  int status = padlift_run_job(job, &report);
  CHECK(status == PADLIFT_OK);
  REQUIRE(report != nullptr);
  json rep = json::parse(report);
  CHECK(rep["exact"] == true);
  CHECK(std::string(padlift_last_error()).empty());
  // identical jobs produce identical report strings
  char* again = nullptr;
  CHECK(padlift_run_job(job, &again) == PADLIFT_OK);
  CHECK(std::strcmp(report, again) == 0);
  padlift_string_free(report);
  padlift_string_free(again);
}

TEST_CASE("failure statuses surface through the boundary") {
  char* report = nullptr;
  const char* failing = R"({"command":"certify","polynomial":"z + 1","p":2,)"
                        R"("depth":1,"graph":{"successors":[0,1]}})";
  CHECK(padlift_run_job(failing, &report) == PADLIFT_CERTIFICATION_FAILED);
  REQUIRE(report != nullptr);
  CHECK(json::parse(report)["exact"] == false);
  padlift_string_free(report);

  report = nullptr;
  const char* big = R"({"command":"tower","polynomial":"z","p":2,)"
                    R"("max_n":10,"size_limit":16})";
  CHECK(padlift_run_job(big, &report) == PADLIFT_SIZE_LIMIT);
  padlift_string_free(report);
}

TEST_CASE("invalid input reports an error message") {
  char* report = nullptr;
  CHECK(padlift_run_job("this is not json", &report) == PADLIFT_INVALID_INPUT);
  CHECK(std::string(padlift_last_error()).find("JSON") != std::string::npos);
  padlift_string_free(report);

  report = nullptr;
  CHECK(padlift_run_job(nullptr, &report) == PADLIFT_INVALID_INPUT);
  CHECK(!std::string(padlift_last_error()).empty());

  report = nullptr;
  CHECK(padlift_run_job(R"({"command":"nope"})", &report) ==
        PADLIFT_INVALID_INPUT);
  if (report) {
    CHECK(json::parse(report).contains("error"));
    padlift_string_free(report);
  }
}

TEST_CASE("graph handles") {
  const long succ[4] = {1, 2, 0, 3};
  padlift_graph* g = nullptr;
  REQUIRE(padlift_graph_create(succ, 4, &g) == PADLIFT_OK);
  REQUIRE(g != nullptr);
  CHECK(padlift_graph_size(g) == 4);
  CHECK(padlift_graph_successor(g, 0) == 1);
  CHECK(padlift_graph_successor(g, 3) == 3);
  CHECK(padlift_graph_successor(g, 4) == -1);
  CHECK(padlift_graph_successor(g, -1) == -1);
  char* dot = nullptr;
  REQUIRE(padlift_graph_to_dot(g, "h", &dot) == PADLIFT_OK);
  CHECK(std::string(dot).find("digraph \"h\"") == 0);
  CHECK(std::string(dot).find("3 -> 3;") != std::string::npos);
  padlift_string_free(dot);
  padlift_graph_destroy(g);

  const long bad[2] = {0, 5};
  padlift_graph* gb = nullptr;
  CHECK(padlift_graph_create(bad, 2, &gb) == PADLIFT_INVALID_INPUT);
  CHECK(gb == nullptr);
  CHECK(padlift_graph_create(succ, 4, nullptr) == PADLIFT_INVALID_INPUT);
  padlift_graph_destroy(nullptr); // must be a no-op
}

TEST_CASE("version string") {
  std::string v = padlift_version();
  CHECK(v.find('.') != std::string::npos);
}

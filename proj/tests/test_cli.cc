/*
 * Copyright (c) 2026, The ctsf Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ctsf_cli/cli.hh"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run ctsf_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ctsf");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = ctsf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ctsf_test_" + name);
}

}  // namespace

TEST_CASE("explore reports stats") {
  Run r = ctsf_run({"explore", "--n", "1", "--values", "4"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  const json& g = j["graphs"]["representative"];
  CHECK(g["states"].get<int>() >= 1);
  CHECK(g["decided_values"] == json{{"4", 1}});
  CHECK(g["truncated"] == false);
}

TEST_CASE("explore in both modes") {
  Run r = ctsf_run({"explore", "--values", "5,7", "--budget", "0", "--mode", "both"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["identical"] == true);
  CHECK(j["graphs"]["calculus"]["states"] == j["graphs"]["representative"]["states"]);
}

TEST_CASE("explore writes dot") {
  Run r = ctsf_run({"explore", "--n", "2", "--values", "5,7", "--format", "dot"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("digraph lts {", 0) == 0);
  CHECK(r.out.find("}\n") == r.out.size() - 2);
  CHECK(r.out.find("->") != std::string::npos);
  CHECK(std::count(r.out.begin(), r.out.end(), '"') % 2 == 0);
  // Stats go to the diagnostic stream.
  CHECK(json::parse(r.err)["graphs"]["representative"]["states"] == 249);
}

TEST_CASE("usage errors exit 1") {
  CHECK(ctsf_run({"explore", "--n", "2", "--values", "5,7", "--budget", "2"}).code == 1);
  CHECK(ctsf_run({"explore", "--n", "3", "--values", "5,7"}).code == 1);
  CHECK(ctsf_run({"explore", "--values", "0"}).code == 1);
  CHECK(ctsf_run({"explore", "--mode", "quantum"}).code == 1);
  CHECK(ctsf_run({"explore", "--format", "yaml"}).code == 1);
  CHECK(ctsf_run({"explore", "--mutate", "everything"}).code == 1);
  CHECK(ctsf_run({"verify", "--checks", "vibes"}).code == 1);
  CHECK(ctsf_run({"frobnicate"}).code == 1);
  CHECK(ctsf_run({}).code == 1);
  Run bad = ctsf_run({"explore", "--n", "2", "--values", "5,7", "--budget", "2"});
  CHECK_FALSE(bad.err.empty());
  CHECK(bad.out.empty());
}

TEST_CASE("the state bound exits 2") {
  Run r = ctsf_run({"explore", "--values", "5,7", "--max-states", "10"});
  CHECK(r.code == 2);
  CHECK(json::parse(r.out)["graphs"]["representative"]["truncated"] == true);
  CHECK(ctsf_run({"verify", "--values", "5,7", "--max-states", "10"}).code == 2);
}

TEST_CASE("verify passes on the correct system") {
  Run one = ctsf_run({"verify", "--n", "1"});
  REQUIRE(one.code == 0);
  json j = json::parse(one.out);
  CHECK(j["passed"] == true);
  std::vector<std::string> names;
  for (const auto& c : j["checks"]) names.push_back(c["name"]);
  for (const char* n : {"correspondence", "confluence", "roundtrip", "normal-form", "congruence", "validity",
                        "agreement", "termination", "bisim"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  Run two = ctsf_run({"verify", "--values", "5,7", "--format", "text"});
  CHECK(two.code == 0);
  CHECK(two.out.find("FAIL") == std::string::npos);
  CHECK(two.out.find("PASS bisim") != std::string::npos);
}

TEST_CASE("verify returns the bisimulation relation") {
  Run r = ctsf_run({"verify", "--values", "4", "--checks", "bisim"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  const json* bisim = nullptr;
  for (const auto& c : j["checks"]) {
    if (c["name"] == "bisim") bisim = &c;
  }
  REQUIRE(bisim);
  CHECK((*bisim)["passed"] == true);
  CHECK((*bisim)["relation"].is_array());
  CHECK((*bisim)["relation"].size() == 2);
}

TEST_CASE("verify fails with a trace under a mutation") {
  Run r = ctsf_run({"verify", "--values", "5,7", "--mutate", "no-ti-protection"});
  REQUIRE(r.code == 3);
  json j = json::parse(r.out);
  CHECK(j["passed"] == false);
  bool traced = false;
  for (const auto& c : j["checks"]) {
    if (c["passed"] == true) continue;
    for (const char* key : {"failures", "sound_failures", "complete_failures"}) {
      if (!c.contains(key)) continue;
      for (const auto& f : c[key]) traced = traced || !f["trace"].empty();
    }
  }
  CHECK(traced);
}

TEST_CASE("verify output is byte-stable") {
  std::vector<std::string> args{"verify", "--values", "5,7", "--budget", "0"};
  Run a = ctsf_run(args), b = ctsf_run(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  Run c = ctsf_run({"verify", "--values", "5,7", "--budget", "0", "--threads", "1"});
  CHECK(c.out == a.out);
}

TEST_CASE("trace") {
  SUBCASE("an empty schedule lists the initial representatives") {
    Run r = ctsf_run({"trace", "--values", "5,7"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("ti 1") != std::string::npos);
    CHECK(r.out.find("ti 2") != std::string::npos);
  }
  SUBCASE("the full n=1 run ends at ok") {
    Run r = ctsf_run({"trace", "--values", "4", "--schedule", "SR2'(q=1,p=1);SRW1(i=1)"});
    REQUIRE(r.code == 0);
    std::string last = r.out.substr(r.out.rfind("step 2"));
    CHECK(last.find("wrap (0, 4, 1)") != std::string::npos);
  }
  SUBCASE("calculus mode names calculus rules") {
    Run r = ctsf_run({"trace", "--values", "4", "--mode", "calculus", "--schedule", "Com(b[1,1])"});
    CHECK(r.code == 0);
  }
  SUBCASE("a step that is not enabled") {
    Run r = ctsf_run({"trace", "--values", "4", "--schedule", "SRW1(i=1)"});
    CHECK(r.code == 1);
    CHECK(r.err.find("StepNotEnabled") != std::string::npos);
    CHECK(r.err.find("SR2'(q=1,p=1)") != std::string::npos);
  }
}

TEST_CASE("config file precedence") {
  auto path = temp_file("config.json");
  {
    std::ofstream f(path);
    f << R"({"values": [5, 7], "budget": 0, "format": "text"})";
  }
  Run from_file = ctsf_run({"explore", "--config", path.string()});
  REQUIRE(from_file.code == 0);
  CHECK(from_file.out.rfind("representative:", 0) == 0);

  Run flag_wins = ctsf_run({"explore", "--config", path.string(), "--format", "json"});
  REQUIRE(flag_wins.code == 0);
  json j = json::parse(flag_wins.out);
  CHECK(j["config"]["budget"] == 0);
  CHECK(j["config"]["values"] == json{5, 7});

  Run budget_flag = ctsf_run({"explore", "--config", path.string(), "--format", "json", "--budget", "1"});
  CHECK(json::parse(budget_flag.out)["config"]["budget"] == 1);

  {
    std::ofstream f(path);
    f << R"({"colour": "blue"})";
  }
  CHECK(ctsf_run({"explore", "--config", path.string()}).code == 1);
  CHECK(ctsf_run({"explore", "--config", "/nonexistent/ctsf.json"}).code == 1);
  std::filesystem::remove(path);
}

TEST_CASE("output file") {
  auto path = temp_file("out.dot");
  Run r = ctsf_run({"explore", "--values", "4", "--format", "dot", "--output", path.string()});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(path);
  std::stringstream s;
  s << f.rdbuf();
  CHECK(s.str().rfind("digraph lts {", 0) == 0);
  std::filesystem::remove(path);
}

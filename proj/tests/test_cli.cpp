#include <doctest.h>

#include "cli/commands.hpp"

#include <polya/errors.hpp>

#include <cstdlib>
#include <regex>
#include <set>

using namespace polya;
using namespace polya::cli;

namespace {

int run_binary(const std::string& args) {
    std::string cmd = std::string(POLYA_CLI_BINARY) + " " + args + " > /dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("quad --d 10 --oracle: agreement and pinned fields") {
    CommandResult r = cmd_quad({Int(10), true}, {});
    CHECK(r.exit_code == 0);
    const Json& j = r.report.body;
    CHECK(j["field"]["disc"] == "40");
    CHECK(j["unit"]["x"] == "3");
    CHECK(j["unit"]["norm"] == -1);
    CHECK(j["hilbert_polya_order"] == "2");
    CHECK(j["oracle"]["order"] == "2");
    CHECK(j["agree"] == true);
}

TEST_CASE("quad --d 2: the paper's unit") {
    CommandResult r = cmd_quad({Int(2), false}, {});
    const Json& j = r.report.body;
    CHECK(j["unit"]["x"] == "1");
    CHECK(j["unit"]["y"] == "1");
    CHECK(j["unit"]["denom"] == 1);
    CHECK(j["unit"]["norm"] == -1);
    CHECK(j["hilbert_polya_order"] == "1");
}

TEST_CASE("golden JSON: quad --d 10 --oracle byte-stable across runs") {
    CommandResult a = cmd_quad({Int(10), true}, {});
    CommandResult b = cmd_quad({Int(10), true}, {});
    CHECK(render_json(a.report.body) == render_json(b.report.body));

    // pinned golden body
    const std::string expected = R"({
  "command": "quad",
  "inputs": {
    "d": "10",
    "oracle": true
  },
  "field": {
    "d": "10",
    "disc": "40",
    "ramified": [
      "2",
      "5"
    ],
    "r": 2
  },
  "unit": {
    "x": "3",
    "y": "1",
    "denom": 1,
    "norm": -1,
    "period": 1
  },
  "a_value": "1",
  "a_class": "1",
  "hilbert_polya_order": "2",
  "oracle": {
    "order": "2",
    "principal_subsets": [
      0,
      3
    ]
  },
  "agree": true,
  "provenance_notes": []
}
)";
    CHECK(render_json(a.report.body) == expected);
}

TEST_CASE("human output shows no number the JSON lacks") {
    for (const CommandResult& r :
         {cmd_quad({Int(34), true}, {}), cmd_biquad({Int(2), Int(17)}, {})}) {
        std::string human = render_human(r.report.body);
        std::string json = render_json(r.report.body);
        std::regex num("[0-9]+");
        for (auto it = std::sregex_iterator(human.begin(), human.end(), num);
             it != std::sregex_iterator(); ++it) {
            CHECK(json.find(it->str()) != std::string::npos);
        }
    }
}

TEST_CASE("biquad commands: known Polya fields") {
    CommandResult r = cmd_biquad({Int(2), Int(3)}, {});
    CHECK(r.report.body["po_order"] == "1");
    CHECK(r.report.body["h1_order"] == "8");
    CommandResult s = cmd_biquad({Int(2), Int(4097)}, {});
    CHECK(s.report.body["po_order"] == "2");
    CHECK(s.report.body["rank2"] == 1);
}

TEST_CASE("find-primes: trotter pattern and explicit signs") {
    FindPrimesOptions fp;
    fp.t = 3;
    fp.pattern = "trotter";
    CommandResult r = cmd_find_primes(fp, {});
    CHECK(r.report.body["tuple"]["primes"][0]["p"] == "17");
    CHECK(r.report.body["tuple"]["primes"][1]["p"] == "241");
    CHECK(r.report.body["tuple"]["primes"][2]["p"] == "2417");
    CHECK(r.report.body["trotter_applies"] == true);

    FindPrimesOptions bad;
    bad.t = 2;
    bad.signs = "bogus";
    CHECK_THROWS_AS(cmd_find_primes(bad, {}), invalid_input);

    FindPrimesOptions both;
    both.t = 2;
    both.signs = "-1";
    both.pattern = "trotter";
    CHECK_THROWS_AS(cmd_find_primes(both, {}), invalid_input);
}

TEST_CASE("family command: two disjoint t = 2 instances") {
    FamilyOptions fam;
    fam.t = 2;
    fam.count = 2;
    CommandResult r = cmd_family(fam, {});
    CHECK(r.exit_code == 0);
    const Json& j = r.report.body;
    CHECK(j["all_pass"] == true);
    REQUIRE(j["instances"].size() == 2);
    CHECK(j["instances"][0]["P"] == "4097");
    std::set<std::string> first, second;
    for (const auto& p : j["instances"][0]["tuple"]["primes"]) first.insert(p["p"]);
    for (const auto& p : j["instances"][1]["tuple"]["primes"]) second.insert(p["p"]);
    for (const std::string& p : second) CHECK(first.count(p) == 0);
    CHECK(!r.report.csv.empty());
}

TEST_CASE("verify-hilbert: range handling, CSV, and thread determinism") {
    CommandResult one = cmd_verify_hilbert({"2..2"}, {});
    CHECK(one.report.body["fields_checked"] == 2); // d = 2 and d = -2
    CHECK(one.report.body["all_agree"] == true);
    CHECK(one.report.csv.rfind("d,hilbert,oracle,agree\n", 0) == 0);

    CHECK_THROWS_AS(cmd_verify_hilbert({"0..1"}, {}), invalid_input);
    CHECK_THROWS_AS(cmd_verify_hilbert({"17"}, {}), invalid_input);

    CommonOptions four;
    four.threads = 4;
    CommandResult a = cmd_verify_hilbert({"2..80"}, {});
    CommandResult b = cmd_verify_hilbert({"2..80"}, four);
    Json ja = a.report.body, jb = b.report.body;
    ja["inputs"].erase("threads");
    jb["inputs"].erase("threads");
    CHECK(ja == jb);
    CHECK(a.report.csv == b.report.csv);
}

TEST_CASE("binary exit codes: 0 ok, 1 failure, 2 invalid") {
    CHECK(run_binary("quad --d 10") == 0);
    CHECK(run_binary("quad --d 12") == 2);          // not squarefree
    CHECK(run_binary("biquad --m1 2 --m2 2") == 2); // not distinct
    CHECK(run_binary("family --t 1") == 2);
    CHECK(run_binary("find-primes --t 2 --signs bogus") == 2);
    CHECK(run_binary("find-primes --t 2 --signs -1 --limit 1") == 1); // exhausted
    CHECK(run_binary("verify-hilbert --range 0..1") == 2);
    CHECK(run_binary("nonsense") == 2);
    CHECK(run_binary("--help") == 0);
    CHECK(run_binary("quad --d 10 --csv") == 2); // csv is for verify commands
}

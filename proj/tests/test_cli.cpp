#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "orbitlab/io.hpp"

using namespace orbitlab;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

int run(const std::string& args, std::string* output = nullptr) {
    std::string out_path = std::string(ORBITLAB_BIN) + ".out.tmp";
    std::string cmd = std::string(ORBITLAB_BIN) + " " + args + " > " + out_path + " 2>&1";
    int status = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        *output = ss.str();
    }
    std::remove(out_path.c_str());
    if (status == -1) return -1;
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("compare exit codes reflect the verdict") {
    CHECK(run("compare --topology norm " + fixture("iii_square.op") + " " +
              fixture("iii_split.op")) == 0);
    CHECK(run("compare --topology norm " + fixture("iii_square.op") + " " +
              fixture("iii_half.op")) == 1);
    CHECK(run("compare --topology strong " + fixture("iii_square.op") + " " +
              fixture("iii_split.op")) == 0);
    CHECK(run("compare --topology norm " + fixture("ii1_segment.op") + " " +
              fixture("ii1_atoms.op")) == 1);
}

TEST_CASE("membership is ordered") {
    CHECK(run("member " + fixture("iii_half.op") + " " + fixture("iii_square.op")) == 0);
    CHECK(run("member " + fixture("iii_square.op") + " " + fixture("iii_half.op")) == 1);
}

TEST_CASE("classifier subcommands") {
    CHECK(run("small " + fixture("ii1_atoms.op")) == 0);
    CHECK(run("small " + fixture("iiinf_block.op")) == 1);
    CHECK(run("closedness " + fixture("ii1_atoms.op")) == 0);
    CHECK(run("closedness " + fixture("iiinf_block.op")) == 1);
    CHECK(run("essential " + fixture("iiinf_scalar.op")) == 0);
    CHECK(run("central-meet " + fixture("iiinf_scalar.op")) == 0);
}

TEST_CASE("matrix subcommands") {
    CHECK(run("delta " + fixture("mat3_a.op") + " " + fixture("mat3_b.op")) == 0);
    CHECK(run("dist --restarts 1 " + fixture("mat3_a.op") + " " + fixture("mat3_b.op")) == 0);
    CHECK(run("construct --mesh 0.25 " + fixture("mat3_a.op") + " " + fixture("mat3_b.op")) ==
          0);
    CHECK(run("construct --mesh 0.25 " + fixture("mat3_a.op") + " " + fixture("mat3_c.op")) ==
          1);
}

TEST_CASE("errors exit with code 2 and a diagnostic") {
    std::string out;
    CHECK(run("essential " + fixture("bad_syntax.op"), &out) == 2);
    CHECK(out.find("line 2") != std::string::npos);
    CHECK(run("essential /nonexistent.op") == 2);
    CHECK(run("delta " + fixture("mat3_a.op") + " " + fixture("ii1_atoms.op")) == 2);
    CHECK(run("member " + fixture("ii1_atoms.op") + " " + fixture("iii_square.op")) == 2);
}

TEST_CASE("json reports round-trip and their witnesses replay") {
    std::string out;
    CHECK(run("--json compare --topology norm " + fixture("ii1_segment.op") + " " +
                  fixture("ii1_atoms.op"),
              &out) == 1);
    auto j = nlohmann::json::parse(out);
    CHECK(j["schema"] == 1);
    CHECK(j["result"]["holds"] == false);
    REQUIRE(j["result"].contains("witness"));

    // Rebuild the witness region and re-check the discrepancy it certifies.
    std::vector<Box> rects;
    for (const auto& r : j["result"]["witness"]["rects"]) {
        auto rat = [&](size_t i) {
            return detail_io::parse_rational(r[i].get<std::string>(), 0);
        };
        rects.push_back(Box(rat(0), rat(1), rat(2), rat(3)));
    }
    OpenRegion w(rects);
    std::ifstream fa(fixture("ii1_segment.op")), fb(fixture("ii1_atoms.op"));
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    auto h = std::get<SpectralMeasure>(parse_operator_spec(sa.str()));
    auto k = std::get<SpectralMeasure>(parse_operator_spec(sb.str()));
    CHECK(h.crude_multiplicity(w) != k.crude_multiplicity(w));
}

TEST_CASE("json delta report carries the bracket") {
    std::string out;
    CHECK(run("--json delta --tol 1/64 " + fixture("iii_square.op") + " " +
                  fixture("iii_split.op"),
              &out) == 0);
    auto j = nlohmann::json::parse(out);
    CHECK(j["result"]["exact_zero"] == true);
    CHECK(j["result"]["sup_lo"] == "0");
}

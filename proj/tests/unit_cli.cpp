#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "kcoh/cli.hpp"
#include "support.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace kcoh;

namespace {

std::string env(const char* key) {
    const char* v = std::getenv(key);
    REQUIRE_MESSAGE(v != nullptr, "missing environment variable ", key);
    return v;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot read ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = env("KCOH_CLI") + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = std::fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    int st = pclose(p);
    return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, std::move(out)};
}

}  // namespace

TEST_CASE("documents round trip through the canonical form") {
    std::string data = env("KCOH_DATA");
    for (const char* name : {"b2.kg", "t2.kg", "cube3.kg", "twist2.kg"}) {
        std::string text = slurp(data + "/" + name);
        Document d = parse_document(text);
        auto* gd = std::get_if<GraphDocument>(&d);
        REQUIRE_MESSAGE(gd != nullptr, name, " should parse as a graph");
        CHECK(emit_document(*gd) == text);
        CHECK(gd->build() != nullptr);
    }
    for (const char* name :
         {"theta.cc", "zero1.cc", "cube3phi.cc", "bvals.cc", "degree1.cc", "one.cc", "z4phi.cc"}) {
        std::string text = slurp(data + "/" + name);
        Document d = parse_document(text);
        auto* cd = std::get_if<CocycleDocument>(&d);
        REQUIRE_MESSAGE(cd != nullptr, name, " should parse as a cocycle");
        CHECK(emit_document(*cd) == text);
    }

    // non-canonical spellings settle after one emit
    Document d = parse_document(
        "{\"values\": {\"e,f\": \"5/4\"}, \"kind\": \"cubical2\", \"coeff\": \"Q/Z\"}");
    std::string once = emit_document(std::get<CocycleDocument>(d));
    CHECK(once == slurp(data + "/theta.cc"));
}

TEST_CASE("malformed documents are rejected with reasons") {
    CHECK_THROWS_AS(parse_document("{"), ParseError);
    CHECK_THROWS_AS(parse_document("[1, 2]"), ParseError);
    CHECK_THROWS_AS(parse_document("{\"neither\": 1}"), ParseError);
    CHECK_THROWS_AS(parse_document("{\"k\": 0, \"vertices\": [], \"edges\": [], \"squares\": []}"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_document("{\"k\": 1, \"vertices\": [\"*\"], \"edges\": [], \"squares\": [], "
                       "\"extra\": 1}"),
        ParseError);
    // colour outside 1..k
    CHECK_THROWS_AS(parse_document("{\"k\": 2, \"vertices\": [\"*\"], \"edges\": [{\"id\": \"e\", "
                                   "\"colour\": 3, \"source\": \"*\", \"range\": \"*\"}], "
                                   "\"squares\": []}"),
                    ParseError);
    CHECK_THROWS_AS(parse_document("{\"k\": 2, \"vertices\": [\"*\"], \"edges\": [], "
                                   "\"squares\": [[\"a\", \"b\", \"c\"]]}"),
                    ParseError);
    CHECK_THROWS_AS(parse_document("{\"kind\": \"mystery\", \"coeff\": \"Z\", \"values\": {}}"),
                    ParseError);
    CHECK_THROWS_AS(parse_document("{\"kind\": \"cubical2\", \"coeff\": \"Z/one\", \"values\": {}}"),
                    ParseError);
    CHECK_THROWS_AS(
        parse_document("{\"kind\": \"cubical2\", \"coeff\": \"Q/Z\", \"values\": {\"e,f\": \"x\"}}"),
        ParseError);
    CHECK_THROWS_AS(load_document("/nonexistent/path.kg"), ParseError);

    // a parse failure names its line
    try {
        parse_document("{\n  \"k\": }");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }

    ts::GraphPtr g = ts::t2();
    Group qz = Group::rationals_mod1();
    CocycleDocument empty{"cubical2", qz, {}};
    CHECK_THROWS_AS(cubical2_cochain(empty, g), ValidationError);
    CocycleDocument stray{"cubical2", qz, {{"e,f", qz.zero()}, {"f,g", qz.zero()}}};
    CHECK_THROWS_AS(cubical2_cochain(stray, g), ValidationError);
    CocycleDocument wrongkind{"functor1", qz, {{"e", qz.zero()}, {"f", qz.zero()}}};
    CHECK_THROWS_AS(cubical2_cochain(wrongkind, g), ValidationError);
    CHECK_THROWS_AS(document_cocycle(wrongkind, g), ValidationError);
    CocycleDocument shortedge{"functor1", qz, {{"e", qz.zero()}}};
    CHECK_THROWS_AS(edge_cochain(shortedge, g), ValidationError);
}

TEST_CASE("reports render canonically") {
    ReportDocument rep;
    rep.command = "demo";
    rep.seed = 9;
    rep.inputs["graph"] = "t2.kg";
    rep.results["H0"] = "Z";
    rep.verdicts.push_back({"first-law", true, std::nullopt});
    rep.verdicts.push_back({"second-law", false, std::string("square e,f")});
    rep.elapsed_ms = 1.5;

    std::string structured = emit_report(rep, "structured");
    CHECK(structured ==
          "{\n"
          "  \"command\": \"demo\",\n"
          "  \"inputs\": {\n"
          "    \"graph\": \"t2.kg\"\n"
          "  },\n"
          "  \"results\": {\n"
          "    \"H0\": \"Z\"\n"
          "  },\n"
          "  \"seed\": 9,\n"
          "  \"verdicts\": [\n"
          "    {\n"
          "      \"name\": \"first-law\",\n"
          "      \"pass\": true\n"
          "    },\n"
          "    {\n"
          "      \"name\": \"second-law\",\n"
          "      \"pass\": false,\n"
          "      \"witness\": \"square e,f\"\n"
          "    }\n"
          "  ]\n"
          "}\n");
    CHECK_FALSE(rep.pass());

    std::string text = emit_report(rep, "text");
    CHECK(text.find("kcoh demo\n") == 0);
    CHECK(text.find("[FAIL] second-law") != std::string::npos);
    CHECK(text.find("witness: square e,f") != std::string::npos);
    CHECK(text.find("elapsed: 1.50 ms") != std::string::npos);
    // timing never reaches the structured rendering
    CHECK(structured.find("elapsed") == std::string::npos);

    ReportDocument empty;
    empty.command = "noop";
    empty.seed = 4;
    CHECK(empty.pass());
    CHECK(emit_report(empty, "text").find("kcoh noop\n  seed: 4\n") == 0);
    CHECK_THROWS_AS(emit_report(empty, "yaml"), ValidationError);
}

TEST_CASE("run_command dispatches on the command name") {
    std::string data = env("KCOH_DATA");
    CliOptions opt;
    opt.command = "homology";
    opt.graph = data + "/b2.kg";
    opt.upto = 1;
    ReportDocument rep = run_command(opt);
    CHECK(rep.results.at("H0") == "Z");
    CHECK(rep.results.at("H1") == "Z^2");
    CHECK(rep.inputs.at("graph") == "b2.kg");  // echoed as a basename
    CHECK(rep.pass());

    opt.command = "nonsense";
    CHECK_THROWS_AS(run_command(opt), Error);
    opt.command = "homology";
    opt.graph.reset();
    CHECK_THROWS_AS(run_command(opt), ValidationError);
    opt.graph = data + "/theta.cc";
    CHECK_THROWS_AS(run_command(opt), ValidationError);
}

TEST_CASE("exit codes separate verdicts from errors") {
    std::string data = env("KCOH_DATA");
    CHECK(run_cli("validate --graph " + data + "/t2.kg").code == 0);
    // a nontrivial class compared against zero: reported, not an error
    RunResult verdict = run_cli("class-equal --graph " + data + "/t2.kg --phi " + data + "/one.cc");
    CHECK(verdict.code == 1);
    CHECK(verdict.out.find("[FAIL] class-equal") != std::string::npos);
    CHECK(run_cli("class-equal --graph " + data + "/t2.kg --phi " + data + "/one.cc --phi " +
                  data + "/one.cc")
              .code == 0);
    CHECK(run_cli("homology --graph " + data + "/missing.kg").code == 2);
    CHECK(run_cli("bogus-command").code == 2);
    CHECK(run_cli("homology").code == 2);
    CHECK(run_cli("ext-laws --graph " + data + "/t2.kg --phi " + data + "/z4phi.cc --phi " +
                  data + "/bvals.cc --triples 40")
              .code == 0);
    CHECK(run_cli("cocycle-check --graph " + data + "/t2.kg --phi " + data + "/degree1.cc").code ==
          0);
    CHECK(run_cli("diagnostics --graph " + data + "/b2.kg --bound 2").code == 0);
}

TEST_CASE("structured reports reproduce the golden files") {
    std::string data = env("KCOH_DATA");
    std::string golden = env("KCOH_GOLDEN");
    struct Case {
        const char* file;
        std::string args;
    };
    const Case cases[] = {
        {"validate_b2.json", "validate --graph " + data + "/b2.kg"},
        {"validate_t2.json", "validate --graph " + data + "/t2.kg"},
        {"validate_cube3.json", "validate --graph " + data + "/cube3.kg"},
        {"homology_b2.json", "homology --graph " + data + "/b2.kg --upto 1"},
        {"homology_t2.json", "homology --graph " + data + "/t2.kg --upto 2"},
        {"homology_cube3.json", "homology --graph " + data + "/cube3.kg --upto 3"},
        {"roundtrip_t2.json",
         "bridge-roundtrip --graph " + data + "/t2.kg --phi " + data + "/theta.cc"},
        {"roundtrip_cube3.json",
         "bridge-roundtrip --graph " + data + "/cube3.kg --phi " + data + "/cube3phi.cc"},
        {"sigma_t2.json", "sigma-check --graph " + data + "/t2.kg --phi " + data +
                              "/theta.cc --seed 7 --triples 500"},
        {"sigma_b2.json", "sigma-check --graph " + data + "/b2.kg --phi " + data +
                              "/zero1.cc --seed 3 --triples 200"},
    };
    for (const Case& c : cases) {
        CAPTURE(c.file);
        RunResult r = run_cli(c.args + " --format structured");
        CHECK(r.code == 0);
        CHECK(r.out == slurp(golden + "/" + std::string(c.file)));
    }

    // determinism: a repeated run is byte-identical
    std::string args = "sigma-check --graph " + data + "/t2.kg --phi " + data +
                       "/theta.cc --seed 7 --triples 500 --format structured";
    CHECK(run_cli(args).out == run_cli(args).out);
}

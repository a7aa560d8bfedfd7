#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

#include "itr/serialize.hpp"
#include "itr/version.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = itr::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch() {
    static const fs::path dir = [] {
        auto p = fs::temp_directory_path() / ("itr_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string write(const std::string& name, const std::string& text) {
    const auto path = scratch() / name;
    std::ofstream(path) << text;
    return path.string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

const char* kK22 = "{\"blocks\":[[0,1,2,3]],\"edges\":[[0,2],[0,3],[1,2],[1,3]],\"n\":4}\n";
const char* kK22Standard = "{\"blocks\":[[0,1],[2,3]],\"edges\":[[0,2],[0,3],[1,2],[1,3]],\"n\":4}\n";

}  // namespace

TEST_CASE("recognize on single-block K22 says YES") {
    auto r = run({"recognize", write("k22.json", kK22)});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("verdict") == "YES");
}

TEST_CASE("recognize exits 1 on NO") {
    auto r = run({"recognize", "--input", write("k22s.json", kK22Standard)});
    CHECK(r.code == 1);
    CHECK(nlohmann::json::parse(r.out).at("verdict") == "NO");
}

TEST_CASE("analyze on a standard bipartition is EMPTY") {
    auto r = run({"analyze", write("k22s.json", kK22Standard)});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("status") == "EMPTY");
    CHECK(doc.at("its") == 0);
    CHECK(doc.at("minimally_nit") == true);
}

TEST_CASE("generate then recognize round trips") {
    const auto out = (scratch() / "gen.json").string();
    auto g = run({"generate", "--delta", "1", "--iterations", "2", "--seed", "7", "--output", out});
    REQUIRE(g.code == 0);
    CHECK(fs::exists(out + ".trace.json"));
    const auto text = slurp(out);
    CHECK(itr::to_canonical_json(itr::parse_instance(text)) == text);
    auto r = run({"recognize", out});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("peels").size() == 2);

    const auto again = (scratch() / "replayed.json").string();
    auto rp = run({"generate", "--replay", out + ".trace.json", "--output", again});
    REQUIRE(rp.code == 0);
    CHECK(slurp(again) == text);
}

TEST_CASE("generate is deterministic in the seed") {
    auto a = run({"generate", "--delta", "2", "--iterations", "1", "--seed", "3"});
    auto b = run({"generate", "--delta", "2", "--iterations", "1", "--seed", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
}

TEST_CASE("analyze agrees with the IT count") {
    auto r = run({"analyze", write("k22.json", kK22)});
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("its") == 4);
    CHECK(doc.at("components") == 2);
    CHECK(doc.at("status") == "DISCONNECTED");
    CHECK(doc.at("minimally_rgd") == true);
}

TEST_CASE("certify writes a certificate and a forest") {
    const auto dot = (scratch() / "forest.dot").string();
    auto r = run({"certify", write("k22.json", kK22), "--dot", dot});
    CHECK(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("witnesses_complete") == true);
    CHECK(slurp(dot).rfind("graph forest", 0) == 0);
}

TEST_CASE("export-dot writes both graphs") {
    const auto prefix = (scratch() / "k22").string();
    auto r = run({"export-dot", write("k22.json", kK22), "--output", prefix});
    CHECK(r.code == 0);
    CHECK(slurp(prefix + ".graph.dot").find("cluster_0") != std::string::npos);
    CHECK(slurp(prefix + ".rg.dot").find("graph rg") != std::string::npos);
}

TEST_CASE("malformed input exits 2 with the line") {
    auto r = run({"recognize", write("bad.json", "{\n\"n\": 1,\n\"edges\": [[0, 0]],\n\"blocks\": [[0]]\n}\n")});
    CHECK(r.code == 2);
    CHECK(r.err.find("line 3") != std::string::npos);
    CHECK(run({"recognize", (scratch() / "missing.json").string()}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"generate", "--delta", "0"}).code == 2);
    CHECK(run({"verify", "--profile", "huge"}).code == 2);
}

TEST_CASE("cap breaches exit 3 and the flag overrides the environment") {
    const auto path = write("k22.json", kK22);
    CHECK(run({"--cap", "1", "analyze", path}).code == 3);
    ::setenv("ITR_ENUM_CAP", "3", 1);
    CHECK(run({"analyze", path}).code == 3);
    CHECK(run({"--cap", "100", "analyze", path}).code == 0);
    ::setenv("ITR_ENUM_CAP", "lots", 1);
    CHECK(run({"analyze", path}).code == 2);
    ::unsetenv("ITR_ENUM_CAP");
    CHECK(run({"analyze", path}).code == 0);
}

TEST_CASE("version") {
    auto r = run({"--version"});
    CHECK(r.code == 0);
    CHECK(r.out.find(itr::kVersion) != std::string::npos);
}

TEST_CASE("verify runs the quick profile") {
    auto r = run({"verify", "--profile", "quick", "--seed", "1"});
    CHECK(r.code == 0);
    for (int id = 1; id <= 10; ++id) CHECK(r.out.find("criterion " + std::to_string(id) + " ") != std::string::npos);
}

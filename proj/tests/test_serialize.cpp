#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <string>

#include "helpers.hpp"
#include "itr/dot.hpp"
#include "itr/errors.hpp"
#include "itr/serialize.hpp"

using namespace itr;

namespace {

int error_line(const std::string& text) {
    try {
        parse_instance(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST_CASE("canonical text is byte exact") {
    auto two = testing_support::two_copies_k11();
    CHECK(to_canonical_json(two) == "{\"blocks\":[[0,2],[1,3]],\"edges\":[[0,1],[2,3]],\"n\":4}\n");
    CHECK(to_canonical_json(Instance()) == "{\"blocks\":[],\"edges\":[],\"n\":0}\n");
}

TEST_CASE("parser accepts any layout and normalizes it") {
    auto parsed = parse_instance(R"({
  "n": 4,
  "edges": [[3, 2], [1, 0]],
  "blocks": [[2, 0], [3, 1]]
})");
    CHECK(parsed == testing_support::two_copies_k11());
}

TEST_CASE("round trip on random instances") {
    std::mt19937_64 rng(3);
    for (int round = 0; round < 300; ++round) {
        int n = 1 + static_cast<int>(rng() % 10);
        int m = 1 + static_cast<int>(rng() % n);
        auto inst = testing_support::random_instance(rng, n, m, 0.35);
        const auto text = to_canonical_json(inst);
        const auto back = parse_instance(text);
        CHECK(back == inst);
        CHECK(to_canonical_json(back) == text);
        CHECK(instance_from_json(instance_to_json(inst)) == inst);
    }
}

TEST_CASE("parse errors carry the offending line") {
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [[0, 0]],\n\"blocks\": [[0, 1]]\n}") == 3);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [],\n\"blocks\": [[0], [0, 1]]\n}") == 4);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [[0, 5]],\n\"blocks\": [[0, 1]]\n}") == 3);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [],\n\"colour\": 1,\n\"blocks\": [[0, 1]]\n}") == 4);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [[0, 1]],\n\"blocks\": [[0]]\n}") >= 1);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [[0, 1]],\n\"blocks\": [[0], []]\n}") == 4);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [[0, 1], [1, 0]],\n\"blocks\": [[0, 1]]\n}") == 3);
    CHECK(error_line("{\n\"n\": \"two\",\n\"edges\": [],\n\"blocks\": []\n}") == 2);
    CHECK(error_line("{\n\"n\": 2,\n\"edges\": [\n") >= 3);
    CHECK(error_line("[]") == 1);
    CHECK(error_line("{\"n\": 1, \"edges\": []}") == 1);
}

TEST_CASE("parse error messages are prefixed with the line") {
    try {
        parse_instance("{\n\"n\": 1,\n\"edges\": [[0, 0]],\n\"blocks\": [[0]]\n}");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).rfind("line 3: ", 0) == 0);
    }
}

TEST_CASE("instance DOT renders one cluster per block") {
    const auto dot = instance_to_dot(testing_support::two_copies_k11());
    CHECK(dot.find("graph") != std::string::npos);
    CHECK(dot.find("cluster_0") != std::string::npos);
    CHECK(dot.find("cluster_1") != std::string::npos);
    CHECK(dot.find("cluster_2") == std::string::npos);
    CHECK(dot.find("0 -- 1") != std::string::npos);
    CHECK(dot.find("2 -- 3") != std::string::npos);
}

#include <doctest.h>

#include <random>
#include <string>

#include "hyperindex/errors.hpp"
#include "hyperindex/indices.hpp"
#include "hyperindex/io.hpp"

#include "helpers.hpp"

using namespace hyperindex;

namespace {

int parse_error_line(const std::string& text) {
    try {
        parse_uhg(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return -1;
}

} // namespace

TEST_CASE("parsing the documented examples") {
    UhgDocument one = parse_uhg("uhg 1\n3 3 1\n1 2 3\n");
    CHECK(one.version == 1);
    CHECK(one.hypergraph == single_edge(3));
    CHECK(one.comments.empty());

    UhgDocument two = parse_uhg("uhg 1\n3 5 2\n1 2 3\n3 4 5\n");
    CHECK(two.hypergraph == path_hypertree(3, 2));
}

TEST_CASE("comments and loose whitespace are tolerated") {
    UhgDocument doc = parse_uhg("# a bowtie\nuhg 1\n\n3 5 2\n# left lobe\n3  2 1\r\n1 4 5\n");
    CHECK(doc.hypergraph == UniformHypergraph(3, 5, {{1, 2, 3}, {1, 4, 5}}));
    REQUIRE(doc.comments.size() == 2);
    CHECK(doc.comments[0] == "# a bowtie");
    CHECK(doc.comments[1] == "# left lobe");
}

TEST_CASE("parse errors carry one-based line numbers") {
    CHECK(parse_error_line("") == 1);
    CHECK(parse_error_line("hug 1\n") == 1);
    CHECK(parse_error_line("uhg 2\n3 3 1\n1 2 3\n") == 1);
    CHECK(parse_error_line("uhg 1\n") == 2);
    CHECK(parse_error_line("uhg 1\n3 3\n") == 2);
    CHECK(parse_error_line("uhg 1\n1 3 0\n") == 2);
    CHECK(parse_error_line("uhg 1\nx 3 1\n1 2 3\n") == 2);
    CHECK(parse_error_line("uhg 1\n3 3 1\n1 2\n") == 3);          // arity
    CHECK(parse_error_line("uhg 1\n3 3 1\n1 2 4\n") == 3);        // label range
    CHECK(parse_error_line("uhg 1\n3 3 1\n1 2 2\n") == 3);        // repeated vertex
    CHECK(parse_error_line("uhg 1\n3 5 2\n1 2 3\n3 2 1\n") == 4); // duplicate edge
    CHECK(parse_error_line("uhg 1\n3 3 1\n1 2 3\n1 2 3\n") == 4); // extra line
    CHECK(parse_error_line("uhg 1\n3 5 2\n1 2 3\n") == 4);        // missing edge line
    CHECK(parse_error_line("# leading comment\nuhg 2\n") == 2);   // numbering counts comments
}

TEST_CASE("serialization is canonical") {
    CHECK(serialize_uhg(single_edge(3)) == "uhg 1\n3 3 1\n1 2 3\n");
    // Construction order does not leak into the bytes.
    UniformHypergraph scrambled(3, 5, {{5, 4, 3}, {3, 2, 1}});
    CHECK(serialize_uhg(scrambled) == "uhg 1\n3 5 2\n1 2 3\n3 4 5\n");
    CHECK_THROWS_AS(serialize_uhg(UniformHypergraph(1, 1, {})), DomainError);
}

TEST_CASE("round-trip over generated hypergraphs") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        UniformHypergraph g = testutil::sample_connected(2 + static_cast<int>(rng() % 5), rng);
        UhgDocument doc = parse_uhg(serialize_uhg(g));
        CHECK(doc.hypergraph == g);
        CHECK(serialize_uhg(doc.hypergraph) == serialize_uhg(g));
    }
}

TEST_CASE("json report golden bytes") {
    IndexReport r = stabilizing_index(single_edge(3));
    CHECK(report_to_json(r) == std::string(R"({
  "m": 3,
  "n": 3,
  "k": 1,
  "invariant_divisors": [
    1
  ],
  "free_rank": 1,
  "stabilizing_index": "3",
  "cyclic_index": 3,
  "decomposition": {
    "cyclic_orders": [],
    "free_rank": 1
  },
  "method": "snf"
}
)"));
}

TEST_CASE("json keeps huge indices lossless") {
    IndexReport r = stabilizing_index(path_hypertree(5, 20));
    CHECK(r.stabilizing_index == big_pow(5, 60));
    std::string json = report_to_json(r);
    CHECK(json.find("\"867361737988403547205962240695953369140625\"") != std::string::npos);
}

TEST_CASE("json reflects the hypertree and complete examples") {
    std::string tree = report_to_json(stabilizing_index(path_hypertree(3, 4)));
    CHECK(tree.find("\"stabilizing_index\": \"81\"") != std::string::npos);

    std::string complete = report_to_json(stabilizing_index(complete_hypergraph(3, 4)));
    CHECK(complete.find("\"stabilizing_index\": \"1\"") != std::string::npos);
    CHECK(complete.find("\"cyclic_index\": 1") != std::string::npos);

    std::string edge4 = report_to_json(stabilizing_index(single_edge(4)));
    CHECK(edge4.find("\"stabilizing_index\": \"16\"") != std::string::npos);
    CHECK(edge4.find("\"cyclic_index\": 4") != std::string::npos);
}

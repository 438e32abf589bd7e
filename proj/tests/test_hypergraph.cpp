#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hyperindex/errors.hpp"
#include "hyperindex/hypergraph.hpp"

#include "helpers.hpp"

using namespace hyperindex;

TEST_CASE("construction canonicalizes edges") {
    UniformHypergraph g(3, 5, {{5, 4, 3}, {3, 2, 1}});
    CHECK(g.edges() == std::vector<Edge>{{1, 2, 3}, {3, 4, 5}});
    CHECK(g == UniformHypergraph(3, 5, {{1, 2, 3}, {3, 4, 5}}));
}

TEST_CASE("validation diagnostics") {
    CHECK(validate(single_edge(3)).ok);
    CHECK_FALSE(validate(UniformHypergraph(1, 2, {})).ok);
    CHECK_FALSE(validate(UniformHypergraph(2, 0, {})).ok);
    CHECK_FALSE(validate(UniformHypergraph(3, 4, {{1, 2}})).ok);
    CHECK_FALSE(validate(UniformHypergraph(2, 3, {{0, 1}})).ok);
    CHECK_FALSE(validate(UniformHypergraph(2, 3, {{3, 4}})).ok);
    CHECK_FALSE(validate(UniformHypergraph(2, 3, {{2, 2}})).ok);
    CHECK_FALSE(validate(UniformHypergraph(2, 3, {{1, 2}, {2, 1}})).ok);
    CHECK_THROWS_AS(require_valid(UniformHypergraph(1, 2, {})), DomainError);
}

TEST_CASE("connectivity over the bipartite incidence graph") {
    CHECK(is_connected(single_edge(4)));
    CHECK(is_connected(UniformHypergraph(2, 1, {}))); // one vertex, no edges
    CHECK_FALSE(is_connected(UniformHypergraph(2, 2, {})));
    CHECK_FALSE(is_connected(UniformHypergraph(3, 6, {{1, 2, 3}, {4, 5, 6}})));
    CHECK(is_connected(UniformHypergraph(3, 5, {{1, 2, 3}, {3, 4, 5}})));
}

TEST_CASE("incidence matrix rows mark edge membership") {
    UniformHypergraph g(3, 5, {{1, 2, 3}, {3, 4, 5}});
    ZmMatrix b = incidence_matrix(g);
    CHECK(b.rows() == 2);
    CHECK(b.cols() == 5);
    CHECK(b == testutil::make_matrix({{1, 1, 1, 0, 0}, {0, 0, 1, 1, 1}}, 3));
    // Each row has m ones, so row sums vanish mod m.
    for (std::size_t i = 0; i < b.rows(); ++i) {
        std::int64_t sum = 0;
        for (std::size_t j = 0; j < b.cols(); ++j)
            sum += b(i, j);
        CHECK(sum % g.uniformity() == 0);
    }
}

TEST_CASE("coalescence relabeling") {
    UniformHypergraph bowtie = coalesce(single_edge(3), 1, single_edge(3), 1);
    CHECK(bowtie == UniformHypergraph(3, 5, {{1, 2, 3}, {1, 4, 5}}));

    // Attaching at interior labels: G2's vertex 2 lands on G1's vertex 3, the
    // remaining G2 vertices take fresh labels in ascending order.
    UniformHypergraph g = coalesce(single_edge(3), 3, single_edge(3), 2);
    CHECK(g == UniformHypergraph(3, 5, {{1, 2, 3}, {3, 4, 5}}));

    CHECK_THROWS_AS(coalesce(single_edge(3), 4, single_edge(3), 1), DomainError);
    CHECK_THROWS_AS(coalesce(single_edge(3), 1, single_edge(4), 1), DomainError);
    CHECK_THROWS_AS(coalesce(UniformHypergraph(3, 6, {{1, 2, 3}, {4, 5, 6}}), 1,
                             single_edge(3), 1),
                    DomainError);
}

TEST_CASE("coalescence incidence splits into bordered blocks") {
    UniformHypergraph g1 = path_hypertree(3, 2);
    UniformHypergraph g2 = loose_cycle(3, 2);
    const Vertex v1 = 2;
    std::vector<Edge> edges = coalescence_edges(g1, v1, g2, 3);
    const int n = g1.vertex_count() + g2.vertex_count() - 1;
    ZmMatrix b = incidence_from_edges(edges, n, Modulus(3));
    // First k1 rows live on columns 1..n1; the rest only touch v1 and the
    // fresh columns.
    for (int i = 0; i < g1.edge_count(); ++i)
        for (int j = g1.vertex_count(); j < n; ++j)
            CHECK(b(i, j) == 0);
    for (int i = g1.edge_count(); i < static_cast<int>(b.rows()); ++i)
        for (int j = 0; j < g1.vertex_count(); ++j)
            if (j != v1 - 1)
                CHECK(b(i, j) == 0);
}

TEST_CASE("cartesian product of two single edges") {
    UniformHypergraph p = cartesian_product(single_edge(3), single_edge(3));
    CHECK(p.vertex_count() == 9);
    CHECK(p.edge_count() == 6);
    CHECK(p == UniformHypergraph(3, 9,
                                 {{1, 2, 3},
                                  {4, 5, 6},
                                  {7, 8, 9},
                                  {1, 4, 7},
                                  {2, 5, 8},
                                  {3, 6, 9}}));
    CHECK_THROWS_AS(cartesian_product(single_edge(3), single_edge(4)), DomainError);
}

TEST_CASE("product incidence stacks the two kronecker factors") {
    UniformHypergraph g1 = path_hypertree(3, 2);
    UniformHypergraph g2 = single_edge(3);
    const int n1 = g1.vertex_count(), n2 = g2.vertex_count();
    Modulus m(3);

    std::vector<Edge> edges = cartesian_product_edges(g1, g2);
    ZmMatrix b = incidence_from_edges(edges, n1 * n2, m);

    ZmMatrix top = ZmMatrix::kronecker(ZmMatrix::identity(n1, m), incidence_matrix(g2));
    ZmMatrix bottom = ZmMatrix::kronecker(incidence_matrix(g1), ZmMatrix::identity(n2, m));
    REQUIRE(b.rows() == top.rows() + bottom.rows());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            CHECK(b(i, j) == top(i, j));
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            CHECK(b(top.rows() + i, j) == bottom(i, j));
}

TEST_CASE("product with the one-vertex hypergraph is the identity") {
    UniformHypergraph trivial(3, 1, {});
    UniformHypergraph g = path_hypertree(3, 3);
    CHECK(cartesian_product(g, trivial) == g);
}

TEST_CASE("product is associative on labels") {
    UniformHypergraph a = single_edge(3);
    UniformHypergraph b = path_hypertree(3, 2);
    UniformHypergraph c = single_edge(3);
    CHECK(cartesian_product(cartesian_product(a, b), c) ==
          cartesian_product(a, cartesian_product(b, c)));
    std::vector<UniformHypergraph> factors{a, b, c};
    CHECK(cartesian_product_n(factors) == cartesian_product(cartesian_product(a, b), c));
    CHECK_THROWS_AS(cartesian_product_n({}), DomainError);
}

TEST_CASE("block decomposition of a single edge") {
    BlockDecomposition dec = blocks(single_edge(4));
    REQUIRE(dec.blocks.size() == 1);
    CHECK(dec.blocks[0].graph == single_edge(4));
    CHECK(dec.blocks[0].vertex_map == std::vector<Vertex>{1, 2, 3, 4});
    CHECK(dec.cut_vertices.empty());
}

TEST_CASE("block decomposition of a bowtie") {
    UniformHypergraph bowtie(3, 5, {{1, 2, 3}, {1, 4, 5}});
    BlockDecomposition dec = blocks(bowtie);
    REQUIRE(dec.blocks.size() == 2);
    CHECK(dec.cut_vertices == std::vector<Vertex>{1});
    for (const Block& blk : dec.blocks) {
        CHECK(blk.graph == single_edge(3));
        CHECK(blk.vertex_map[0] == 1);
    }
    CHECK(dec.blocks[0].vertex_map == std::vector<Vertex>{1, 2, 3});
    CHECK(dec.blocks[1].vertex_map == std::vector<Vertex>{1, 4, 5});
}

TEST_CASE("blocks of a path hypertree are its edges") {
    UniformHypergraph t = path_hypertree(3, 3); // edges {1,2,3},{3,4,5},{5,6,7}
    BlockDecomposition dec = blocks(t);
    REQUIRE(dec.blocks.size() == 3);
    CHECK(dec.cut_vertices == std::vector<Vertex>{3, 5});
    for (const Block& blk : dec.blocks)
        CHECK(blk.graph == single_edge(3));
}

TEST_CASE("a loose cycle is a single block") {
    BlockDecomposition dec = blocks(loose_cycle(3, 3));
    CHECK(dec.blocks.size() == 1);
    CHECK(dec.cut_vertices.empty());
    CHECK(dec.blocks[0].graph == loose_cycle(3, 3));
}

TEST_CASE("block vertex maps pull edges back to the parent") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        UniformHypergraph g = testutil::sample_connected(3 + static_cast<int>(rng() % 2), rng);
        BlockDecomposition dec = blocks(g);
        std::multiset<Edge> recovered;
        for (const Block& blk : dec.blocks) {
            CHECK(validate(blk.graph).ok);
            CHECK(is_connected(blk.graph));
            for (const Edge& e : blk.graph.edges()) {
                Edge parent;
                for (Vertex v : e)
                    parent.push_back(blk.vertex_map[v - 1]);
                std::sort(parent.begin(), parent.end());
                recovered.insert(parent);
            }
        }
        std::multiset<Edge> original(g.edges().begin(), g.edges().end());
        CHECK(recovered == original);
    }
}

TEST_CASE("generators produce the documented shapes") {
    CHECK(single_edge(3) == UniformHypergraph(3, 3, {{1, 2, 3}}));

    UniformHypergraph path = path_hypertree(4, 3);
    CHECK(path.vertex_count() == 3 * 3 + 1);
    CHECK(path.edge_count() == 3);
    CHECK(is_connected(path));

    UniformHypergraph rt = random_hypertree(3, 5, 11);
    CHECK(rt.vertex_count() == 5 * 2 + 1);
    CHECK(rt.edge_count() == 5);
    CHECK(is_connected(rt));
    CHECK(rt == random_hypertree(3, 5, 11));

    UniformHypergraph k43 = complete_hypergraph(3, 4);
    CHECK(k43.edge_count() == 4);
    CHECK(k43 == UniformHypergraph(3, 4, {{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}));

    UniformHypergraph cyc = loose_cycle(3, 2);
    CHECK(cyc.vertex_count() == 4);
    CHECK(cyc == UniformHypergraph(3, 4, {{1, 2, 3}, {1, 3, 4}}));
    CHECK(is_connected(loose_cycle(4, 5)));

    GeneratorSpec spec{GeneratorKind::path_hypertree, 4, 3, 0, 0};
    CHECK(generate(spec) == path);
}

TEST_CASE("generator preconditions") {
    CHECK_THROWS_AS(single_edge(1), DomainError);
    CHECK_THROWS_AS(path_hypertree(3, 0), DomainError);
    CHECK_THROWS_AS(complete_hypergraph(3, 3), DomainError);
    CHECK_THROWS_AS(loose_cycle(2, 2), DomainError);
    CHECK(validate(loose_cycle(2, 3)).ok); // triangle
}

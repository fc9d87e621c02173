#include <cmath>
#include <sstream>

#include "doctest.h"
#include "helpers.hpp"
#include "udense/graph.hpp"

using namespace udense;
using testutil::example_graph;
using testutil::world_from_edges;

TEST_CASE("graph file parsing") {
    SUBCASE("running example file") {
        std::istringstream in("0 1 0.4\n0 2 0.4\n1 3 0.7\n");
        auto g = parse_uncertain_graph(in, "fig1");
        CHECK(g.node_count == 4);
        CHECK(g.edge_count() == 3);
        CHECK(g.edges[2].p == doctest::Approx(0.7));
    }
    SUBCASE("p = 1 boundary allowed") {
        std::istringstream in("0 1 1.0\n");
        auto g = parse_uncertain_graph(in, "t");
        CHECK(g.node_count == 2);
        CHECK(g.edges[0].p == 1.0);
    }
    SUBCASE("self-loop rejected with line number") {
        std::istringstream in("0 1 0.5\n0 0 0.5\n");
        CHECK_THROWS_WITH_AS(parse_uncertain_graph(in, "t"),
                             doctest::Contains("t:2"), ParseError);
    }
    SUBCASE("probability outside (0,1] rejected") {
        std::istringstream zero("0 1 0.0\n");
        CHECK_THROWS_AS(parse_uncertain_graph(zero, "t"), ParseError);
        std::istringstream above("0 1 1.5\n");
        CHECK_THROWS_AS(parse_uncertain_graph(above, "t"), ParseError);
    }
    SUBCASE("duplicate edges rejected") {
        std::istringstream in("0 1 0.5\n1 0 0.3\n");
        CHECK_THROWS_AS(parse_uncertain_graph(in, "t"), ParseError);
    }
    SUBCASE("comments and CRLF accepted") {
        std::istringstream in("# header\r\n0 1 0.5\r\n\r\n2 3 0.25\n");
        auto g = parse_uncertain_graph(in, "t");
        CHECK(g.node_count == 4);
        CHECK(g.edge_count() == 2);
    }
    SUBCASE("malformed line reports its number") {
        std::istringstream in("0 1 0.5\nnot a line\n");
        CHECK_THROWS_WITH_AS(parse_uncertain_graph(in, "t"),
                             doctest::Contains("t:2"), ParseError);
    }
    SUBCASE("sparse ids normalized by ascending rank") {
        std::istringstream in("10 5 0.5\n10 20 0.5\n");
        auto g = parse_uncertain_graph(in, "t");
        CHECK(g.node_count == 3);
        REQUIRE(g.original_ids.size() == 3);
        CHECK(g.original_ids[0] == 5);
        CHECK(g.original_ids[1] == 10);
        CHECK(g.original_ids[2] == 20);
    }
}

TEST_CASE("probability models") {
    SUBCASE("exponential cdf") {
        auto g = assign_probabilities(2, {{0, 1, 20.0}},
                                      ProbabilityModel::exponential_cdf(20.0));
        CHECK(g.edges[0].p == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));

        auto zero = assign_probabilities(2, {{0, 1, 0.0}},
                                         ProbabilityModel::exponential_cdf(20.0));
        CHECK(zero.edges[0].p == doctest::Approx(1e-9));

        CHECK_THROWS_AS(ProbabilityModel::exponential_cdf(0.0), std::invalid_argument);
        CHECK_THROWS_AS(ProbabilityModel::exponential_cdf(-3.0), std::invalid_argument);
    }
    SUBCASE("reciprocal of the larger degree on a star") {
        std::vector<CountEdge> star{{0, 1, 0}, {0, 2, 0}, {0, 3, 0}};
        auto g = assign_probabilities(4, star, ProbabilityModel::reciprocal_degree());
        for (const auto& e : g.edges) CHECK(e.p == doctest::Approx(1.0 / 3.0));
    }
}

TEST_CASE("world sampling") {
    SUBCASE("all p = 1 gives the full world with log_prob 0") {
        auto g = UncertainGraph::from_edges(3, {{0, 1, 1.0}, {1, 2, 1.0}});
        auto w = sample_world(g, 42, 0);
        CHECK(w.present_count() == 2);
        CHECK(w.log_prob == 0.0);
    }
    SUBCASE("explicit world probability matches the product formula") {
        auto g = example_graph();
        auto w = world_from_edges(g, {{1, 3}});  // only B-D present
        CHECK(std::exp(w.log_prob) == doctest::Approx(0.6 * 0.6 * 0.7).epsilon(1e-12));
    }
    SUBCASE("empirical edge frequency approaches its probability") {
        auto g = example_graph();
        std::size_t hits = 0;
        const std::size_t rounds = 100000;
        for (std::size_t r = 0; r < rounds; ++r)
            if (sample_world(g, 1234, r).edge_present(2)) ++hits;
        double freq = static_cast<double>(hits) / rounds;
        CHECK(freq >= 0.695);
        CHECK(freq <= 0.705);
    }
    SUBCASE("bit-identical across invocations") {
        auto g = example_graph();
        for (std::uint64_t r : {0ULL, 17ULL, 999ULL}) {
            auto a = sample_world(g, 7, r);
            auto b = sample_world(g, 7, r);
            CHECK(a.present == b.present);
            CHECK(a.log_prob == b.log_prob);
        }
    }
    SUBCASE("world probabilities sum to 1 over all masks") {
        auto g = testutil::random_uncertain_graph(6, 0.6, 99);
        REQUIRE(g.edge_count() <= 20);
        double total = 0.0;
        for (std::uint64_t mask = 0; mask < (1ULL << g.edge_count()); ++mask)
            total += std::exp(World(g, mask).log_prob);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("induced density") {
    auto g = example_graph();
    SUBCASE("table values") {
        auto g8 = world_from_edges(g, {{0, 1}, {0, 2}, {1, 3}});
        CHECK(induced_density(g8, NodeSet({0, 1, 2, 3}), DensityNotion::edge()) ==
              doctest::Approx(0.75));
        auto g2 = world_from_edges(g, {{0, 1}});
        CHECK(induced_density(g2, NodeSet({0, 1}), DensityNotion::edge()) ==
              doctest::Approx(0.5));
    }
    SUBCASE("triangle clique density") {
        auto tri = UncertainGraph::from_edges(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}});
        auto w = sample_world(tri, 1, 0);
        CHECK(induced_density(w, NodeSet({0, 1, 2}), DensityNotion::clique(3)) ==
              doctest::Approx(1.0 / 3.0));
    }
    SUBCASE("empty set rejected") {
        auto w = sample_world(g, 1, 0);
        CHECK_THROWS_AS(induced_density(w, NodeSet{}, DensityNotion::edge()),
                        std::invalid_argument);
    }
    SUBCASE("clique(2) and pattern(single edge) agree with edge density") {
        auto notion2 = DensityNotion::clique(2);
        auto notionP = DensityNotion::pattern(Pattern::single_edge());
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            auto rg = testutil::random_uncertain_graph(6, 0.5, seed + 50);
            auto w = sample_world(rg, seed, 3);
            for (std::uint64_t mask = 1; mask < 64; mask += 7) {
                std::vector<NodeId> ids;
                for (NodeId v = 0; v < 6; ++v)
                    if ((mask >> v) & 1) ids.push_back(v);
                NodeSet s(std::move(ids));
                double de = induced_density(w, s, DensityNotion::edge());
                CHECK(induced_density(w, s, notion2) == doctest::Approx(de));
                CHECK(induced_density(w, s, notionP) == doctest::Approx(de));
            }
        }
    }
}

TEST_CASE("rational arithmetic and snapping") {
    SUBCASE("reduction and comparison") {
        CHECK(Rational(6, 4) == Rational(3, 2));
        CHECK(Rational(1, 3) < Rational(1, 2));
        CHECK((Rational(1, 3) + Rational(1, 6)) == Rational(1, 2));
        CHECK((Rational(3, 4) * Rational(2, 3)) == Rational(1, 2));
        CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    }
    SUBCASE("simplest rational in an interval") {
        CHECK(simplest_rational_in(Rational(1, 3), Rational(1, 2)) == Rational(1, 2));
        CHECK(simplest_rational_in(Rational(5, 11), Rational(6, 11)) == Rational(1, 2));
        CHECK(simplest_rational_in(Rational(2, 7), Rational(3, 7)) == Rational(1, 3));
        CHECK(simplest_rational_in(Rational(7, 10), Rational(9, 10)) == Rational(3, 4));
        CHECK(simplest_rational_in(Rational(2), Rational(3)) == Rational(2));
        CHECK(simplest_rational_in(Rational(5, 2), Rational(7, 2)) == Rational(3));
    }
    SUBCASE("snapping recovers every density with a small denominator") {
        // brackets of width below the separation bound around q/p values
        for (std::int64_t den = 1; den <= 9; ++den) {
            for (std::int64_t num = 0; num <= 2 * den; ++num) {
                Rational target(num, den);
                Rational gap(1, 9 * 8 + 1);
                CHECK(simplest_rational_in(target - gap, target + gap) == target);
            }
        }
    }
}

TEST_CASE("pattern construction") {
    SUBCASE("automorphism counts") {
        CHECK(Pattern::single_edge().automorphism_count == 2);
        CHECK(Pattern::star(2).automorphism_count == 2);  // swap the two leaves
        CHECK(Pattern::star(3).automorphism_count == 6);
        CHECK(Pattern::clique(3).automorphism_count == 6);
        CHECK(Pattern::clique(4).automorphism_count == 24);
        CHECK(Pattern::diamond().automorphism_count == 4);
    }
    SUBCASE("disconnected pattern rejected") {
        CHECK_THROWS_AS(Pattern::from_edges(4, {{0, 1}, {2, 3}}), ParseError);
    }
    SUBCASE("pattern file round trip") {
        std::istringstream in("# diamond\n0 1\n0 2\n0 3\n1 2\n1 3\n");
        auto p = Pattern::parse(in, "diamond");
        CHECK(p.node_count == 4);
        CHECK(p.edges.size() == 5);
        CHECK(p.automorphism_count == 4);
    }
}

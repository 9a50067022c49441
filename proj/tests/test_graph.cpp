#include <catch2/catch_amalgamated.hpp>

#include "spanroute/graph.hpp"
#include "spanroute/rng.hpp"
#include "test_helpers.hpp"

using namespace spanroute;
using testutil::thrown_code;

TEST_CASE("load_network accepts the diamond") {
  const NetworkInstance net = load_network(testutil::diamond_spec());
  CHECK(net.edge_count() == 4);
  CHECK(net.vertex_count() == 4);
}

TEST_CASE("load_network accepts parallel edges") {
  const NetworkInstance net = load_network(testutil::parallel_serial_spec());
  CHECK(net.edge_count() == 4);
  CHECK(net.vertex_count() == 3);
}

TEST_CASE("load_network rejects an unreachable destination") {
  NetworkSpec spec;
  spec.vertices = {"s", "r"};
  spec.edges = {{0, "r", "s"}};
  spec.source = "s";
  spec.destination = "r";
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::no_path_exists);
}

TEST_CASE("load_network rejects duplicate edge ids") {
  auto spec = testutil::diamond_spec();
  spec.edges[3].id = 0;
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::duplicate_edge_id);
}

TEST_CASE("load_network rejects gapped edge ids") {
  auto spec = testutil::diamond_spec();
  spec.edges[3].id = 7;
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::invalid_param);
}

TEST_CASE("load_network rejects unknown vertices") {
  auto spec = testutil::diamond_spec();
  spec.edges[1].head = "zz";
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::unknown_vertex);
  spec = testutil::diamond_spec();
  spec.source = "nope";
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::unknown_vertex);
}

TEST_CASE("load_network rejects edges off every path") {
  auto spec = testutil::diamond_spec();
  spec.vertices.push_back("x");
  spec.edges.push_back({4, "a", "x"});  // dead end
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::edge_off_all_paths);
}

TEST_CASE("load_network drops vertices on no path") {
  auto spec = testutil::diamond_spec();
  spec.vertices.push_back("isolated");
  const NetworkInstance net = load_network(spec);
  CHECK(net.vertex_count() == 4);
  CHECK(net.edge_count() == 4);
}

TEST_CASE("load_network rejects equal source and destination") {
  auto spec = testutil::diamond_spec();
  spec.destination = "s";
  CHECK(thrown_code([&] { load_network(spec); }) == Errc::invalid_param);
}

TEST_CASE("enumerate_paths on the diamond") {
  const PathSet set = enumerate_paths(load_network(testutil::diamond_spec()));
  REQUIRE(set.paths.size() == 2);
  CHECK(set.paths[0].edges == std::vector<int>{0, 1});
  CHECK(set.paths[1].edges == std::vector<int>{2, 3});
  CHECK(set.dimension == 2);
}

TEST_CASE("enumerate_paths on the parallel-serial network") {
  const PathSet set = enumerate_paths(load_network(testutil::parallel_serial_spec()));
  REQUIRE(set.paths.size() == 4);
  CHECK(set.paths[0].edges == std::vector<int>{0, 2});
  CHECK(set.paths[1].edges == std::vector<int>{0, 3});
  CHECK(set.paths[2].edges == std::vector<int>{1, 2});
  CHECK(set.paths[3].edges == std::vector<int>{1, 3});
  CHECK(set.dimension == 3);
  CHECK(set.dimension == testutil::naive_rank(testutil::path_vectors(set)));
}

TEST_CASE("enumerate_paths on the Wheatstone network") {
  const PathSet set = enumerate_paths(load_network(testutil::wheatstone_spec()));
  REQUIRE(set.paths.size() == 3);
  CHECK(set.dimension == 3);
  CHECK(set.dimension == testutil::naive_rank(testutil::path_vectors(set)));
}

TEST_CASE("enumerate_paths respects the path cap") {
  const NetworkInstance net = load_network(testutil::grid_spec(4));
  CHECK(enumerate_paths(net).paths.size() == 20);
  CHECK(thrown_code([&] { enumerate_paths(net, 10); }) == Errc::path_explosion);
}

TEST_CASE("enumeration is deterministic and lexicographic") {
  const NetworkInstance net = load_network(testutil::grid_spec(3));
  const PathSet a = enumerate_paths(net);
  const PathSet b = enumerate_paths(net);
  REQUIRE(a.paths.size() == b.paths.size());
  for (std::size_t i = 0; i < a.paths.size(); ++i) CHECK(a.paths[i].edges == b.paths[i].edges);
  for (std::size_t i = 1; i < a.paths.size(); ++i) CHECK(a.paths[i - 1].edges < a.paths[i].edges);
}

TEST_CASE("path bits agree with edge sequences") {
  const PathSet set = enumerate_paths(load_network(testutil::grid_spec(3)));
  for (const auto& p : set.paths) {
    std::size_t bit_sum = 0;
    for (const auto b : p.bits) bit_sum += b;
    CHECK(bit_sum == p.edges.size());
    for (const int e : p.edges) CHECK(p.bits[e] == 1);
  }
}

TEST_CASE("acyclic dimension identity d = m - n + 2") {
  for (const int k : {2, 3, 4}) {
    const NetworkInstance net = load_network(testutil::grid_spec(k));
    const PathSet set = enumerate_paths(net);
    CHECK(set.dimension == net.edge_count() - net.vertex_count() + 2);
  }
  // Random layered DAGs: every vertex keeps one in- and one out-edge, so all
  // edges survive validation and the identity applies.
  for (const std::uint64_t seed : {7ULL, 11ULL, 99ULL}) {
    CounterRng rng(seed, 0xDA6);
    const int layers = 3 + static_cast<int>(rng.next_u01() * 3);
    std::vector<int> width(layers);
    for (auto& w : width) w = 2 + static_cast<int>(rng.next_u01() * 3);
    NetworkSpec spec;
    spec.vertices = {"s", "r"};
    std::vector<std::vector<std::string>> layer_names(layers);
    for (int l = 0; l < layers; ++l)
      for (int i = 0; i < width[l]; ++i) {
        layer_names[l].push_back("L" + std::to_string(l) + "_" + std::to_string(i));
        spec.vertices.push_back(layer_names[l].back());
      }
    int id = 0;
    for (const auto& v : layer_names[0]) spec.edges.push_back({id++, "s", v});
    for (int l = 0; l + 1 < layers; ++l) {
      for (int i = 0; i < width[l]; ++i) {
        for (int j = 0; j < width[l + 1]; ++j) {
          // Guarantees out-degree for i and in-degree for j.
          const bool forced = (i % width[l + 1]) == j || (j % width[l]) == i;
          if (forced || rng.next_u01() < 0.5)
            spec.edges.push_back({id++, layer_names[l][i], layer_names[l + 1][j]});
        }
      }
    }
    for (const auto& v : layer_names[layers - 1]) spec.edges.push_back({id++, v, "r"});
    spec.source = "s";
    spec.destination = "r";
    const NetworkInstance net = load_network(spec);
    const PathSet set = enumerate_paths(net);
    CHECK(set.dimension == net.edge_count() - net.vertex_count() + 2);
    CHECK(set.dimension == testutil::naive_rank(testutil::path_vectors(set)));
  }
}

TEST_CASE("path_cost dots bits with edge costs") {
  const PathSet set = enumerate_paths(load_network(testutil::diamond_spec()));
  const std::vector<double> costs{1, 2, 3, 4};
  CHECK(path_cost(set.paths[0], costs) == 3.0);
  const std::vector<double> zero(4, 0.0);
  CHECK(path_cost(set.paths[1], zero) == 0.0);

  const PathSet ps = enumerate_paths(load_network(testutil::parallel_serial_spec()));
  const std::vector<double> costs2{0.5, 1.5, 2.5, 3.5};
  CHECK(path_cost(ps.paths[3], costs2) == 5.0);  // path (1,3)

  const std::vector<double> wrong(3, 1.0);
  CHECK(testutil::thrown_code([&] { path_cost(ps.paths[0], wrong); }) ==
        Errc::dimension_mismatch);
}

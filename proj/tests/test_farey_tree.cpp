#include "doctest.h"

#include <random>
#include <thread>

#include "ribbon/farey_tree.hpp"
#include "support/oracles.hpp"

using namespace ribbon;

namespace {

std::vector<FareyDart> random_flips(int length, std::mt19937_64& rng) {
  std::vector<FareyDart> flips;
  FareyDart d = PSL2Mat::identity();
  for (int i = 0; i < length; ++i) {
    // Step to a nearby dart: rotate, cross, or flip the same edge again.
    switch (rng() % 4) {
      case 0: d = farey_sigma(d); break;
      case 1: d = farey_lambda(d); break;
      case 2: d = farey_iota(farey_sigma(farey_sigma(d))); break;
      default: break;
    }
    flips.push_back(d);
  }
  return flips;
}

const PPSL2Element& golden() {
  static const auto f = parse_ppsl2("-1 [[0,-1],[1,1]]\n0 [[1,-1],[0,1]]\n1 [[1,-1],[1,0]]\ninf [[1,0],[1,1]]\n");
  return f;
}

}  // namespace

TEST_SUITE("farey_tree") {

TEST_CASE("balls in the Farey tree are trees with doubling spheres") {
  const auto ball = farey_ball(8);
  CHECK(ball->acyclic);
  REQUIRE(ball->sphere_sizes.size() == 9);
  CHECK(ball->sphere_sizes[0] == 1);
  for (int r = 1; r <= 8; ++r) CHECK(ball->sphere_sizes[static_cast<std::size_t>(r)] == 3u << (r - 1));
  CHECK(ball->depth.size() == 766);
  CHECK(farey_ball(8) == ball);
  CHECK_THROWS_AS(build_farey_ball(-1), DomainError);
}

TEST_CASE("concurrent readers share one cached ball") {
  std::vector<std::shared_ptr<const FareyBall>> seen(8);
  std::vector<std::thread> workers;
  for (std::size_t i = 0; i < seen.size(); ++i) workers.emplace_back([&seen, i] { seen[i] = farey_ball(7); });
  for (auto& w : workers) w.join();
  for (const auto& b : seen) CHECK(b == seen.front());
  CHECK(seen.front()->depth.size() == 382);
}

TEST_CASE("local structure of the tree") {
  std::mt19937_64 rng(2);
  const PSL2Mat gens[] = {PSL2Mat::S(), PSL2Mat::U(), PSL2Mat::T()};
  for (int trial = 0; trial < 200; ++trial) {
    FareyDart g, h;
    for (int i = 0; i < 8; ++i) g = g * gens[rng() % 3];
    for (int i = 0; i < 5; ++i) h = h * gens[rng() % 3];
    CHECK(farey_iota(farey_iota(g)) == g);
    CHECK(farey_sigma(farey_sigma(farey_sigma(g))) == g);
    CHECK(farey_iota(g) != g);
    CHECK(farey_edge(g) == farey_edge(farey_iota(g)));
    CHECK(farey_vertex(g) == farey_vertex(farey_sigma(g)));
    CHECK(farey_vertex(g) != farey_vertex(farey_iota(g)));
    // Left turns stay on the same puncture.
    CHECK(puncture_rational(farey_lambda(g)) == puncture_rational(g));
    // The three punctures around a vertex are pairwise Farey neighbours.
    const auto n = farey_neighbors(g);
    const ExtRational p[] = {puncture_rational(g), puncture_rational(n.sigma), puncture_rational(n.sigma2)};
    for (int i = 0; i < 3; ++i) {
      const auto& x = p[i];
      const auto& y = p[(i + 1) % 3];
      const auto det = x.num() * y.den() - x.den() * y.num();
      CHECK((det == 1 || det == -1));
    }
    // Left multiplication is a tree automorphism.
    const auto hn = farey_neighbors(h * g);
    CHECK(hn.sigma == h * n.sigma);
    CHECK(hn.sigma2 == h * n.sigma2);
    CHECK(hn.iota == h * n.iota);
    CHECK(puncture_rational(h * g) == moebius(h, puncture_rational(g)));
  }
}

TEST_CASE("a single flip gives the golden map") {
  const auto f = flip_sequence_to_circle_map({PSL2Mat::identity()});
  CHECK(f == golden());
  CHECK(format_ppsl2(f) == "-1 [[0,-1],[1,1]]\n0 [[1,-1],[0,1]]\n1 [[1,-1],[1,0]]\ninf [[1,0],[1,1]]\n");
  const auto twice = flip_sequence_to_circle_map({PSL2Mat::identity(), PSL2Mat::identity()});
  CHECK(twice == ppsl2_compose(golden(), golden()));
  CHECK(flip_sequence_to_circle_map(std::vector<FareyDart>(4, PSL2Mat::identity())) == PPSL2Element());
  CHECK(flip_sequence_to_circle_map(std::vector<FareyDart>(3, PSL2Mat::identity())) == ppsl2_inverse(golden()));
  CHECK(flip_sequence_to_circle_map({PSL2Mat::S()}) == golden());
}

TEST_CASE("the empty patch is the identity") {
  CHECK(circle_map(TreePatch()) == PPSL2Element());
  CHECK(flip_sequence_to_circle_map({}) == PPSL2Element());
  TreePatch p;
  for (int i = 0; i < 4; ++i) p.flip(PSL2Mat::U());
  CHECK(p.empty());
  p.flip(PSL2Mat::U());
  CHECK(p.support().size() == 6);
}

TEST_CASE("circle maps agree with the patched tree on random flips") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto flips = random_flips(1 + trial % 6, rng);
    TreePatch patch;
    oracle::PatchedFarey tree;
    for (const auto& d : flips) {
      patch.flip(d);
      tree.flip(d);
    }
    const auto f = circle_map(patch);
    CHECK(f == flip_sequence_to_circle_map(flips));
    CHECK(oracle::circle_map_agrees(tree, f, 6));
    for (const auto& d : patch.support()) CHECK(patch.sigma(d) == tree.sigma(d));
  }
}

TEST_CASE("flips far from the root respect the radius bound") {
  FareyDart far;
  for (int i = 0; i < 9; ++i) far = farey_iota(i % 2 ? farey_sigma(far) : farey_sigma(farey_sigma(far)));
  TreePatch p;
  p.flip(far);
  CHECK_THROWS_WITH_AS(circle_map(p, CircleMapOptions{4}), "patch support exceeds the configured radius bound",
                       DomainError);
  CHECK_NOTHROW(circle_map(p, CircleMapOptions{12}));
}

}  // TEST_SUITE

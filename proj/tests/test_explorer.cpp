#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>

#include "ribbon/explorer.hpp"
#include "ribbon/unicyclic.hpp"
#include "support/oracles.hpp"

using namespace ribbon;

namespace {

MarkedGraph dumbbell() {
  return MarkedGraph(RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 2}, {4, 5}, {3, 6}}), 1);
}
MarkedGraph nonplanar_theta() {
  return MarkedGraph(RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 5}, {3, 6}}), 1);
}

std::set<CanonicalForm> node_set(const OrbitGraph& g) { return {g.nodes.begin(), g.nodes.end()}; }

std::vector<std::tuple<int, int, std::size_t>> class_sizes(const Enumeration& e) {
  std::vector<std::tuple<int, int, std::size_t>> out;
  for (const auto& c : e.classes) out.emplace_back(c.genus, c.punctures, c.forms.size());
  return out;
}

}  // namespace

TEST_SUITE("explorer") {

TEST_CASE("enumeration matches brute force") {
  for (int v : {2, 4}) {
    std::vector<CanonicalForm> expected;
    for (const auto& m : oracle::brute_force_types(v)) expected.push_back(canonical_form(m));
    std::sort(expected.begin(), expected.end());
    CHECK(std::adjacent_find(expected.begin(), expected.end()) == expected.end());
    CHECK(enumerate_types(v).forms == expected);
  }
}

TEST_CASE("enumeration counts by topological type") {
  using T = std::tuple<int, int, std::size_t>;
  CHECK(class_sizes(enumerate_types(2)) == std::vector<T>{{0, 3, 4}, {1, 1, 1}});
  CHECK(class_sizes(enumerate_types(4)) == std::vector<T>{{0, 4, 32}, {1, 2, 28}});
  const auto six = enumerate_types(6, 4);
  CHECK(six.forms.size() == 1105);
  CHECK(class_sizes(six) == std::vector<T>{{0, 5, 336}, {1, 3, 664}, {2, 1, 105}});
  CHECK(six.forms == enumerate_types(6, 1).forms);
  for (const auto& form : six.forms) CHECK(canonical_form(from_canonical(form)) == form);
}

TEST_CASE("enumeration rejects impossible vertex counts") {
  CHECK_THROWS_WITH_AS(enumerate_types(3), doctest::Contains("positive and even"), DomainError);
  CHECK_THROWS_AS(enumerate_types(0), DomainError);
  CHECK_THROWS_WITH_AS(enumerate_types(kEnumerateMaxVertices + 2), doctest::Contains("enumeration bound"),
                       DomainError);
}

TEST_CASE("enumerations are cached when a cache directory is set") {
  const auto dir = std::filesystem::temp_directory_path() / "ribbon-cache-test";
  std::filesystem::remove_all(dir);
  ::setenv(kCacheDirEnv, dir.c_str(), 1);
  const auto fresh = enumerate_types(4);
  const auto file = dir / "types-v4.txt";
  CHECK(std::filesystem::exists(file));
  CHECK(enumerate_types(4).forms == fresh.forms);
  {
    std::ofstream out(file);
    out << "not a form\n";
  }
  CHECK(enumerate_types(4).forms == fresh.forms);
  CHECK(enumerate_types(4).forms.size() == 60);
  ::unsetenv(kCacheDirEnv);
  std::filesystem::remove_all(dir);
}

TEST_CASE("available moves") {
  const auto m = dumbbell();
  CHECK(available_moves(m, MoveSet{true, false, false}) == std::vector<Move>{Flip{3}});
  CHECK(available_moves(m, MoveSet{false, true, false}) == std::vector<Move>{Shuffle{1}, Shuffle{4}});
  CHECK(available_moves(m, MoveSet{false, false, true}).size() == 2);
  CHECK(available_moves(m, MoveSet{false, false, false}).empty());
  CHECK(parse_move_set("flip,doe") == MoveSet{true, false, true});
  CHECK(parse_move_set("") == MoveSet{false, false, false});
  CHECK(parse_move_set("shuffle") == MoveSet{false, true, false});
  CHECK_THROWS_AS(parse_move_set("flip,twist"), DomainError);
}

TEST_CASE("flip and doe orbits are the topological types") {
  for (int v : {2, 4}) {
    for (const auto& c : enumerate_types(v).classes) {
      const auto g = orbit(from_canonical(c.forms.front()), MoveSet{});
      CHECK(g.complete);
      CHECK(node_set(g) == std::set<CanonicalForm>(c.forms.begin(), c.forms.end()));
    }
  }
  // Shuffles connect the genera.
  const auto all = orbit(dumbbell(), MoveSet{true, true, true});
  CHECK(all.nodes.size() == 5);
  CHECK(orbit(dumbbell(), MoveSet{}).nodes.size() == 4);
}

TEST_CASE("orbit graphs are strongly connected and reproducible") {
  const auto start = from_canonical(enumerate_types(4).classes[1].forms[3]);
  const auto g = orbit(start, MoveSet{true, true, true}, {}, 1);
  const auto parallel = orbit(start, MoveSet{true, true, true}, {}, 4);
  CHECK(g.nodes == parallel.nodes);
  CHECK(g.arcs == parallel.arcs);
  CHECK(g.depth == parallel.depth);
  CHECK(g.nodes.size() == 60);
  for (std::size_t k : {std::size_t{5}, std::size_t{17}, g.nodes.size() - 1}) {
    CHECK(node_set(orbit(from_canonical(g.nodes[k]), MoveSet{true, true, true})) == node_set(g));
  }
  for (const auto& arc : g.arcs) {
    const auto from = from_canonical(g.nodes[arc.from]);
    CHECK(canonical_form(apply_move(from, arc.move)) == g.nodes[arc.to]);
  }
  CHECK(std::is_sorted(g.arcs.begin(), g.arcs.end(), [](const OrbitArc& l, const OrbitArc& r) {
    return std::tuple(l.from, l.to, format_move(l.move)) < std::tuple(r.from, r.to, format_move(r.move));
  }));
}

TEST_CASE("every orbit arc is undone by the inverse sequence") {
  const auto start = from_canonical(enumerate_types(4).forms[10]);
  const auto g = orbit(start, MoveSet{true, true, true});
  for (const auto& arc : g.arcs) {
    const auto from = from_canonical(g.nodes[arc.from]);
    const auto back = invert_sequence({arc.move}, from);
    CHECK(canonical_form(apply_sequence(apply_move(from, arc.move), back)) == g.nodes[arc.from]);
  }
}

TEST_CASE("the two-vertex types are the doe orbits of three graphs") {
  std::vector<CanonicalForm> forms;
  for (const auto& m : {dumbbell(), nonplanar_theta(),
                        MarkedGraph(RibbonGraph::from_cycles(6, {{1, 2, 3}, {4, 6, 5}}, {{1, 4}, {2, 5}, {3, 6}}), 1)}) {
    const auto orbit_forms = doe_orbit(m);
    CHECK(orbit_forms.size() * automorphisms(m.graph()).size() == 6);
    forms.insert(forms.end(), orbit_forms.begin(), orbit_forms.end());
  }
  std::sort(forms.begin(), forms.end());
  CHECK(forms == enumerate_types(2).forms);
}

TEST_CASE("the empty move set fixes the basepoint") {
  const auto g = orbit(dumbbell(), MoveSet{false, false, false});
  CHECK(g.nodes.size() == 1);
  CHECK(g.arcs.empty());
  CHECK(g.complete);
  CHECK(g.basepoint == canonical_form(dumbbell()));
}

TEST_CASE("budgets stop the search and say so") {
  const auto start = from_canonical(enumerate_types(6).forms.front());
  const auto small = orbit(start, MoveSet{}, OrbitBudget{10, -1});
  CHECK_FALSE(small.complete);
  CHECK(small.nodes.size() <= 10);
  CHECK(small.frontier > 0);
  const auto shallow = orbit(start, MoveSet{}, OrbitBudget{100000, 1});
  CHECK_FALSE(shallow.complete);
  CHECK(*std::max_element(shallow.depth.begin(), shallow.depth.end()) == 1);
  const auto whole = orbit(dumbbell(), MoveSet{}, OrbitBudget{100000, 10});
  CHECK(whole.complete);
  CHECK(whole.frontier == 0);
}

TEST_CASE("relations hold on small graphs") {
  const auto r = certify_relations(dumbbell());
  CHECK(r.all_hold());
  CHECK(r.skipped_loops == std::vector<Dart>{1, 4});
  REQUIRE(r.flips.size() == 1);
  CHECK(r.flips[0].involution);
  CHECK(r.flips[0].order_four);
  for (const auto& form : enumerate_types(4).forms) CHECK(certify_relations(from_canonical(form)).all_hold());
  std::size_t embedded = 0;
  const auto six = enumerate_types(6).forms;
  for (std::size_t i = 0; i < six.size(); i += 7) {
    const auto report = certify_relations(from_canonical(six[i]));
    CHECK(report.all_hold());
    for (const auto& p : report.pentagons) embedded += p.embedded;
    for (const auto& s : report.squares) CHECK(s.commutes);
  }
  CHECK(embedded > 0);
}

TEST_CASE("four-vertex graphs have commuting squares and pentagon witnesses") {
  std::size_t squares = 0, witnesses = 0;
  for (const auto& form : enumerate_types(4).forms) {
    const auto r = certify_relations(from_canonical(form));
    for (const auto& sq : r.squares) squares += sq.commutes;
    for (const auto& p : r.pentagons) witnesses += p.witnesses.size();
  }
  CHECK(squares > 0);
  CHECK(witnesses > 0);
}

TEST_CASE("no embedded pentagons with four vertices") {
  for (const auto& form : enumerate_types(4).forms) {
    for (const auto& p : certify_relations(from_canonical(form)).pentagons) CHECK_FALSE(p.embedded);
  }
}

TEST_CASE("isotropy loops") {
  CHECK(isotropy_generators(dumbbell(), 0).size() == 1);
  CHECK(isotropy_generators(dumbbell(), 1).size() == 1);
  const auto two = isotropy_generators(dumbbell(), 2);
  CHECK(two.size() == 3);
  CHECK(two.front().identity);
  CHECK(two.front().loop.empty());
  CHECK(is_identity(two.front().table));
  for (std::size_t i = 1; i < two.size(); ++i) {
    CHECK_FALSE(two[i].identity);
    CHECK_FALSE(is_identity(two[i].table));
    CHECK(are_isomorphic(apply_sequence(dumbbell(), two[i].loop), dumbbell()));
    CHECK(loop_automorphism(dumbbell(), two[i].loop) == two[i].table);
  }
  CHECK(isotropy_generators(nonplanar_theta(), 1).size() == 6);
  CHECK(isotropy_generators(dumbbell(), 4).size() == 4);
  CHECK(is_identity(loop_automorphism(dumbbell(), MoveSequence(4, Flip{3}))));
  CHECK_THROWS_AS(isotropy_generators(dumbbell(), kIsotropyMaxDepth + 1), DomainError);
  CHECK_THROWS_AS(isotropy_generators(dumbbell(), -1), DomainError);
}

TEST_CASE("transported moves stay applicable") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const MarkedGraph m(oracle::random_graph(4, rng), 1);
    const auto [h, perm] = oracle::relabel(m.graph(), rng);
    const MarkedGraph n(h, perm[1]);
    MoveSequence moves{Shuffle{m.graph().vertex_of(2)}, DoeMove{DoeKind::rotate}};
    moves.push_back(available_moves(apply_sequence(m, moves), MoveSet{true, false, false}).back());
    const auto image = transport_moves(moves, m, n, perm);
    CHECK(canonical_form(apply_sequence(n, image)) == canonical_form(apply_sequence(m, moves)));
  }
}

TEST_CASE("unicyclic graphs") {
  // A two-edge cycle with one pendant branch at each vertex.
  const auto both_sides = RibbonGraph::from_cycles(8, {{1, 2, 3}, {4, 5, 6}}, {{1, 4}, {2, 5}, {3, 7}, {6, 8}});
  const auto one_side = RibbonGraph::from_cycles(8, {{1, 2, 3}, {4, 6, 5}}, {{1, 4}, {2, 5}, {3, 7}, {6, 8}});
  const auto a = classify_unicyclic(both_sides);
  CHECK(a.kind == UnicyclicKind::chark);
  CHECK(a.cycle.size() == 2);
  CHECK(a.left.size() == 1);
  CHECK(a.right.size() == 1);
  const auto b = classify_unicyclic(one_side);
  CHECK(b.kind == UnicyclicKind::f_infinity_like);
  CHECK(std::min(b.left.size(), b.right.size()) == 0);
  CHECK(std::string(to_string(b.kind)) == "F-infinity-like");
  CHECK(std::string(to_string(a.kind)) == "chark");
  // A bare cycle has no branches at all.
  const auto ring = RibbonGraph::from_cycles(4, {{1, 2}, {3, 4}}, {{1, 3}, {2, 4}});
  CHECK(classify_unicyclic(ring).kind == UnicyclicKind::f_infinity_like);
  const auto tree = RibbonGraph::from_cycles(2, {}, {{1, 2}});
  CHECK_THROWS_WITH_AS(classify_unicyclic(tree), doctest::Contains("rank is 0"), DomainError);
  CHECK_THROWS_AS(classify_unicyclic(dumbbell().graph()), DomainError);
}

}  // TEST_SUITE

// Copyright 2026 The ldelta Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <random>

#include "ldelta/ball.hpp"
#include "ldelta/error.hpp"
#include "support.hpp"

using namespace ldelta;
using ldelta::test::w;

namespace {
  using test::doubled;
  using test::halfstep_bfs;
  using test::random_point;
  using Vec2 = test::Vec2;

  std::vector<std::int32_t> heis_inverse(std::vector<std::int32_t> const& x) {
    return {-x[0], -x[1], x[0] * x[1] - x[2]};
  }

  std::vector<std::int32_t> heis_mul(std::vector<std::int32_t> const& x,
                                     std::vector<std::int32_t> const& y) {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2] + x[0] * y[1]};
  }

}  // namespace

TEST_SUITE("ball") {
  TEST_CASE("sizes of Z^2 balls") {
    for (int r = 0; r <= 8; ++r) {
      auto ball = build_ball(GroupSpec::builtin("z2-std"), r);
      CHECK(ball.size() == static_cast<std::size_t>(2 * r * r + 2 * r + 1));
    }
  }

  TEST_CASE("sizes of free group balls") {
    for (int r = 0; r <= 6; ++r) {
      auto ball = build_ball(GroupSpec::free_group(2), r);
      std::size_t expect = 1, sphere = 4;
      for (int k = 1; k <= r; ++k, sphere *= 3) {
        expect += sphere;
      }
      CHECK(ball.size() == expect);
    }
  }

  TEST_CASE("z2-abc ball matches lattice BFS") {
    auto ball = build_ball(GroupSpec::z2_abc(), 6);
    auto bfs  = test::lattice_bfs({{1, 0}, {0, 1}, {1, 1}}, 20, 6);
    CHECK(ball.size() == bfs.size());
    for (auto [v, d] : bfs) {
      auto id = ball.find(Element{{static_cast<std::int32_t>(v[0]), static_cast<std::int32_t>(v[1])}});
      REQUIRE(id);
      CHECK(ball.norm(*id) == d);
      CHECK(test::abc_norm(v[0], v[1]) == d);
    }
  }

  TEST_CASE("Heisenberg ball matches matrix BFS") {
    auto ball = build_ball(GroupSpec::heisenberg(), 4);
    auto bfs  = test::heis_bfs(4);
    CHECK(ball.size() == bfs.size());
    for (auto const& [k, d] : bfs) {
      auto id = ball.find(Element{k});
      REQUIRE(id);
      CHECK(ball.norm(*id) == d);
    }
    CHECK(bfs.at({0, 0, 1}) == 4);
    CHECK(ball.norm(test::vertex_at(ball, {0, 0, 1})) == 4);
  }

  TEST_CASE("layers are norms and balls grow") {
    for (auto const& name : {"z2-std", "z2-abc", "f2", "heisenberg", "z3-std"}) {
      auto ball = build_ball(GroupSpec::builtin(name), 4);
      for (VertexId v = 0; v < static_cast<VertexId>(ball.size()); ++v) {
        REQUIRE(ball.norm(v) >= 0);
        REQUIRE(v >= ball.layer_begin(ball.norm(v)));
        REQUIRE(v < ball.layer_end(ball.norm(v)));
        REQUIRE(geodesic_word(ball, BallIndex::identity(), v).size()
                == static_cast<std::size_t>(ball.norm(v)));
      }
      for (int n = 0; n < 4; ++n) {
        CHECK(ball.layer_end(n) - ball.layer_begin(n) > 0);
        for (auto e : ball.edges_in_layer(n)) {
          CHECK(ball.norm(e.u) == n);
          CHECK(ball.neighbor(e.u, e.label) == e.v);
        }
      }
      std::size_t prev = 0;
      for (int r = 0; r <= 4; ++r) {
        auto sz = build_ball(GroupSpec::builtin(name), r).size();
        CHECK(sz > prev);
        prev = sz;
      }
    }
  }

  TEST_CASE("vertex cap") {
    CHECK_THROWS_AS(build_ball(GroupSpec::free_group(2), 8, BallLimits{1000}), ResourceError);
    CHECK_THROWS_AS(build_ball(GroupSpec::free_group(2), -1), InputError);
  }

  TEST_CASE("distance examples") {
    auto ball = build_ball(GroupSpec::builtin("z2-std"), 4);
    CHECK(distance(ball, test::vx(ball, {0, 0}), test::vx(ball, {2, 1})) == Dist::whole(3));
    CHECK(distance(ball, test::vx(ball, {0, 0}), test::mid(ball, {0, 0}, {1, 0}))
          == Dist::from_halves(1));
    CHECK(distance(ball, test::mid(ball, {0, 0}, {1, 0}), test::mid(ball, {1, 0}, {1, 1}))
          == Dist::whole(1));
    CHECK(distance(ball, test::mid(ball, {0, 0}, {1, 0}), test::mid(ball, {0, 0}, {1, 0}))
          == Dist{});
    CHECK(distance(ball, test::mid(ball, {0, 0}, {1, 0}), test::mid(ball, {0, 1}, {1, 1}))
          == Dist::whole(2));
  }

  TEST_CASE("midpoint is half way") {
    std::mt19937_64 rng(1);
    for (auto const& name : {"z2-abc", "f2", "heisenberg"}) {
      auto ball = build_ball(GroupSpec::builtin(name), 5);
      for (int i = 0; i < 300; ++i) {
        auto p = random_point(ball, 3, rng);
        if (p.is_vertex()) {
          continue;
        }
        auto half = Dist::from_halves(1);
        CHECK(distance(ball, p, Point::vertex(p.u)) == half);
        CHECK(distance(ball, p, Point::vertex(p.v)) == half);
        CHECK(distance(ball, Point::vertex(p.u), Point::vertex(p.v)) == Dist::whole(1));
      }
    }
  }

  TEST_CASE("Z^2 distances match half-step BFS") {
    struct Case {
      char const*       name;
      std::vector<Vec2> gens;
    };
    std::mt19937_64 rng(2);
    for (auto const& c : {Case{"z2-std", {{1, 0}, {0, 1}}}, Case{"z2-abc", {{1, 0}, {0, 1}, {1, 1}}}}) {
      CAPTURE(c.name);
      auto ball = build_ball(GroupSpec::builtin(c.name), 8);
      for (int i = 0; i < 60; ++i) {
        auto p   = random_point(ball, 2, rng);
        auto bfs = halfstep_bfs(c.gens, doubled(ball, p), 16);
        for (int j = 0; j < 30; ++j) {
          auto q = random_point(ball, 2, rng);
          REQUIRE(distance(ball, p, q).halves() == bfs.at(doubled(ball, q)));
        }
      }
    }
  }

  TEST_CASE("Heisenberg distances match matrix BFS") {
    auto ball = build_ball(GroupSpec::heisenberg(), 6);
    auto bfs  = test::heis_bfs(6);
    auto last = ball.layer_end(2);
    for (VertexId g = 0; g < last; ++g) {
      for (VertexId h = 0; h < last; ++h) {
        auto rel = heis_mul(heis_inverse(ball.element(g).data), ball.element(h).data);
        REQUIRE(distance(ball, Point::vertex(g), Point::vertex(h)) == Dist::whole(bfs.at(rel)));
      }
    }
  }

  TEST_CASE("free group distances match the tree") {
    auto ball = build_ball(GroupSpec::free_group(2), 4);
    for (VertexId g = 0; g < static_cast<VertexId>(ball.size()); g += 3) {
      for (VertexId h = 0; h < static_cast<VertexId>(ball.size()); h += 5) {
        auto expect = test::tree_distance(ball.element(g).data, ball.element(h).data);
        REQUIRE(distance(ball, Point::vertex(g), Point::vertex(h))
                == Dist::whole(static_cast<std::int64_t>(expect)));
      }
    }
  }

  TEST_CASE("metric axioms on samples") {
    std::mt19937_64 rng(4);
    for (auto const& name : {"z2-abc", "f2", "heisenberg"}) {
      auto ball = build_ball(GroupSpec::builtin(name), 6);
      for (int i = 0; i < 3400; ++i) {
        auto p  = random_point(ball, 3, rng);
        auto q  = random_point(ball, 3, rng);
        auto s  = random_point(ball, 3, rng);
        auto pq = distance(ball, p, q);
        REQUIRE(pq == distance(ball, q, p));
        REQUIRE((pq == Dist{}) == (p == q));
        REQUIRE(pq <= distance(ball, p, s) + distance(ball, s, q));
      }
    }
  }

  TEST_CASE("geodesic examples") {
    auto z2 = build_ball(GroupSpec::builtin("z2-std"), 3);
    CHECK(geodesic_word(z2, BallIndex::identity(), test::vertex_at(z2, {2, 0})) == w(z2.group(), "a,a"));
    auto f2 = build_ball(GroupSpec::free_group(2), 3);
    CHECK(geodesic_word(f2, test::vertex(f2, "a,b"), test::vertex(f2, "a")) == w(f2.group(), "b^"));
    auto abc = build_ball(GroupSpec::z2_abc(), 3);
    CHECK(geodesic_word(abc, BallIndex::identity(), test::vertex_at(abc, {2, 2})) == w(abc.group(), "c,c"));
    CHECK(geodesic_word(abc, 5, 5).empty());
  }

  TEST_CASE("geodesics realize distances") {
    std::mt19937_64 rng(6);
    for (auto const& name : {"z2-abc", "f2", "heisenberg"}) {
      auto ball = build_ball(GroupSpec::builtin(name), 6);
      for (int i = 0; i < 500; ++i) {
        auto p    = random_point(ball, 3, rng);
        auto q    = random_point(ball, 3, rng);
        auto path = geodesic(ball, p, q);
        REQUIRE(path.length() == distance(ball, p, q));
        auto start = p.u;
        if (path.lead_half) {
          // Half-step from the midpoint towards one endpoint.
          start = ball.neighbor(p.u, *path.lead_half) == p.v ? p.v : p.u;
        } else {
          REQUIRE(p.is_vertex());
        }
        auto end = ball.walk(start, path.word);
        REQUIRE(end);
        if (q.is_vertex()) {
          CHECK_FALSE(path.trail_half);
          CHECK(*end == q.u);
        } else {
          REQUIRE(path.trail_half);
          auto other = ball.neighbor(*end, *path.trail_half);
          CHECK(Point::midpoint(*end, other) == q);
        }
      }
    }
  }

  TEST_CASE("sphere pairs examples") {
    auto z2 = build_ball(GroupSpec::builtin("z2-std"), 3);
    auto p1 = sphere_pairs(z2, 1);
    CHECK(p1.size() == 6);
    for (auto const& p : p1) {
      CHECK(p.distance == 2);
    }
    CHECK(sphere_pairs(z2, 0).empty());
    auto f2 = build_ball(GroupSpec::free_group(2), 3);
    CHECK(sphere_pairs(f2, 1).size() == 6);
    CHECK_THROWS_AS(sphere_pairs(z2, 3), InputError);
  }

  TEST_CASE("sphere pairs match a brute-force scan") {
    for (auto const& name : {"z2-std", "z2-abc", "f2", "heisenberg"}) {
      CAPTURE(name);
      auto ball = build_ball(GroupSpec::builtin(name), 5);
      for (int n = 0; n <= 4; ++n) {
        std::vector<SpherePair> expect;
        for (auto g = ball.layer_begin(n); g < ball.layer_end(n); ++g) {
          for (auto h = g + 1; h < ball.layer_end(n); ++h) {
            auto d = distance(ball, Point::vertex(g), Point::vertex(h));
            if (d <= Dist::whole(2)) {
              expect.push_back({g, h, static_cast<int>(d.halves() / 2)});
            }
          }
        }
        CHECK(sphere_pairs(ball, n) == expect);
      }
    }
  }
}

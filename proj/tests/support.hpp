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

// Helpers and brute-force oracles shared by the unit tests. Nothing here
// calls into the metric or median code under test.

#ifndef LDELTA_TESTS_SUPPORT_HPP_
#define LDELTA_TESTS_SUPPORT_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <vector>

#include "ldelta/ball.hpp"
#include "ldelta/group.hpp"
#include "ldelta/word.hpp"

namespace ldelta::test {

  inline Word w(GroupSpec const& g, std::string const& text) {
    return parse_word(g.alphabet(), text);
  }

  inline VertexId vertex(BallIndex const& ball, std::string const& word) {
    auto v = ball.walk(BallIndex::identity(), w(ball.group(), word));
    if (!v) {
      std::abort();
    }
    return *v;
  }

  inline VertexId vertex_at(BallIndex const& ball, std::vector<std::int32_t> data) {
    auto v = ball.find(Element{std::move(data)});
    if (!v) {
      std::abort();
    }
    return *v;
  }

  inline Point vx(BallIndex const& ball, std::vector<std::int32_t> data) {
    return Point::vertex(vertex_at(ball, std::move(data)));
  }

  //! Midpoint of the edge between two lattice/group elements.
  inline Point mid(BallIndex const&          ball,
                   std::vector<std::int32_t> a,
                   std::vector<std::int32_t> b) {
    return Point::midpoint(vertex_at(ball, std::move(a)), vertex_at(ball, std::move(b)));
  }

  inline Word random_word(GroupSpec const& g, std::size_t len, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> pick(0, static_cast<int>(g.alphabet().size()) - 1);
    Word out(len);
    for (auto& x : out) {
      x = pick(rng);
    }
    return out;
  }

  //! Uniform vertex of norm <= max_norm, or half the time the midpoint of an
  //! edge leaving it.
  inline Point random_point(BallIndex const& ball, int max_norm, std::mt19937_64& rng) {
    auto n = static_cast<std::size_t>(ball.layer_end(max_norm));
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    std::bernoulli_distribution                edge(0.5);
    VertexId u = static_cast<VertexId>(pick(rng));
    if (!edge(rng) || ball.norm(u) == max_norm) {
      return Point::vertex(u);
    }
    std::uniform_int_distribution<int> gen(0, static_cast<int>(ball.group().alphabet().size()) - 1);
    return Point::midpoint(u, ball.neighbor(u, gen(rng)));
  }

  //! Cancels adjacent inverse letters until none remain.
  inline Word naive_reduce(Alphabet const& al, Word x) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (al.inverse(x[i]) == x[i + 1]) {
          x.erase(x.begin() + static_cast<long>(i), x.begin() + static_cast<long>(i) + 2);
          changed = true;
          break;
        }
      }
    }
    return x;
  }

  // ---- Z^2 with a finite generating set of vectors: plain BFS on Z^2 --------

  using Vec2 = std::array<long, 2>;

  //! Word-metric distances from the origin for Z^2 generated by `gens` and
  //! their negatives, for all vectors within the box |x|,|y| <= box.
  inline std::map<Vec2, int> lattice_bfs(std::vector<Vec2> gens, long box, int radius) {
    std::vector<Vec2> all;
    for (auto g : gens) {
      all.push_back(g);
      all.push_back({-g[0], -g[1]});
    }
    std::map<Vec2, int> dist{{Vec2{0, 0}, 0}};
    std::queue<Vec2>    q;
    q.push({0, 0});
    while (!q.empty()) {
      auto v = q.front();
      q.pop();
      auto d = dist[v];
      if (d == radius) {
        continue;
      }
      for (auto g : all) {
        Vec2 u{v[0] + g[0], v[1] + g[1]};
        if (std::labs(u[0]) > box || std::labs(u[1]) > box || dist.count(u)) {
          continue;
        }
        dist[u] = d + 1;
        q.push(u);
      }
    }
    return dist;
  }

  //! |(x, y)| for Z^2 generated by a=(1,0), b=(0,1), c=(1,1).
  inline long abc_norm(long x, long y) {
    if ((x >= 0) == (y >= 0)) {
      return std::max(std::labs(x), std::labs(y));
    }
    return std::labs(x) + std::labs(y);
  }

  // Half-step BFS on Z^2 in doubled coordinates: vertices are even pairs,
  // the midpoint of u, u + g sits at 2u + g. Only valid when the generators
  // have distinct parity classes.
  inline std::map<Vec2, int> halfstep_bfs(std::vector<Vec2> const& gens, Vec2 from, int max_halves) {
    auto gen_of = [&](Vec2 m) -> std::optional<Vec2> {
      for (auto g : gens) {
        if (((m[0] - g[0]) % 2 == 0) && ((m[1] - g[1]) % 2 == 0)) {
          return g;
        }
      }
      return std::nullopt;
    };
    std::map<Vec2, int> dist{{from, 0}};
    std::queue<Vec2>    q;
    q.push(from);
    while (!q.empty()) {
      auto m = q.front();
      q.pop();
      auto d = dist[m];
      if (d == max_halves) {
        continue;
      }
      std::vector<Vec2> steps;
      if (m[0] % 2 == 0 && m[1] % 2 == 0) {
        steps = gens;
      } else {
        steps = {*gen_of(m)};
      }
      for (auto g : steps) {
        for (int s : {1, -1}) {
          Vec2 n{m[0] + s * g[0], m[1] + s * g[1]};
          if (!dist.count(n)) {
            dist[n] = d + 1;
            q.push(n);
          }
        }
      }
    }
    return dist;
  }

  //! Doubled lattice coordinates of a point of a Z^2 ball.
  inline Vec2 doubled(BallIndex const& ball, Point p) {
    auto const& a = ball.element(p.u).data;
    auto const& b = ball.element(p.v).data;
    return {a[0] + b[0], a[1] + b[1]};
  }

  //! Global half-step distances from each point, and the ball's points, for
  //! a Z^2 group given by generator vectors.
  struct LatticeOracle {
    std::vector<Vec2>  gens;
    BallIndex const*   ball;
    std::vector<Point> candidates;
    std::map<Vec2, std::map<Vec2, int>>  fields;
    std::map<Vec2, std::vector<int>>     rows;  // distances to candidates

    LatticeOracle(std::vector<Vec2> g, BallIndex const& b) : gens(std::move(g)), ball(&b) {
      for (VertexId v = 0; v < static_cast<VertexId>(b.size()); ++v) {
        candidates.push_back(Point::vertex(v));
      }
      for (auto e : b.edges()) {
        candidates.push_back(Point::midpoint(e.u, e.v));
      }
    }

    std::map<Vec2, int> const& field(Point p) {
      auto a  = doubled(*ball, p);
      auto it = fields.find(a);
      if (it == fields.end()) {
        it = fields.emplace(a, halfstep_bfs(gens, a, 4 * ball->radius() + 4)).first;
      }
      return it->second;
    }

    std::vector<int> const& row(Point p) {
      auto a  = doubled(*ball, p);
      auto it = rows.find(a);
      if (it == rows.end()) {
        auto const&      f = field(p);
        std::vector<int> r;
        for (auto c : candidates) {
          r.push_back(f.at(doubled(*ball, c)));
        }
        it = rows.emplace(a, std::move(r)).first;
      }
      return it->second;
    }

    int d(Point p, Point q) {
      return field(p).at(doubled(*ball, q));
    }

    int slack(Point t, Point x, Point y, Point z) {
      auto s = [&](Point p, Point q) { return d(p, t) + d(t, q) - d(p, q); };
      return std::max({s(x, y), s(y, z), s(z, x)});
    }

    //! Minimum slack in halves over every point of the ball.
    int best(Point x, Point y, Point z) {
      auto const& rx  = row(x);
      auto const& ry  = row(y);
      auto const& rz  = row(z);
      int         dxy = d(x, y), dyz = d(y, z), dzx = d(z, x);
      int         out = 1 << 30;
      for (std::size_t i = 0; i < candidates.size(); ++i) {
        out = std::min(out, std::max({rx[i] + ry[i] - dxy, ry[i] + rz[i] - dyz, rz[i] + rx[i] - dzx}));
      }
      return out;
    }
  };

  // ---- Heisenberg group via 3x3 unitriangular matrices ----------------------

  using Mat = std::array<long, 9>;

  inline Mat mat_mul(Mat const& a, Mat const& b) {
    Mat c{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        long s = 0;
        for (int k = 0; k < 3; ++k) {
          s += a[3 * i + k] * b[3 * k + j];
        }
        c[3 * i + j] = s;
      }
    }
    return c;
  }

  //! Generator matrices for letters a, a^, b, b^ (ids 0..3).
  inline Mat heis_letter(int g) {
    Mat m{1, 0, 0, 0, 1, 0, 0, 0, 1};
    switch (g) {
      case 0: m[1] = 1; break;
      case 1: m[1] = -1; break;
      case 2: m[5] = 1; break;
      default: m[5] = -1; break;
    }
    return m;
  }

  //! (p, q, r) read off the matrix [[1,p,r],[0,1,q],[0,0,1]].
  inline std::vector<std::int32_t> heis_coords(Mat const& m) {
    return {static_cast<std::int32_t>(m[1]),
            static_cast<std::int32_t>(m[5]),
            static_cast<std::int32_t>(m[2])};
  }

  inline std::vector<std::int32_t> heis_eval(Word const& word) {
    Mat m{1, 0, 0, 0, 1, 0, 0, 0, 1};
    for (auto g : word) {
      m = mat_mul(m, heis_letter(g));
    }
    return heis_coords(m);
  }

  //! Word lengths of all Heisenberg elements within `radius`, by BFS on
  //! matrices.
  inline std::map<std::vector<std::int32_t>, int> heis_bfs(int radius) {
    Mat id{1, 0, 0, 0, 1, 0, 0, 0, 1};
    std::map<std::vector<std::int32_t>, int> dist{{heis_coords(id), 0}};
    std::queue<Mat> q;
    q.push(id);
    while (!q.empty()) {
      auto m = q.front();
      q.pop();
      auto d = dist[heis_coords(m)];
      if (d == radius) {
        continue;
      }
      for (int g = 0; g < 4; ++g) {
        auto n = mat_mul(m, heis_letter(g));
        auto k = heis_coords(n);
        if (!dist.count(k)) {
          dist[k] = d + 1;
          q.push(n);
        }
      }
    }
    return dist;
  }

  // ---- Free group F2 over a, a^, b, b^: reduced words ----------------------

  //! Length of the common prefix of two freely reduced words.
  inline std::size_t common_prefix(Word const& x, Word const& y) {
    std::size_t i = 0;
    while (i < x.size() && i < y.size() && x[i] == y[i]) {
      ++i;
    }
    return i;
  }

  //! Tree distance between reduced words.
  inline std::size_t tree_distance(Word const& x, Word const& y) {
    auto c = common_prefix(x, y);
    return x.size() + y.size() - 2 * c;
  }

}  // namespace ldelta::test

#endif  // LDELTA_TESTS_SUPPORT_HPP_

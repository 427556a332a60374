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

#include "ldelta/convexity.hpp"

#include <limits>
#include <string>
#include <tuple>

#include "ldelta/error.hpp"
#include "ldelta/parallel.hpp"

namespace ldelta {

  std::optional<Word> inside_ball_path(BallIndex const& ball,
                                       VertexId         g,
                                       VertexId         h,
                                       int              n) {
    if (n < 0 || n > ball.radius() - 1) {
      throw InputError("sphere radius " + std::to_string(n) + " must lie in [0, "
                       + std::to_string(ball.radius() - 1) + "]");
    }
    ball.check(Point::vertex(g));
    ball.check(Point::vertex(h));
    if (ball.norm(g) != n || ball.norm(h) != n) {
      throw InputError("both vertices must have norm " + std::to_string(n));
    }
    if (ball.field(g)[static_cast<std::size_t>(h)] > 2) {
      throw InputError("vertices are more than 2 apart");
    }

    // Breadth-first from h inside the induced subgraph, then walk from g
    // taking the smallest generator that gets closer.
    auto const limit  = ball.layer_end(n);
    auto const degree = static_cast<GeneratorId>(ball.group().alphabet().size());
    std::vector<int>      dist(static_cast<std::size_t>(limit), -1);
    std::vector<VertexId> queue{h};
    dist[static_cast<std::size_t>(h)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto u = queue[head];
      if (u == g) {
        break;
      }
      for (GeneratorId a = 0; a < degree; ++a) {
        auto v = ball.neighbor(u, a);
        if (v != kNoVertex && v < limit && dist[static_cast<std::size_t>(v)] < 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          queue.push_back(v);
        }
      }
    }
    if (dist[static_cast<std::size_t>(g)] < 0) {
      return std::nullopt;
    }
    Word path;
    for (auto cur = g; cur != h;) {
      auto here = dist[static_cast<std::size_t>(cur)];
      for (GeneratorId a = 0; a < degree; ++a) {
        auto v = ball.neighbor(cur, a);
        if (v != kNoVertex && v < limit && dist[static_cast<std::size_t>(v)] >= 0
            && dist[static_cast<std::size_t>(v)] == here - 1) {
          path.push_back(a);
          cur = v;
          break;
        }
      }
    }
    return path;
  }

  ACReport ac_constant(BallIndex const& ball, int n, unsigned threads) {
    auto const pairs = sphere_pairs(ball, n);
    std::vector<std::optional<Word>> paths(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t i, unsigned) {
      paths[i] = inside_ball_path(ball, pairs[i].g, pairs[i].h, n);
    });

    ACReport rep;
    rep.n        = n;
    rep.pairs    = pairs.size();
    rep.constant = 0;
    // Disconnected pairs rank above every length.
    auto rank = [](std::optional<Word> const& p) {
      return p ? static_cast<long>(p->size()) : std::numeric_limits<long>::max();
    };
    std::optional<std::size_t> worst;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!worst) {
        worst = i;
        continue;
      }
      auto ri = rank(paths[i]);
      auto rw = rank(paths[*worst]);
      auto const& a = pairs[i];
      auto const& b = pairs[*worst];
      if (ri > rw
          || (ri == rw
              && std::tie(ball.element(a.g), ball.element(a.h))
                     < std::tie(ball.element(b.g), ball.element(b.h)))) {
        worst = i;
      }
    }
    if (worst) {
      rep.worst_g    = pairs[*worst].g;
      rep.worst_h    = pairs[*worst].h;
      rep.worst_path = paths[*worst];
      rep.constant   = paths[*worst]
                           ? std::optional<int>(static_cast<int>(paths[*worst]->size()))
                           : std::nullopt;
    }
    rep.pass = rep.constant.has_value();
    return rep;
  }

  Dist theorem1_bound(Dist delta) {
    return Dist::from_halves(3 * delta.halves()) + Dist::whole(2);
  }

  std::vector<ACReport> verify_theorem1(BallIndex const& ball,
                                        int              n_max,
                                        Dist             delta,
                                        unsigned         threads) {
    if (delta < Dist{}) {
      throw InputError("delta must be nonnegative");
    }
    auto const bound = theorem1_bound(delta);
    std::vector<ACReport> out;
    for (int n = 0; n <= n_max; ++n) {
      auto rep  = ac_constant(ball, n, threads);
      rep.bound = bound;
      rep.pass  = rep.constant && Dist::whole(*rep.constant) <= bound;
      out.push_back(std::move(rep));
    }
    return out;
  }

}  // namespace ldelta

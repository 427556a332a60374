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

#include "ldelta/ball.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <string>

#include "ldelta/error.hpp"

namespace ldelta {

  struct BallIndex::FieldCache {
    explicit FieldCache(std::size_t n)
        : slots(std::make_unique<std::atomic<std::uint8_t const*>[]>(n)) {}

    std::unique_ptr<std::atomic<std::uint8_t const*>[]> slots;
    std::mutex                                           mutex;
    std::vector<std::unique_ptr<std::uint8_t[]>>         storage;
  };

  BallIndex::BallIndex(GroupSpec group, int radius)
      : group_(std::move(group)),
        radius_(radius),
        degree_(group_.alphabet().size()) {}

  BallIndex::BallIndex(BallIndex&&) noexcept            = default;
  BallIndex& BallIndex::operator=(BallIndex&&) noexcept = default;
  BallIndex::~BallIndex()                               = default;

  std::optional<VertexId> BallIndex::find(Element const& e) const {
    if (auto it = index_.find(e); it != index_.end()) {
      return it->second;
    }
    return std::nullopt;
  }

  std::optional<GeneratorId> BallIndex::edge_label(VertexId from,
                                                   VertexId to) const {
    for (std::size_t g = 0; g < degree_; ++g) {
      if (neighbor(from, static_cast<GeneratorId>(g)) == to) {
        return static_cast<GeneratorId>(g);
      }
    }
    return std::nullopt;
  }

  bool BallIndex::contains(Point p) const {
    auto n = static_cast<VertexId>(size());
    if (p.u < 0 || p.u >= n || p.v < 0 || p.v >= n) {
      return false;
    }
    if (p.is_vertex()) {
      return true;
    }
    return p.u < p.v && edge_label(p.u, p.v).has_value();
  }

  void BallIndex::check(Point p) const {
    if (!contains(p)) {
      throw InputError("point (" + std::to_string(p.u) + ", "
                       + std::to_string(p.v) + ") is not in the ball");
    }
  }

  std::optional<VertexId> BallIndex::walk(VertexId                     start,
                                          std::span<GeneratorId const> w) const {
    auto v = start;
    for (auto g : w) {
      if (!group_.alphabet().contains(g)) {
        throw InputError("unknown generator id " + std::to_string(g));
      }
      v = neighbor(v, g);
      if (v == kNoVertex) {
        return std::nullopt;
      }
    }
    return v;
  }

  std::span<std::uint8_t const> BallIndex::field(VertexId source) const {
    auto const n = size();
    if (source < 0 || static_cast<std::size_t>(source) >= n) {
      throw InputError("vertex " + std::to_string(source) + " is not in the ball");
    }
    auto& slot = fields_->slots[static_cast<std::size_t>(source)];
    if (auto const* cached = slot.load(std::memory_order_acquire)) {
      return {cached, n};
    }
    if (radius_ > kMaxFieldRadius) {
      throw ResourceError("distance fields need ball radius <= "
                          + std::to_string(kMaxFieldRadius));
    }

    auto dist = std::make_unique<std::uint8_t[]>(n);
    std::fill_n(dist.get(), n, std::numeric_limits<std::uint8_t>::max());
    std::vector<VertexId> queue;
    queue.reserve(n);
    queue.push_back(source);
    dist[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto u  = queue[head];
      auto du = dist[static_cast<std::size_t>(u)];
      auto const* row = &adjacency_[static_cast<std::size_t>(u) * degree_];
      for (std::size_t g = 0; g < degree_; ++g) {
        auto v = row[g];
        if (v != kNoVertex
            && dist[static_cast<std::size_t>(v)]
                   == std::numeric_limits<std::uint8_t>::max()) {
          dist[static_cast<std::size_t>(v)] = static_cast<std::uint8_t>(du + 1);
          queue.push_back(v);
        }
      }
    }

    std::lock_guard lock(fields_->mutex);
    if (auto const* cached = slot.load(std::memory_order_acquire)) {
      return {cached, n};
    }
    auto const* raw = dist.get();
    fields_->storage.push_back(std::move(dist));
    slot.store(raw, std::memory_order_release);
    return {raw, n};
  }

  std::size_t BallIndex::cached_fields() const {
    std::lock_guard lock(fields_->mutex);
    return fields_->storage.size();
  }

  BallIndex build_ball(GroupSpec const&  group,
                       int               radius,
                       BallLimits const& limits) {
    if (radius < 0) {
      throw InputError("ball radius must be nonnegative");
    }
    BallIndex ball(group, radius);
    auto const degree = ball.degree_;

    auto add = [&](Element e, int norm) {
      if (ball.elements_.size() >= limits.max_vertices) {
        throw ResourceError("ball of radius " + std::to_string(radius)
                            + " exceeds the vertex cap max_vertices="
                            + std::to_string(limits.max_vertices));
      }
      auto id = static_cast<VertexId>(ball.elements_.size());
      ball.index_.emplace(e, id);
      ball.elements_.push_back(std::move(e));
      ball.norms_.push_back(norm);
      ball.adjacency_.insert(ball.adjacency_.end(), degree, kNoVertex);
      return id;
    };

    add(group.identity(), 0);
    ball.layers_.push_back(0);
    for (std::size_t head = 0; head < ball.elements_.size(); ++head) {
      auto const u    = static_cast<VertexId>(head);
      auto const norm = ball.norms_[head];
      if (ball.layers_.size() <= static_cast<std::size_t>(norm)) {
        ball.layers_.push_back(u);
      }
      for (std::size_t g = 0; g < degree; ++g) {
        auto next = group.multiply_generator(ball.elements_[head],
                                             static_cast<GeneratorId>(g));
        VertexId v = kNoVertex;
        if (auto it = ball.index_.find(next); it != ball.index_.end()) {
          v = it->second;
        } else if (norm < radius) {
          v = add(std::move(next), norm + 1);
        }
        ball.adjacency_[head * degree + g] = v;
      }
    }
    while (ball.layers_.size() <= static_cast<std::size_t>(radius) + 1) {
      ball.layers_.push_back(static_cast<VertexId>(ball.elements_.size()));
    }

    for (std::size_t u = 0; u < ball.elements_.size(); ++u) {
      auto first = ball.edges_.size();
      for (std::size_t g = 0; g < degree; ++g) {
        auto v = ball.adjacency_[u * degree + g];
        if (v == kNoVertex || v <= static_cast<VertexId>(u)) {
          continue;
        }
        auto dup = std::any_of(ball.edges_.begin()
                                   + static_cast<std::ptrdiff_t>(first),
                               ball.edges_.end(),
                               [v](Edge const& e) { return e.v == v; });
        if (!dup) {
          ball.edges_.push_back(
              {static_cast<VertexId>(u), v, static_cast<GeneratorId>(g)});
        }
      }
    }
    for (int n = 0; n <= radius + 1; ++n) {
      auto first = n <= radius ? ball.layers_[static_cast<std::size_t>(n)]
                               : static_cast<VertexId>(ball.elements_.size());
      auto it    = std::lower_bound(
          ball.edges_.begin(), ball.edges_.end(), first, [](Edge const& e, VertexId id) {
            return e.u < id;
          });
      ball.edge_layers_.push_back(
          static_cast<std::size_t>(it - ball.edges_.begin()));
    }
    ball.fields_ = std::make_unique<BallIndex::FieldCache>(ball.elements_.size());
    return ball;
  }

  Dist distance(BallIndex const& ball, Point p, Point q) {
    ball.check(p);
    ball.check(q);
    if (p == q) {
      return Dist{};
    }
    if (!p.is_vertex() && q.is_vertex()) {
      std::swap(p, q);
    }
    if (p.is_vertex()) {
      auto f = ball.field(p.u);
      if (q.is_vertex()) {
        return Dist::whole(f[static_cast<std::size_t>(q.u)]);
      }
      auto m = std::min(f[static_cast<std::size_t>(q.u)],
                        f[static_cast<std::size_t>(q.v)]);
      return Dist::from_halves(2 * static_cast<std::int64_t>(m) + 1);
    }
    auto fu = ball.field(p.u);
    auto fv = ball.field(p.v);
    auto m  = std::min({fu[static_cast<std::size_t>(q.u)],
                        fu[static_cast<std::size_t>(q.v)],
                        fv[static_cast<std::size_t>(q.u)],
                        fv[static_cast<std::size_t>(q.v)]});
    return Dist::from_halves(2 * static_cast<std::int64_t>(m) + 2);
  }

  Word geodesic_word(BallIndex const& ball, VertexId from, VertexId to) {
    ball.check(Point::vertex(from));
    ball.check(Point::vertex(to));
    auto const f      = ball.field(to);
    auto const degree = static_cast<GeneratorId>(ball.group().alphabet().size());
    Word       out;
    auto       cur = from;
    while (cur != to) {
      auto here = f[static_cast<std::size_t>(cur)];
      for (GeneratorId g = 0; g < degree; ++g) {
        auto next = ball.neighbor(cur, g);
        if (next != kNoVertex && f[static_cast<std::size_t>(next)] + 1 == here) {
          out.push_back(g);
          cur = next;
          break;
        }
      }
    }
    return out;
  }

  GeodesicPath geodesic(BallIndex const& ball, Point p, Point q) {
    ball.check(p);
    ball.check(q);
    GeodesicPath path;
    if (p == q) {
      return path;
    }
    auto ends = [](Point x) {
      return x.is_vertex() ? std::vector<VertexId>{x.u}
                           : std::vector<VertexId>{x.u, x.v};
    };
    VertexId best_s = kNoVertex;
    VertexId best_e = kNoVertex;
    int      best   = std::numeric_limits<int>::max();
    for (auto e : ends(q)) {
      auto f = ball.field(e);
      for (auto s : ends(p)) {
        int d = f[static_cast<std::size_t>(s)];
        if (d < best || (d == best && std::pair(s, e) < std::pair(best_s, best_e))) {
          best   = d;
          best_s = s;
          best_e = e;
        }
      }
    }
    auto const& alphabet = ball.group().alphabet();
    if (!p.is_vertex()) {
      auto g         = *ball.edge_label(p.u, p.v);
      path.lead_half = best_s == p.v ? g : alphabet.inverse(g);
    }
    path.word = geodesic_word(ball, best_s, best_e);
    if (!q.is_vertex()) {
      auto g          = *ball.edge_label(q.u, q.v);
      path.trail_half = best_e == q.u ? g : alphabet.inverse(g);
    }
    return path;
  }

  std::vector<SpherePair> sphere_pairs(BallIndex const& ball, int n) {
    if (n < 0 || n > ball.radius() - 1) {
      throw InputError("sphere radius " + std::to_string(n)
                       + " must lie in [0, " + std::to_string(ball.radius() - 1)
                       + "]");
    }
    auto const degree = static_cast<GeneratorId>(ball.group().alphabet().size());
    auto const begin  = ball.layer_begin(n);
    auto const end    = ball.layer_end(n);
    std::vector<SpherePair> out;
    std::vector<std::pair<VertexId, int>> near;
    for (auto g = begin; g < end; ++g) {
      near.clear();
      for (GeneratorId a = 0; a < degree; ++a) {
        auto x = ball.neighbor(g, a);
        if (x == kNoVertex) {
          continue;
        }
        near.emplace_back(x, 1);
        for (GeneratorId b = 0; b < degree; ++b) {
          auto y = ball.neighbor(x, b);
          if (y != kNoVertex) {
            near.emplace_back(y, 2);
          }
        }
      }
      std::sort(near.begin(), near.end());
      VertexId last = kNoVertex;
      for (auto [h, d] : near) {
        if (h == last) {
          continue;
        }
        last = h;
        if (h > g && h < end) {
          out.push_back({g, h, d});
        }
      }
    }
    return out;
  }

}  // namespace ldelta

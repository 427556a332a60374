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

// Finite balls of a Cayley graph and exact distances between the points of
// its geometric realization that we care about: vertices and edge midpoints.
//
// Distances are measured inside the ball. They agree with the word metric
// whenever some geodesic between the two points stays in the ball; callers
// pick the ball radius with that in mind.

#ifndef LDELTA_BALL_HPP_
#define LDELTA_BALL_HPP_

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "ldelta/dist.hpp"
#include "ldelta/group.hpp"

namespace ldelta {

  using VertexId = std::int32_t;

  inline constexpr VertexId kNoVertex = -1;

  //! A vertex (`u == v`) or the midpoint of the edge joining `u < v`.
  struct Point {
    VertexId u = 0;
    VertexId v = 0;

    static constexpr Point vertex(VertexId id) {
      return {id, id};
    }

    static constexpr Point midpoint(VertexId a, VertexId b) {
      return a < b ? Point{a, b} : Point{b, a};
    }

    constexpr bool is_vertex() const noexcept {
      return u == v;
    }

    constexpr auto operator<=>(Point const&) const = default;
  };

  //! Undirected edge with `v = u * label` and `u < v`.
  struct Edge {
    VertexId    u;
    VertexId    v;
    GeneratorId label;
  };

  struct BallLimits {
    std::size_t max_vertices = 4'000'000;
  };

  class BallIndex {
   public:
    //! Largest radius for which distance fields fit in 8 bits.
    static constexpr int kMaxFieldRadius = 127;

    BallIndex(BallIndex&&) noexcept;
    BallIndex& operator=(BallIndex&&) noexcept;
    ~BallIndex();

    GroupSpec const& group() const noexcept {
      return group_;
    }

    int radius() const noexcept {
      return radius_;
    }

    std::size_t size() const noexcept {
      return elements_.size();
    }

    static constexpr VertexId identity() noexcept {
      return 0;
    }

    //! Word length; ids are assigned in BFS order so norms are nondecreasing.
    int norm(VertexId v) const {
      return norms_[static_cast<std::size_t>(v)];
    }

    Dist norm(Point p) const {
      return p.is_vertex() ? Dist::whole(norm(p.u))
                           : Dist::from_halves(2 * norm(p.u) + 1);
    }

    Element const& element(VertexId v) const {
      return elements_[static_cast<std::size_t>(v)];
    }

    std::optional<VertexId> find(Element const& e) const;

    //! `v * g`, or kNoVertex if that lies outside the ball.
    VertexId neighbor(VertexId v, GeneratorId g) const {
      return adjacency_[static_cast<std::size_t>(v) * degree_
                        + static_cast<std::size_t>(g)];
    }

    //! Ids of norm `n` are exactly [layer_begin(n), layer_end(n)).
    VertexId layer_begin(int n) const {
      return layers_[static_cast<std::size_t>(n)];
    }

    VertexId layer_end(int n) const {
      return layers_[static_cast<std::size_t>(n) + 1];
    }

    //! Edges with both ends in the ball, sorted by `u`.
    std::span<Edge const> edges() const noexcept {
      return edges_;
    }

    //! Edges whose lower endpoint `u` has norm `n`; their midpoints have
    //! norm n + 1/2.
    std::span<Edge const> edges_in_layer(int n) const {
      auto first = edge_layers_[static_cast<std::size_t>(n)];
      auto last  = edge_layers_[static_cast<std::size_t>(n) + 1];
      return std::span<Edge const>(edges_).subspan(first, last - first);
    }

    //! Label of an edge from `from` to `to`, if the ball has one.
    std::optional<GeneratorId> edge_label(VertexId from, VertexId to) const;

    bool contains(Point p) const;

    //! Throws InputError unless `p` is a vertex or edge midpoint of the ball.
    void check(Point p) const;

    //! Endpoint of the path spelled by `w` from `start`, if it stays inside.
    std::optional<VertexId> walk(VertexId start, std::span<GeneratorId const> w) const;

    //! Breadth-first distances from `source` inside the ball, indexed by
    //! vertex id. Computed once per source and cached; safe to call
    //! concurrently. Throws ResourceError if radius() > kMaxFieldRadius.
    std::span<std::uint8_t const> field(VertexId source) const;

    //! Number of cached distance fields.
    std::size_t cached_fields() const;

   private:
    struct FieldCache;

    BallIndex(GroupSpec group, int radius);

    friend BallIndex build_ball(GroupSpec const&, int, BallLimits const&);

    GroupSpec                                         group_;
    int                                               radius_;
    std::size_t                                       degree_;
    std::vector<Element>                              elements_;
    std::vector<int>                                  norms_;
    std::vector<VertexId>                             adjacency_;
    std::vector<VertexId>                             layers_;
    std::vector<Edge>                                 edges_;
    std::vector<std::size_t>                          edge_layers_;
    std::unordered_map<Element, VertexId, ElementHash> index_;
    std::unique_ptr<FieldCache>                       fields_;
  };

  //! Every element of word length at most `radius`, by breadth-first search
  //! from the identity. Throws ResourceError past `limits.max_vertices`.
  BallIndex build_ball(GroupSpec const&  group,
                       int               radius,
                       BallLimits const& limits = {});

  //! Exact distance inside the ball. A midpoint is 1/2 from each endpoint and
  //! reaches everything else through one of them.
  Dist distance(BallIndex const& ball, Point p, Point q);

  //! A shortest route between two points. Half-steps move between an edge
  //! midpoint and one of its endpoints; the generator recorded is the label
  //! read in the direction of travel.
  struct GeodesicPath {
    std::optional<GeneratorId> lead_half;
    Word                       word;
    std::optional<GeneratorId> trail_half;

    Dist length() const {
      return Dist::from_halves(static_cast<std::int64_t>(2 * word.size())
                               + (lead_half ? 1 : 0) + (trail_half ? 1 : 0));
    }
  };

  //! Deterministic: among shortest routes, prefers the smallest endpoints
  //! and then the smallest generator at each step.
  GeodesicPath geodesic(BallIndex const& ball, Point p, Point q);

  //! Vertex-to-vertex geodesic word.
  Word geodesic_word(BallIndex const& ball, VertexId from, VertexId to);

  struct SpherePair {
    VertexId g;
    VertexId h;
    int      distance;

    bool operator==(SpherePair const&) const = default;
  };

  //! All unordered pairs {g, h} with |g| = |h| = n and d(g, h) <= 2, sorted.
  //! Requires 0 <= n <= radius - 1.
  std::vector<SpherePair> sphere_pairs(BallIndex const& ball, int n);

}  // namespace ldelta

#endif  // LDELTA_BALL_HPP_

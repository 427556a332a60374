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

// Slack of a point against a triple, optimal median points, and the
// finite-ball estimate of the L_delta constant.

#ifndef LDELTA_MEDIAN_HPP_
#define LDELTA_MEDIAN_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ldelta/ball.hpp"
#include "ldelta/dist.hpp"

namespace ldelta {

  //! Detour excess through `t` for the pairs {x,y}, {y,z}, {z,x}, in order.
  std::array<SlackValue, 3> pair_slacks(BallIndex const& ball,
                                        Point            t,
                                        Point            x,
                                        Point            y,
                                        Point            z);

  //! Largest of the three pair slacks.
  SlackValue slack(BallIndex const& ball, Point t, Point x, Point y, Point z);

  struct MedianOptions {
    //! Lets the search stop once its best slack is below `cap`, or zero.
    //! The returned slack is then an upper bound that is exact whenever it
    //! is at least `cap`, and `t` need not be the canonical minimizer.
    std::optional<SlackValue> cap;
    bool                      prune     = true;
    bool                      midpoints = true;  // allow t on edge midpoints
  };

  struct MedianResult {
    Point                     t;
    SlackValue                slack;
    std::array<SlackValue, 3> pair_slacks;
    bool                      complete   = true;  // false after an early stop
    std::uint64_t             candidates = 0;
  };

  //! Point of the ball minimizing the slack. Ties go to smaller d(t, x),
  //! then smaller d(t, y), then the smaller point. Throws InputError unless
  //! x, y, z are pairwise distinct points of the ball.
  MedianResult median(BallIndex const&     ball,
                      Point                x,
                      Point                y,
                      Point                z,
                      MedianOptions const& options = {});

  enum class TripleDomain { vertices, half_points };

  std::string_view domain_name(TripleDomain d);

  struct Sampling {
    bool          exhaustive = true;
    std::uint64_t samples    = 0;
    std::uint64_t seed       = 0;
  };

  struct DeltaOptions {
    TripleDomain  domain        = TripleDomain::half_points;
    int           domain_radius = 0;
    Sampling      sampling;
    unsigned      threads                = 1;
    std::uint64_t max_exhaustive_triples = 10'000'000;
    std::uint64_t forced_samples         = 100'000;
    bool          prune                  = true;
  };

  struct DeltaEstimate {
    int           ball_radius   = 0;
    int           domain_radius = 0;
    TripleDomain  domain        = TripleDomain::half_points;
    Sampling      sampling;  // as run
    bool          sampling_forced = false;
    std::size_t   domain_size     = 0;
    std::uint64_t triples         = 0;
    SlackValue    value;
    std::array<Point, 3> witness{};
    MedianResult         witness_median;
    //! Distances between triple points and the witness value are provably
    //! unaffected by truncating the graph to the ball.
    bool certified = false;
  };

  //! Vertices, or vertices and edge midpoints, of norm at most `radius`,
  //! sorted.
  std::vector<Point> domain_points(BallIndex const& ball,
                                   TripleDomain     domain,
                                   int              radius);

  //! Number of 3-element subsets of an n-element set.
  std::uint64_t triple_count(std::uint64_t n);

  //! Ball radius used for a domain radius r when none is given: r + 2 when
  //! balls are convex, 2r + 2 otherwise.
  int default_ball_radius(GroupSpec const& group, int domain_radius);

  //! Maximum over distinct domain triples of the optimal median slack.
  //! Exhaustive runs fall back to `forced_samples` seeded samples when the
  //! triple count exceeds `max_exhaustive_triples`. The witness is the least
  //! triple reaching the maximum; output does not depend on `threads`.
  DeltaEstimate estimate_delta(BallIndex const& ball, DeltaOptions const& options);

}  // namespace ldelta

#endif  // LDELTA_MEDIAN_HPP_

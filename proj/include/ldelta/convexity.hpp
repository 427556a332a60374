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

#ifndef LDELTA_CONVEXITY_HPP_
#define LDELTA_CONVEXITY_HPP_

#include <cstddef>
#include <optional>
#include <vector>

#include "ldelta/ball.hpp"
#include "ldelta/dist.hpp"
#include "ldelta/word.hpp"

namespace ldelta {

  //! Shortest path from g to h through vertices of norm at most n, or none.
  //! Requires |g| = |h| = n, d(g, h) <= 2 and n <= radius - 1.
  std::optional<Word> inside_ball_path(BallIndex const& ball,
                                       VertexId         g,
                                       VertexId         h,
                                       int              n);

  struct ACReport {
    int         n     = 0;
    std::size_t pairs = 0;
    //! Longest shortest inside-ball path; none means some pair is not
    //! connected inside the ball.
    std::optional<int>      constant;
    std::optional<VertexId> worst_g;
    std::optional<VertexId> worst_h;
    std::optional<Word>     worst_path;
    std::optional<Dist>     bound;
    bool                    pass = false;
  };

  //! Exhaustive over sphere_pairs(ball, n). Without a bound, pass means
  //! every pair is connected.
  ACReport ac_constant(BallIndex const& ball, int n, unsigned threads = 1);

  //! 3 delta + 2.
  Dist theorem1_bound(Dist delta);

  //! ac_constant for n = 0..n_max, passing iff C_n <= 3 delta + 2.
  std::vector<ACReport> verify_theorem1(BallIndex const& ball,
                                        int              n_max,
                                        Dist             delta,
                                        unsigned         threads = 1);

}  // namespace ldelta

#endif  // LDELTA_CONVEXITY_HPP_

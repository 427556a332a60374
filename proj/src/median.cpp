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

#include "ldelta/median.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <mutex>
#include <random>
#include <set>
#include <string>

#include "ldelta/error.hpp"
#include "ldelta/parallel.hpp"

namespace ldelta {

  namespace {
    // All arithmetic below is in halves.

    struct Source {
      Point               p;
      std::uint8_t const* a;
      std::uint8_t const* b;

      int at_vertex(VertexId t) const {
        auto i = static_cast<std::size_t>(t);
        if (p.is_vertex()) {
          return 2 * a[i];
        }
        return 1 + 2 * std::min(a[i], b[i]);
      }

      int at(Point t) const {
        if (t.is_vertex()) {
          return at_vertex(t.u);
        }
        if (t == p) {
          return 0;
        }
        return 1 + std::min(at_vertex(t.u), at_vertex(t.v));
      }
    };

    Source make_source(BallIndex const& ball, Point p) {
      return {p, ball.field(p.u).data(), ball.field(p.v).data()};
    }

    int norm_halves(BallIndex const& ball, Point p) {
      return static_cast<int>(ball.norm(p).halves());
    }

    struct Key {
      int   slack;
      int   hx;
      int   hy;
      Point t;

      auto operator<=>(Key const&) const = default;
    };

    class Search {
     public:
      Search(BallIndex const& ball, Point x, Point y, Point z, MedianOptions const& opt)
          : ball_(ball),
            sx_(make_source(ball, x)),
            sy_(make_source(ball, y)),
            sz_(make_source(ball, z)),
            dxy_(sx_.at(y)),
            dyz_(sy_.at(z)),
            dzx_(sz_.at(x)),
            opt_(opt) {
        if (opt.cap) {
          cap_ = static_cast<int>(opt.cap->halves());
        }
      }

      MedianResult run() {
        for (auto p : {sx_.p, sy_.p, sz_.p}) {
          if (opt_.midpoints || p.is_vertex()) {
            offer(p);
          }
        }
        descend();
        if (!done_) {
          scan();
        }
        MedianResult r;
        r.t           = best_.t;
        r.slack       = Dist::from_halves(best_.slack);
        r.pair_slacks = pairs(best_.t);
        r.complete    = !done_;
        r.candidates  = evaluated_;
        return r;
      }

     private:
      Key key(Point t) const {
        int hx = sx_.at(t);
        int hy = sy_.at(t);
        int hz = sz_.at(t);
        int s  = std::max({hx + hy - dxy_, hy + hz - dyz_, hz + hx - dzx_});
        return {s, hx, hy, t};
      }

      std::array<Dist, 3> pairs(Point t) const {
        int hx = sx_.at(t);
        int hy = sy_.at(t);
        int hz = sz_.at(t);
        return {Dist::from_halves(hx + hy - dxy_),
                Dist::from_halves(hy + hz - dyz_),
                Dist::from_halves(hz + hx - dzx_)};
      }

      // Returns the key and records it if it beats the current best.
      Key offer(Point t) {
        ++evaluated_;
        auto k = key(t);
        if (!have_ || k < best_) {
          best_ = k;
          have_ = true;
          if (cap_ && (best_.slack < *cap_ || best_.slack == 0)) {
            done_ = true;
          }
        }
        return k;
      }

      // Greedy walk from the best seed towards smaller slack; only tightens
      // the bound used for pruning.
      void descend() {
        auto cur = best_;
        while (!done_) {
          auto next = cur;
          auto try_point = [&](Point t) {
            auto k = offer(t);
            if (k.slack < next.slack) {
              next = k;
            }
          };
          if (cur.t.is_vertex()) {
            auto v = cur.t.u;
            for (std::size_t g = 0; g < ball_.group().alphabet().size() && !done_; ++g) {
              auto w = ball_.neighbor(v, static_cast<GeneratorId>(g));
              if (w == kNoVertex) {
                continue;
              }
              try_point(Point::vertex(w));
              if (opt_.midpoints && !done_) {
                try_point(Point::midpoint(v, w));
              }
            }
          } else {
            try_point(Point::vertex(cur.t.u));
            if (!done_) {
              try_point(Point::vertex(cur.t.v));
            }
          }
          if (next.slack >= cur.slack) {
            return;
          }
          cur = next;
        }
      }

      void scan() {
        // |t| <= |p| + d(p, t) and slack >= 2 d(p, t) - 2 d(p, q) for
        // either other point q, so slack >= 2 |t| - 2 bound_.
        int bound = std::numeric_limits<int>::max();
        auto consider = [&](Source const& s, int d1, int d2) {
          bound = std::min(bound, norm_halves(ball_, s.p) + std::min(d1, d2));
        };
        consider(sx_, dxy_, dzx_);
        consider(sy_, dxy_, dyz_);
        consider(sz_, dyz_, dzx_);
        auto pruned = [&](int norm) {
          return opt_.prune && 2 * norm - 2 * bound > best_.slack;
        };

        for (int n = 0; n <= ball_.radius(); ++n) {
          if (pruned(2 * n)) {
            return;
          }
          for (auto v = ball_.layer_begin(n); v < ball_.layer_end(n); ++v) {
            offer(Point::vertex(v));
            if (done_) {
              return;
            }
          }
          if (!opt_.midpoints) {
            continue;
          }
          if (pruned(2 * n + 1)) {
            return;
          }
          for (auto const& e : ball_.edges_in_layer(n)) {
            offer(Point{e.u, e.v});
            if (done_) {
              return;
            }
          }
        }
      }

      BallIndex const&   ball_;
      Source             sx_, sy_, sz_;
      int                dxy_, dyz_, dzx_;
      MedianOptions const& opt_;
      std::optional<int> cap_;
      Key                best_{};
      bool               have_      = false;
      bool               done_      = false;
      std::uint64_t      evaluated_ = 0;
    };

    void check_triple(BallIndex const& ball, Point x, Point y, Point z) {
      ball.check(x);
      ball.check(y);
      ball.check(z);
      if (x == y || y == z || z == x) {
        throw InputError("median needs three distinct points");
      }
    }

    using Triple = std::array<std::uint32_t, 3>;

    struct Best {
      std::int64_t value = -1;
      Triple       triple{};
      bool         pairs_exact = true;

      void take(std::int64_t v, Triple const& t) {
        if (v > value || (v == value && t < triple)) {
          value  = v;
          triple = t;
        }
      }

      void merge(Best const& o) {
        if (o.value >= 0) {
          take(o.value, o.triple);
        }
        pairs_exact = pairs_exact && o.pairs_exact;
      }
    };
  }  // namespace

  std::array<SlackValue, 3> pair_slacks(BallIndex const& ball,
                                        Point            t,
                                        Point            x,
                                        Point            y,
                                        Point            z) {
    ball.check(t);
    auto dt = [&](Point p) { return distance(ball, t, p); };
    return {dt(x) + dt(y) - distance(ball, x, y),
            dt(y) + dt(z) - distance(ball, y, z),
            dt(z) + dt(x) - distance(ball, z, x)};
  }

  SlackValue slack(BallIndex const& ball, Point t, Point x, Point y, Point z) {
    auto s = pair_slacks(ball, t, x, y, z);
    return std::max({s[0], s[1], s[2]});
  }

  MedianResult median(BallIndex const&     ball,
                      Point                x,
                      Point                y,
                      Point                z,
                      MedianOptions const& options) {
    check_triple(ball, x, y, z);
    return Search(ball, x, y, z, options).run();
  }

  std::string_view domain_name(TripleDomain d) {
    return d == TripleDomain::vertices ? "vertices" : "half";
  }

  std::vector<Point> domain_points(BallIndex const& ball,
                                   TripleDomain     domain,
                                   int              radius) {
    if (radius < 0 || radius > ball.radius()) {
      throw InputError("domain radius " + std::to_string(radius)
                       + " must lie in [0, " + std::to_string(ball.radius()) + "]");
    }
    std::vector<Point> points;
    for (VertexId v = 0; v < ball.layer_end(radius); ++v) {
      points.push_back(Point::vertex(v));
    }
    if (domain == TripleDomain::half_points) {
      for (int n = 0; n < radius; ++n) {
        for (auto const& e : ball.edges_in_layer(n)) {
          points.push_back(Point{e.u, e.v});
        }
      }
    }
    std::sort(points.begin(), points.end());
    return points;
  }

  std::uint64_t triple_count(std::uint64_t n) {
    if (n < 3) {
      return 0;
    }
    // n(n-1)(n-2)/6 without overflow for any domain we can hold.
    auto a = n, b = n - 1, c = n - 2;
    (a % 2 == 0 ? a : b) /= 2;
    (a % 3 == 0 ? a : (b % 3 == 0 ? b : c)) /= 3;
    return a * b * c;
  }

  int default_ball_radius(GroupSpec const& group, int domain_radius) {
    return group.has_convex_balls() ? domain_radius + 2 : 2 * domain_radius + 2;
  }

  DeltaEstimate estimate_delta(BallIndex const& ball, DeltaOptions const& options) {
    if (options.domain_radius < 0) {
      throw InputError("domain radius must be nonnegative");
    }
    if (ball.radius() < options.domain_radius + 1) {
      throw InputError("ball radius " + std::to_string(ball.radius())
                       + " is below domain radius + 1");
    }
    auto const points = domain_points(ball, options.domain, options.domain_radius);
    auto const n      = points.size();
    if (n < 3) {
      throw InputError("the triple domain has fewer than three points");
    }

    DeltaEstimate est;
    est.ball_radius   = ball.radius();
    est.domain_radius = options.domain_radius;
    est.domain        = options.domain;
    est.domain_size   = n;
    est.sampling      = options.sampling;
    if (est.sampling.exhaustive
        && triple_count(n) > options.max_exhaustive_triples) {
      est.sampling        = {false, options.forced_samples, options.sampling.seed};
      est.sampling_forced = true;
    }
    if (!est.sampling.exhaustive && est.sampling.samples == 0) {
      throw InputError("sample count must be positive");
    }

    // Fields for every endpoint are needed by every worker; build them up front.
    std::vector<VertexId> sources;
    for (auto p : points) {
      sources.push_back(p.u);
      sources.push_back(p.v);
    }
    std::sort(sources.begin(), sources.end());
    sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
    parallel_for(sources.size(), options.threads, [&](std::size_t i, unsigned) {
      ball.field(sources[i]);
    });

    auto const four_r     = 4 * static_cast<std::int64_t>(ball.radius());
    bool const convex     = ball.group().has_convex_balls();
    auto       pair_exact = [&](Point p, Point q) {
      return convex
             || ball.norm(p).halves() + ball.norm(q).halves()
                        + distance(ball, p, q).halves()
                    <= four_r;
    };

    std::atomic<std::int64_t> running{0};
    std::vector<Best>         best(std::max(1U, options.threads));
    auto examine = [&](Triple const& tr, unsigned worker) {
      auto x = points[tr[0]], y = points[tr[1]], z = points[tr[2]];
      MedianOptions mo;
      mo.prune = options.prune;
      mo.cap   = Dist::from_halves(running.load(std::memory_order_relaxed));
      auto r   = Search(ball, x, y, z, mo).run();
      auto& b  = best[worker];
      b.pairs_exact
          = b.pairs_exact && pair_exact(x, y) && pair_exact(y, z) && pair_exact(z, x);
      auto v = r.slack.halves();
      if (v >= mo.cap->halves()) {
        b.take(v, tr);
        auto cur = running.load(std::memory_order_relaxed);
        while (v > cur && !running.compare_exchange_weak(cur, v)) {
        }
      }
    };

    if (est.sampling.exhaustive) {
      est.triples = triple_count(n);
      parallel_for(n - 2, options.threads, [&](std::size_t i, unsigned worker) {
        for (auto j = i + 1; j < n; ++j) {
          for (auto k = j + 1; k < n; ++k) {
            examine({static_cast<std::uint32_t>(i),
                     static_cast<std::uint32_t>(j),
                     static_cast<std::uint32_t>(k)},
                    worker);
          }
        }
      });
    } else {
      std::mt19937_64                            rng(est.sampling.seed);
      std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(n - 1));
      std::vector<Triple>                        triples(est.sampling.samples);
      for (auto& t : triples) {
        do {
          t = {pick(rng), pick(rng), pick(rng)};
        } while (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]);
        std::sort(t.begin(), t.end());
      }
      est.triples = triples.size();
      constexpr std::size_t kChunk = 64;
      parallel_for((triples.size() + kChunk - 1) / kChunk,
                   options.threads,
                   [&](std::size_t c, unsigned worker) {
                     auto last = std::min(triples.size(), (c + 1) * kChunk);
                     for (auto i = c * kChunk; i < last; ++i) {
                       examine(triples[i], worker);
                     }
                   });
    }

    Best total;
    for (auto const& b : best) {
      total.merge(b);
    }
    est.witness = {points[total.triple[0]], points[total.triple[1]], points[total.triple[2]]};
    est.witness_median
        = median(ball, est.witness[0], est.witness[1], est.witness[2], {std::nullopt, options.prune, true});
    est.value = est.witness_median.slack;
    if (est.value.halves() != total.value) {
      throw ConsistencyError("witness median does not reproduce the estimate");
    }

    auto s            = est.value.halves();
    auto region_exact = [&](Point p, Point q) {
      return ball.norm(p).halves() + ball.norm(q).halves()
                 + distance(ball, p, q).halves() + s - 1
             <= four_r;
    };
    auto const& w = est.witness;
    est.certified = total.pairs_exact
                    && (s == 0
                        || (region_exact(w[0], w[1]) && region_exact(w[1], w[2])
                            && region_exact(w[2], w[0])));
    return est;
  }

}  // namespace ldelta

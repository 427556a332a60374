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

#include "ldelta/vankampen.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ldelta/median.hpp"
#include "ldelta/parallel.hpp"

namespace ldelta {

  namespace {
    // Vertices visited by the loop, starting and ending at its base.
    std::vector<VertexId> trace(BallIndex const& ball, Loop const& loop) {
      std::vector<VertexId> out{loop.base};
      auto v = loop.base;
      for (auto g : loop.word) {
        if (!ball.group().alphabet().contains(g)) {
          throw InputError("unknown generator id " + std::to_string(g));
        }
        v = ball.neighbor(v, g);
        if (v == kNoVertex) {
          throw ResourceError("loop leaves the ball of radius "
                              + std::to_string(ball.radius()));
        }
        out.push_back(v);
      }
      if (v != loop.base) {
        throw InputError("loop does not close");
      }
      return out;
    }

    Word slice(Word const& w, std::size_t from, std::size_t to) {
      return Word(w.begin() + static_cast<std::ptrdiff_t>(from),
                  w.begin() + static_cast<std::ptrdiff_t>(to));
    }

    std::size_t build(BallIndex const&  ball,
                      SubdivisionTree&  tree,
                      Loop              loop,
                      Word              conjugator,
                      std::size_t       depth) {
      auto id = tree.nodes.size();
      tree.nodes.push_back({std::move(loop), std::move(conjugator), depth, {}, {}});
      tree.depth = std::max(tree.depth, depth);
      if (tree.nodes[id].loop.length() <= tree.threshold) {
        ++tree.leaves;
        return id;
      }
      auto split = split_loop(ball, tree.nodes[id].loop);
      std::vector<std::size_t> kids;
      for (std::size_t c = 0; c < 3; ++c) {
        if (split.children[c].word.empty()) {
          continue;
        }
        kids.push_back(
            build(ball, tree, split.children[c], split.conjugators[c], depth + 1));
      }
      tree.nodes[id].split    = std::move(split);
      tree.nodes[id].children = std::move(kids);
      return id;
    }

    std::uint64_t word_seed(std::uint64_t seed, std::size_t n, std::size_t i) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(n),
                        static_cast<std::uint32_t>(i)};
      std::array<std::uint32_t, 2> out{};
      seq.generate(out.begin(), out.end());
      return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
    }
  }  // namespace

  double isoperimetric_exponent() {
    return 1.0 / (1.0 - std::log(2.0) / std::log(3.0));
  }

  ContractionError::ContractionError(std::size_t parent, Loop child)
      : ResourceError("trisection of a loop of length " + std::to_string(parent)
                      + " produced a child of length "
                      + std::to_string(child.length())
                      + "; raise the threshold"),
        parent_(parent),
        child_(std::move(child)) {}

  LoopSplit split_loop(BallIndex const& ball, Loop const& loop) {
    auto const& alphabet = ball.group().alphabet();
    auto const  verts    = trace(ball, loop);
    auto const  n        = loop.length();

    LoopSplit s;
    s.x_offset = n / 3;
    s.y_offset = n - n / 3;
    auto const z = loop.base;
    s.x          = verts[s.x_offset];
    s.y          = verts[s.y_offset];
    if (s.x == s.y || s.x == z) {
      s.t = s.x;
    } else if (s.y == z) {
      s.t = s.y;
    } else {
      MedianOptions mo;
      mo.midpoints = false;
      s.t = median(ball, Point::vertex(s.x), Point::vertex(s.y), Point::vertex(z), mo).t.u;
    }
    s.p = geodesic_word(ball, s.x, s.t);
    s.q = geodesic_word(ball, s.y, s.t);
    s.r = geodesic_word(ball, z, s.t);

    auto a = slice(loop.word, 0, s.x_offset);
    auto b = slice(loop.word, s.x_offset, s.y_offset);
    auto c = slice(loop.word, s.y_offset, n);
    auto p_inv = invert(alphabet, s.p);
    auto q_inv = invert(alphabet, s.q);
    auto r_inv = invert(alphabet, s.r);

    s.children[0] = {z, free_reduce(alphabet, concat({a, s.p, r_inv}))};
    s.children[1] = {s.t, free_reduce(alphabet, concat({p_inv, b, s.q}))};
    s.children[2] = {z, free_reduce(alphabet, concat({s.r, q_inv, c}))};
    s.conjugators = {Word{}, s.r, Word{}};
    for (auto const& child : s.children) {
      if (child.length() >= n) {
        throw ContractionError(n, child);
      }
    }
    return s;
  }

  int fill_radius(std::size_t max_norm, std::size_t word_length, std::size_t threshold) {
    return static_cast<int>(max_norm + word_length + threshold);
  }

  int suggested_fill_radius(std::size_t word_length, std::size_t threshold) {
    return fill_radius(word_length / 2, word_length, 4 * threshold);
  }

  SubdivisionTree fill(BallIndex const& ball, Word const& w, ThresholdPolicy policy) {
    auto const& group = ball.group();
    validate_word(group.alphabet(), w);
    if (!group.is_identity(w)) {
      throw InputError("word does not represent the identity");
    }
    if (policy.initial == 0) {
      throw InputError("threshold must be positive");
    }
    Loop root{BallIndex::identity(), free_reduce(group.alphabet(), w)};

    SubdivisionTree tree;
    tree.alphabet          = group.alphabet();
    tree.word              = w;
    tree.initial_threshold = policy.initial;
    tree.threshold         = policy.initial;
    for (;;) {
      tree.nodes.clear();
      tree.depth  = 0;
      tree.leaves = 0;
      if (root.length() > tree.threshold) {
        std::size_t max_norm = 0;
        for (auto v : trace(ball, root)) {
          max_norm = std::max(max_norm, static_cast<std::size_t>(ball.norm(v)));
        }
        auto need = fill_radius(max_norm, root.length(), tree.threshold);
        if (ball.radius() < need) {
          throw ResourceError("fill needs ball radius " + std::to_string(need)
                              + ", have " + std::to_string(ball.radius()));
        }
      }
      try {
        build(ball, tree, root, {}, 0);
        return tree;
      } catch (ContractionError const&) {
        if (policy.kind == ThresholdPolicy::Kind::fixed) {
          throw;
        }
        tree.threshold *= 2;
        ++tree.restarts;
      }
    }
  }

  Word expand(Alphabet const& alphabet, ConjugateProduct const& product) {
    Word out;
    for (auto const& f : product.factors) {
      out.insert(out.end(), f.conjugator.begin(), f.conjugator.end());
      out.insert(out.end(), f.relator.begin(), f.relator.end());
      auto inv = invert(alphabet, f.conjugator);
      out.insert(out.end(), inv.begin(), inv.end());
    }
    return out;
  }

  ConjugateProduct to_conjugate_product(SubdivisionTree const& tree) {
    ConjugateProduct out;
    out.word = tree.word;
    if (tree.nodes.empty()) {
      return out;
    }
    struct Frame {
      std::size_t node;
      Word        prefix;
    };
    std::vector<Frame> stack{{0, {}}};
    while (!stack.empty()) {
      auto [id, prefix] = std::move(stack.back());
      stack.pop_back();
      auto const& node = tree.nodes[id];
      if (node.children.empty()) {
        out.factors.push_back({prefix, node.loop.word});
        continue;
      }
      for (auto it = node.children.rbegin(); it != node.children.rend(); ++it) {
        auto child = free_reduce(tree.alphabet, concat({prefix, tree.nodes[*it].conjugator}));
        stack.push_back({*it, std::move(child)});
      }
    }
    return out;
  }

  void verify(GroupSpec const&        group,
              ConjugateProduct const& product,
              std::size_t             threshold) {
    auto const& alphabet = group.alphabet();
    for (auto const& f : product.factors) {
      if (!group.is_identity(f.relator)) {
        throw ConsistencyError("a relator of the conjugate product is not an identity word");
      }
      if (f.relator.size() > threshold) {
        throw ConsistencyError("a relator of the conjugate product exceeds the threshold");
      }
    }
    if (free_reduce(alphabet, expand(alphabet, product))
        != free_reduce(alphabet, product.word)) {
      throw ConsistencyError("conjugate product does not freely reduce to the word");
    }
  }

  Word random_identity_word(BallIndex const& ball, std::size_t n, std::uint64_t seed) {
    if (n < 2) {
      throw InputError("identity word length must be at least 2");
    }
    auto const steps = n / 2;
    if (static_cast<std::size_t>(ball.radius()) < steps) {
      throw ResourceError("random identity words of length " + std::to_string(n)
                          + " need ball radius " + std::to_string(steps));
    }
    auto const& alphabet = ball.group().alphabet();
    auto const  degree   = alphabet.size();
    std::mt19937_64 rng(seed);
    Word            w;
    VertexId        v = BallIndex::identity();
    for (std::size_t i = 0; i < steps; ++i) {
      GeneratorId g = 0;
      if (w.empty() || degree == 1) {
        g = static_cast<GeneratorId>(
            std::uniform_int_distribution<std::size_t>(0, degree - 1)(rng));
      } else {
        auto back = alphabet.inverse(w.back());
        g = static_cast<GeneratorId>(
            std::uniform_int_distribution<std::size_t>(0, degree - 2)(rng));
        if (g >= back) {
          ++g;
        }
      }
      w.push_back(g);
      v = ball.neighbor(v, g);
    }
    auto home = geodesic_word(ball, v, BallIndex::identity());
    w.insert(w.end(), home.begin(), home.end());
    return w;
  }

  std::size_t threshold_from_delta(Dist delta) {
    auto halves = 3 * delta.halves() + 4;
    return std::max<std::size_t>(static_cast<std::size_t>((halves + 1) / 2), 4);
  }

  Dist auto_delta(GroupSpec const& group, unsigned threads) {
    constexpr int kRadius = 3;
    auto ball = build_ball(group, default_ball_radius(group, kRadius));
    DeltaOptions opt;
    opt.domain         = TripleDomain::half_points;
    opt.domain_radius  = kRadius;
    opt.sampling       = {true, 0, 0};
    opt.forced_samples = 10'000;
    opt.threads        = threads;
    return estimate_delta(ball, opt).value;
  }

  std::optional<double> loglog_slope(std::vector<std::pair<double, double>> const& points) {
    std::vector<std::pair<double, double>> logs;
    for (auto [x, y] : points) {
      if (x > 0 && y > 0) {
        logs.emplace_back(std::log(x), std::log(y));
      }
    }
    double mx = 0, my = 0;
    for (auto [x, y] : logs) {
      mx += x;
      my += y;
    }
    if (logs.empty()) {
      return std::nullopt;
    }
    mx /= static_cast<double>(logs.size());
    my /= static_cast<double>(logs.size());
    double sxy = 0, sxx = 0;
    for (auto [x, y] : logs) {
      sxy += (x - mx) * (y - my);
      sxx += (x - mx) * (x - mx);
    }
    if (sxx <= 1e-12) {
      return std::nullopt;
    }
    return sxy / sxx;
  }

  AreaScan dehn_scan(BallIndex const& ball, ScanOptions const& options) {
    if (options.lengths.empty()) {
      throw InputError("dehn scan needs at least one length");
    }
    auto const& group = ball.group();
    struct Job {
      std::size_t record;
      Word        word;
    };
    std::vector<Job>   jobs;
    AreaScan           scan;
    scan.reference = isoperimetric_exponent();
    for (std::size_t li = 0; li < options.lengths.size(); ++li) {
      auto n = options.lengths[li];
      scan.records.push_back({});
      scan.records.back().n = n;
      for (std::size_t s = 0; s < options.samples; ++s) {
        jobs.push_back({li, random_identity_word(ball, n, word_seed(options.seed, n, s))});
      }
      if (auto loop = group.canonical_loop(n)) {
        jobs.push_back({li, std::move(*loop)});
      }
    }

    struct Outcome {
      std::size_t cells, depth, threshold;
    };
    std::vector<Outcome> results(jobs.size());
    parallel_for(jobs.size(), options.threads, [&](std::size_t i, unsigned) {
      auto tree = fill(ball, jobs[i].word, options.policy);
      verify(group, to_conjugate_product(tree), tree.threshold);
      results[i] = {tree.leaves, tree.depth, tree.threshold};
    });

    auto const c = scan.reference;
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      auto& rec = scan.records[jobs[i].record];
      auto const& out = results[i];
      ++rec.words;
      rec.max_cells     = std::max(rec.max_cells, out.cells);
      rec.max_depth     = std::max(rec.max_depth, out.depth);
      rec.max_threshold = std::max(rec.max_threshold, out.threshold);
      rec.total_cells += out.cells;
      if (static_cast<double>(out.cells) > std::pow(static_cast<double>(rec.n), c)) {
        rec.within_bound = false;
      }
    }
    std::vector<std::pair<double, double>> points;
    for (std::size_t i = 0; i < scan.records.size(); ++i) {
      auto& rec = scan.records[i];
      if (rec.words > 0) {
        rec.mean_cells = static_cast<double>(rec.total_cells) / static_cast<double>(rec.words);
        points.emplace_back(static_cast<double>(rec.n), static_cast<double>(rec.max_cells));
      }
      scan.within_bound = scan.within_bound && rec.within_bound;
    }
    scan.exponent = loglog_slope(points);
    return scan;
  }

}  // namespace ldelta

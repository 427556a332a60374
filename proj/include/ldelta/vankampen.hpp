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

// Fillings of identity words by recursive trisection through median points,
// and the conjugate-product witnesses they produce.

#ifndef LDELTA_VANKAMPEN_HPP_
#define LDELTA_VANKAMPEN_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ldelta/ball.hpp"
#include "ldelta/dist.hpp"
#include "ldelta/error.hpp"
#include "ldelta/word.hpp"

namespace ldelta {

  //! Closed path read from `base`.
  struct Loop {
    VertexId base = BallIndex::identity();
    Word     word;

    std::size_t length() const noexcept {
      return word.size();
    }
  };

  //! 1 / (1 - log_3 2).
  double isoperimetric_exponent();

  //! Thrown when a child loop is not strictly shorter than its parent.
  class ContractionError : public ResourceError {
   public:
    ContractionError(std::size_t parent, Loop child);

    std::size_t parent_length() const noexcept {
      return parent_;
    }

    Loop const& child() const noexcept {
      return child_;
    }

   private:
    std::size_t parent_;
    Loop        child_;
  };

  //! Result of cutting a loop w = A B C at x (after A) and y (after A B)
  //! through a median t of x, y and the base z. With geodesics p: x -> t,
  //! q: y -> t, r: z -> t,
  //!   A B C = (A p r^) (r p^ B q r^) (r q^ C)
  //! holds in the free group. Children are the freely reduced loops
  //! A p r^ (at z), p^ B q (at t, conjugator r) and r q^ C (at z).
  struct LoopSplit {
    std::size_t           x_offset = 0;
    std::size_t           y_offset = 0;
    VertexId              x        = 0;
    VertexId              y        = 0;
    VertexId              t        = 0;
    Word                  p, q, r;
    std::array<Loop, 3>   children;
    std::array<Word, 3>   conjugators;
  };

  //! Splits at offsets floor(n/3) and n - floor(n/3). The median is taken
  //! over vertices so that every connecting path is a word. Throws
  //! ContractionError if a child is not shorter, ResourceError if the loop
  //! leaves the ball and InputError if it does not close.
  LoopSplit split_loop(BallIndex const& ball, Loop const& loop);

  struct ThresholdPolicy {
    enum class Kind { fixed, adaptive };

    Kind        kind    = Kind::adaptive;
    std::size_t initial = 4;

    static ThresholdPolicy fixed(std::size_t t) {
      return {Kind::fixed, t};
    }

    static ThresholdPolicy adaptive(std::size_t t) {
      return {Kind::adaptive, t};
    }
  };

  struct SubdivisionNode {
    Loop        loop;
    Word        conjugator;  // from the parent's base to this loop's base
    std::size_t depth = 0;
    std::optional<LoopSplit> split;       // set on internal nodes
    std::vector<std::size_t> children;    // indices into the tree
  };

  struct SubdivisionTree {
    Alphabet                     alphabet;
    Word                         word;       // as given
    std::vector<SubdivisionNode> nodes;      // nodes[0] is the root
    std::size_t                  threshold         = 0;  // final T
    std::size_t                  initial_threshold = 0;
    std::size_t                  restarts          = 0;
    std::size_t                  depth             = 0;
    std::size_t                  leaves            = 0;

    bool is_leaf(std::size_t i) const {
      return nodes[i].children.empty();
    }
  };

  //! Radius a ball needs for fill(w) with threshold T: the largest norm
  //! along w, plus |w|, plus T.
  int fill_radius(std::size_t max_norm, std::size_t word_length, std::size_t threshold);

  //! Ball radius that covers fill of any identity word of length at most
  //! `word_length` with up to two doublings of `threshold`.
  int suggested_fill_radius(std::size_t word_length, std::size_t threshold);

  //! Recursively trisects the freely reduced w until every loop has length
  //! at most T. Under an adaptive policy T doubles after a contraction
  //! failure and the fill restarts. Throws InputError if w is not an
  //! identity word and ResourceError if the ball is too small.
  SubdivisionTree fill(BallIndex const& ball, Word const& w, ThresholdPolicy policy);

  struct ConjugateFactor {
    Word conjugator;
    Word relator;
  };

  struct ConjugateProduct {
    Word                         word;
    std::vector<ConjugateFactor> factors;
  };

  //! Product of g r g^ over the factors, unreduced.
  Word expand(Alphabet const& alphabet, ConjugateProduct const& product);

  //! One factor per leaf, in order; conjugators are freely reduced.
  ConjugateProduct to_conjugate_product(SubdivisionTree const& tree);

  //! Throws ConsistencyError unless the product freely reduces to the word,
  //! every relator is an identity word and no relator exceeds `threshold`.
  void verify(GroupSpec const&        group,
              ConjugateProduct const& product,
              std::size_t             threshold);

  //! Seeded walk of floor(n/2) steps that never undoes its previous step,
  //! closed by a geodesic back to the identity. Length at most n. Needs
  //! ball radius >= floor(n/2).
  Word random_identity_word(BallIndex const& ball, std::size_t n, std::uint64_t seed);

  //! Initial threshold max(ceil(3 delta + 2), 4).
  std::size_t threshold_from_delta(Dist delta);

  //! Half-point estimate at domain radius 3, exhaustive when feasible and
  //! otherwise 10^4 samples with seed 0.
  Dist auto_delta(GroupSpec const& group, unsigned threads = 1);

  struct AreaRecord {
    std::size_t n          = 0;
    std::size_t words      = 0;
    std::size_t max_cells   = 0;
    std::size_t total_cells = 0;
    double      mean_cells  = 0.0;
    std::size_t max_depth  = 0;
    std::size_t max_threshold = 0;
    bool        within_bound  = true;  // every fill has cells <= n^c
  };

  struct AreaScan {
    std::vector<AreaRecord> records;
    std::optional<double>   exponent;  // least-squares slope of log max cells
    double                  reference = 0.0;
    bool                    within_bound = true;
  };

  struct ScanOptions {
    std::vector<std::size_t> lengths;
    std::size_t              samples = 10;
    ThresholdPolicy          policy;
    std::uint64_t            seed    = 0;
    unsigned                 threads = 1;
  };

  //! Fills `samples` random identity words per length, plus the group's
  //! canonical loop when it has one. Words are generated and merged in
  //! (length, sample) order whatever the thread count. The ball should have
  //! radius suggested_fill_radius(longest length, initial threshold).
  AreaScan dehn_scan(BallIndex const& ball, ScanOptions const& options);

  //! Least-squares slope of log y against log x; none with fewer than two
  //! distinct x values.
  std::optional<double> loglog_slope(std::vector<std::pair<double, double>> const& points);

}  // namespace ldelta

#endif  // LDELTA_VANKAMPEN_HPP_

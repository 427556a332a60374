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

#ifndef LDELTA_GROUP_HPP_
#define LDELTA_GROUP_HPP_

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ldelta/rewriting.hpp"
#include "ldelta/word.hpp"

namespace ldelta {

  //! Canonical form of a group element. Its meaning depends on the family:
  //! an integer vector for abelian groups, a freely reduced word for free
  //! groups, the triple (p, q, r) for the Heisenberg group, and the shortlex
  //! normal form for rewriting-defined groups. Two elements of the same group
  //! are equal iff their canonical forms are.
  struct Element {
    std::vector<std::int32_t> data;

    auto operator<=>(Element const&) const = default;
  };

  struct ElementHash {
    std::size_t operator()(Element const& e) const noexcept {
      std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ e.data.size();
      for (auto x : e.data) {
        h ^= static_cast<std::uint32_t>(x) + 0x9e3779b97f4a7c15ULL + (h << 6)
             + (h >> 2);
      }
      return static_cast<std::size_t>(h);
    }
  };

  enum class Family { abelian, free, heisenberg, rewriting };

  std::string_view family_name(Family f);

  class GroupSpec {
   public:
    //! Z^n generated by the given nonzero, pairwise distinct vectors and their
    //! negatives. Letters are `label, label^` per vector.
    static GroupSpec abelian(std::string                          name,
                             std::vector<std::vector<std::int32_t>> vectors,
                             std::vector<std::string>             labels);

    //! Z^n with the standard basis `a, b, c, ...`.
    static GroupSpec abelian_standard(int rank);

    //! Z^2 generated by a = (1,0), b = (0,1) and c = ab = (1,1).
    static GroupSpec z2_abc();

    static GroupSpec free_group(int rank);

    //! Integral Heisenberg group on a, b with
    //! (p,q,r)(p',q',r') = (p+p', q+q', r+r'+p q').
    static GroupSpec heisenberg();

    static GroupSpec rewriting(std::string name, RewritingSystem system);

    //! `z2-std`, `z2-abc`, `z<n>-std`, `f<k>`, `heisenberg`. Throws InputError
    //! for anything else.
    static GroupSpec builtin(std::string_view name);

    //! A built-in name, or otherwise a path to a group definition file.
    static GroupSpec resolve(std::string_view selector);

    std::string const& name() const noexcept {
      return name_;
    }

    Family family() const noexcept {
      return family_;
    }

    Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }

    //! Rules for rewriting-defined groups, otherwise null.
    RewritingSystem const* rewriting_system() const noexcept;

    Element identity() const;

    //! Right action of a generator: the neighbor of `e` along edge `g`.
    Element multiply_generator(Element const& e, GeneratorId g) const;

    Element multiply(Element const& a, Element const& b) const;

    Element inverse(Element const& e) const;

    //! Product of the letters. Throws InputError on unknown letters.
    Element evaluate(std::span<GeneratorId const> w) const;

    bool is_identity(std::span<GeneratorId const> w) const {
      return evaluate(w) == identity();
    }

    std::string format(Element const& e) const;

    //! True when every two points of any closed ball are joined by a geodesic
    //! inside that ball (free groups, Z^n with the standard basis).
    bool has_convex_balls() const noexcept {
      return convex_balls_;
    }

    //! The family's standard hard-to-fill loop of length at most
    //! `max_length`: a^k b^k a^-k b^-k for abelian groups and
    //! [[a^k, b^k], a^k] for the Heisenberg group, with k as large as fits.
    //! None for other families or when k would be 0.
    std::optional<Word> canonical_loop(std::size_t max_length) const;

   private:
    struct AbelianModel {
      int                                    rank;
      std::vector<std::vector<std::int32_t>> vectors;  // indexed by letter
    };
    struct FreeModel {};
    struct HeisenbergModel {};
    struct RewritingModel {
      RewritingSystem system;
    };
    using Model
        = std::variant<AbelianModel, FreeModel, HeisenbergModel, RewritingModel>;

    GroupSpec(std::string name, Family family, Alphabet alphabet, Model model);

    std::string name_;
    Family      family_;
    Alphabet    alphabet_;
    Model       model_;
    bool        convex_balls_ = false;
  };

  //! Canonical form of the product of the letters of `w`.
  inline Element evaluate(GroupSpec const& group, std::span<GeneratorId const> w) {
    return group.evaluate(w);
  }

}  // namespace ldelta

#endif  // LDELTA_GROUP_HPP_

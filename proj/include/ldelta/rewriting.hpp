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

// String rewriting for groups given by a finite shortlex-decreasing rule set.
// This is how user-defined groups get a solvable word problem: the normal
// form of a word is its canonical element.

#ifndef LDELTA_REWRITING_HPP_
#define LDELTA_REWRITING_HPP_

#include <filesystem>
#include <istream>
#include <span>
#include <vector>

#include "ldelta/word.hpp"

namespace ldelta {

  struct Rule {
    Word lhs;
    Word rhs;

    bool operator==(Rule const&) const = default;
  };

  //! Rules over an inverse-closed alphabet, ordered by shortlex with the
  //! alphabet's id order as the generator order.
  class RewritingSystem {
   public:
    //! Throws InputError if a rule has an empty left side, mentions an unknown
    //! letter, or does not strictly decrease in shortlex order.
    RewritingSystem(Alphabet alphabet, std::vector<Rule> rules);

    Alphabet const& alphabet() const noexcept {
      return alphabet_;
    }

    std::span<Rule const> rules() const noexcept {
      return rules_;
    }

    //! Strict shortlex comparison.
    bool shortlex_less(std::span<GeneratorId const> a,
                       std::span<GeneratorId const> b) const;

    Word normal_form(std::span<GeneratorId const> w) const;

    //! Extends an irreducible word by `tail` and renormalizes in place.
    void append(Word& irreducible, std::span<GeneratorId const> tail) const;

   private:
    void drain(Word& out, Word& pending) const;

    Alphabet          alphabet_;
    std::vector<Rule> rules_;
    // rules_by_last_[g] lists rules whose left side ends in g.
    std::vector<std::vector<std::size_t>> rules_by_last_;
  };

  inline Word normal_form(RewritingSystem const&       rs,
                          std::span<GeneratorId const> w) {
    return rs.normal_form(w);
  }

  struct CriticalPair {
    enum class Kind {
      overlap,    // suffix of one left side is a prefix of another
      inclusion,  // one left side is a factor of another
      inverse     // g g^ does not rewrite to the empty word
    };
    Kind        kind;
    std::size_t first_rule;
    std::size_t second_rule;
    Word        word;
    Word        left;
    Word        right;
  };

  //! Every unresolved critical pair, with both sides in normal form. Besides
  //! rule overlaps this reports each generator whose product with its inverse
  //! is not rewritten to the empty word, since such a system does not present
  //! a group over its inverse-closed alphabet. An empty result means local
  //! confluence, hence (with termination) confluence.
  std::vector<CriticalPair> check_local_confluence(RewritingSystem const& rs);

  //! Parses the line-oriented group definition format:
  //!
  //!   generators: a b
  //!   order: a a^ b b^
  //!   b a -> a b
  //!   a a^ ->
  //!
  //! `#` starts a comment. The `order` line fixes generator ids (and hence the
  //! shortlex order); it defaults to `a a^ b b^ ...`.
  RewritingSystem parse_group_definition(std::istream& in);

  RewritingSystem load_group_definition(std::filesystem::path const& path);

}  // namespace ldelta

#endif  // LDELTA_REWRITING_HPP_

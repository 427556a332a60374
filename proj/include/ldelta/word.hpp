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

#ifndef LDELTA_WORD_HPP_
#define LDELTA_WORD_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ldelta {

  using GeneratorId = std::int32_t;

  //! Letters of a word; every letter has length 1 in the word metric.
  using Word = std::vector<GeneratorId>;

  struct Generator {
    GeneratorId id;
    std::string label;
    GeneratorId inverse_id;

    bool operator==(Generator const&) const = default;
  };

  //! An inverse-closed generating alphabet.
  //!
  //! Ids are dense in `[0, size())` and their numeric order is the
  //! generator order used by shortlex comparisons.
  class Alphabet {
   public:
    Alphabet() = default;

    //! Throws InputError unless ids are dense, labels unique and the inverse
    //! map is an involution.
    explicit Alphabet(std::vector<Generator> generators);

    //! Alphabet `x x^ y y^ ...` for the given positive labels.
    static Alphabet paired(std::vector<std::string> const& positive_labels);

    std::size_t size() const noexcept {
      return gens_.size();
    }

    bool contains(GeneratorId g) const noexcept {
      return g >= 0 && static_cast<std::size_t>(g) < gens_.size();
    }

    Generator const& operator[](GeneratorId g) const {
      return gens_[static_cast<std::size_t>(g)];
    }

    GeneratorId inverse(GeneratorId g) const {
      return gens_[static_cast<std::size_t>(g)].inverse_id;
    }

    std::span<Generator const> generators() const noexcept {
      return gens_;
    }

    std::optional<GeneratorId> find(std::string_view label) const;

    bool operator==(Alphabet const&) const = default;

   private:
    std::vector<Generator> gens_;
  };

  //! Throws InputError if some letter is not in the alphabet.
  void validate_word(Alphabet const& alphabet, std::span<GeneratorId const> w);

  //! Deletes adjacent letter/inverse pairs until none remain.
  Word free_reduce(Alphabet const& alphabet, std::span<GeneratorId const> w);

  //! Reversed sequence of inverse letters.
  Word invert(Alphabet const& alphabet, std::span<GeneratorId const> w);

  Word concat(std::initializer_list<std::span<GeneratorId const>> parts);

  //! Parses labels separated by commas and/or whitespace. A label may carry a
  //! repeat count, `a*3`. The empty string and `1` denote the empty word.
  Word parse_word(Alphabet const& alphabet, std::string_view text);

  //! Labels joined by `sep`; the empty word renders as `1`.
  std::string format_word(Alphabet const&          alphabet,
                          std::span<GeneratorId const> w,
                          std::string_view         sep = ",");

}  // namespace ldelta

#endif  // LDELTA_WORD_HPP_

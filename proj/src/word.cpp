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

#include "ldelta/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <unordered_set>

#include "ldelta/error.hpp"

namespace ldelta {

  namespace {
    bool valid_label(std::string_view label) {
      if (label.empty() || label == "1") {
        return false;
      }
      return std::none_of(label.begin(), label.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c)) || c == ','
               || c == '*' || c == '#';
      });
    }
  }  // namespace

  Alphabet::Alphabet(std::vector<Generator> generators)
      : gens_(std::move(generators)) {
    if (gens_.empty()) {
      throw InputError("alphabet must be nonempty");
    }
    std::unordered_set<std::string> labels;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      auto const& g = gens_[i];
      if (g.id != static_cast<GeneratorId>(i)) {
        throw InputError("generator ids must be dense and ordered");
      }
      if (!valid_label(g.label)) {
        throw InputError("invalid generator label '" + g.label + "'");
      }
      if (!labels.insert(g.label).second) {
        throw InputError("duplicate generator label '" + g.label + "'");
      }
      if (!contains(g.inverse_id)
          || gens_[static_cast<std::size_t>(g.inverse_id)].inverse_id
                 != g.id) {
        throw InputError("inverse map is not an involution at '" + g.label
                         + "'");
      }
    }
  }

  Alphabet Alphabet::paired(std::vector<std::string> const& positive_labels) {
    std::vector<Generator> gens;
    gens.reserve(2 * positive_labels.size());
    for (auto const& label : positive_labels) {
      auto id = static_cast<GeneratorId>(gens.size());
      gens.push_back({id, label, id + 1});
      gens.push_back({id + 1, label + "^", id});
    }
    return Alphabet(std::move(gens));
  }

  std::optional<GeneratorId> Alphabet::find(std::string_view label) const {
    for (auto const& g : gens_) {
      if (g.label == label) {
        return g.id;
      }
    }
    return std::nullopt;
  }

  void validate_word(Alphabet const& alphabet, std::span<GeneratorId const> w) {
    for (auto letter : w) {
      if (!alphabet.contains(letter)) {
        throw InputError("unknown generator id " + std::to_string(letter));
      }
    }
  }

  Word free_reduce(Alphabet const& alphabet, std::span<GeneratorId const> w) {
    Word out;
    out.reserve(w.size());
    for (auto letter : w) {
      if (!out.empty() && out.back() == alphabet.inverse(letter)) {
        out.pop_back();
      } else {
        out.push_back(letter);
      }
    }
    return out;
  }

  Word invert(Alphabet const& alphabet, std::span<GeneratorId const> w) {
    Word out(w.size());
    std::transform(w.rbegin(), w.rend(), out.begin(), [&](GeneratorId g) {
      return alphabet.inverse(g);
    });
    return out;
  }

  Word concat(std::initializer_list<std::span<GeneratorId const>> parts) {
    std::size_t n = 0;
    for (auto part : parts) {
      n += part.size();
    }
    Word out;
    out.reserve(n);
    for (auto part : parts) {
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }

  Word parse_word(Alphabet const& alphabet, std::string_view text) {
    Word out;
    std::size_t pos = 0;
    auto is_sep = [](char c) {
      return c == ',' || std::isspace(static_cast<unsigned char>(c));
    };
    while (pos < text.size()) {
      while (pos < text.size() && is_sep(text[pos])) {
        ++pos;
      }
      auto start = pos;
      while (pos < text.size() && !is_sep(text[pos])) {
        ++pos;
      }
      if (start == pos) {
        break;
      }
      auto token = text.substr(start, pos - start);
      if (token == "1") {
        continue;
      }
      std::size_t repeat = 1;
      if (auto star = token.find('*'); star != std::string_view::npos) {
        auto count = token.substr(star + 1);
        auto [ptr, ec]
            = std::from_chars(count.data(), count.data() + count.size(), repeat);
        if (ec != std::errc() || ptr != count.data() + count.size()) {
          throw InputError("bad repeat count in '" + std::string(token) + "'");
        }
        token = token.substr(0, star);
      }
      auto id = alphabet.find(token);
      if (!id) {
        throw InputError("unknown generator '" + std::string(token) + "'");
      }
      out.insert(out.end(), repeat, *id);
    }
    return out;
  }

  std::string format_word(Alphabet const&          alphabet,
                          std::span<GeneratorId const> w,
                          std::string_view         sep) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i != 0) {
        out += sep;
      }
      out += alphabet[w[i]].label;
    }
    return out;
  }

}  // namespace ldelta

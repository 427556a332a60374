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

#include "ldelta/dist.hpp"

#include <charconv>

#include "ldelta/error.hpp"

namespace ldelta {

  std::string Dist::to_fraction() const {
    if (halves_ % 2 == 0) {
      return std::to_string(halves_ / 2) + "/1";
    }
    return std::to_string(halves_) + "/2";
  }

  namespace {
    std::int64_t parse_int(std::string_view text, std::string_view whole) {
      std::int64_t value = 0;
      auto const* first = text.data();
      auto const* last  = text.data() + text.size();
      if (!text.empty() && text.front() == '+') {
        ++first;
      }
      auto [ptr, ec] = std::from_chars(first, last, value);
      if (ec != std::errc() || ptr != last || first == last) {
        throw InputError("not an exact fraction: '" + std::string(whole)
                         + "'");
      }
      return value;
    }
  }  // namespace

  Dist Dist::parse(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
      return whole(parse_int(text, text));
    }
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den <= 0) {
      throw InputError("fraction denominator must be positive: '"
                       + std::string(text) + "'");
    }
    // Only denominators dividing 2 are representable.
    if ((2 * num) % den != 0) {
      throw InputError("fraction is not a multiple of 1/2: '"
                       + std::string(text) + "'");
    }
    return from_halves(2 * num / den);
  }

}  // namespace ldelta

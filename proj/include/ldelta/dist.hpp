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

// Exact lengths in the geometric realization of a Cayley graph. Every
// quantity we handle (distances between vertices and edge midpoints, detour
// slacks) is an integer multiple of 1/2, so it is stored as a count of
// halves.

#ifndef LDELTA_DIST_HPP_
#define LDELTA_DIST_HPP_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace ldelta {

  class Dist {
   public:
    constexpr Dist() = default;

    static constexpr Dist from_halves(std::int64_t halves) {
      Dist d;
      d.halves_ = halves;
      return d;
    }

    static constexpr Dist whole(std::int64_t units) {
      return from_halves(2 * units);
    }

    constexpr std::int64_t halves() const noexcept {
      return halves_;
    }

    constexpr bool is_integer() const noexcept {
      return halves_ % 2 == 0;
    }

    double to_double() const noexcept {
      return static_cast<double>(halves_) / 2.0;
    }

    //! Reduced fraction "p/q" with q in {1, 2}; zero is "0/1".
    std::string to_fraction() const;

    //! Accepts "p/q" (q in {1, 2} after reduction) or a bare integer.
    static Dist parse(std::string_view text);

    constexpr auto operator<=>(Dist const&) const = default;

    constexpr Dist operator+(Dist other) const {
      return from_halves(halves_ + other.halves_);
    }

    constexpr Dist operator-(Dist other) const {
      return from_halves(halves_ - other.halves_);
    }

    constexpr Dist& operator+=(Dist other) {
      halves_ += other.halves_;
      return *this;
    }

   private:
    std::int64_t halves_ = 0;
  };

  using SlackValue = Dist;

}  // namespace ldelta

#endif  // LDELTA_DIST_HPP_

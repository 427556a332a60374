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

#include "ldelta/group.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>

#include "ldelta/error.hpp"

namespace ldelta {

  namespace {
    template <class... Ts>
    struct overloaded : Ts... {
      using Ts::operator()...;
    };
    template <class... Ts>
    overloaded(Ts...) -> overloaded<Ts...>;

    std::vector<std::string> letter_labels(int count) {
      std::vector<std::string> labels;
      for (int i = 0; i < count; ++i) {
        if (i < 26) {
          labels.emplace_back(1, static_cast<char>('a' + i));
        } else {
          labels.push_back("x" + std::to_string(i));
        }
      }
      return labels;
    }

    std::optional<int> suffix_number(std::string_view text) {
      int value = 0;
      auto [ptr, ec]
          = std::from_chars(text.data(), text.data() + text.size(), value);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        return std::nullopt;
      }
      return value;
    }

    std::string join_ints(std::vector<std::int32_t> const& v) {
      std::string out = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) {
          out += ",";
        }
        out += std::to_string(v[i]);
      }
      return out + ")";
    }
  }  // namespace

  std::string_view family_name(Family f) {
    switch (f) {
      case Family::abelian:
        return "abelian";
      case Family::free:
        return "free";
      case Family::heisenberg:
        return "heisenberg";
      case Family::rewriting:
        return "rewriting";
    }
    return "unknown";
  }

  GroupSpec::GroupSpec(std::string name,
                       Family      family,
                       Alphabet    alphabet,
                       Model       model)
      : name_(std::move(name)),
        family_(family),
        alphabet_(std::move(alphabet)),
        model_(std::move(model)) {}

  GroupSpec GroupSpec::abelian(std::string                            name,
                               std::vector<std::vector<std::int32_t>> vectors,
                               std::vector<std::string>               labels) {
    if (vectors.empty() || vectors.size() != labels.size()) {
      throw InputError("abelian group needs one label per generating vector");
    }
    auto rank = vectors.front().size();
    if (rank == 0) {
      throw InputError("abelian group needs rank at least 1");
    }
    AbelianModel model{static_cast<int>(rank), {}};
    for (auto const& v : vectors) {
      if (v.size() != rank) {
        throw InputError("generating vectors must share one dimension");
      }
      if (std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; })) {
        throw InputError("generating vectors must be nonzero");
      }
      std::vector<std::int32_t> neg(v.size());
      std::transform(v.begin(), v.end(), neg.begin(), [](auto x) { return -x; });
      for (auto const& seen : model.vectors) {
        if (seen == v || seen == neg) {
          throw InputError("generating vectors must be distinct up to sign");
        }
      }
      model.vectors.push_back(v);
      model.vectors.push_back(std::move(neg));
    }

    bool standard = std::all_of(vectors.begin(), vectors.end(), [](auto const& v) {
      return std::count(v.begin(), v.end(), 0)
                 == static_cast<std::ptrdiff_t>(v.size()) - 1
             && std::any_of(v.begin(), v.end(), [](auto x) {
                  return x == 1 || x == -1;
                });
    });
    GroupSpec g(std::move(name),
                Family::abelian,
                Alphabet::paired(labels),
                std::move(model));
    g.convex_balls_ = standard && vectors.size() == rank;
    return g;
  }

  GroupSpec GroupSpec::abelian_standard(int rank) {
    if (rank < 1) {
      throw InputError("rank must be positive");
    }
    std::vector<std::vector<std::int32_t>> basis;
    for (int i = 0; i < rank; ++i) {
      std::vector<std::int32_t> e(static_cast<std::size_t>(rank), 0);
      e[static_cast<std::size_t>(i)] = 1;
      basis.push_back(std::move(e));
    }
    return abelian("z" + std::to_string(rank) + "-std",
                   std::move(basis),
                   letter_labels(rank));
  }

  GroupSpec GroupSpec::z2_abc() {
    return abelian("z2-abc", {{1, 0}, {0, 1}, {1, 1}}, {"a", "b", "c"});
  }

  GroupSpec GroupSpec::free_group(int rank) {
    if (rank < 1) {
      throw InputError("rank must be positive");
    }
    GroupSpec g("f" + std::to_string(rank),
                Family::free,
                Alphabet::paired(letter_labels(rank)),
                FreeModel{});
    g.convex_balls_ = true;
    return g;
  }

  GroupSpec GroupSpec::heisenberg() {
    return GroupSpec("heisenberg",
                     Family::heisenberg,
                     Alphabet::paired({"a", "b"}),
                     HeisenbergModel{});
  }

  GroupSpec GroupSpec::rewriting(std::string name, RewritingSystem system) {
    auto alphabet = system.alphabet();
    return GroupSpec(std::move(name),
                     Family::rewriting,
                     std::move(alphabet),
                     RewritingModel{std::move(system)});
  }

  GroupSpec GroupSpec::builtin(std::string_view name) {
    if (name == "z2-abc") {
      return z2_abc();
    }
    if (name == "heisenberg") {
      return heisenberg();
    }
    if (name.size() > 5 && name.front() == 'z' && name.ends_with("-std")) {
      if (auto n = suffix_number(name.substr(1, name.size() - 5));
          n && *n >= 1 && *n <= 26) {
        return abelian_standard(*n);
      }
    }
    if (name.size() > 1 && name.front() == 'f') {
      if (auto k = suffix_number(name.substr(1)); k && *k >= 1 && *k <= 26) {
        return free_group(*k);
      }
    }
    throw InputError("unknown group '" + std::string(name) + "'");
  }

  GroupSpec GroupSpec::resolve(std::string_view selector) {
    try {
      return builtin(selector);
    } catch (InputError const&) {
      std::filesystem::path path(selector);
      if (!std::filesystem::exists(path)) {
        throw;
      }
      return rewriting(path.stem().string(), load_group_definition(path));
    }
  }

  RewritingSystem const* GroupSpec::rewriting_system() const noexcept {
    if (auto const* m = std::get_if<RewritingModel>(&model_)) {
      return &m->system;
    }
    return nullptr;
  }

  Element GroupSpec::identity() const {
    return std::visit(
        overloaded{
            [](AbelianModel const& m) {
              return Element{std::vector<std::int32_t>(
                  static_cast<std::size_t>(m.rank), 0)};
            },
            [](HeisenbergModel const&) { return Element{{0, 0, 0}}; },
            [](auto const&) { return Element{}; },
        },
        model_);
  }

  Element GroupSpec::multiply_generator(Element const& e, GeneratorId g) const {
    if (!alphabet_.contains(g)) {
      throw InputError("unknown generator id " + std::to_string(g));
    }
    Element out = e;
    std::visit(overloaded{
                   [&](AbelianModel const& m) {
                     auto const& v = m.vectors[static_cast<std::size_t>(g)];
                     for (std::size_t i = 0; i < v.size(); ++i) {
                       out.data[i] += v[i];
                     }
                   },
                   [&](FreeModel const&) {
                     if (!out.data.empty()
                         && out.data.back() == alphabet_.inverse(g)) {
                       out.data.pop_back();
                     } else {
                       out.data.push_back(g);
                     }
                   },
                   [&](HeisenbergModel const&) {
                     // a = (1,0,0), b = (0,1,0); right multiplication by b
                     // adds p to the central coordinate.
                     switch (g) {
                       case 0:
                         ++out.data[0];
                         break;
                       case 1:
                         --out.data[0];
                         break;
                       case 2:
                         ++out.data[1];
                         out.data[2] += out.data[0];
                         break;
                       default:
                         --out.data[1];
                         out.data[2] -= out.data[0];
                         break;
                     }
                   },
                   [&](RewritingModel const& m) {
                     GeneratorId letter[] = {g};
                     m.system.append(out.data, letter);
                   },
               },
               model_);
    return out;
  }

  Element GroupSpec::multiply(Element const& a, Element const& b) const {
    return std::visit(
        overloaded{
            [&](AbelianModel const&) {
              Element out = a;
              for (std::size_t i = 0; i < out.data.size(); ++i) {
                out.data[i] += b.data[i];
              }
              return out;
            },
            [&](FreeModel const&) {
              return Element{free_reduce(alphabet_, concat({a.data, b.data}))};
            },
            [&](HeisenbergModel const&) {
              return Element{{a.data[0] + b.data[0],
                              a.data[1] + b.data[1],
                              a.data[2] + b.data[2] + a.data[0] * b.data[1]}};
            },
            [&](RewritingModel const& m) {
              Element out = a;
              m.system.append(out.data, b.data);
              return out;
            },
        },
        model_);
  }

  Element GroupSpec::inverse(Element const& e) const {
    return std::visit(
        overloaded{
            [&](AbelianModel const&) {
              Element out = e;
              for (auto& x : out.data) {
                x = -x;
              }
              return out;
            },
            [&](FreeModel const&) { return Element{invert(alphabet_, e.data)}; },
            [&](HeisenbergModel const&) {
              return Element{{-e.data[0],
                              -e.data[1],
                              -e.data[2] + e.data[0] * e.data[1]}};
            },
            [&](RewritingModel const& m) {
              return Element{m.system.normal_form(invert(alphabet_, e.data))};
            },
        },
        model_);
  }

  Element GroupSpec::evaluate(std::span<GeneratorId const> w) const {
    validate_word(alphabet_, w);
    if (auto const* m = std::get_if<RewritingModel>(&model_)) {
      return Element{m->system.normal_form(w)};
    }
    if (family_ == Family::free) {
      return Element{free_reduce(alphabet_, w)};
    }
    Element e = identity();
    for (auto g : w) {
      e = multiply_generator(e, g);
    }
    return e;
  }

  std::string GroupSpec::format(Element const& e) const {
    switch (family_) {
      case Family::abelian:
      case Family::heisenberg:
        return join_ints(e.data);
      case Family::free:
      case Family::rewriting:
        return format_word(alphabet_, e.data);
    }
    return {};
  }

  std::optional<Word> GroupSpec::canonical_loop(std::size_t max_length) const {
    auto repeat = [](Word& w, GeneratorId g, std::size_t k) {
      w.insert(w.end(), k, g);
    };
    // Letters 0..3 are a, a^, b, b^ in both families below.
    if (family_ == Family::abelian && alphabet_.size() >= 4) {
      auto k = max_length / 4;
      if (k == 0) {
        return std::nullopt;
      }
      Word w;
      repeat(w, 0, k);
      repeat(w, 2, k);
      repeat(w, 1, k);
      repeat(w, 3, k);
      return w;
    }
    if (family_ == Family::heisenberg) {
      auto k = max_length / 10;
      if (k == 0) {
        return std::nullopt;
      }
      Word commutator;
      repeat(commutator, 0, k);
      repeat(commutator, 2, k);
      repeat(commutator, 1, k);
      repeat(commutator, 3, k);
      Word ak(k, 0);
      return concat({commutator, ak, invert(alphabet_, commutator), invert(alphabet_, ak)});
    }
    return std::nullopt;
  }

}  // namespace ldelta

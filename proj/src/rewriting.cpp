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

#include "ldelta/rewriting.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "ldelta/error.hpp"

namespace ldelta {

  RewritingSystem::RewritingSystem(Alphabet alphabet, std::vector<Rule> rules)
      : alphabet_(std::move(alphabet)),
        rules_(std::move(rules)),
        rules_by_last_(alphabet_.size()) {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      auto const& rule = rules_[i];
      if (rule.lhs.empty()) {
        throw InputError("rule " + std::to_string(i) + " has an empty left side");
      }
      validate_word(alphabet_, rule.lhs);
      validate_word(alphabet_, rule.rhs);
      if (!shortlex_less(rule.rhs, rule.lhs)) {
        throw InputError("rule " + format_word(alphabet_, rule.lhs, " ")
                         + " -> " + format_word(alphabet_, rule.rhs, " ")
                         + " does not decrease in shortlex order");
      }
      rules_by_last_[static_cast<std::size_t>(rule.lhs.back())].push_back(i);
    }
  }

  bool RewritingSystem::shortlex_less(std::span<GeneratorId const> a,
                                      std::span<GeneratorId const> b) const {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }

  void RewritingSystem::drain(Word& out, Word& pending) const {
    // Invariant: `out` is irreducible, so a new left-side occurrence can only
    // appear as a suffix after each push.
    while (!pending.empty()) {
      auto letter = pending.back();
      pending.pop_back();
      out.push_back(letter);
      for (auto index : rules_by_last_[static_cast<std::size_t>(letter)]) {
        auto const& lhs = rules_[index].lhs;
        if (lhs.size() <= out.size()
            && std::equal(lhs.begin(), lhs.end(), out.end() - lhs.size())) {
          out.resize(out.size() - lhs.size());
          auto const& rhs = rules_[index].rhs;
          pending.insert(pending.end(), rhs.rbegin(), rhs.rend());
          break;
        }
      }
    }
  }

  Word RewritingSystem::normal_form(std::span<GeneratorId const> w) const {
    Word out;
    out.reserve(w.size());
    Word pending(w.rbegin(), w.rend());
    drain(out, pending);
    return out;
  }

  void RewritingSystem::append(Word&                        irreducible,
                               std::span<GeneratorId const> tail) const {
    Word pending(tail.rbegin(), tail.rend());
    drain(irreducible, pending);
  }

  std::vector<CriticalPair> check_local_confluence(RewritingSystem const& rs) {
    std::vector<CriticalPair> unresolved;
    auto const rules = rs.rules();
    auto record      = [&](CriticalPair::Kind kind,
                      std::size_t        i,
                      std::size_t        j,
                      Word               word,
                      Word const&        left,
                      Word const&        right) {
      auto l = rs.normal_form(left);
      auto r = rs.normal_form(right);
      if (l != r) {
        unresolved.push_back({kind, i, j, std::move(word), l, r});
      }
    };

    for (std::size_t i = 0; i < rules.size(); ++i) {
      auto const& li = rules[i].lhs;
      auto const& ri = rules[i].rhs;
      for (std::size_t j = 0; j < rules.size(); ++j) {
        auto const& lj = rules[j].lhs;
        auto const& rj = rules[j].rhs;
        // li = u v, lj = v w with u, v, w nonempty.
        for (std::size_t k = 1; k < std::min(li.size(), lj.size()); ++k) {
          if (!std::equal(li.end() - static_cast<std::ptrdiff_t>(k),
                          li.end(),
                          lj.begin())) {
            continue;
          }
          std::span<GeneratorId const> u(li.data(), li.size() - k);
          std::span<GeneratorId const> w(lj.data() + k, lj.size() - k);
          record(CriticalPair::Kind::overlap,
                 i,
                 j,
                 concat({li, w}),
                 concat({ri, w}),
                 concat({u, rj}));
        }
        // li = u lj w.
        if (i == j || lj.size() > li.size()) {
          continue;
        }
        for (std::size_t p = 0; p + lj.size() <= li.size(); ++p) {
          if (!std::equal(lj.begin(), lj.end(), li.begin() + p)) {
            continue;
          }
          std::span<GeneratorId const> u(li.data(), p);
          std::span<GeneratorId const> w(li.data() + p + lj.size(),
                                         li.size() - p - lj.size());
          record(CriticalPair::Kind::inclusion, i, j, li, ri, concat({u, rj, w}));
        }
      }
    }

    auto const& alphabet = rs.alphabet();
    for (auto const& g : alphabet.generators()) {
      Word gg{g.id, g.inverse_id};
      record(CriticalPair::Kind::inverse, 0, 0, gg, gg, Word{});
    }
    return unresolved;
  }

  namespace {
    std::string strip(std::string const& s) {
      auto first = s.find_first_not_of(" \t\r");
      if (first == std::string::npos) {
        return {};
      }
      auto last = s.find_last_not_of(" \t\r");
      return s.substr(first, last - first + 1);
    }

    std::vector<std::string> split_ws(std::string const& s) {
      std::istringstream       in(s);
      std::vector<std::string> out;
      std::string              token;
      while (in >> token) {
        out.push_back(token);
      }
      return out;
    }
  }  // namespace

  RewritingSystem parse_group_definition(std::istream& in) {
    std::vector<std::string>              positive;
    std::vector<std::string>              order;
    std::vector<std::pair<std::string, std::string>> raw_rules;
    std::string                           line;
    std::size_t                           lineno = 0;
    auto fail = [&](std::string const& what) {
      throw InputError("group definition line " + std::to_string(lineno) + ": "
                       + what);
    };

    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      line = strip(line);
      if (line.empty()) {
        continue;
      }
      if (line.rfind("generators:", 0) == 0) {
        positive = split_ws(line.substr(11));
      } else if (line.rfind("order:", 0) == 0) {
        order = split_ws(line.substr(6));
      } else if (auto arrow = line.find("->"); arrow != std::string::npos) {
        raw_rules.emplace_back(line.substr(0, arrow), line.substr(arrow + 2));
      } else {
        fail("expected 'generators:', 'order:' or a rule 'lhs -> rhs'");
      }
    }
    if (positive.empty()) {
      throw InputError("group definition has no 'generators:' line");
    }
    for (auto const& label : positive) {
      if (!label.empty() && label.back() == '^') {
        throw InputError("generator label '" + label + "' may not end in '^'");
      }
    }

    auto paired = Alphabet::paired(positive);
    if (order.empty()) {
      for (auto const& g : paired.generators()) {
        order.push_back(g.label);
      }
    }
    if (order.size() != paired.size()) {
      throw InputError("'order:' must list every generator and inverse once");
    }
    std::vector<Generator> gens;
    for (std::size_t i = 0; i < order.size(); ++i) {
      auto old = paired.find(order[i]);
      if (!old) {
        throw InputError("'order:' mentions unknown generator '" + order[i]
                         + "'");
      }
      gens.push_back({static_cast<GeneratorId>(i), order[i], -1});
    }
    for (auto& g : gens) {
      auto inv_label = paired[paired.inverse(*paired.find(g.label))].label;
      auto it        = std::find(order.begin(), order.end(), inv_label);
      g.inverse_id   = static_cast<GeneratorId>(it - order.begin());
    }
    Alphabet alphabet(std::move(gens));

    std::vector<Rule> rules;
    for (auto const& [lhs, rhs] : raw_rules) {
      rules.push_back({parse_word(alphabet, lhs), parse_word(alphabet, rhs)});
    }
    return RewritingSystem(std::move(alphabet), std::move(rules));
  }

  RewritingSystem load_group_definition(std::filesystem::path const& path) {
    std::ifstream in(path);
    if (!in) {
      throw InputError("cannot open group definition '" + path.string() + "'");
    }
    return parse_group_definition(in);
  }

}  // namespace ldelta

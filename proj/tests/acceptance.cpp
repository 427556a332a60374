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

// Acceptance runs. Prints one PASS or FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ldelta/ball.hpp"
#include "ldelta/cli.hpp"
#include "ldelta/error.hpp"
#include "ldelta/median.hpp"
#include "ldelta/rewriting.hpp"
#include "ldelta/vankampen.hpp"
#include "support.hpp"

using namespace ldelta;
using nlohmann::json;

namespace {
  using Clock = std::chrono::steady_clock;

  double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
  }

  struct Run {
    std::vector<std::string> args;
    std::string              payload;  // with --threads 1
  };

  std::vector<Run> cli_runs;

  //! Runs the CLI with --json --threads 1 and records the run for the
  //! determinism check.
  json run_cli(std::vector<std::string> args) {
    auto full = args;
    full.insert(full.end(), {"--json", "--threads", "1"});
    std::ostringstream out, err;
    int                code = cli::run(full, out, err);
    if (code != cli::kOk) {
      throw std::runtime_error("ldelta " + args[0] + " exited with " + std::to_string(code) + ": "
                               + err.str());
    }
    auto payload = json::parse(out.str()).at("payload");
    cli_runs.push_back({std::move(args), payload.dump()});
    return payload;
  }

  std::string source_path(std::string const& rel) {
    return std::string(LDELTA_SOURCE_DIR) + "/" + rel;
  }

  int failures = 0;

  void report(int id, bool pass, std::string const& detail) {
    std::cout << (pass ? "PASS " : "FAIL ") << id << ": " << detail << std::endl;
    failures += pass ? 0 : 1;
  }

  void criterion(int id, std::function<void()> body) {
    try {
      body();
    } catch (std::exception const& e) {
      report(id, false, std::string("error: ") + e.what());
    }
  }

  Word commutator_power(GroupSpec const& g, int k) {
    Word out;
    for (auto const* label : {"a", "b", "a^", "b^"}) {
      auto letter = *g.alphabet().find(label);
      out.insert(out.end(), static_cast<std::size_t>(k), letter);
    }
    return out;
  }

  std::string fmt(double x, int digits = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
  }
}  // namespace

int main() {
  // 1. Z^2 standard, vertex domain, exhaustive at radius 4.
  criterion(1, [] {
    auto start = Clock::now();
    auto p     = run_cli({"delta", "--group", "z2-std", "--radius", "4", "--domain", "vertices", "--exhaustive"});
    auto secs  = seconds_since(start);
    // Oracle: the coordinatewise median lies on all three L1 geodesics.
    auto group = GroupSpec::builtin("z2-std");
    auto ball  = build_ball(group, 4);
    auto pts   = domain_points(ball, TripleDomain::vertices, 4);
    long worst = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          std::array<std::vector<std::int32_t> const*, 3> e{
              &ball.element(pts[i].u).data, &ball.element(pts[j].u).data, &ball.element(pts[k].u).data};
          std::array<long, 2> m{};
          for (std::size_t c = 0; c < 2; ++c) {
            std::array<long, 3> v{(*e[0])[c], (*e[1])[c], (*e[2])[c]};
            std::sort(v.begin(), v.end());
            m[c] = v[1];
          }
          auto l1 = [&](std::vector<std::int32_t> const& a, std::array<long, 2> b) {
            return std::labs(a[0] - b[0]) + std::labs(a[1] - b[1]);
          };
          auto l1v = [&](std::vector<std::int32_t> const& a, std::vector<std::int32_t> const& b) {
            return l1(a, {b[0], b[1]});
          };
          for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 2}, std::pair{2, 0}}) {
            worst = std::max(worst, l1(*e[a], m) + l1(*e[b], m) - l1v(*e[a], *e[b]));
          }
        }
      }
    }
    bool pass = p.at("value") == "0/1" && worst == 0 && secs <= 60.0;
    report(1, pass,
           "z2-std vertices r=4 exhaustive delta-hat " + p.at("value").get<std::string>() + " over "
               + std::to_string(p.at("triples").get<long>()) + " triples (oracle "
               + std::to_string(worst) + "/1, " + fmt(secs) + " s)");
  });

  // 2. Z^2 standard, half-point domain at radius 6.
  criterion(2, [] {
    auto p     = run_cli({"delta", "--group", "z2-std", "--radius", "6", "--domain", "half", "--exhaustive"});
    auto group = GroupSpec::builtin("z2-std");
    auto ball  = build_ball(group, default_ball_radius(group, 6));
    DeltaOptions o;
    o.domain_radius = 6;
    auto est        = estimate_delta(ball, o);
    test::LatticeOracle oracle({{1, 0}, {0, 1}}, ball);
    auto const&         x     = est.witness;
    auto                brute = oracle.best(x[0], x[1], x[2]);
    bool pass = p.at("value") == est.value.to_fraction() && est.value > Dist{}
                && brute == est.value.halves() && !p.at("sampling").at("forced").get<bool>();
    report(2, pass,
           "z2-std half-points r=6 delta-hat " + p.at("value").get<std::string>() + " over "
               + std::to_string(p.at("triples").get<long>()) + " triples; witness "
               + p.at("witness")[0].at("point").get<std::string>() + " "
               + p.at("witness")[1].at("point").get<std::string>() + " "
               + p.at("witness")[2].at("point").get<std::string>() + " brute-force t-search "
               + Dist::from_halves(brute).to_fraction());
  });

  // 3. Z^2 with a, b, c = ab: growth between radius 3 and 6.
  criterion(3, [] {
    auto p3    = run_cli({"delta", "--group", "z2-abc", "--radius", "3", "--domain", "vertices", "--exhaustive"});
    auto p6    = run_cli({"delta", "--group", "z2-abc", "--radius", "6", "--domain", "vertices", "--exhaustive"});
    auto group = GroupSpec::z2_abc();
    // Oracle at radius 3: brute force over every triple and every point.
    auto b3 = build_ball(group, default_ball_radius(group, 3));
    test::LatticeOracle o3({{1, 0}, {0, 1}, {1, 1}}, b3);
    auto pts = domain_points(b3, TripleDomain::vertices, 3);
    int  d3  = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          d3 = std::max(d3, o3.best(pts[i], pts[j], pts[k]));
        }
      }
    }
    // At radius 6 the oracle confirms the witness reaches the reported value.
    auto b6 = build_ball(group, default_ball_radius(group, 6));
    test::LatticeOracle o6({{1, 0}, {0, 1}, {1, 1}}, b6);
    std::array<Point, 3> w6;
    for (std::size_t i = 0; i < 3; ++i) {
      w6[i] = Point::vertex(p6.at("witness")[i].at("u").get<VertexId>());
    }
    auto d6   = o6.best(w6[0], w6[1], w6[2]);
    auto v3   = Dist::parse(p3.at("value").get<std::string>());
    auto v6   = Dist::parse(p6.at("value").get<std::string>());
    bool pass = v6 > v3 && v3.halves() == d3 && v6.halves() == d6;
    report(3, pass,
           "z2-abc vertices exhaustive delta-hat r=3 " + v3.to_fraction() + " (oracle "
               + Dist::from_halves(d3).to_fraction() + "), r=6 " + v6.to_fraction()
               + " (witness oracle " + Dist::from_halves(d6).to_fraction() + ")");
  });

  // 4. Free group F2.
  criterion(4, [] {
    bool        zero = true;
    std::string values;
    int         forced = 0;
    for (int r = 3; r <= 6; ++r) {
      for (char const* d : {"vertices", "half"}) {
        auto p = run_cli({"delta", "--group", "f2", "--radius", std::to_string(r), "--domain", d, "--exhaustive"});
        zero   = zero && p.at("value") == "0/1";
        forced += p.at("sampling").at("forced").get<bool>() ? 1 : 0;
        values += (values.empty() ? "" : " ") + p.at("value").get<std::string>();
      }
    }
    // Oracle: every vertex triple of a tree has a center on all three
    // geodesics.
    auto group  = GroupSpec::free_group(2);
    auto ball   = build_ball(group, 3);
    auto pts    = domain_points(ball, TripleDomain::vertices, 3);
    bool center = true;
    for (std::size_t i = 0; i < pts.size() && center; ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        for (std::size_t k = j + 1; k < pts.size(); ++k) {
          auto const& a = ball.element(pts[i].u).data;
          auto const& b = ball.element(pts[j].u).data;
          auto const& c = ball.element(pts[k].u).data;
          auto m = std::max({test::common_prefix(a, b), test::common_prefix(b, c), test::common_prefix(a, c)});
          Word t = test::common_prefix(a, b) == m   ? Word(a.begin(), a.begin() + static_cast<long>(m))
                   : test::common_prefix(b, c) == m ? Word(b.begin(), b.begin() + static_cast<long>(m))
                                                     : Word(a.begin(), a.begin() + static_cast<long>(m));
          auto d = [&](Word const& x, Word const& y) { return test::tree_distance(x, y); };
          center = center && d(a, t) + d(t, b) == d(a, b) && d(b, t) + d(t, c) == d(b, c)
                   && d(c, t) + d(t, a) == d(c, a);
        }
      }
    }
    auto ac    = run_cli({"ac", "--group", "f2", "--nmax", "6", "--delta", "0/1"});
    bool two   = true;
    for (auto const& row : ac.at("rows")) {
      if (row.at("n").get<int>() >= 1) {
        two = two && row.at("C_n") == "2";
      }
    }
    bool pass = zero && center && two && ac.at("all_pass").get<bool>() && ac.at("bound") == "2/1";
    report(4, pass,
           "f2 delta-hat r=3..6 vertices/half: " + values + " (" + std::to_string(forced)
               + " runs over the exhaustive cap sampled); C_n = 2 for n=1..6 against 3*0+2");
  });

  // 5. Heisenberg group, sampled.
  criterion(5, [] {
    auto        start = Clock::now();
    std::vector<Dist> v;
    for (int r : {4, 6, 8}) {
      auto p = run_cli({"delta", "--group", "heisenberg", "--radius", std::to_string(r), "--domain", "vertices",
                    "--samples", "100000", "--seed", "0"});
      v.push_back(Dist::parse(p.at("value").get<std::string>()));
    }
    auto secs = seconds_since(start);
    // Context: exhaustive values at radius 4 and 6.
    auto group = GroupSpec::heisenberg();
    std::string context;
    for (int r : {4, 6}) {
      auto         ball = build_ball(group, default_ball_radius(group, r));
      DeltaOptions o;
      o.domain                 = TripleDomain::vertices;
      o.domain_radius          = r;
      o.max_exhaustive_triples = 100'000'000;
      auto est                 = estimate_delta(ball, o);
      context += " R=" + std::to_string(r) + " " + est.value.to_fraction();
    }
    bool pass = v[0] < v[1] && v[1] < v[2] && secs <= 600.0;
    report(5, pass,
           "heisenberg sampled (1e5, seed 0) delta-hat R=4,6,8: " + v[0].to_fraction() + " "
               + v[1].to_fraction() + " " + v[2].to_fraction() + " (" + fmt(secs)
               + " s); exhaustive" + context);
  });

  // 6. Fillings of commutators in Z^2.
  criterion(6, [] {
    auto        group = GroupSpec::builtin("z2-std");
    auto        t0    = threshold_from_delta(auto_delta(group));
    bool        pass  = true;
    std::string detail;
    for (int k : {2, 4, 6, 8}) {
      run_cli({"fill", "--group", "z2-std", "--word", "a*" + std::to_string(k) + ",b*" + std::to_string(k) + ",a^*"
                                                      + std::to_string(k) + ",b^*" + std::to_string(k),
           "--threshold", "auto", "--emit", "product"});
      auto word  = commutator_power(group, k);
      auto ball  = build_ball(group, suggested_fill_radius(word.size(), t0));
      auto tree  = fill(ball, word, ThresholdPolicy::adaptive(t0));
      bool ok    = true;
      for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        if (tree.is_leaf(i)) {
          ok = ok && group.is_identity(tree.nodes[i].loop.word)
               && tree.nodes[i].loop.length() <= tree.threshold;
        }
      }
      auto product = to_conjugate_product(tree);
      ok           = ok
           && test::naive_reduce(group.alphabet(), expand(group.alphabet(), product))
                  == test::naive_reduce(group.alphabet(), word);
      auto n     = static_cast<double>(word.size());
      auto bound = static_cast<std::size_t>(std::ceil(std::log(n) / std::log(1.5))) + 4;
      ok = ok && tree.depth <= bound
           && static_cast<double>(tree.leaves) <= std::pow(3.0, static_cast<double>(tree.depth));
      pass = pass && ok;
      detail += " k=" + std::to_string(k) + ":" + std::to_string(tree.leaves) + "/"
                + std::to_string(tree.depth) + "/" + std::to_string(tree.threshold);
    }
    report(6, pass, "z2-std commutator fillings (cells/depth/T, T0=" + std::to_string(t0) + ")" + detail);
  });

  // 7. Area exponent over lengths 16..48.
  criterion(7, [] {
    auto start = Clock::now();
    auto p     = run_cli({"dehn-scan", "--group", "z2-std", "--lengths", "16..48..8", "--samples", "10", "--seed", "0"});
    auto secs  = seconds_since(start);
    bool has   = p.at("exponent").is_number();
    auto slope = has ? p.at("exponent").get<double>() : 0.0;
    bool pass  = has && slope <= 2.71 + 0.3 && secs <= 300.0 && p.at("within_bound").get<bool>();
    report(7, pass,
           "z2-std dehn-scan n=16..48 step 8, 10 samples: slope " + (has ? fmt(slope, 4) : "absent")
               + " against 3.01, reference " + fmt(isoperimetric_exponent(), 4) + " (" + fmt(secs) + " s)");
  });

  // 8. Decomposition identity in free groups.
  criterion(8, [] {
    std::mt19937_64 rng(0);
    auto            group  = GroupSpec::free_group(3);
    auto const&     al     = group.alphabet();
    int             failed = 0;
    for (int i = 0; i < 1000; ++i) {
      std::array<Word, 6> s;
      for (auto& x : s) {
        x = test::random_word(group, static_cast<std::size_t>(rng() % 12), rng);
      }
      auto const& [a, b, c, p, q, r] = s;
      auto lhs = concat({a, p, invert(al, r), r, invert(al, p), b, q, invert(al, r), r, invert(al, q), c});
      auto abc = concat({a, b, c});
      if (free_reduce(al, lhs) != free_reduce(al, abc)
          || free_reduce(al, lhs) != test::naive_reduce(al, abc)) {
        ++failed;
      }
    }
    report(8, failed == 0, "1000 random sextuples over F3, " + std::to_string(failed) + " failures");
  });

  // 9. The Z^2 rewriting system.
  criterion(9, [] {
    run_cli({"check-confluence", "--group", source_path("groups/z2.rws")});
    auto rs    = load_group_definition(source_path("groups/z2.rws"));
    auto pairs = check_local_confluence(rs);
    auto group = GroupSpec::rewriting("z2", rs);
    std::mt19937_64 rng(0);
    int             mismatches = 0;
    for (int i = 0; i < 10'000; ++i) {
      auto x  = test::random_word(group, static_cast<std::size_t>(rng() % 13), rng);
      long cx = 0, cy = 0;
      for (auto l : x) {
        auto const& label = group.alphabet()[l].label;
        cx += label == "a" ? 1 : label == "a^" ? -1 : 0;
        cy += label == "b" ? 1 : label == "b^" ? -1 : 0;
      }
      Word expect;
      expect.insert(expect.end(), static_cast<std::size_t>(std::labs(cx)),
                    *group.alphabet().find(cx > 0 ? "a" : "a^"));
      expect.insert(expect.end(), static_cast<std::size_t>(std::labs(cy)),
                    *group.alphabet().find(cy > 0 ? "b" : "b^"));
      mismatches += normal_form(rs, x) == expect ? 0 : 1;
    }
    report(9, pairs.empty() && mismatches == 0,
           std::to_string(rs.rules().size()) + "-rule Z^2 system: " + std::to_string(pairs.size())
               + " unresolved critical pairs; " + std::to_string(mismatches)
               + " normal-form mismatches on 10000 words");
  });

  // 10. Byte-identical payloads across thread counts.
  criterion(10, [] {
    std::size_t differ = 0;
    for (auto const& run : cli_runs) {
      for (char const* threads : {"1", "4"}) {
        auto args = run.args;
        args.insert(args.end(), {"--json", "--threads", threads});
        std::ostringstream out, err;
        if (cli::run(args, out, err) != cli::kOk
            || json::parse(out.str()).at("payload").dump() != run.payload) {
          ++differ;
        }
      }
    }
    report(10, differ == 0 && !cli_runs.empty(),
           std::to_string(cli_runs.size()) + " CLI runs repeated with --threads 1 and 4, "
               + std::to_string(differ) + " differing payloads");
  });

  return failures == 0 ? 0 : 1;
}

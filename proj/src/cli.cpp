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

#include "ldelta/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <functional>
#include <new>
#include <numeric>
#include <optional>
#include <sstream>

#include "ldelta/ball.hpp"
#include "ldelta/convexity.hpp"
#include "ldelta/error.hpp"
#include "ldelta/group.hpp"
#include "ldelta/median.hpp"
#include "ldelta/parallel.hpp"
#include "ldelta/rewriting.hpp"
#include "ldelta/vankampen.hpp"

namespace ldelta::cli {

  namespace {
    using json = nlohmann::ordered_json;

    struct Common {
      std::string group;
      unsigned    threads          = default_threads();
      std::size_t max_vertices     = BallLimits{}.max_vertices;
      bool        json             = false;
      bool        check_confluence = false;
    };

    void add_common(CLI::App* sub, Common& c) {
      sub->add_option("--group", c.group, "built-in group name or definition file")
          ->required();
      sub->add_option("--threads", c.threads, "worker threads")
          ->check(CLI::PositiveNumber);
      sub->add_option("--max-vertices", c.max_vertices, "ball size cap")
          ->check(CLI::PositiveNumber);
      sub->add_flag("--json", c.json, "emit a JSON report");
      sub->add_flag("--check-confluence",
                    c.check_confluence,
                    "reject rewriting systems that are not locally confluent");
    }

    json common_config(Common const& c) {
      return {{"group", c.group},
              {"threads", c.threads},
              {"max_vertices", c.max_vertices},
              {"check_confluence", c.check_confluence}};
    }

    GroupSpec load_group(Common const& c) {
      auto group = GroupSpec::resolve(c.group);
      if (c.check_confluence) {
        if (auto const* rs = group.rewriting_system()) {
          auto pairs = check_local_confluence(*rs);
          if (!pairs.empty()) {
            throw InputError("rewriting system is not locally confluent ("
                             + std::to_string(pairs.size())
                             + " unresolved critical pairs)");
          }
        }
      }
      return group;
    }

    BallIndex make_ball(GroupSpec const& group, int radius, Common const& c) {
      return build_ball(group, radius, BallLimits{c.max_vertices});
    }

    // `word` or `word@g` for the midpoint of the edge leaving `word` along g.
    Point parse_point(BallIndex const& ball, std::string const& text) {
      auto const& alphabet = ball.group().alphabet();
      auto        at       = text.find('@');
      auto        w = parse_word(alphabet, std::string_view(text).substr(0, at));
      auto        v = ball.walk(BallIndex::identity(), w);
      if (!v) {
        throw InputError("point '" + text + "' lies outside the ball");
      }
      if (at == std::string::npos) {
        return Point::vertex(*v);
      }
      auto g = parse_word(alphabet, std::string_view(text).substr(at + 1));
      if (g.size() != 1) {
        throw InputError("midpoint '" + text + "' needs exactly one generator after @");
      }
      auto u = ball.neighbor(*v, g.front());
      if (u == kNoVertex) {
        throw InputError("point '" + text + "' lies outside the ball");
      }
      return Point::midpoint(*v, u);
    }

    std::string format_point(BallIndex const& ball, Point p) {
      auto const& group = ball.group();
      if (p.is_vertex()) {
        return group.format(ball.element(p.u));
      }
      auto g = *ball.edge_label(p.u, p.v);
      return group.format(ball.element(p.u)) + "@" + group.alphabet()[g].label;
    }

    json point_json(BallIndex const& ball, Point p) {
      return {{"point", format_point(ball, p)},
              {"u", p.u},
              {"v", p.v},
              {"norm", ball.norm(p).to_fraction()}};
    }

    std::string fraction(std::uint64_t num, std::uint64_t den) {
      auto g = std::gcd(num, den);
      if (g == 0) {
        return "0/1";
      }
      return std::to_string(num / g) + "/" + std::to_string(den / g);
    }

    double round4(double x) {
      return std::round(x * 1e4) / 1e4;
    }

    std::string fixed4(double x) {
      std::ostringstream os;
      os.setf(std::ios::fixed);
      os.precision(4);
      os << x;
      return os.str();
    }

    struct Report {
      std::string operation;
      json        config;
      json        payload;
      std::string text;  // used when JSON is not requested
    };

    using Clock = std::chrono::steady_clock;

    // --- ball ------------------------------------------------------------

    struct BallArgs {
      Common c;
      int    radius = 0;
      bool   dot    = false;
    };

    Report run_ball(BallArgs const& a) {
      auto group = load_group(a.c);
      auto ball  = make_ball(group, a.radius, a.c);
      Report r{"ball", common_config(a.c), {}, {}};
      r.config["radius"] = a.radius;
      r.config["dot"]    = a.dot;

      json vertices = json::array();
      std::ostringstream text;
      if (a.dot) {
        text << "graph ball {\n";
        for (VertexId v = 0; v < static_cast<VertexId>(ball.size()); ++v) {
          text << "  " << v << " [label=\"" << group.format(ball.element(v)) << "\"];\n";
        }
        for (auto const& e : ball.edges()) {
          text << "  " << e.u << " -- " << e.v << " [label=\""
               << group.alphabet()[e.label].label << "\"];\n";
        }
        text << "}\n";
      } else {
        text << "id,canonical,norm\n";
        for (VertexId v = 0; v < static_cast<VertexId>(ball.size()); ++v) {
          text << v << ",\"" << group.format(ball.element(v)) << "\"," << ball.norm(v)
               << "\n";
        }
      }
      for (VertexId v = 0; v < static_cast<VertexId>(ball.size()); ++v) {
        vertices.push_back({{"id", v},
                            {"canonical", group.format(ball.element(v))},
                            {"norm", ball.norm(v)}});
      }
      json spheres = json::array();
      for (int n = 0; n <= a.radius; ++n) {
        spheres.push_back(ball.layer_end(n) - ball.layer_begin(n));
      }
      r.payload = {{"group", group.name()},
                   {"family", family_name(group.family())},
                   {"radius", a.radius},
                   {"vertices", ball.size()},
                   {"edges", ball.edges().size()},
                   {"sphere_sizes", spheres},
                   {"table", vertices}};
      r.text = text.str();
      return r;
    }

    // --- delta -----------------------------------------------------------

    struct DeltaArgs {
      Common                       c;
      int                          radius = 0;
      std::string                  domain = "half";
      bool                         exhaustive = false;
      std::optional<std::uint64_t> samples;
      std::uint64_t                seed = 0;
      std::optional<int>           ball_radius;
      std::uint64_t                max_triples = 10'000'000;
      bool                         no_prune    = false;
    };

    Report run_delta(DeltaArgs const& a) {
      auto group = load_group(a.c);
      auto R     = a.ball_radius.value_or(default_ball_radius(group, a.radius));
      auto ball  = make_ball(group, R, a.c);

      DeltaOptions opt;
      opt.domain        = a.domain == "vertices" ? TripleDomain::vertices
                                                 : TripleDomain::half_points;
      opt.domain_radius = a.radius;
      opt.sampling      = a.samples ? Sampling{false, *a.samples, a.seed}
                                    : Sampling{true, 0, a.seed};
      opt.threads                = a.c.threads;
      opt.max_exhaustive_triples = a.max_triples;
      opt.prune                  = !a.no_prune;
      auto est                   = estimate_delta(ball, opt);

      Report r{"delta", common_config(a.c), {}, {}};
      r.config["radius"]      = a.radius;
      r.config["domain"]      = a.domain;
      r.config["exhaustive"]  = !a.samples.has_value();
      r.config["samples"]     = a.samples ? json(*a.samples) : json(nullptr);
      r.config["seed"]        = a.seed;
      r.config["ball_radius"] = R;
      r.config["max_triples"] = a.max_triples;

      json witness = json::array();
      for (auto p : est.witness) {
        witness.push_back(point_json(ball, p));
      }
      json slacks = json::array();
      for (auto s : est.witness_median.pair_slacks) {
        slacks.push_back(s.to_fraction());
      }
      auto label = "delta-hat at radius " + std::to_string(a.radius);
      r.payload  = {
          {"group", group.name()},
          {"label", label},
          {"value", est.value.to_fraction()},
          {"domain", domain_name(est.domain)},
          {"domain_radius", est.domain_radius},
          {"ball_radius", est.ball_radius},
          {"lower_bound", est.domain == TripleDomain::vertices},
          {"sampling",
           {{"mode", est.sampling.exhaustive ? "exhaustive" : "sampled"},
            {"samples", est.sampling.samples},
            {"seed", est.sampling.seed},
            {"forced", est.sampling_forced}}},
          {"domain_size", est.domain_size},
          {"triples", est.triples},
          {"witness", witness},
          {"witness_t", point_json(ball, est.witness_median.t)},
          {"pair_slacks", slacks},
          {"certified", est.certified},
      };

      std::ostringstream text;
      text << group.name() << ": " << label << " (" << domain_name(est.domain)
           << " domain, ball radius " << est.ball_radius << ") = "
           << est.value.to_fraction() << "\n";
      text << "  triples: " << est.triples << " of a " << est.domain_size
           << "-point domain, "
           << (est.sampling.exhaustive
                   ? std::string("exhaustive")
                   : "sampled with seed " + std::to_string(est.sampling.seed))
           << (est.sampling_forced ? " (sampling forced by the triple cap)" : "")
           << "\n";
      if (est.domain == TripleDomain::vertices) {
        text << "  vertex domain: a lower bound for the half-point value\n";
      }
      text << "  witness: " << format_point(ball, est.witness[0]) << ", "
           << format_point(ball, est.witness[1]) << ", "
           << format_point(ball, est.witness[2]) << "\n";
      text << "  median t = " << format_point(ball, est.witness_median.t)
           << ", pair slacks " << slacks[0].get<std::string>() << " "
           << slacks[1].get<std::string>() << " " << slacks[2].get<std::string>()
           << "\n";
      text << "  certified: " << (est.certified ? "yes" : "no") << "\n";
      r.text = text.str();
      return r;
    }

    // --- median ----------------------------------------------------------

    struct MedianArgs {
      Common      c;
      int         radius = 0;
      std::string x, y, z;
      bool        vertex_t = false;
      bool        no_prune = false;
    };

    Report run_median(MedianArgs const& a) {
      auto group = load_group(a.c);
      auto ball  = make_ball(group, a.radius, a.c);
      auto x     = parse_point(ball, a.x);
      auto y     = parse_point(ball, a.y);
      auto z     = parse_point(ball, a.z);
      MedianOptions mo;
      mo.prune     = !a.no_prune;
      mo.midpoints = !a.vertex_t;
      auto m       = median(ball, x, y, z, mo);

      Report r{"median", common_config(a.c), {}, {}};
      r.config["radius"]   = a.radius;
      r.config["x"]        = a.x;
      r.config["y"]        = a.y;
      r.config["z"]        = a.z;
      r.config["vertex_t"] = a.vertex_t;
      r.config["prune"]    = !a.no_prune;
      json slacks          = json::array();
      for (auto s : m.pair_slacks) {
        slacks.push_back(s.to_fraction());
      }
      r.payload = {{"group", group.name()},
                   {"x", point_json(ball, x)},
                   {"y", point_json(ball, y)},
                   {"z", point_json(ball, z)},
                   {"t", point_json(ball, m.t)},
                   {"slack", m.slack.to_fraction()},
                   {"pair_slacks", slacks},
                   {"distances",
                    {distance(ball, x, y).to_fraction(),
                     distance(ball, y, z).to_fraction(),
                     distance(ball, z, x).to_fraction()}}};
      std::ostringstream text;
      text << "t = " << format_point(ball, m.t) << ", slack " << m.slack.to_fraction()
           << " (pairs xy yz zx: " << slacks[0].get<std::string>() << " "
           << slacks[1].get<std::string>() << " " << slacks[2].get<std::string>()
           << ")\n";
      r.text = text.str();
      return r;
    }

    // --- ac --------------------------------------------------------------

    struct ACArgs {
      Common             c;
      std::optional<int> radius;
      int                nmax  = 0;
      std::string        delta = "auto";
    };

    Report run_ac(ACArgs const& a) {
      auto group = load_group(a.c);
      auto R     = a.radius.value_or(a.nmax + 1);
      auto delta = a.delta == "auto" ? auto_delta(group, a.c.threads) : Dist::parse(a.delta);
      if (a.nmax > R - 1) {
        throw InputError("--nmax must be at most radius - 1");
      }
      auto ball    = make_ball(group, R, a.c);
      auto reports = verify_theorem1(ball, a.nmax, delta, a.c.threads);

      Report r{"ac", common_config(a.c), {}, {}};
      r.config["radius"] = R;
      r.config["nmax"]   = a.nmax;
      r.config["delta"]  = a.delta;

      auto bound = theorem1_bound(delta);
      json rows  = json::array();
      std::ostringstream text;
      text << "n,pairs,C_n,bound,pass\n";
      bool all = true;
      for (auto const& rep : reports) {
        auto cn = rep.constant ? std::to_string(*rep.constant) : std::string("inf");
        json row{{"n", rep.n},
                 {"pairs", rep.pairs},
                 {"C_n", cn},
                 {"bound", bound.to_fraction()},
                 {"pass", rep.pass}};
        if (rep.worst_g) {
          row["worst_pair"] = {group.format(ball.element(*rep.worst_g)),
                               group.format(ball.element(*rep.worst_h))};
          row["worst_path"] = rep.worst_path
                                  ? json(format_word(group.alphabet(), *rep.worst_path))
                                  : json(nullptr);
        }
        rows.push_back(row);
        text << rep.n << "," << rep.pairs << "," << cn << "," << bound.to_fraction()
             << "," << (rep.pass ? "true" : "false") << "\n";
        all = all && rep.pass;
      }
      r.payload = {
          {"group", group.name()},
          {"delta", delta.to_fraction()},
          {"bound", bound.to_fraction()},
          {"all_pass", all},
          {"note",
           "delta-hat is a finite-ball lower bound for delta, so a failure does not "
           "contradict the almost-convexity bound"},
          {"rows", rows}};
      r.text = text.str();
      return r;
    }

    // --- fill ------------------------------------------------------------

    struct FillArgs {
      Common             c;
      std::string        word;
      std::string        threshold = "auto";
      std::string        policy    = "adaptive";
      std::string        emit      = "tree";
      std::optional<int> ball_radius;
    };

    struct Threshold {
      std::size_t         initial;
      std::optional<Dist> delta;
    };

    Threshold resolve_threshold(GroupSpec const& group, std::string const& spec,
                                unsigned threads) {
      if (spec == "auto") {
        auto d = auto_delta(group, threads);
        return {threshold_from_delta(d), d};
      }
      std::size_t pos = 0;
      long        t   = 0;
      try {
        t = std::stol(spec, &pos);
      } catch (std::exception const&) {
        pos = 0;
      }
      if (pos != spec.size() || t <= 0) {
        throw InputError("threshold must be a positive integer or 'auto'");
      }
      return {static_cast<std::size_t>(t), std::nullopt};
    }

    ThresholdPolicy make_policy(std::string const& kind, std::size_t t) {
      return kind == "fixed" ? ThresholdPolicy::fixed(t) : ThresholdPolicy::adaptive(t);
    }

    std::size_t depth_bound(std::size_t n) {
      if (n <= 1) {
        return 4;
      }
      return static_cast<std::size_t>(
                 std::ceil(std::log(static_cast<double>(n)) / std::log(1.5) - 1e-9))
             + 4;
    }

    Report run_fill(FillArgs const& a) {
      auto group = load_group(a.c);
      auto w     = parse_word(group.alphabet(), a.word);
      auto th    = resolve_threshold(group, a.threshold, a.c.threads);
      auto R     = a.ball_radius.value_or(suggested_fill_radius(w.size(), th.initial));
      // Short words are a single cell and never consult the ball.
      auto trivial = free_reduce(group.alphabet(), w).size() <= th.initial;
      auto ball    = make_ball(group, trivial ? 0 : R, a.c);
      auto tree    = fill(ball, w, make_policy(a.policy, th.initial));
      auto product = to_conjugate_product(tree);
      verify(group, product, tree.threshold);

      auto const& alphabet = group.alphabet();
      Report r{"fill", common_config(a.c), {}, {}};
      r.config["word"]        = a.word;
      r.config["threshold"]   = a.threshold;
      r.config["policy"]      = a.policy;
      r.config["emit"]        = a.emit;
      r.config["ball_radius"] = R;

      auto n = free_reduce(alphabet, w).size();
      std::size_t three_pow = 1;
      for (std::size_t i = 0; i < tree.depth && three_pow < tree.leaves; ++i) {
        three_pow *= 3;
      }
      r.payload = {{"group", group.name()},
                   {"word", format_word(alphabet, w)},
                   {"length", w.size()},
                   {"reduced_length", n},
                   {"cells", tree.leaves},
                   {"depth", tree.depth},
                   {"depth_bound", depth_bound(n)},
                   {"leaves_within_3_pow_depth", tree.leaves <= three_pow},
                   {"initial_threshold", tree.initial_threshold},
                   {"threshold", tree.threshold},
                   {"restarts", tree.restarts},
                   {"delta", th.delta ? json(th.delta->to_fraction()) : json(nullptr)},
                   {"theorem_threshold",
                    th.delta ? json(theorem1_bound(*th.delta).to_fraction()) : json(nullptr)},
                   {"verified", true}};

      std::ostringstream text;
      text << "cells " << tree.leaves << ", depth " << tree.depth << ", threshold "
           << tree.threshold << " (initial " << tree.initial_threshold << ", restarts "
           << tree.restarts << "), reduced length " << n << "\n";
      if (a.emit == "product") {
        json factors = json::array();
        for (auto const& f : product.factors) {
          auto g = format_word(alphabet, f.conjugator);
          auto rr = format_word(alphabet, f.relator);
          factors.push_back({{"conjugator", g}, {"relator", rr}});
          text << g << "\t" << rr << "\n";
        }
        r.payload["product"] = factors;
      } else if (a.emit == "dot") {
        std::ostringstream dot;
        dot << "digraph fill {\n";
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
          dot << "  " << i << " [label=\"" << tree.nodes[i].loop.length() << "\""
              << (tree.is_leaf(i) ? ", shape=box" : "") << "];\n";
          for (auto c : tree.nodes[i].children) {
            dot << "  " << i << " -> " << c << ";\n";
          }
        }
        dot << "}\n";
        r.payload["dot"] = dot.str();
        text << dot.str();
      } else {
        json nodes = json::array();
        for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
          auto const& node = tree.nodes[i];
          auto        word = format_word(alphabet, node.loop.word);
          json        j{{"id", i},
                        {"depth", node.depth},
                        {"length", node.loop.length()},
                        {"word", word},
                        {"children", node.children}};
          text << std::string(2 * node.depth, ' ') << "[" << node.loop.length() << "] ";
          if (node.split) {
            auto const& s = *node.split;
            j["split"]    = {{"x_offset", s.x_offset},
                             {"y_offset", s.y_offset},
                             {"t", group.format(ball.element(s.t))},
                             {"p", format_word(alphabet, s.p)},
                             {"q", format_word(alphabet, s.q)},
                             {"r", format_word(alphabet, s.r)}};
            text << "split at " << s.x_offset << "," << s.y_offset << "\n";
          } else {
            text << word << "\n";
          }
          nodes.push_back(j);
        }
        r.payload["tree"] = nodes;
      }
      r.text = text.str();
      return r;
    }

    // --- dehn-scan -------------------------------------------------------

    struct ScanArgs {
      Common             c;
      std::string        lengths;
      std::size_t        samples   = 10;
      std::uint64_t      seed      = 0;
      std::string        threshold = "auto";
      std::string        policy    = "adaptive";
      bool               csv       = false;
      std::optional<int> ball_radius;
    };

    // "a..b..step", "a..b" (step 1) or a comma list.
    std::vector<std::size_t> parse_lengths(std::string const& text) {
      auto number = [&](std::string const& s) {
        std::size_t pos = 0;
        long        v   = 0;
        try {
          v = std::stol(s, &pos);
        } catch (std::exception const&) {
          pos = 0;
        }
        if (s.empty() || pos != s.size() || v < 2) {
          throw InputError("bad length '" + s + "' in '" + text
                           + "'; lengths are integers >= 2");
        }
        return static_cast<std::size_t>(v);
      };
      std::vector<std::size_t> out;
      if (auto dots = text.find(".."); dots != std::string::npos) {
        auto rest  = text.substr(dots + 2);
        auto dots2 = rest.find("..");
        auto lo    = number(text.substr(0, dots));
        auto hi    = number(rest.substr(0, dots2));
        std::size_t step = 1;
        if (dots2 != std::string::npos) {
          auto s = rest.substr(dots2 + 2);
          std::size_t pos = 0;
          long        v   = 0;
          try {
            v = std::stol(s, &pos);
          } catch (std::exception const&) {
            pos = 0;
          }
          if (pos != s.size() || v < 1) {
            throw InputError("bad step in '" + text + "'");
          }
          step = static_cast<std::size_t>(v);
        }
        if (hi < lo) {
          throw InputError("empty length range '" + text + "'");
        }
        for (auto n = lo; n <= hi; n += step) {
          out.push_back(n);
        }
      } else {
        std::stringstream ss(text);
        std::string       item;
        while (std::getline(ss, item, ',')) {
          out.push_back(number(item));
        }
      }
      if (out.empty()) {
        throw InputError("no lengths given");
      }
      return out;
    }

    Report run_scan(ScanArgs const& a) {
      auto group = load_group(a.c);
      auto th    = resolve_threshold(group, a.threshold, a.c.threads);
      ScanOptions opt;
      opt.lengths = parse_lengths(a.lengths);
      opt.samples = a.samples;
      opt.policy  = make_policy(a.policy, th.initial);
      opt.seed    = a.seed;
      opt.threads = a.c.threads;
      auto longest = *std::max_element(opt.lengths.begin(), opt.lengths.end());
      auto R       = a.ball_radius.value_or(suggested_fill_radius(longest, th.initial));
      auto ball    = make_ball(group, R, a.c);
      auto scan    = dehn_scan(ball, opt);

      Report r{"dehn-scan", common_config(a.c), {}, {}};
      r.config["lengths"]     = a.lengths;
      r.config["samples"]     = a.samples;
      r.config["seed"]        = a.seed;
      r.config["threshold"]   = a.threshold;
      r.config["policy"]      = a.policy;
      r.config["ball_radius"] = R;

      json records = json::array();
      std::ostringstream text;
      if (a.csv) {
        text << "n,words,max_cells,mean_cells,max_depth,threshold,within_bound\n";
      } else {
        text << "n  words  max_cells  mean_cells  max_depth  threshold  cells<=n^c\n";
      }
      for (auto const& rec : scan.records) {
        auto mean = fraction(rec.total_cells, rec.words);
        records.push_back({{"n", rec.n},
                           {"words", rec.words},
                           {"max_cells", rec.max_cells},
                           {"mean_cells", mean},
                           {"max_depth", rec.max_depth},
                           {"threshold", rec.max_threshold},
                           {"within_bound", rec.within_bound}});
        auto sep = a.csv ? "," : "  ";
        text << rec.n << sep << rec.words << sep << rec.max_cells << sep
             << (a.csv ? mean : fixed4(rec.mean_cells)) << sep << rec.max_depth << sep
             << rec.max_threshold << sep << (rec.within_bound ? "true" : "false") << "\n";
      }
      r.payload = {{"group", group.name()},
                   {"initial_threshold", th.initial},
                   {"delta", th.delta ? json(th.delta->to_fraction()) : json(nullptr)},
                   {"records", records},
                   {"exponent", scan.exponent ? json(round4(*scan.exponent)) : json(nullptr)},
                   {"reference_exponent", round4(scan.reference)},
                   {"within_bound", scan.within_bound},
                   {"note",
                    "fitted exponents are observational; they bound nothing about the "
                    "true Dehn function"}};
      if (!a.csv) {
        text << "fitted exponent: "
             << (scan.exponent ? fixed4(*scan.exponent) : std::string("absent"))
             << " (reference " << fixed4(scan.reference) << ")\n";
      }
      r.text = text.str();
      return r;
    }

    // --- check-confluence ------------------------------------------------

    std::string_view kind_name(CriticalPair::Kind k) {
      switch (k) {
        case CriticalPair::Kind::overlap:
          return "overlap";
        case CriticalPair::Kind::inclusion:
          return "inclusion";
        case CriticalPair::Kind::inverse:
          return "inverse";
      }
      return "unknown";
    }

    Report run_confluence(Common const& c) {
      auto group = GroupSpec::resolve(c.group);
      auto const* rs = group.rewriting_system();
      if (rs == nullptr) {
        throw InputError("group '" + c.group + "' is not defined by a rewriting system");
      }
      auto pairs = check_local_confluence(*rs);
      auto const& alphabet = group.alphabet();
      Report r{"check-confluence", common_config(c), {}, {}};
      json unresolved = json::array();
      std::ostringstream text;
      text << rs->rules().size() << " rules, " << pairs.size()
           << " unresolved critical pairs\n";
      for (auto const& p : pairs) {
        auto inverse = p.kind == CriticalPair::Kind::inverse;
        unresolved.push_back({{"kind", kind_name(p.kind)},
                              {"rules",
                               inverse ? json::array()
                                       : json::array({p.first_rule, p.second_rule})},
                              {"word", format_word(alphabet, p.word)},
                              {"left", format_word(alphabet, p.left)},
                              {"right", format_word(alphabet, p.right)}});
        text << "  " << kind_name(p.kind);
        if (!inverse) {
          text << " rules " << p.first_rule << "," << p.second_rule;
        }
        text << ": " << format_word(alphabet, p.word) << " -> "
             << format_word(alphabet, p.left) << " | " << format_word(alphabet, p.right)
             << "\n";
      }
      r.payload = {{"group", group.name()},
                   {"rules", rs->rules().size()},
                   {"locally_confluent", pairs.empty()},
                   {"unresolved", unresolved}};
      r.text = text.str();
      return r;
    }

    void emit(Report const& r, bool as_json, double ms, std::ostream& out) {
      if (!as_json) {
        out << r.text;
        return;
      }
      json doc{{"operation", r.operation},
               {"config", r.config},
               {"payload", r.payload},
               {"wall_clock_ms", std::llround(ms)}};
      out << doc.dump(2) << "\n";
    }
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Median points, almost convexity and trisection fillings of Cayley graphs",
                 "ldelta"};
    app.require_subcommand(1);

    BallArgs ball_args;
    auto*    ball = app.add_subcommand("ball", "enumerate a ball of the Cayley graph");
    add_common(ball, ball_args.c);
    ball->add_option("--radius", ball_args.radius, "ball radius")
        ->required()
        ->check(CLI::NonNegativeNumber);
    ball->add_flag("--dot", ball_args.dot, "emit the adjacency as DOT");

    DeltaArgs delta_args;
    auto*     delta = app.add_subcommand("delta", "estimate the L_delta constant on a ball");
    add_common(delta, delta_args.c);
    delta->add_option("--radius", delta_args.radius, "domain radius")
        ->required()
        ->check(CLI::NonNegativeNumber);
    delta->add_option("--domain", delta_args.domain, "triple domain")
        ->check(CLI::IsMember({"vertices", "half"}));
    auto* exhaustive = delta->add_flag("--exhaustive", delta_args.exhaustive, "all triples");
    auto* samples    = delta->add_option("--samples", delta_args.samples, "sampled triples")
                        ->check(CLI::PositiveNumber);
    exhaustive->excludes(samples);
    delta->add_option("--seed", delta_args.seed, "sampling seed");
    delta->add_option("--ball-radius", delta_args.ball_radius, "radius of the search ball")
        ->check(CLI::NonNegativeNumber);
    delta->add_option("--max-triples", delta_args.max_triples, "exhaustive triple cap")
        ->check(CLI::PositiveNumber);
    delta->add_flag("--no-prune", delta_args.no_prune, "disable median pruning");

    MedianArgs median_args;
    auto*      med = app.add_subcommand("median", "optimal median point of a triple");
    add_common(med, median_args.c);
    med->add_option("--radius", median_args.radius, "ball radius")
        ->required()
        ->check(CLI::NonNegativeNumber);
    med->add_option("--x", median_args.x, "point: word or word@g")->required();
    med->add_option("--y", median_args.y, "point: word or word@g")->required();
    med->add_option("--z", median_args.z, "point: word or word@g")->required();
    med->add_flag("--vertex-t", median_args.vertex_t, "restrict t to vertices");
    med->add_flag("--no-prune", median_args.no_prune, "disable pruning");

    ACArgs ac_args;
    auto*  ac = app.add_subcommand("ac", "almost-convexity constants against 3 delta + 2");
    add_common(ac, ac_args.c);
    ac->add_option("--radius", ac_args.radius, "ball radius (default nmax + 1)")
        ->check(CLI::PositiveNumber);
    ac->add_option("--nmax", ac_args.nmax, "largest sphere radius")
        ->required()
        ->check(CLI::NonNegativeNumber);
    ac->add_option("--delta", ac_args.delta, "delta as a fraction, or auto");

    FillArgs fill_args;
    auto*    fl = app.add_subcommand("fill", "trisection filling of an identity word");
    add_common(fl, fill_args.c);
    fl->add_option("--word", fill_args.word, "comma-separated letters, ^ for inverse")
        ->required();
    fl->add_option("--threshold", fill_args.threshold, "cell perimeter bound, or auto");
    fl->add_option("--policy", fill_args.policy, "threshold policy")
        ->check(CLI::IsMember({"fixed", "adaptive"}));
    fl->add_option("--emit", fill_args.emit, "output form")
        ->check(CLI::IsMember({"tree", "product", "dot"}));
    fl->add_option("--ball-radius", fill_args.ball_radius, "radius of the working ball")
        ->check(CLI::NonNegativeNumber);

    ScanArgs scan_args;
    auto*    sc = app.add_subcommand("dehn-scan", "cell counts of fillings against length");
    add_common(sc, scan_args.c);
    sc->add_option("--lengths", scan_args.lengths, "a..b..step or a comma list")->required();
    sc->add_option("--samples", scan_args.samples, "random words per length");
    sc->add_option("--seed", scan_args.seed, "word seed");
    sc->add_option("--threshold", scan_args.threshold, "cell perimeter bound, or auto");
    sc->add_option("--policy", scan_args.policy, "threshold policy")
        ->check(CLI::IsMember({"fixed", "adaptive"}));
    sc->add_flag("--csv", scan_args.csv, "emit CSV");
    sc->add_option("--ball-radius", scan_args.ball_radius, "radius of the working ball")
        ->check(CLI::NonNegativeNumber);

    Common conf_args;
    auto*  conf = app.add_subcommand("check-confluence",
                                    "unresolved critical pairs of a rewriting system");
    add_common(conf, conf_args);

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
      app.parse(argv);
    } catch (CLI::CallForHelp const& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (CLI::CallForAllHelp const& e) {
      app.exit(e, out, err);
      return kOk;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n\n" << app.help();
      return kInput;
    }

    try {
      auto start = Clock::now();
      auto done  = [&](Report const& r, bool as_json) {
        std::chrono::duration<double, std::milli> ms = Clock::now() - start;
        emit(r, as_json, ms.count(), out);
        return kOk;
      };
      if (ball->parsed()) {
        return done(run_ball(ball_args), ball_args.c.json);
      }
      if (delta->parsed()) {
        return done(run_delta(delta_args), delta_args.c.json);
      }
      if (med->parsed()) {
        return done(run_median(median_args), median_args.c.json);
      }
      if (ac->parsed()) {
        return done(run_ac(ac_args), ac_args.c.json);
      }
      if (fl->parsed()) {
        return done(run_fill(fill_args), fill_args.c.json);
      }
      if (sc->parsed()) {
        return done(run_scan(scan_args), scan_args.c.json);
      }
      return done(run_confluence(conf_args), conf_args.json);
    } catch (InputError const& e) {
      err << "input error: " << e.what() << "\n";
      return kInput;
    } catch (ResourceError const& e) {
      err << "resource error: " << e.what() << "\n";
      return kResource;
    } catch (std::bad_alloc const&) {
      err << "resource error: out of memory\n";
      return kResource;
    } catch (ConsistencyError const& e) {
      err << "internal consistency error: " << e.what() << "\n";
      return kConsistency;
    } catch (std::exception const& e) {
      err << "internal error: " << e.what() << "\n";
      return kConsistency;
    }
  }

}  // namespace ldelta::cli

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "teapot/teapot.hpp"

using namespace teapot;
using json = nlohmann::ordered_json;
using cd = std::complex<double>;

namespace {

enum class Format { csv, binary };

std::string version_string() {
  return std::string("teapot ") + kVersion + " (dataset format " + std::to_string(dataset::kFormatVersion) + ")";
}

/// "re,im" or a bare real.
cd parse_complex(const std::string& s) {
  std::istringstream is(s);
  double re = 0, im = 0;
  char comma = 0;
  if (!(is >> re)) throw CLI::ValidationError("complex", "expected re,im but got '" + s + "'");
  if (is >> comma) {
    if (comma != ',' || !(is >> im)) throw CLI::ValidationError("complex", "expected re,im but got '" + s + "'");
  }
  std::string rest;
  if (is >> rest) throw CLI::ValidationError("complex", "trailing characters in '" + s + "'");
  return {re, im};
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

void write_points(const std::string& path, const std::vector<dataset::TeapotPoint>& pts, Format f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open " + path + " for writing");
  if (f == Format::csv)
    dataset::write_csv(os, pts);
  else
    dataset::write_tpot(os, pts);
  if (!os) throw DomainError("write to " + path + " failed");
}

std::vector<dataset::TeapotPoint> read_points(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path);
  char magic[4] = {0, 0, 0, 0};
  is.read(magic, 4);
  is.clear();
  is.seekg(0);
  if (std::string(magic, 4) == "TPOT") return dataset::read_tpot(is);
  return dataset::read_csv(is);
}

json enum_stats_json(const dataset::EnumStats& st) {
  json by_len = json::object();
  for (std::size_t n = 0; n < st.admissible_by_length.size(); ++n)
    if (st.admissible_by_length[n]) by_len[std::to_string(n)] = st.admissible_by_length[n];
  json out{{"admissible_total", st.total_admissible()}, {"admissible_by_length", by_len}};
  std::uint64_t dom = 0;
  for (auto c : st.dominant_by_length) dom += c;
  if (dom) out["dominant_total"] = dom;
  return out;
}

json cloud_stats_json(const dataset::PointCloud& c, const std::string& out) {
  json j{{"output", out},
         {"words", c.stats.words},
         {"degenerate", c.stats.degenerate},
         {"polynomials", c.stats.polynomials},
         {"roots", c.stats.roots},
         {"points", c.stats.points},
         {"failures", c.failures.size()},
         {"wall_seconds", c.stats.wall_seconds}};
  if (!c.failures.empty()) {
    json f = json::array();
    for (auto& e : c.failures) f.push_back({{"word", Word::from_id(e.word_id).to_string()}, {"error", e.message}});
    j["failed_words"] = f;
  }
  return j;
}

dataset::PointCloud cloud_command(dataset::SourceKind kind, std::size_t bound, const std::string& out, Format f,
                                  unsigned threads) {
  auto c = dataset::build_point_cloud({kind, bound}, threads);
  write_points(out, c.points, f);
  return c;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---- figures.cfg ----------------------------------------------------------

using Stanza = std::map<std::string, std::string>;

std::vector<std::pair<std::string, Stanza>> read_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw DomainError("cannot open " + path);
  std::vector<std::pair<std::string, Stanza>> out;
  std::string line;
  std::size_t lineno = 0;
  auto trim = [](std::string s) {
    auto a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  while (std::getline(is, line)) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw DomainError(path + ":" + std::to_string(lineno) + ": unterminated stanza header");
      out.emplace_back(trim(line.substr(1, line.size() - 2)), Stanza{});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos || out.empty())
      throw DomainError(path + ":" + std::to_string(lineno) + ": expected key = value inside a [stanza]");
    out.back().second[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string need(const Stanza& s, const std::string& name, const std::string& key) {
  auto it = s.find(key);
  if (it == s.end()) throw DomainError("stanza [" + name + "] is missing '" + key + "'");
  return it->second;
}

json run_figure(const std::string& name, const Stanza& s, unsigned threads) {
  std::string kind = need(s, name, "kind");
  std::string out = need(s, name, "out");
  auto fmt_it = s.find("format");
  Format f = (fmt_it != s.end() && fmt_it->second == "csv") ? Format::csv : Format::binary;
  if (fmt_it != s.end() && fmt_it->second != "csv" && fmt_it->second != "binary")
    throw DomainError("stanza [" + name + "]: format must be csv or binary");
  std::size_t bound = std::stoul(need(s, name, kind == "omega2pre" ? "max_total" : "max_len"));

  json j{{"figure", name}, {"kind", kind}};
  if (kind == "omega2" || kind == "teapot3d") {
    j["stats"] = cloud_stats_json(cloud_command(dataset::SourceKind::periodic, bound, out, f, threads), out);
  } else if (kind == "omega2pre") {
    j["stats"] = cloud_stats_json(cloud_command(dataset::SourceKind::preperiodic, bound, out, f, threads), out);
  } else if (kind == "gap_closeup") {
    cd center = parse_complex(need(s, name, "center"));
    double radius = std::stod(need(s, name, "radius"));
    if (!(radius > 0)) throw DomainError("stanza [" + name + "]: radius must be positive");
    auto c = dataset::build_point_cloud({dataset::SourceKind::periodic, bound}, threads);
    std::vector<dataset::TeapotPoint> keep;
    for (auto& p : c.points)
      if (std::abs(p.z() - center) <= radius) keep.push_back(p);
    write_points(out, keep, f);
    j["stats"] = cloud_stats_json(c, out);
    j["stats"]["points_in_window"] = keep.size();
  } else {
    throw DomainError("stanza [" + name + "]: unknown kind '" + kind + "'");
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Growth rates of postcritically finite tent maps and their Galois conjugates"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", version_string());

  unsigned threads = default_threads();
  app.add_option("--threads", threads, "worker threads (default: TEAPOT_THREADS, else logical cores)")
      ->check(CLI::PositiveNumber);

  std::string format_name = "csv";
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format_name, "point file format")->check(CLI::IsMember({"csv", "binary"}));
  };
  auto format = [&] { return format_name == "csv" ? Format::csv : Format::binary; };

  // enumerate
  auto* en = app.add_subcommand("enumerate", "enumerate admissible periodic words");
  std::size_t en_max = 0;
  std::string en_out;
  bool en_count_only = false;
  en->add_option("--max-len", en_max, "longest word")->required()->check(CLI::Range(1, 55));
  en->add_option("--out", en_out, "write one word per line to this file");
  en->add_flag("--count-only", en_count_only, "count without storing words");

  // teapot
  auto* tp = app.add_subcommand("teapot", "point cloud of growth rates and conjugates from periodic words");
  std::size_t tp_max = 0;
  std::string tp_out;
  tp->add_option("--max-len", tp_max, "longest word")->required()->check(CLI::Range(2, 55));
  tp->add_option("--out", tp_out, "output file")->required();
  add_format(tp);

  // preperiodic
  auto* pp = app.add_subcommand("preperiodic", "point cloud from strictly preperiodic words");
  std::size_t pp_max = 0;
  std::string pp_out;
  pp->add_option("--max-total", pp_max, "longest preperiod plus period")->required()->check(CLI::Range(2, 55));
  pp->add_option("--out", pp_out, "output file")->required();
  add_format(pp);

  // membership
  auto* mb = app.add_subcommand("membership", "exclusion test for the limit set criterion");
  std::string mb_z;
  std::size_t mb_depth = 0;
  mb->add_option("--z", mb_z, "point as re,im")->required();
  mb->add_option("--depth", mb_depth, "inverse word length")->required()->check(CLI::Range(0, 40));

  // gaps
  auto* gp = app.add_subcommand("gaps", "gap radius around a ring element and its check against a cloud");
  std::string gp_ring = "sqrt", gp_x, gp_cloud;
  int gp_D = 1;
  std::size_t gp_n = 0, gp_cloud_len = 0;
  double gp_radius = 0;
  gp->add_option("--ring", gp_ring, "sqrt for Z[sqrt(-D)], half for Z[(1+sqrt(-D))/2]")
      ->check(CLI::IsMember({"sqrt", "half"}));
  gp->add_option("--D", gp_D, "D in {1,2,3,5}");
  gp->add_option("--x", gp_x, "ring element as re,im")->required();
  gp->add_option("--n", gp_n, "postcritical length bound")->required()->check(CLI::Range(1, 55));
  auto* cloud_opt = gp->add_option("--cloud", gp_cloud, "periodic point file (CSV or TPOT); built on the fly if absent");
  gp->add_option("--cloud-max-len", gp_cloud_len, "length bound the cloud file was built with")->needs(cloud_opt);
  gp->add_option("--radius", gp_radius, "check this radius instead of the theorem's")->check(CLI::PositiveNumber);

  // double
  auto* db = app.add_subcommand("double", "period doubling of an admissible word");
  std::string db_word;
  db->add_option("--word", db_word, "admissible periodic word")->required();

  // roots
  auto* rt = app.add_subcommand("roots", "roots of a word's polynomial or of explicit coefficients");
  std::string rt_word, rt_poly;
  auto* rw = rt->add_option("--word", rt_word, "word, periodic or pre(per)");
  auto* rp = rt->add_option("--poly", rt_poly, "integer coefficients, highest degree first, comma separated");
  rw->excludes(rp);
  rt->require_option(1);

  // figures
  auto* fg = app.add_subcommand("figures", "regenerate figure data from a key = value config");
  std::string fg_cfg;
  fg->add_option("--config", fg_cfg, "config file with one [stanza] per figure")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*en) {
      dataset::EnumOptions opt;
      opt.threads = threads;
      if (en_count_only) {
        auto st = dataset::count_admissible(en_max, opt);
        json j = enum_stats_json(st);
        j["wall_seconds"] = st.wall_seconds;
        emit(j);
      } else {
        auto res = dataset::enumerate_admissible(en_max, opt);
        if (!en_out.empty()) {
          std::ofstream os(en_out);
          if (!os) throw DomainError("cannot open " + en_out + " for writing");
          for (auto id : res.ids) os << Word::from_id(id).to_string() << "\n";
        }
        json j = enum_stats_json(res.stats);
        if (!en_out.empty()) j["output"] = en_out;
        j["wall_seconds"] = res.stats.wall_seconds;
        emit(j);
      }
    } else if (*tp) {
      emit(cloud_stats_json(cloud_command(dataset::SourceKind::periodic, tp_max, tp_out, format(), threads), tp_out));
    } else if (*pp) {
      emit(cloud_stats_json(cloud_command(dataset::SourceKind::preperiodic, pp_max, pp_out, format(), threads), pp_out));
    } else if (*mb) {
      ifs::ExclusionOptions opt;
      opt.threads = threads;
      auto q = ifs::exclusion_test(parse_complex(mb_z), mb_depth, opt);
      emit({{"z", complex_json(q.z)},
            {"depth", q.depth},
            {"verdict", ifs::verdict_name(q.verdict)},
            {"exclusion_min", q.exclusion_min},
            {"ball_radius", q.ball_radius},
            {"nodes", q.nodes}});
    } else if (*gp) {
      auto form = gp_ring == "sqrt" ? ifs::RingForm::sqrt : ifs::RingForm::half;
      auto g = ifs::gap_radius(form, gp_D, parse_complex(gp_x), gp_n);
      std::vector<dataset::TeapotPoint> pts;
      std::size_t len = gp_n;
      if (!gp_cloud.empty()) {
        pts = read_points(gp_cloud);
        if (gp_cloud_len == 0) throw PreconditionError("--cloud needs --cloud-max-len");
        len = gp_cloud_len;
      } else {
        pts = dataset::build_point_cloud({dataset::SourceKind::periodic, gp_n}, threads).points;
      }
      auto v = ifs::verify_gap(g, pts, len, gp_radius);
      json off = json::array();
      for (auto& o : v.offenders)
        off.push_back({{"z", complex_json(o.point.z())},
                       {"distance", o.distance},
                       {"word", Word::from_id(o.point.word_id).to_string()}});
      emit({{"ring", gp_ring},
            {"D", gp_D},
            {"x", complex_json(g.x)},
            {"n", g.n},
            {"c", g.c},
            {"r", g.r},
            {"checked_radius", gp_radius > 0 ? gp_radius : g.r},
            {"points_considered", v.considered},
            {"ok", v.ok},
            {"offenders", off}});
    } else if (*db) {
      Word w = Word::parse(db_word);
      Word d = symbolic::period_double(w);
      emit({{"word", w.to_string()},
            {"doubled", d.to_string()},
            {"lambda", roots::leading_root(poly::parry_polynomial(w))},
            {"lambda_doubled", roots::leading_root(poly::parry_polynomial(d))}});
    } else if (*rt) {
      IntPolynomial p;
      json j;
      if (!rt_word.empty()) {
        Word w = Word::parse(rt_word);
        p = w.is_periodic() ? poly::parry_polynomial(w) : poly::preperiodic_polynomial(w);
        j["word"] = w.to_string();
      } else {
        std::vector<std::int64_t> desc;
        std::istringstream is(rt_poly);
        std::string tok;
        while (std::getline(is, tok, ',')) {
          try {
            desc.push_back(std::stoll(tok));
          } catch (const std::exception&) {
            throw DomainError("bad coefficient '" + tok + "'");
          }
        }
        p = IntPolynomial::from_descending(desc);
        if (p.degree() < 1) throw DomainError("polynomial must have degree at least 1");
      }
      auto fr = poly::remove_trivial_factors_detailed(p, true);
      j["polynomial"] = p.to_string('z');
      j["factor_z_minus_1"] = fr.mult_minus_one;
      j["factor_z_plus_1"] = fr.mult_plus_one;
      j["reduced"] = fr.quotient.to_string('z');
      try {
        j["leading"] = roots::leading_root(p);
      } catch (const DomainError&) {
        j["leading"] = nullptr;
      }
      json rs = json::array();
      if (fr.quotient.degree() >= 1) {
        auto set = roots::all_roots(fr.quotient);
        for (auto& r : set.roots) rs.push_back({{"re", r.value.real()}, {"im", r.value.imag()}, {"multiplicity", r.multiplicity}});
        j["residual"] = set.residual;
      }
      j["roots"] = rs;
      emit(j);
    } else if (*fg) {
      json all = json::array();
      for (auto& [name, stanza] : read_config(fg_cfg)) all.push_back(run_figure(name, stanza, threads));
      emit(all);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include "alpha_luroth/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>
#include <stdexcept>

#include "alpha_luroth/distribution.hpp"
#include "alpha_luroth/dynamics.hpp"
#include "alpha_luroth/exact.hpp"
#include "alpha_luroth/mset.hpp"
#include "alpha_luroth/partition_config.hpp"
#include "json_writer.hpp"

namespace alpha_luroth::cli {

namespace {

struct Options {
  std::string partition;
  double tol = 1e-12;
  std::uint64_t seed = 0;
  std::string format = "auto";
  std::string output;
  bool strict = false;

  std::string eps = "all-zero";
  std::string x;
  Index steps = 20;
  Index count = 10;
  Index tail_k = 0;
  Index horizon = 1000;
  std::vector<double> z;
  Index empirical = 0;
  std::optional<double> x0;
  Index depth = 3;
  Index probe = 10;
  Index k_max = 30;
};

enum class Format { json, csv };

Format resolve(const Options& o, Format fallback) {
  if (o.format == "json") return Format::json;
  if (o.format == "csv") return Format::csv;
  return fallback;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string sign_string(Sign s) { return std::string(1, sign_char(s)); }

std::string digit_string(Index d) { return d == kInfiniteDigit ? "inf" : std::to_string(d); }

void write_optional(JsonWriter& w, std::string_view key, const std::optional<Index>& v) {
  w.key(key);
  if (v) {
    w.value(static_cast<std::int64_t>(*v));
  } else {
    w.null();
  }
}

void write_verdict_fields(JsonWriter& w, const Verdict& v) {
  w.field("verdict", structure_name(v.structure));
  if (v.structure == Structure::finite_union) {
    w.field("count", v.count);
  }
  write_optional(w, "stable_level", v.stable_level);
  write_optional(w, "positive_from", v.positive_from);
  write_optional(w, "nonpositive_from", v.nonpositive_from);
  write_optional(w, "golden_ratio_from", v.golden_ratio_from);
  w.key("g_signs").begin_array();
  for (const auto& g : v.g_signs) {
    w.begin_object().field("n", static_cast<std::int64_t>(g.n)).field("G", g.value.value);
    w.field("radius", g.value.radius).field("sign", sign_string(g.sign));
    if (g.exact) w.field("exact", g.exact->to_string());
    w.end_object();
  }
  w.end_array();
  w.key("evidence").begin_array();
  for (const auto& c : v.evidence) {
    w.begin_object().field("name", c.name).field("holds", c.holds);
    w.field("from", static_cast<std::int64_t>(c.from)).field("detail", c.detail).end_object();
  }
  w.end_array();
}

int cmd_partition(const Options& o, const Partition& p, std::ostream& out) {
  const Index last = std::min(o.count, p.max_index());
  if (resolve(o, Format::json) == Format::csv) {
    out << "n,t,a,rho\n";
    for (Index n = 1; n <= last; ++n) {
      out << n << ',' << format_number(p.t(n)) << ',' << format_number(p.a(n)) << ',' << format_number(p.rho(n))
          << '\n';
    }
    return kExitOk;
  }
  const TailStats s = p.tail_stats(o.tail_k, std::max(o.horizon, o.tail_k + 1));
  JsonWriter w(out);
  w.begin_object().field("partition", p.name()).field("max_index", static_cast<std::int64_t>(p.max_index()));
  w.field("exact_values", p.has_exact_values());
  w.key("rows").begin_array();
  for (Index n = 1; n <= last; ++n) {
    w.begin_object().field("n", static_cast<std::int64_t>(n)).field("t", p.t(n)).field("a", p.a(n));
    w.field("rho", p.rho(n)).end_object();
  }
  w.end_array();
  w.key("tail_stats").begin_object().field("k", static_cast<std::int64_t>(s.k)).field("s_k", s.s_k);
  w.field("m_k", s.m_k).field("certified", s.certified).field("sup_certified", s.sup_certified);
  w.field("inf_certified", s.inf_certified).field("note", s.note).end_object();
  w.end_object();
  out << '\n';
  return kExitOk;
}

Rational parse_point(const std::string& x) {
  if (x.empty()) throw std::invalid_argument("--x is required");
  const Rational v = parse_rational(x);
  if (sgn(v) < 0 || cmp(v, 1) > 0) throw std::invalid_argument("--x must lie in [0, 1]");
  return v;
}

int cmd_expand(const Options& o, const Partition& p, std::ostream& out) {
  const SignSpec eps = SignSpec::parse(o.eps);
  const ExpansionTrace trace = expand(p, eps, parse_point(o.x), o.steps);
  const bool csv = resolve(o, Format::json) == Format::csv;
  if (csv) out << "n,d,s,orbit,q,approx,theta\n";
  for (const auto& st : trace.steps) {
    if (csv) {
      out << st.n << ',' << digit_string(st.digit) << ',' << st.sign << ',' << format_number(st.orbit) << ','
          << format_number(st.q) << ',' << format_number(st.approx) << ',' << format_number(st.theta) << '\n';
      continue;
    }
    JsonWriter w(out);
    w.begin_object().field("n", static_cast<std::int64_t>(st.n));
    if (st.digit == kInfiniteDigit) {
      w.field("d", "inf");
    } else {
      w.field("d", static_cast<std::int64_t>(st.digit));
    }
    w.field("s", st.sign).field("orbit", st.orbit).field("q", st.q).field("approx", st.approx);
    w.field("theta", st.theta).end_object();
    out << '\n';
  }
  return kExitOk;
}

int cmd_theta(const Options& o, const Partition& p, std::ostream& out) {
  const SignSpec eps = SignSpec::parse(o.eps);
  const ExpansionTrace trace = expand(p, eps, parse_point(o.x), o.steps);
  const double residual = theta_identity_check(trace, p);
  if (resolve(o, Format::json) == Format::csv) {
    out << "steps,max_residual,terminated\n" << o.steps << ',' << format_number(residual) << ','
        << (trace.terminated ? "true" : "false") << '\n';
    return kExitOk;
  }
  JsonWriter w(out);
  w.begin_object().field("steps", static_cast<std::int64_t>(o.steps)).field("max_residual", residual);
  w.field("terminated", trace.terminated).end_object();
  out << '\n';
  return kExitOk;
}

int cmd_cdf(const Options& o, const Partition& p, std::ostream& out) {
  const SignSpec eps = SignSpec::parse(o.eps);
  std::vector<double> grid = o.z;
  if (grid.empty()) {
    for (int i = 1; i <= 99; ++i) grid.push_back(i / 100.0);
  }
  std::vector<BoundedValue> analytic;
  for (double z : grid) analytic.push_back(F(p, eps, z, o.tol));
  std::vector<double> empirical;
  if (o.empirical > 0) empirical = empirical_cdf(p, eps, o.x0, grid, o.empirical, o.seed);

  if (resolve(o, Format::csv) == Format::csv) {
    out << "z,F_analytic,radius" << (empirical.empty() ? "" : ",F_empirical") << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
      out << format_number(grid[i]) << ',' << format_number(analytic[i].value) << ','
          << format_number(analytic[i].radius);
      if (!empirical.empty()) out << ',' << format_number(empirical[i]);
      out << '\n';
    }
    return kExitOk;
  }
  JsonWriter w(out);
  w.begin_object().field("partition", p.name()).field("eps", eps.to_string());
  if (!empirical.empty()) w.field("n_iter", static_cast<std::int64_t>(o.empirical)).field("seed", static_cast<std::int64_t>(o.seed));
  w.key("rows").begin_array();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    w.begin_object().field("z", grid[i]).field("F_analytic", analytic[i].value).field("radius", analytic[i].radius);
    if (!empirical.empty()) w.field("F_empirical", empirical[i]);
    w.end_object();
  }
  w.end_array().end_object();
  out << '\n';
  return kExitOk;
}

int cmd_gvalues(const Options& o, const Partition& p, std::ostream& out) {
  const bool use_exact = exact::available(p);
  auto g_at = [&](Index n) { return use_exact ? to_double(exact::g(p, n)) : g(p, n); };
  std::vector<GSign> rows;
  for (Index n = 0; n < o.count; ++n) rows.push_back(evaluate_G(p, n, o.tol));
  if (resolve(o, Format::csv) == Format::csv) {
    out << "n,g,G,radius,sign\n";
    for (const auto& r : rows) {
      out << r.n << ',' << (r.n >= 1 ? format_number(g_at(r.n)) : "") << ',' << format_number(r.value.value) << ','
          << format_number(r.value.radius) << ',' << sign_char(r.sign) << '\n';
    }
    return kExitOk;
  }
  JsonWriter w(out);
  w.begin_object().field("partition", p.name()).key("rows").begin_array();
  for (const auto& r : rows) {
    w.begin_object().field("n", static_cast<std::int64_t>(r.n)).key("g");
    if (r.n >= 1) {
      w.value(g_at(r.n));
    } else {
      w.null();
    }
    w.field("G", r.value.value).field("radius", r.value.radius).field("sign", sign_string(r.sign));
    if (r.exact) w.field("exact", r.exact->to_string());
    w.end_object();
  }
  w.end_array().end_object();
  out << '\n';
  return kExitOk;
}

int verdict_exit(const Options& o, const Verdict& v) {
  return o.strict && v.structure == Structure::undetermined ? kExitUndetermined : kExitOk;
}

int cmd_mset(const Options& o, const Partition& p, std::ostream& out) {
  const MSetApprox m = mset_approx(p, o.depth, o.tol);
  if (resolve(o, Format::json) == Format::csv) {
    out << "word,lo,hi,radius\n";
    for (const auto& iv : m.intervals) {
      out << word_string(iv.word) << ',' << format_number(iv.lo.value) << ',' << format_number(iv.hi.value) << ','
          << format_number(std::max(iv.lo.radius, iv.hi.radius)) << '\n';
    }
    return verdict_exit(o, m.verdict);
  }
  JsonWriter w(out);
  w.begin_object().field("partition", p.name()).field("depth", static_cast<std::int64_t>(m.depth));
  w.field("exact", m.exact).key("intervals").begin_array();
  for (const auto& iv : m.intervals) {
    w.begin_object().field("word", word_string(iv.word)).field("lo", iv.lo.value).field("hi", iv.hi.value);
    w.field("radius", std::max(iv.lo.radius, iv.hi.radius)).end_object();
  }
  w.end_array().key("merged").begin_array();
  for (const auto& mi : m.merged) w.begin_object().field("lo", mi.lo).field("hi", mi.hi).end_object();
  w.end_array().key("ambiguous").begin_array();
  for (const auto& a : m.ambiguous) {
    w.begin_object().field("left", word_string(a.left)).field("right", word_string(a.right));
    w.field("gap", a.gap).field("radius", a.radius).end_object();
  }
  w.end_array();
  write_verdict_fields(w, m.verdict);
  w.end_object();
  out << '\n';
  return verdict_exit(o, m.verdict);
}

int cmd_classify(const Options& o, const Partition& p, std::ostream& out) {
  const Verdict v = classify(p, o.probe, o.tol);
  if (resolve(o, Format::json) == Format::csv) {
    out << "name,holds,from,detail\n";
    out << "verdict," << structure_name(v.structure) << ",," << '\n';
    for (const auto& c : v.evidence) {
      out << c.name << ',' << (c.holds ? "true" : "false") << ',' << c.from << ',' << csv_field(c.detail) << '\n';
    }
    return verdict_exit(o, v);
  }
  JsonWriter w(out);
  w.begin_object().field("partition", p.name());
  write_verdict_fields(w, v);
  w.end_object();
  out << '\n';
  return verdict_exit(o, v);
}

int cmd_dim(const Options& o, const Partition& p, std::ostream& out, std::ostream& err) {
  const Verdict v = classify(p, 8, o.tol);
  if (v.structure != Structure::cantor && v.structure != Structure::homogeneous_cantor) {
    err << "dim: refused, the dimension formula needs a Cantor set but the verdict is "
        << structure_name(v.structure) << '\n';
    return kExitRefused;
  }
  const DimensionSeries d = dimensions(p, o.k_max, o.tol);
  if (resolve(o, Format::csv) == Format::csv) {
    out << "k,I,dimH_approx,dimP_approx\n";
    for (std::size_t i = 0; i < d.k.size(); ++i) {
      out << d.k[i] << ',' << format_number(d.I[i]) << ',' << format_number(d.hausdorff[i]) << ','
          << format_number(d.packing[i]) << '\n';
    }
    return kExitOk;
  }
  JsonWriter w(out);
  w.begin_object().field("partition", p.name()).field("verdict", structure_name(d.verdict.structure));
  w.key("rows").begin_array();
  for (std::size_t i = 0; i < d.k.size(); ++i) {
    w.begin_object().field("k", static_cast<std::int64_t>(d.k[i])).field("I", d.I[i]);
    w.field("sequence", d.sequence[i]).field("dimH_approx", d.hausdorff[i]).field("dimP_approx", d.packing[i]);
    w.end_object();
  }
  w.end_array().end_object();
  out << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Approximation coefficients, limit distributions and attainable averages of alpha-Luroth expansions",
               "alpha_luroth"};
  app.require_subcommand(1);
  Options o;
  app.add_option("-p,--partition", o.partition,
                 "luroth | dyadic | geometric:R | two-periodic:R,C | inline JSON | JSON file");
  app.add_option("--tol", o.tol, "Truncation tolerance")->capture_default_str();
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"auto", "json", "csv"}));
  app.add_option("-o,--output", o.output, "Write to this file instead of standard output");
  app.add_flag("--strict", o.strict, "Exit with status 3 when the structure verdict is undetermined");

  auto* partition = app.add_subcommand("partition", "Tabulate t_n, a_n, rho_n and tail statistics");
  partition->add_option("-n,--count", o.count, "Number of rows")->capture_default_str();
  partition->add_option("--k", o.tail_k, "Index for tail statistics")->capture_default_str();
  partition->add_option("--horizon", o.horizon, "Sampling horizon for tail statistics")->capture_default_str();

  auto* expand_cmd = app.add_subcommand("expand", "Expansion trace of a point (JSON lines)");
  auto* theta_cmd = app.add_subcommand("theta", "Residual of the theta identity along a trace");
  for (auto* sub : {expand_cmd, theta_cmd}) {
    sub->add_option("--eps", o.eps, "Sign sequence")->capture_default_str();
    sub->add_option("--x", o.x, "Point in [0, 1], e.g. 0.7 or 3/7")->required();
    sub->add_option("-n,--steps", o.steps, "Number of steps")->capture_default_str()->check(CLI::PositiveNumber);
  }

  auto* cdf_cmd = app.add_subcommand("cdf", "Limit distribution F_eps on a grid");
  cdf_cmd->add_option("--eps", o.eps, "Sign sequence")->capture_default_str();
  cdf_cmd->add_option("--z", o.z, "Grid points in (0, 1]; default i/100 for i = 1..99");
  cdf_cmd->add_option("--empirical", o.empirical, "Orbit length for the empirical CDF (0: off)");
  cdf_cmd->add_option("--x0", o.x0, "Orbit start; drawn from the seed when absent");

  auto* gvalues_cmd = app.add_subcommand("gvalues", "g(n) and G(n) with certified signs");
  gvalues_cmd->add_option("-n,--count", o.count, "Rows n = 0..count-1")->capture_default_str();

  auto* mset_cmd = app.add_subcommand("mset", "Depth-k approximation of the set of averages");
  mset_cmd->add_option("--depth", o.depth, "Tree depth (<= 20)")->capture_default_str();

  auto* classify_cmd = app.add_subcommand("classify", "Structure verdict with evidence");
  classify_cmd->add_option("--probe", o.probe, "Probe depth")->capture_default_str();

  auto* dim_cmd = app.add_subcommand("dim", "Dimension approximants");
  dim_cmd->add_option("--kmax", o.k_max, "Largest k")->capture_default_str();

  for (auto* sub : app.get_subcommands([](CLI::App*) { return true; })) sub->fallthrough();

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.emplace_back("alpha_luroth");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (!(o.tol > 0.0)) throw std::invalid_argument("--tol must be positive");
    if (o.partition.empty()) throw std::invalid_argument("--partition is required");
    const Partition p = parse_partition(o.partition);

    std::ofstream file;
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw std::invalid_argument("cannot open output file: " + o.output);
    }
    std::ostream& dest = o.output.empty() ? out : file;

    if (partition->parsed()) return cmd_partition(o, p, dest);
    if (expand_cmd->parsed()) return cmd_expand(o, p, dest);
    if (theta_cmd->parsed()) return cmd_theta(o, p, dest);
    if (cdf_cmd->parsed()) return cmd_cdf(o, p, dest);
    if (gvalues_cmd->parsed()) return cmd_gvalues(o, p, dest);
    if (mset_cmd->parsed()) return cmd_mset(o, p, dest);
    if (classify_cmd->parsed()) return cmd_classify(o, p, dest);
    if (dim_cmd->parsed()) return cmd_dim(o, p, dest, err);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::logic_error& e) {  // domain_error, out_of_range
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRefused;
  }
  return kExitConfig;
}

}  // namespace alpha_luroth::cli

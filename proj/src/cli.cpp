#include "zerocell/cli.hpp"

#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <json.hpp>
#include <ostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "zerocell/angles.hpp"
#include "zerocell/anumbers.hpp"
#include "zerocell/asymptotics.hpp"
#include "zerocell/facecounts.hpp"
#include "zerocell/simulation.hpp"

namespace zerocell::cli {

namespace {

using Json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

enum class Format { automatic, json, csv, plain };

struct Options {
  std::string format = "auto";
  double tol = 0.0;
  bool quiet = false;
  int precision = 15;
};

// A command result: a table, or a single value when `scalar` is set.
struct Result {
  std::string command;
  std::vector<std::pair<std::string, Cell>> params;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  bool scalar = false;
  Json extra = Json::object();
};

std::string format_double(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string text(const Cell& c, int precision) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d, precision);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

// Doubles go through the decimal form so that JSON carries the same digits
// as the other formats.
Json json_cell(const Cell& c, int precision) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (!std::isfinite(*d)) return nullptr;
    return std::strtod(format_double(*d, precision).c_str(), nullptr);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

void emit(const Result& r, Format format, int precision, std::ostream& out) {
  switch (format) {
    case Format::json: {
      Json j;
      j["command"] = r.command;
      auto& p = j["params"] = Json::object();
      for (const auto& [k, v] : r.params) p[k] = json_cell(v, precision);
      if (r.scalar) {
        j["value"] = json_cell(r.rows.at(0).at(0), precision);
      } else {
        auto rows = Json::array();
        for (const auto& row : r.rows) {
          Json o;
          for (std::size_t i = 0; i < r.columns.size(); ++i)
            o[r.columns[i]] = json_cell(row[i], precision);
          rows.push_back(o);
        }
        j["rows"] = rows;
      }
      for (const auto& [k, v] : r.extra.items()) j[k] = v;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv: {
      for (std::size_t i = 0; i < r.columns.size(); ++i)
        out << (i ? "," : "") << csv_escape(r.columns[i]);
      out << "\r\n";
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
          out << (i ? "," : "") << csv_escape(text(row[i], precision));
        out << "\r\n";
      }
      break;
    }
    case Format::automatic:
    case Format::plain: {
      if (r.scalar) {
        out << text(r.rows.at(0).at(0), precision) << '\n';
        break;
      }
      for (std::size_t i = 0; i < r.columns.size(); ++i) out << (i ? " " : "") << r.columns[i];
      out << '\n';
      for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << text(row[i], precision);
        out << '\n';
      }
      break;
    }
  }
}

Result scalar(std::string command, std::vector<std::pair<std::string, Cell>> params, double v) {
  Result r;
  r.command = std::move(command);
  r.params = std::move(params);
  r.columns = {"value"};
  r.rows = {{v}};
  r.scalar = true;
  return r;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DomainError("--d-list: '" + item + "' is not an integer");
    }
    if (used != item.size()) throw DomainError("--d-list: '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty()) throw DomainError("--d-list must name at least one dimension");
  return out;
}

anumbers::Contour parse_contour(const std::string& s) {
  if (s == "saddle") return anumbers::Contour::saddle;
  if (s == "half-pi") return anumbers::Contour::half_pi;
  throw DomainError("--contour must be saddle or half-pi");
}

template <class T>
T need(const CLI::Option* opt, const T& value, const std::string& name) {
  if (opt->count() == 0) throw DomainError("missing required option " + name);
  return value;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Face numbers and solid angles of Poisson zero cells, Poisson polyhedra and random cones",
               "zerocell"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opt;
  if (const char* env = std::getenv("ZEROCELL_TOL")) opt.tol = std::atof(env);
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"auto", "json", "csv", "plain"}));
  app.add_option("--tol", opt.tol, "Relative quadrature tolerance (default 1e-10)")
      ->check(CLI::PositiveNumber);
  app.add_flag("--quiet", opt.quiet, "Suppress diagnostics on stderr");
  app.add_option("--precision", opt.precision, "Significant digits")->check(CLI::Range(6, 17));

  // Shared parameter slots; each subcommand registers the ones it accepts.
  long long n = 0, k = 0, d = 0, ell = 0;
  double alpha = 1.0;
  std::string contour = "saddle", target, shape, kind = "full", quantity, d_list;
  long long samples = 0, trials = 1000, streams = 1, grid = 1000;
  std::uint64_t seed = 0, stream = 0;
  bool asymptotic = false, csv = false, second_moment = false;

  auto* anumber = app.add_subcommand("anumber", "A[n,k]");
  anumber->add_option("--n", n)->required();
  anumber->add_option("--k", k)->required();
  anumber->add_option("--contour", contour)->check(CLI::IsMember({"saddle", "half-pi"}));

  auto* tnumber = app.add_subcommand("tnumber", "T_{d,k}(alpha)");
  tnumber->add_option("--d", d)->required();
  tnumber->add_option("--k", k)->required();
  tnumber->add_option("--alpha", alpha)->required();
  tnumber->add_option("--contour", contour)->check(CLI::IsMember({"saddle", "half-pi"}));

  auto* bnumber = app.add_subcommand("bnumber", "B{n,k}");
  bnumber->add_option("--n", n)->required();
  bnumber->add_option("--k", k)->required();

  auto* faces = app.add_subcommand("faces", "Expected and reference face numbers");
  faces->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"zero-cell", "poisson-poly", "typical", "reference"}));
  auto* f_d = faces->add_option("--d", d);
  auto* f_k = faces->add_option("--k", k);
  auto* f_ell = faces->add_option("--ell", ell);
  faces->add_option("--alpha", alpha);
  auto* f_shape = faces->add_option("--shape", shape);

  auto* secmoment = app.add_subcommand("secmoment", "E f_0^2 of the typical cell");
  secmoment->add_option("--d", d)->required();

  auto* angle = app.add_subcommand("angle", "Expected solid angle of a random cone");
  angle->add_option("target", target)->required()->check(CLI::IsMember({"wendel", "halfsphere"}));
  angle->add_option("--d", d)->required();
  angle->add_option("--ell", ell)->required();
  angle->add_flag("--asymptotic", asymptotic);

  auto* asympt = app.add_subcommand("asympt", "Exact versus asymptotic tables");
  asympt->add_option("target", target)->required()->check(CLI::IsMember({"ratio-table"}));
  asympt->add_option("--quantity", quantity)
      ->required()
      ->check(CLI::IsMember({"a", "zerocell", "poly", "coface", "wendel", "angle", "secmoment"}));
  asympt->add_option("--k", k);
  asympt->add_option("--ell", ell);
  asympt->add_option("--alpha", alpha);
  asympt->add_option("--d-list", d_list)->required();

  auto* profile = app.add_subcommand("profile", "Exponential profile grid and maximizer");
  profile->add_option("--grid", grid)->check(CLI::Range(1, 10000000));
  profile->add_flag("--csv", csv);
  profile->add_flag("--second-moment", second_moment);

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo cross-checks");
  simulate->add_option("target", target)
      ->required()
      ->check(CLI::IsMember({"cone", "zero-cell", "poisson-poly"}));
  simulate->add_option("--d", d)->required();
  simulate->add_option("--ell", ell);
  simulate->add_option("--alpha", alpha);
  simulate->add_option("--kind", kind)->check(CLI::IsMember({"full", "half"}));
  simulate->add_option("--n", samples)->required()->check(CLI::PositiveNumber);
  simulate->add_option("--trials", trials)->check(CLI::PositiveNumber);
  simulate->add_option("--seed", seed)->required();
  simulate->add_option("--stream", stream);
  simulate->add_option("--streams", streams)->check(CLI::Range(1, 4096));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    const auto rest = app.remaining();
    if (app.get_subcommands().empty() && !rest.empty())
      err << "error: unknown subcommand '" << rest.front() << "'\n\n" << app.help();
    else
      err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  numerics::QuadratureSettings settings;
  if (opt.tol > 0) settings.rel_tol = opt.tol;
  Format format = Format::automatic;
  if (opt.format == "json") format = Format::json;
  if (opt.format == "csv" || csv) format = Format::csv;
  if (opt.format == "plain") format = Format::plain;

  try {
    settings.validate();
    Result r;
    if (anumber->parsed()) {
      r = scalar("anumber", {{"n", n}, {"k", k}},
                 anumbers::a_number({n, k}, settings, parse_contour(contour)));
    } else if (tnumber->parsed()) {
      r = scalar("tnumber", {{"d", d}, {"k", k}, {"alpha", alpha}},
                 anumbers::t_number({d, k, alpha}, settings, parse_contour(contour)));
    } else if (bnumber->parsed()) {
      r = scalar("bnumber", {{"n", n}, {"k", k}}, anumbers::b_number(n, k, settings));
    } else if (faces->parsed()) {
      r.command = "faces " + target;
      if (target == "reference") {
        const auto s = facecounts::parse_shape(need(f_shape, shape, "--shape"));
        const int dd = static_cast<int>(need(f_d, d, "--d"));
        r.params = {{"shape", std::string(facecounts::shape_name(s))}, {"d", d}};
        if (f_k->count()) {
          r.params.push_back({"k", k});
          r.columns = {"value"};
          r.scalar = true;
          r.rows = {{static_cast<long long>(
              facecounts::reference_fvector(s, dd, static_cast<int>(k)))}};
        } else {
          r.columns = {"k", "f"};
          for (int i = 0; i < dd; ++i)
            r.rows.push_back({static_cast<long long>(i),
                              static_cast<long long>(facecounts::reference_fvector(s, dd, i))});
        }
      } else if (target == "typical") {
        const int dd = static_cast<int>(need(f_d, d, "--d"));
        r.params = {{"d", d}};
        if (f_k->count()) {
          r.params.push_back({"k", k});
          r.columns = {"value"};
          r.scalar = true;
          r.rows = {{static_cast<long long>(
              facecounts::typical_cell_expected_faces_exact(dd, static_cast<int>(k)))}};
        } else {
          r.columns = {"k", "expected"};
          for (int i = 0; i <= dd; ++i)
            r.rows.push_back({static_cast<long long>(i),
                              static_cast<long long>(facecounts::typical_cell_expected_faces_exact(dd, i))});
        }
      } else if (target == "zero-cell") {
        const int dd = static_cast<int>(need(f_d, d, "--d"));
        r.params = {{"d", d}};
        if (f_ell->count() || f_k->count()) {
          // --k selects the face dimension as for the other targets.
          const long long face = f_ell->count() ? ell : k;
          r = scalar(r.command, {{"d", d}, {"ell", face}},
                     facecounts::zero_cell_expected_faces(dd, static_cast<int>(face), settings));
        } else {
          const auto fv = facecounts::zero_cell_fvector(dd, settings);
          r.columns = {"ell", "expected"};
          for (int i = 0; i <= dd; ++i) r.rows.push_back({static_cast<long long>(i), fv.counts[i]});
        }
      } else {
        const int dd = static_cast<int>(need(f_d, d, "--d"));
        if (f_k->count()) {
          r = scalar(r.command, {{"d", d}, {"k", k}, {"alpha", alpha}},
                     facecounts::poisson_polyhedron_expected_faces(dd, static_cast<int>(k), alpha,
                                                                   settings));
        } else {
          r.params = {{"d", d}, {"alpha", alpha}};
          const auto fv = facecounts::poisson_polyhedron_fvector(dd, alpha, settings);
          r.columns = {"ell", "expected"};
          for (int i = 0; i <= dd; ++i) r.rows.push_back({static_cast<long long>(i), fv.counts[i]});
        }
      }
    } else if (secmoment->parsed()) {
      if (d < 1) throw DomainError("secmoment: d must be >= 1");
      const double log_m = facecounts::log_typical_cell_vertex_second_moment(static_cast<int>(d));
      r = scalar("secmoment", {{"d", d}}, std::exp(log_m));
      r.extra["log_value"] = json_cell(log_m, opt.precision);
      r.extra["log_value_per_d"] = json_cell(log_m / static_cast<double>(d), opt.precision);
    } else if (angle->parsed()) {
      const int dd = static_cast<int>(d), ll = static_cast<int>(ell);
      double v = 0.0;
      if (target == "wendel")
        v = asymptotic ? angles::wendel_angle_asymptotic(dd, ll) : angles::wendel_angle(dd, ll);
      else
        v = asymptotic ? angles::halfsphere_angle_asymptotic(dd, ll)
                       : angles::halfsphere_angle_exact(dd, ll, settings);
      r = scalar("angle " + target, {{"d", d}, {"ell", ell}, {"asymptotic", asymptotic ? 1LL : 0LL}},
                 v);
    } else if (asympt->parsed()) {
      const auto q = asymptotics::parse_quantity(quantity);
      asymptotics::QuantityParams qp;
      qp.k = static_cast<int>(k ? k : 1);
      qp.ell = static_cast<int>(ell);
      qp.alpha = alpha;
      const auto rows = asymptotics::convergence_table(q, qp, parse_int_list(d_list), settings);
      r.command = "asympt ratio-table";
      r.params = {{"quantity", quantity}, {"k", static_cast<long long>(qp.k)}, {"ell", ell},
                  {"alpha", alpha}};
      r.columns = {"d", "exact", "asymptotic", "ratio"};
      for (const auto& row : rows)
        r.rows.push_back({static_cast<long long>(row.d), row.exact, row.asymptotic, row.ratio});
    } else if (profile->parsed()) {
      const int points = static_cast<int>(grid);
      r.command = "profile";
      r.params = {{"grid", grid}, {"second_moment", second_moment ? 1LL : 0LL}};
      if (second_moment) {
        r.columns = {"lambda", "value"};
        for (int i = 1; i <= points; ++i) {
          const double lam = static_cast<double>(i) / (points + 1);
          r.rows.push_back({lam, asymptotics::second_moment_profile(lam)});
        }
        const auto m = asymptotics::second_moment_profile_max();
        r.rows.push_back({m.argmax, m.value});
        r.extra["maximizer"] = {{"lambda", json_cell(m.argmax, opt.precision)},
                                {"value", json_cell(m.value, opt.precision)}};
      } else {
        r.columns = {"lambda", "psi", "value"};
        for (const auto& p : asymptotics::profile_grid(points)) r.rows.push_back({p.lambda, p.psi, p.value});
        const auto m = asymptotics::profile_maximizer();
        const double psi_star = asymptotics::psi(m.argmax);
        r.rows.push_back({m.argmax, psi_star, m.value});
        r.extra["maximizer"] = {{"lambda", json_cell(m.argmax, opt.precision)},
                                {"psi", json_cell(psi_star, opt.precision)},
                                {"value", json_cell(m.value, opt.precision)}};
      }
    } else if (simulate->parsed()) {
      montecarlo::ReplicationPlan plan;
      plan.seed = {seed, stream};
      plan.streams = static_cast<int>(streams);
      montecarlo::SimulationReport report;
      if (target == "cone") {
        angles::ConeSpec spec{static_cast<int>(d), static_cast<int>(ell),
                              angles::parse_cone_kind(kind)};
        report = montecarlo::estimate_expected_angle(spec, samples, trials, plan);
      } else if (target == "zero-cell") {
        report = montecarlo::estimate_zero_cell_fvector(static_cast<int>(d), samples, plan);
      } else {
        report = montecarlo::estimate_poisson_polyhedron_fvector(static_cast<int>(d), alpha,
                                                                 samples, plan);
      }
      if (!opt.quiet) {
        for (const auto& [key, value] : report.diagnostics)
          if ((key == "perturbations" || key == "euler_failures") && value > 0)
            err << "note: " << key << " = " << value << '\n';
      }
      if (format == Format::automatic || format == Format::json) {
        out << report.to_json(opt.precision) << '\n';
        return kExitOk;
      }
      r.command = "simulate " + target;
      r.columns = {"label", "estimate", "stderr", "exact", "z"};
      for (std::size_t i = 0; i < report.labels.size(); ++i)
        r.rows.push_back({report.labels[i], report.estimates[i], report.std_error[i],
                          report.exact[i], report.z[i]});
    }
    emit(r, format, opt.precision, out);
    return kExitOk;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace zerocell::cli

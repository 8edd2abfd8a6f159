#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "graphzeta/builders.hpp"
#include "graphzeta/cycles.hpp"
#include "graphzeta/errors.hpp"
#include "graphzeta/functional.hpp"
#include "graphzeta/spectral.hpp"
#include "graphzeta/zeta.hpp"

namespace gz::cli {

using nlohmann::json;

namespace {

constexpr const char* kSchema = "graphzeta/1";
constexpr double kGolden = 0.6180339887498949;

json to_json(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

Complex parse_complex(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
  if (text.empty()) throw ParseError("empty complex number");
  auto number = [&](const std::string& part, double if_bare) {
    if (part.empty() || part == "+") return if_bare;
    if (part == "-") return -if_bare;
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (end != part.c_str() + part.size()) throw ParseError("cannot parse complex number '" + raw + "'");
    return v;
  };
  if (text.back() != 'i' && text.back() != 'j') return {number(text, 0.0), 0.0};
  text.pop_back();
  // split before the last sign that is not an exponent sign
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, number(text, 1.0)};
  return {number(text.substr(0, split), 0.0), number(text.substr(split), 1.0)};
}

namespace {

struct Fixture {
  std::string name;
  std::function<TraceContext(int)> context;  // argument: propagation needed
  std::optional<Graph> graph;
  bool clair = false;
};

int parse_size(const std::string& name, const std::string& text) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || *end != '\0' || v < 1)
    throw ParseError("fixture '" + name + "' needs a positive integer parameter");
  return static_cast<int>(v);
}

Fixture finite_fixture(const std::string& name, Graph g) {
  Fixture f;
  f.name = name;
  f.graph = g;
  f.context = [g](int) { return TraceContext::finite(g); };
  return f;
}

Fixture periodic_fixture(const std::string& name, PeriodicSpec spec, int window, bool clair) {
  Fixture f;
  f.name = name;
  f.clair = clair;
  f.context = [spec, window](int propagation) {
    return TraceContext::periodic(spec, std::max(window, propagation + 1));
  };
  return f;
}

Fixture resolve_fixture(const std::string& fixture, const std::string& graph_file,
                        const std::string& periodic_file, int window) {
  if (!graph_file.empty()) return finite_fixture(graph_file, load_edge_list(graph_file));
  if (!periodic_file.empty()) {
    std::ifstream in(periodic_file);
    if (!in) throw ParseError("cannot open periodic graph file '" + periodic_file + "'");
    std::stringstream text;
    text << in.rdbuf();
    return periodic_fixture(periodic_file, parse_periodic_spec(text.str()), window, false);
  }
  std::string name = fixture, param;
  if (auto colon = fixture.find(':'); colon != std::string::npos) {
    name = fixture.substr(0, colon);
    param = fixture.substr(colon + 1);
  }
  std::string lower;
  for (char ch : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "c4") return finite_fixture(fixture, finite_family(Family::Cycle, 4));
  if (lower == "c5") return finite_fixture(fixture, finite_family(Family::Cycle, 5));
  if (lower == "k4") return finite_fixture(fixture, finite_family(Family::Complete, 4));
  if (lower == "petersen") return finite_fixture(fixture, finite_family(Family::Petersen));
  if (lower == "cycle") return finite_fixture(fixture, finite_family(Family::Cycle, parse_size(fixture, param)));
  if (lower == "complete")
    return finite_fixture(fixture, finite_family(Family::Complete, parse_size(fixture, param)));
  if (lower == "path") return finite_fixture(fixture, finite_family(Family::Path, parse_size(fixture, param)));
  if (lower == "clair" || lower == "zline") return periodic_fixture(fixture, PeriodicSpec::z_lattice(), window, true);
  if (lower == "ladder") return periodic_fixture(fixture, PeriodicSpec::ladder(), window, false);
  if (lower == "z2") return periodic_fixture(fixture, PeriodicSpec::square_lattice(), window, false);
  if (lower == "gasket") {
    const int level = param.empty() ? 5 : parse_size(fixture, param);
    const auto scheme = std::make_shared<ExhaustionScheme>(ExhaustionScheme::sierpinski_gasket(level));
    Fixture f;
    f.name = fixture;
    f.context = [scheme, level](int) { return scheme->context(level); };
    return f;
  }
  throw ParseError("unknown fixture '" + fixture + "'");
}

struct Options {
  std::string fixture = "K4";
  std::string graph_file;
  std::string periodic_file;
  std::string u_text = "0";
  std::string z_text = "0.1";
  std::string w_text = "0.5";
  int zgrid = 20;
  int order = 30;
  int level = 0;
  int window = 0;
  int grid = 256;
  int samples = 400;
  int q = 2;
  double d = 0.0;
  int sigma = 1;
  int tau = 1;
  double eps = 0.05;
  std::string kind = "omega_w";
  std::string output;
  std::string format = "json";
  bool oracle = false;
};

json provenance(const TraceContext* ctx, const Options& o, const std::string& quadrature,
                const std::string& branch) {
  json p;
  p["context"] = ctx ? ctx->describe() : "none";
  p["truncation_M"] = o.order;
  p["window_radius"] = ctx ? ctx->window_radius() : 0;
  p["quadrature"] = quadrature;
  p["branch_path"] = branch;
  return p;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void emit(std::ostream& out, const Options& o, const json& doc, const Table* table) {
  if (o.format == "csv") {
    if (!table) throw BadParameter("this command has no CSV form");
    out << std::setprecision(17);
    for (std::size_t c = 0; c < table->columns.size(); ++c) out << (c ? "," : "") << table->columns[c];
    out << '\n';
    for (const auto& row : table->rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
      out << '\n';
    }
    return;
  }
  if (o.format != "json") throw BadParameter("format must be json or csv");
  out << doc.dump(2) << '\n';
}

json base_doc(const std::string& command) { return json{{"schema", kSchema}, {"command", command}}; }

void cmd_fixtures(std::ostream& out, const Options& o) {
  json list = json::array();
  Table table{{"vertices", "edges", "max_degree"}, {}};
  auto add = [&](const std::string& name, const Graph& g) {
    list.push_back({{"name", name}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()},
                    {"max_degree", g.max_degree()}, {"regular", g.is_regular()}});
    table.rows.push_back({double(g.vertex_count()), double(g.edge_count()), double(g.max_degree())});
  };
  add("C4", finite_family(Family::Cycle, 4));
  add("C5", finite_family(Family::Cycle, 5));
  add("K4", finite_family(Family::Complete, 4));
  add("petersen", finite_family(Family::Petersen));
  for (auto [name, spec] : {std::pair{"clair", PeriodicSpec::z_lattice()},
                            std::pair{"ladder", PeriodicSpec::ladder()},
                            std::pair{"z2", PeriodicSpec::square_lattice()}})
    list.push_back({{"name", name}, {"periodic", json::parse(to_json(spec))},
                    {"max_degree", spec.max_degree()}});
  const auto scheme = ExhaustionScheme::sierpinski_gasket(o.level > 0 ? o.level : 6);
  for (int n = 1; n <= scheme.max_level(); ++n)
    add("gasket:" + std::to_string(n), scheme.level(n));
  json doc = base_doc("fixtures");
  doc["fixtures"] = list;
  doc["families"] = {"cycle:N", "complete:N", "path:N", "gasket:L (L <= 9)"};
  emit(out, o, doc, &table);
}

void cmd_series(std::ostream& out, const Options& o) {
  const Fixture f = resolve_fixture(o.fixture, o.graph_file, o.periodic_file, o.window);
  const Complex u = parse_complex(o.u_text);
  const TraceContext ctx = f.context(o.order);
  const TNSequence tn = tn_sequence(ctx, u, o.order);
  const SeriesTruncation s = log_zeta_series(ctx, u, o.order);
  if (o.oracle && !f.graph) throw BadParameter("--oracle needs a finite graph");
  const EnumerationOptions budget = enumeration_options_from_env();
  json rows = json::array();
  Table table{{"m", "N_re", "N_im", "t_re", "t_im", "c_re", "c_im"}, {}};
  if (o.oracle) table.columns.insert(table.columns.end(), {"oracle_N_re", "oracle_N_im"});
  for (int m = 1; m <= o.order; ++m) {
    json row{{"m", m}, {"N", to_json(tn.n[m])}, {"t", to_json(tn.t[m])}, {"c", to_json(s.coefficients[m])}};
    if (tn.level_delta) row["N_level_delta"] = to_json((*tn.level_delta)[m]);
    table.rows.push_back({double(m), tn.n[m].real(), tn.n[m].imag(), tn.t[m].real(), tn.t[m].imag(),
                          s.coefficients[m].real(), s.coefficients[m].imag()});
    if (o.oracle) {
      const BruteCounts b = brute_counts(*f.graph, m, u, budget);
      row["oracle_N"] = to_json(b.n);
      row["oracle_t"] = to_json(b.t);
      table.rows.back().push_back(b.n.real());
      table.rows.back().push_back(b.n.imag());
    }
    rows.push_back(row);
  }
  json doc = base_doc("series");
  doc["u"] = to_json(u);
  doc["radius"] = s.radius;
  doc["alpha"] = s.alpha;
  doc["closed_form_gap"] = tn.closed_form_gap;
  doc["coefficients"] = rows;
  doc["provenance"] = provenance(&ctx, o, "none (exact recursion)", "none");
  emit(out, o, doc, &table);
}

void cmd_eval(std::ostream& out, const Options& o) {
  const Fixture f = resolve_fixture(o.fixture, o.graph_file, o.periodic_file, o.window);
  const Complex u = parse_complex(o.u_text);
  const Complex z = parse_complex(o.z_text);
  json doc = base_doc("eval");
  doc["z"] = to_json(z);
  doc["u"] = to_json(u);
  Table table{{"re", "im", "error_bound"}, {}};
  if (f.clair) {
    const ClairValue v = clair_zeta(z, u);
    doc["value"] = to_json(v.zeta);
    doc["inverse_zeta"] = to_json(v.inverse_zeta);
    doc["xi"] = to_json(v.xi);
    doc["error_bound"] = 0.0;
    doc["route"] = "closed form on the Z-lattice";
    doc["provenance"] = provenance(nullptr, o, "none", "principal square roots in g = (1+(1-u^2)z^2)/z");
    table.rows.push_back({v.zeta.real(), v.zeta.imag(), 0.0});
    emit(out, o, doc, &table);
    return;
  }
  const TraceContext ctx = f.context(o.order);
  const SeriesTruncation s = log_zeta_series(ctx, u, o.order);
  const ZetaValue v = zeta_eval(s, z);
  doc["value"] = to_json(v.value);
  doc["error_bound"] = v.error_bound;
  doc["route"] = "N_m series";
  doc["radius"] = s.radius;
  doc["provenance"] = provenance(&ctx, o, "none", "exp of the log series");
  table.rows.push_back({v.value.real(), v.value.imag(), v.error_bound});
  emit(out, o, doc, &table);
}

std::vector<Complex> disc_samples(double radius, int count) {
  std::vector<Complex> zs;
  for (int k = 0; k < count; ++k) {
    const double r = radius * (0.2 + 0.8 * (k + 0.5) / count);
    const double theta = 2.0 * std::numbers::pi * std::fmod(k * kGolden, 1.0);
    zs.push_back(std::polar(r, theta));
  }
  return zs;
}

void cmd_verify_det(std::ostream& out, const Options& o) {
  const Fixture f = resolve_fixture(o.fixture, o.graph_file, o.periodic_file, o.window);
  const Complex u = parse_complex(o.u_text);
  const TraceContext ctx = f.context(o.order);
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  json rows = json::array();
  Table table{{"z_re", "z_im", "residual", "branch_gap"}, {}};
  double worst = 0.0;
  for (Complex z : disc_samples(0.5 / b.alpha * 0.98, o.zgrid)) {
    const DetFormulaCheck c = verify_det_formula(ctx, u, z, o.order);
    worst = std::max(worst, c.residual);
    rows.push_back({{"z", to_json(z)}, {"residual", c.residual}, {"branch_gap", c.branch_gap}});
    table.rows.push_back({z.real(), z.imag(), c.residual, c.branch_gap});
  }
  json doc = base_doc("verify-det");
  doc["u"] = to_json(u);
  doc["max_residual"] = worst;
  doc["samples"] = rows;
  doc["provenance"] = provenance(&ctx, o, "composite Gauss-Legendre order 16, adaptive panels",
                                 "radial path s*z, s in [0,1], from the identity");
  emit(out, o, doc, &table);
}

void cmd_verify_funceq(std::ostream& out, const Options& o) {
  const Fixture f = resolve_fixture(o.fixture, o.graph_file, o.periodic_file, o.window);
  const Complex u = parse_complex(o.u_text);
  const TraceContext ctx = f.context(o.order).normalized();
  if (!ctx.is_regular()) throw DomainError("functional equations are checked on strictly regular graphs only");
  const int q = ctx.degree_bound() - 1;
  const UBound b = alpha_bound(ctx.degree_bound(), u);
  const RegionParams params = RegionParams::regular(q, u, 1e-6);
  json rows = json::array();
  Table table{{"z_re", "z_im", "psi_re", "psi_im", "difference"}, {}};
  double worst = 0.0;
  int k = 0;
  for (int taken = 0; taken < o.zgrid; ++k) {
    // alternate points inside the series disc with points further out
    const double theta = 2.0 * std::numbers::pi * std::fmod(k * kGolden, 1.0);
    const double r = (k % 2 == 0) ? (0.45 / b.alpha) * (0.3 + 0.7 * std::fmod(k * 0.7548776662, 1.0))
                                  : 0.2 + 1.3 * std::fmod(k * 0.5698402910, 1.0);
    const Complex z = std::polar(r, theta);
    if (k > 100 * o.zgrid) break;
    if (omega_membership(z, u, params)) continue;
    const GPsi gp = g_and_psi(z, u, q);
    const Complex a = xi_bartholdi(ctx, z, u, q).value;
    const Complex c = xi_bartholdi(ctx, gp.psi, u, q).value;
    const double diff = std::abs(a - c);
    worst = std::max(worst, diff);
    rows.push_back({{"z", to_json(z)}, {"psi_z", to_json(gp.psi)}, {"xi", to_json(a)}, {"difference", diff}});
    table.rows.push_back({z.real(), z.imag(), gp.psi.real(), gp.psi.imag(), diff});
    ++taken;
  }
  json doc = base_doc("verify-funceq");
  doc["u"] = to_json(u);
  doc["q"] = q;
  doc["max_difference"] = worst;
  doc["samples"] = rows;
  doc["provenance"] = provenance(&ctx, o, "exact spectral sum",
                                 "series inside |z| < 1/(2 alpha), (g-(q+1))/det(gI-A) outside");
  emit(out, o, doc, &table);
}

void cmd_region(std::ostream& out, const Options& o) {
  json doc = base_doc("region");
  doc["kind"] = o.kind;
  RegionKind kind;
  Complex w = 0.0;
  double d = o.d;
  if (o.kind == "omega_q") {
    kind = RegionKind::OmegaQ;
    if (d <= 0) d = o.q + 1.0;
    doc["q"] = o.q;
  } else if (o.kind == "omega_w") {
    kind = RegionKind::OmegaW;
    w = parse_complex(o.w_text);
    if (d <= 0) d = 2.0;
    doc["w"] = to_json(w);
    doc["disconnects"] = omega_w_disconnects(w, d);
    doc["oracle_disconnects"] = omega_disconnection_oracle(w, d, o.grid);
  } else if (o.kind == "omega_tilde" || o.kind == "omega_tilde_q") {
    kind = RegionKind::OmegaTildeQ;
    if (d <= 0) d = o.q + 1.0;
    doc["q"] = o.q;
    doc["sigma"] = o.sigma;
    doc["tau"] = o.tau;
    doc["eps"] = o.eps;
  } else {
    throw BadParameter("region kind must be omega_q, omega_w or omega_tilde");
  }
  doc["d"] = d;
  const auto points = region_points(kind, w, d, o.q, o.sigma, o.tau, o.eps, o.samples);
  json list = json::array();
  Table table{{"re", "im"}, {}};
  for (Complex z : points) {
    list.push_back({z.real(), z.imag()});
    table.rows.push_back({z.real(), z.imag()});
  }
  doc["points"] = list;
  doc["provenance"] = provenance(nullptr, o, "uniform parameter samples: " + std::to_string(o.samples),
                                 "roots of w z^2 - t z + 1");
  emit(out, o, doc, &table);
}

void cmd_spectrum(std::ostream& out, const Options& o) {
  const Fixture f = resolve_fixture(o.fixture, o.graph_file, o.periodic_file, o.window);
  const TraceContext ctx = f.context(1);
  const SpectralCDF cdf = spectral_cdf(ctx, o.grid);
  json doc = base_doc("spectrum");
  doc["d"] = cdf.d;
  doc["step"] = cdf.step;
  doc["grid"] = cdf.grid;
  doc["values"] = cdf.values;
  if (cdf.level_delta) doc["level_delta"] = *cdf.level_delta;
  if (auto hole = hole_extension_applicable(cdf, 1e-12)) doc["flat_interval"] = {hole->first, hole->second};
  doc["provenance"] = provenance(&ctx, o,
                                 cdf.step ? "exact eigenvalues"
                                          : "trapezoid torus, " + std::to_string(cdf.torus_nodes) + " nodes",
                                 "none");
  Table table{{"lambda", "F"}, {}};
  for (std::size_t k = 0; k < cdf.grid.size(); ++k) table.rows.push_back({cdf.grid[k], cdf.values[k]});
  emit(out, o, doc, &table);
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return 2;
    case ErrorKind::BudgetExceeded: return 3;
    default: return 1;
  }
}

void emit_error(std::ostream& out, const std::string& kind, const std::string& message) {
  json doc{{"schema", kSchema}, {"error", {{"kind", kind}, {"message", message}}}};
  out << doc.dump(2) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out) {
  CLI::App app{"Ihara and Bartholdi zeta functions of finite, periodic and self-similar graphs"};
  app.require_subcommand(1);
  Options o;

  auto graph_options = [&](CLI::App* sub) {
    sub->add_option("--fixture", o.fixture,
                    "C4, C5, K4, petersen, cycle:N, complete:N, path:N, clair, ladder, z2, gasket:L");
    sub->add_option("--graph", o.graph_file, "edge-list file");
    sub->add_option("--periodic", o.periodic_file, "periodic graph JSON file");
    sub->add_option("--window", o.window, "periodic window radius (default M+1)");
  };
  auto common = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "write the result to this file");
    sub->add_option("--format", o.format, "json or csv");
  };

  CLI::App* series = app.add_subcommand("series", "coefficients N_m, t_m and N_m/m");
  graph_options(series);
  common(series);
  series->add_option("--u", o.u_text, "complex u, e.g. 0.5 or 0.3+0.1i");
  series->add_option("--M", o.order, "truncation order");
  series->add_flag("--oracle", o.oracle, "also count closed paths by enumeration (ZETA_BUDGET caps the work)");

  CLI::App* eval = app.add_subcommand("eval", "Z(z, u) with an error bound");
  graph_options(eval);
  common(eval);
  eval->add_option("--u", o.u_text, "complex u, e.g. 0.5 or 0.3+0.1i");
  eval->add_option("--z", o.z_text, "complex z");
  eval->add_option("--M", o.order, "truncation order");

  CLI::App* vdet = app.add_subcommand("verify-det", "determinant formula residuals");
  graph_options(vdet);
  common(vdet);
  vdet->add_option("--u", o.u_text, "complex u, e.g. 0.5 or 0.3+0.1i");
  vdet->add_option("--M", o.order, "truncation order");
  vdet->add_option("--zgrid", o.zgrid, "points per side of the z grid");

  CLI::App* vfe = app.add_subcommand("verify-funceq", "|xi(z) - xi(psi(z))| table");
  graph_options(vfe);
  common(vfe);
  vfe->add_option("--u", o.u_text, "complex u, e.g. 0.5 or 0.3+0.1i");
  vfe->add_option("--zgrid", o.zgrid, "points per side of the z grid");

  CLI::App* region = app.add_subcommand("region", "point clouds of singular sets");
  common(region);
  region->add_option("--kind", o.kind, "omega_q, omega_w or omega_tilde");
  region->add_option("--w", o.w_text, "complex w for omega_w");
  region->add_option("--d", o.d, "degree d");
  region->add_option("--q", o.q, "q = d - 1 for omega_q");
  region->add_option("--sigma", o.sigma, "contour side, +1 or -1 (omega_tilde)");
  region->add_option("--tau", o.tau, "contour corner 2*tau*sqrt(q), tau = +1 or -1");
  region->add_option("--eps", o.eps, "radius of the indentation around the corner");
  region->add_option("--samples", o.samples, "samples per curve");
  region->add_option("--grid", o.grid, "flood-fill grid for the disconnection oracle");

  CLI::App* spectrum = app.add_subcommand("spectrum", "spectral distribution on a grid");
  graph_options(spectrum);
  common(spectrum);
  spectrum->add_option("--grid", o.grid, "number of grid points (at least 16)");

  CLI::App* fixtures = app.add_subcommand("fixtures", "list built-in fixtures");
  common(fixtures);
  fixtures->add_option("--level", o.level, "largest gasket level listed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(out, "Usage", e.what());
    return 1;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  try {
    if (!o.output.empty()) {
      file.open(o.output);
      if (!file) throw ParseError("cannot open output file '" + o.output + "'");
      sink = &file;
    }
    if (*series) cmd_series(*sink, o);
    else if (*eval) cmd_eval(*sink, o);
    else if (*vdet) cmd_verify_det(*sink, o);
    else if (*vfe) cmd_verify_funceq(*sink, o);
    else if (*region) cmd_region(*sink, o);
    else if (*spectrum) cmd_spectrum(*sink, o);
    else if (*fixtures) cmd_fixtures(*sink, o);
    return 0;
  } catch (const ZetaError& e) {
    emit_error(out, error_name(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    emit_error(out, "Internal", e.what());
    return 1;
  }
}

}  // namespace gz::cli

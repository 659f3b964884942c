// gapfield CLI: series constants, blowup curves, gap-field grids, figure
// datasets and the validation suite for the two-sphere narrow-gap problem.
//
// Exit codes: 0 success, 2 configuration error, 3 validation failure,
// 4 numeric non-convergence.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gapfield/blowup.hpp"
#include "gapfield/constants.hpp"
#include "gapfield/errors.hpp"
#include "gapfield/fieldasym.hpp"
#include "gapfield/format.hpp"
#include "gapfield/geometry.hpp"
#include "gapfield/singular.hpp"
#include "gapfield/validate.hpp"

namespace {

using gapfield::format_double;
using gapfield::Vec3;
using json = nlohmann::json;

struct RunConfig {
  double r1 = 1.0;
  double r2 = 1.0;
  double eps = 1e-4;
  std::string harmonic = "x1";
  double tol = 1e-9;
  std::int64_t max_terms = 1'000'000;
  std::string format = "json";
  std::string out;
  unsigned seed = 1234;
  bool quick = false;
  double perturb_q = 0.0;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot open output file: " + path);
  os << payload;
}

std::string csv_row(const std::vector<double>& vals) {
  std::string row;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) row += ',';
    row += format_double(vals[i]);
  }
  return row;
}

gapfield::geometry::SpherePair make_pair(const RunConfig& cfg) {
  try {
    return {cfg.r1, cfg.r2, cfg.eps};
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

gapfield::blowup::HarmonicBackground parse_harmonic(const RunConfig& cfg) {
  gapfield::blowup::HarmonicBackground h = [&] {
    try {
      return gapfield::blowup::HarmonicBackground::parse(cfg.harmonic);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }();
  const auto rep = gapfield::blowup::laplacian_report(h);
  if (!rep.harmonic) {
    std::ostringstream os;
    os << "harmonic check failed for \"" << cfg.harmonic << "\": Laplacian keeps "
       << format_double(rep.offending.coeff) << "*x1^" << rep.offending.px << "*x2^"
       << rep.offending.py << "*x3^" << rep.offending.pz;
    throw ConfigError(os.str());
  }
  return h;
}

// closed-form column for the two backgrounds treated in the examples
std::optional<double> closed_psi_for(const gapfield::blowup::HarmonicBackground& h, double r) {
  const auto& ms = h.monomials();
  if (ms.size() == 1 && ms[0].px == 1 && ms[0].py == 0 && ms[0].pz == 0) {
    return gapfield::blowup::psi_linear_closed(r, ms[0].coeff);
  }
  if (ms.size() == 2) {
    const auto& a = ms[0];
    const auto& b = ms[1];
    const bool cubic = a.coeff == 1.0 && a.px == 3 && a.py == 0 && a.pz == 0 &&
                       b.coeff == -3.0 && b.px == 1 && b.py == 2 && b.pz == 0;
    if (cubic) return gapfield::blowup::psi_cubic_closed(r);
  }
  return std::nullopt;
}

int cmd_constants(const RunConfig& cfg, bool dump_images) {
  const auto pair = make_pair(cfg);
  parse_harmonic(cfg);  // config invariant: the harmonic string must be valid
  const auto sys1 = gapfield::geometry::build_images_auto(pair, 1, 1e-12, cfg.max_terms / 2);
  const auto sys2 = gapfield::geometry::build_images_auto(pair, 2, 1e-12, cfg.max_terms / 2);
  const auto [q1c, q2c] = gapfield::constants::q_closed(pair);
  const auto qs = gapfield::constants::q_series(sys1, sys2, cfg.tol);
  const auto ms = gapfield::constants::m_series(pair, sys1, sys2, qs.Q1, qs.Q2, cfg.tol);
  const double masym = gapfield::constants::m_asymptotic(pair);

  std::string payload;
  if (cfg.format == "json") {
    json out{{"r1", cfg.r1},
             {"r2", cfg.r2},
             {"eps", cfg.eps},
             {"tol", cfg.tol},
             {"Q1", {{"closed", q1c}, {"series", qs.Q1}, {"tail_bound", qs.tail_bound}}},
             {"Q2", {{"closed", q2c}, {"series", qs.Q2}, {"tail_bound", qs.tail_bound}}},
             {"M",
              {{"series", ms.M},
               {"asymptotic", masym},
               {"decomposition_mismatch", ms.decomposition_mismatch}}},
             {"terms_used", qs.terms_used + ms.terms_used}};
    if (dump_images) {
      auto dump = [](const gapfield::geometry::ImageChargeSystem& sys) {
        return json{{"family", sys.family},
                    {"points", sys.points},
                    {"charges", sys.charges},
                    {"truncation_K", sys.truncation_K},
                    {"tail_bound", sys.tail_bound}};
      };
      out["images"] = json{{"family1", dump(sys1)}, {"family2", dump(sys2)}};
    }
    payload = out.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    if (dump_images) {
      throw ConfigError("--dump-images requires --format json");
    }
    payload =
        "r1,r2,eps,tol,Q1_closed,Q1_series,Q2_closed,Q2_series,M_series,M_asymptotic,"
        "q_tail_bound,m_mismatch,terms_used\n";
    payload += csv_row({cfg.r1, cfg.r2, cfg.eps, cfg.tol, q1c, qs.Q1, q2c, qs.Q2, ms.M, masym,
                        qs.tail_bound, ms.decomposition_mismatch,
                        static_cast<double>(qs.terms_used + ms.terms_used)}) +
               "\n";
  } else {
    throw ConfigError("unknown format: " + cfg.format);
  }
  write_output(cfg.out, payload);
  return 0;
}

int cmd_blowup_curve(const RunConfig& cfg, double r_min, double r_max, int samples) {
  if (!(r_min > 0.0 && r_max > r_min && r_max <= 10.0 && samples >= 2)) {
    throw ConfigError("blowup-curve: need 0 < r-min < r-max <= 10 and samples >= 2");
  }
  const auto h = parse_harmonic(cfg);
  std::string payload = "# harmonic = " + h.to_string() + "\n";
  payload += "r,psi_series,psi_closed\n";
  for (int i = 0; i < samples; ++i) {
    const double r = r_min + (r_max - r_min) * i / (samples - 1);
    const gapfield::geometry::SpherePair pair(1.0, r, std::min(1e-6, r / 20.0));
    const double psi = gapfield::blowup::psi_factor(pair, h, 1e-12).psi;
    payload += format_double(r) + "," + format_double(psi);
    if (const auto closed = closed_psi_for(h, r)) {
      payload += "," + format_double(*closed);
    } else {
      payload += ",";
    }
    payload += "\n";
  }
  write_output(cfg.out, payload);
  return 0;
}

int cmd_field(const RunConfig& cfg, double x1, double span, int n, const std::string& emit) {
  const auto pair = make_pair(cfg);
  const auto h = parse_harmonic(cfg);
  if (span <= 0.0) {
    const double logd = std::fabs(std::log(pair.eps / pair.r_max()));
    span = pair.r_max() / (logd * logd);
  }
  if (n < 1) throw ConfigError("field: need --n >= 1");

  std::string payload;
  if (emit == "main") {
    gapfield::fieldasym::GridSpec grid{x1, -span, span, n, -span, span, n};
    const auto rows = gapfield::fieldasym::field_grid(pair, h, grid, cfg.tol);
    payload = "x1,x2,x3,rho,main_x1,main_x2,main_x3,sing_x1,sing_x2,sing_x3,region_ok\n";
    for (const auto& row : rows) {
      payload += csv_row({row.x.x, row.x.y, row.x.z, row.rho, row.main.x, row.main.y, row.main.z,
                          row.sing.x, row.sing.y, row.sing.z});
      payload += row.region_ok ? ",1\n" : ",0\n";
    }
  } else if (emit == "h") {
    const auto sys1 = gapfield::geometry::build_images_auto(pair, 1, 1e-12, cfg.max_terms / 2);
    const auto sys2 = gapfield::geometry::build_images_auto(pair, 2, 1e-12, cfg.max_terms / 2);
    const auto konst = gapfield::constants::compute(pair, sys1, sys2, cfg.tol);
    payload = "x1,x2,x3,h,gx1,gx2,gx3,rho\n";
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double x2 = n == 1 ? -span : -span + 2.0 * span * i / (n - 1);
        const double x3 = n == 1 ? -span : -span + 2.0 * span * j / (n - 1);
        const auto s = gapfield::singular::sample(pair, sys1, sys2, konst, {x1, x2, x3});
        payload += csv_row({s.x.x, s.x.y, s.x.z, s.value, s.gradient.x, s.gradient.y,
                            s.gradient.z, s.rho}) +
                   "\n";
      }
    }
  } else {
    throw ConfigError("field: --emit must be 'main' or 'h'");
  }
  write_output(cfg.out, payload);
  return 0;
}

int cmd_figures(const RunConfig& cfg, const std::string& prefix, double e0) {
  const auto linear = gapfield::blowup::HarmonicBackground::parse(
      e0 == 1.0 ? std::string("x1") : format_double(e0) + "*x1");
  const auto cubic = gapfield::blowup::HarmonicBackground::parse("x1^3-3*x1*x2^2");
  for (int fig = 1; fig <= 2; ++fig) {
    const auto& h = fig == 1 ? linear : cubic;
    std::string payload = "# H = " + h.to_string() +
                          (fig == 1 ? ", E0 = " + format_double(e0) : std::string(", E0 = n/a")) +
                          "\n";
    payload += "r,psi\n";
    for (int i = 1; i <= 100; ++i) {
      const double r = 5.0 * i / 100.0;
      const gapfield::geometry::SpherePair pair(1.0, r, std::min(1e-6, r / 20.0));
      payload += format_double(r) + "," +
                 format_double(gapfield::blowup::psi_factor(pair, h, 1e-12).psi) + "\n";
    }
    write_output(prefix + "figure" + std::to_string(fig) + ".csv", payload);
  }
  return 0;
}

int cmd_validate(const RunConfig& cfg) {
  gapfield::validate::Options opt;
  opt.tol = cfg.tol;
  opt.seed = cfg.seed;
  opt.quick = cfg.quick;
  opt.perturb_q = cfg.perturb_q;
  const auto results = gapfield::validate::run_all(opt);

  bool all_pass = true;
  std::string payload;
  if (cfg.format == "json") {
    json arr = json::array();
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      arr.push_back({{"name", r.name},
                     {"pass", r.pass},
                     {"measured", r.measured},
                     {"required", r.required},
                     {"note", r.note}});
    }
    payload = arr.dump(2) + "\n";
  } else {
    for (const auto& r : results) {
      all_pass = all_pass && r.pass;
      payload += std::string(r.pass ? "PASS" : "FAIL") + " " + r.name +
                 " measured=" + format_double(r.measured) +
                 " required=" + format_double(r.required);
      if (!r.note.empty()) payload += " (" + r.note + ")";
      payload += "\n";
    }
    payload += all_pass ? "all checks passed\n" : "validation FAILED\n";
  }
  write_output(cfg.out, payload);
  return all_pass ? 0 : 3;
}

void apply_config_file(const std::string& path, const CLI::App& app, RunConfig& cfg) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config file: " + path);
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config file parse error: " + std::string(e.what()));
  }
  auto given = [&app](const std::string& flag) {
    const auto* opt = app.get_option_no_throw("--" + flag);
    return opt != nullptr && opt->count() > 0;
  };
  auto load = [&](const char* key, auto& slot) {
    if (j.contains(key) && !given(key)) {
      try {
        slot = j.at(key).get<std::decay_t<decltype(slot)>>();
      } catch (const json::exception&) {
        throw ConfigError(std::string("config file: bad value for '") + key + "'");
      }
    }
  };
  load("r1", cfg.r1);
  load("r2", cfg.r2);
  load("eps", cfg.eps);
  load("harmonic", cfg.harmonic);
  load("tol", cfg.tol);
  load("max_terms", cfg.max_terms);
  load("format", cfg.format);
  load("out", cfg.out);
  load("seed", cfg.seed);
  load("quick", cfg.quick);
  load("perturb_q", cfg.perturb_q);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  std::string config_path;

  CLI::App app{"narrow-gap electrostatics of two nearly-touching spheres"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--config", config_path, "JSON config file (flags take precedence)");
  app.add_option("--r1", cfg.r1, "radius of sphere 1");
  app.add_option("--r2", cfg.r2, "radius of sphere 2");
  app.add_option("--eps", cfg.eps, "half-gap between the spheres");
  app.add_option("--harmonic", cfg.harmonic, "background harmonic polynomial in x1,x2,x3");
  app.add_option("--tol", cfg.tol, "series tolerance");
  app.add_option("--max-terms", cfg.max_terms, "cap on stored image terms per family");
  app.add_option("--format", cfg.format, "output format: json or csv");
  app.add_option("--out", cfg.out, "output path (default stdout)");
  app.add_option("--seed", cfg.seed, "seed for randomized probes");
  app.add_flag("--quick", cfg.quick, "restrict validation to eps >= 1e-4");
  app.add_option("--perturb-q", cfg.perturb_q, "fault injection: scale family-1 charges");

  auto* sc_constants = app.add_subcommand("constants", "series constants Q1, Q2, M");
  bool dump_images = false;
  sc_constants->add_flag("--dump-images", dump_images,
                         "include the image points/charges in the JSON output");

  auto* sc_curve = app.add_subcommand("blowup-curve", "Psi(r) curve for the configured harmonic");
  double r_min = 0.05, r_max = 5.0;
  int samples = 100;
  sc_curve->add_option("--r-min", r_min, "smallest radius ratio");
  sc_curve->add_option("--r-max", r_max, "largest radius ratio (<= 10)");
  sc_curve->add_option("--samples", samples, "number of samples");

  auto* sc_field = app.add_subcommand("field", "gap-plane field grid (CSV)");
  double x1 = 0.0, span = 0.0;
  int n = 101;
  std::string emit = "main";
  sc_field->add_option("--x1", x1, "plane coordinate x1");
  sc_field->add_option("--span", span, "half-extent in x2 and x3 (default: rho window)");
  sc_field->add_option("--n", n, "points per axis");
  sc_field->add_option("--emit", emit, "'main' (asymptotic field) or 'h' (singular function)");

  auto* sc_validate = app.add_subcommand("validate", "run the named invariant suites");
  auto* sc_figures = app.add_subcommand("figures", "emit the Psi(r) figure datasets");
  std::string prefix;
  double e0 = 1.0;
  sc_figures->add_option("--prefix", prefix, "output path prefix");
  sc_figures->add_option("--e0", e0, "background field strength for figure 1");

  try {
    app.parse(argc, argv);
    if (!config_path.empty()) apply_config_file(config_path, app, cfg);
    if (cfg.format != "json" && cfg.format != "csv") {
      throw ConfigError("unknown format: " + cfg.format);
    }
    if (cfg.max_terms < 64 || cfg.max_terms > 20'000'000) {
      throw ConfigError("max-terms out of range [64, 2e7]");
    }
    if (sc_constants->parsed()) return cmd_constants(cfg, dump_images);
    if (sc_curve->parsed()) return cmd_blowup_curve(cfg, r_min, r_max, samples);
    if (sc_field->parsed()) return cmd_field(cfg, x1, span, n, emit);
    if (sc_validate->parsed()) return cmd_validate(cfg);
    if (sc_figures->parsed()) return cmd_figures(cfg, prefix, e0);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const gapfield::decomposition_mismatch_error& e) {
    std::cerr << "validation failure: " << e.what() << "\n";
    return 3;
  } catch (const gapfield::numeric_error& e) {
    std::cerr << "numeric non-convergence: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

// geonharvest: command-line front end.
//   eval      one harvesting point as JSON
//   sweep     one-dimensional scans (figure presets or custom) as CSV
//   shadow    shadow boundary / gap crossover as JSON, or d_death vs mass CSV
//   validate  oracle comparison and invariant suite
// Exit codes: 0 success, 1 usage, 2 numerical failure.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "geonharvest/error.hpp"
#include "geonharvest/observables.hpp"
#include "geonharvest/shadow.hpp"
#include "geonharvest/sweep.hpp"
#include "geonharvest/validation.hpp"

using namespace geonharvest;
using nlohmann::ordered_json;

namespace {

constexpr int kUsage = 1;
constexpr int kNumerical = 2;

struct Tolerances {
  double rel_tol = QuadratureSpec{}.rel_tol;
  double abs_tol = QuadratureSpec{}.abs_tol;
  double image_rel_tol = ObservableSpec{}.image_rel_tol;

  void add(CLI::App* app) {
    app->add_option("--rel-tol", rel_tol, "Quadrature relative tolerance")->capture_default_str();
    app->add_option("--abs-tol", abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    app->add_option("--image-tol", image_rel_tol, "Relative image-sum tolerance")
        ->capture_default_str();
  }
  ObservableSpec spec() const {
    ObservableSpec s;
    s.quad.rel_tol = rel_tol;
    s.quad.abs_tol = abs_tol;
    s.image_rel_tol = image_rel_tol;
    return s;
  }
};

const std::vector<std::string> kZeta{"-1", "0", "1"};

ordered_json provenance(const std::string& echo) {
  return {{"tool", "geonharvest"},
          {"version", GEONHARVEST_VERSION},
          {"spec", echo},
          {"spec_hash", fingerprint(echo)}};
}

std::string tolerance_echo(const ObservableSpec& s) {
  return " quad_rel_tol=" + format_real(s.quad.rel_tol) +
         " quad_abs_tol=" + format_real(s.quad.abs_tol) +
         " image_rel_tol=" + format_real(s.image_rel_tol);
}

// Doubles go through format_real so repeated runs print identical text.
ordered_json real(double v) {
  if (!std::isfinite(v)) return nullptr;
  return std::stod(format_real(v));
}

std::vector<Family> families_from(const std::string& name) {
  if (name == "both") return {Family::BTZ, Family::Geon};
  return {family_from_string(name)};
}

// ----------------------------------------------------------------------------

struct EvalCmd {
  double mass = 0.0;
  double ads_length = 10.0;
  int zeta = 1;
  std::string family = "btz";
  double gap = 0.0;
  double dist_a = 0.0;
  double sep = 0.0;
  Tolerances tol;

  void add(CLI::App& parent) {
    auto* c = parent.add_subcommand("eval", "Evaluate P_A, P_B, X and concurrence at one point");
    c->add_option("--mass", mass, "Black hole mass M")->required();
    c->add_option("--ads-length", ads_length, "AdS length")->capture_default_str();
    c->add_option("--zeta", zeta, "Boundary condition: -1 Neumann, 0 transparent, 1 Dirichlet")
        ->check(CLI::IsMember(kZeta))
        ->capture_default_str();
    c->add_option("--family", family, "btz or geon")
        ->check(CLI::IsMember({"btz", "geon"}))
        ->capture_default_str();
    c->add_option("--gap", gap, "Detector energy gap")->required();
    c->add_option("--dist-a", dist_a, "Proper distance of detector A from the horizon")
        ->required();
    c->add_option("--sep", sep, "Proper separation of the detectors")->required();
    tol.add(c);
    app = c;
  }

  int run() const {
    const SpacetimeParams p{mass, ads_length, zeta, family_from_string(family)};
    p.validate();
    const ObservableSpec spec = tol.spec();
    const DetectorPair pair = pair_at_distance(dist_a, sep, gap, p);
    const HarvestResult h = harvest(pair, p, spec);

    std::ostringstream echo;
    echo << "eval family=" << family << " mass=" << format_real(mass)
         << " ads_length=" << format_real(ads_length) << " zeta=" << zeta
         << " gap=" << format_real(gap) << " dist_a=" << format_real(dist_a)
         << " separation=" << format_real(sep) << tolerance_echo(spec);

    ordered_json j;
    j["family"] = family;
    j["mass"] = real(mass);
    j["ads_length"] = real(ads_length);
    j["zeta"] = zeta;
    j["gap"] = real(gap);
    j["dist_a"] = real(dist_a);
    j["separation"] = real(sep);
    j["radius_a"] = real(pair.a.radius);
    j["radius_b"] = real(pair.b.radius);
    j["redshift_a"] = real(redshift(pair.a.radius, p));
    j["redshift_b"] = real(redshift(pair.b.radius, p));
    j["p_a"] = real(h.p_a);
    j["p_b"] = real(h.p_b);
    j["x_abs"] = real(h.x_abs);
    j["x_re"] = real(h.x.real());
    j["x_im"] = real(h.x.imag());
    j["concurrence"] = real(h.concurrence);
    j["err"] = {{"p_a", real(h.err.p_a)},
                {"p_b", real(h.err.p_b)},
                {"x", real(h.err.x)},
                {"concurrence", real(h.err.concurrence)}};
    j["n_max"] = h.images;
    j["provenance"] = provenance(echo.str());
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  CLI::App* app = nullptr;
};

// ----------------------------------------------------------------------------

struct SweepCmd {
  std::string preset_name = "custom";
  std::optional<std::string> axis, scale;
  std::optional<double> from, to;
  std::optional<int> count;
  std::optional<std::vector<double>> masses, gaps;
  std::optional<double> ads_length, dist_a, sep;
  std::optional<int> zeta;
  std::optional<std::string> families;
  bool shadow = false;
  bool timing = false;
  unsigned threads = 0;
  std::string out = "-";
  std::string config;
  Tolerances tol;

  void add(CLI::App& parent) {
    auto* c = parent.add_subcommand("sweep", "Scan one parameter and write CSV");
    c->add_option("--config", config, "Flat key = value file; flags override it")
        ->check(CLI::ExistingFile);
    c->add_option("--preset", preset_name, "fig2 ... fig7 or custom")
        ->check(CLI::IsMember(preset_names()))
        ->capture_default_str();
    c->add_option("--axis", axis, "mass, gap or distance")
        ->check(CLI::IsMember({"mass", "gap", "distance"}));
    c->add_option("--scale", scale, "linear or log")->check(CLI::IsMember({"linear", "log"}));
    c->add_option("--from", from, "First grid value");
    c->add_option("--to", to, "Last grid value");
    c->add_option("--count", count, "Number of grid points, 2 ... 10000");
    c->add_option("--masses", masses, "Fixed masses (comma separated)")->delimiter(',');
    c->add_option("--gaps", gaps, "Fixed gaps (comma separated)")->delimiter(',');
    c->add_option("--ads-length", ads_length, "AdS length");
    c->add_option("--zeta", zeta, "Boundary condition")->check(CLI::IsMember(kZeta));
    c->add_option("--dist-a", dist_a, "Distance of A from the horizon (gap/mass axes)");
    c->add_option("--sep", sep, "Proper separation of the detectors");
    c->add_option("--families", families, "btz, geon or both")
        ->check(CLI::IsMember({"btz", "geon", "both"}));
    c->add_flag("--shadow", shadow, "Rows hold d_death (mass axis only)");
    c->add_flag("--timing", timing, "Add a wall_time column (output no longer byte-stable)");
    c->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
    c->add_option("--out", out, "Output CSV path, - for stdout")->capture_default_str();
    tol.add(c);
    app = c;
  }

  // Keys name options without the leading dashes ('_' and '-' both accepted);
  // values only fill options that were not given on the command line.
  void apply_config() const {
    if (config.empty()) return;
    std::vector<CLI::ConfigItem> items;
    try {
      items = CLI::ConfigINI().from_file(config);
    } catch (const CLI::Error& e) {
      throw DomainError("config '" + config + "': " + e.what());
    }
    for (const auto& item : items) {
      if (item.name == "++" || item.name == "--") continue;  // section markers
      std::string key = item.name;
      std::replace(key.begin(), key.end(), '_', '-');
      CLI::Option* opt = nullptr;
      try {
        opt = app->get_option("--" + key);
      } catch (const CLI::OptionNotFound&) {
      }
      if (!opt || key == "config")
        throw DomainError("config '" + config + "': unknown key '" + item.name + "'");
      if (opt->count() > 0) continue;
      std::vector<std::string> values = item.inputs;
      if (opt->get_type_size_max() == 0) {
        // Flags: accept true/false.
        if (values.size() != 1) throw DomainError("config: flag '" + item.name + "' needs one value");
        const auto& v = values.front();
        if (v == "true" || v == "1") opt->add_result(std::string("true"));
        else if (v != "false" && v != "0") throw DomainError("config: flag '" + item.name + "' expects true or false");
      } else {
        opt->add_result(values);
      }
      try {
        opt->run_callback();
      } catch (const CLI::Error& e) {
        throw DomainError("config '" + config + "', key '" + item.name + "': " + e.what());
      }
    }
  }

  SweepSpec build() const {
    SweepSpec s = preset(preset_name);
    if (axis) s.axis = axis_from_string(*axis);
    if (scale) s.scale = scale_from_string(*scale);
    if (from) s.from = *from;
    if (to) s.to = *to;
    if (count) s.count = *count;
    if (masses) s.masses = *masses;
    if (gaps) s.gaps = *gaps;
    if (ads_length) s.ads_length = *ads_length;
    if (zeta) s.zeta = *zeta;
    if (dist_a) s.d_a = *dist_a;
    if (sep) s.separation = *sep;
    if (families) s.families = families_from(*families);
    s.shadow = s.shadow || shadow;
    s.timing = timing;
    s.threads = threads;
    s.observables = tol.spec();
    return s;
  }

  int run() const {
    apply_config();
    const SweepSpec s = build();
    s.validate();
    std::ofstream file;
    if (out != "-") {
      file.open(out, std::ios::binary);
      if (!file) throw DomainError("cannot open '" + out + "' for writing");
    }
    const auto rows = run_sweep(s);
    std::ostream& os = out == "-" ? std::cout : file;
    write_csv(os, s, rows);
    os.flush();
    if (!os) throw DomainError("failed writing '" + out + "'");
    int failed = 0;
    for (const auto& r : rows) failed += !r.error.empty();
    if (failed) {
      std::cerr << "sweep: " << failed << " of " << rows.size()
                << " points failed (see the error column)\n";
      return kNumerical;
    }
    return 0;
  }

  CLI::App* app = nullptr;
};

// ----------------------------------------------------------------------------

struct ShadowCmd {
  double mass = 1.0;
  double ads_length = 10.0;
  int zeta = 1;
  std::string family = "both";
  double gap = 0.01;
  double sep = 0.5;
  double d_min = ShadowQuery{}.d_min;
  double d_max = ShadowQuery{}.d_max;
  int scan_points = ShadowQuery{}.scan_points;
  double bisect_tol = ShadowQuery{}.tol;
  bool crossover = false;
  double dist_a = 1.0;
  double gap_min = CrossoverQuery{}.gap_min;
  double gap_max = CrossoverQuery{}.gap_max;
  std::optional<double> mass_from, mass_to;
  int mass_count = 20;
  std::string out = "-";
  unsigned threads = 0;
  Tolerances tol;

  void add(CLI::App& parent) {
    auto* c = parent.add_subcommand(
        "shadow", "Shadow boundary d_death and BTZ/geon crossover gap");
    c->add_option("--mass", mass, "Black hole mass")->capture_default_str();
    c->add_option("--ads-length", ads_length, "AdS length")->capture_default_str();
    c->add_option("--zeta", zeta, "Boundary condition")
        ->check(CLI::IsMember(kZeta))
        ->capture_default_str();
    c->add_option("--family", family, "btz, geon or both")
        ->check(CLI::IsMember({"btz", "geon", "both"}))
        ->capture_default_str();
    c->add_option("--gap", gap, "Detector energy gap")->capture_default_str();
    c->add_option("--sep", sep, "Proper separation of the detectors")->capture_default_str();
    c->add_option("--d-min", d_min, "Innermost scanned distance of A")->capture_default_str();
    c->add_option("--d-max", d_max, "Outermost scanned distance of A (<= 20)")
        ->capture_default_str();
    c->add_option("--scan-points", scan_points, "Log-spaced scan points")->capture_default_str();
    c->add_option("--tol", bisect_tol, "Bisection tolerance")->capture_default_str();
    c->add_flag("--crossover", crossover, "Also locate the gap where C_geon overtakes C_BTZ");
    c->add_option("--dist-a", dist_a, "Distance of A for the crossover search")
        ->capture_default_str();
    c->add_option("--gap-min", gap_min, "Crossover scan start")->capture_default_str();
    c->add_option("--gap-max", gap_max, "Crossover scan end")->capture_default_str();
    auto* mf = c->add_option("--mass-from", mass_from, "Mass sweep: smallest mass (CSV mode)");
    auto* mt = c->add_option("--mass-to", mass_to, "Mass sweep: largest mass");
    mf->needs(mt);
    mt->needs(mf);
    c->add_option("--mass-count", mass_count, "Mass sweep: log-spaced points")
        ->capture_default_str();
    c->add_option("--out", out, "CSV path for the mass sweep, - for stdout")
        ->capture_default_str();
    c->add_option("--threads", threads, "Worker threads, 0 = all cores")->capture_default_str();
    tol.add(c);
    app = c;
  }

  ShadowQuery query(Family f) const {
    ShadowQuery q;
    q.spacetime = {mass, ads_length, zeta, f};
    q.separation = sep;
    q.gap = gap;
    q.d_min = d_min;
    q.d_max = d_max;
    q.scan_points = scan_points;
    q.tol = bisect_tol;
    q.observables = tol.spec();
    q.threads = threads;
    return q;
  }

  int run() const { return mass_from ? run_mass_sweep() : run_single(); }

  int run_single() const {
    std::ostringstream echo;
    echo << "shadow mass=" << format_real(mass) << " ads_length=" << format_real(ads_length)
         << " zeta=" << zeta << " gap=" << format_real(gap) << " separation=" << format_real(sep)
         << " d_min=" << format_real(d_min) << " d_max=" << format_real(d_max)
         << " scan_points=" << scan_points << " tol=" << format_real(bisect_tol)
         << tolerance_echo(tol.spec());

    ordered_json j;
    j["mass"] = real(mass);
    j["ads_length"] = real(ads_length);
    j["zeta"] = zeta;
    j["gap"] = real(gap);
    j["separation"] = real(sep);
    j["tol"] = real(bisect_tol);
    ordered_json fam = ordered_json::object();
    for (Family f : families_from(family)) {
      const ShadowResult r = d_death(query(f));
      fam[std::string(to_string(f))] = {{"status", to_string(r.status)},
                                        {"d_death", real(r.d_death)},
                                        {"bracket", {real(r.lo), real(r.hi)}},
                                        {"evaluations", r.evaluations}};
    }
    j["families"] = fam;
    if (crossover) {
      CrossoverQuery q;
      q.spacetime = {mass, ads_length, zeta, Family::BTZ};
      q.separation = sep;
      q.d_a = dist_a;
      q.gap_min = gap_min;
      q.gap_max = gap_max;
      q.tol = bisect_tol;
      q.observables = tol.spec();
      q.threads = threads;
      const CrossoverResult r = crossover_gap(q);
      echo << " crossover dist_a=" << format_real(dist_a) << " gap_min=" << format_real(gap_min)
           << " gap_max=" << format_real(gap_max);
      j["crossover"] = {{"gap", r.gap ? real(*r.gap) : ordered_json(nullptr)},
                        {"bracket", r.gap ? ordered_json{real(r.lo), real(r.hi)}
                                          : ordered_json(nullptr)},
                        {"crossings", r.crossings},
                        {"evaluations", r.evaluations}};
    }
    j["provenance"] = provenance(echo.str());
    std::cout << j.dump(2) << '\n';
    return 0;
  }

  // d_death against mass, one column pair per family.
  int run_mass_sweep() const {
    SweepSpec s = preset("custom");
    s.preset = "shadow";
    s.shadow = true;
    s.axis = Axis::Mass;
    s.scale = Scale::Log;
    s.from = *mass_from;
    s.to = *mass_to;
    s.count = mass_count;
    s.gaps = {gap};
    s.ads_length = ads_length;
    s.zeta = zeta;
    s.separation = sep;
    s.families = {Family::BTZ, Family::Geon};
    s.shadow_d_min = d_min;
    s.shadow_d_max = d_max;
    s.shadow_scan_points = scan_points;
    s.shadow_tol = bisect_tol;
    s.observables = tol.spec();
    s.threads = threads;
    s.validate();
    const auto rows = run_sweep(s);

    std::ofstream file;
    if (out != "-") {
      file.open(out, std::ios::binary);
      if (!file) throw DomainError("cannot open '" + out + "' for writing");
    }
    std::ostream& os = out == "-" ? std::cout : file;
    const std::string echo = s.echo();
    os << "# geonharvest " << GEONHARVEST_VERSION << '\n'
       << "# spec: " << echo << '\n'
       << "# spec_hash: " << fingerprint(echo) << '\n'
       << "mass,gap,separation,tol,d_death_btz,status_btz,d_death_geon,status_geon,error\n";
    int failed = 0;
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
      const SweepRow& b = rows[i];
      const SweepRow& g = rows[i + 1];
      const std::string err = b.error.empty() ? g.error : b.error;
      failed += !err.empty();
      auto status = [](const SweepRow& r) {
        return r.error.empty() ? std::string(to_string(r.shadow.status)) : std::string("error");
      };
      auto death = [](const SweepRow& r) {
        return format_real(r.error.empty() ? r.shadow.d_death : std::nan(""));
      };
      os << format_real(b.mass) << ',' << format_real(gap) << ',' << format_real(sep) << ','
         << format_real(bisect_tol) << ',' << death(b) << ',' << status(b) << ',' << death(g)
         << ',' << status(g) << ",\"" << err << "\"\n";
    }
    os.flush();
    return failed ? kNumerical : 0;
  }

  CLI::App* app = nullptr;
};

// ----------------------------------------------------------------------------

struct ValidateCmd {
  std::string tier = "quick";

  void add(CLI::App& parent) {
    auto* c = parent.add_subcommand("validate", "Compare against the oracle and run invariants");
    c->add_option("--tier", tier, "quick (4 oracle points) or full (12)")
        ->check(CLI::IsMember({"quick", "full"}))
        ->capture_default_str();
    app = c;
  }

  int run() const {
    auto checks = invariant_checks();
    const auto oracle = oracle_checks(tier_from_string(tier));
    checks.insert(checks.end(), oracle.begin(), oracle.end());
    int failed = 0;
    for (const auto& c : checks) {
      std::printf("%-4s  %-58s  measured %-12.4g limit %-10.4g %s\n", c.passed ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.threshold, c.detail.c_str());
      failed += !c.passed;
    }
    std::printf("%d of %zu checks passed\n", static_cast<int>(checks.size()) - failed,
                checks.size());
    return failed ? kNumerical : 0;
  }

  CLI::App* app = nullptr;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement harvesting outside BTZ black holes and RP2 geons"};
  app.set_version_flag("--version", std::string("geonharvest ") + GEONHARVEST_VERSION);
  app.require_subcommand(1);

  EvalCmd eval;
  SweepCmd sweep;
  ShadowCmd shadow;
  ValidateCmd validate;
  eval.add(app);
  sweep.add(app);
  shadow.add(app);
  validate.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (eval.app->parsed()) return eval.run();
    if (sweep.app->parsed()) return sweep.run();
    if (shadow.app->parsed()) return shadow.run();
    if (validate.app->parsed()) return validate.run();
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (best estimate " << e.best_estimate()
              << ", error " << e.err_estimate() << ")\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
  return kUsage;
}

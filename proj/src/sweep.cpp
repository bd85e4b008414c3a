#include "geonharvest/sweep.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "geonharvest/error.hpp"
#include "parallel.hpp"

namespace geonharvest {

namespace {

constexpr int kMaxCount = 10000;

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += format_real(v[i]);
  }
  return out;
}

std::string join(const std::vector<Family>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ';';
    out += to_string(v[i]);
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

// One work item: fixed parameters plus the axis value.
struct Point {
  Family family;
  double mass;
  double gap;
  double d_a;
};

std::vector<Point> expand(const SweepSpec& s) {
  const auto grid = s.grid();
  const std::vector<double> masses = s.axis == Axis::Mass ? std::vector<double>{0.0} : s.masses;
  const std::vector<double> gaps = s.axis == Axis::Gap ? std::vector<double>{0.0} : s.gaps;
  std::vector<Point> out;
  for (double m : masses)
    for (double g : gaps)
      for (double x : grid)
        for (Family f : s.families) {
          Point pt{f, m, g, s.d_a};
          switch (s.axis) {
            case Axis::Mass: pt.mass = x; break;
            case Axis::Gap: pt.gap = x; break;
            case Axis::Distance: pt.d_a = x; break;
          }
          out.push_back(pt);
        }
  return out;
}

SweepRow evaluate(const SweepSpec& s, const Point& pt) {
  SweepRow row;
  row.family = pt.family;
  row.mass = pt.mass;
  row.ads_length = s.ads_length;
  row.zeta = s.zeta;
  row.gap = pt.gap;
  row.d_a = pt.d_a;
  row.separation = s.separation;
  const auto start = std::chrono::steady_clock::now();
  try {
    const SpacetimeParams p{pt.mass, s.ads_length, s.zeta, pt.family};
    if (s.shadow) {
      ShadowQuery q;
      q.spacetime = p;
      q.separation = s.separation;
      q.gap = pt.gap;
      q.d_min = s.shadow_d_min;
      q.d_max = s.shadow_d_max;
      q.scan_points = s.shadow_scan_points;
      q.tol = s.shadow_tol;
      q.observables = s.observables;
      q.threads = 1;  // parallelism is across rows
      row.shadow = d_death(q);
    } else {
      row.result = harvest(pair_at_distance(pt.d_a, s.separation, pt.gap, p), p, s.observables);
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  row.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return row;
}

}  // namespace

std::string_view to_string(Axis a) {
  switch (a) {
    case Axis::Mass: return "mass";
    case Axis::Gap: return "gap";
    case Axis::Distance: return "distance";
  }
  return "unknown";
}

std::string_view to_string(Scale s) { return s == Scale::Log ? "log" : "linear"; }

Axis axis_from_string(std::string_view name) {
  if (name == "mass") return Axis::Mass;
  if (name == "gap") return Axis::Gap;
  if (name == "distance") return Axis::Distance;
  throw DomainError("unknown axis '" + std::string(name) + "' (expected mass, gap or distance)");
}

Scale scale_from_string(std::string_view name) {
  if (name == "log") return Scale::Log;
  if (name == "linear") return Scale::Linear;
  throw DomainError("unknown scale '" + std::string(name) + "' (expected linear or log)");
}

void SweepSpec::validate() const {
  if (count < 2 || count > kMaxCount)
    throw DomainError("sweep: grid count must be in [2, " + std::to_string(kMaxCount) + "]");
  if (!std::isfinite(from) || !std::isfinite(to) || !(from < to))
    throw DomainError("sweep: grid bounds must be finite with from < to");
  if (scale == Scale::Log && !(from > 0.0))
    throw DomainError("sweep: log grid requires positive bounds");
  if (axis != Axis::Mass && masses.empty()) throw DomainError("sweep: no masses given");
  if (axis != Axis::Gap && gaps.empty()) throw DomainError("sweep: no gaps given");
  if (families.empty()) throw DomainError("sweep: no families given");
  if (axis == Axis::Mass && !(from > 0.0)) throw DomainError("sweep: masses must be positive");
  if (axis == Axis::Gap && from < 0.0) throw DomainError("sweep: gaps must be nonnegative");
  if (axis == Axis::Distance && !(from > 0.0))
    throw DomainError("sweep: distances must be positive");
  for (double m : masses)
    if (!(m > 0.0)) throw DomainError("sweep: masses must be positive");
  for (double g : gaps)
    if (!(g >= 0.0)) throw DomainError("sweep: gaps must be nonnegative");
  SpacetimeParams{1.0, ads_length, zeta, Family::BTZ}.validate();
  if (!(d_a > 0.0)) throw DomainError("sweep: dist-a must be positive");
  if (!(separation > 0.0)) throw DomainError("sweep: separation must be positive");
  if (shadow) {
    if (axis != Axis::Mass) throw DomainError("sweep: shadow rows need the mass axis");
    ShadowQuery q;
    q.d_min = shadow_d_min;
    q.d_max = shadow_d_max;
    q.scan_points = shadow_scan_points;
    q.tol = shadow_tol;
    q.separation = separation;
    q.validate();
  }
  observables.quad.validate();
}

std::vector<double> SweepSpec::grid() const {
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) {
    const double u = static_cast<double>(i) / (count - 1);
    g[i] = scale == Scale::Log ? from * std::pow(to / from, u) : from + (to - from) * u;
  }
  g.front() = from;
  g.back() = to;
  return g;
}

std::string SweepSpec::echo() const {
  std::ostringstream os;
  os << "preset=" << preset << " axis=" << to_string(axis) << " scale=" << to_string(scale)
     << " from=" << format_real(from) << " to=" << format_real(to) << " count=" << count;
  if (axis != Axis::Mass) os << " masses=" << join(masses);
  if (axis != Axis::Gap) os << " gaps=" << join(gaps);
  os << " ads_length=" << format_real(ads_length) << " zeta=" << zeta;
  if (!shadow && axis != Axis::Distance) os << " d_a=" << format_real(d_a);
  os << " separation=" << format_real(separation) << " families=" << join(families);
  os << " quad_rel_tol=" << format_real(observables.quad.rel_tol)
     << " quad_abs_tol=" << format_real(observables.quad.abs_tol)
     << " quad_max_levels=" << observables.quad.max_levels
     << " image_rel_tol=" << format_real(observables.image_rel_tol)
     << " image_abs_tol=" << format_real(observables.image_abs_tol)
     << " max_images=" << observables.max_images;
  if (shadow)
    os << " shadow=1 shadow_d_min=" << format_real(shadow_d_min)
       << " shadow_d_max=" << format_real(shadow_d_max)
       << " shadow_scan_points=" << shadow_scan_points
       << " shadow_tol=" << format_real(shadow_tol);
  return os.str();
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "custom"};
}

SweepSpec preset(std::string_view name) {
  SweepSpec s;
  s.preset = std::string(name);
  if (name == "custom") return s;
  s.ads_length = 10.0;
  s.zeta = 1;
  s.d_a = 1.0;
  s.separation = 0.5;
  if (name == "fig2" || name == "fig6") {
    // P (fig2) or C (fig6) against the distance of A from the horizon.
    s.axis = Axis::Distance;
    s.scale = Scale::Log;
    s.from = 0.05;
    s.to = 10.0;
    s.count = 60;
    s.masses = name == "fig2" ? std::vector<double>{1.0, 0.01} : std::vector<double>{0.01};
    s.gaps = {0.01, 0.1, 1.0};
  } else if (name == "fig3" || name == "fig4") {
    // P and |X| (fig3) or C (fig4) against the mass.
    s.axis = Axis::Mass;
    s.scale = Scale::Log;
    s.from = 1e-4;
    s.to = 10.0;
    s.count = 60;
    s.gaps = name == "fig3" ? std::vector<double>{0.1} : std::vector<double>{0.01, 0.1, 1.0};
  } else if (name == "fig5") {
    // C against the gap, one curve pair per mass.
    s.axis = Axis::Gap;
    s.scale = Scale::Linear;
    s.from = 0.01;
    s.to = 3.0;
    s.count = 60;
    s.masses = {0.001, 0.01, 0.1, 1.0};
  } else if (name == "fig7") {
    s.shadow = true;
    s.axis = Axis::Mass;
    s.scale = Scale::Log;
    s.from = 1e-3;
    s.to = 10.0;
    s.count = 30;
    s.gaps = {0.01, 1.0};
  } else {
    throw DomainError("unknown preset '" + std::string(name) + "'");
  }
  return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto points = expand(spec);
  return detail::parallel_map<SweepRow>(points.size(), spec.threads, [&](std::size_t i) {
    return evaluate(spec, points[i]);
  });
}

std::vector<std::string> csv_columns(const SweepSpec& spec) {
  std::vector<std::string> cols;
  if (spec.shadow) {
    cols = {"family", "mass", "ads_length", "zeta", "gap", "separation", "status",
            "d_death", "bracket_lo", "bracket_hi", "tol", "evaluations"};
  } else {
    cols = {"family",  "mass",     "ads_length", "zeta",          "gap",
            "d_a",     "separation", "p_a",      "p_b",           "x_abs",
            "x_re",    "x_im",     "concurrence", "err_p_a",      "err_p_b",
            "err_x",   "err_concurrence", "n_max"};
  }
  if (spec.timing) cols.push_back("wall_time");
  cols.push_back("error");
  return cols;
}

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
  const std::string echo = spec.echo();
  os << "# geonharvest " << GEONHARVEST_VERSION << '\n';
  os << "# preset: " << spec.preset << '\n';
  os << "# spec: " << echo << '\n';
  os << "# spec_hash: " << fingerprint(echo) << '\n';
  os << "# units: lengths and inverse gaps in switching widths; p, x, concurrence per coupling^2\n";
  os << "# order: fixed parameters, then " << to_string(spec.axis) << " grid, then family\n";

  const auto cols = csv_columns(spec);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';

  const double nan = std::nan("");
  for (const auto& r : rows) {
    const bool ok = r.error.empty();
    std::vector<std::string> f{std::string(to_string(r.family)), format_real(r.mass),
                               format_real(r.ads_length), std::to_string(r.zeta),
                               format_real(r.gap)};
    if (spec.shadow) {
      const auto& s = r.shadow;
      f.push_back(format_real(r.separation));
      f.push_back(ok ? std::string(to_string(s.status)) : "error");
      for (double v : {s.d_death, s.lo, s.hi}) f.push_back(format_real(ok ? v : nan));
      f.push_back(format_real(spec.shadow_tol));
      f.push_back(std::to_string(ok ? s.evaluations : 0));
    } else {
      const auto& h = r.result;
      f.push_back(format_real(r.d_a));
      f.push_back(format_real(r.separation));
      for (double v : {h.p_a, h.p_b, h.x_abs, h.x.real(), h.x.imag(), h.concurrence,
                       h.err.p_a, h.err.p_b, h.err.x, h.err.concurrence})
        f.push_back(format_real(ok ? v : nan));
      f.push_back(std::to_string(ok ? h.images : 0));
    }
    if (spec.timing) f.push_back(format_real(r.wall_time));
    f.push_back(csv_field(r.error));
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << '\n';
  }
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", v);
  return buf;
}

std::string fingerprint(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace geonharvest

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "geonharvest/geometry.hpp"
#include "geonharvest/observables.hpp"
#include "geonharvest/shadow.hpp"

namespace geonharvest {

enum class Axis { Mass, Gap, Distance };
enum class Scale { Linear, Log };

std::string_view to_string(Axis a);
std::string_view to_string(Scale s);
Axis axis_from_string(std::string_view name);
Scale scale_from_string(std::string_view name);

// One-dimensional parameter scan. Every axis value is combined with every
// entry of the fixed lists that are not the axis itself.
struct SweepSpec {
  std::string preset = "custom";
  Axis axis = Axis::Distance;
  Scale scale = Scale::Log;
  double from = 0.05;
  double to = 10.0;
  int count = 50;

  std::vector<double> masses{1.0};
  std::vector<double> gaps{0.1};
  double ads_length = 10.0;
  int zeta = 1;
  double d_a = 1.0;
  double separation = 0.5;
  std::vector<Family> families{Family::BTZ, Family::Geon};

  // Rows hold d_death instead of the harvest quantities (axis must be mass).
  bool shadow = false;
  double shadow_d_min = 0.01;
  double shadow_d_max = 20.0;
  int shadow_scan_points = 40;
  double shadow_tol = 1e-3;

  ObservableSpec observables;
  unsigned threads = 0;
  bool timing = false;  // adds a wall-time column; breaks byte stability

  void validate() const;
  std::vector<double> grid() const;
  // Canonical one-line echo of everything that affects the numbers.
  std::string echo() const;
};

// Names accepted by preset(): fig2 ... fig7, custom.
std::vector<std::string> preset_names();
SweepSpec preset(std::string_view name);

struct SweepRow {
  Family family = Family::BTZ;
  double mass = 0.0;
  double ads_length = 0.0;
  int zeta = 0;
  double gap = 0.0;
  double d_a = 0.0;
  double separation = 0.0;
  HarvestResult result;
  ShadowResult shadow;
  double wall_time = 0.0;  // seconds
  std::string error;        // empty on success
};

// Rows in grid-major, family-minor order; a failed point keeps its inputs
// and carries the exception text in `error`.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

void write_csv(std::ostream& os, const SweepSpec& spec,
               const std::vector<SweepRow>& rows);

// Column names, in CSV order.
std::vector<std::string> csv_columns(const SweepSpec& spec);

// 12 significant digits, scientific; "nan"/"inf" spelled out.
std::string format_real(double v);

// Stable 64-bit FNV-1a of a string, as 16 hex digits.
std::string fingerprint(std::string_view text);

}  // namespace geonharvest

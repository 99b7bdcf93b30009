#pragma once

// CSV schemas written by the command-line tool. Every file starts with a
// block of '#' lines echoing the command and all effective flags, followed
// by a single column-name line and the data rows.
//
//   orbit           n,x
//   bifurcation     a,x
//   period-diagram  a,b,period      (0 = none, -1 = b outside (0,1))
//   regime-map      sigma,b,regime  (period2 | chaos | boundary | invalid)
//   cobweb          segment_index,x,y   (two rows per segment: start, end)
//   potential       x,phi
//   boundary        a,x1,x2,b1,b2

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "ewa/orbits.hpp"
#include "ewa/stability.hpp"
#include "ewa/sweep.hpp"

namespace ewa {

/// Shortest decimal string that reads back to the same double.
[[nodiscard]] std::string format_double(double v);

struct RunHeader {
  std::string subcommand;
  /// Flag/value pairs in emission order; an empty value marks a bare flag.
  std::vector<std::pair<std::string, std::string>> args;
  std::vector<std::string> notes;

  [[nodiscard]] std::string args_line() const;
};

void write_header(std::ostream& os, const RunHeader& h);

inline constexpr const char* kPeriodLegend =
    "period 1..8 = attracting cycle of that period, 0 = none (period > 8), -1 = invalid b";
inline constexpr const char* kPeriodColors =
    "1=yellow 2=red 3=blue 4=green 5=brown 6=cyan 7=darkgray 8=magenta 0=white";

void write_orbit_csv(std::ostream& os, const OrbitTrace& t);
void write_bifurcation_csv(std::ostream& os, const DiagramGrid<BifurcationColumn>& g);
void write_period_csv(std::ostream& os, const DiagramGrid<PeriodCell>& g);
void write_regime_csv(std::ostream& os, const DiagramGrid<RegimeCell>& g);
void write_cobweb_csv(std::ostream& os, const CobwebTrace& c);
void write_potential_csv(std::ostream& os, const std::vector<std::array<double, 2>>& pts);
void write_boundary_csv(std::ostream& os, const BifurcationBoundary& bb);

/// Parsed CSV file: comment lines (without '#'), column names, raw rows.
struct CsvTable {
  std::vector<std::string> comments;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// Throws std::runtime_error naming the line on a ragged row or a missing
/// column-name line.
[[nodiscard]] CsvTable read_csv(std::istream& is);

}  // namespace ewa

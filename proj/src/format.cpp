#include "ewa/format.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace ewa {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return {buf.data(), res.ptr};
}

std::string RunHeader::args_line() const {
  std::string line;
  for (const auto& [flag, value] : args) {
    if (!line.empty()) line += ' ';
    line += flag;
    if (!value.empty()) {
      line += ' ';
      line += value;
    }
  }
  return line;
}

void write_header(std::ostream& os, const RunHeader& h) {
  os << "# ewa " << h.subcommand << '\n';
  os << "# args: " << h.args_line() << '\n';
  for (const auto& n : h.notes) os << "# " << n << '\n';
}

void write_orbit_csv(std::ostream& os, const OrbitTrace& t) {
  os << "n,x\n";
  std::int64_t n = t.transient;
  for (double x : t.samples) {
    os << ++n << ',' << format_double(x) << '\n';
  }
}

void write_bifurcation_csv(std::ostream& os, const DiagramGrid<BifurcationColumn>& g) {
  os << "a,x\n";
  for (const auto& cell : g.cells) {
    const std::string a = format_double(cell.coords.at(0));
    for (double x : cell.payload.samples) {
      os << a << ',' << format_double(x) << '\n';
    }
  }
}

void write_period_csv(std::ostream& os, const DiagramGrid<PeriodCell>& g) {
  os << "a,b,period\n";
  for (const auto& cell : g.cells) {
    os << format_double(cell.coords.at(0)) << ',' << format_double(cell.coords.at(1)) << ','
       << (cell.payload.valid ? cell.payload.period : -1) << '\n';
  }
}

void write_regime_csv(std::ostream& os, const DiagramGrid<RegimeCell>& g) {
  os << "sigma,b,regime\n";
  for (const auto& cell : g.cells) {
    os << format_double(cell.coords.at(0)) << ',' << format_double(cell.coords.at(1)) << ','
       << (cell.payload.valid ? to_string(cell.payload.label) : std::string_view("invalid"))
       << '\n';
  }
}

void write_cobweb_csv(std::ostream& os, const CobwebTrace& c) {
  os << "segment_index,x,y\n";
  for (const auto& s : c.segments) {
    os << s.index << ',' << format_double(s.from[0]) << ',' << format_double(s.from[1]) << '\n';
    os << s.index << ',' << format_double(s.to[0]) << ',' << format_double(s.to[1]) << '\n';
  }
}

void write_potential_csv(std::ostream& os, const std::vector<std::array<double, 2>>& pts) {
  os << "x,phi\n";
  for (const auto& [x, phi] : pts) {
    os << format_double(x) << ',' << format_double(phi) << '\n';
  }
}

void write_boundary_csv(std::ostream& os, const BifurcationBoundary& bb) {
  os << "a,x1,x2,b1,b2\n";
  for (const auto& p : bb.points) {
    os << format_double(p.a) << ',' << format_double(p.x1) << ',' << format_double(p.x2) << ','
       << format_double(p.b1) << ',' << format_double(p.b2) << '\n';
  }
}

namespace {

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!t.columns.empty()) {
        throw std::runtime_error("line " + std::to_string(lineno) + ": comment after data");
      }
      t.comments.push_back(line.size() > 2 ? line.substr(2) : std::string{});
      continue;
    }
    auto fields = split_commas(line);
    if (t.columns.empty()) {
      t.columns = std::move(fields);
      continue;
    }
    if (fields.size() != t.columns.size()) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                               std::to_string(t.columns.size()) + " fields, got " +
                               std::to_string(fields.size()));
    }
    t.rows.push_back(std::move(fields));
  }
  if (t.columns.empty()) throw std::runtime_error("missing column-name line");
  return t;
}

}  // namespace ewa

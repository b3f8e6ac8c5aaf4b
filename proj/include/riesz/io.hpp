#pragma once

#include "riesz/circle.hpp"
#include "riesz/polytorus.hpp"

#include <iosfwd>
#include <string>

namespace riesz {

class CircleMeasure;

/// Shortest text form that round-trips a double exactly ("%.17g").
std::string format_double(double x);

// Coefficient files: one complex coefficient per line as "re im", a_0 first.
AnalyticPoly read_coefficients(std::istream& in);
AnalyticPoly read_coefficients_file(const std::string& path);
void write_coefficients(std::ostream& out, const AnalyticPoly& f);

// Trigonometric polynomials: one term per line,
//   "k_1 k_2 ... k_m : re im"
// with an empty index list for the constant term.
TrigPoly read_trig_poly(std::istream& in);
TrigPoly read_trig_poly_file(const std::string& path);
void write_trig_poly(std::ostream& out, const TrigPoly& t);

// Measures: header "atoms n", then n lines "theta re im", then a line
// "density" followed by one-variable trig-poly term lines.
CircleMeasure read_measure(std::istream& in);
CircleMeasure read_measure_file(const std::string& path);
void write_measure(std::ostream& out, const CircleMeasure& mu);

} // namespace riesz

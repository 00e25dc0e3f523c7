#pragma once

// CSV import/export of coefficient arrays.
//
// Embedded layout:  n,coeff_real,coeff_imag
// Exact layout:     n,cyclo_order,c0,c1,...   (power-basis coefficients in Q(zeta_order))
// A q-expansion dump starts with a comment line carrying its tags:
//   # qexpansion weight_twice=3 level=16 character=4;1;4;odd cuspidal=0 s_star=0

#include <iosfwd>
#include <string>
#include <vector>

#include "hwp/dseries.hpp"
#include "hwp/qseries.hpp"

namespace hwp {

struct CsvParseError : DomainError {
    CsvParseError(size_t line, const std::string& what)
        : DomainError("line " + std::to_string(line) + ": " + what), line(line) {}
    size_t line;
};

/// Exact rational from "3", "-7/4", "0.125", "1.5e-3".
Rational parse_rational(const std::string& text);

void write_qexpansion_csv(std::ostream& os, const QExpansion& f, bool exact);
QExpansion read_qexpansion_csv(std::istream& is);

void write_series_csv(std::ostream& os, const DirichletSeries& a, bool exact);

/// Reads values indexed n = 1, 2, ... from any of
///   n,value          (exact rational)
///   n,value_re,value_im
///   n,cyclo_order,c0,c1,...
/// The first line is a header; '#' lines are skipped. Indices must run 1, 2, 3, ...
std::vector<CycloNumber> read_values_csv(std::istream& is);

/// Parses a character written by DirichletCharacter::debug_line().
DirichletCharacter parse_character(const std::string& debug_line);

}  // namespace hwp

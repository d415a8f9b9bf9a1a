// include/svoa/modchar.hpp — the fixed stable of modular characters.
#pragma once

#include <string>

#include "svoa/qseries.hpp"

namespace svoa {

// All builders return series exact to prec_tick ticks (1 tick = q^(1/48)).
// Grid conventions: chi_half supports ticks ≡ -1 (mod 24); chi_tilde_half
// supports 2 + 48Z and carries one overall factor of sqrt(2); Eisenstein
// series, j, and the McKay–Thompson series live on integer powers of q.

// chi_half = q^(-1/48) * prod_{n>=0} (1 + q^(n+1/2)); leading coefficient 1.
QSeries chi_half(long prec_tick);

// chi_tilde_half = sqrt(2) * q^(1/24) * prod_{n>=1} (1 + q^n): the expansion
// of chi_half at the other cusp (the Weber f_2 function). Its 24th power is
// 2^12 q + O(q^2).
QSeries chi_tilde_half(long prec_tick);

// Vacuum Virasoro character q^(-c/24) prod_{n>=2} (1 - q^n)^(-1) for central
// charge c (in (1/2)Z so that -2c is an integer number of ticks).
QSeries vacuum_char(const mpq_class& c, long prec_tick);

// N=1 vacuum character q^(-c/24) prod_{n>=2} (1 + q^(n-1/2)) / (1 - q^n).
QSeries n1_vacuum_char(const mpq_class& c, long prec_tick);

enum class Sector { Plain, NS };

// Generic highest-weight module character q^(h - c/24) * prod_{n>=1} f_n with
// f_n = 1/(1-q^n) (Plain) or (1+q^(n-1/2))/(1-q^n) (NS).
QSeries verma_char(const mpq_class& c, const mpq_class& h, Sector sector, long prec_tick);

QSeries eisenstein4(long prec_tick);
QSeries eisenstein6(long prec_tick);

/// Klein j from Eisenstein series: j = 1728 E4^3 / (E4^3 - E6^2).
QSeries j_invariant(long prec_tick);
// J = j - 744, the character of the moonshine module.
QSeries j_cap(long prec_tick);

// u = (eta(q)/eta(q^2))^24 = q^(-1) prod_{n>=1} (1 - q^(2n-1))^24, the
// hauptmodul building block for the class-2 McKay–Thompson series.
QSeries u_eta_quotient(long prec_tick);

// McKay–Thompson series for classes 1A (= J), 2A (= u + 2^12/u + 24) and
// 2B (= u + 24).
QSeries mckay_thompson(const std::string& cls, long prec_tick);

}  // namespace svoa

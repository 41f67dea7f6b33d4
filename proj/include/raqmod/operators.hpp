#pragma once

#include "raqmod/series.hpp"

#include <string>
#include <utility>

namespace raqmod {

struct OperatorReport {
    std::pair<int, int> input_weights;
    std::pair<int, int> output_weights;
    std::string operator_name;
};

// d_r(L^k q^m qbar^n) = (2mL + r + k) L^k q^m qbar^n; (r,s) -> (r+1,s-1).
RAForm del(const RAForm& f);
// dbar_s(L^k q^m qbar^n) = (2nL + s + k) L^k q^m qbar^n; (r,s) -> (r-1,s+1).
RAForm dbar(const RAForm& f);
// Delta_{r,s} = -dbar_{s-1} del_r + r(s-1), termwise
// (-4mn L^2 - 2(kn+km+rn+sm) L - k(k+r+s-1)) L^k q^m qbar^n; weights unchanged.
RAForm laplace(const RAForm& f);
// h f = (r - s) f
RAForm h_op(const RAForm& f);

// (1/i pi) d/dz and (1/i pi) d/dzbar, with L = i pi (z - zbar),
// q = e^{2 pi i z}.  del = L dz + r, dbar = -L dzbar + s.
BiSeries dz(const BiSeries& f);
BiSeries dzbar(const BiSeries& f);
inline BiSeries dz(const RAForm& f) { return dz(f.series); }
inline BiSeries dzbar(const RAForm& f) { return dzbar(f.series); }

// Brackets with every d/dz replaced by dz (one factor 1/(i pi) per
// derivative).  rc1: weights (r1+r2+2, s1+s2); rc2: (r1+r2+4, s1+s2).
RAForm rc_bracket1(const RAForm& f, const RAForm& g);
RAForm rc_bracket2(const RAForm& f, const RAForm& g);
// (f,g)_2.  Equals L^{-2} times the homogeneous combination of
// dbar del (x) id, del (x) dbar, dbar (x) del, id (x) dbar del, id (x) id,
// hence carries weights (r1+r2+2, s1+s2+2).
RAForm sym_bracket2(const RAForm& f, const RAForm& g);
// s dz f + r dzbar f split into its M_{r+2,s} and M_{r,s+2} parts.
std::pair<RAForm, RAForm> d_mixed(const RAForm& f);

OperatorReport report(const std::string& op, const RAForm& in, const RAForm& out);

} // namespace raqmod

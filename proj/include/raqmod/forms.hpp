#pragma once

#include "raqmod/series.hpp"

#include <map>
#include <utility>

namespace raqmod {

// G_k = -B_k/2k + sum sigma_{k-1}(n) q^n, weights (k,0).  G_2 is not
// modular; use g2_star for modular work.
RAForm eisenstein_G(int k, int order);
RAForm g2_star(int order);  // G_2 - 1/(4L), weights (2,0)
RAForm frak_m(int order);   // 4 L G_2* = 4 L G_2 - 1, weights (1,-1)
RAForm delta_cusp(int order);
// theta(f) = (del f + n f m)/(2L) for holomorphic f of weight n.
RAForm serre_theta(const RAForm& f);

// Closed form E_{r,s} = E^0 + R_{r,s} + conj(R_{s,r}); w = r + s even > 0.
RAForm real_eisenstein(int r, int s, int order);
// Constant part of E_{r,s} alone.
RAForm real_eisenstein_constant(int r, int s, int order);

struct EisensteinFamily {
    int w = 0;
    std::map<std::pair<int, int>, RAForm> members;  // (r,s), r+s = w
};
EisensteinFamily eisenstein_family(int w, int order);

// e^0_{2k}(S) and e^0_{2k}(T) as homogeneous polynomials of degree 2k-2.
struct CocyclePoly {
    int weight = 0;  // 2k
    char gamma = 'S';
    std::map<std::pair<int, int>, Rational> coeffs;  // (i,j) -> coefficient of X^i Y^j
};
CocyclePoly eis_cocycle(int k, char gamma);

// Named forms: "G<k>", "G2star", "m", "delta", "E:r,s".  Results are cached
// in memory and, when RAQMOD_CACHE_DIR is set, on disk as JSON.
RAForm named_form(const std::string& name, int order);

} // namespace raqmod

#pragma once

#include "raqmod/json_io.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace raqmod {

using cplx = std::complex<double>;

// Edge oriented tail -> head; a missing endpoint makes it a half-edge.
struct GraphEdge {
    std::optional<int> tail;
    std::optional<int> head;
};

struct GraphSpec {
    std::vector<std::string> vertices;
    std::vector<GraphEdge> edges;
};

// {"vertices":["v1",...],"edges":[{"tail":"v1","head":null},...]}
GraphSpec graph_from_json(const json& j);
json graph_to_json(const GraphSpec& g);

// Sunset graph: one vertex with three incoming half-edges.
GraphSpec graph_c111();
// half -> v1, v1 -> v2, v2 -> half, v2 -> half.
GraphSpec graph_c211();

// Integer basis of {m in Z^E : sum_i eps_{v,i} m_i = 0 for all v}, one basis
// vector (length E) per entry.  eps is +1 for edges into v, -1 out of v.
// Raises DomainError for a disconnected graph, a self-edge or no edges.
std::vector<std::vector<long>> momentum_basis(const GraphSpec& g);

struct LatticeResult {
    double value = 0.0;           // Richardson (rho^2 S(M) - S(h)) / (rho^2 - 1), h = M/2, rho = M/h
    double raw_value = 0.0;       // S(M)
    double half_value = 0.0;      // S(h)
    double error_estimate = 0.0;  // |S(M) - S(h)|
    double imag_value = 0.0;      // Richardson imaginary part (Eisenstein sums only)
    int cutoff = 0;
    long long term_count = 0;
    std::vector<std::string> warnings;
};

json lattice_to_json(const LatticeResult& r);

// Same graph with each full edge oriented from the lower to the higher vertex
// index, half-edges pointing into their vertex, and edges sorted.  I_G is
// unchanged, so graph_sum works on this form and is exactly invariant under
// edge renumbering and reorientation.
GraphSpec canonical_graph(const GraphSpec& g);

// pi^{-E} sum over kernel coefficients a, b in [-M, M]^d of
// prod_i Im z / |m_i z + n_i|^2 with m = B a, n = B b, skipping any
// assignment with some (m_i, n_i) = (0, 0).  Deterministic for any `jobs`.
LatticeResult graph_sum(const GraphSpec& g, cplx z, int M, int jobs = 1);
LatticeResult graph_sum(const GraphSpec& g, const std::vector<std::vector<long>>& basis, cplx z, int M,
                        int jobs = 1);

// w!/(2 pi i)^{w+2} (1/2) sum_{(m,n) != 0, |m|,|n| <= M} L / ((mz+n)^{r+1} (m zbar+n)^{s+1}),
// L = -2 pi Im z, w = r + s even >= 2.  The sum is real only for r = s;
// value and imag_value hold the real and imaginary parts.
LatticeResult eisenstein_lattice(int r, int s, cplx z, int M, int jobs = 1);

} // namespace raqmod

#include "raqmod/lattice.hpp"
#include "raqmod/errors.hpp"
#include "raqmod/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>

namespace raqmod {

// ------------------------------------------------------------ graph JSON

GraphSpec graph_from_json(const json& j)
{
    try {
        GraphSpec g;
        std::map<std::string, int> index;
        for (const auto& v : j.at("vertices")) {
            const auto name = v.get<std::string>();
            if (!index.emplace(name, static_cast<int>(g.vertices.size())).second)
                throw InputError("duplicate vertex '" + name + "'");
            g.vertices.push_back(name);
        }
        auto endpoint = [&](const json& e, const char* field) -> std::optional<int> {
            if (!e.contains(field) || e.at(field).is_null())
                return std::nullopt;
            const auto name = e.at(field).get<std::string>();
            auto it = index.find(name);
            if (it == index.end())
                throw InputError("edge refers to unknown vertex '" + name + "'");
            return it->second;
        };
        for (const auto& e : j.at("edges"))
            g.edges.push_back(GraphEdge{endpoint(e, "tail"), endpoint(e, "head")});
        return g;
    } catch (const json::exception& e) {
        throw InputError(std::string("malformed graph JSON: ") + e.what());
    }
}

json graph_to_json(const GraphSpec& g)
{
    json edges = json::array();
    auto name = [&g](const std::optional<int>& v) { return v ? json(g.vertices[*v]) : json(nullptr); };
    for (const auto& e : g.edges)
        edges.push_back(json{{"tail", name(e.tail)}, {"head", name(e.head)}});
    return json{{"vertices", g.vertices}, {"edges", edges}};
}

GraphSpec graph_c111()
{
    GraphSpec g;
    g.vertices = {"v"};
    for (int i = 0; i < 3; ++i)
        g.edges.push_back(GraphEdge{std::nullopt, 0});
    return g;
}

GraphSpec graph_c211()
{
    GraphSpec g;
    g.vertices = {"v1", "v2"};
    g.edges = {GraphEdge{std::nullopt, 0}, GraphEdge{0, 1}, GraphEdge{1, std::nullopt}, GraphEdge{1, std::nullopt}};
    return g;
}

// ---------------------------------------------------------- kernel basis

static void validate(const GraphSpec& g)
{
    const int V = static_cast<int>(g.vertices.size());
    if (g.edges.empty())
        throw DomainError("graph has no edges");
    if (V == 0)
        throw DomainError("graph has no vertices");
    std::vector<int> parent(V);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](int x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<bool> touched(V, false);
    for (const auto& e : g.edges) {
        if (!e.tail && !e.head)
            throw DomainError("edge with no endpoint");
        if (e.tail && e.head && *e.tail == *e.head)
            throw DomainError("self-edge at vertex '" + g.vertices[*e.tail] + "'");
        if (e.tail)
            touched[*e.tail] = true;
        if (e.head)
            touched[*e.head] = true;
        if (e.tail && e.head)
            parent[find(*e.tail)] = find(*e.head);
    }
    for (int v = 0; v < V; ++v)
        if (!touched[v] || find(v) != find(0))
            throw DomainError("graph is disconnected");
}

std::vector<std::vector<long>> momentum_basis(const GraphSpec& g)
{
    validate(g);
    const int V = static_cast<int>(g.vertices.size());
    const int E = static_cast<int>(g.edges.size());
    std::vector<std::vector<long>> A(V, std::vector<long>(E, 0));
    for (int i = 0; i < E; ++i) {
        if (g.edges[i].head)
            A[*g.edges[i].head][i] += 1;
        if (g.edges[i].tail)
            A[*g.edges[i].tail][i] -= 1;
    }
    // Column reduction A U = [H | 0] with U unimodular; the trailing columns
    // of U are then a Z-basis of the kernel.
    std::vector<std::vector<long>> U(E, std::vector<long>(E, 0));
    for (int i = 0; i < E; ++i)
        U[i][i] = 1;
    auto col_axpy = [&](int dst, int src, long f) {  // col dst -= f col src
        for (int r = 0; r < V; ++r)
            A[r][dst] -= f * A[r][src];
        for (int r = 0; r < E; ++r)
            U[r][dst] -= f * U[r][src];
    };
    auto col_swap = [&](int a, int b) {
        for (int r = 0; r < V; ++r)
            std::swap(A[r][a], A[r][b]);
        for (int r = 0; r < E; ++r)
            std::swap(U[r][a], U[r][b]);
    };
    int pivot = 0;
    for (int row = 0; row < V && pivot < E; ++row) {
        while (true) {
            int best = -1;
            for (int c = pivot; c < E; ++c)
                if (A[row][c] != 0 && (best < 0 || std::labs(A[row][c]) < std::labs(A[row][best])))
                    best = c;
            if (best < 0)
                break;
            col_swap(pivot, best);
            bool done = true;
            for (int c = pivot + 1; c < E; ++c)
                if (A[row][c] != 0) {
                    col_axpy(c, pivot, A[row][c] / A[row][pivot]);
                    done = done && A[row][c] == 0;
                }
            if (done) {
                ++pivot;
                break;
            }
        }
    }
    std::vector<std::vector<long>> basis;
    for (int c = pivot; c < E; ++c) {
        std::vector<long> v(E);
        for (int r = 0; r < E; ++r)
            v[r] = U[r][c];
        basis.push_back(std::move(v));
    }
    return basis;
}

// ------------------------------------------------------------ lattice sums

json lattice_to_json(const LatticeResult& r)
{
    return json{{"value", r.value},
                {"raw_value", r.raw_value},
                {"half_cutoff_value", r.half_value},
                {"error_estimate", r.error_estimate},
                {"imag_value", r.imag_value},
                {"cutoff", r.cutoff},
                {"term_count", r.term_count},
                {"warnings", r.warnings}};
}

static void finish(LatticeResult& res, int M, double full, double half)
{
    const int h = M / 2;
    const double rho2 = static_cast<double>(M) * M / (static_cast<double>(h) * h);
    res.cutoff = M;
    res.raw_value = full;
    res.half_value = half;
    res.value = (rho2 * full - half) / (rho2 - 1.0);
    res.error_estimate = std::abs(full - half);
}

GraphSpec canonical_graph(const GraphSpec& g)
{
    GraphSpec c;
    c.vertices = g.vertices;
    for (const auto& e : g.edges) {
        GraphEdge f = e;
        if (f.tail && f.head && *f.tail > *f.head)
            std::swap(f.tail, f.head);
        else if (f.tail && !f.head)
            std::swap(f.tail, f.head);
        c.edges.push_back(f);
    }
    std::stable_sort(c.edges.begin(), c.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
        return std::make_pair(a.tail.value_or(-1), a.head.value_or(-1)) <
               std::make_pair(b.tail.value_or(-1), b.head.value_or(-1));
    });
    return c;
}

LatticeResult graph_sum(const GraphSpec& g, cplx z, int M, int jobs)
{
    const GraphSpec c = canonical_graph(g);
    return graph_sum(c, momentum_basis(c), z, M, jobs);
}

LatticeResult graph_sum(const GraphSpec& g, const std::vector<std::vector<long>>& basis, cplx z, int M, int jobs)
{
    if (M < 2)
        throw DomainError("graph_sum: cutoff must be >= 2");
    if (z.imag() <= 0)
        throw DomainError("graph_sum: z must lie in the upper half plane");
    const int E = static_cast<int>(g.edges.size());
    const int d = static_cast<int>(basis.size());
    LatticeResult res;
    for (const auto& v : basis)
        if (static_cast<int>(v.size()) != E)
            throw DomainError("graph_sum: basis vector length differs from edge count");
    // coef[i][j]: edge i's coefficient on basis vector j.
    std::vector<std::vector<long>> coef(E, std::vector<long>(d));
    for (int i = 0; i < E; ++i) {
        bool nonzero = false;
        for (int j = 0; j < d; ++j) {
            coef[i][j] = basis[j][i];
            nonzero = nonzero || coef[i][j] != 0;
        }
        if (!nonzero && d > 0)
            res.warnings.push_back("edge " + std::to_string(i) + " carries no momentum: every term is skipped");
    }
    // Power counting: the summand decays like |p|^{-2E} on a lattice of real
    // dimension 2d.
    if (d > 0 && 2 * E <= 2 * d)
        res.warnings.push_back("decay exponent 2E = " + std::to_string(2 * E) + " does not exceed lattice dimension 2d = " +
                               std::to_string(2 * d) + ": the sum may diverge");
    if (d == 0) {
        finish(res, M, 0.0, 0.0);
        return res;
    }
    const double x = z.real(), y = z.imag();
    const int h = M / 2;
    const int side = 2 * M + 1;
    // Free coordinates: a_1..a_{d-1}, b_0..b_{d-1}; a_0 indexes the chunk.
    const int free_dims = 2 * d - 1;
    std::vector<double> full_parts(side), half_parts(side);
    std::vector<long long> counts(side);
    parallel_for(static_cast<std::size_t>(side), jobs, [&](std::size_t chunk) {
        std::vector<int> c(free_dims, -M);
        std::vector<int> a(d), b(d);
        std::vector<long> m(E), n(E);
        KahanSum full, half;
        long long count = 0;
        a[0] = static_cast<int>(chunk) - M;
        while (true) {
            for (int j = 1; j < d; ++j)
                a[j] = c[j - 1];
            for (int j = 0; j < d; ++j)
                b[j] = c[d - 1 + j];
            bool skip = false;
            double den = 1.0;
            for (int i = 0; i < E && !skip; ++i) {
                long mi = 0, ni = 0;
                for (int j = 0; j < d; ++j) {
                    mi += coef[i][j] * a[j];
                    ni += coef[i][j] * b[j];
                }
                if (mi == 0 && ni == 0) {
                    skip = true;
                    break;
                }
                const double re = mi * x + ni, im = mi * y;
                den *= re * re + im * im;
            }
            if (!skip) {
                const double t = 1.0 / den;
                full.add(t);
                ++count;
                bool inner = true;
                for (int j = 0; j < d && inner; ++j)
                    inner = std::abs(a[j]) <= h && std::abs(b[j]) <= h;
                if (inner)
                    half.add(t);
            }
            int pos = 0;
            while (pos < free_dims && c[pos] == M)
                c[pos++] = -M;
            if (pos == free_dims)
                break;
            ++c[pos];
        }
        full_parts[chunk] = full.value();
        half_parts[chunk] = half.value();
        counts[chunk] = count;
    });
    const double scale = std::pow(y / M_PI, E);
    finish(res, M, scale * pairwise_sum(full_parts), scale * pairwise_sum(half_parts));
    res.term_count = std::accumulate(counts.begin(), counts.end(), 0LL);
    return res;
}

LatticeResult eisenstein_lattice(int r, int s, cplx z, int M, int jobs)
{
    const int w = r + s;
    if (r < 0 || s < 0 || w < 2 || w % 2 != 0)
        throw DomainError("eisenstein_lattice: need r,s >= 0 and r+s even >= 2");
    if (M < 2)
        throw DomainError("eisenstein_lattice: cutoff must be >= 2");
    if (z.imag() <= 0)
        throw DomainError("eisenstein_lattice: z must lie in the upper half plane");
    const int h = M / 2;
    const int side = 2 * M + 1;
    std::vector<double> re_full(side), im_full(side), re_half(side), im_half(side);
    parallel_for(static_cast<std::size_t>(side), jobs, [&](std::size_t chunk) {
        const int m = static_cast<int>(chunk) - M;
        KahanSum rf, imf, rh, imh;
        for (int n = -M; n <= M; ++n) {
            if (m == 0 && n == 0)
                continue;
            const cplx u = 1.0 / (static_cast<double>(m) * z + static_cast<double>(n));
            cplx t = 1.0;
            for (int e = 0; e <= r; ++e)
                t *= u;
            const cplx ub = std::conj(u);
            for (int e = 0; e <= s; ++e)
                t *= ub;
            rf.add(t.real());
            imf.add(t.imag());
            if (std::abs(m) <= h && std::abs(n) <= h) {
                rh.add(t.real());
                imh.add(t.imag());
            }
        }
        re_full[chunk] = rf.value();
        im_full[chunk] = imf.value();
        re_half[chunk] = rh.value();
        im_half[chunk] = imh.value();
    });
    // w!/(2 pi i)^{w+2} (1/2) L with i^{w+2} = (-1)^{(w+2)/2}.
    double pref = std::tgamma(w + 1.0) / std::pow(2.0 * M_PI, w + 2) * 0.5 * (-2.0 * M_PI * z.imag());
    if (((w + 2) / 2) % 2)
        pref = -pref;
    LatticeResult res;
    const cplx full(pairwise_sum(re_full), pairwise_sum(im_full));
    const cplx half(pairwise_sum(re_half), pairwise_sum(im_half));
    LatticeResult im;
    finish(im, M, pref * full.imag(), pref * half.imag());
    finish(res, M, pref * full.real(), pref * half.real());
    res.imag_value = im.value;
    res.error_estimate = std::hypot(res.error_estimate, im.error_estimate);
    res.term_count = static_cast<long long>(side) * side - 1;
    return res;
}

} // namespace raqmod

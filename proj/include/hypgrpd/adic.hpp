#pragma once

// Stationary ordered Bratteli diagrams: paths are edge sequences x1 x2 ...
// with o(x_{k+1}) fed by r(x_k)'s level, adjacency r(x_k) = o... see
// path_ok. The Vershik successor increments the first non-maximal edge
// within its fiber and resets everything before it to the minimal run.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "base.hpp"
#include "json_util.hpp"
#include "quadratic.hpp"

namespace hypgrpd {

struct AdicSystem {
    std::vector<std::string> vertices;
    std::vector<std::pair<int, int>> edge_ov;     // per edge: (origin, range)
    std::vector<std::vector<int>> fiber;          // per vertex: ordered incoming edges
    std::vector<int> pos_in_fiber;                // per edge: its index in fiber[range]

    int vcount() const { return static_cast<int>(vertices.size()); }
    int ecount() const { return static_cast<int>(edge_ov.size()); }
    int origin(int e) const { return edge_ov[static_cast<size_t>(e)].first; }
    int range(int e) const { return edge_ov[static_cast<size_t>(e)].second; }

    void finish() {
        fiber.assign(static_cast<size_t>(vcount()), {});
        pos_in_fiber.assign(static_cast<size_t>(ecount()), -1);
        for (int e = 0; e < ecount(); ++e) {
            if (origin(e) < 0 || origin(e) >= vcount() || range(e) < 0 || range(e) >= vcount())
                throw input_error("edge endpoint out of range");
            pos_in_fiber[static_cast<size_t>(e)] =
                static_cast<int>(fiber[static_cast<size_t>(range(e))].size());
            fiber[static_cast<size_t>(range(e))].push_back(e);
        }
        std::vector<char> emits(static_cast<size_t>(vcount()), 0);
        for (int e = 0; e < ecount(); ++e) emits[static_cast<size_t>(origin(e))] = 1;
        for (int v = 0; v < vcount(); ++v) {
            if (fiber[static_cast<size_t>(v)].empty())
                throw input_error("vertex '" + vertices[static_cast<size_t>(v)] + "' has no incoming edge");
            if (!emits[static_cast<size_t>(v)])
                throw input_error("vertex '" + vertices[static_cast<size_t>(v)] + "' has no outgoing edge");
        }
    }

    // substitution matrix: m[u][v] = number of edges u -> v
    std::vector<std::vector<long long>> matrix() const {
        std::vector<std::vector<long long>> m(static_cast<size_t>(vcount()),
                                              std::vector<long long>(static_cast<size_t>(vcount()), 0));
        for (int e = 0; e < ecount(); ++e) ++m[static_cast<size_t>(origin(e))][static_cast<size_t>(range(e))];
        return m;
    }

    bool path_ok(const std::vector<int>& p) const {
        for (size_t i = 0; i < p.size(); ++i) {
            if (p[i] < 0 || p[i] >= ecount()) return false;
            if (i + 1 < p.size() && origin(p[i + 1]) != range(p[i])) return false;
        }
        return !p.empty();
    }

    int min_edge_into(int v) const { return fiber[static_cast<size_t>(v)].front(); }
    int max_edge_into(int v) const { return fiber[static_cast<size_t>(v)].back(); }
    bool is_max(int e) const { return e == max_edge_into(range(e)); }
    bool is_min(int e) const { return e == min_edge_into(range(e)); }

    json to_json() const {
        json j;
        j["vertices"] = vertices;
        json edges = json::array();
        for (int e = 0; e < ecount(); ++e)
            edges.push_back(json::array({vertices[static_cast<size_t>(origin(e))],
                                         vertices[static_cast<size_t>(range(e))]}));
        j["edges"] = edges;
        json ord = json::object();
        for (int v = 0; v < vcount(); ++v) {
            json f = json::array();
            for (int e : fiber[static_cast<size_t>(v)]) f.push_back(e + 1);
            ord[vertices[static_cast<size_t>(v)]] = f;
        }
        j["fiber_order"] = ord;  // 1-based edge ids in listing order
        return j;
    }

    static AdicSystem from_json(const json& j) {
        AdicSystem s;
        if (!j.contains("vertices") || !j.contains("edges"))
            throw input_error("diagram json needs 'vertices' and 'edges'");
        std::map<std::string, int> vid;
        for (auto& v : j["vertices"]) {
            std::string n = v.get<std::string>();
            if (vid.count(n)) throw input_error("duplicate vertex '" + n + "'");
            vid.emplace(n, s.vcount());
            s.vertices.push_back(n);
        }
        for (auto& e : j["edges"]) {
            if (!e.is_array() || e.size() != 2) throw input_error("edge must be [origin, range]");
            auto o = vid.find(e[0].get<std::string>());
            auto r = vid.find(e[1].get<std::string>());
            if (o == vid.end() || r == vid.end()) throw input_error("edge references unknown vertex");
            s.edge_ov.emplace_back(o->second, r->second);
        }
        // fiber order defaults to edge listing order; an explicit order permutes it
        s.finish();
        if (j.contains("fiber_order")) {
            for (auto& [name, arr] : j["fiber_order"].items()) {
                auto v = vid.find(name);
                if (v == vid.end()) throw input_error("fiber order references unknown vertex");
                std::vector<int> f;
                for (auto& ix : arr) f.push_back(ix.get<int>() - 1);
                auto& cur = s.fiber[static_cast<size_t>(v->second)];
                std::vector<int> sorted_cur = cur, sorted_f = f;
                std::sort(sorted_cur.begin(), sorted_cur.end());
                std::sort(sorted_f.begin(), sorted_f.end());
                if (sorted_cur != sorted_f)
                    throw input_error("fiber order for '" + name + "' must permute its incoming edges");
                cur = f;
                for (size_t i = 0; i < cur.size(); ++i)
                    s.pos_in_fiber[static_cast<size_t>(cur[i])] = static_cast<int>(i);
            }
        }
        return s;
    }
};

// preset diagrams
inline AdicSystem adic_preset(const std::string& name) {
    AdicSystem s;
    if (name == "golden") {
        // two vertices, five edges; Perron value (3+sqrt5)/2
        s.vertices = {"A", "B"};
        s.edge_ov = {{0, 0}, {0, 0}, {1, 0}, {0, 1}, {1, 1}};
        s.finish();
        return s;
    }
    if (name == "fibonacci") {
        s.vertices = {"A", "B"};
        s.edge_ov = {{0, 0}, {1, 0}, {0, 1}};
        s.finish();
        return s;
    }
    throw input_error("unknown diagram preset '" + name + "'");
}

// ---- Vershik successor -------------------------------------------------------

struct VershikResult {
    std::vector<int> path;
    bool wrapped;  // every edge was maximal: restarted from the minimal path
};

// successor of a finite path: increment the first non-maximal coordinate in
// its fiber, reset coordinates before it to the minimal chain feeding the
// new edge's origin
inline VershikResult vershik_successor(const AdicSystem& s, std::vector<int> p) {
    if (!s.path_ok(p)) throw input_error("not an admissible path");
    for (size_t k = 0; k < p.size(); ++k) {
        if (s.is_max(p[k])) continue;
        int nxt = s.fiber[static_cast<size_t>(s.range(p[k]))]
                         [static_cast<size_t>(s.pos_in_fiber[static_cast<size_t>(p[k])] + 1)];
        p[k] = nxt;
        for (size_t i = k; i-- > 0;) p[i] = s.min_edge_into(s.origin(p[i + 1]));
        return {p, false};
    }
    // all maximal: wrap to the minimal path with the same final origin chain
    std::vector<int> q = p;
    // keep the range of the last edge, reset everything to minimal
    for (size_t i = q.size(); i-- > 0;) {
        int v = (i + 1 < q.size()) ? s.origin(q[i + 1]) : s.range(q[i]);
        q[i] = s.min_edge_into(v);
    }
    return {q, true};
}

inline std::vector<std::vector<int>> all_paths(const AdicSystem& s, int length, long long budget = 1 << 20) {
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> partial;
    for (int e = 0; e < s.ecount(); ++e) partial.push_back({e});
    for (int l = 1; l < length; ++l) {
        std::vector<std::vector<int>> next;
        for (auto& p : partial)
            for (int e = 0; e < s.ecount(); ++e)
                if (s.origin(e) == s.range(p.back())) {
                    next.push_back(p);
                    next.back().push_back(e);
                    if (static_cast<long long>(next.size()) > budget)
                        throw budget_error("path enumeration exceeded budget");
                }
        partial = next;
    }
    return partial;
}

// ---- tiles and substitution -----------------------------------------------------

inline int tile_of(const AdicSystem& s, const std::vector<int>& p) { return s.range(p.front()); }

// reading the fiber of v top-down lists the subtiles of tile v
inline std::vector<int> substitution_of(const AdicSystem& s, int v) {
    std::vector<int> out;
    for (int e : s.fiber[static_cast<size_t>(v)]) out.push_back(s.origin(e));
    return out;
}

inline std::vector<int> substitution_expand(const AdicSystem& s, int v, int iterations,
                                            long long budget = 1 << 22) {
    std::vector<int> word{v};
    for (int it = 0; it < iterations; ++it) {
        std::vector<int> next;
        for (int t : word) {
            auto sub = substitution_of(s, t);
            next.insert(next.end(), sub.begin(), sub.end());
            if (static_cast<long long>(next.size()) > budget)
                throw budget_error("substitution word exceeded budget");
        }
        word = next;
    }
    return word;
}

// walk the Vershik orbit of a finite path; emit the tile at the start and
// after every step that resets the first coordinate to its fiber minimum
struct ItineraryResult {
    std::vector<int> tiles;
    std::vector<long long> frequency;  // per vertex
    bool wrapped = false;
};

inline ItineraryResult leaf_itinerary(const AdicSystem& s, std::vector<int> p, long long steps) {
    if (!s.path_ok(p)) throw input_error("not an admissible path");
    ItineraryResult out;
    out.frequency.assign(static_cast<size_t>(s.vcount()), 0);
    auto emit = [&](int tile) {
        out.tiles.push_back(tile);
        ++out.frequency[static_cast<size_t>(tile)];
    };
    emit(tile_of(s, p));
    for (long long i = 0; i < steps; ++i) {
        int before = p.front();
        auto r = vershik_successor(s, p);
        p = r.path;
        if (r.wrapped) out.wrapped = true;
        if (p.front() != before && s.is_min(p.front())) emit(tile_of(s, p));
    }
    return out;
}

// ---- tile lengths (Perron data) ---------------------------------------------------

struct TileLengths {
    bool exact;                       // 2x2 case: quadratic surds, verified exactly
    QuadSurd value;                   // Perron eigenvalue (exact case)
    std::vector<QuadSurd> lengths;    // right eigenvector, first entry 1 (exact case)
    Rat lo, hi;                       // certified interval (general case)
    std::vector<Rat> approx_lengths;  // eigenvector approximation (general case)
    bool primitive;
};

inline bool matrix_primitive(const std::vector<std::vector<long long>>& m) {
    size_t n = m.size();
    // (I + M)^(n-1) > 0 gives irreducibility; primitivity then follows for
    // aperiodic diagonals, checked by squaring M up to n^2 steps
    auto mul = [&](const std::vector<std::vector<long long>>& a,
                   const std::vector<std::vector<long long>>& b) {
        std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t k = 0; k < n; ++k)
                if (a[i][k])
                    for (size_t j = 0; j < n; ++j)
                        if (b[k][j]) c[i][j] = std::min<long long>(1, c[i][j] + a[i][k] * b[k][j]);
        return c;
    };
    std::vector<std::vector<long long>> pw = m;
    for (size_t step = 0; step < n * n + 2; ++step) {
        bool all = true;
        for (auto& row : pw)
            for (auto x : row)
                if (!x) all = false;
        if (all) return true;
        pw = mul(pw, m);
    }
    return false;
}

inline TileLengths tile_lengths(const std::vector<std::vector<long long>>& m, int iters = 64) {
    size_t n = m.size();
    if (n == 0) throw input_error("empty matrix");
    for (auto& row : m)
        if (row.size() != n) throw input_error("matrix must be square");
    TileLengths out{};
    out.primitive = matrix_primitive(m);
    if (!out.primitive) throw input_error("substitution matrix is not primitive");
    if (n == 2) {
        long long tr = m[0][0] + m[1][1];
        long long det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        long long D = tr * tr - 4 * det;
        // Perron value (tr + sqrt D)/2; D > 0 for primitive nonnegative matrices
        long long sq = 0;
        while ((sq + 1) * (sq + 1) <= D) ++sq;
        if (sq * sq == D) {
            // rational eigenvalue: keep the surd form with radicand 1
            out.value = QuadSurd{Rat(tr) / 2, Rat(sq) / 2, 1};
        } else {
            out.value = QuadSurd{Rat(tr) / 2, Rat(1) / 2, D};
        }
        out.lengths.push_back(QuadSurd{1, 0, out.value.d});
        // (M - Λ I) L = 0 with L1 = 1: L2 = (Λ - m00)/m01 when m01 != 0
        QuadSurd L2{};
        if (m[0][1] != 0) {
            L2 = surd_mul(surd_add(out.value, QuadSurd{Rat(-m[0][0]), 0, out.value.d}),
                          QuadSurd{Rat(1, m[0][1]), 0, out.value.d});
        } else {
            // upper triangular: eigenvector is (1, 0) only if m10 = 0 too; primitive
            // matrices never get here
            throw input_error("degenerate matrix for exact tile lengths");
        }
        out.lengths.push_back(L2);
        // verify M L = Λ L exactly
        for (size_t i = 0; i < 2; ++i) {
            QuadSurd lhs{0, 0, out.value.d};
            for (size_t j = 0; j < 2; ++j)
                lhs = surd_add(lhs, surd_mul(QuadSurd{Rat(m[i][j]), 0, out.value.d}, out.lengths[j]));
            QuadSurd rhs = surd_mul(out.value, out.lengths[i]);
            QuadSurd diff = surd_add(lhs, surd_mul(QuadSurd{-1, 0, out.value.d}, rhs));
            if (surd_sign(diff) != 0) throw violation_error("eigenvector identity failed");
        }
        out.exact = true;
        out.lo = out.hi = 0;
        return out;
    }
    // general case: power iteration in exact rationals with a certified
    // Collatz-Wielandt interval around the Perron value
    std::vector<Rat> x(n, 1);
    for (int it = 0; it < iters; ++it) {
        std::vector<Rat> y(n, 0);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) y[i] += Rat(m[i][j]) * x[j];
        Rat norm = y[0];
        for (auto& v : y)
            if (v > norm) norm = v;
        for (auto& v : y) v /= norm;
        x = y;
    }
    std::vector<Rat> y(n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) y[i] += Rat(m[i][j]) * x[j];
    out.lo = y[0] / x[0];
    out.hi = y[0] / x[0];
    for (size_t i = 1; i < n; ++i) {
        Rat q = y[i] / x[i];
        if (q < out.lo) out.lo = q;
        if (q > out.hi) out.hi = q;
    }
    Rat norm = x[0];
    for (auto& v : x)
        if (v > norm) norm = v;
    for (auto& v : x) out.approx_lengths.push_back(v / norm);
    out.exact = false;
    return out;
}

}  // namespace hypgrpd

#pragma once

// Coarse hyperbolicity estimators on finite graphs. All Gromov products
// are half-integers, handled as doubled long longs internally.

#include <atomic>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cocycle.hpp"
#include "parallel.hpp"

namespace hypgrpd {

inline Rat gromov_product(const Graph& g, int x0, int x, int y) {
    auto d0 = g.bfs(x0);
    auto dx = g.bfs(x);
    if (d0[static_cast<size_t>(x)] < 0 || d0[static_cast<size_t>(y)] < 0 || dx[static_cast<size_t>(y)] < 0)
        throw input_error("gromov product needs all three vertices in one component");
    long long two = static_cast<long long>(d0[static_cast<size_t>(x)]) + d0[static_cast<size_t>(y)] -
                    dx[static_cast<size_t>(y)];
    return Rat(two, 2);
}

// (x,z)_p >= min((x,y)_p, (y,z)_p) - delta over all triples in the ball;
// pairs with x == y use the log-scale convention l(x,x) = +infinity.
// Degenerate triples never create positive defect (a product (x,y)_p is at
// most min(|x|, |y|)), so the scan runs over the full index cube and the
// inner loop vectorizes. The product matrix is symmetric: row k serves as
// column k.
inline Rat four_point_delta(const Graph& g, int x0, int radius) {
    if (x0 < 0 || x0 >= g.vcount()) throw input_error("basepoint out of range");
    auto b = g.ball(x0, radius);
    size_t nb = b.size();
    auto d0 = g.bfs(x0);
    // doubled Gromov products between ball vertices, flat row-major
    std::vector<std::int32_t> p2(nb * nb);
    for (size_t i = 0; i < nb; ++i) {
        auto di = g.bfs(b[i]);
        for (size_t j = 0; j < nb; ++j) {
            if (di[static_cast<size_t>(b[j])] < 0)
                throw input_error("ball is not contained in one component");
            p2[i * nb + j] = static_cast<std::int32_t>(
                d0[static_cast<size_t>(b[i])] + d0[static_cast<size_t>(b[j])] -
                di[static_cast<size_t>(b[j])]);
        }
    }
    std::vector<long long> best(static_cast<size_t>(worker_count()), 0);
    std::atomic<unsigned> slot{0};
    parallel_for(static_cast<long long>(nb), [&](long long lo, long long hi) {
        unsigned my = slot++;
        std::int32_t loc = 0;
        for (size_t i = static_cast<size_t>(lo); i < static_cast<size_t>(hi); ++i) {
            const std::int32_t* ri = &p2[i * nb];
            for (size_t k = 0; k < nb; ++k) {
                const std::int32_t* rk = &p2[k * nb];
                std::int32_t m = INT32_MIN;
                for (size_t j = 0; j < nb; ++j) m = std::max(m, std::min(ri[j], rk[j]));
                loc = std::max(loc, static_cast<std::int32_t>(m - ri[k]));
            }
        }
        best[my] = std::max(best[my], static_cast<long long>(loc));
    });
    long long out = 0;
    for (auto v : best) out = std::max(out, v);
    return Rat(out, 2);
}

// ---- thin triangles -------------------------------------------------------
//
// Sides are vertex geodesics together with the midpoints of their edges,
// so thinness values land in (1/2) Z (a degenerate triangle on an even
// cycle pins 3/2, which plain vertex distances cannot see). Distances
// between the subdivision points are derived from the ambient graph metric.

struct ThinOptions {
    bool exhaustive = false;
    long long samples = 400;
    std::uint64_t seed = 1;
    long long geodesic_budget = 200000;  // per pair, exhaustive mode
};

struct ThinResult {
    Rat delta;
    bool exhaustive;
    long long triangles_checked;
};

namespace detail {

// point on a subdivided edge: a == b vertex, else midpoint of {a, b}
struct SubPoint {
    int a, b;
};

inline long long sub_dist2(const std::vector<std::vector<int>>& d, const SubPoint& p, const SubPoint& q) {
    if (p.a == p.b && q.a == q.b) return 2LL * d[static_cast<size_t>(p.a)][static_cast<size_t>(q.a)];
    if (p.a == p.b) {
        long long m = std::min(d[static_cast<size_t>(p.a)][static_cast<size_t>(q.a)],
                               d[static_cast<size_t>(p.a)][static_cast<size_t>(q.b)]);
        return 2 * m + 1;
    }
    if (q.a == q.b) return sub_dist2(d, q, p);
    if ((p.a == q.a && p.b == q.b) || (p.a == q.b && p.b == q.a)) return 0;
    long long m = std::min(std::min(d[static_cast<size_t>(p.a)][static_cast<size_t>(q.a)],
                                    d[static_cast<size_t>(p.a)][static_cast<size_t>(q.b)]),
                           std::min(d[static_cast<size_t>(p.b)][static_cast<size_t>(q.a)],
                                    d[static_cast<size_t>(p.b)][static_cast<size_t>(q.b)]));
    return 2 * m + 2;
}

inline std::vector<SubPoint> side_points(const std::vector<int>& path) {
    std::vector<SubPoint> pts;
    for (size_t i = 0; i < path.size(); ++i) {
        pts.push_back({path[i], path[i]});
        if (i + 1 < path.size()) pts.push_back({path[i], path[i + 1]});
    }
    return pts;
}

// doubled thinness of one triangle given its three sides
inline long long triangle_thin2(const std::vector<std::vector<int>>& d,
                                const std::vector<int>& s1, const std::vector<int>& s2,
                                const std::vector<int>& s3) {
    long long worst = 0;
    const std::vector<int>* sides[3] = {&s1, &s2, &s3};
    for (int i = 0; i < 3; ++i) {
        auto mine = side_points(*sides[i]);
        std::vector<SubPoint> others;
        for (int j = 0; j < 3; ++j)
            if (j != i) {
                auto o = side_points(*sides[j]);
                others.insert(others.end(), o.begin(), o.end());
            }
        for (auto& p : mine) {
            long long best = -1;
            for (auto& q : others) {
                long long v = sub_dist2(d, p, q);
                if (best < 0 || v < best) best = v;
                if (best == 0) break;
            }
            worst = std::max(worst, best);
        }
    }
    return worst;
}

inline void all_geodesics(const Graph& g, const std::vector<int>& dist_from_a, int a, int b,
                          long long budget, std::vector<std::vector<int>>& out) {
    // walk backwards from b through BFS predecessors
    std::vector<int> cur{b};
    std::function<void(int)> rec = [&](int v) {
        if (v == a) {
            out.emplace_back(cur.rbegin(), cur.rend());
            if (static_cast<long long>(out.size()) > budget)
                throw budget_error("geodesic enumeration exceeded budget");
            return;
        }
        for (int w : g.adj[static_cast<size_t>(v)])
            if (dist_from_a[static_cast<size_t>(w)] == dist_from_a[static_cast<size_t>(v)] - 1) {
                cur.push_back(w);
                rec(w);
                cur.pop_back();
            }
    };
    rec(b);
}

inline std::vector<int> random_geodesic(const Graph& g, const std::vector<int>& dist_from_a, int a,
                                        int b, std::mt19937_64& rng) {
    std::vector<int> rev{b};
    int v = b;
    while (v != a) {
        std::vector<int> preds;
        for (int w : g.adj[static_cast<size_t>(v)])
            if (dist_from_a[static_cast<size_t>(w)] == dist_from_a[static_cast<size_t>(v)] - 1)
                preds.push_back(w);
        v = preds[rng() % preds.size()];
        rev.push_back(v);
    }
    return {rev.rbegin(), rev.rend()};
}

}  // namespace detail

inline ThinResult thin_triangle_delta(const Graph& g, int x0, int radius, ThinOptions opt = {}) {
    auto b = g.ball(x0, radius);
    auto d = g.all_pairs();
    for (int u : b)
        for (int v : b)
            if (d[static_cast<size_t>(u)][static_cast<size_t>(v)] < 0)
                throw input_error("ball spans multiple components");
    long long worst2 = 0;
    long long count = 0;
    if (opt.exhaustive) {
        std::vector<std::vector<int>> dist_cache(static_cast<size_t>(g.vcount()));
        auto dist_from = [&](int a) -> const std::vector<int>& {
            auto& slot = dist_cache[static_cast<size_t>(a)];
            if (slot.empty()) slot = g.bfs(a);
            return slot;
        };
        for (size_t i = 0; i < b.size(); ++i)
            for (size_t j = i + 1; j < b.size(); ++j)
                for (size_t k = j + 1; k < b.size(); ++k) {
                    int A = b[i], B = b[j], C = b[k];
                    std::vector<std::vector<int>> gab, gbc, gac;
                    detail::all_geodesics(g, dist_from(A), A, B, opt.geodesic_budget, gab);
                    detail::all_geodesics(g, dist_from(B), B, C, opt.geodesic_budget, gbc);
                    detail::all_geodesics(g, dist_from(A), A, C, opt.geodesic_budget, gac);
                    for (auto& s1 : gab)
                        for (auto& s2 : gbc)
                            for (auto& s3 : gac) {
                                worst2 = std::max(worst2, detail::triangle_thin2(d, s1, s2, s3));
                                ++count;
                            }
                }
    } else {
        std::mt19937_64 rng(opt.seed);
        for (long long s = 0; s < opt.samples; ++s) {
            int A = b[rng() % b.size()], B = b[rng() % b.size()], C = b[rng() % b.size()];
            auto da = g.bfs(A);
            auto db = g.bfs(B);
            auto s1 = detail::random_geodesic(g, da, A, B, rng);
            auto s2 = detail::random_geodesic(g, db, B, C, rng);
            auto s3 = detail::random_geodesic(g, da, A, C, rng);
            worst2 = std::max(worst2, detail::triangle_thin2(d, s1, s2, s3));
            ++count;
        }
    }
    return {Rat(worst2, 2), opt.exhaustive, count};
}

struct BusemannInterval {
    long long lo, hi;
    long long tail_from;  // first ray index used
};

// difference d(x, r_n) - d(y, r_n) over the tail (last third) of the ray
inline BusemannInterval busemann_estimate(const Graph& g, const std::vector<int>& ray, int x, int y,
                                          size_t min_length = 3) {
    if (ray.size() < min_length)
        throw input_error("ray shorter than the configured horizon " + std::to_string(min_length));
    for (size_t i = 0; i + 1 < ray.size(); ++i)
        if (!g.adjacent(ray[i], ray[i + 1])) throw input_error("ray is not an edge path");
    auto dx = g.bfs(x);
    auto dy = g.bfs(y);
    size_t from = ray.size() - (ray.size() + 2) / 3;
    BusemannInterval out{0, 0, static_cast<long long>(from)};
    bool first = true;
    for (size_t i = from; i < ray.size(); ++i) {
        int v = ray[i];
        if (dx[static_cast<size_t>(v)] < 0 || dy[static_cast<size_t>(v)] < 0)
            throw input_error("ray leaves the component of x, y");
        long long val = static_cast<long long>(dx[static_cast<size_t>(v)]) - dy[static_cast<size_t>(v)];
        if (first || val < out.lo) out.lo = val;
        if (first || val > out.hi) out.hi = val;
        first = false;
    }
    return out;
}

struct MinLevelResult {
    long long min_lambda;   // min over every geodesic
    long long max_min;      // best achievable min over a single geodesic
    long long spread;       // max_min - min_lambda
};

// smallest lambda visited by geodesics between u and v, and the spread
// between the pessimal and optimal geodesic choices
inline MinLevelResult min_level_scale(const CocycleGraph& cg, int u, int v) {
    const Graph& g = cg.g;
    auto du = g.bfs(u);
    auto dv = g.bfs(v);
    if (du[static_cast<size_t>(v)] < 0) throw input_error("vertices in different components");
    long long D = du[static_cast<size_t>(v)];
    if (u == v) return {cg.lambda[static_cast<size_t>(u)], cg.lambda[static_cast<size_t>(u)], 0};
    // vertices on some geodesic
    std::vector<int> on;
    long long minmin = 0;
    bool first = true;
    for (int w = 0; w < g.vcount(); ++w)
        if (du[static_cast<size_t>(w)] >= 0 && dv[static_cast<size_t>(w)] >= 0 &&
            du[static_cast<size_t>(w)] + dv[static_cast<size_t>(w)] == D) {
            on.push_back(w);
            if (first || cg.lambda[static_cast<size_t>(w)] < minmin) minmin = cg.lambda[static_cast<size_t>(w)];
            first = false;
        }
    // max over geodesics of their own min-lambda: highest threshold t such
    // that the subgraph {lambda >= t} still realizes d(u, v) = D
    std::vector<long long> cand;
    for (int w : on) cand.push_back(cg.lambda[static_cast<size_t>(w)]);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    long long maxmin = minmin;
    for (auto it = cand.rbegin(); it != cand.rend(); ++it) {
        long long t = *it;
        // BFS inside {lambda >= t}
        if (cg.lambda[static_cast<size_t>(u)] < t || cg.lambda[static_cast<size_t>(v)] < t) continue;
        std::vector<int> dist(static_cast<size_t>(g.vcount()), -1);
        std::deque<int> q{u};
        dist[static_cast<size_t>(u)] = 0;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : g.adj[static_cast<size_t>(x)])
                if (dist[static_cast<size_t>(y)] < 0 && cg.lambda[static_cast<size_t>(y)] >= t) {
                    dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
                    q.push_back(y);
                }
        }
        if (dist[static_cast<size_t>(v)] == D) {
            maxmin = t;
            break;
        }
    }
    return {minmin, maxmin, maxmin - minmin};
}

}  // namespace hypgrpd

#pragma once

// Directed structure on graded graphs: quasi-geodesic constants for
// descending paths, the convergence criterion for pairs of paths, and the
// coarsened level graph with its geodesic shape properties.

#include <deque>
#include <functional>
#include <string>
#include <vector>

#include "cocycle.hpp"

namespace hypgrpd {

struct QgConstants {
    Rat Lambda;
    Rat DeltaPrime;
    Rat eta_used;        // effective defect fed into the formula
    bool eta_effective;  // true when eta == 0 forced the minimal-drop substitute
    bool verified;       // parameter check on enumerated directed paths
    std::string violation;
};

// Lambda = (Delta + eta) / eta with the minimal positive arrow drop standing
// in for eta when the declared cocycle is exact (eta == 0). Verifies
// |i - j| <= Lambda * |lambda(p_i) - lambda(p_j)| on all maximal descending
// paths inside the graph, which covers their subpaths.
inline QgConstants directed_path_qg_constants(const CocycleGraph& cg, long long path_budget = 100000) {
    QgConstants out{};
    Rat eta_eff = cg.eta;
    out.eta_effective = false;
    if (eta_eff == 0) {
        eta_eff = Rat(cg.min_drop());
        out.eta_effective = true;
    }
    out.eta_used = eta_eff;
    out.Lambda = (Rat(cg.Delta) + cg.eta) / eta_eff;
    out.DeltaPrime = 1;
    out.verified = true;
    long long checked = 0;
    for (int s = 0; s < cg.g.vcount() && out.verified; ++s) {
        // skip starts that are arrow-targets: their paths are subpaths of longer ones
        bool is_target = false;
        for (int w : cg.g.adj[static_cast<size_t>(s)])
            if (cg.lambda[static_cast<size_t>(w)] > cg.lambda[static_cast<size_t>(s)]) {
                is_target = true;
                break;
            }
        if (is_target) continue;
        auto paths = directed_paths_from(cg, s, cg.g.vcount() + 1, path_budget - checked);
        checked += static_cast<long long>(paths.size());
        for (auto& p : paths) {
            for (size_t i = 0; i < p.size() && out.verified; ++i)
                for (size_t j = i + 1; j < p.size(); ++j) {
                    long long gap = std::llabs(cg.lambda[static_cast<size_t>(p[i])] -
                                               cg.lambda[static_cast<size_t>(p[j])]);
                    if (Rat(static_cast<long long>(j - i)) > out.Lambda * Rat(gap)) {
                        out.verified = false;
                        out.violation = "indices " + std::to_string(i) + "," + std::to_string(j) +
                                        " on a path from " + cg.g.names[static_cast<size_t>(s)];
                        break;
                    }
                }
            if (!out.verified) break;
        }
    }
    return out;
}

struct ConvergenceResult {
    bool ok;
    long long rho0;
    long long k_m;
    bool vacuous;        // no qualifying pair at any depth
    std::string detail;  // set when ok == false
    long long pairs_scanned;
    std::vector<long long> profile;  // profile[t] = max distance at min-depth t (-1: none)
};

// Convergence of directed paths: over all pairs of directed paths whose
// starts are <= m apart, the graph distance between path points deeper than
// k with lambda within Delta1 of each other must stabilize. Exact over all
// paths when arrow drops are uniform (depth == drop / d0); otherwise falls
// back to bounded path enumeration.
inline ConvergenceResult convergence_criterion(const CocycleGraph& cg, long long Delta1, long long m,
                                               long long horizon, long long budget = 50000000) {
    if (Rat(Delta1) < Rat(cg.Delta) + cg.eta)
        throw input_error("Delta1 must be at least Delta + eta");
    if (!cg.out_complete())
        throw input_error("graph has unflagged dead ends; mark boundary vertices truncated");
    ConvergenceResult res{};
    res.ok = true;
    int n = cg.g.vcount();
    auto dist = cg.g.all_pairs();

    // g[t] = max distance among qualifying pairs whose min depth is exactly t
    std::vector<long long> gmax(static_cast<size_t>(horizon) + 2, -1);

    long long d0 = 1;
    bool uniform = cg.uniform_drop(&d0);

    auto feed = [&](int a, int b, long long depth_a, long long depth_b) {
        if (depth_a < 1 || depth_b < 1) return;
        if (depth_a > horizon || depth_b > horizon) return;
        if (std::llabs(cg.lambda[static_cast<size_t>(a)] - cg.lambda[static_cast<size_t>(b)]) > Delta1) return;
        ++res.pairs_scanned;
        long long t = std::min(depth_a, depth_b);
        int dd = dist[static_cast<size_t>(a)][static_cast<size_t>(b)];
        if (dd < 0) {
            res.ok = false;
            if (res.detail.empty())
                res.detail = "qualifying points " + cg.g.names[static_cast<size_t>(a)] + " and " +
                             cg.g.names[static_cast<size_t>(b)] + " lie in different components";
            return;
        }
        gmax[static_cast<size_t>(t)] = std::max(gmax[static_cast<size_t>(t)], static_cast<long long>(dd));
    };

    if (uniform) {
        // depth of a descendant is its lambda drop divided by the uniform step
        auto arrows = cg.arrow_adj();
        auto descend = [&](int s) {
            std::vector<std::pair<int, long long>> out;
            std::vector<char> seen(static_cast<size_t>(n), 0);
            std::deque<int> q{s};
            seen[static_cast<size_t>(s)] = 1;
            while (!q.empty()) {
                int x = q.front();
                q.pop_front();
                long long depth = (cg.lambda[static_cast<size_t>(s)] - cg.lambda[static_cast<size_t>(x)]) / d0;
                if (depth >= 1 && depth <= horizon) out.emplace_back(x, depth);
                if (depth < horizon)
                    for (int y : arrows[static_cast<size_t>(x)])
                        if (!seen[static_cast<size_t>(y)]) {
                            seen[static_cast<size_t>(y)] = 1;
                            q.push_back(y);
                        }
            }
            return out;
        };
        std::vector<std::vector<std::pair<int, long long>>> desc(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) desc[static_cast<size_t>(v)] = descend(v);
        long long work = 0;
        for (int u0 = 0; u0 < n; ++u0)
            for (int v0 = u0; v0 < n; ++v0) {
                if (dist[static_cast<size_t>(u0)][static_cast<size_t>(v0)] < 0 ||
                    dist[static_cast<size_t>(u0)][static_cast<size_t>(v0)] > m)
                    continue;
                work += static_cast<long long>(desc[static_cast<size_t>(u0)].size()) *
                        static_cast<long long>(desc[static_cast<size_t>(v0)].size());
                if (work > budget) throw budget_error("convergence scan exceeded budget");
                for (auto& [a, da] : desc[static_cast<size_t>(u0)])
                    for (auto& [b, db] : desc[static_cast<size_t>(v0)]) feed(a, b, da, db);
            }
    } else {
        long long produced = 0;
        std::vector<std::vector<std::vector<int>>> paths(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) {
            paths[static_cast<size_t>(v)] = directed_paths_from(cg, v, horizon, budget - produced);
            produced += static_cast<long long>(paths[static_cast<size_t>(v)].size());
        }
        for (int u0 = 0; u0 < n; ++u0)
            for (int v0 = u0; v0 < n; ++v0) {
                if (dist[static_cast<size_t>(u0)][static_cast<size_t>(v0)] < 0 ||
                    dist[static_cast<size_t>(u0)][static_cast<size_t>(v0)] > m)
                    continue;
                for (auto& pu : paths[static_cast<size_t>(u0)])
                    for (auto& pv : paths[static_cast<size_t>(v0)])
                        for (size_t i = 1; i < pu.size(); ++i)
                            for (size_t j = 1; j < pv.size(); ++j)
                                feed(pu[i], pv[j], static_cast<long long>(i), static_cast<long long>(j));
            }
    }

    long long deepest = -1;
    for (long long t = horizon; t >= 1; --t)
        if (gmax[static_cast<size_t>(t)] >= 0) {
            deepest = t;
            break;
        }
    res.profile.assign(static_cast<size_t>(std::max<long long>(deepest + 1, 1)), -1);
    for (long long t = 1; t <= deepest; ++t)
        res.profile[static_cast<size_t>(t)] = gmax[static_cast<size_t>(t)];

    // pairs that never come within a bound show up as separation growing
    // with depth; nearby starts can shift a pair's depth by a step or two,
    // so compare halves of the depth range instead of single buckets
    if (deepest >= 2) {
        long long mid = deepest / 2;
        long long shallow = -1, deep = -1;
        for (long long t = 1; t <= mid; ++t) shallow = std::max(shallow, gmax[static_cast<size_t>(t)]);
        for (long long t = mid + 1; t <= deepest; ++t) deep = std::max(deep, gmax[static_cast<size_t>(t)]);
        if (shallow >= 0 && deep > shallow) {
            res.ok = false;
            if (res.detail.empty())
                res.detail = "pair separation grows with depth: " + std::to_string(deep) +
                             " beyond depth " + std::to_string(mid) + " exceeds " +
                             std::to_string(shallow) + " at shallower depths";
        }
    }

    // rho(k) = max over qualifying pairs of min-depth > k: suffix maxima
    std::vector<long long> rho(static_cast<size_t>(horizon) + 1, -1);
    long long suffix = -1;
    for (long long kk = horizon; kk >= 0; --kk) {
        if (kk + 1 <= horizon) suffix = std::max(suffix, gmax[static_cast<size_t>(kk + 1)]);
        rho[static_cast<size_t>(kk)] = suffix;
    }
    res.vacuous = rho[0] < 0;
    res.rho0 = 0;
    res.k_m = 0;
    if (!res.vacuous) {
        // rho is non-increasing; the minimum sits at the deepest populated k,
        // and k_m is where the final plateau starts
        long long best = -1;
        for (long long kk = 0; kk <= horizon; ++kk)
            if (rho[static_cast<size_t>(kk)] >= 0 &&
                (best < 0 || rho[static_cast<size_t>(kk)] < best))
                best = rho[static_cast<size_t>(kk)];
        res.rho0 = best;
        for (long long kk = 0; kk <= horizon; ++kk)
            if (rho[static_cast<size_t>(kk)] == best) {
                res.k_m = kk;
                break;
            }
    }
    return res;
}

struct LevelGraph {
    Graph g1;
    std::vector<long long> level;
    std::vector<std::pair<int, int>> horizontal;
    std::vector<std::pair<int, int>> vertical;  // (upper, lower)
    long long Delta2, r, rho1, Delta1, k;
    Rat eta_eff;
};

// Coarsening: vertices keep their identity, level(v) = floor(lambda/Delta2).
// Horizontal edges join same-level vertices linked by <= r chain hops of
// graph distance <= rho1 inside the band; a descending path landing exactly
// on the band floor joins the same class. Vertical edges join a vertex to
// descendants one band down.
inline LevelGraph build_level_graph(const CocycleGraph& cg, long long Delta2, long long r,
                                    long long rho1, long long Delta1 = -1, long long k = 1) {
    if (Delta1 < 0) {
        Delta1 = cg.Delta;  // tightest admissible default for an exact cocycle
        if (cg.eta > 0) {
            Rat need = Rat(cg.Delta) + cg.eta;
            Delta1 = static_cast<long long>(rat_num(need) / rat_den(need));
            if (Rat(Delta1) < need) ++Delta1;
        }
    }
    if (Rat(Delta1) < Rat(cg.Delta) + cg.eta) throw input_error("Delta1 must be at least Delta + eta");
    if (Delta2 <= (k + 1) * Delta1)
        throw input_error("Delta2 must exceed (k+1) * Delta1 = " + std::to_string((k + 1) * Delta1));
    if (r <= 0 || r % 4 != 0) throw input_error("r must be a positive multiple of 4");
    if (rho1 < 1) throw input_error("rho1 must be >= 1");
    Rat eta_eff = cg.eta > 0 ? cg.eta : Rat(cg.min_drop());
    if (Rat(r) < Rat(4 * Delta2) / (Rat(rho1) * eta_eff))
        throw input_error("r must be at least 4 * Delta2 / (rho1 * eta_eff)");

    int n = cg.g.vcount();
    LevelGraph lg;
    lg.Delta2 = Delta2;
    lg.r = r;
    lg.rho1 = rho1;
    lg.Delta1 = Delta1;
    lg.k = k;
    lg.eta_eff = eta_eff;
    lg.level.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v)
        lg.level[static_cast<size_t>(v)] = floor_div(cg.lambda[static_cast<size_t>(v)], Delta2);

    auto dist = cg.g.all_pairs();

    // horizontal: chains of length <= r with steps of distance <= rho1 inside a band
    std::vector<std::vector<int>> bands;
    {
        std::vector<long long> levels;
        for (auto l : lg.level) levels.push_back(l);
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
        for (long long l : levels) {
            std::vector<int> band;
            for (int v = 0; v < n; ++v)
                if (lg.level[static_cast<size_t>(v)] == l) band.push_back(v);
            bands.push_back(band);
        }
    }
    std::vector<std::vector<char>> hseen(static_cast<size_t>(n), std::vector<char>(static_cast<size_t>(n), 0));
    for (auto& band : bands) {
        // band-local hop graph
        std::vector<std::vector<int>> hop(band.size());
        for (size_t i = 0; i < band.size(); ++i)
            for (size_t j = i + 1; j < band.size(); ++j) {
                int dd = dist[static_cast<size_t>(band[i])][static_cast<size_t>(band[j])];
                if (dd >= 0 && dd <= rho1) {
                    hop[i].push_back(static_cast<int>(j));
                    hop[j].push_back(static_cast<int>(i));
                }
            }
        for (size_t i = 0; i < band.size(); ++i) {
            // BFS depth <= r in hop graph
            std::vector<int> hd(band.size(), -1);
            std::deque<size_t> q{i};
            hd[i] = 0;
            while (!q.empty()) {
                size_t x = q.front();
                q.pop_front();
                if (hd[x] >= r) continue;
                for (int y : hop[x])
                    if (hd[static_cast<size_t>(y)] < 0) {
                        hd[static_cast<size_t>(y)] = hd[x] + 1;
                        q.push_back(static_cast<size_t>(y));
                    }
            }
            for (size_t j = i + 1; j < band.size(); ++j)
                if (hd[j] >= 0 && !hseen[static_cast<size_t>(band[i])][static_cast<size_t>(band[j])]) {
                    hseen[static_cast<size_t>(band[i])][static_cast<size_t>(band[j])] = 1;
                    hseen[static_cast<size_t>(band[j])][static_cast<size_t>(band[i])] = 1;
                    lg.horizontal.emplace_back(band[i], band[j]);
                }
        }
    }

    // vertical: descendants one band down; same-band floor landings are horizontal
    auto arrows = cg.arrow_adj();
    for (int u = 0; u < n; ++u) {
        std::vector<char> seen(static_cast<size_t>(n), 0);
        std::deque<int> q{u};
        seen[static_cast<size_t>(u)] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            if (lg.level[static_cast<size_t>(x)] < lg.level[static_cast<size_t>(u)] - 1)
                continue;  // below the next band; descendants go lower still
            if (x != u) {
                if (lg.level[static_cast<size_t>(x)] == lg.level[static_cast<size_t>(u)] - 1) {
                    lg.vertical.emplace_back(u, x);
                } else if (cg.lambda[static_cast<size_t>(x)] ==
                               lg.level[static_cast<size_t>(u)] * Delta2 &&
                           !hseen[static_cast<size_t>(u)][static_cast<size_t>(x)]) {
                    // same level: the path landed exactly on the band floor
                    hseen[static_cast<size_t>(u)][static_cast<size_t>(x)] = 1;
                    hseen[static_cast<size_t>(x)][static_cast<size_t>(u)] = 1;
                    lg.horizontal.emplace_back(std::min(u, x), std::max(u, x));
                }
            }
            for (int y : arrows[static_cast<size_t>(x)])
                if (!seen[static_cast<size_t>(y)]) {
                    seen[static_cast<size_t>(y)] = 1;
                    q.push_back(y);
                }
        }
    }

    lg.g1.names = cg.g.names;
    lg.g1.adj.assign(static_cast<size_t>(n), {});
    for (auto& [name, id] : cg.g.index) lg.g1.index.emplace(name, id);
    for (auto& [a, b] : lg.horizontal) lg.g1.add_edge(a, b, "h", 0);
    for (auto& [a, b] : lg.vertical) lg.g1.add_edge(a, b, "v", 1);
    return lg;
}

struct GeodesicShape {
    bool descend_before_ascend;  // no geodesic climbs a level and then drops
    bool horizontal_run_bound;   // no geodesic takes 7 consecutive horizontal edges
    std::string violation;
};

// Exact check over ALL geodesics of the level graph without enumerating
// them: from each source, forward edges (BFS-distance increments) span
// exactly the geodesic prefixes, and a small DP over (vertex, state)
// detects whether any geodesic realizes the forbidden pattern.
inline GeodesicShape check_level_geodesics(const LevelGraph& lg) {
    GeodesicShape out{true, true, ""};
    const Graph& g = lg.g1;
    int n = g.vcount();
    for (int s = 0; s < n; ++s) {
        auto d = g.bfs(s);
        int maxd = 0;
        for (int v = 0; v < n; ++v) maxd = std::max(maxd, d[static_cast<size_t>(v)]);
        std::vector<std::vector<int>> layers(static_cast<size_t>(maxd) + 1);
        for (int v = 0; v < n; ++v)
            if (d[static_cast<size_t>(v)] >= 0) layers[static_cast<size_t>(d[static_cast<size_t>(v)])].push_back(v);
        // state bits: ascended-before flag, trailing horizontal run (0..7)
        std::vector<unsigned char> run_reach(static_cast<size_t>(n), 0);  // bitmask of reachable runs
        run_reach[static_cast<size_t>(s)] = 1;                            // run 0
        std::vector<char> asc_reach(static_cast<size_t>(n), 0), noasc_reach(static_cast<size_t>(n), 0);
        noasc_reach[static_cast<size_t>(s)] = 1;
        for (int depth = 0; depth < maxd; ++depth) {
            for (int x : layers[static_cast<size_t>(depth)]) {
                if (!run_reach[static_cast<size_t>(x)] && !asc_reach[static_cast<size_t>(x)] &&
                    !noasc_reach[static_cast<size_t>(x)])
                    continue;
                for (int y : g.adj[static_cast<size_t>(x)]) {
                    if (d[static_cast<size_t>(y)] != depth + 1) continue;
                    long long dl = lg.level[static_cast<size_t>(y)] - lg.level[static_cast<size_t>(x)];
                    // descend-before-ascend automaton
                    if (dl > 0) {
                        if (noasc_reach[static_cast<size_t>(x)] || asc_reach[static_cast<size_t>(x)])
                            asc_reach[static_cast<size_t>(y)] = 1;
                    } else if (dl < 0) {
                        if (asc_reach[static_cast<size_t>(x)]) {
                            out.descend_before_ascend = false;
                            if (out.violation.empty())
                                out.violation = "geodesic from " + g.names[static_cast<size_t>(s)] +
                                                " descends after ascending at " +
                                                g.names[static_cast<size_t>(y)];
                        }
                        if (noasc_reach[static_cast<size_t>(x)]) noasc_reach[static_cast<size_t>(y)] = 1;
                    } else {
                        if (noasc_reach[static_cast<size_t>(x)]) noasc_reach[static_cast<size_t>(y)] = 1;
                        if (asc_reach[static_cast<size_t>(x)]) asc_reach[static_cast<size_t>(y)] = 1;
                    }
                    // horizontal run automaton
                    unsigned char mask = run_reach[static_cast<size_t>(x)];
                    if (!mask) continue;
                    if (dl == 0) {
                        unsigned char shifted = static_cast<unsigned char>(mask << 1);
                        if (shifted & 0x80) {
                            out.horizontal_run_bound = false;
                            if (out.violation.empty())
                                out.violation = "geodesic from " + g.names[static_cast<size_t>(s)] +
                                                " takes 7 consecutive horizontal edges";
                            shifted &= 0x7f;
                        }
                        run_reach[static_cast<size_t>(y)] |= shifted;
                    } else {
                        run_reach[static_cast<size_t>(y)] |= 1;
                    }
                }
            }
        }
    }
    return out;
}

struct BiLipschitzCheck {
    bool ok;
    Rat max_stretch;  // largest d / d1 observed
    std::string violation;
};

// d1 <= d <= (r * rho1) * d1 on every connected pair
inline BiLipschitzCheck check_bilipschitz(const CocycleGraph& cg, const LevelGraph& lg) {
    auto d = cg.g.all_pairs();
    auto d1 = lg.g1.all_pairs();
    BiLipschitzCheck out{true, 0, ""};
    long long bound = lg.r * lg.rho1;
    int n = cg.g.vcount();
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            int dd = d[static_cast<size_t>(u)][static_cast<size_t>(v)];
            int dd1 = d1[static_cast<size_t>(u)][static_cast<size_t>(v)];
            if (dd < 0 && dd1 < 0) continue;
            if ((dd < 0) != (dd1 < 0)) {
                out.ok = false;
                out.violation = "components differ between the graph and its level graph";
                return out;
            }
            if (dd1 > dd) {
                out.ok = false;
                out.violation = "level graph distance exceeds graph distance at (" +
                                cg.g.names[static_cast<size_t>(u)] + "," + cg.g.names[static_cast<size_t>(v)] + ")";
                return out;
            }
            if (dd > bound * dd1) {
                out.ok = false;
                out.violation = "graph distance exceeds r*rho1 times level distance at (" +
                                cg.g.names[static_cast<size_t>(u)] + "," + cg.g.names[static_cast<size_t>(v)] + ")";
                return out;
            }
            if (dd1 > 0) out.max_stretch = std::max(out.max_stretch, Rat(dd, dd1));
        }
    return out;
}

}  // namespace hypgrpd

#pragma once

// Germs of the four groupoid families and their Cayley balls based at a
// point. Vertices of a ball are germs with source fixed at the basepoint;
// the grading is the degree cocycle nu, generators act on the target side.
// Arrows (descending lambda) point toward the basepoint's scale; the
// display orientation on edges keeps the generator direction instead.

#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cocycle.hpp"
#include "quadratic.hpp"
#include "selfsim.hpp"
#include "sft.hpp"

namespace hypgrpd {

// ---- germ types ------------------------------------------------------------

// germ of sigma^{-n1} sigma^{n2} at x with net degree n = n2 - n1 >= means
// n applications of the shift from the x side; target y. nu = -n, so a
// single prepend (n = -1) raises the scale by one.
struct GermExp {
    EvPeriodicWord y;
    long long n;
    EvPeriodicWord x;
    long long nu() const { return -n; }
    bool operator==(const GermExp& o) const { return y == o.y && n == o.n && x == o.x; }
};

// x -> 2^n x + beta on the dyadic line, germ at a fixed rational basepoint
struct GermDyadic {
    long long n;
    Rat beta;
    long long nu() const { return n; }
    bool operator==(const GermDyadic& o) const { return n == o.n && beta == o.beta; }
};

// x -> theta^{2n} x + alpha in Z[theta], germ at a fixed basepoint
struct GermQuad {
    long long n;
    QuadInt alpha;
    long long nu() const { return -n; }
    bool operator==(const GermQuad& o) const { return n == o.n && alpha == o.alpha; }
};

// S_u g S_v^{-1} at a basepoint p with v a prefix of p; nu = |u| - |v|
struct GermSS {
    Word u;
    Elem g;
    Word v;
    long long nu() const { return static_cast<long long>(u.size()) - static_cast<long long>(v.size()); }
};

// ---- expanding shift germs --------------------------------------------------

inline bool germexp_valid(const SftSystem& s, const GermExp& g, long long slack = 4) {
    // x, y must be admissible one-sided words, and some shift must witness the degree
    long long bound = static_cast<long long>(g.x.pre.size() + g.x.per.size() + g.y.pre.size() +
                                             g.y.per.size()) +
                      std::llabs(g.n) + slack + s.max_word();
    Word wx = g.x.prefix(bound + std::llabs(g.n) + 1);
    Word wy = g.y.prefix(bound + std::llabs(g.n) + 1);
    if (!s.admissible(wx) || !s.admissible(wy)) return false;
    for (long long n1 = std::max<long long>(0, -g.n); n1 <= bound; ++n1)
        if (g.y.shifted(n1) == g.x.shifted(n1 + g.n)) return true;
    return false;
}

inline std::string germexp_label(const Alphabet& a, const GermExp& g) {
    return g.y.format(a) + ":" + std::to_string(g.n);
}

// ---- Cayley balls ------------------------------------------------------------

struct CayleyBall {
    CocycleGraph cg;
    int base = 0;
    std::vector<int> dist;  // word length from the basepoint
    std::string family;
};

namespace detail {

template <class Germ, class KeyFn, class NeighborFn, class LabelFn>
CayleyBall generic_ball(const Germ& unit, int radius, KeyFn key, NeighborFn neighbors, LabelFn label,
                        long long vertex_budget, const std::string& family) {
    CayleyBall ball;
    ball.family = family;
    std::vector<Germ> verts{unit};
    std::map<std::string, int> ids{{key(unit), 0}};
    ball.cg.g.add_vertex(label(unit));
    ball.cg.lambda.push_back(unit.nu());
    ball.dist.push_back(0);
    struct PendingEdge {
        int from, to;
        std::string lab;
        int orient;
    };
    std::vector<PendingEdge> edges;
    std::set<std::string> edge_seen;
    for (size_t qi = 0; qi < verts.size(); ++qi) {
        if (ball.dist[qi] >= radius) continue;
        Germ cur = verts[qi];
        for (auto& [nb, lab, orient] : neighbors(cur)) {
            std::string k = key(nb);
            auto it = ids.find(k);
            int id;
            if (it == ids.end()) {
                if (static_cast<long long>(verts.size()) >= vertex_budget)
                    throw budget_error("cayley ball exceeded vertex budget");
                id = static_cast<int>(verts.size());
                ids.emplace(k, id);
                verts.push_back(nb);
                ball.cg.g.add_vertex(label(nb));
                ball.cg.lambda.push_back(nb.nu());
                ball.dist.push_back(ball.dist[qi] + 1);
            } else {
                id = it->second;
            }
            std::string ek = std::to_string(std::min<int>(static_cast<int>(qi), id)) + "|" +
                             std::to_string(std::max<int>(static_cast<int>(qi), id)) + "|" + lab;
            if (edge_seen.insert(ek).second)
                edges.push_back({static_cast<int>(qi), id, lab, orient});
        }
    }
    for (auto& e : edges) ball.cg.g.add_edge(e.from, e.to, e.lab, e.orient);
    ball.cg.finish();
    // boundary of the sample: the radius cutoff, plus vertices whose descent
    // was cut by a window constraint rather than by distance
    auto arrows = ball.cg.arrow_adj();
    for (size_t i = 0; i < verts.size(); ++i)
        ball.cg.truncated[i] = (ball.dist[i] >= radius || arrows[i].empty()) ? 1 : 0;
    return ball;
}

}  // namespace detail

// expanding-shift ball: generators prepend letters on the target side
inline CayleyBall cayley_ball_expanding(const SftSystem& s, const EvPeriodicWord& basept, int radius,
                                        long long vertex_budget = 200000) {
    if (!s.admissible(basept.prefix(static_cast<long long>(basept.pre.size() + 2 * basept.per.size()) +
                                    s.max_word())))
        throw input_error("basepoint is not admissible");
    GermExp unit{basept, 0, basept};
    auto key = [&](const GermExp& g) {
        return g.y.format(s.A) + "#" + std::to_string(g.n);
    };
    auto label = [&](const GermExp& g) { return germexp_label(s.A, g); };
    auto neighbors = [&](const GermExp& g) {
        std::vector<std::tuple<GermExp, std::string, int>> out;
        // prepend a on the target: s_a . g, degree drops by one
        for (int a = 0; a < s.A.size(); ++a) {
            Word probe{a};
            Word pref = g.y.prefix(s.max_word());
            probe.insert(probe.end(), pref.begin(), pref.end());
            if (!s.admissible(probe)) continue;
            out.emplace_back(GermExp{g.y.prepended({a}), g.n - 1, g.x},
                             "S_" + s.A.names[static_cast<size_t>(a)], 1);
        }
        // shift the target: s_{y0}^{-1} . g
        out.emplace_back(GermExp{g.y.shifted(1), g.n + 1, g.x},
                         "S_" + s.A.names[static_cast<size_t>(g.y.digit(0))], -1);
        return out;
    };
    return detail::generic_ball(unit, radius, key, neighbors, label, vertex_budget, "expanding-shift");
}

// dyadic affine ball: generators x -> 2x + c for c in {0, 1, -1}
inline CayleyBall cayley_ball_dyadic(const Rat& basept, int radius, long long vertex_budget = 200000) {
    if (rat_den(basept) % 2 == 0) throw input_error("dyadic basepoint needs an odd denominator");
    GermDyadic unit{0, 0};
    auto key = [](const GermDyadic& g) { return std::to_string(g.n) + "#" + rat_str(g.beta); };
    auto label = [](const GermDyadic& g) { return std::to_string(g.n) + "|" + rat_str(g.beta); };
    auto neighbors = [&](const GermDyadic& g) {
        std::vector<std::tuple<GermDyadic, std::string, int>> out;
        static const char* names[3] = {"s", "as", "a's"};
        static const long long cs[3] = {0, 1, -1};
        for (int i = 0; i < 3; ++i) {
            out.emplace_back(GermDyadic{g.n + 1, 2 * g.beta + cs[i]}, names[i], 1);
            // inverse: defined when (beta - c) is divisible by 2 in the dyadics
            Rat down = (g.beta - cs[i]) / 2;
            if (rat_den(down) % 2 != 0)
                out.emplace_back(GermDyadic{g.n - 1, down}, names[i], -1);
        }
        return out;
    };
    return detail::generic_ball(unit, radius, key, neighbors, label, vertex_budget, "dyadic-affine");
}

// quadratic affine ball restricted to a transversal interval
inline CayleyBall cayley_ball_quadratic(const QuadRing& ring, const QuadInt& basept, const Rat& lo,
                                        const Rat& hi, int radius, bool include_scaling = true,
                                        long long vertex_budget = 200000) {
    if (qcmp(ring, basept, lo) < 0 || qcmp(ring, basept, hi) > 0)
        throw input_error("basepoint outside the transversal interval");
    GermQuad unit{0, basept};
    auto key = [](const GermQuad& g) {
        return std::to_string(g.n) + "#" + std::to_string(g.alpha.a) + "," + std::to_string(g.alpha.b);
    };
    auto label = [](const GermQuad& g) { return std::to_string(g.n) + "|" + qformat(g.alpha); };
    auto neighbors = [&](const GermQuad& g) {
        std::vector<std::tuple<GermQuad, std::string, int>> out;
        auto push = [&](long long dn, const QuadInt& c, const std::string& lab, int orient) {
            QuadInt alpha = qadd(qmul_theta_pow(ring, g.alpha, 2 * dn), c);
            if (qcmp(ring, alpha, lo) < 0 || qcmp(ring, alpha, hi) > 0) return;
            out.emplace_back(GermQuad{g.n + dn, alpha}, lab, orient);
        };
        push(0, {1, 0}, "+1", 1);
        push(0, {-1, 0}, "+1", -1);
        push(0, {0, 1}, "+t", 1);
        push(0, {0, -1}, "+t", -1);
        if (include_scaling) {
            push(1, {0, 0}, "sc", 1);
            push(-1, {0, 0}, "sc", -1);
        }
        return out;
    };
    return detail::generic_ball(unit, radius, key, neighbors, label, vertex_budget, "quadratic-affine");
}

// ---- self-similar shift germs ------------------------------------------------

struct SSGermContext {
    const WreathRecursion& R;
    EvPeriodicWord base;
};

inline GermSS ss_extend(const SSGermContext& ctx, GermSS g) {
    long long depth = static_cast<long long>(g.v.size());
    int x = ctx.base.digit(depth);
    Elem next;
    int y = ctx.R.act_letter(g.g, x, next);
    g.u.push_back(y);
    g.v.push_back(x);
    g.g = next;
    return g;
}

inline GermSS ss_extend_to(const SSGermContext& ctx, GermSS g, size_t vlen) {
    while (g.v.size() < vlen) g = ss_extend(ctx, g);
    return g;
}

struct SSEqualResult {
    Tri verdict;
    Word witness;  // finite word where the images separate (when No)
};

inline SSEqualResult germ_equal_ss(const SSGermContext& ctx, GermSS a, GermSS b,
                                   long long budget = 64, long long triv_budget = 20000) {
    for (size_t i = 0; i < a.v.size(); ++i)
        if (a.v[i] != ctx.base.digit(static_cast<long long>(i)))
            throw input_error("germ source leg is not a prefix of the basepoint");
    for (size_t i = 0; i < b.v.size(); ++i)
        if (b.v[i] != ctx.base.digit(static_cast<long long>(i)))
            throw input_error("germ source leg is not a prefix of the basepoint");
    if (a.nu() != b.nu()) {
        // degree is intrinsic to the germ, so unequal degrees separate
        return {Tri::No, a.v};
    }
    size_t L = std::max(a.v.size(), b.v.size());
    a = ss_extend_to(ctx, a, L);
    b = ss_extend_to(ctx, b, L);
    std::set<std::string> seen;
    for (long long step = 0; step <= budget; ++step) {
        if (a.u != b.u) return {Tri::No, a.v};
        if (a.g == b.g) return {Tri::Yes, {}};
        auto t = is_trivial(ctx.R, elem_mul(a.g, elem_inverse(b.g)), triv_budget);
        if (t.verdict == Tri::Yes) return {Tri::Yes, {}};
        if (t.verdict == Tri::Unknown) return {Tri::Unknown, {}};
        // residuals differ as elements; if the same residual pair recurs at the
        // same phase of the base's period, it will keep differing forever
        std::string key = elem_key(a.g) + "/" + elem_key(b.g) + "@" +
                          std::to_string(ctx.base.phase(static_cast<long long>(a.v.size())));
        if (!seen.insert(key).second) {
            Word w = a.v;
            auto wit = t.witness;
            w.insert(w.end(), wit.begin(), wit.end());
            return {Tri::No, w};
        }
        a = ss_extend(ctx, a);
        b = ss_extend(ctx, b);
    }
    return {Tri::Unknown, {}};
}

inline CayleyBall cayley_ball_selfsim(const WreathRecursion& R, const EvPeriodicWord& basept,
                                      int radius, long long vertex_budget = 100000,
                                      long long eq_budget = 64) {
    SSGermContext ctx{R, basept};
    GermSS unit{{}, {}, {}};
    size_t depth = static_cast<size_t>(radius) + basept.pre.size() + basept.per.size() + 1;
    auto canon = [&](const GermSS& g) { return ss_extend_to(ctx, g, depth); };
    auto key = [&](const GermSS& g) {
        GermSS c = canon(g);
        return R.X.format_word(c.u) + "#" + elem_key(c.g) + "#" + std::to_string(g.nu());
    };
    auto label = [&](const GermSS& g) {
        return R.X.format_word(g.u) + "." + R.format_elem(g.g) + "." + R.X.format_word(g.v);
    };
    // semantic dedup on top of the syntactic key
    std::vector<std::pair<std::string, GermSS>> canon_reps;
    std::map<std::string, std::string> alias;
    auto semantic_key = [&](const GermSS& g) {
        GermSS c = canon(g);
        std::string k = key(g);
        auto it = alias.find(k);
        if (it != alias.end()) return it->second;
        for (auto& [rk, rg] : canon_reps) {
            if (rg.nu() != c.nu()) continue;
            auto eq = germ_equal_ss(ctx, c, rg, eq_budget);
            if (eq.verdict == Tri::Unknown)
                throw budget_error("germ comparison exceeded budget in ball construction");
            if (eq.verdict == Tri::Yes) {
                alias.emplace(k, rk);
                return rk;
            }
        }
        canon_reps.emplace_back(k, c);
        alias.emplace(k, k);
        return k;
    };
    auto neighbors = [&](const GermSS& g) {
        std::vector<std::tuple<GermSS, std::string, int>> out;
        // prepend letters on the target side
        for (int x = 0; x < R.X.size(); ++x) {
            GermSS ng = g;
            ng.u.insert(ng.u.begin(), x);
            out.emplace_back(ng, "S_" + R.X.names[static_cast<size_t>(x)], 1);
        }
        // strip the leading target letter
        {
            GermSS ng = g.u.empty() ? ss_extend(ctx, g) : g;
            GermSS stripped{Word(ng.u.begin() + 1, ng.u.end()), ng.g, ng.v};
            out.emplace_back(stripped, "S_" + R.X.names[static_cast<size_t>(ng.u[0])], -1);
        }
        // group generators act on the target side: h . (u, g, v) = (h(u), h|_u g, v)
        for (int gi = 1; gi <= R.gens(); ++gi)
            for (int sgn : {1, -1}) {
                Elem h{sgn * gi};
                Elem cur = h, nxt;
                Word hu;
                for (int letter : g.u) {
                    hu.push_back(R.act_letter(cur, letter, nxt));
                    cur = nxt;
                }
                GermSS ng{hu, elem_mul(cur, g.g), g.v};
                std::string nm = R.gen_names[static_cast<size_t>(gi - 1)];
                out.emplace_back(ng, nm, sgn);
            }
        return out;
    };
    return detail::generic_ball(unit, radius, semantic_key, neighbors, label, vertex_budget,
                                "self-similar-shift");
}

// ---- boundary scale -----------------------------------------------------------

struct BoundaryScaleResult {
    long long n;
    bool truncated;  // the maximum sat at the tip of a ray: only a lower bound
};

inline BoundaryScaleResult boundary_scale(const CayleyBall& ball, const std::vector<int>& ray1,
                                          const std::vector<int>& ray2) {
    auto check_ray = [&](const std::vector<int>& r) {
        if (r.empty() || r.front() != ball.base)
            throw input_error("rays must start at the basepoint");
        for (size_t i = 0; i + 1 < r.size(); ++i) {
            if (!ball.cg.g.adjacent(r[i], r[i + 1]))
                throw input_error("ray is not an edge path");
            if (ball.cg.lambda[static_cast<size_t>(r[i + 1])] <=
                ball.cg.lambda[static_cast<size_t>(r[i])])
                throw input_error("ray must ascend the grading");
        }
    };
    check_ray(ray1);
    check_ray(ray2);
    std::set<int> s1(ray1.begin(), ray1.end());
    long long best = 0;
    std::set<int> arg;
    for (int v : ray2)
        if (s1.count(v) && ball.cg.lambda[static_cast<size_t>(v)] >= best) {
            if (ball.cg.lambda[static_cast<size_t>(v)] > best) arg.clear();
            best = ball.cg.lambda[static_cast<size_t>(v)];
            arg.insert(v);
        }
    BoundaryScaleResult out{best, false};
    for (int v : arg)
        if (v == ray1.back() || v == ray2.back()) out.truncated = true;
    return out;
}

// ---- preimage trees -------------------------------------------------------------

struct PreimageTree {
    Graph tree;
    std::vector<long long> depth_of;
    std::vector<long long> leaf_counts;  // per depth 0..depth
};

inline PreimageTree tree_of_preimages(const SftSystem& s, const EvPeriodicWord& t, int depth,
                                      long long budget = 1 << 20) {
    PreimageTree out;
    Word base_pref = t.prefix(s.max_word() + depth + 2);
    if (!s.admissible(base_pref)) throw input_error("the point is not admissible");
    out.leaf_counts.assign(static_cast<size_t>(depth) + 1, 0);
    // vertices are prepend words; parent drops the first letter
    std::vector<Word> level{{}};
    out.tree.add_vertex("e");
    out.depth_of.push_back(0);
    out.leaf_counts[0] = 1;
    std::map<Word, int> ids{{Word{}, 0}};
    for (int d = 1; d <= depth; ++d) {
        std::vector<Word> next;
        for (auto& w : level) {
            for (int a = 0; a < s.A.size(); ++a) {
                Word nw{a};
                nw.insert(nw.end(), w.begin(), w.end());
                Word probe = nw;
                probe.insert(probe.end(), base_pref.begin(),
                             base_pref.begin() + std::min<size_t>(base_pref.size(), static_cast<size_t>(s.max_word())));
                if (!s.admissible(probe)) continue;
                if (static_cast<long long>(ids.size()) >= budget)
                    throw budget_error("preimage tree exceeded budget");
                int id = out.tree.add_vertex(s.A.format_word(nw));
                ids.emplace(nw, id);
                out.depth_of.push_back(d);
                out.tree.add_edge(id, ids.at(w), s.A.names[static_cast<size_t>(a)], 1);
                next.push_back(nw);
            }
        }
        out.leaf_counts[static_cast<size_t>(d)] = static_cast<long long>(next.size());
        level = next;
    }
    return out;
}

// ---- rotation orbital graph ------------------------------------------------------

struct OrbitalGraph {
    Graph g;
    std::vector<QuadInt> points;
    long long diameter;  // max eccentricity from the basepoint's component
};

inline OrbitalGraph rotation_orbital_graph(const QuadRing& ring, const QuadInt& basept,
                                           const std::vector<QuadInt>& translations, const Rat& lo,
                                           const Rat& hi, int word_bound, bool include_scaling,
                                           long long budget = 100000) {
    if (qcmp(ring, basept, lo) < 0 || qcmp(ring, basept, hi) > 0)
        throw input_error("basepoint outside the interval");
    OrbitalGraph out;
    auto key = [](const QuadInt& p) { return std::to_string(p.a) + "," + std::to_string(p.b); };
    std::map<std::string, int> ids;
    std::vector<int> depth;
    auto add_point = [&](const QuadInt& p) {
        auto it = ids.find(key(p));
        if (it != ids.end()) return it->second;
        if (static_cast<long long>(out.points.size()) >= budget)
            throw budget_error("orbital graph exceeded budget");
        int id = out.g.add_vertex(qformat(p));
        ids.emplace(key(p), id);
        out.points.push_back(p);
        depth.push_back(-1);
        return id;
    };
    int b0 = add_point(basept);
    depth[static_cast<size_t>(b0)] = 0;
    std::vector<int> queue{b0};
    std::set<std::string> edge_seen;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int vid = queue[qi];
        if (depth[static_cast<size_t>(vid)] >= word_bound) continue;
        QuadInt p = out.points[static_cast<size_t>(vid)];
        auto try_edge = [&](const QuadInt& img, const std::string& lab, long long nu) {
            if (qcmp(ring, img, lo) < 0 || qcmp(ring, img, hi) > 0) return;
            int wid = add_point(img);
            if (depth[static_cast<size_t>(wid)] < 0) {
                depth[static_cast<size_t>(wid)] = depth[static_cast<size_t>(vid)] + 1;
                queue.push_back(wid);
            }
            std::string ek = std::to_string(std::min(vid, wid)) + "|" + std::to_string(std::max(vid, wid)) +
                             "|" + lab + "|" + std::to_string(nu);
            if (edge_seen.insert(ek).second)
                out.g.add_edge(vid, wid, lab + (nu ? (nu > 0 ? " v+" : " v-") : ""), 1);
        };
        for (auto& t : translations) {
            try_edge(qadd(p, t), "+" + qformat(t), 0);
            try_edge(qsub(p, t), "-" + qformat(t), 0);
        }
        if (include_scaling) {
            try_edge(qmul_theta_pow(ring, p, 2), "sc", -1);
            try_edge(qmul_theta_pow(ring, p, -2), "sc'", 1);
        }
    }
    auto from_base = out.g.bfs(b0);
    out.diameter = 0;
    for (int v = 0; v < out.g.vcount(); ++v) {
        if (from_base[static_cast<size_t>(v)] < 0) continue;
        auto dv = out.g.bfs(v);
        for (int w = 0; w < out.g.vcount(); ++w)
            out.diameter = std::max(out.diameter, static_cast<long long>(dv[static_cast<size_t>(w)]));
    }
    return out;
}

// ---- preset registry ---------------------------------------------------------------

inline CayleyBall preset_cayley_ball(const std::string& name, int radius) {
    if (name == "doubling")
        return cayley_ball_expanding(sft_preset("full2"),
                                     EvPeriodicWord::parse(Alphabet::binary(), "(0)"), radius);
    if (name == "dyadic-affine") return cayley_ball_dyadic(Rat(0), radius);
    if (name == "golden-rotation")
        return cayley_ball_quadratic(QuadRing::golden(), QuadInt{0, 0}, Rat(0), Rat(1), radius, true);
    if (name == "basilica-shift")
        return cayley_ball_selfsim(basilica(), EvPeriodicWord::parse(Alphabet::binary(), "(0)"), radius);
    throw input_error("unknown preset '" + name + "'");
}

}  // namespace hypgrpd

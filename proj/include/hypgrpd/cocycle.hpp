#pragma once

// Graphs graded by an integer potential lambda. The quasi-cocycle is
// nu(u, v) = lambda(u) - lambda(v); arrows are derived, pointing from
// higher lambda to lower (descending). Edges with equal lambda are
// horizontal. Per-edge display orientation (generator direction in a
// Cayley graph) lives in the underlying Graph and never feeds grading.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "graph.hpp"

namespace hypgrpd {

struct CocycleGraph {
    Graph g;
    std::vector<long long> lambda;
    long long Delta = 1;          // declared bound on |nu| over edges
    Rat eta = 0;                  // additivity defect of the declared cocycle
    std::vector<char> truncated;  // vertex had its arrow set cut by a radius/budget

    long long nu(int u, int v) const {
        return lambda[static_cast<size_t>(u)] - lambda[static_cast<size_t>(v)];
    }

    void finish() {
        if (lambda.size() != static_cast<size_t>(g.vcount()))
            throw input_error("lambda must assign a value to every vertex");
        truncated.resize(static_cast<size_t>(g.vcount()), 0);
        long long d = 0;
        for (auto& e : g.edges) d = std::max(d, std::llabs(nu(e.u, e.v)));
        Delta = std::max<long long>(1, d);
    }

    std::optional<std::string> validate() const {
        if (lambda.size() != static_cast<size_t>(g.vcount())) return "lambda size mismatch";
        for (auto& e : g.edges) {
            long long drop = std::llabs(nu(e.u, e.v));
            if (drop > Delta)
                return "edge " + g.names[static_cast<size_t>(e.u)] + "--" +
                       g.names[static_cast<size_t>(e.v)] + " exceeds Delta";
            // descending edges must clear the 2*eta threshold to count as arrows
            if (drop > 0 && Rat(drop) <= 2 * eta)
                return "edge " + g.names[static_cast<size_t>(e.u)] + "--" +
                       g.names[static_cast<size_t>(e.v)] + " drops by " + std::to_string(drop) +
                       " which does not exceed 2*eta";
        }
        return std::nullopt;
    }

    std::vector<int> arrows_from(int v) const {
        std::vector<int> out;
        for (int w : g.adj[static_cast<size_t>(v)])
            if (lambda[static_cast<size_t>(w)] < lambda[static_cast<size_t>(v)]) out.push_back(w);
        return out;
    }

    // adjacency restricted to descending arrows
    std::vector<std::vector<int>> arrow_adj() const {
        std::vector<std::vector<int>> out(static_cast<size_t>(g.vcount()));
        for (int v = 0; v < g.vcount(); ++v) out[static_cast<size_t>(v)] = arrows_from(v);
        return out;
    }

    long long min_drop() const {
        long long m = 0;
        for (auto& e : g.edges) {
            long long d = std::llabs(nu(e.u, e.v));
            if (d > 0 && (m == 0 || d < m)) m = d;
        }
        return m == 0 ? 1 : m;
    }

    bool uniform_drop(long long* d0 = nullptr) const {
        long long seen = 0;
        for (auto& e : g.edges) {
            long long d = std::llabs(nu(e.u, e.v));
            if (d == 0) continue;
            if (seen == 0)
                seen = d;
            else if (seen != d)
                return false;
        }
        if (d0) *d0 = seen == 0 ? 1 : seen;
        return true;
    }

    // every vertex either has an outgoing arrow or is flagged truncated
    bool out_complete() const {
        for (int v = 0; v < g.vcount(); ++v)
            if (arrows_from(v).empty() && !truncated[static_cast<size_t>(v)]) return false;
        return true;
    }

    json to_json() const {
        json j = g.to_json(&lambda);
        j["Delta"] = Delta;
        j["eta"] = rat_to_json(eta);
        json tr = json::array();
        for (int v = 0; v < g.vcount(); ++v)
            if (truncated[static_cast<size_t>(v)]) tr.push_back(g.names[static_cast<size_t>(v)]);
        j["truncated"] = tr;
        return j;
    }

    static CocycleGraph from_json(const json& j) {
        CocycleGraph cg;
        cg.g = Graph::from_json(j);
        if (!j.contains("lambda")) throw input_error("cocycle graph json needs 'lambda'");
        cg.lambda.assign(static_cast<size_t>(cg.g.vcount()), 0);
        for (auto& [k, v] : j["lambda"].items())
            cg.lambda[static_cast<size_t>(cg.g.vertex(k))] = v.get<long long>();
        cg.finish();
        if (j.contains("Delta")) cg.Delta = j["Delta"].get<long long>();
        if (j.contains("eta")) cg.eta = rat_from_json(j["eta"]);
        if (j.contains("truncated"))
            for (auto& t : j["truncated"])
                cg.truncated[static_cast<size_t>(cg.g.vertex(t.get<std::string>()))] = 1;
        auto err = cg.validate();
        if (err) throw input_error("invalid cocycle graph: " + *err);
        return cg;
    }

    std::string to_dot() const {
        // arrows drawn descending; edges with a display orientation keep it
        std::string out = "digraph cayley {\n  rankdir=BT;\n  node [shape=ellipse, fontsize=10];\n";
        for (int v = 0; v < g.vcount(); ++v)
            out += "  n" + std::to_string(v) + " [label=\"" + g.names[static_cast<size_t>(v)] +
                   "\\nl=" + std::to_string(lambda[static_cast<size_t>(v)]) + "\"];\n";
        for (auto& e : g.edges) {
            int a = e.u, b = e.v;
            int orient = e.orient;
            if (orient == 0) orient = nu(a, b) > 0 ? 1 : (nu(a, b) < 0 ? -1 : 0);
            if (orient < 0) std::swap(a, b);
            out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + " [";
            if (!e.label.empty()) out += "label=\"" + e.label + "\", ";
            if (orient == 0) out += "dir=none, ";
            out += "fontsize=9];\n";
        }
        out += "}\n";
        return out;
    }
};

// maximal descending paths from `start`, cut at `horizon` arrows; every
// enumerated vertex sequence strictly decreases lambda, so paths are finite
inline std::vector<std::vector<int>> directed_paths_from(const CocycleGraph& cg, int start,
                                                         long long horizon, long long budget,
                                                         bool* truncated_flag = nullptr) {
    auto arrows = cg.arrow_adj();
    std::vector<std::vector<int>> out;
    std::vector<int> cur{start};
    long long produced = 0;
    std::function<void()> rec = [&]() {
        int v = cur.back();
        bool extended = false;
        if (static_cast<long long>(cur.size()) <= horizon) {
            for (int w : arrows[static_cast<size_t>(v)]) {
                cur.push_back(w);
                rec();
                cur.pop_back();
                extended = true;
            }
        }
        if (!extended) {
            if (++produced > budget) throw budget_error("directed path enumeration exceeded budget");
            out.push_back(cur);
            if (truncated_flag &&
                (static_cast<long long>(cur.size()) > horizon || cg.truncated[static_cast<size_t>(v)]))
                *truncated_flag = true;
        }
    };
    rec();
    return out;
}

}  // namespace hypgrpd

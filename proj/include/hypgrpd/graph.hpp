#pragma once

// Finite graphs with named vertices. Edges are undirected for metric
// purposes; each edge may carry a label and a display orientation used
// only when rendering (Cayley graphs keep the generator direction there).

#include <algorithm>
#include <deque>
#include <string>
#include <unordered_map>
#include <vector>

#include "json_util.hpp"
#include "words.hpp"

namespace hypgrpd {

struct Graph {
    struct Edge {
        int u, v;
        std::string label;
        int orient = 0;  // 0 none, +1 u->v, -1 v->u (display only)
    };

    std::vector<std::string> names;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adj;
    std::unordered_map<std::string, int> index;

    int vcount() const { return static_cast<int>(names.size()); }

    int add_vertex(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) throw input_error("duplicate vertex '" + name + "'");
        names.push_back(name);
        adj.emplace_back();
        int id = vcount() - 1;
        index.emplace(name, id);
        return id;
    }

    int ensure_vertex(const std::string& name) {
        auto it = index.find(name);
        if (it != index.end()) return it->second;
        return add_vertex(name);
    }

    int vertex(const std::string& name) const {
        auto it = index.find(name);
        if (it == index.end()) throw input_error("unknown vertex '" + name + "'");
        return it->second;
    }

    bool adjacent(int u, int v) const {
        for (int w : adj[static_cast<size_t>(u)])
            if (w == v) return true;
        return false;
    }

    void add_edge(int u, int v, const std::string& label = "", int orient = 0) {
        if (u < 0 || v < 0 || u >= vcount() || v >= vcount())
            throw input_error("edge endpoint out of range");
        edges.push_back({u, v, label, orient});
        if (u != v && !adjacent(u, v)) {
            adj[static_cast<size_t>(u)].push_back(v);
            adj[static_cast<size_t>(v)].push_back(u);
        }
    }

    std::vector<int> bfs(int s) const {
        std::vector<int> dist(static_cast<size_t>(vcount()), -1);
        std::deque<int> q{s};
        dist[static_cast<size_t>(s)] = 0;
        while (!q.empty()) {
            int x = q.front();
            q.pop_front();
            for (int y : adj[static_cast<size_t>(x)])
                if (dist[static_cast<size_t>(y)] < 0) {
                    dist[static_cast<size_t>(y)] = dist[static_cast<size_t>(x)] + 1;
                    q.push_back(y);
                }
        }
        return dist;
    }

    std::vector<std::vector<int>> all_pairs() const {
        std::vector<std::vector<int>> d(static_cast<size_t>(vcount()));
        for (int v = 0; v < vcount(); ++v) d[static_cast<size_t>(v)] = bfs(v);
        return d;
    }

    bool connected() const {
        if (vcount() == 0) return true;
        auto d = bfs(0);
        return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
    }

    std::vector<int> ball(int x0, int radius) const {
        auto d = bfs(x0);
        std::vector<int> out;
        for (int v = 0; v < vcount(); ++v)
            if (d[static_cast<size_t>(v)] >= 0 && d[static_cast<size_t>(v)] <= radius) out.push_back(v);
        return out;
    }

    json to_json(const std::vector<long long>* lambda = nullptr) const {
        json j;
        j["vertices"] = json::array();
        for (auto& n : names) j["vertices"].push_back(n);
        j["edges"] = json::array();
        for (auto& e : edges) {
            json je = json::array({names[static_cast<size_t>(e.u)], names[static_cast<size_t>(e.v)]});
            if (!e.label.empty() || e.orient) je.push_back(e.label);
            if (e.orient) je.push_back(e.orient);
            j["edges"].push_back(je);
        }
        if (lambda) {
            json jl = json::object();
            for (int v = 0; v < vcount(); ++v)
                jl[names[static_cast<size_t>(v)]] = (*lambda)[static_cast<size_t>(v)];
            j["lambda"] = jl;
        }
        return j;
    }

    static Graph from_json(const json& j) {
        Graph g;
        if (!j.contains("vertices") || !j.contains("edges"))
            throw input_error("graph json needs 'vertices' and 'edges'");
        for (auto& v : j["vertices"]) g.add_vertex(v.get<std::string>());
        for (auto& e : j["edges"]) {
            if (!e.is_array() || e.size() < 2) throw input_error("edge must be [u, v, label?, orient?]");
            std::string label = e.size() > 2 ? e[2].get<std::string>() : "";
            int orient = e.size() > 3 ? e[3].get<int>() : 0;
            g.add_edge(g.vertex(e[0].get<std::string>()), g.vertex(e[1].get<std::string>()), label, orient);
        }
        return g;
    }

    std::string to_dot(const std::vector<long long>* lambda = nullptr,
                       const std::string& graph_name = "g") const {
        std::string out = "digraph " + graph_name + " {\n";
        out += "  rankdir=BT;\n  node [shape=ellipse, fontsize=10];\n";
        for (int v = 0; v < vcount(); ++v) {
            out += "  n" + std::to_string(v) + " [label=\"" + names[static_cast<size_t>(v)];
            if (lambda) out += "\\nl=" + std::to_string((*lambda)[static_cast<size_t>(v)]);
            out += "\"];\n";
        }
        for (auto& e : edges) {
            int a = e.u, b = e.v;
            bool directed = e.orient != 0;
            if (e.orient < 0) std::swap(a, b);
            out += "  n" + std::to_string(a) + " -> n" + std::to_string(b);
            out += " [";
            if (!e.label.empty()) out += "label=\"" + e.label + "\", ";
            if (!directed) out += "dir=none, ";
            out += "fontsize=9];\n";
        }
        out += "}\n";
        return out;
    }
};

// Exact isomorphism test against the n-cycle: connected + n vertices +
// every simple degree equal to 2 characterizes C_n for n >= 3.
inline bool is_cycle_graph(const Graph& g, int n) {
    if (g.vcount() != n || n < 3) return false;
    for (auto& a : g.adj)
        if (a.size() != 2) return false;
    return g.connected();
}

// Deterministic structural fingerprint (degree sequence + sorted BFS layer
// profiles). Isomorphic graphs get equal fingerprints; used to compare a
// construction against itself across budgets, and exact when the profile
// pins the graph (cycles, paths).
inline std::string graph_fingerprint(const Graph& g) {
    int n = g.vcount();
    std::vector<size_t> degs;
    for (auto& a : g.adj) degs.push_back(a.size());
    std::sort(degs.begin(), degs.end());
    std::vector<std::string> profiles;
    for (int s = 0; s < n; ++s) {
        auto d = g.bfs(s);
        std::vector<int> layer;
        for (int v = 0; v < n; ++v)
            if (d[static_cast<size_t>(v)] >= 0) {
                if (static_cast<int>(layer.size()) <= d[static_cast<size_t>(v)])
                    layer.resize(static_cast<size_t>(d[static_cast<size_t>(v)]) + 1, 0);
                ++layer[static_cast<size_t>(d[static_cast<size_t>(v)])];
            }
        std::string p;
        for (int c : layer) p += std::to_string(c) + ".";
        profiles.push_back(p);
    }
    std::sort(profiles.begin(), profiles.end());
    std::string out = "v" + std::to_string(n) + ";d";
    for (auto d : degs) out += std::to_string(d) + ",";
    out += ";p";
    for (auto& p : profiles) out += p + "|";
    return out;
}

}  // namespace hypgrpd

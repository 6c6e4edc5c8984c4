#pragma once

// Finite approximations to the limit dynamical system of a contracting
// recursion: gluing graphs on level-n words, and the graded graph whose
// boundary the limit space models.

#include <string>
#include <vector>

#include "cocycle.hpp"
#include "selfsim.hpp"

namespace hypgrpd {

// words of length n, glued along the nucleus action: v ~ g(v)
struct GluingGraph {
    Graph g;
    std::vector<Elem> nucleus_used;
    bool contracting;
};

inline GluingGraph limit_space_gluing(const WreathRecursion& R, int level,
                                      long long class_budget = 3000, long long eq_budget = 20000,
                                      long long budget = 1 << 20) {
    GluingGraph out;
    auto nuc = nucleus(R, class_budget, eq_budget);
    out.contracting = nuc.contracting;
    if (!nuc.contracting) throw budget_error("recursion did not contract within budget");
    out.nucleus_used = nuc.elements;
    double total = 1;
    for (int i = 0; i < level; ++i) total *= R.X.size();
    if (total > static_cast<double>(budget)) throw budget_error("level too large for gluing graph");
    auto words = all_words(R.X.size(), level);
    for (auto& w : words) out.g.add_vertex(R.X.format_word(w));
    std::set<std::string> seen;
    for (auto& h : nuc.elements) {
        if (h.empty()) continue;
        for (auto& w : words) {
            Word img = R.act(h, w);
            if (img == w) continue;
            int u = out.g.vertex(R.X.format_word(w));
            int v = out.g.vertex(R.X.format_word(img));
            std::string k = std::to_string(std::min(u, v)) + "|" + std::to_string(std::max(u, v));
            if (seen.insert(k).second) out.g.add_edge(u, v, R.format_elem(h), 0);
        }
    }
    return out;
}

// graded graph on words of length <= max_len: lambda = |w|, vertical edges
// x v -> v (arrows descend), horizontal edges v -- g(v) for generators g
inline CocycleGraph gamma_graph(const WreathRecursion& R, int max_len, long long budget = 1 << 20) {
    CocycleGraph cg;
    double total = 0, lvl = 1;
    for (int l = 0; l <= max_len; ++l) {
        total += lvl;
        lvl *= R.X.size();
    }
    if (total > static_cast<double>(budget)) throw budget_error("word tree too large");
    std::vector<Word> all;
    for (int l = 0; l <= max_len; ++l)
        for (auto& w : all_words(R.X.size(), l)) {
            all.push_back(w);
            cg.g.add_vertex(w.empty() ? "e" : R.X.format_word(w));
            cg.lambda.push_back(l);
        }
    auto name_of = [&](const Word& w) { return w.empty() ? std::string("e") : R.X.format_word(w); };
    std::set<std::string> seen;
    for (auto& w : all) {
        if (!w.empty()) {
            Word parent(w.begin() + 1, w.end());
            cg.g.add_edge(cg.g.vertex(name_of(w)), cg.g.vertex(name_of(parent)),
                          "S_" + R.X.names[static_cast<size_t>(w[0])], 1);
        }
        for (int gi = 1; gi <= R.gens(); ++gi) {
            Word img = R.act({gi}, w);
            if (img == w) continue;
            int u = cg.g.vertex(name_of(w));
            int v = cg.g.vertex(name_of(img));
            std::string k = std::to_string(std::min(u, v)) + "|" + std::to_string(std::max(u, v)) +
                            "|" + R.gen_names[static_cast<size_t>(gi - 1)];
            if (seen.insert(k).second)
                cg.g.add_edge(u, v, R.gen_names[static_cast<size_t>(gi - 1)], 1);
        }
    }
    cg.finish();
    cg.truncated[static_cast<size_t>(cg.g.vertex("e"))] = true;  // descent stops at the root
    return cg;
}

}  // namespace hypgrpd

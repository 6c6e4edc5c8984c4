#pragma once

// Groups acting on rooted trees through wreath recursions: g applied to a
// word x w first maps the letter, then the section g|_x continues on w.
// Elements are reduced words over signed generator indices (+i generator,
// -i its inverse). Products act with the rightmost factor first.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "graph.hpp"
#include "words.hpp"

namespace hypgrpd {

using Elem = std::vector<int>;  // signed 1-based generator indices, freely reduced

inline Elem reduce_elem(Elem w) {
    Elem out;
    for (int s : w) {
        if (!out.empty() && out.back() == -s)
            out.pop_back();
        else
            out.push_back(s);
    }
    return out;
}

inline Elem elem_inverse(const Elem& w) {
    Elem out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
    return out;
}

inline Elem elem_mul(const Elem& a, const Elem& b) {
    Elem out = a;
    out.insert(out.end(), b.begin(), b.end());
    return reduce_elem(out);
}

inline std::string elem_key(const Elem& w) {
    std::string k;
    for (int s : w) k += std::to_string(s) + ",";
    return k;
}

struct WreathRecursion {
    Alphabet X;
    std::vector<std::string> gen_names;
    // per positive generator: image letter and section word per letter
    std::vector<std::vector<int>> perm;
    std::vector<std::vector<Elem>> sect;
    std::vector<std::vector<int>> perm_inv;

    int gens() const { return static_cast<int>(gen_names.size()); }

    void finish() {
        perm_inv.assign(perm.size(), std::vector<int>(static_cast<size_t>(X.size()), -1));
        for (size_t g = 0; g < perm.size(); ++g) {
            if (perm[g].size() != static_cast<size_t>(X.size()) ||
                sect[g].size() != static_cast<size_t>(X.size()))
                throw input_error("generator '" + gen_names[g] + "' must map every letter");
            std::vector<char> hit(static_cast<size_t>(X.size()), 0);
            for (int x = 0; x < X.size(); ++x) {
                int y = perm[g][static_cast<size_t>(x)];
                if (y < 0 || y >= X.size() || hit[static_cast<size_t>(y)])
                    throw input_error("generator '" + gen_names[g] + "' is not a permutation of letters");
                hit[static_cast<size_t>(y)] = 1;
                perm_inv[g][static_cast<size_t>(y)] = x;
            }
        }
    }

    Elem parse_elem(const std::string& s) const {
        // whitespace separated tokens, each "name" or "name^-1"; "1" = identity
        Elem out;
        size_t pos = 0;
        while (pos < s.size()) {
            while (pos < s.size() && (s[pos] == ' ' || s[pos] == '*')) ++pos;
            if (pos >= s.size()) break;
            size_t end = pos;
            while (end < s.size() && s[end] != ' ' && s[end] != '*') ++end;
            std::string tok = s.substr(pos, end - pos);
            pos = end;
            if (tok == "1") continue;
            bool inv = false;
            if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
                inv = true;
                tok = tok.substr(0, tok.size() - 3);
            }
            int gi = -1;
            for (int g = 0; g < gens(); ++g)
                if (gen_names[static_cast<size_t>(g)] == tok) gi = g;
            if (gi < 0) throw input_error("unknown generator '" + tok + "'");
            out.push_back(inv ? -(gi + 1) : gi + 1);
        }
        return reduce_elem(out);
    }

    std::string format_elem(const Elem& w) const {
        if (w.empty()) return "1";
        std::string out;
        for (size_t i = 0; i < w.size(); ++i) {
            if (i) out += " ";
            int s = w[i];
            out += gen_names[static_cast<size_t>(std::abs(s) - 1)];
            if (s < 0) out += "^-1";
        }
        return out;
    }

    // one letter through one signed generator: returns image letter,
    // appends the section to `sec`
    int step(int signed_gen, int x, Elem& sec) const {
        size_t g = static_cast<size_t>(std::abs(signed_gen) - 1);
        if (signed_gen > 0) {
            sec.insert(sec.end(), sect[g][static_cast<size_t>(x)].begin(), sect[g][static_cast<size_t>(x)].end());
            return perm[g][static_cast<size_t>(x)];
        }
        int pre = perm_inv[g][static_cast<size_t>(x)];
        Elem inv = elem_inverse(sect[g][static_cast<size_t>(pre)]);
        sec.insert(sec.end(), inv.begin(), inv.end());
        return pre;
    }

    // one letter through a word (rightmost acts first); sections are
    // collected in original word order so the result is the section word
    int act_letter(const Elem& w, int x, Elem& next) const {
        std::vector<Elem> parts(w.size());
        int cur = x;
        for (size_t i = w.size(); i-- > 0;) cur = step(w[i], cur, parts[i]);
        Elem cat;
        for (auto& p : parts) cat.insert(cat.end(), p.begin(), p.end());
        next = reduce_elem(cat);
        return cur;
    }

    Word act(const Elem& w, const Word& v) const {
        Word out;
        Elem cur = w, next;
        for (int x : v) {
            out.push_back(act_letter(cur, x, next));
            cur = next;
        }
        return out;
    }

    Elem section(const Elem& w, const Word& v) const {
        Elem cur = w, next;
        for (int x : v) {
            act_letter(cur, x, next);
            cur = next;
        }
        return cur;
    }
};

struct ActInfiniteResult {
    bool truncated;
    EvPeriodicWord image;  // valid when !truncated
    Word partial;          // emitted prefix when truncated
};

// image of an eventually periodic word: consume the preperiod, then watch
// for a repeated (section, phase) state at period boundaries
inline ActInfiniteResult act_infinite(const WreathRecursion& R, const Elem& g,
                                      const EvPeriodicWord& p, long long budget = 4096) {
    Elem cur = reduce_elem(g), next;
    Word emitted;
    for (int x : p.pre) {
        emitted.push_back(R.act_letter(cur, x, next));
        cur = next;
    }
    size_t pre_len = emitted.size();
    std::map<std::string, size_t> seen;  // state key -> emitted size at that point
    for (long long iter = 0; iter < budget; ++iter) {
        std::string key = elem_key(cur);
        auto it = seen.find(key);
        if (it != seen.end()) {
            Word out_pre(emitted.begin(), emitted.begin() + static_cast<long long>(it->second));
            Word out_per(emitted.begin() + static_cast<long long>(it->second), emitted.end());
            return {false, EvPeriodicWord(out_pre, out_per), {}};
        }
        seen.emplace(key, emitted.size());
        for (int x : p.per) {
            emitted.push_back(R.act_letter(cur, x, next));
            cur = next;
        }
    }
    (void)pre_len;
    return {true, EvPeriodicWord(), emitted};
}

enum class Tri { Yes, No, Unknown };

struct TrivialityResult {
    Tri verdict;
    Word witness;  // a word moved by the element when verdict == No
};

// an element is trivial iff no state in its section closure moves a letter
inline TrivialityResult is_trivial(const WreathRecursion& R, const Elem& g, long long budget = 20000) {
    Elem start = reduce_elem(g);
    std::map<std::string, int> id_of;
    std::vector<Elem> states{start};
    std::vector<std::pair<int, int>> parent{{-1, -1}};  // (state, letter)
    id_of.emplace(elem_key(start), 0);
    for (size_t qi = 0; qi < states.size(); ++qi) {
        Elem cur = states[qi];
        Elem next;
        for (int x = 0; x < R.X.size(); ++x) {
            int y = R.act_letter(cur, x, next);
            if (y != x) {
                // path to this state, then the moved letter
                Word w;
                int node = static_cast<int>(qi);
                while (parent[static_cast<size_t>(node)].first >= 0) {
                    w.push_back(parent[static_cast<size_t>(node)].second);
                    node = parent[static_cast<size_t>(node)].first;
                }
                std::reverse(w.begin(), w.end());
                w.push_back(x);
                return {Tri::No, w};
            }
            std::string k = elem_key(next);
            if (!id_of.count(k)) {
                if (static_cast<long long>(states.size()) >= budget) return {Tri::Unknown, {}};
                id_of.emplace(k, static_cast<int>(states.size()));
                states.push_back(next);
                parent.emplace_back(static_cast<int>(qi), x);
            }
        }
    }
    return {Tri::Yes, {}};
}

inline Tri elems_equal(const WreathRecursion& R, const Elem& a, const Elem& b, long long budget = 20000) {
    return is_trivial(R, elem_mul(a, elem_inverse(b)), budget).verdict;
}

// ---- nucleus --------------------------------------------------------------

struct NucleusResult {
    bool contracting;      // closure stabilized within budget
    std::vector<Elem> elements;
    std::string detail;
    long long classes_seen;
};

namespace detail {

// registry of semantic equivalence classes of elements
struct ClassRegistry {
    const WreathRecursion& R;
    long long eq_budget;
    std::vector<Elem> reps;
    std::map<std::string, int> by_key;

    explicit ClassRegistry(const WreathRecursion& r, long long eb) : R(r), eq_budget(eb) {}

    int find(const Elem& e) {
        Elem red = reduce_elem(e);
        auto it = by_key.find(elem_key(red));
        if (it != by_key.end()) return it->second;
        for (size_t i = 0; i < reps.size(); ++i) {
            Tri t = elems_equal(R, red, reps[i], eq_budget);
            if (t == Tri::Unknown) throw budget_error("element comparison exceeded budget");
            if (t == Tri::Yes) {
                by_key.emplace(elem_key(red), static_cast<int>(i));
                return static_cast<int>(i);
            }
        }
        reps.push_back(red);
        by_key.emplace(elem_key(red), static_cast<int>(reps.size()) - 1);
        return static_cast<int>(reps.size()) - 1;
    }
};

}  // namespace detail

// classes of sections that recur along the section closure of e: nodes on
// cycles of the class graph, plus everything they reach
inline std::vector<int> attractor_classes(const WreathRecursion& R, detail::ClassRegistry& reg,
                                          const Elem& e, long long state_budget) {
    std::vector<int> nodes;          // class ids in discovery order
    std::map<int, size_t> node_pos;
    std::vector<std::vector<int>> out_edges;
    std::function<size_t(int)> ensure = [&](int cls) {
        auto it = node_pos.find(cls);
        if (it != node_pos.end()) return it->second;
        nodes.push_back(cls);
        out_edges.emplace_back();
        node_pos.emplace(cls, nodes.size() - 1);
        return nodes.size() - 1;
    };
    ensure(reg.find(e));
    for (size_t qi = 0; qi < nodes.size(); ++qi) {
        if (static_cast<long long>(nodes.size()) > state_budget)
            throw budget_error("attractor exploration exceeded budget");
        Elem cur = reg.reps[static_cast<size_t>(nodes[qi])];
        Elem next;
        for (int x = 0; x < R.X.size(); ++x) {
            R.act_letter(cur, x, next);
            size_t tgt = ensure(reg.find(next));
            out_edges[qi].push_back(static_cast<int>(tgt));
        }
    }
    size_t n = nodes.size();
    // on_cycle via iterated reachability (sizes are tiny)
    std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
    for (size_t i = 0; i < n; ++i)
        for (int j : out_edges[i]) reach[i][static_cast<size_t>(j)] = 1;
    for (size_t k = 0; k < n; ++k)
        for (size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = 1;
    std::vector<int> result;
    std::vector<char> keep(n, 0);
    for (size_t i = 0; i < n; ++i)
        if (reach[i][i]) keep[i] = 1;
    // forward closure from cycles
    bool changed = true;
    while (changed) {
        changed = false;
        for (size_t i = 0; i < n; ++i)
            if (keep[i])
                for (int j : out_edges[i])
                    if (!keep[static_cast<size_t>(j)]) {
                        keep[static_cast<size_t>(j)] = 1;
                        changed = true;
                    }
    }
    for (size_t i = 0; i < n; ++i)
        if (keep[i]) result.push_back(nodes[i]);
    return result;
}

inline NucleusResult nucleus(const WreathRecursion& R, long long class_budget = 3000,
                             long long eq_budget = 20000) {
    NucleusResult res{};
    detail::ClassRegistry reg(R, eq_budget);
    std::set<int> N;
    try {
        N.insert(reg.find({}));  // identity
        std::vector<int> fresh;
        auto absorb = [&](const Elem& e) {
            for (int c : attractor_classes(R, reg, e, class_budget))
                if (N.insert(c).second) fresh.push_back(c);
            if (static_cast<long long>(reg.reps.size()) > class_budget)
                throw budget_error("nucleus closure exceeded budget");
        };
        for (int g = 1; g <= R.gens(); ++g) {
            absorb({g});
            absorb({-g});
        }
        // close under products of pairs
        std::vector<int> frontier(N.begin(), N.end());
        while (!frontier.empty()) {
            std::vector<int> current(N.begin(), N.end());
            std::vector<int> next_frontier;
            for (int a : current)
                for (int b : frontier) {
                    fresh.clear();
                    absorb(elem_mul(reg.reps[static_cast<size_t>(a)], reg.reps[static_cast<size_t>(b)]));
                    if (a != b)
                        absorb(elem_mul(reg.reps[static_cast<size_t>(b)], reg.reps[static_cast<size_t>(a)]));
                    next_frontier.insert(next_frontier.end(), fresh.begin(), fresh.end());
                }
            frontier = next_frontier;
        }
        res.contracting = true;
        for (int c : N) res.elements.push_back(reg.reps[static_cast<size_t>(c)]);
        res.classes_seen = static_cast<long long>(reg.reps.size());
        // sanity: the produced set is closed under sections
        for (int c : N) {
            Elem cur = reg.reps[static_cast<size_t>(c)], next;
            for (int x = 0; x < R.X.size(); ++x) {
                R.act_letter(cur, x, next);
                if (!N.count(reg.find(next)))
                    throw violation_error("nucleus candidate is not section-closed");
            }
        }
    } catch (const budget_error& e) {
        res.contracting = false;
        res.detail = std::string("not contracting within budget: ") + e.what();
        res.classes_seen = static_cast<long long>(reg.reps.size());
    }
    return res;
}

// ---- orbits and Schreier graphs -------------------------------------------

inline Graph schreier_graph(const WreathRecursion& R, int level, long long budget = 1 << 20) {
    double total = 1;
    for (int i = 0; i < level; ++i) total *= R.X.size();
    if (total > static_cast<double>(budget)) throw budget_error("level too large for schreier graph");
    Graph g;
    auto words = all_words(R.X.size(), level);
    for (auto& w : words) g.add_vertex(R.X.format_word(w));
    for (int gi = 1; gi <= R.gens(); ++gi)
        for (auto& w : words) {
            Word img = R.act({gi}, w);
            g.add_edge(g.vertex(R.X.format_word(w)), g.vertex(R.X.format_word(img)),
                       R.gen_names[static_cast<size_t>(gi - 1)], 1);
        }
    return g;
}

inline std::vector<Word> orbit(const WreathRecursion& R, const std::vector<Elem>& gens,
                               const Word& start, long long budget = 1 << 20) {
    std::set<Word> seen{start};
    std::vector<Word> queue{start};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        Word cur = queue[qi];
        for (auto& g : gens)
            for (int sgn = 0; sgn < 2; ++sgn) {
                Word img = R.act(sgn ? elem_inverse(g) : g, cur);
                if (seen.insert(img).second) {
                    if (static_cast<long long>(seen.size()) > budget)
                        throw budget_error("orbit exceeded budget");
                    queue.push_back(img);
                }
            }
    }
    return {seen.begin(), seen.end()};
}

// non-trivial elements acting trivially on a cylinder: witnesses that the
// groupoid of germs is not Hausdorff. A bounded search, never exhaustive.
struct GermWitness {
    Elem element;
    Word cylinder;
};

struct HausdorffProbe {
    std::vector<GermWitness> witnesses;
    bool exhaustive = false;  // stays false: this probe is a heuristic
    long long elements_tried = 0;
};

inline HausdorffProbe hausdorff_probe(const WreathRecursion& R, int max_len = 4, int cyl_depth = 3,
                                      long long budget = 20000) {
    HausdorffProbe out;
    // enumerate reduced words up to max_len
    std::vector<Elem> todo{{}};
    for (int len = 1; len <= max_len; ++len) {
        std::vector<Elem> next;
        for (auto& w : todo)
            if (static_cast<int>(w.size()) == len - 1)
                for (int s = 1; s <= R.gens(); ++s)
                    for (int sgn : {1, -1}) {
                        Elem e = w;
                        if (!e.empty() && e.back() == -s * sgn) continue;
                        e.push_back(s * sgn);
                        next.push_back(e);
                    }
        todo.insert(todo.end(), next.begin(), next.end());
    }
    for (auto& g : todo) {
        if (g.empty()) continue;
        ++out.elements_tried;
        if (out.elements_tried > budget) break;
        if (is_trivial(R, g, budget).verdict != Tri::No) continue;
        for (int d = 1; d <= cyl_depth; ++d) {
            bool found = false;
            for (auto& v : all_words(R.X.size(), d)) {
                if (R.act(g, v) != v) continue;
                if (is_trivial(R, R.section(g, v), budget).verdict == Tri::Yes) {
                    out.witnesses.push_back({g, v});
                    found = true;
                    break;
                }
            }
            if (found) break;
        }
    }
    return out;
}

// ---- presets & json -------------------------------------------------------

inline WreathRecursion adding_machine() {
    WreathRecursion R;
    R.X = Alphabet::binary();
    R.gen_names = {"t"};
    R.perm = {{1, 0}};
    R.sect = {{{}, {1}}};  // t(0w) = 1w, t(1w) = 0 t(w)
    R.finish();
    return R;
}

inline WreathRecursion basilica() {
    WreathRecursion R;
    R.X = Alphabet::binary();
    R.gen_names = {"a", "b"};
    R.perm = {{1, 0}, {0, 1}};
    R.sect = {{{}, {2}}, {{}, {1}}};  // a(0w)=1w, a(1w)=0 b(w); b(0w)=0w, b(1w)=1 a(w)
    R.finish();
    return R;
}

inline WreathRecursion recursion_from_json(const json& j) {
    WreathRecursion R;
    if (!j.contains("alphabet") || !j.contains("generators"))
        throw input_error("automaton json needs 'alphabet' and 'generators'");
    std::vector<std::string> letters;
    for (auto& l : j["alphabet"]) letters.push_back(l.get<std::string>());
    R.X = Alphabet(letters);
    for (auto& [name, _] : j["generators"].items()) R.gen_names.push_back(name);
    R.perm.assign(R.gen_names.size(), std::vector<int>(static_cast<size_t>(R.X.size()), -1));
    R.sect.assign(R.gen_names.size(), std::vector<Elem>(static_cast<size_t>(R.X.size())));
    int gi = 0;
    for (auto& [name, rules] : j["generators"].items()) {
        for (auto& [letter, rule] : rules.items()) {
            int x = R.X.index(letter);
            if (x < 0) throw input_error("rule letter '" + letter + "' not in alphabet");
            if (!rule.is_array() || rule.size() != 2)
                throw input_error("rule must be [image, [sections...]]");
            int y = R.X.index(rule[0].get<std::string>());
            if (y < 0) throw input_error("rule image not in alphabet");
            R.perm[static_cast<size_t>(gi)][static_cast<size_t>(x)] = y;
            Elem sec;
            for (auto& s : rule[1]) {
                std::string nm = s.get<std::string>();
                bool inv = false;
                if (nm.size() > 3 && nm.substr(nm.size() - 3) == "^-1") {
                    inv = true;
                    nm = nm.substr(0, nm.size() - 3);
                }
                int k = -1;
                for (size_t q = 0; q < R.gen_names.size(); ++q)
                    if (R.gen_names[q] == nm) k = static_cast<int>(q);
                if (k < 0) throw input_error("section references unknown generator '" + nm + "'");
                sec.push_back(inv ? -(k + 1) : k + 1);
            }
            R.sect[static_cast<size_t>(gi)][static_cast<size_t>(x)] = sec;
        }
        for (int x = 0; x < R.X.size(); ++x)
            if (R.perm[static_cast<size_t>(gi)][static_cast<size_t>(x)] < 0)
                throw input_error("generator '" + name + "' missing rule for letter '" +
                                  R.X.names[static_cast<size_t>(x)] + "'");
        ++gi;
    }
    R.finish();
    return R;
}

inline json recursion_to_json(const WreathRecursion& R) {
    json j;
    j["alphabet"] = R.X.names;
    json gens = json::object();
    for (int g = 0; g < R.gens(); ++g) {
        json rules = json::object();
        for (int x = 0; x < R.X.size(); ++x) {
            json sec = json::array();
            for (int s : R.sect[static_cast<size_t>(g)][static_cast<size_t>(x)]) {
                std::string nm = R.gen_names[static_cast<size_t>(std::abs(s) - 1)];
                if (s < 0) nm += "^-1";
                sec.push_back(nm);
            }
            rules[R.X.names[static_cast<size_t>(x)]] =
                json::array({R.X.names[static_cast<size_t>(R.perm[static_cast<size_t>(g)][static_cast<size_t>(x)])], sec});
        }
        gens[R.gen_names[static_cast<size_t>(g)]] = rules;
    }
    j["generators"] = gens;
    return j;
}

inline WreathRecursion recursion_preset(const std::string& name) {
    if (name == "adding-machine") return adding_machine();
    if (name == "basilica") return basilica();
    throw input_error("unknown automaton preset '" + name + "'");
}

}  // namespace hypgrpd

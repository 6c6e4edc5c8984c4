#pragma once

// Subshifts of finite type over a finite alphabet, two-sided points as
// pairs of eventually periodic rays, the splice operation, and the
// past-projection duality.

#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "json_util.hpp"
#include "words.hpp"

namespace hypgrpd {

struct SftSystem {
    Alphabet A;
    std::vector<Word> prohibited;

    int max_word() const {
        size_t m = 1;
        for (auto& w : prohibited) m = std::max(m, w.size());
        return static_cast<int>(m);
    }

    static SftSystem full_shift(const Alphabet& a) { return {a, {}}; }

    static SftSystem from_matrix(const Alphabet& a, const std::vector<std::vector<int>>& m) {
        SftSystem s{a, {}};
        if (m.size() != static_cast<size_t>(a.size())) throw input_error("matrix size mismatch");
        for (int i = 0; i < a.size(); ++i) {
            if (m[static_cast<size_t>(i)].size() != static_cast<size_t>(a.size()))
                throw input_error("matrix is not square");
            for (int j = 0; j < a.size(); ++j)
                if (!m[static_cast<size_t>(i)][static_cast<size_t>(j)]) s.prohibited.push_back({i, j});
        }
        return s;
    }

    // 0-1 transition matrix when every prohibited word has length 2
    bool matrix_form(std::vector<std::vector<int>>* out = nullptr) const {
        for (auto& w : prohibited)
            if (w.size() != 2) return false;
        if (out) {
            out->assign(static_cast<size_t>(A.size()), std::vector<int>(static_cast<size_t>(A.size()), 1));
            for (auto& w : prohibited)
                (*out)[static_cast<size_t>(w[0])][static_cast<size_t>(w[1])] = 0;
        }
        return true;
    }

    bool admissible(const Word& w) const {
        for (auto& p : prohibited) {
            if (p.size() > w.size()) continue;
            for (size_t i = 0; i + p.size() <= w.size(); ++i) {
                bool hit = true;
                for (size_t j = 0; j < p.size() && hit; ++j) hit = w[i + j] == p[j];
                if (hit) return false;
            }
        }
        return true;
    }

    // letters of w one at a time from an eventually periodic source
    bool admissible_window(const std::function<int(long long)>& digit, long long lo, long long hi) const {
        int L = max_word();
        for (long long s = lo; s + L - 1 <= hi; ++s) {
            Word w;
            for (long long i = s; i < s + L; ++i) w.push_back(digit(i));
            for (auto& p : prohibited) {
                if (static_cast<long long>(p.size()) > L) continue;
                for (size_t off = 0; off + p.size() <= w.size(); ++off) {
                    bool hit = true;
                    for (size_t j = 0; j < p.size() && hit; ++j) hit = w[off + j] == p[j];
                    if (hit) return false;
                }
            }
        }
        if (static_cast<long long>(L) > hi - lo + 1) {
            Word w;
            for (long long i = lo; i <= hi; ++i) w.push_back(digit(i));
            return admissible(w);
        }
        return true;
    }

    // words extendable to an infinite admissible continuation on the right:
    // fixed point over suffix states of length max_word()-1
    bool right_extendable(const Word& w) const;
    bool left_extendable(const Word& w) const;

    json to_json() const {
        json j;
        j["alphabet"] = A.names;
        json pr = json::array();
        for (auto& w : prohibited) pr.push_back(A.format_word(w));
        j["prohibited"] = pr;
        return j;
    }

    static SftSystem from_json(const json& j) {
        if (!j.contains("alphabet")) throw input_error("sft json needs 'alphabet'");
        std::vector<std::string> letters;
        for (auto& l : j["alphabet"]) letters.push_back(l.get<std::string>());
        SftSystem s{Alphabet(letters), {}};
        if (j.contains("matrix")) {
            std::vector<std::vector<int>> m;
            for (auto& row : j["matrix"]) m.push_back(row.get<std::vector<int>>());
            return from_matrix(s.A, m);
        }
        if (j.contains("prohibited"))
            for (auto& w : j["prohibited"]) s.prohibited.push_back(s.A.parse_word(w.get<std::string>()));
        return s;
    }
};

namespace detail {

// states = words of length max_word-1 (or shorter near the empty word);
// a state can continue forever iff it reaches a cycle in the follower graph
struct FollowerGraph {
    const SftSystem& s;
    int L;  // state length
    std::map<Word, int> ids;
    std::vector<Word> states;
    std::vector<std::vector<int>> next;
    std::vector<char> immortal;

    explicit FollowerGraph(const SftSystem& sft, bool reversed) : s(sft) {
        L = s.max_word() - 1;
        // enumerate admissible states
        std::vector<Word> all = all_words(s.A.size(), L);
        for (auto& w : all) {
            Word probe = reversed ? Word(w.rbegin(), w.rend()) : w;
            if (!s.admissible(probe)) continue;
            ids.emplace(w, static_cast<int>(states.size()));
            states.push_back(w);
        }
        next.assign(states.size(), {});
        for (size_t i = 0; i < states.size(); ++i) {
            for (int a = 0; a < s.A.size(); ++a) {
                Word ext = states[i];
                ext.push_back(a);
                Word probe = reversed ? Word(ext.rbegin(), ext.rend()) : ext;
                if (!s.admissible(probe)) continue;
                Word nxt(ext.end() - L, ext.end());
                auto it = ids.find(nxt);
                if (it != ids.end()) next[i].push_back(it->second);
            }
        }
        // immortal = can take arbitrarily many steps: greatest fixed point
        immortal.assign(states.size(), 1);
        bool changed = true;
        while (changed) {
            changed = false;
            for (size_t i = 0; i < states.size(); ++i) {
                if (!immortal[i]) continue;
                bool ok = false;
                for (int j : next[i])
                    if (immortal[static_cast<size_t>(j)]) ok = true;
                if (!ok) {
                    immortal[i] = 0;
                    changed = true;
                }
            }
        }
    }

    bool extendable(const Word& w) const {
        if (L == 0) return !states.empty();
        if (static_cast<int>(w.size()) < L) {
            // try every completion of the short state
            for (auto& st : states) {
                bool match = true;
                for (size_t i = 0; i < w.size() && match; ++i)
                    match = st[st.size() - w.size() + i] == w[i];
                if (match && immortal[static_cast<size_t>(ids.at(st))]) return true;
            }
            return false;
        }
        Word tail(w.end() - L, w.end());
        auto it = ids.find(tail);
        return it != ids.end() && immortal[static_cast<size_t>(it->second)];
    }
};

}  // namespace detail

inline bool SftSystem::right_extendable(const Word& w) const {
    if (!admissible(w)) return false;
    static thread_local std::map<std::string, std::shared_ptr<detail::FollowerGraph>> cache;
    std::string key = dump_json(to_json());
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<detail::FollowerGraph>(*this, false)).first;
    return it->second->extendable(w);
}

inline bool SftSystem::left_extendable(const Word& w) const {
    Word rev(w.rbegin(), w.rend());
    static thread_local std::map<std::string, std::shared_ptr<detail::FollowerGraph>> cache;
    std::string key = dump_json(to_json());
    auto it = cache.find(key);
    if (it == cache.end())
        it = cache.emplace(key, std::make_shared<detail::FollowerGraph>(*this, true)).first;
    return it->second->extendable(rev);
}

// ---- two-sided points ------------------------------------------------------

// left holds coordinates 0, -1, -2, ... ; right holds 0, 1, 2, ...; the two
// share coordinate 0
struct BiSeq {
    EvPeriodicWord left, right;

    int at(long long n) const { return n >= 0 ? right.digit(n) : left.digit(-n); }

    bool operator==(const BiSeq& o) const { return left == o.left && right == o.right; }

    std::string format(const Alphabet& a) const {
        return left.format(a) + "|" + right.format(a);
    }

    static BiSeq parse(const Alphabet& a, const std::string& s) {
        auto bar = s.find('|');
        if (bar == std::string::npos) throw input_error("point must be 'left|right'");
        BiSeq b{EvPeriodicWord::parse(a, s.substr(0, bar)), EvPeriodicWord::parse(a, s.substr(bar + 1))};
        if (b.left.digit(0) != b.right.digit(0))
            throw input_error("left and right rays disagree at coordinate 0");
        return b;
    }
};

// window radius capturing both rays' periodic structure
inline long long biseq_check_radius(const SftSystem& s, const BiSeq& x) {
    long long lper = static_cast<long long>(x.left.per.size());
    long long rper = static_cast<long long>(x.right.per.size());
    long long pre = std::max(x.left.pre.size(), x.right.pre.size());
    return pre + 2 * lper * rper + s.max_word() + 2;
}

inline bool biseq_admissible(const SftSystem& s, const BiSeq& x) {
    long long R = biseq_check_radius(s, x);
    return s.admissible_window([&](long long n) { return x.at(n); }, -R, R);
}

// [x, y]: future of x spliced onto the past of y inside the chart x_0 = y_0
inline BiSeq splice(const SftSystem& s, const BiSeq& x, const BiSeq& y) {
    if (x.at(0) != y.at(0))
        throw input_error("splice needs matching coordinate zero");
    if (!biseq_admissible(s, x) || !biseq_admissible(s, y))
        throw input_error("splice arguments must be admissible points");
    BiSeq z{y.left, x.right};
    // the weld can create prohibited words straddling coordinate 0
    if (!biseq_admissible(s, z))
        throw violation_error("spliced point leaves the subshift");
    return z;
}

struct FriedResult {
    long long n;
    bool saturated;  // agreement reached the horizon
};

// largest n <= horizon with x_k = y_k for all |k| < n
inline FriedResult fried_logscale(const SftSystem& s, const BiSeq& x, const BiSeq& y, long long horizon) {
    (void)s;
    if (x == y) return {horizon, true};
    for (long long n = 0; n < horizon; ++n) {
        if (x.at(n) != y.at(n) || x.at(-n) != y.at(-n)) return {n, false};
    }
    return {horizon, true};
}

inline SftSystem dual_sft(const SftSystem& s) {
    SftSystem d{s.A, {}};
    for (auto& w : s.prohibited) d.prohibited.push_back(Word(w.rbegin(), w.rend()));
    return d;
}

struct DualityWitness {
    bool ok;
    long long horizon;
    long long words_checked;
    std::string offending;  // first word where the languages differ
};

// The past language of the natural extension, read outward from coordinate
// 0, must equal the (right-extendable) language of the reversed system.
// Both sides are computed independently: the left side through extendability
// in `s`, the right side through the dual system's own machinery.
inline DualityWitness duality_witness(const SftSystem& s, long long horizon) {
    SftSystem d = dual_sft(s);
    DualityWitness out{true, horizon, 0, ""};
    std::vector<Word> frontier{{}};
    for (long long len = 1; len <= horizon; ++len) {
        std::vector<Word> next;
        for (auto& w : frontier)
            for (int a = 0; a < s.A.size(); ++a) {
                Word v = w;
                v.push_back(a);
                // v lists x_0, x_{-1}, ..., x_{-(len-1)}: a genuine past of a
                // two-sided point iff its reversal sits inside s with an
                // infinite continuation on both sides
                Word rev(v.rbegin(), v.rend());
                bool lhs = s.admissible(rev) && s.left_extendable(rev) && s.right_extendable(rev);
                bool rhs = d.admissible(v) && d.right_extendable(v) && d.left_extendable(v);
                ++out.words_checked;
                if (lhs != rhs) {
                    out.ok = false;
                    out.offending = s.A.format_word(v);
                    return out;
                }
                if (rhs) next.push_back(v);
            }
        frontier = next;
    }
    return out;
}

inline bool same_future(const BiSeq& x, const BiSeq& y) { return x.right == y.right; }
inline bool same_past(const BiSeq& x, const BiSeq& y) { return x.left == y.left; }

inline SftSystem sft_preset(const std::string& name) {
    if (name == "full2") return SftSystem::full_shift(Alphabet::binary());
    if (name == "golden-mean") {
        SftSystem s{Alphabet::binary(), {}};
        s.prohibited.push_back(s.A.parse_word("11"));
        return s;
    }
    if (name == "free-group") {
        // boundary of F_2: letters a, A, b, B with no immediate cancellation
        Alphabet a({"a", "A", "b", "B"});
        SftSystem s{a, {}};
        s.prohibited.push_back(a.parse_word("aA"));
        s.prohibited.push_back(a.parse_word("Aa"));
        s.prohibited.push_back(a.parse_word("bB"));
        s.prohibited.push_back(a.parse_word("Bb"));
        return s;
    }
    throw input_error("unknown sft preset '" + name + "'");
}

}  // namespace hypgrpd

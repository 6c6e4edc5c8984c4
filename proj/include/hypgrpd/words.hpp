#pragma once

// Alphabets, finite words, and eventually periodic one-sided infinite words
// in canonical form (shortest preperiod, primitive period).

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "base.hpp"

namespace hypgrpd {

using Word = std::vector<int>;

struct Alphabet {
    std::vector<std::string> names;

    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> n) : names(std::move(n)) {
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i + 1; j < names.size(); ++j)
                if (names[i] == names[j])
                    throw input_error("alphabet has duplicate letter '" + names[i] + "'");
        if (names.empty()) throw input_error("alphabet is empty");
    }
    static Alphabet binary() { return Alphabet({"0", "1"}); }

    int size() const { return static_cast<int>(names.size()); }

    int index(const std::string& s) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == s) return static_cast<int>(i);
        return -1;
    }

    bool single_char() const {
        for (auto& n : names)
            if (n.size() != 1) return false;
        return true;
    }

    Word parse_word(const std::string& s) const {
        Word w;
        if (s.empty()) return w;
        if (single_char()) {
            for (char c : s) {
                int i = index(std::string(1, c));
                if (i < 0) throw input_error(std::string("letter '") + c + "' not in alphabet");
                w.push_back(i);
            }
            return w;
        }
        size_t pos = 0;
        while (pos <= s.size()) {
            size_t comma = s.find(',', pos);
            std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            int i = index(tok);
            if (i < 0) throw input_error("letter '" + tok + "' not in alphabet");
            w.push_back(i);
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return w;
    }

    std::string format_word(const Word& w) const {
        std::string out;
        bool compact = single_char();
        for (size_t i = 0; i < w.size(); ++i) {
            if (!compact && i) out += ',';
            out += names[static_cast<size_t>(w[i])];
        }
        return out;
    }
};

// One-sided infinite word pre . per per per ...  Canonical form makes
// operator== decide genuine equality of the infinite sequences.
struct EvPeriodicWord {
    Word pre, per;

    EvPeriodicWord() : per{0} {}
    EvPeriodicWord(Word pre_, Word per_) : pre(std::move(pre_)), per(std::move(per_)) {
        if (per.empty()) throw input_error("eventually periodic word needs a nonempty period");
        normalize();
    }

    void normalize() {
        // primitive period
        size_t n = per.size();
        for (size_t p = 1; p < n; ++p) {
            if (n % p) continue;
            bool rep = true;
            for (size_t i = p; i < n && rep; ++i) rep = per[i] == per[i % p];
            if (rep) {
                per.resize(p);
                break;
            }
        }
        // absorb the periodic tail of the preperiod
        while (!pre.empty() && pre.back() == per.back()) {
            per.insert(per.begin(), per.back());
            per.pop_back();
            pre.pop_back();
        }
    }

    int digit(long long i) const {
        if (i < static_cast<long long>(pre.size())) return pre[static_cast<size_t>(i)];
        long long j = (i - static_cast<long long>(pre.size())) % static_cast<long long>(per.size());
        return per[static_cast<size_t>(j)];
    }

    // canonical position class: distinct preperiod slots, then slots modulo the period
    long long phase(long long i) const {
        if (i < static_cast<long long>(pre.size())) return i;
        return static_cast<long long>(pre.size()) +
               (i - static_cast<long long>(pre.size())) % static_cast<long long>(per.size());
    }

    Word prefix(long long n) const {
        Word w;
        w.reserve(static_cast<size_t>(n));
        for (long long i = 0; i < n; ++i) w.push_back(digit(i));
        return w;
    }

    // drop the first k letters (apply the one-sided shift k times)
    EvPeriodicWord shifted(long long k) const {
        EvPeriodicWord out;
        Word np;
        for (long long i = k; i < static_cast<long long>(pre.size()); ++i)
            np.push_back(pre[static_cast<size_t>(i)]);
        Word npr = per;
        if (k > static_cast<long long>(pre.size())) {
            long long rot = (k - static_cast<long long>(pre.size())) % static_cast<long long>(per.size());
            std::rotate(npr.begin(), npr.begin() + rot, npr.end());
        }
        return EvPeriodicWord(np, npr);
    }

    EvPeriodicWord prepended(const Word& w) const {
        Word np = w;
        np.insert(np.end(), pre.begin(), pre.end());
        return EvPeriodicWord(np, per);
    }

    bool operator==(const EvPeriodicWord& o) const { return pre == o.pre && per == o.per; }
    bool operator!=(const EvPeriodicWord& o) const { return !(*this == o); }
    bool operator<(const EvPeriodicWord& o) const {
        return pre != o.pre ? pre < o.pre : per < o.per;
    }

    std::string format(const Alphabet& a) const {
        return a.format_word(pre) + "(" + a.format_word(per) + ")";
    }

    static EvPeriodicWord parse(const Alphabet& a, const std::string& s) {
        auto open = s.find('(');
        if (open == std::string::npos || s.back() != ')')
            throw input_error("expected 'pre(per)' form, got '" + s + "'");
        Word pre = a.parse_word(s.substr(0, open));
        Word per = a.parse_word(s.substr(open + 1, s.size() - open - 2));
        if (per.empty()) throw input_error("empty period in '" + s + "'");
        return EvPeriodicWord(pre, per);
    }
};

inline std::vector<Word> all_words(int alphabet_size, int length) {
    std::vector<Word> out;
    Word cur(static_cast<size_t>(length), 0);
    if (length == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int i = length - 1;
        while (i >= 0 && cur[static_cast<size_t>(i)] == alphabet_size - 1) {
            cur[static_cast<size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<size_t>(i)];
    }
    return out;
}

}  // namespace hypgrpd

#pragma once

// Log-scales on finite point sets: symmetric integer kernels that are
// +infinity exactly on the diagonal and satisfy the triangle-with-drift
// inequality  l(x,z) >= min(l(x,y), l(y,z)) - delta.  The metrization
// goes through the dyadic weight rho = 2^(-floor(l / (2 delta))) and the
// shortest-path closure, which keeps every quantity an exact rational.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json_util.hpp"

namespace hypgrpd {

struct LogScale {
    std::vector<std::string> points;
    // values[i][j], INF_SCALE on the diagonal
    std::vector<std::vector<long long>> values;

    int size() const { return static_cast<int>(points.size()); }

    long long at(int i, int j) const { return values[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    void set(int i, int j, long long v) {
        values[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        values[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
    }

    static LogScale make(std::vector<std::string> pts) {
        LogScale ls;
        ls.points = std::move(pts);
        ls.values.assign(ls.points.size(), std::vector<long long>(ls.points.size(), 0));
        for (size_t i = 0; i < ls.points.size(); ++i) ls.values[i][i] = INF_SCALE;
        return ls;
    }

    std::optional<std::string> validate() const {
        int n = size();
        if (values.size() != static_cast<size_t>(n)) return "values shape mismatch";
        for (int i = 0; i < n; ++i) {
            if (values[static_cast<size_t>(i)].size() != static_cast<size_t>(n))
                return "values shape mismatch";
            if (at(i, i) != INF_SCALE) return "diagonal must be infinite";
            for (int j = 0; j < n; ++j) {
                if (i != j && at(i, j) == INF_SCALE)
                    return "off-diagonal infinity at (" + points[static_cast<size_t>(i)] + "," +
                           points[static_cast<size_t>(j)] + ")";
                if (at(i, j) != at(j, i)) return "asymmetric values";
            }
        }
        return std::nullopt;
    }

    json to_json() const {
        json j;
        j["points"] = points;
        json vals = json::array();
        for (int i = 0; i < size(); ++i)
            for (int j2 = i + 1; j2 < size(); ++j2)
                vals.push_back(json::array({i, j2, at(i, j2) == INF_SCALE ? json(nullptr) : json(at(i, j2))}));
        j["values"] = vals;
        return j;
    }

    static LogScale from_json(const json& j) {
        if (!j.contains("points") || !j.contains("values"))
            throw input_error("log-scale json needs 'points' and 'values'");
        std::vector<std::string> pts;
        for (auto& p : j["points"]) pts.push_back(p.get<std::string>());
        LogScale ls = make(std::move(pts));
        for (auto& t : j["values"]) {
            if (!t.is_array() || t.size() != 3) throw input_error("value rows are [i, j, v]");
            int a = t[0].get<int>(), b = t[1].get<int>();
            if (a < 0 || b < 0 || a >= ls.size() || b >= ls.size())
                throw input_error("value row index out of range");
            if (t[2].is_null()) {
                if (a != b) throw input_error("null (infinite) value off the diagonal");
                continue;
            }
            if (a == b) throw input_error("finite value on the diagonal");
            ls.set(a, b, t[2].get<long long>());
        }
        auto err = ls.validate();
        if (err) throw input_error("invalid log-scale: " + *err);
        return ls;
    }
};

// smallest delta >= 0 making every ordered triple satisfy the inequality
inline long long delta_of(const LogScale& ls) {
    auto err = ls.validate();
    if (err) throw input_error("invalid log-scale: " + *err);
    int n = ls.size();
    long long delta = 0;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z) {
                if (x == z || x == y || y == z) continue;
                long long m = std::min(ls.at(x, y), ls.at(y, z));
                if (m == INF_SCALE) continue;
                delta = std::max(delta, m - ls.at(x, z));
            }
    return delta;
}

struct MetricTable {
    std::vector<std::string> points;
    std::vector<std::vector<Rat>> d;

    json to_json() const {
        json j;
        j["points"] = points;
        json vals = json::array();
        int n = static_cast<int>(points.size());
        for (int i = 0; i < n; ++i)
            for (int j2 = i + 1; j2 < n; ++j2)
                vals.push_back(json::array(
                    {i, j2, rat_to_json(d[static_cast<size_t>(i)][static_cast<size_t>(j2)])}));
        j["values"] = vals;
        return j;
    }

    static MetricTable from_json(const json& j) {
        if (!j.contains("points") || !j.contains("values"))
            throw input_error("metric json needs 'points' and 'values'");
        MetricTable m;
        for (auto& p : j["points"]) m.points.push_back(p.get<std::string>());
        size_t n = m.points.size();
        m.d.assign(n, std::vector<Rat>(n, 0));
        for (auto& t : j["values"]) {
            int a = t[0].get<int>(), b = t[1].get<int>();
            if (a < 0 || b < 0 || static_cast<size_t>(a) >= n || static_cast<size_t>(b) >= n || a == b)
                throw input_error("metric row index invalid");
            Rat v = rat_from_json(t[2]);
            if (v <= 0) throw input_error("metric values must be positive off the diagonal");
            m.d[static_cast<size_t>(a)][static_cast<size_t>(b)] = v;
            m.d[static_cast<size_t>(b)][static_cast<size_t>(a)] = v;
        }
        for (size_t i = 0; i < n; ++i)
            for (size_t j2 = 0; j2 < n; ++j2)
                if (i != j2 && m.d[i][j2] == 0) throw input_error("metric entry missing");
        return m;
    }

    std::optional<std::string> validate_metric() const {
        size_t n = points.size();
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                if (d[i][j] != d[j][i]) return "asymmetric";
                if (i == j && d[i][j] != 0) return "nonzero diagonal";
                if (i != j && d[i][j] <= 0) return "non-positive off-diagonal";
                for (size_t k = 0; k < n; ++k)
                    if (d[i][k] > d[i][j] + d[j][k]) return "triangle inequality fails";
            }
        return std::nullopt;
    }
};

struct MetricFromScale {
    MetricTable metric;
    long long delta;
    // bounds hold with alpha = 2^(-1/(2 delta)): (1/4) alpha^l <= d <= 2 alpha^l
    Rat lower_coeff{1, 4};
    Rat upper_coeff{2};
};

// exact comparison  d  vs  coeff * alpha^l  with alpha = 2^(-1/(2delta)):
// raise both sides to the power 2delta and compare rationals.
inline int cmp_alpha_bound(const Rat& dval, const Rat& coeff, long long ell, long long two_delta) {
    Rat lhs = rat_pow(dval, static_cast<unsigned long long>(two_delta));
    Rat rhs = rat_pow(coeff, static_cast<unsigned long long>(two_delta)) * pow2r(-ell);
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

inline MetricFromScale metric_from_logscale(const LogScale& ls, long long delta) {
    auto err = ls.validate();
    if (err) throw input_error("invalid log-scale: " + *err);
    if (delta < 1) throw input_error("delta must be >= 1");
    if (delta < delta_of(ls))
        throw input_error("delta " + std::to_string(delta) + " is below the minimal drift " +
                          std::to_string(delta_of(ls)));
    int n = ls.size();
    // dyadic weights rho(x,y) = 2^(-floor(l/(2 delta)))
    std::vector<std::vector<Rat>> w(static_cast<size_t>(n), std::vector<Rat>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) w[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                pow2r(-floor_div(ls.at(i, j), 2 * delta));
    // chain infimum = all-pairs shortest path over the weights
    auto d = w;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                Rat via = d[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                          d[static_cast<size_t>(k)][static_cast<size_t>(j)];
                if ((i != k && j != k) && via < d[static_cast<size_t>(i)][static_cast<size_t>(j)])
                    d[static_cast<size_t>(i)][static_cast<size_t>(j)] = via;
            }
    MetricFromScale out;
    out.metric.points = ls.points;
    out.metric.d = d;
    out.delta = delta;
    // certify the association bounds exactly
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const Rat& dv = d[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (cmp_alpha_bound(dv, out.lower_coeff, ls.at(i, j), 2 * delta) < 0 ||
                cmp_alpha_bound(dv, out.upper_coeff, ls.at(i, j), 2 * delta) > 0)
                throw violation_error("metric association bound failed at (" +
                                      ls.points[static_cast<size_t>(i)] + "," +
                                      ls.points[static_cast<size_t>(j)] + ")");
        }
    return out;
}

struct ScaleFromMetric {
    LogScale scale;
    long long delta;
    // association constant c = e for l = -floor(ln d)
};

inline ScaleFromMetric logscale_from_metric(const MetricTable& m) {
    auto err = m.validate_metric();
    if (err) throw input_error("invalid metric: " + *err);
    int n = static_cast<int>(m.points.size());
    LogScale ls = LogScale::make(m.points);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            ls.set(i, j, -floor_ln(m.d[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    ScaleFromMetric out;
    out.delta = std::max<long long>(1, delta_of(ls));
    out.scale = std::move(ls);
    return out;
}

// pointwise minimum on the product point set
inline LogScale product_logscale(const LogScale& a, const LogScale& b) {
    auto ea = a.validate(), eb = b.validate();
    if (ea) throw input_error("invalid log-scale: " + *ea);
    if (eb) throw input_error("invalid log-scale: " + *eb);
    std::vector<std::string> pts;
    for (auto& p : a.points)
        for (auto& q : b.points) pts.push_back(p + "*" + q);
    LogScale out = LogScale::make(std::move(pts));
    int nb = b.size();
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            for (int k = 0; k < a.size(); ++k)
                for (int l = 0; l < b.size(); ++l) {
                    int u = i * nb + j, v = k * nb + l;
                    if (u >= v) continue;
                    out.set(u, v, std::min(a.at(i, k), b.at(j, l)));
                }
    return out;
}

struct PasteInput {
    // charts indexed 0..m-1 over a shared point universe
    std::vector<std::string> points;
    std::vector<std::vector<int>> charts;   // member point ids per chart
    std::vector<LogScale> locals;           // one local scale per chart, on its member list
};

struct PasteResult {
    LogScale scale;
    long long delta;            // drift of the pasted scale
    long long threshold;        // the cut level n
    long long chart_constant;   // |l - l_i| <= this on each chart
};

// Finite pasting: points covered by charts with local scales that agree
// within `overlap_bound` on overlaps. The pasted scale keeps local values
// on pairs sharing a chart (cut below the threshold n) and assigns n to
// pairs separated into different charts.
inline PasteResult paste_logscales(const PasteInput& in, long long overlap_bound) {
    size_t m = in.charts.size();
    if (m == 0) throw input_error("no charts");
    if (in.locals.size() != m) throw input_error("chart/local count mismatch");
    int n_pts = static_cast<int>(in.points.size());
    std::vector<char> covered(static_cast<size_t>(n_pts), 0);
    // position of global point in chart c (or -1)
    std::vector<std::vector<int>> pos(m, std::vector<int>(static_cast<size_t>(n_pts), -1));
    for (size_t c = 0; c < m; ++c) {
        if (in.locals[c].size() != static_cast<int>(in.charts[c].size()))
            throw input_error("local scale size mismatch on chart " + std::to_string(c));
        auto err = in.locals[c].validate();
        if (err) throw input_error("invalid local scale: " + *err);
        for (size_t k = 0; k < in.charts[c].size(); ++k) {
            int p = in.charts[c][k];
            if (p < 0 || p >= n_pts) throw input_error("chart point out of range");
            covered[static_cast<size_t>(p)] = 1;
            pos[c][static_cast<size_t>(p)] = static_cast<int>(k);
        }
    }
    for (int p = 0; p < n_pts; ++p)
        if (!covered[static_cast<size_t>(p)]) throw input_error("point '" + in.points[static_cast<size_t>(p)] + "' not covered");

    // overlap compatibility: |l_c - l_c'| <= overlap_bound on common pairs
    long long defect = 0;
    for (size_t c1 = 0; c1 < m; ++c1)
        for (size_t c2 = c1 + 1; c2 < m; ++c2)
            for (int x = 0; x < n_pts; ++x)
                for (int y = x + 1; y < n_pts; ++y) {
                    int a1 = pos[c1][static_cast<size_t>(x)], b1 = pos[c1][static_cast<size_t>(y)];
                    int a2 = pos[c2][static_cast<size_t>(x)], b2 = pos[c2][static_cast<size_t>(y)];
                    if (a1 < 0 || b1 < 0 || a2 < 0 || b2 < 0) continue;
                    long long v1 = in.locals[c1].at(a1, b1), v2 = in.locals[c2].at(a2, b2);
                    defect = std::max(defect, std::llabs(v1 - v2));
                }
    if (defect > overlap_bound)
        throw input_error("charts disagree by " + std::to_string(defect) +
                          " on an overlap, above the allowed " + std::to_string(overlap_bound));

    // chart of a pair: lowest index chart containing both
    auto chart_of = [&](int x, int y) -> int {
        for (size_t c = 0; c < m; ++c)
            if (pos[c][static_cast<size_t>(x)] >= 0 && pos[c][static_cast<size_t>(y)] >= 0)
                return static_cast<int>(c);
        return -1;
    };
    auto raw = [&](int x, int y, int c) -> long long {
        return in.locals[static_cast<size_t>(c)].at(pos[static_cast<size_t>(c)][static_cast<size_t>(x)],
                                                    pos[static_cast<size_t>(c)][static_cast<size_t>(y)]);
    };

    // Threshold n: pairs split across charts receive value n, so n must
    // dominate every two-step chain x ~ y ~ z whose endpoints share no
    // chart; one above the largest such min makes those triples driftless.
    long long n_cut = 1;
    for (int x = 0; x < n_pts; ++x)
        for (int z = 0; z < n_pts; ++z) {
            if (x == z || chart_of(x, z) >= 0) continue;
            for (int y = 0; y < n_pts; ++y) {
                if (y == x || y == z) continue;
                int c1 = chart_of(x, y), c2 = chart_of(y, z);
                if (c1 < 0 || c2 < 0) continue;
                n_cut = std::max(n_cut, std::min(raw(x, y, c1), raw(y, z, c2)) + 1);
            }
        }
    LogScale out = LogScale::make(in.points);
    for (int x = 0; x < n_pts; ++x)
        for (int y = x + 1; y < n_pts; ++y) {
            int c = chart_of(x, y);
            if (c < 0) {
                out.set(x, y, n_cut);
            } else {
                long long v = in.locals[static_cast<size_t>(c)].at(pos[static_cast<size_t>(c)][static_cast<size_t>(x)],
                                                                   pos[static_cast<size_t>(c)][static_cast<size_t>(y)]);
                out.set(x, y, std::max(v, n_cut));
            }
        }
    PasteResult res;
    res.threshold = n_cut;
    res.delta = delta_of(out);
    res.chart_constant = n_cut + defect;
    // certify the drift bound: local drift plus twice the overlap defect
    long long local_drift = 0;
    for (auto& l : in.locals) local_drift = std::max(local_drift, delta_of(l));
    if (res.delta > local_drift + 2 * defect)
        throw violation_error("pasted scale drift " + std::to_string(res.delta) +
                              " exceeds local drift + 2*overlap defect = " +
                              std::to_string(local_drift + 2 * defect));
    // certify the chart equivalence constant by scanning every chart pair
    for (size_t c = 0; c < m; ++c)
        for (size_t i = 0; i < in.charts[c].size(); ++i)
            for (size_t k = i + 1; k < in.charts[c].size(); ++k) {
                int x = in.charts[c][i], y = in.charts[c][k];
                long long lv = in.locals[c].at(static_cast<int>(i), static_cast<int>(k));
                long long gv = out.at(x, y);
                if (std::llabs(lv - gv) > res.chart_constant)
                    throw violation_error("pasted scale drifted beyond the chart constant");
            }
    res.scale = std::move(out);
    return res;
}

struct EquivalenceBounds {
    bool lipschitz;        // l2 within additive k of l1
    long long lipschitz_k;
    bool holder;           // l2 within additive k of c * l1
    Rat holder_c;
    long long holder_k;
};

// additive/affine comparability of two scales on the same point set.
// "none" for the Lipschitz side means the gap |l1 - l2| grows with the
// observed scale, which the finite data certifies by a strictly increasing
// envelope from the bottom scale to the top.
inline EquivalenceBounds equivalence_bounds(const LogScale& a, const LogScale& b) {
    if (a.points != b.points) throw input_error("scales live on different point sets");
    auto ea = a.validate(), eb = b.validate();
    if (ea) throw input_error("invalid log-scale: " + *ea);
    if (eb) throw input_error("invalid log-scale: " + *eb);
    int n = a.size();
    std::vector<std::pair<long long, long long>> pairs;  // (l1, |l1 - l2|)
    long long maxgap = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            pairs.emplace_back(a.at(i, j), std::llabs(a.at(i, j) - b.at(i, j)));
            maxgap = std::max(maxgap, pairs.back().second);
        }
    EquivalenceBounds out{};
    if (pairs.empty()) {
        out.lipschitz = true;
        out.lipschitz_k = 0;
        out.holder = true;
        out.holder_c = 1;
        out.holder_k = 0;
        return out;
    }
    std::sort(pairs.begin(), pairs.end());
    // envelope: max gap per scale level; drift = strictly increasing envelope
    std::vector<std::pair<long long, long long>> env;  // (level, max gap at level)
    for (auto& p : pairs) {
        if (!env.empty() && env.back().first == p.first)
            env.back().second = std::max(env.back().second, p.second);
        else
            env.emplace_back(p);
    }
    bool drifts = env.size() >= 3;
    for (size_t i = 0; i + 1 < env.size() && drifts; ++i)
        if (env[i + 1].second <= env[i].second) drifts = false;
    out.lipschitz = !drifts;
    out.lipschitz_k = drifts ? -1 : maxgap;
    // Hoelder side: find the smallest rational multiplier c (from observed
    // value ratios, plus 1) whose residual gap |l2 - c*l1| has a
    // non-increasing-somewhere envelope, then take its max as k.
    std::vector<Rat> candidates{1};
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a.at(i, j) != 0) candidates.push_back(Rat(b.at(i, j), a.at(i, j)));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    out.holder = false;
    for (auto& c : candidates) {
        if (c <= 0) continue;
        std::vector<std::pair<long long, Rat>> env2;
        std::vector<std::pair<long long, Rat>> rp;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                rp.emplace_back(a.at(i, j), rat_abs(Rat(b.at(i, j)) - c * Rat(a.at(i, j))));
        std::sort(rp.begin(), rp.end(),
                  [](auto& x, auto& y) { return x.first < y.first; });
        for (auto& p : rp) {
            if (!env2.empty() && env2.back().first == p.first)
                env2.back().second = std::max(env2.back().second, p.second);
            else
                env2.emplace_back(p);
        }
        bool drifts2 = env2.size() >= 3;
        for (size_t i = 0; i + 1 < env2.size() && drifts2; ++i)
            if (env2[i + 1].second <= env2[i].second) drifts2 = false;
        if (!drifts2) {
            Rat worst = 0;
            for (auto& p : rp) worst = std::max(worst, p.second);
            out.holder = true;
            out.holder_c = c;
            // integer additive constant: ceil of the worst residual
            BigInt num = rat_num(worst), den = rat_den(worst);
            BigInt q = num / den;
            if (q * den < num) q += 1;
            out.holder_k = static_cast<long long>(q);
            break;
        }
    }
    return out;
}

}  // namespace hypgrpd

#pragma once

// Command dispatch shared by the CLI binary and the test suite. Every
// command consumes a flat option map and produces a deterministic report:
// same options, same bytes.

#include <fstream>
#include <map>
#include <sstream>
#include <string>

#include "hypgrpd/hypgrpd.hpp"

namespace hypgrpd::cli {

struct RunConfig {
    std::string command;
    std::map<std::string, std::string> opt;

    bool has(const std::string& k) const { return opt.count(k) > 0; }
    std::string str(const std::string& k, const std::string& def = "") const {
        auto it = opt.find(k);
        return it == opt.end() ? def : it->second;
    }
    long long num(const std::string& k, long long def) const {
        auto it = opt.find(k);
        if (it == opt.end()) return def;
        try {
            size_t pos = 0;
            long long v = std::stoll(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing");
            return v;
        } catch (...) {
            throw input_error("option --" + k + " expects an integer, got '" + it->second + "'");
        }
    }
    Rat rat(const std::string& k, const Rat& def) const {
        auto it = opt.find(k);
        return it == opt.end() ? def : parse_rat(it->second);
    }
    bool flag(const std::string& k, bool def = false) const {
        auto it = opt.find(k);
        if (it == opt.end()) return def;
        return it->second == "1" || it->second == "true" || it->second == "on" || it->second.empty();
    }
};

struct RunResult {
    int code = 0;
    std::string text;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw input_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline json base_report(const RunConfig& cfg) {
    json j;
    j["schema"] = "hypgrpd/1";
    j["command"] = cfg.command;
    json in = json::object();
    std::string hash_feed = cfg.command;
    for (auto& [k, v] : cfg.opt) {
        in[k] = v;
        hash_feed += "|" + k + "=" + v;
        // file-valued options contribute their content to the hash
        if (k == "in" || k == "graph" || k == "sft" || k == "automaton" || k == "adic" ||
            k == "metric")
            hash_feed += "#" + read_file(v);
    }
    j["inputs"] = in;
    j["input_hash"] = fnv1a64_hex(hash_feed);
    j["seed"] = cfg.num("seed", 1);
    return j;
}

inline json load_input(const RunConfig& cfg, const std::string& key = "in") {
    if (!cfg.has(key)) throw input_error("missing required option --" + key);
    return load_json_file(cfg.str(key));
}

// ---- input builders ---------------------------------------------------------

inline SftSystem sft_from(const RunConfig& cfg) {
    if (cfg.has("prohibited")) {
        std::string ph = cfg.str("prohibited");
        std::vector<std::string> words;
        size_t pos = 0;
        while (pos <= ph.size()) {
            size_t c = ph.find(',', pos);
            words.push_back(ph.substr(pos, c == std::string::npos ? std::string::npos : c - pos));
            if (c == std::string::npos) break;
            pos = c + 1;
        }
        std::vector<std::string> letters;
        if (cfg.has("alphabet")) {
            for (char ch : cfg.str("alphabet")) letters.push_back(std::string(1, ch));
        } else {
            std::set<char> seen;
            for (auto& w : words)
                for (char ch : w) seen.insert(ch);
            for (char ch : seen) letters.push_back(std::string(1, ch));
        }
        SftSystem s{Alphabet(letters), {}};
        for (auto& w : words)
            if (!w.empty()) s.prohibited.push_back(s.A.parse_word(w));
        return s;
    }
    if (cfg.has("sft")) return SftSystem::from_json(load_json_file(cfg.str("sft")));
    if (cfg.has("preset")) return sft_preset(cfg.str("preset"));
    throw input_error("need --preset, --sft, or --prohibited");
}

inline WreathRecursion recursion_from(const RunConfig& cfg) {
    if (cfg.has("automaton")) return recursion_from_json(load_json_file(cfg.str("automaton")));
    if (cfg.has("preset")) return recursion_preset(cfg.str("preset"));
    throw input_error("need --preset or --automaton");
}

inline AdicSystem adic_from(const RunConfig& cfg) {
    if (cfg.has("adic")) return AdicSystem::from_json(load_json_file(cfg.str("adic")));
    return adic_preset(cfg.str("preset", "golden"));
}

// graph with an optional grading; plain metric commands ignore lambda
inline Graph graph_from(const RunConfig& cfg, int* basepoint = nullptr) {
    if (cfg.has("graph")) {
        Graph g = Graph::from_json(load_json_file(cfg.str("graph")));
        if (basepoint)
            *basepoint = cfg.has("basepoint") ? g.vertex(cfg.str("basepoint")) : 0;
        return g;
    }
    if (cfg.has("preset")) {
        CayleyBall ball = preset_cayley_ball(cfg.str("preset"),
                                             static_cast<int>(cfg.num("radius", 4)));
        if (basepoint) *basepoint = ball.base;
        return ball.cg.g;
    }
    throw input_error("need --graph or --preset");
}

inline CocycleGraph cocycle_from(const RunConfig& cfg, int* basepoint = nullptr) {
    if (cfg.has("graph")) {
        CocycleGraph cg = CocycleGraph::from_json(load_json_file(cfg.str("graph")));
        if (basepoint)
            *basepoint = cfg.has("basepoint") ? cg.g.vertex(cfg.str("basepoint")) : 0;
        return cg;
    }
    if (cfg.has("preset")) {
        CayleyBall ball = preset_cayley_ball(cfg.str("preset"),
                                             static_cast<int>(cfg.num("radius", 4)));
        if (basepoint) *basepoint = ball.base;
        return ball.cg;
    }
    throw input_error("need --graph or --preset");
}

inline std::vector<int> parse_ray(const Graph& g, const std::string& s) {
    std::vector<int> out;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t c = s.find(',', pos);
        std::string tok = s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
        out.push_back(g.vertex(tok));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    return out;
}

// edge paths are 1-based; "3,1" and the compact "31" (single-digit ids) both work
inline std::vector<int> parse_path_ids(const std::string& s) {
    std::vector<int> out;
    if (s.empty()) throw input_error("empty path");
    if (s.find(',') == std::string::npos) {
        for (char ch : s) {
            if (!isdigit(static_cast<unsigned char>(ch)) || ch == '0')
                throw input_error(std::string("path character '") + ch + "' is not an edge id");
            out.push_back(ch - '1');
        }
        return out;
    }
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t c = s.find(',', pos);
        std::string tok = s.substr(pos, c == std::string::npos ? std::string::npos : c - pos);
        try {
            size_t used = 0;
            int v = std::stoi(tok, &used);
            if (used != tok.size() || v < 1) throw std::invalid_argument("bad");
            out.push_back(v - 1);
        } catch (...) {
            throw input_error("path entry '" + tok + "' is not an edge id");
        }
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    return out;
}

// "a", "-3", "t", "2t", "-t", "1+t", "2-3t"
inline QuadInt parse_quadint(const std::string& s) {
    QuadInt out{0, 0};
    if (s.empty()) throw input_error("empty ring element");
    size_t pos = 0;
    while (pos < s.size()) {
        long long sign = 1;
        if (s[pos] == '+') ++pos;
        else if (s[pos] == '-') {
            sign = -1;
            ++pos;
        }
        size_t start = pos;
        while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        bool has_digits = pos > start;
        long long coeff = has_digits ? std::stoll(s.substr(start, pos - start)) : 1;
        if (pos < s.size() && s[pos] == 't') {
            ++pos;
            out.b += sign * coeff;
        } else {
            if (!has_digits) throw input_error("bad ring element '" + s + "'");
            out.a += sign * coeff;
        }
    }
    return out;
}

inline json surd_report(const QuadSurd& v) { return surd_to_json(v); }

inline json ball_report(const CayleyBall& ball) {
    json j = ball.cg.to_json();
    j["family"] = ball.family;
    j["basepoint"] = ball.cg.g.names[static_cast<size_t>(ball.base)];
    json dist = json::object();
    for (int v = 0; v < ball.cg.g.vcount(); ++v)
        dist[ball.cg.g.names[static_cast<size_t>(v)]] = ball.dist[static_cast<size_t>(v)];
    j["word_length"] = dist;
    return j;
}

// ---- command bodies ----------------------------------------------------------

inline RunResult finish(const RunConfig& cfg, json& rep, int code = 0) {
    (void)cfg;
    return {code, dump_json(rep)};
}

inline RunResult cmd_logscale_delta(const RunConfig& cfg) {
    LogScale ls = LogScale::from_json(load_input(cfg));
    json rep = base_report(cfg);
    rep["points"] = ls.size();
    rep["delta_of"] = delta_of(ls);
    return finish(cfg, rep);
}

inline RunResult cmd_logscale_metric(const RunConfig& cfg) {
    json rep = base_report(cfg);
    if (cfg.flag("invert")) {
        MetricTable m = MetricTable::from_json(load_input(cfg));
        auto r = logscale_from_metric(m);
        rep["delta"] = r.delta;
        rep["scale"] = r.scale.to_json();
        return finish(cfg, rep);
    }
    LogScale ls = LogScale::from_json(load_input(cfg));
    long long delta = cfg.num("delta", std::max<long long>(1, delta_of(ls)));
    auto r = metric_from_logscale(ls, delta);
    rep["delta"] = r.delta;
    rep["lower_coeff"] = rat_to_json(r.lower_coeff);
    rep["upper_coeff"] = rat_to_json(r.upper_coeff);
    rep["certified"] = true;
    rep["metric"] = r.metric.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_paste(const RunConfig& cfg) {
    json in = load_input(cfg);
    PasteInput pi;
    if (!in.contains("points") || !in.contains("charts") || !in.contains("locals"))
        throw input_error("paste input needs 'points', 'charts', 'locals'");
    for (auto& p : in["points"]) pi.points.push_back(p.get<std::string>());
    for (auto& c : in["charts"]) pi.charts.push_back(c.get<std::vector<int>>());
    for (auto& l : in["locals"]) pi.locals.push_back(LogScale::from_json(l));
    long long ob = cfg.num("overlap-bound", 0);
    auto r = paste_logscales(pi, ob);
    json rep = base_report(cfg);
    rep["delta"] = r.delta;
    rep["threshold"] = r.threshold;
    rep["chart_constant"] = r.chart_constant;
    rep["scale"] = r.scale.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_delta(const RunConfig& cfg) {
    int base = 0;
    Graph g = graph_from(cfg, &base);
    int radius = static_cast<int>(cfg.num("radius", 4));
    Rat d = four_point_delta(g, base, radius);
    json rep = base_report(cfg);
    rep["basepoint"] = g.names[static_cast<size_t>(base)];
    rep["radius"] = radius;
    rep["vertices"] = g.vcount();
    rep["ball_vertices"] = static_cast<long long>(g.ball(base, radius).size());
    rep["four_point_delta"] = rat_to_json(d);
    return finish(cfg, rep);
}

inline RunResult cmd_thin_delta(const RunConfig& cfg) {
    int base = 0;
    Graph g = graph_from(cfg, &base);
    int radius = static_cast<int>(cfg.num("radius", 3));
    ThinOptions opt;
    opt.exhaustive = cfg.flag("exhaustive");
    opt.samples = cfg.num("samples", 400);
    opt.seed = static_cast<std::uint64_t>(cfg.num("seed", 1));
    opt.geodesic_budget = cfg.num("budget", 200000);
    auto r = thin_triangle_delta(g, base, radius, opt);
    json rep = base_report(cfg);
    rep["basepoint"] = g.names[static_cast<size_t>(base)];
    rep["radius"] = radius;
    rep["exhaustive"] = r.exhaustive;
    rep["triangles_checked"] = r.triangles_checked;
    rep["thin_delta"] = rat_to_json(r.delta);
    return finish(cfg, rep);
}

inline RunResult cmd_busemann(const RunConfig& cfg) {
    Graph g = graph_from(cfg);
    auto ray = parse_ray(g, cfg.str("ray"));
    int x = g.vertex(cfg.str("x"));
    int y = g.vertex(cfg.str("y"));
    auto r = busemann_estimate(g, ray, x, y, static_cast<size_t>(cfg.num("min-length", 3)));
    json rep = base_report(cfg);
    rep["lo"] = r.lo;
    rep["hi"] = r.hi;
    rep["tail_from"] = r.tail_from;
    rep["pinned"] = r.lo == r.hi;
    return finish(cfg, rep);
}

inline RunResult cmd_criterion(const RunConfig& cfg) {
    int base = 0;
    CocycleGraph cg = cocycle_from(cfg, &base);
    long long delta1;
    if (cfg.has("delta1")) {
        delta1 = cfg.num("delta1", 0);
    } else {
        Rat need = Rat(cg.Delta) + cg.eta;  // smallest usable drop bound
        BigInt c = (rat_num(need) + rat_den(need) - 1) / rat_den(need);
        delta1 = c.convert_to<long long>();
    }
    long long m = cfg.num("m", 2);
    long long horizon = cfg.num("horizon", 10);
    long long budget = cfg.num("budget", 50000000);
    auto r = convergence_criterion(cg, delta1, m, horizon, budget);
    json rep = base_report(cfg);
    rep["Delta1"] = delta1;
    rep["m"] = m;
    rep["horizon"] = horizon;
    rep["ok"] = r.ok;
    rep["vacuous"] = r.vacuous;
    rep["rho0"] = r.rho0;
    rep["k_m"] = r.k_m;
    rep["pairs_scanned"] = r.pairs_scanned;
    json prof = json::array();
    for (size_t t = 1; t < r.profile.size(); ++t) prof.push_back(r.profile[t]);
    rep["depth_profile"] = prof;  // max pair distance per depth
    if (!r.ok) rep["detail"] = r.detail;
    return finish(cfg, rep, r.ok ? 0 : 1);
}

inline RunResult cmd_level_graph(const RunConfig& cfg) {
    int base = 0;
    CocycleGraph cg = cocycle_from(cfg, &base);
    long long delta2 = cfg.num("delta2", 0);
    long long r = cfg.num("r", 0);
    long long rho1 = cfg.num("rho1", 1);
    long long delta1 = cfg.num("delta1", -1);
    long long k = cfg.num("k", 1);
    LevelGraph lg = build_level_graph(cg, delta2, r, rho1, delta1, k);
    auto shape = check_level_geodesics(lg);
    auto bl = check_bilipschitz(cg, lg);
    json rep = base_report(cfg);
    rep["Delta2"] = lg.Delta2;
    rep["r"] = lg.r;
    rep["rho1"] = lg.rho1;
    rep["Delta1"] = lg.Delta1;
    rep["horizontal_edges"] = static_cast<long long>(lg.horizontal.size());
    rep["vertical_edges"] = static_cast<long long>(lg.vertical.size());
    rep["descend_before_ascend"] = shape.descend_before_ascend;
    rep["horizontal_run_bound"] = shape.horizontal_run_bound;
    if (!shape.violation.empty()) rep["violation"] = shape.violation;
    rep["bilipschitz"] = bl.ok;
    rep["max_stretch"] = rat_to_json(bl.max_stretch);
    if (!bl.violation.empty()) rep["bilipschitz_violation"] = bl.violation;
    bool ok = shape.descend_before_ascend && shape.horizontal_run_bound && bl.ok;
    if (cfg.str("format") == "dot") return {ok ? 0 : 1, lg.g1.to_dot(&lg.level, "level_graph")};
    rep["graph"] = lg.g1.to_json(&lg.level);
    return finish(cfg, rep, ok ? 0 : 1);
}

inline RunResult cmd_act(const RunConfig& cfg) {
    WreathRecursion R = recursion_from(cfg);
    Elem e = R.parse_elem(cfg.str("element"));
    json rep = base_report(cfg);
    if (cfg.has("point")) {
        EvPeriodicWord p = EvPeriodicWord::parse(R.X, cfg.str("point"));
        auto r = act_infinite(R, e, p, cfg.num("budget", 4096));
        if (r.truncated) {
            rep["truncated"] = true;
            rep["partial"] = R.X.format_word(r.partial);
            return finish(cfg, rep, 3);
        }
        rep["truncated"] = false;
        rep["image"] = r.image.format(R.X);
        return finish(cfg, rep);
    }
    Word w = R.X.parse_word(cfg.str("word"));
    rep["image"] = R.X.format_word(R.act(e, w));
    return finish(cfg, rep);
}

inline RunResult cmd_section(const RunConfig& cfg) {
    WreathRecursion R = recursion_from(cfg);
    Elem e = R.parse_elem(cfg.str("element"));
    Word w = R.X.parse_word(cfg.str("word"));
    json rep = base_report(cfg);
    rep["section"] = R.format_elem(R.section(e, w));
    rep["image"] = R.X.format_word(R.act(e, w));
    return finish(cfg, rep);
}

inline RunResult cmd_nucleus(const RunConfig& cfg) {
    WreathRecursion R = recursion_from(cfg);
    auto r = nucleus(R, cfg.num("budget", 3000), cfg.num("eq-budget", 20000));
    json rep = base_report(cfg);
    rep["contracting"] = r.contracting;
    rep["classes_seen"] = r.classes_seen;
    if (!r.contracting) {
        rep["detail"] = r.detail;
        return finish(cfg, rep, 3);
    }
    rep["size"] = static_cast<long long>(r.elements.size());
    json els = json::array();
    std::vector<std::string> names;
    for (auto& e : r.elements) names.push_back(R.format_elem(e));
    std::sort(names.begin(), names.end());
    for (auto& n : names) els.push_back(n);
    rep["elements"] = els;
    return finish(cfg, rep);
}

inline RunResult cmd_schreier(const RunConfig& cfg) {
    WreathRecursion R = recursion_from(cfg);
    Graph g = schreier_graph(R, static_cast<int>(cfg.num("level", 3)), cfg.num("budget", 1 << 20));
    if (cfg.str("format") == "dot") return {0, g.to_dot(nullptr, "schreier")};
    json rep = base_report(cfg);
    rep["level"] = cfg.num("level", 3);
    rep["connected"] = g.connected();
    rep["graph"] = g.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_cayley(const RunConfig& cfg) {
    CayleyBall ball = preset_cayley_ball(cfg.str("preset"), static_cast<int>(cfg.num("radius", 4)));
    if (cfg.str("format") == "dot") return {0, ball.cg.to_dot()};
    json rep = base_report(cfg);
    rep["ball"] = ball_report(ball);
    return finish(cfg, rep);
}

inline RunResult cmd_preimage_tree(const RunConfig& cfg) {
    SftSystem s = sft_from(cfg);
    EvPeriodicWord t = EvPeriodicWord::parse(s.A, cfg.str("point", "(0)"));
    int depth = static_cast<int>(cfg.num("depth", 4));
    auto r = tree_of_preimages(s, t, depth, cfg.num("budget", 1 << 20));
    if (cfg.str("format") == "dot") return {0, r.tree.to_dot(&r.depth_of, "preimages")};
    json rep = base_report(cfg);
    rep["depth"] = depth;
    json lc = json::array();
    for (auto c : r.leaf_counts) lc.push_back(c);
    rep["leaf_counts"] = lc;
    rep["tree"] = r.tree.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_boundary_scale(const RunConfig& cfg) {
    CayleyBall ball = preset_cayley_ball(cfg.str("preset"), static_cast<int>(cfg.num("radius", 4)));
    auto ray1 = parse_ray(ball.cg.g, cfg.str("ray1"));
    auto ray2 = parse_ray(ball.cg.g, cfg.str("ray2"));
    auto r = boundary_scale(ball, ray1, ray2);
    json rep = base_report(cfg);
    rep["scale"] = r.n;
    rep["truncated"] = r.truncated;
    return finish(cfg, rep);
}

inline RunResult cmd_rotation_graph(const RunConfig& cfg) {
    QuadRing ring = QuadRing::golden();
    std::vector<QuadInt> trans;
    std::string ts = cfg.str("translations", "1;t");
    size_t pos = 0;
    while (pos <= ts.size()) {
        size_t c = ts.find(';', pos);
        trans.push_back(parse_quadint(ts.substr(pos, c == std::string::npos ? std::string::npos : c - pos)));
        if (c == std::string::npos) break;
        pos = c + 1;
    }
    QuadInt base = parse_quadint(cfg.str("base", "0"));
    Rat lo = cfg.rat("lo", 0);
    Rat hi = cfg.rat("hi", 1);
    int bound = static_cast<int>(cfg.num("bound", 8));
    bool scaling = cfg.flag("scaling", true);
    auto r = rotation_orbital_graph(ring, base, trans, lo, hi, bound, scaling, cfg.num("budget", 100000));
    if (cfg.str("format") == "dot") return {0, r.g.to_dot(nullptr, "orbital")};
    json rep = base_report(cfg);
    rep["points"] = r.g.vcount();
    rep["connected"] = r.g.connected();
    rep["diameter"] = r.diameter;
    rep["graph"] = r.g.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_splice_check(const RunConfig& cfg) {
    SftSystem s = sft_from(cfg);
    BiSeq x = BiSeq::parse(s.A, cfg.str("x"));
    BiSeq y = BiSeq::parse(s.A, cfg.str("y"));
    json rep = base_report(cfg);
    BiSeq xy = splice(s, x, y);
    rep["splice"] = xy.format(s.A);
    bool ok = splice(s, x, x) == x;
    rep["idempotent"] = ok;
    if (cfg.has("z")) {
        BiSeq z = BiSeq::parse(s.A, cfg.str("z"));
        BiSeq lhs1 = splice(s, x, splice(s, y, z));
        BiSeq rhs = splice(s, x, z);
        bool a2 = lhs1 == rhs;
        BiSeq lhs2 = splice(s, splice(s, x, y), z);
        bool a3 = lhs2 == rhs;
        rep["left_absorb"] = a2;
        rep["right_absorb"] = a3;
        ok = ok && a2 && a3;
    }
    return finish(cfg, rep, ok ? 0 : 1);
}

inline RunResult cmd_fried(const RunConfig& cfg) {
    SftSystem s = sft_from(cfg);
    BiSeq x = BiSeq::parse(s.A, cfg.str("x"));
    BiSeq y = BiSeq::parse(s.A, cfg.str("y"));
    if (!biseq_admissible(s, x) || !biseq_admissible(s, y))
        throw input_error("points must be admissible for the system");
    auto r = fried_logscale(s, x, y, cfg.num("horizon", 32));
    json rep = base_report(cfg);
    rep["horizon"] = cfg.num("horizon", 32);
    rep["scale"] = r.n;
    rep["saturated"] = r.saturated;
    return finish(cfg, rep);
}

inline RunResult cmd_dual_sft(const RunConfig& cfg) {
    SftSystem s = sft_from(cfg);
    SftSystem d = dual_sft(s);
    json rep = base_report(cfg);
    json dj = d.to_json();
    rep["alphabet"] = dj["alphabet"];
    rep["prohibited"] = dj["prohibited"];
    return finish(cfg, rep);
}

inline RunResult cmd_duality_witness(const RunConfig& cfg) {
    SftSystem s = sft_from(cfg);
    auto r = duality_witness(s, cfg.num("horizon", 10));
    json rep = base_report(cfg);
    rep["horizon"] = r.horizon;
    rep["ok"] = r.ok;
    rep["words_checked"] = r.words_checked;
    if (!r.ok) rep["offending"] = r.offending;
    return finish(cfg, rep, r.ok ? 0 : 1);
}

inline RunResult cmd_limit_space(const RunConfig& cfg) {
    WreathRecursion R = recursion_from(cfg);
    int level = static_cast<int>(cfg.num("level", 3));
    auto r = limit_space_gluing(R, level, cfg.num("budget", 3000), cfg.num("eq-budget", 20000));
    if (cfg.str("format") == "dot") return {0, r.g.to_dot(nullptr, "gluing")};
    json rep = base_report(cfg);
    rep["level"] = level;
    rep["vertices"] = r.g.vcount();
    rep["identifications"] = static_cast<long long>(r.g.edges.size());
    long long n = 1;
    for (int i = 0; i < level; ++i) n *= R.X.size();
    rep["is_cycle"] = is_cycle_graph(r.g, static_cast<int>(n));
    rep["graph"] = r.g.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_gamma_graph(const RunConfig& cfg) {
    WreathRecursion R = recursion_from(cfg);
    CocycleGraph cg = gamma_graph(R, static_cast<int>(cfg.num("max-len", 4)), cfg.num("budget", 1 << 20));
    if (cfg.str("format") == "dot") return {0, cg.to_dot()};
    json rep = base_report(cfg);
    rep["max_len"] = cfg.num("max-len", 4);
    rep["vertices"] = cg.g.vcount();
    rep["graph"] = cg.to_json();
    return finish(cfg, rep);
}

inline RunResult cmd_vershik(const RunConfig& cfg) {
    AdicSystem s = adic_from(cfg);
    auto p = parse_path_ids(cfg.str("path"));
    long long steps = cfg.num("steps", 1);
    json rep = base_report(cfg);
    json traj = json::array();
    bool wrapped = false;
    for (long long i = 0; i < steps; ++i) {
        auto r = vershik_successor(s, p);
        p = r.path;
        wrapped = wrapped || r.wrapped;
        json jp = json::array();
        for (int e : p) jp.push_back(e + 1);
        traj.push_back(jp);
    }
    rep["wrapped"] = wrapped;
    rep["trajectory"] = traj;
    json fin = json::array();
    for (int e : p) fin.push_back(e + 1);
    rep["path"] = fin;
    return finish(cfg, rep);
}

inline RunResult cmd_substitution(const RunConfig& cfg) {
    AdicSystem s = adic_from(cfg);
    std::string tile = cfg.str("tile", s.vertices.front());
    int v = -1;
    for (int i = 0; i < s.vcount(); ++i)
        if (s.vertices[static_cast<size_t>(i)] == tile) v = i;
    if (v < 0) throw input_error("unknown tile '" + tile + "'");
    auto w = substitution_expand(s, v, static_cast<int>(cfg.num("iterations", 1)), cfg.num("budget", 1 << 22));
    json rep = base_report(cfg);
    std::string word;
    std::vector<long long> counts(static_cast<size_t>(s.vcount()), 0);
    for (int t : w) {
        word += s.vertices[static_cast<size_t>(t)];
        ++counts[static_cast<size_t>(t)];
    }
    rep["word"] = word;
    json cj = json::object();
    for (int i = 0; i < s.vcount(); ++i) cj[s.vertices[static_cast<size_t>(i)]] = counts[static_cast<size_t>(i)];
    rep["counts"] = cj;
    return finish(cfg, rep);
}

inline RunResult cmd_tile_lengths(const RunConfig& cfg) {
    AdicSystem s = adic_from(cfg);
    auto r = tile_lengths(s.matrix(), static_cast<int>(cfg.num("iterations", 64)));
    json rep = base_report(cfg);
    rep["matrix"] = s.matrix();
    rep["primitive"] = r.primitive;
    rep["exact"] = r.exact;
    if (r.exact) {
        rep["eigenvalue"] = surd_report(r.value);
        json ls = json::array();
        for (auto& l : r.lengths) ls.push_back(surd_report(l));
        rep["lengths"] = ls;
    } else {
        rep["interval"] = json::array({rat_to_json(r.lo), rat_to_json(r.hi)});
        json ls = json::array();
        for (auto& l : r.approx_lengths) ls.push_back(rat_to_json(l));
        rep["lengths_approx"] = ls;
    }
    return finish(cfg, rep);
}

inline RunResult cmd_itinerary(const RunConfig& cfg) {
    AdicSystem s = adic_from(cfg);
    auto p = parse_path_ids(cfg.str("path"));
    auto r = leaf_itinerary(s, p, cfg.num("steps", 8));
    json rep = base_report(cfg);
    std::string tiles;
    for (int t : r.tiles) tiles += s.vertices[static_cast<size_t>(t)];
    rep["tiles"] = tiles;
    json fr = json::object();
    for (int i = 0; i < s.vcount(); ++i) fr[s.vertices[static_cast<size_t>(i)]] = r.frequency[static_cast<size_t>(i)];
    rep["frequencies"] = fr;
    rep["wrapped"] = r.wrapped;
    return finish(cfg, rep);
}

}  // namespace detail

inline RunResult dispatch(const RunConfig& cfg) {
    using Fn = RunResult (*)(const RunConfig&);
    static const std::map<std::string, Fn> table = {
        {"logscale-delta", detail::cmd_logscale_delta},
        {"logscale-metric", detail::cmd_logscale_metric},
        {"paste", detail::cmd_paste},
        {"delta", detail::cmd_delta},
        {"thin-delta", detail::cmd_thin_delta},
        {"busemann", detail::cmd_busemann},
        {"criterion", detail::cmd_criterion},
        {"level-graph", detail::cmd_level_graph},
        {"act", detail::cmd_act},
        {"section", detail::cmd_section},
        {"nucleus", detail::cmd_nucleus},
        {"schreier", detail::cmd_schreier},
        {"cayley", detail::cmd_cayley},
        {"preimage-tree", detail::cmd_preimage_tree},
        {"boundary-scale", detail::cmd_boundary_scale},
        {"rotation-graph", detail::cmd_rotation_graph},
        {"splice-check", detail::cmd_splice_check},
        {"fried", detail::cmd_fried},
        {"dual-sft", detail::cmd_dual_sft},
        {"duality-witness", detail::cmd_duality_witness},
        {"limit-space", detail::cmd_limit_space},
        {"gamma-graph", detail::cmd_gamma_graph},
        {"vershik", detail::cmd_vershik},
        {"substitution", detail::cmd_substitution},
        {"tile-lengths", detail::cmd_tile_lengths},
        {"itinerary", detail::cmd_itinerary},
    };
    auto it = table.find(cfg.command);
    if (it == table.end()) throw input_error("unknown command '" + cfg.command + "'");
    return it->second(cfg);
}

// full wrapper: exceptions become exit codes + error reports
inline RunResult run_command(const RunConfig& cfg) {
    auto error_report = [&](const std::string& type, const std::string& msg, int code) {
        json j;
        j["schema"] = "hypgrpd/1";
        j["command"] = cfg.command;
        j["error"] = json::object({{"type", type}, {"message", msg}});
        return RunResult{code, dump_json(j)};
    };
    try {
        return dispatch(cfg);
    } catch (const input_error& e) {
        return error_report("input", e.what(), 2);
    } catch (const budget_error& e) {
        return error_report("budget", e.what(), 3);
    } catch (const violation_error& e) {
        return error_report("violation", e.what(), 1);
    } catch (const json::exception& e) {
        return error_report("input", e.what(), 2);
    }
}

}  // namespace hypgrpd::cli

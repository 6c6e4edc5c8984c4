#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <hypgrpd/hypgrpd.hpp>

#include "oracles.hpp"

using namespace hypgrpd;

namespace {

LogScale two_points(long long l) {
    LogScale ls = LogScale::make({"x", "y"});
    ls.set(0, 1, l);
    return ls;
}

LogScale random_scale(std::mt19937_64& rng, int n, long long maxv) {
    std::vector<std::string> pts;
    for (int i = 0; i < n; ++i) pts.push_back("p" + std::to_string(i));
    LogScale ls = LogScale::make(std::move(pts));
    std::uniform_int_distribution<long long> val(0, maxv);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) ls.set(i, j, val(rng));
    return ls;
}

int p_index(const LogScale& ls, const std::string& name) {
    for (int i = 0; i < ls.size(); ++i)
        if (ls.points[static_cast<size_t>(i)] == name) return i;
    FAIL("missing point " + name);
    return -1;
}

// exact check of  (1/4) alpha^l <= d <= 2 alpha^l,  alpha = 2^(-1/(2 delta)),
// done as integer-power comparisons:  (4d)^(2 delta) >= 2^(-l)  and
// (d/2)^(2 delta) <= 2^(-l)
bool frink_bounds_hold(const Rat& d, long long l, long long delta) {
    auto pow_rat = [](Rat base, long long e) {
        Rat r = 1;
        for (long long i = 0; i < e; ++i) r *= base;
        return r;
    };
    Rat lhs = pow_rat(4 * d, 2 * delta);
    Rat rhs = pow_rat(d / 2, 2 * delta);
    Rat two_pow = l >= 0 ? Rat(1, BigInt(1) << static_cast<unsigned>(l))
                         : Rat(BigInt(1) << static_cast<unsigned>(-l));
    return lhs >= two_pow && rhs <= two_pow;
}

}  // namespace

TEST_CASE("delta_of measures the ultrametric defect") {
    LogScale ls = LogScale::make({"a", "b", "c"});
    ls.set(0, 1, 4);
    ls.set(0, 2, 2);
    ls.set(1, 2, 2);
    CHECK(delta_of(ls) == 0);

    // a-b large, both far from c: min(l(a,c), l(c,b)) - l(a,b) forces delta
    ls.set(0, 1, 0);
    ls.set(0, 2, 5);
    ls.set(1, 2, 5);
    CHECK(delta_of(ls) == 5);

    CHECK(delta_of(two_points(7)) == 0);
}

TEST_CASE("log-scale validation rejects malformed tables") {
    LogScale ls = LogScale::make({"a", "b"});
    ls.values[0][1] = 3;  // asymmetric on purpose
    CHECK(ls.validate().has_value());

    LogScale inf = LogScale::make({"a", "b"});
    inf.set(0, 1, INF_SCALE);  // distinct points may not sit at infinity
    CHECK(inf.validate().has_value());

    CHECK_FALSE(two_points(0).validate().has_value());
}

TEST_CASE("two-point metrization matches the closed form") {
    // l = 0, delta = 1: rho = 2^0 = 1
    auto r0 = metric_from_logscale(two_points(0), 1);
    CHECK(r0.metric.d[0][1] == Rat(1));
    // l = 4, delta = 1: rho = 2^-2 = 1/4
    auto r4 = metric_from_logscale(two_points(4), 1);
    CHECK(r4.metric.d[0][1] == Rat(1, 4));
}

TEST_CASE("metrization demands delta >= max(1, defect)") {
    CHECK_THROWS_AS(metric_from_logscale(two_points(3), 0), input_error);
    LogScale ls = LogScale::make({"a", "b", "c"});
    ls.set(0, 1, 0);
    ls.set(0, 2, 5);
    ls.set(1, 2, 5);  // defect 5
    CHECK_THROWS_AS(metric_from_logscale(ls, 2), input_error);
    CHECK_NOTHROW(metric_from_logscale(ls, 5));
}

TEST_CASE("Frink metrics satisfy the triangle inequality and the power bounds") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 50; ++trial) {
        int n = 2 + static_cast<int>(rng() % 7);
        LogScale ls = random_scale(rng, n, 12);
        long long delta = std::max<long long>(1, delta_of(ls));
        auto res = metric_from_logscale(ls, delta);
        REQUIRE(res.delta == delta);
        for (int i = 0; i < n; ++i) {
            CHECK(res.metric.d[static_cast<size_t>(i)][static_cast<size_t>(i)] == 0);
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                for (int k = 0; k < n; ++k)
                    CHECK(res.metric.d[static_cast<size_t>(i)][static_cast<size_t>(j)] <=
                          res.metric.d[static_cast<size_t>(i)][static_cast<size_t>(k)] +
                              res.metric.d[static_cast<size_t>(k)][static_cast<size_t>(j)]);
                if (i < j)
                    CHECK(frink_bounds_hold(res.metric.d[static_cast<size_t>(i)][static_cast<size_t>(j)],
                                            ls.at(i, j), delta));
            }
        }
    }
}

TEST_CASE("scale recovered from a metric uses integer e-brackets") {
    MetricTable m;
    m.points = {"a", "b", "c"};
    m.d = {{Rat(0), Rat(1, 4), Rat(1, 2)}, {Rat(1, 4), Rat(0), Rat(1, 2)}, {Rat(1, 2), Rat(1, 2), Rat(0)}};
    auto r = logscale_from_metric(m);
    // e^-2 < 1/4 < e^-1 and e^-1 < 1/2 < e^0
    CHECK(r.scale.at(0, 1) == 2);
    CHECK(r.scale.at(0, 2) == 1);
    CHECK(r.scale.at(1, 2) == 1);
    CHECK(r.delta >= 1);

    MetricTable unit;
    unit.points = {"a", "b"};
    unit.d = {{Rat(0), Rat(1)}, {Rat(1), Rat(0)}};
    CHECK(logscale_from_metric(unit).scale.at(0, 1) == 0);
}

TEST_CASE("metrize and recover roundtrip stays within one step") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 10; ++trial) {
        LogScale ls = random_scale(rng, 2 + static_cast<int>(rng() % 5), 10);
        long long delta = std::max<long long>(1, delta_of(ls));
        auto met = metric_from_logscale(ls, delta);
        auto back = logscale_from_metric(met.metric);
        // l and the recovered scale agree up to an affine error governed by delta:
        // exactness is impossible, but order must be preserved on comparable gaps
        for (int i = 0; i < ls.size(); ++i)
            for (int j = i + 1; j < ls.size(); ++j)
                for (int k = 0; k < ls.size(); ++k)
                    for (int l2 = k + 1; l2 < ls.size(); ++l2)
                        if (met.metric.d[static_cast<size_t>(i)][static_cast<size_t>(j)] <
                            met.metric.d[static_cast<size_t>(k)][static_cast<size_t>(l2)])
                            CHECK(back.scale.at(i, j) >= back.scale.at(k, l2));
    }
}

TEST_CASE("product scale is the coordinatewise minimum structure") {
    LogScale a = two_points(3);
    LogScale b = two_points(5);
    LogScale p = product_logscale(a, b);
    REQUIRE(p.size() == 4);
    // (x,x)-(x,y): first coordinate equal -> min(inf, 5) = 5
    CHECK(p.at(p_index(p, "x*x"), p_index(p, "x*y")) == 5);
    CHECK(p.at(p_index(p, "x*x"), p_index(p, "y*x")) == 3);
    CHECK(p.at(p_index(p, "x*x"), p_index(p, "y*y")) == 3);
}

TEST_CASE("pasting keeps local values and reports the cut threshold") {
    PasteInput in;
    in.points = {"a", "b", "c", "d"};
    in.charts = {{0, 1, 2}, {1, 2, 3}};
    LogScale l1 = LogScale::make({"a", "b", "c"});
    l1.set(0, 1, 3);
    l1.set(0, 2, 2);
    l1.set(1, 2, 2);
    LogScale l2 = LogScale::make({"b", "c", "d"});
    l2.set(0, 1, 2);
    l2.set(0, 2, 1);
    l2.set(1, 2, 1);
    in.locals = {l1, l2};
    auto r = paste_logscales(in, 1);
    // overlap pair (b,c) appears in both charts with the same value
    CHECK(r.scale.at(1, 2) == 2);
    // cross pair (a,d): best two-chart chain is min(3,1) = min(2,1) = 1; cut above it
    CHECK(r.threshold == 2);
    CHECK(delta_of(r.scale) <= r.delta);
    // in-chart pairs drift at most the reported chart constant
    CHECK(std::llabs(r.scale.at(0, 1) - 3) <= r.chart_constant);
    CHECK(std::llabs(r.scale.at(0, 2) - 2) <= r.chart_constant);

    // disagreeing overlaps beyond the bound are rejected
    in.locals[1].set(0, 1, 5);
    CHECK_THROWS_AS(paste_logscales(in, 1), input_error);
}

TEST_CASE("equivalence classifier separates additive from affine comparability") {
    std::mt19937_64 rng(99);
    LogScale base = random_scale(rng, 5, 8);

    LogScale shifted = base;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) shifted.set(i, j, base.at(i, j) + 3);
    auto eb = equivalence_bounds(base, shifted);
    CHECK(eb.lipschitz);
    CHECK(eb.lipschitz_k == 3);

    LogScale doubled = base;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) doubled.set(i, j, 2 * base.at(i, j));
    auto eb2 = equivalence_bounds(base, doubled);
    CHECK_FALSE(eb2.lipschitz);
    CHECK(eb2.holder);
    CHECK(eb2.holder_c == Rat(2));
    CHECK(eb2.holder_k == 0);
}

TEST_CASE("json roundtrips preserve scales and metrics") {
    std::mt19937_64 rng(4);
    LogScale ls = random_scale(rng, 6, 9);
    LogScale back = LogScale::from_json(ls.to_json());
    CHECK(back.points == ls.points);
    CHECK(back.values == ls.values);

    auto met = metric_from_logscale(ls, std::max<long long>(1, delta_of(ls))).metric;
    MetricTable mback = MetricTable::from_json(met.to_json());
    CHECK(mback.points == met.points);
    CHECK(mback.d == met.d);
}

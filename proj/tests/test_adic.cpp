#include <catch2/catch_amalgamated.hpp>

#include <hypgrpd/hypgrpd.hpp>

#include <map>
#include <set>

#include "oracles.hpp"

using namespace hypgrpd;

namespace {

// paths in tests are written with 1-based edge labels, matching the json format
std::vector<int> P(std::initializer_list<int> labels) {
    std::vector<int> p;
    for (int l : labels) p.push_back(l - 1);
    return p;
}

std::string labels_of(const std::vector<int>& p) {
    std::string s;
    for (int e : p) s += static_cast<char>('1' + e);
    return s;
}

}  // namespace

TEST_CASE("two-vertex diagram bookkeeping") {
    auto s = adic_preset("golden");
    REQUIRE(s.vertices == std::vector<std::string>{"A", "B"});
    REQUIRE(s.ecount() == 5);

    auto m = s.matrix();
    CHECK(m == std::vector<std::vector<long long>>{{2, 1}, {1, 1}});

    // incoming fibers keep listing order: 1 < 2 < 3 into A, 4 < 5 into B
    CHECK(s.fiber[0] == P({1, 2, 3}));
    CHECK(s.fiber[1] == P({4, 5}));
    CHECK(s.min_edge_into(0) == 0);
    CHECK(s.max_edge_into(0) == 2);
    CHECK(s.min_edge_into(1) == 3);
    CHECK(s.max_edge_into(1) == 4);

    // exactly these label pairs chain up
    std::set<std::string> expect{"11", "12", "14", "21", "22", "24", "31",
                                 "32", "34", "43", "45", "53", "55"};
    std::set<std::string> got;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b)
            if (s.path_ok({a, b})) got.insert(labels_of({a, b}));
    CHECK(got == expect);

    CHECK_FALSE(s.path_ok({}));
    CHECK_FALSE(s.path_ok({5}));
    CHECK(s.path_ok(P({5, 3, 1})));
}

TEST_CASE("successor recurrences on short paths") {
    auto s = adic_preset("golden");
    auto step = [&](std::initializer_list<int> l) { return vershik_successor(s, P(l)); };

    CHECK(step({1}).path == P({2}));
    CHECK(step({2}).path == P({3}));
    CHECK(step({4}).path == P({5}));
    CHECK(step({3, 1}).path == P({1, 2}));
    CHECK(step({3, 2}).path == P({4, 3}));
    CHECK(step({3, 4}).path == P({4, 5}));
    CHECK(step({5, 3, 4}).path == P({1, 4, 5}));
    CHECK_FALSE(step({5, 3, 4}).wrapped);

    // every edge maximal: restart from the minimal path over the same end
    auto w = step({3});
    CHECK(w.wrapped);
    CHECK(w.path == P({1}));
    w = step({5, 3});
    CHECK(w.wrapped);
    CHECK(w.path == P({1, 1}));
    w = step({5, 5, 5, 5, 5, 3});
    CHECK(w.wrapped);
    CHECK(w.path == P({1, 1, 1, 1, 1, 1}));
    w = step({5, 5, 5});
    CHECK(w.wrapped);
    CHECK(w.path == P({1, 1, 4}));

    CHECK_THROWS_AS(vershik_successor(s, P({1, 3})), input_error);
    CHECK_THROWS_AS(vershik_successor(s, {}), input_error);
}

TEST_CASE("successor recurrences on every admissible path") {
    // the successor map satisfies seven rewriting rules, three direct and
    // four recursive; together they cover every first letter
    auto s = adic_preset("golden");
    std::map<std::string, long long> fired;
    auto tail = [](const std::vector<int>& p) {
        return std::vector<int>(p.begin() + 1, p.end());
    };
    for (int len = 1; len <= 8; ++len) {
        for (auto& p : all_paths(s, len)) {
            auto r = vershik_successor(s, p);
            int head = p[0] + 1;
            if (head == 1) {  // t(1w) = 2w
                REQUIRE_FALSE(r.wrapped);
                std::vector<int> want = p;
                want[0] = 1;
                REQUIRE(r.path == want);
                ++fired["1w"];
            } else if (head == 2) {  // t(2w) = 3w
                REQUIRE_FALSE(r.wrapped);
                std::vector<int> want = p;
                want[0] = 2;
                REQUIRE(r.path == want);
                ++fired["2w"];
            } else if (head == 4) {  // t(4w) = 5w
                REQUIRE_FALSE(r.wrapped);
                std::vector<int> want = p;
                want[0] = 4;
                REQUIRE(r.path == want);
                ++fired["4w"];
            } else if (head == 3 && len >= 2) {
                auto sub = vershik_successor(s, tail(p));
                REQUIRE_FALSE(sub.wrapped);  // w starts with 1, 2, or 4 here
                std::vector<int> want = sub.path;
                int second = p[1] + 1;
                if (second == 1) {  // t(31w) = 1 t(1w)
                    want.insert(want.begin(), 0);
                    ++fired["31w"];
                } else if (second == 2) {  // t(32w) = 4 t(2w)
                    want.insert(want.begin(), 3);
                    ++fired["32w"];
                } else {  // t(34w) = 4 t(4w)
                    REQUIRE(second == 4);
                    want.insert(want.begin(), 3);
                    ++fired["34w"];
                }
                REQUIRE_FALSE(r.wrapped);
                REQUIRE(r.path == want);
            } else if (head == 5 && len >= 2) {  // t(5w) = 1 t(w)
                auto sub = vershik_successor(s, tail(p));
                std::vector<int> want = sub.path;
                want.insert(want.begin(), 0);
                REQUIRE(r.wrapped == sub.wrapped);
                REQUIRE(r.path == want);
                ++fired["5w"];
            }
        }
    }
    REQUIRE(fired.size() == 7);
    for (auto& [rule, count] : fired) {
        INFO(rule);
        CHECK(count > 0);
    }
}

TEST_CASE("successor walks each terminal class in adic order") {
    auto s = adic_preset("golden");
    for (int len = 1; len <= 8; ++len) {
        size_t total = 0;
        for (int v = 0; v < s.vcount(); ++v) {
            auto cls = oracle::all_paths_sorted_adic(s, len, v);
            REQUIRE_FALSE(cls.empty());
            total += cls.size();
            // one minimal and one maximal path per class, at the ends
            for (int e : cls.front()) CHECK(s.is_min(e));
            for (int e : cls.back()) CHECK(s.is_max(e));
            for (size_t i = 0; i + 1 < cls.size(); ++i) {
                auto r = vershik_successor(s, cls[i]);
                REQUIRE_FALSE(r.wrapped);
                REQUIRE(r.path == cls[i + 1]);
            }
            auto back = vershik_successor(s, cls.back());
            CHECK(back.wrapped);
            CHECK(back.path == cls.front());
        }
        CHECK(total == all_paths(s, len).size());
    }
}

TEST_CASE("successor is a bijection off the extreme paths") {
    auto s = adic_preset("golden");
    for (int len = 1; len <= 8; ++len) {
        auto paths = all_paths(s, len);
        std::set<std::vector<int>> non_min_expected, images;
        size_t non_max = 0;
        for (auto& p : paths) {
            bool allmin = true, allmax = true;
            for (int e : p) {
                if (!s.is_min(e)) allmin = false;
                if (!s.is_max(e)) allmax = false;
            }
            if (!allmin) non_min_expected.insert(p);
            if (allmax) continue;
            ++non_max;
            auto r = vershik_successor(s, p);
            REQUIRE_FALSE(r.wrapped);
            // the end of the path never moves
            CHECK(s.range(r.path.back()) == s.range(p.back()));
            images.insert(r.path);
        }
        CHECK(images.size() == non_max);  // injective
        CHECK(images == non_min_expected);
    }
}

TEST_CASE("path counts match matrix powers") {
    auto golden = adic_preset("golden");
    auto fib = adic_preset("fibonacci");
    CHECK(fib.matrix() == oracle::Mat{{1, 1}, {1, 0}});
    for (auto* s : {&golden, &fib}) {
        auto pw = s->matrix();  // length-n paths are counted by the n-th power
        for (int len = 1; len <= 8; ++len) {
            long long want = 0;
            for (auto& row : pw)
                for (auto x : row) want += x;
            CHECK(static_cast<long long>(all_paths(*s, len).size()) == want);
            pw = oracle::mat_mul(pw, s->matrix());
        }
    }
    // fibonacci counts are the fibonacci numbers
    CHECK(all_paths(fib, 1).size() == 3);
    CHECK(all_paths(fib, 2).size() == 5);
    CHECK(all_paths(fib, 3).size() == 8);
    CHECK(all_paths(fib, 6).size() == 34);
    CHECK_THROWS_AS(all_paths(golden, 12, 100), budget_error);
}

TEST_CASE("substitution words") {
    auto s = adic_preset("golden");
    CHECK(substitution_of(s, 0) == std::vector<int>{0, 0, 1});  // A -> AAB
    CHECK(substitution_of(s, 1) == std::vector<int>{0, 1});     // B -> AB

    CHECK(substitution_expand(s, 0, 0) == std::vector<int>{0});
    CHECK(substitution_expand(s, 0, 1) == std::vector<int>{0, 0, 1});
    CHECK(substitution_expand(s, 0, 2) == std::vector<int>{0, 0, 1, 0, 0, 1, 0, 1});

    // letter counts of the k-th word line up with the k-th matrix power
    for (int k = 0; k <= 10; ++k) {
        auto w = substitution_expand(s, 0, k);
        auto pw = oracle::mat_pow(s.matrix(), k);
        long long a = 0, b = 0;
        for (int t : w) (t == 0 ? a : b)++;
        CHECK(a == pw[0][0]);
        CHECK(b == pw[1][0]);
    }
    // expansion of B after one step embeds in expansion of A after two
    for (int k = 0; k <= 8; ++k)
        CHECK(oracle::is_factor(substitution_expand(s, 1, k), substitution_expand(s, 0, k + 1)));

    CHECK_THROWS_AS(substitution_expand(s, 0, 40, 1000), budget_error);
}

TEST_CASE("itineraries read substitution words off the leaf") {
    auto s = adic_preset("golden");

    // a full cycle through the class of length-n paths into v spells out the
    // (n-1)-st substitution word of v
    for (int len = 1; len <= 6; ++len)
        for (int v = 0; v < s.vcount(); ++v) {
            auto cls = oracle::all_paths_sorted_adic(s, len, v);
            auto it = leaf_itinerary(s, cls.front(), static_cast<long long>(cls.size()) - 1);
            CHECK_FALSE(it.wrapped);
            CHECK(it.tiles == substitution_expand(s, v, len - 1));
            long long a = 0, b = 0;
            for (int t : it.tiles) (t == 0 ? a : b)++;
            CHECK(it.frequency == std::vector<long long>{a, b});
        }

    // starting mid-class still yields a factor of a substitution word
    for (int len = 3; len <= 6; ++len) {
        auto paths = all_paths(s, len);
        auto big = substitution_expand(s, 0, len + 1);
        for (size_t i = 0; i < paths.size(); i += 3) {
            auto it = leaf_itinerary(s, paths[i], 12);
            if (it.wrapped) continue;  // ran off the end of the class
            CHECK(oracle::is_factor(it.tiles, big));
        }
    }

    auto it = leaf_itinerary(s, P({1, 1, 1}), 8);
    CHECK(it.tiles == std::vector<int>{0, 0, 1, 0});  // AABA
    CHECK(it.frequency == std::vector<long long>{3, 1});
    CHECK_FALSE(it.wrapped);

    // tile frequencies along a long stretch approach the golden ratio
    auto deep = oracle::all_paths_sorted_adic(s, 10, 0);
    auto run = leaf_itinerary(s, deep.front(), static_cast<long long>(deep.size()) - 1);
    double ratio = static_cast<double>(run.frequency[0]) / static_cast<double>(run.frequency[1]);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    CHECK(std::abs(ratio - phi) < 0.1 * phi);

    CHECK_THROWS_AS(leaf_itinerary(s, P({1, 3}), 4), input_error);
}

TEST_CASE("tile lengths from the substitution matrix") {
    auto s = adic_preset("golden");
    auto tl = tile_lengths(s.matrix());
    REQUIRE(tl.exact);
    REQUIRE(tl.primitive);
    // scale factor (3 + sqrt 5)/2, tiles 1 and (sqrt 5 - 1)/2
    CHECK(tl.value == QuadSurd{Rat(3, 2), Rat(1, 2), 5});
    REQUIRE(tl.lengths.size() == 2);
    CHECK(tl.lengths[0] == QuadSurd{1, 0, 5});
    CHECK(tl.lengths[1] == QuadSurd{Rat(-1, 2), Rat(1, 2), 5});
    // the second tile is value - 2, i.e. the fractional part of the scale
    auto diff = surd_add(tl.value, QuadSurd{-2, 0, 5});
    CHECK(surd_sign(surd_add(diff, surd_mul(QuadSurd{-1, 0, 5}, tl.lengths[1]))) == 0);

    auto fib = tile_lengths(oracle::Mat{{1, 1}, {1, 0}});
    REQUIRE(fib.exact);
    CHECK(fib.value == QuadSurd{Rat(1, 2), Rat(1, 2), 5});
    CHECK(fib.lengths[1] == QuadSurd{Rat(-1, 2), Rat(1, 2), 5});

    // perfect-square discriminant: the scale is rational, kept with radicand 1
    auto sq = tile_lengths(oracle::Mat{{2, 1}, {2, 3}});
    REQUIRE(sq.exact);
    CHECK(sq.value.d == 1);
    CHECK(surd_sign(surd_add(sq.value, QuadSurd{-4, 0, 1})) == 0);
    CHECK(surd_sign(surd_add(sq.lengths[1], QuadSurd{-2, 0, 1})) == 0);

    // 3x3 circulant has scale exactly 2: the certified interval must trap it
    oracle::Mat circ{{1, 1, 0}, {0, 1, 1}, {1, 0, 1}};
    auto c = tile_lengths(circ);
    REQUIRE_FALSE(c.exact);
    REQUIRE(c.primitive);
    CHECK(c.lo <= 2);
    CHECK(c.hi >= 2);
    CHECK(c.hi - c.lo < Rat(1, 1000000));
    REQUIRE(c.approx_lengths.size() == 3);
    for (auto& l : c.approx_lengths) CHECK(rat_abs(l - 1) < Rat(1, 1000));

    CHECK_THROWS_AS(tile_lengths(oracle::Mat{{1, 0}, {0, 1}}), input_error);
    CHECK_THROWS_AS(tile_lengths(oracle::Mat{{0, 1}, {1, 0}}), input_error);
    CHECK_THROWS_AS(tile_lengths(oracle::Mat{}), input_error);
    CHECK_THROWS_AS(tile_lengths(oracle::Mat{{1, 1}}), input_error);
}

TEST_CASE("diagram json round trip") {
    auto s = adic_preset("golden");
    auto j = s.to_json();
    auto t = AdicSystem::from_json(j);
    CHECK(t.vertices == s.vertices);
    CHECK(t.edge_ov == s.edge_ov);
    CHECK(t.fiber == s.fiber);

    // reordering a fiber changes which edge is minimal
    j["fiber_order"]["A"] = json::array({3, 2, 1});
    auto r = AdicSystem::from_json(j);
    CHECK(r.min_edge_into(0) == 2);
    CHECK(r.max_edge_into(0) == 0);
    auto step = vershik_successor(r, P({3}));
    CHECK_FALSE(step.wrapped);
    CHECK(step.path == P({2}));
    auto wrap = vershik_successor(r, P({1}));
    CHECK(wrap.wrapped);
    CHECK(wrap.path == P({3}));

    auto bad = s.to_json();
    bad["fiber_order"]["A"] = json::array({3, 3, 1});
    CHECK_THROWS_AS(AdicSystem::from_json(bad), input_error);
    bad["fiber_order"]["A"] = json::array({4, 2, 1});
    CHECK_THROWS_AS(AdicSystem::from_json(bad), input_error);
    bad = s.to_json();
    bad["fiber_order"]["C"] = json::array({1});
    CHECK_THROWS_AS(AdicSystem::from_json(bad), input_error);

    json iso;
    iso["vertices"] = json::array({"A", "B"});
    iso["edges"] = json::array({json::array({"A", "A"})});
    CHECK_THROWS_AS(AdicSystem::from_json(iso), input_error);
    json dup;
    dup["vertices"] = json::array({"A", "A"});
    dup["edges"] = json::array({json::array({"A", "A"})});
    CHECK_THROWS_AS(AdicSystem::from_json(dup), input_error);
    CHECK_THROWS_AS(AdicSystem::from_json(json::object()), input_error);

    CHECK_THROWS_AS(adic_preset("nope"), input_error);
}

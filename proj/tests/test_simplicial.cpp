#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "sigtda/complex_builder.hpp"
#include "sigtda/simplicial.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using fixtures::make_complex;
using fixtures::sx;
using sigtda::build_complex;
using sigtda::BuildParams;
using sigtda::ChannelWindow;
using sigtda::link;
using sigtda::Simplex;
using sigtda::stage_one;
using sigtda::stage_two;
using sigtda::WeightedComplex;

namespace {

ChannelWindow window_of(int channel, std::vector<double> samples) {
    ChannelWindow w;
    w.channel = channel;
    w.t_start = 0.0;
    w.t_end = static_cast<double>(samples.size() - 1);
    w.samples = std::move(samples);
    return w;
}

// Three channels sharing one driver shape, X3 = X1 + X2 plus noise. The pair
// signature (t, X1, X2) then tracks the lifted target signature closely, the
// regime in which the pair regression clears the gate.
std::vector<ChannelWindow> sum_instance(double noise_scale, std::uint64_t seed) {
    oracles::TestRng rng(seed);
    const std::size_t n = 51;
    std::vector<double> x0(n), x1(n), x2(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k);
        const double s = std::sin(0.23 * t) + 0.4 * std::cos(0.05 * t);
        x0[k] = s + noise_scale * rng.gaussian();
        x1[k] = 0.8 * s + 0.3 + noise_scale * rng.gaussian();
        x2[k] = x0[k] + x1[k] + noise_scale * rng.gaussian();
    }
    return {window_of(0, x0), window_of(1, x1), window_of(2, x2)};
}

std::vector<ChannelWindow> noise_instance(std::size_t d, std::uint64_t seed,
                                          std::size_t n = 40) {
    oracles::TestRng rng(seed);
    std::vector<ChannelWindow> windows;
    for (std::size_t i = 0; i < d; ++i) {
        std::vector<double> samples(n);
        for (double& v : samples) v = rng.gaussian();
        windows.push_back(window_of(static_cast<int>(i), std::move(samples)));
    }
    return windows;
}

bool has_simplex(const std::vector<std::pair<Simplex, double>>& selected, const Simplex& s) {
    return std::any_of(selected.begin(), selected.end(),
                       [&](const auto& e) { return e.first == s; });
}

}  // namespace

TEST_CASE("simplex construction sorts and rejects degenerate vertex sets") {
    const Simplex s({2, 0, 1});
    CHECK(s.vertices == std::vector<int>{0, 1, 2});
    CHECK(s.dimension() == 2);
    CHECK_THROWS_AS(Simplex(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(Simplex({1, 1}), std::invalid_argument);
}

TEST_CASE("simplex set operations") {
    const Simplex tri = sx({0, 1, 2});
    CHECK(tri.contains(sx({0, 2})));
    CHECK(tri.contains(tri));
    CHECK_FALSE(tri.contains(sx({0, 3})));
    CHECK(tri.disjoint(sx({3, 4})));
    CHECK_FALSE(tri.disjoint(sx({2, 3})));
    CHECK(sx({0, 2}).unite(sx({1})) == tri);

    const auto faces = tri.facets();
    REQUIRE(faces.size() == 3);
    CHECK(std::count(faces.begin(), faces.end(), sx({0, 1})) == 1);
    CHECK(std::count(faces.begin(), faces.end(), sx({0, 2})) == 1);
    CHECK(std::count(faces.begin(), faces.end(), sx({1, 2})) == 1);
    CHECK(sx({3}).facets().empty());
}

TEST_CASE("simplex ordering is dimension first, then lexicographic") {
    CHECK(sx({5}) < sx({0, 1}));
    CHECK(sx({0, 1}) < sx({0, 2}));
    CHECK(sx({0, 2}) < sx({1, 2}));
    CHECK(sx({1, 2}) < sx({0, 1, 2}));
    CHECK_FALSE(sx({0, 1}) < sx({0, 1}));
}

TEST_CASE("weighted complex holds its vertices from construction") {
    const WeightedComplex c(3);
    CHECK(c.vertex_count() == 3);
    CHECK(c.size() == 3);
    CHECK(c.count_of_dimension(0) == 3);
    CHECK(c.weight(sx({1})) == 0.0);
    CHECK_THROWS_AS(WeightedComplex(0), std::invalid_argument);
}

TEST_CASE("insert closes the complex downward") {
    WeightedComplex c(4);
    c.insert(sx({0, 1, 2}), 0.8);
    CHECK(c.size() == 4 + 3 + 1);
    CHECK(c.count_of_dimension(1) == 3);
    CHECK(c.count_of_dimension(2) == 1);
    CHECK(c.weight(sx({0, 1, 2})) == 0.8);
    CHECK(c.weight(sx({0, 1})) == 0.0);
    CHECK_NOTHROW(c.validate());
    CHECK_FALSE(c.contains(sx({0, 3})));
    CHECK_THROWS_AS(c.weight(sx({0, 3})), std::invalid_argument);
}

TEST_CASE("repeated insertion keeps the maximum weight") {
    WeightedComplex c(2);
    c.insert(sx({0, 1}), 0.2);
    c.insert(sx({0, 1}), 0.5);
    CHECK(c.weight(sx({0, 1})) == 0.5);
    c.insert(sx({0, 1}), 0.1);
    CHECK(c.weight(sx({0, 1})) == 0.5);
}

TEST_CASE("insert validates vertices and weights") {
    WeightedComplex c(2);
    CHECK_THROWS_AS(c.insert(sx({0, 2}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(c.insert(sx({-1}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(c.insert(sx({0}), -0.5), std::invalid_argument);
    CHECK_THROWS_AS(c.insert(sx({0}), std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK_THROWS_AS(c.insert(Simplex{}, 1.0), std::invalid_argument);
}

TEST_CASE("link enumerates cofaces minus sigma") {
    const WeightedComplex filled = make_complex(4, {{{0, 1, 2}, 1.0}});

    const auto around_vertex = link(filled, sx({0}));
    REQUIRE(around_vertex.size() == 3);
    CHECK(std::count(around_vertex.begin(), around_vertex.end(), sx({1})) == 1);
    CHECK(std::count(around_vertex.begin(), around_vertex.end(), sx({2})) == 1);
    CHECK(std::count(around_vertex.begin(), around_vertex.end(), sx({1, 2})) == 1);

    const auto around_edge = link(filled, sx({0, 1}));
    REQUIRE(around_edge.size() == 1);
    CHECK(around_edge.front() == sx({2}));

    CHECK(link(filled, sx({3})).empty());
    CHECK_THROWS_AS(link(filled, sx({0, 3})), std::invalid_argument);
}

TEST_CASE("stage one selects exactly proportional channels") {
    // X2 = 2 X1 + 3: normalization makes the augmented paths identical.
    std::vector<double> base(30);
    for (std::size_t k = 0; k < base.size(); ++k)
        base[k] = std::sin(0.4 * static_cast<double>(k)) + 0.2 * static_cast<double>(k);
    std::vector<double> scaled(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) scaled[k] = 2.0 * base[k] + 3.0;

    const std::vector<ChannelWindow> windows = {window_of(0, base), window_of(1, scaled)};

    for (double lambda1 : {0.0, 1.0}) {
        const auto edges = stage_one(windows, 3, lambda1, 0.67);
        REQUIRE(edges.size() == 1);
        CHECK(edges.front().first == sx({0, 1}));
        CHECK(edges.front().second > 0.0);
    }
}

TEST_CASE("stage one returns nothing for independent noise at large lambda") {
    const auto windows = noise_instance(3, 99);
    CHECK(stage_one(windows, 3, 1e9, 0.67).empty());
}

TEST_CASE("stage one with a single channel has no candidates") {
    const auto windows = noise_instance(1, 7);
    CHECK(stage_one(windows, 3, 1.0, 0.67).empty());
}

TEST_CASE("stage two selects the summed triangle") {
    const auto windows = sum_instance(1e-3, 60);
    const auto triangles = stage_two(windows, 3, 1.0, 0.67);
    CHECK(has_simplex(triangles, sx({0, 1, 2})));

    SUBCASE("full shrinkage removes it") {
        CHECK(stage_two(windows, 3, 1e9, 0.67).empty());
    }
}

TEST_CASE("stage two spans every unordered predictor pair") {
    // Five channels, X4 = X0 + X2: the pair {0, 2} sits among C(4,2) = 6
    // candidate columns of channel 4's regression and must be found there.
    oracles::TestRng rng(31);
    const std::size_t n = 51;
    std::vector<std::vector<double>> x(5, std::vector<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k);
        const double s = std::sin(0.21 * t) + 0.5 * std::cos(0.07 * t + 0.4);
        x[0][k] = s + 1e-3 * rng.gaussian();
        x[1][k] = rng.gaussian();
        x[2][k] = 0.7 * s - 0.2 + 1e-3 * rng.gaussian();
        x[3][k] = rng.gaussian();
        x[4][k] = x[0][k] + x[2][k] + 1e-3 * rng.gaussian();
    }
    std::vector<ChannelWindow> windows;
    for (int i = 0; i < 5; ++i) windows.push_back(window_of(i, x[i]));

    const auto triangles = stage_two(windows, 3, 1.0, 0.67);
    CHECK(has_simplex(triangles, sx({0, 2, 4})));
}

TEST_CASE("stage two enumerates the full pair grid of a wide instance") {
    // 23 channels give C(22, 2) = 231 pair columns per regression; a huge
    // penalty keeps the result empty while the enumeration still runs.
    const auto windows = noise_instance(23, 1234, 6);
    CHECK(stage_two(windows, 2, 1e12, 0.67).empty());
}

TEST_CASE("build_complex on unrelated noise is the bare vertex set") {
    const auto windows = noise_instance(4, 5);
    BuildParams params;
    params.lambda1 = 1e9;
    params.lambda2 = 1e9;
    const WeightedComplex c = build_complex(windows, params);
    CHECK(c.vertex_count() == 4);
    CHECK(c.size() == 4);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("closure supplies edges under a selected triangle") {
    const auto windows = sum_instance(1e-3, 60);
    BuildParams params;
    params.lambda1 = 1e9;  // no stage-one edges survive
    params.lambda2 = 1.0;
    const WeightedComplex c = build_complex(windows, params);
    REQUIRE(c.contains(sx({0, 1, 2})));
    CHECK(c.weight(sx({0, 1, 2})) > 0.0);
    for (auto edge : {sx({0, 1}), sx({0, 2}), sx({1, 2})}) {
        REQUIRE(c.contains(edge));
        CHECK(c.weight(edge) == 0.0);
    }
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("max_dim one keeps the complex to stage-one output") {
    const auto windows = sum_instance(1e-3, 60);
    BuildParams params;
    params.max_dim = 1;
    const WeightedComplex c = build_complex(windows, params);
    CHECK(c.count_of_dimension(2) == 0);

    const auto edges = stage_one(windows, params.deg, params.lambda1, params.r2_threshold,
                                 params.solver);
    CHECK(c.size() == 3 + edges.size());
    for (const auto& [edge, weight] : edges) {
        REQUIRE(c.contains(edge));
        CHECK(c.weight(edge) == weight);
    }
}

TEST_CASE("an unreachable gate leaves only vertices") {
    const auto windows = sum_instance(1e-3, 60);
    BuildParams params;
    params.r2_threshold = 1.1;
    const WeightedComplex c = build_complex(windows, params);
    CHECK(c.size() == 3);
}

TEST_CASE("build_complex is deterministic") {
    const auto windows = sum_instance(0.05, 13);
    BuildParams params;
    const WeightedComplex a = build_complex(windows, params);
    const WeightedComplex b = build_complex(windows, params);
    REQUIRE(a.size() == b.size());
    auto ia = a.simplices().begin();
    for (const auto& [s, w] : b.simplices()) {
        CHECK(ia->first == s);
        CHECK(ia->second == w);
        ++ia;
    }
}

// One proportional pair plus two independent noise channels: every regression
// in the build has a single well-separated optimum, so relabeling must map
// weights exactly, not just the simplex set.
std::vector<ChannelWindow> conditioned_instance(std::uint64_t seed) {
    oracles::TestRng rng(seed);
    const std::size_t n = 50;
    std::vector<double> x0(n), x1(n), x2(n), x3(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double t = static_cast<double>(k);
        const double a = std::sin(0.31 * t) + 0.4 * std::cos(0.09 * t);
        x0[k] = a + 1e-3 * rng.gaussian();
        x1[k] = 1.7 * a - 0.4 + 1e-3 * rng.gaussian();
        x2[k] = rng.gaussian();
        x3[k] = rng.gaussian();
    }
    return {window_of(0, std::move(x0)), window_of(1, std::move(x1)),
            window_of(2, std::move(x2)), window_of(3, std::move(x3))};
}

TEST_CASE("relabeling channels relabels the complex") {
    const auto windows = conditioned_instance(8);
    BuildParams params;
    const WeightedComplex base = build_complex(windows, params);
    REQUIRE(base.contains(Simplex({0, 1})));

    // pi maps original channel i to slot pi[i].
    const std::vector<int> pi = {2, 0, 3, 1};
    std::vector<ChannelWindow> permuted(4);
    for (int i = 0; i < 4; ++i) {
        permuted[pi[i]] = windows[i];
        permuted[pi[i]].channel = pi[i];
    }
    const WeightedComplex relabeled = build_complex(permuted, params);

    REQUIRE(base.size() == relabeled.size());
    for (const auto& [s, w] : base.simplices()) {
        std::vector<int> mapped;
        for (int v : s.vertices) mapped.push_back(pi[static_cast<std::size_t>(v)]);
        const Simplex image(mapped);
        REQUIRE(relabeled.contains(image));
        CHECK(relabeled.weight(image) == doctest::Approx(w).epsilon(1e-9));
    }
}

// With near-duplicate columns (every channel an affine image of one driver)
// the lasso objective has a flat valley and coordinate order decides how edge
// weight splits between duplicates, so only the simplex set and the triangle
// weight (a single-column fit per target, hence unique) are label-invariant.
TEST_CASE("relabeling preserves structure under collinear channels") {
    const auto windows = sum_instance(0.02, 8);
    BuildParams params;
    const WeightedComplex base = build_complex(windows, params);
    const std::vector<int> pi = {2, 0, 1};
    std::vector<ChannelWindow> permuted(3);
    for (int i = 0; i < 3; ++i) {
        permuted[pi[i]] = windows[i];
        permuted[pi[i]].channel = pi[i];
    }
    const WeightedComplex relabeled = build_complex(permuted, params);

    REQUIRE(base.size() == relabeled.size());
    for (const auto& [s, w] : base.simplices()) {
        std::vector<int> mapped;
        for (int v : s.vertices) mapped.push_back(pi[static_cast<std::size_t>(v)]);
        CHECK(relabeled.contains(Simplex(mapped)));
    }
    const Simplex tri({0, 1, 2});
    REQUIRE(base.contains(tri));
    REQUIRE(relabeled.contains(tri));
    CHECK(relabeled.weight(tri) == doctest::Approx(base.weight(tri)).epsilon(1e-9));
}

TEST_CASE("constant channels stay isolated") {
    std::vector<double> base(30);
    for (std::size_t k = 0; k < base.size(); ++k)
        base[k] = std::sin(0.4 * static_cast<double>(k));
    std::vector<double> scaled(base.size());
    for (std::size_t k = 0; k < base.size(); ++k) scaled[k] = 1.5 * base[k] + 0.3;

    const std::vector<ChannelWindow> windows = {
        window_of(0, base), window_of(1, scaled), window_of(2, std::vector<double>(30, 7.0))};
    const WeightedComplex c = build_complex(windows, BuildParams{});
    CHECK(c.contains(sx({0, 1})));
    for (const auto& [s, w] : c.simplices())
        if (s.dimension() > 0)
            CHECK(std::find(s.vertices.begin(), s.vertices.end(), 2) == s.vertices.end());
}

TEST_CASE("builder input validation") {
    const auto good = noise_instance(2, 3);
    BuildParams params;

    CHECK_THROWS_AS(build_complex({}, params), std::invalid_argument);

    auto wrong_index = good;
    wrong_index[1].channel = 5;
    CHECK_THROWS_AS(build_complex(wrong_index, params), std::invalid_argument);

    auto ragged = good;
    ragged[1].samples.pop_back();
    CHECK_THROWS_AS(build_complex(ragged, params), std::invalid_argument);

    auto tiny = good;
    tiny[0].samples = {1.0};
    tiny[1].samples = {2.0};
    CHECK_THROWS_AS(build_complex(tiny, params), std::invalid_argument);

    BuildParams zero_deg;
    zero_deg.deg = 0;
    CHECK_THROWS_AS(build_complex(good, zero_deg), std::invalid_argument);

    BuildParams bad_dim;
    bad_dim.max_dim = 3;
    CHECK_THROWS_AS(build_complex(good, bad_dim), std::invalid_argument);
    bad_dim.max_dim = 0;
    CHECK_THROWS_AS(build_complex(good, bad_dim), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "debrisk/csv.hpp"
#include "debrisk/errors.hpp"
#include "debrisk/rng.hpp"
#include "debrisk/scaler.hpp"
#include "debrisk/types.hpp"

using namespace debrisk;

TEST_CASE("rng streams are reproducible and independent of call site") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(124);
    CHECK(Rng(123).next_u64() != c.next_u64());
}

TEST_CASE("uniform01 stays in [0,1) and fills the range") {
    Rng rng(7);
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.uniform01();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
    }
    CHECK(lo < 0.01);
    CHECK(hi > 0.99);
}

TEST_CASE("below(n) is bounded and roughly uniform") {
    Rng rng(99);
    std::vector<int> counts(10, 0);
    for (int i = 0; i < 100000; ++i) {
        const auto v = rng.below(10);
        REQUIRE(v < 10);
        ++counts[static_cast<std::size_t>(v)];
    }
    for (int c : counts) {
        CHECK(c > 9000);
        CHECK(c < 11000);
    }
}

TEST_CASE("normal draws have near-standard moments") {
    Rng rng(31);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.normal();
        sum += v;
        sq += v * v;
    }
    const double mean = sum / n;
    const double var = sq / n - mean * mean;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("shuffle is a permutation and seed-stable") {
    std::vector<int> v(50);
    for (int i = 0; i < 50; ++i) v[static_cast<std::size_t>(i)] = i;
    auto w = v;
    Rng(5).shuffle(w);
    auto w2 = v;
    Rng(5).shuffle(w2);
    CHECK(w == w2);
    CHECK(w != v);
    auto sorted = w;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted == v);
}

TEST_CASE("mix_seed separates streams") {
    std::map<std::uint64_t, int> seen;
    for (std::uint64_t a = 0; a < 50; ++a)
        for (std::uint64_t b = 0; b < 50; ++b) ++seen[mix_seed(a, b)];
    CHECK(seen.size() == 2500);
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    CHECK(mix_seed(1, 2, 0) != mix_seed(1, 2, 1));
}

TEST_CASE("format_double round-trips exactly") {
    const double vals[] = {0.0,     -0.0,   1.0,       0.1,      1.0 / 3.0, 1e-300,
                           -2.5e17, 6.13,   M_PI,      -42.4242, 1e308,     5e-324,
                           123456789.123456789, 0x1.fffffffffffffp-1};
    for (double v : vals) {
        const std::string s = format_double(v);
        CHECK(parse_double(s, "t") == v);
    }
    Rng rng(11);
    for (int i = 0; i < 5000; ++i) {
        const double v = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform(-20.0, 20.0));
        CHECK(parse_double(format_double(v), "t") == v);
    }
}

TEST_CASE("parse_double rejects trailing garbage and empties") {
    CHECK_THROWS_AS(parse_double("1.5x", "f"), ParseError);
    CHECK_THROWS_AS(parse_double("", "f"), ParseError);
    CHECK_THROWS_AS(parse_double("nanx", "f"), ParseError);
    CHECK_THROWS_AS(parse_long("3.5", "f"), ParseError);
    CHECK(parse_double("inf", "f") == std::numeric_limits<double>::infinity());
    CHECK(parse_long("-17", "f") == -17);
}

TEST_CASE("split_csv_line keeps empty fields") {
    const auto f = split_csv_line("a,,c");
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "a");
    CHECK(f[1].empty());
    CHECK(f[2] == "c");
    CHECK(split_csv_line("").size() == 1);
}

TEST_CASE("normalize_lon wraps into [-180, 180)") {
    CHECK(normalize_lon(0.0) == 0.0);
    CHECK(normalize_lon(180.0) == -180.0);
    CHECK(normalize_lon(-180.0) == -180.0);
    CHECK(normalize_lon(181.0) == doctest::Approx(-179.0));
    CHECK(normalize_lon(-181.0) == doctest::Approx(179.0));
    CHECK(normalize_lon(725.0) == doctest::Approx(5.0));
    CHECK(normalize_lon(-3605.0) == doctest::Approx(-5.0));
}

namespace {

Dataset tiny_dataset(std::size_t n) {
    Dataset d;
    Rng rng(77);
    for (std::size_t i = 0; i < n; ++i) {
        DataRow row;
        row.x.origin_lon = rng.uniform(-180.0, 180.0);
        row.x.origin_lat = rng.uniform(-42.0, 42.0);
        row.x.azimuth = rng.uniform(0.0, 360.0);
        row.x.initial_altitude = rng.uniform(90000.0, 150000.0);
        row.x.initial_velocity = rng.uniform(5000.0, 9000.0);
        row.x.initial_trajectory_inclination = rng.uniform(-5.0, -0.5);
        for (auto& y : row.labels) {
            y.landing_lon = rng.uniform(-180.0, 180.0);
            y.landing_lat = rng.uniform(-42.0, 42.0);
            y.landing_velocity = rng.uniform(10.0, 400.0);
        }
        d.rows.push_back(row);
    }
    return d;
}

} // namespace

TEST_CASE("dataset csv round-trips byte-identically") {
    const Dataset d = tiny_dataset(23);
    std::ostringstream first;
    write_dataset_csv(first, d);
    std::istringstream back(first.str());
    const Dataset d2 = read_dataset_csv(back, "mem");
    REQUIRE(d2.rows.size() == d.rows.size());
    std::ostringstream second;
    write_dataset_csv(second, d2);
    CHECK(first.str() == second.str());
    CHECK(d2.rows[7].x.azimuth == d.rows[7].x.azimuth);
    CHECK(d2.rows[19].labels[6].landing_velocity == d.rows[19].labels[6].landing_velocity);
}

TEST_CASE("dataset csv reader names the offending cell") {
    const Dataset d = tiny_dataset(12);
    std::ostringstream out;
    write_dataset_csv(out, d);
    std::string text = out.str();

    SUBCASE("corrupted value") {
        const auto pos = text.find_last_of(',');
        text.replace(pos + 1, 2, "zz");
        std::istringstream in(text);
        CHECK_THROWS_AS(read_dataset_csv(in, "bad"), ParseError);
    }
    SUBCASE("wrong column count") {
        text += "1,2,3\n";
        std::istringstream in(text);
        CHECK_THROWS_AS(read_dataset_csv(in, "bad"), ParseError);
    }
    SUBCASE("bad header") {
        std::istringstream in("nope\n" + text.substr(text.find('\n') + 1));
        CHECK_THROWS_AS(read_dataset_csv(in, "bad"), ParseError);
    }
}

TEST_CASE("validate_sample rejects out-of-range labels") {
    Sample s;
    s.x.initial_altitude = 100000.0;
    s.x.initial_velocity = 7000.0;
    s.x.initial_trajectory_inclination = -2.0;
    s.y = {10.0, 10.0, 100.0};
    CHECK_NOTHROW(validate_sample(s));
    Sample bad = s;
    bad.y.landing_lat = 97.0;
    CHECK_THROWS_AS(validate_sample(bad), RangeError);
    bad = s;
    bad.y.landing_lon = 181.0;
    CHECK_THROWS_AS(validate_sample(bad), RangeError);
    bad = s;
    bad.x.azimuth = 360.0;
    CHECK_THROWS_AS(validate_sample(bad), RangeError);
    bad = s;
    bad.y.landing_velocity = -1.0;
    CHECK_THROWS_AS(validate_sample(bad), RangeError);
}

TEST_CASE("affine scaler standardizes and inverts") {
    std::vector<std::vector<double>> rows = {{1.0, 100.0}, {2.0, 200.0}, {3.0, 300.0},
                                             {4.0, 400.0}, {5.0, 500.0}};
    const AffineScaler sc = AffineScaler::fit(rows);
    CHECK(sc.mean[0] == doctest::Approx(3.0));
    CHECK(sc.mean[1] == doctest::Approx(300.0));

    double m0 = 0.0, v0 = 0.0;
    for (const auto& r : rows) m0 += sc.apply(r)[0];
    m0 /= 5.0;
    for (const auto& r : rows) {
        const double d = sc.apply(r)[0] - m0;
        v0 += d * d;
    }
    v0 /= 5.0;
    CHECK(m0 == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(v0 == doctest::Approx(1.0));

    for (const auto& r : rows)
        CHECK(sc.invert_single(sc.apply_single(r[1], 1), 1) == doctest::Approx(r[1]));
}

TEST_CASE("affine scaler keeps constant columns invertible") {
    std::vector<std::vector<double>> rows = {{7.0, 1.0}, {7.0, 2.0}, {7.0, 3.0}};
    const AffineScaler sc = AffineScaler::fit(rows);
    CHECK(sc.std_dev[0] == 1.0);
    CHECK(sc.apply(rows[0])[0] == 0.0);
    CHECK(sc.invert_single(0.0, 0) == 7.0);
}

TEST_CASE("target and learner helpers agree with their strings") {
    CHECK(target_from_string("lon") == Target::Lon);
    CHECK(target_from_string(to_string(Target::Vel)) == Target::Vel);
    CHECK_THROWS_AS(target_from_string("velocity?"), ParseError);
    LabelVector y{1.0, 2.0, 3.0};
    CHECK(target_of(y, Target::Lon) == 1.0);
    CHECK(target_of(y, Target::Lat) == 2.0);
    CHECK(target_of(y, Target::Vel) == 3.0);
}

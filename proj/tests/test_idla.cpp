#include <doctest.h>

#include <stdexcept>
#include <algorithm>

#include <sstream>

#include "propp/idla.hpp"

using namespace propp::idla;

TEST_CASE("splitmix64 reference values") {
    // first two outputs of the published sequence for seed 0
    CHECK(splitmix64(0) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64(1) == 0x910A2DEC89025CC1ULL);
}

TEST_CASE("first particle occupies the origin") {
    const auto rotor = GridRotor::parse("L,U,D,R");
    Aggregation agg(rotor, InitMode::AllLeft, 0, 1);
    agg.insert_particle();
    CHECK(agg.particles() == 1);
    CHECK(agg.occupied(0, 0));
    CHECK(agg.circumscribed_norm2() == 0);
    CHECK(agg.inscribed_norm2() == 0);
    CHECK(agg.delta() == 0.0);
    // untouched rotor still points left
    CHECK(agg.rotor_dir(0, 0) == GridDir::L);
}

TEST_CASE("one-pixel render") {
    const auto rotor = GridRotor::parse("L,U,D,R");
    Aggregation agg(rotor, InitMode::AllLeft, 0, 1);
    agg.insert_particle();
    const auto bytes = render_ppm_bytes(agg);
    const std::string expected_header = "P6\n1 1\n255\n";
    REQUIRE(bytes.size() == expected_header.size() + 3);
    CHECK(std::equal(expected_header.begin(), expected_header.end(), bytes.begin()));
    // left rotor renders yellow
    CHECK(bytes[bytes.size() - 3] == 255);
    CHECK(bytes[bytes.size() - 2] == 255);
    CHECK(bytes[bytes.size() - 1] == 0);
}

TEST_CASE("deterministic growth and exact occupation count") {
    const auto rotor = GridRotor::parse("L,U,D,R");
    const auto samples = std::vector<long long>{1, 10, 100, 1000, 5000};
    const auto a = idla_run(5000, rotor, InitMode::AllLeft, 0, samples);
    const auto b = idla_run(5000, rotor, InitMode::AllLeft, 0, samples);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].circumscribed_norm2 == b[i].circumscribed_norm2);
        CHECK(a[i].inscribed_norm2 == b[i].inscribed_norm2);
        CHECK(a[i].delta >= 0.0);
    }

    Aggregation agg(rotor, InitMode::AllLeft, 0, 1);  // deliberately undersized
    agg.insert_until(5000);
    long long occ = 0;
    const auto bb = agg.bounding_box();
    for (int y = bb[2]; y <= bb[3]; ++y)
        for (int x = bb[0]; x <= bb[1]; ++x)
            if (agg.occupied(x, y)) ++occ;
    CHECK(occ == 5000);
    CHECK(agg.circumscribed_norm2() == a.back().circumscribed_norm2);
    CHECK(agg.inscribed_norm2() == a.back().inscribed_norm2);
}

TEST_CASE("random initialization is seed-reproducible") {
    const auto rotor = GridRotor::parse("L,U,R,D");
    const auto samples = std::vector<long long>{2000};
    const auto a = idla_run(2000, rotor, InitMode::Random, 42, samples);
    const auto b = idla_run(2000, rotor, InitMode::Random, 42, samples);
    const auto c = idla_run(2000, rotor, InitMode::Random, 43, samples);
    CHECK(a[0].circumscribed_norm2 == b[0].circumscribed_norm2);
    CHECK(a[0].inscribed_norm2 == b[0].inscribed_norm2);
    const bool differs = a[0].circumscribed_norm2 != c[0].circumscribed_norm2 ||
                         a[0].inscribed_norm2 != c[0].inscribed_norm2;
    CHECK(differs);
}

TEST_CASE("inscribed radius tracks the nearest gap") {
    const auto rotor = GridRotor::parse("L,U,D,R");
    Aggregation agg(rotor, InitMode::AllLeft, 0, 64);
    agg.insert_until(2);
    // two occupied cells: origin plus one neighbor -> nearest gap at norm2 1,
    // inscribed norm2 stays 0
    CHECK(agg.min_unoccupied_norm2() == 1);
    CHECK(agg.inscribed_norm2() == 0);
    agg.insert_until(40);
    CHECK(agg.min_unoccupied_norm2() > 1);
    CHECK(agg.inscribed_norm2() < agg.min_unoccupied_norm2());
}

TEST_CASE("ensemble statistics") {
    const auto rotor = GridRotor::parse("L,U,D,R");
    const auto same = ensemble_stats(3000, rotor, {7, 7, 7}, 1000, 3000, 2);
    CHECK(same.sd_avg_delta == 0.0);
    CHECK(same.sd_max_delta == 0.0);
    CHECK(same.runs == 3);
    CHECK_THROWS_AS(ensemble_stats(100, rotor, {1}, 10, 100, 1), std::invalid_argument);
}

TEST_CASE("trace csv format") {
    std::vector<DeltaSample> tr{{1, 0, 0, 0.0}, {10, 9, 4, 1.0}};
    std::ostringstream os;
    write_trace_csv(tr, os);
    CHECK(os.str() == "1;0.000000\n10;1.000000\n");
}

TEST_CASE("rotor parsing") {
    CHECK(GridRotor::parse("L,U,D,R").to_string() == "L,U,D,R");
    CHECK_THROWS_AS(GridRotor::parse("L,U,D"), std::invalid_argument);
    CHECK_THROWS_AS(GridRotor::parse("L,U,D,L"), std::invalid_argument);
    CHECK_THROWS_AS(GridRotor::parse("L,U,D,X"), std::invalid_argument);
}

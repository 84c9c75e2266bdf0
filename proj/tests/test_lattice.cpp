#include <doctest.h>

#include <stdexcept>

#include <set>

#include "propp/lattice.hpp"

using namespace propp;

TEST_CASE("lattice membership and parity") {
    CHECK(in_lattice({0, 0}));
    CHECK(in_lattice({5, 9}));
    CHECK_FALSE(in_lattice({1, 2}));
    CHECK(parity_match({0, 0}, 0));
    CHECK_FALSE(parity_match({1, 1}, 2));
    CHECK(parity_match({5, 9}, 9));
    CHECK(linf_norm({5, -9}) == 9);
}

TEST_CASE("six rotor sequences, two per class") {
    std::set<std::string> seen;
    int circular = 0, xalt = 0, yalt = 0;
    for (const auto& seq : RotorSequence::all()) {
        seen.insert(seq.to_string());
        switch (seq.rotor_class()) {
            case RotorClass::Circular: ++circular; break;
            case RotorClass::XAlternating: ++xalt; break;
            case RotorClass::YAlternating: ++yalt; break;
        }
    }
    CHECK(seen.size() == 6);
    CHECK(circular == 2);
    CHECK(xalt == 2);
    CHECK(yalt == 2);
}

TEST_CASE("classify follows the published listings") {
    CHECK(RotorSequence::classify({Dir::NE, Dir::SE, Dir::SW, Dir::NW}).rotor_class() ==
          RotorClass::Circular);
    CHECK(RotorSequence::classify({Dir::NE, Dir::NW, Dir::SE, Dir::SW}).rotor_class() ==
          RotorClass::XAlternating);
    CHECK(RotorSequence::classify({Dir::NE, Dir::SE, Dir::NW, Dir::SW}).rotor_class() ==
          RotorClass::YAlternating);
    // rotations canonicalize to the NE start
    CHECK(RotorSequence::classify({Dir::SW, Dir::NW, Dir::NE, Dir::SE}).to_string() ==
          "NE,SE,SW,NW");
    CHECK_THROWS_AS(RotorSequence::classify({Dir::NE, Dir::NE, Dir::SW, Dir::NW}),
                    std::invalid_argument);
}

TEST_CASE("next_direction") {
    const auto cw = RotorSequence::clockwise();
    CHECK(next_direction(cw, Dir::NE, 1) == Dir::SE);
    const auto xa = RotorSequence::parse("NE,NW,SE,SW");
    CHECK(next_direction(xa, Dir::NW, 1) == Dir::SE);
    for (const auto& seq : RotorSequence::all())
        for (int d = 0; d < 4; ++d)
            for (unsigned k = 0; k < 9; ++k)
                CHECK(next_direction(seq, static_cast<Dir>(d), k + 4) ==
                      next_direction(seq, static_cast<Dir>(d), k));
}

TEST_CASE("csv round trip") {
    for (const auto& seq : RotorSequence::all())
        CHECK(RotorSequence::parse(seq.to_string()) == seq);
    CHECK_THROWS_AS(RotorSequence::parse("NE,SE,SW"), std::invalid_argument);
    CHECK_THROWS_AS(RotorSequence::parse("NE,SE,SW,XX"), std::invalid_argument);
}

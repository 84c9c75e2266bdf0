#include "propp/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace propp {

bool in_lattice(Vertex v) { return ((v.x1 - v.x2) & 1LL) == 0; }

long long linf_norm(Vertex v) { return std::max(std::llabs(v.x1), std::llabs(v.x2)); }

bool parity_match(Vertex x, long long t) {
    return ((x.x1 - t) & 1LL) == 0 && ((x.x2 - t) & 1LL) == 0;
}

std::array<int, 2> dir_step(Dir a) {
    switch (a) {
        case Dir::NE: return {+1, +1};
        case Dir::SE: return {+1, -1};
        case Dir::SW: return {-1, -1};
        case Dir::NW: return {-1, +1};
    }
    throw std::invalid_argument("dir_step: bad direction");
}

Vertex operator+(Vertex x, Dir a) {
    auto s = dir_step(a);
    return Vertex{x.x1 + s[0], x.x2 + s[1]};
}

std::string to_string(Dir a) {
    switch (a) {
        case Dir::NE: return "NE";
        case Dir::SE: return "SE";
        case Dir::SW: return "SW";
        case Dir::NW: return "NW";
    }
    throw std::invalid_argument("to_string: bad direction");
}

Dir parse_dir(std::string_view s) {
    if (s == "NE") return Dir::NE;
    if (s == "SE") return Dir::SE;
    if (s == "SW") return Dir::SW;
    if (s == "NW") return Dir::NW;
    throw std::invalid_argument("parse_dir: expected NE/SE/SW/NW, got '" + std::string(s) + "'");
}

std::string to_string(RotorClass c) {
    switch (c) {
        case RotorClass::Circular: return "circular";
        case RotorClass::XAlternating: return "x-alternating";
        case RotorClass::YAlternating: return "y-alternating";
    }
    throw std::invalid_argument("to_string: bad rotor class");
}

namespace {

RotorClass classify_canonical(const std::array<Dir, 4>& o) {
    // o starts at NE; the class is decided by the successor of NE.
    // clockwise (NE,SE,SW,NW) / counterclockwise (NE,NW,SW,SE): circular;
    // (NE,NW,SE,SW), (NE,SW,SE,NW): x-alternating;
    // (NE,SE,NW,SW), (NE,SW,NW,SE): y-alternating.
    const Dir b = o[1], c = o[2];
    if (c == Dir::SW) return RotorClass::Circular;  // NE,?,SW,? with opposite mid
    if (c == Dir::SE) return RotorClass::XAlternating;
    if (c == Dir::NW) return RotorClass::YAlternating;
    // c == NE impossible in a permutation
    (void)b;
    throw std::logic_error("classify_canonical: not a permutation");
}

}  // namespace

RotorSequence RotorSequence::classify(const std::array<Dir, 4>& order) {
    bool seen[4] = {false, false, false, false};
    for (Dir d : order) {
        int i = static_cast<int>(d);
        if (i < 0 || i > 3 || seen[i])
            throw std::invalid_argument("RotorSequence: order must be a permutation of the four directions");
        seen[i] = true;
    }
    int start = 0;
    while (order[static_cast<size_t>(start)] != Dir::NE) ++start;
    std::array<Dir, 4> canon;
    for (int i = 0; i < 4; ++i) canon[static_cast<size_t>(i)] = order[static_cast<size_t>((start + i) % 4)];
    return RotorSequence(canon, classify_canonical(canon));
}

RotorSequence RotorSequence::parse(std::string_view csv) {
    std::array<Dir, 4> order;
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = csv.find(',', pos);
        std::string_view tok =
            (comma == std::string_view::npos) ? csv.substr(pos) : csv.substr(pos, comma - pos);
        if (tok.empty() || (i < 3) != (comma != std::string_view::npos))
            throw std::invalid_argument("RotorSequence: expected four comma-separated directions");
        order[static_cast<size_t>(i)] = parse_dir(tok);
        pos = comma + 1;
    }
    return classify(order);
}

const std::array<RotorSequence, 6>& RotorSequence::all() {
    static const std::array<RotorSequence, 6> seqs = {
        classify({Dir::NE, Dir::SE, Dir::SW, Dir::NW}),  // clockwise
        classify({Dir::NE, Dir::NW, Dir::SW, Dir::SE}),  // counterclockwise
        classify({Dir::NE, Dir::NW, Dir::SE, Dir::SW}),
        classify({Dir::NE, Dir::SW, Dir::SE, Dir::NW}),
        classify({Dir::NE, Dir::SE, Dir::NW, Dir::SW}),
        classify({Dir::NE, Dir::SW, Dir::NW, Dir::SE}),
    };
    return seqs;
}

RotorSequence RotorSequence::clockwise() { return all()[0]; }
RotorSequence RotorSequence::counterclockwise() { return all()[1]; }

int RotorSequence::index_of(Dir a) const {
    for (int i = 0; i < 4; ++i)
        if (order_[static_cast<size_t>(i)] == a) return i;
    throw std::logic_error("RotorSequence::index_of");
}

Dir RotorSequence::next(Dir a, unsigned long long k) const {
    return order_[static_cast<size_t>((static_cast<unsigned long long>(index_of(a)) + k) % 4)];
}

std::string RotorSequence::to_string() const {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += propp::to_string(order_[static_cast<size_t>(i)]);
    }
    return s;
}

Dir next_direction(const RotorSequence& seq, Dir a, unsigned long long k) {
    return seq.next(a, k);
}

}  // namespace propp

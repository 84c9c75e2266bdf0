#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace propp {

// Diagonal representation of the two-dimensional grid: the vertex set is
// all integer pairs with x1 == x2 (mod 2), and the four neighbors of a
// vertex differ by (+-1, +-1).
struct Vertex {
    long long x1 = 0;
    long long x2 = 0;

    friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

/// x1 == x2 (mod 2)?
bool in_lattice(Vertex v);

/// max(|x1|, |x2|)
long long linf_norm(Vertex v);

/// x1 == x2 == t (mod 2)?
bool parity_match(Vertex x, long long t);

// The four diagonal directions. The enum order is a fixed storage order,
// not a rotor order.
enum class Dir : int { NE = 0, SE = 1, SW = 2, NW = 3 };

constexpr int kDirCount = 4;

/// (a1, a2) with a1, a2 in {-1, +1}.
std::array<int, 2> dir_step(Dir a);

Vertex operator+(Vertex x, Dir a);

std::string to_string(Dir a);
Dir parse_dir(std::string_view s);

enum class RotorClass { Circular, XAlternating, YAlternating };

std::string to_string(RotorClass c);

// A rotor sequence is a cyclic permutation of the four directions. It is
// stored canonically starting at NE, so exactly six distinct sequences
// exist: two circular, two x-alternating, two y-alternating.
class RotorSequence {
  public:
    /// Build from any 4-tuple that is a permutation of the directions;
    /// rotations are canonicalized to start at NE. Throws
    /// std::invalid_argument for non-permutations.
    static RotorSequence classify(const std::array<Dir, 4>& order);

    /// Parse the comma encoding, e.g. "NE,SE,SW,NW".
    static RotorSequence parse(std::string_view csv);

    /// All six sequences, clockwise first.
    static const std::array<RotorSequence, 6>& all();

    static RotorSequence clockwise();
    static RotorSequence counterclockwise();

    Dir at(int i) const { return order_[((i % 4) + 4) % 4]; }
    int index_of(Dir a) const;
    Dir next(Dir a, unsigned long long k = 1) const;

    RotorClass rotor_class() const { return class_; }
    const std::array<Dir, 4>& order() const { return order_; }
    std::string to_string() const;

    friend bool operator==(const RotorSequence& a, const RotorSequence& b) {
        return a.order_ == b.order_;
    }

  private:
    RotorSequence(const std::array<Dir, 4>& order, RotorClass c)
        : order_(order), class_(c) {}

    std::array<Dir, 4> order_;
    RotorClass class_;
};

/// NEXT^k(a) under seq.
Dir next_direction(const RotorSequence& seq, Dir a, unsigned long long k);

}  // namespace propp

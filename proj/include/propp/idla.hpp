#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace propp::idla {

// Standard-grid directions for the aggregation model. The diagonal lattice
// used elsewhere maps onto this grid by (x1,x2) <-> ((x1+x2)/2, (x1-x2)/2).
enum class GridDir : int { U = 0, L = 1, D = 2, R = 3 };

std::array<int, 2> grid_step(GridDir d);
std::string to_string(GridDir d);

// Cyclic service order of the four directions, e.g. (L,U,D,R).
struct GridRotor {
    std::array<GridDir, 4> order;

    static GridRotor parse(std::string_view csv);  // "L,U,D,R"
    std::string to_string() const;
    int index_of(GridDir d) const;
};

enum class InitMode { AllLeft, Random };

/// SplitMix64; the pinned portable generator for rotor initialization.
std::uint64_t splitmix64(std::uint64_t z);

/// Initial rotor position of cell (x,y) under Random(seed): the low two
/// bits of splitmix64(seed ^ splitmix64(key(x,y))) with
/// key = (uint64(uint32(x)) << 32) | uint32(y).
int random_rotor_position(std::uint64_t seed, int x, int y);

struct DeltaSample {
    long long n;
    long long circumscribed_norm2;  // max squared norm over occupied cells
    long long inscribed_norm2;      // largest lattice norm2 with a fully occupied ball
    double delta;                   // sqrt(circ) - sqrt(insc)
};

// Rotor-router aggregation: particles start at the origin and walk by the
// rotors until the first empty cell, which they occupy.
class Aggregation {
  public:
    Aggregation(const GridRotor& rotor, InitMode init, std::uint64_t seed,
                long long expected_particles);

    void insert_particle();
    void insert_until(long long n);

    long long particles() const { return particles_; }
    long long circumscribed_norm2() const { return max_occ_norm2_; }
    long long min_unoccupied_norm2();
    long long inscribed_norm2();
    double delta();

    bool occupied(int x, int y) const;
    /// Final rotor direction of a cell (meaningful for occupied cells).
    GridDir rotor_dir(int x, int y) const;
    // Tight bounding box of the occupied set: {xmin, xmax, ymin, ymax}.
    std::array<int, 4> bounding_box() const;

    long long steps_taken() const { return steps_; }

  private:
    int cell_index(int x, int y) const;
    std::uint8_t init_byte(int x, int y) const;
    void grow(int needed_half);
    void push_neighbors(int x, int y);

    GridRotor rotor_;
    InitMode init_;
    std::uint64_t seed_;
    int half_ = 0;
    int side_ = 0;
    std::vector<std::uint8_t> cells_;  // bit0 occ, bits1-2 rotor pos, bit3 heap-seen
    long long particles_ = 0;
    long long steps_ = 0;
    long long max_occ_norm2_ = 0;
    std::array<int, 4> bbox_{0, 0, 0, 0};
    // min-heap of (norm2, x, y) candidates for the nearest unoccupied cell
    std::vector<std::uint64_t> heap_;
    long long cached_pred_of_ = -1;
    long long cached_pred_ = 0;
};

/// Run one aggregation, sampling Delta at the given particle counts
/// (ascending). Deterministic for AllLeft; reproducible for Random(seed).
std::vector<DeltaSample> idla_run(long long particles, const GridRotor& rotor,
                                  InitMode init, std::uint64_t seed,
                                  const std::vector<long long>& sample_points,
                                  Aggregation* final_state = nullptr);

/// Default sampling grid: every insertion up to 1e5, then every 1e3.
std::vector<long long> default_sample_points(long long particles);

/// Binary PPM (P6), one pixel per cell of the occupied bounding box,
/// colored by final rotor direction: U red, L yellow, D green, R blue;
/// unoccupied cells white.
std::vector<std::uint8_t> render_ppm_bytes(const Aggregation& agg);
void render_ppm(const Aggregation& agg, const std::string& path);

struct EnsembleStats {
    double mean_avg_delta = 0, sd_avg_delta = 0;
    double mean_max_delta = 0, sd_max_delta = 0;
    int runs = 0;
};

/// Mean +- stddev over seeds of the window-averaged Delta (samples with
/// window_lo < n <= window_hi) and of the maximal sampled Delta.
EnsembleStats ensemble_stats(long long particles, const GridRotor& rotor,
                             const std::vector<std::uint64_t>& seeds,
                             long long window_lo, long long window_hi,
                             int threads = 1);

void write_trace_csv(const std::vector<DeltaSample>& trace, std::ostream& os);

}  // namespace propp::idla

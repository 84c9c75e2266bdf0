#include "propp/idla.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace propp::idla {

std::array<int, 2> grid_step(GridDir d) {
    switch (d) {
        case GridDir::U: return {0, +1};
        case GridDir::L: return {-1, 0};
        case GridDir::D: return {0, -1};
        case GridDir::R: return {+1, 0};
    }
    throw std::invalid_argument("grid_step: bad direction");
}

std::string to_string(GridDir d) {
    switch (d) {
        case GridDir::U: return "U";
        case GridDir::L: return "L";
        case GridDir::D: return "D";
        case GridDir::R: return "R";
    }
    throw std::invalid_argument("to_string: bad grid direction");
}

GridRotor GridRotor::parse(std::string_view csv) {
    GridRotor r{};
    bool seen[4] = {false, false, false, false};
    size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        size_t comma = csv.find(',', pos);
        std::string_view tok =
            (comma == std::string_view::npos) ? csv.substr(pos) : csv.substr(pos, comma - pos);
        if (tok.empty() || (i < 3) != (comma != std::string_view::npos))
            throw std::invalid_argument("GridRotor: expected four comma-separated directions");
        GridDir d;
        if (tok == "U") d = GridDir::U;
        else if (tok == "L") d = GridDir::L;
        else if (tok == "D") d = GridDir::D;
        else if (tok == "R") d = GridDir::R;
        else throw std::invalid_argument("GridRotor: expected U/L/D/R, got '" + std::string(tok) + "'");
        if (seen[static_cast<int>(d)])
            throw std::invalid_argument("GridRotor: directions must be distinct");
        seen[static_cast<int>(d)] = true;
        r.order[static_cast<size_t>(i)] = d;
        pos = comma + 1;
    }
    return r;
}

std::string GridRotor::to_string() const {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += idla::to_string(order[static_cast<size_t>(i)]);
    }
    return s;
}

int GridRotor::index_of(GridDir d) const {
    for (int i = 0; i < 4; ++i)
        if (order[static_cast<size_t>(i)] == d) return i;
    throw std::logic_error("GridRotor::index_of");
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

int random_rotor_position(std::uint64_t seed, int x, int y) {
    const std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) |
                              static_cast<std::uint32_t>(y);
    return static_cast<int>(splitmix64(seed ^ splitmix64(key)) & 3ULL);
}

namespace {

constexpr std::uint8_t kOccBit = 1;
constexpr std::uint8_t kSeenBit = 8;

std::uint64_t pack_heap(long long norm2, int x, int y) {
    return (static_cast<std::uint64_t>(norm2) << 32) |
           (static_cast<std::uint64_t>(static_cast<std::uint16_t>(x)) << 16) |
           static_cast<std::uint16_t>(y);
}

bool is_sum_of_two_squares(long long s) {
    for (long long a = 0; a * a * 2 <= s; ++a) {
        const long long b2 = s - a * a;
        const long long b = static_cast<long long>(std::sqrt(static_cast<double>(b2)));
        for (long long bb = std::max(0LL, b - 1); bb <= b + 1; ++bb)
            if (bb * bb == b2) return true;
    }
    return false;
}

}  // namespace

Aggregation::Aggregation(const GridRotor& rotor, InitMode init, std::uint64_t seed,
                         long long expected_particles)
    : rotor_(rotor), init_(init), seed_(seed) {
    const double r = std::sqrt(static_cast<double>(std::max(expected_particles, 1LL)) / 3.14159265);
    grow(static_cast<int>(r * 1.2) + 8);
}

int Aggregation::cell_index(int x, int y) const { return (y + half_) * side_ + (x + half_); }

std::uint8_t Aggregation::init_byte(int x, int y) const {
    const int pos = (init_ == InitMode::AllLeft) ? rotor_.index_of(GridDir::L)
                                                 : random_rotor_position(seed_, x, y);
    return static_cast<std::uint8_t>(pos << 1);
}

void Aggregation::grow(int needed_half) {
    if (needed_half <= half_) return;
    const int nh = std::max(needed_half, half_ * 3 / 2 + 8);
    if (nh > 30000) throw std::runtime_error("Aggregation: grid bound exceeded");
    const int ns = 2 * nh + 1;
    std::vector<std::uint8_t> nc(static_cast<size_t>(ns) * static_cast<size_t>(ns));
    if (init_ == InitMode::AllLeft) {
        std::memset(nc.data(), init_byte(0, 0), nc.size());
    } else {
        for (int y = -nh; y <= nh; ++y)
            for (int x = -nh; x <= nh; ++x)
                nc[static_cast<size_t>((y + nh) * ns + (x + nh))] = init_byte(x, y);
    }
    if (!cells_.empty()) {
        for (int y = -half_; y <= half_; ++y)
            for (int x = -half_; x <= half_; ++x)
                nc[static_cast<size_t>((y + nh) * ns + (x + nh))] =
                    cells_[static_cast<size_t>(cell_index(x, y))];
    }
    cells_ = std::move(nc);
    half_ = nh;
    side_ = ns;
}

void Aggregation::push_neighbors(int x, int y) {
    static constexpr int dx[4] = {0, -1, 0, 1};
    static constexpr int dy[4] = {1, 0, -1, 0};
    for (int i = 0; i < 4; ++i) {
        const int nx = x + dx[i], ny = y + dy[i];
        std::uint8_t& c = cells_[static_cast<size_t>(cell_index(nx, ny))];
        if (c & (kOccBit | kSeenBit)) continue;
        c |= kSeenBit;
        heap_.push_back(pack_heap(static_cast<long long>(nx) * nx + static_cast<long long>(ny) * ny,
                                  nx, ny));
        std::push_heap(heap_.begin(), heap_.end(), std::greater<>());
    }
}

void Aggregation::insert_particle() {
    int x = 0, y = 0;
    // A rotor walk escapes any finite occupied region; the budget is a
    // safety net, not an expected stop.
    const long long budget = 64LL * side_ * side_ + 4096;
    long long used = 0;
    while (true) {
        std::uint8_t& c = cells_[static_cast<size_t>(cell_index(x, y))];
        if (!(c & kOccBit)) {
            c |= kOccBit;
            ++particles_;
            const long long n2 = static_cast<long long>(x) * x + static_cast<long long>(y) * y;
            max_occ_norm2_ = std::max(max_occ_norm2_, n2);
            bbox_[0] = std::min(bbox_[0], x);
            bbox_[1] = std::max(bbox_[1], x);
            bbox_[2] = std::min(bbox_[2], y);
            bbox_[3] = std::max(bbox_[3], y);
            if (std::max(std::abs(x), std::abs(y)) + 2 >= half_) grow(half_ + 2);
            push_neighbors(x, y);
            return;
        }
        const int pos = (c >> 1) & 3;
        const auto step = grid_step(rotor_.order[static_cast<size_t>(pos)]);
        c = static_cast<std::uint8_t>((c & ~0b110) | (((pos + 1) & 3) << 1));
        x += step[0];
        y += step[1];
        ++steps_;
        if (++used > budget) throw std::runtime_error("Aggregation: walk exceeded step budget");
        if (std::max(std::abs(x), std::abs(y)) + 2 >= half_) grow(half_ + 2);
    }
}

void Aggregation::insert_until(long long n) {
    while (particles_ < n) insert_particle();
}

long long Aggregation::min_unoccupied_norm2() {
    if (particles_ == 0) return 0;
    while (!heap_.empty()) {
        const std::uint64_t top = heap_.front();
        const int x = static_cast<std::int16_t>((top >> 16) & 0xFFFF);
        const int y = static_cast<std::int16_t>(top & 0xFFFF);
        if (!(cells_[static_cast<size_t>(cell_index(x, y))] & kOccBit))
            return static_cast<long long>(top >> 32);
        std::pop_heap(heap_.begin(), heap_.end(), std::greater<>());
        heap_.pop_back();
    }
    throw std::logic_error("Aggregation: candidate heap exhausted");
}

long long Aggregation::inscribed_norm2() {
    const long long m2 = min_unoccupied_norm2();
    if (m2 == cached_pred_of_) return cached_pred_;
    long long s = m2 - 1;
    while (s > 0 && !is_sum_of_two_squares(s)) --s;
    cached_pred_of_ = m2;
    cached_pred_ = std::max(s, 0LL);
    return cached_pred_;
}

double Aggregation::delta() {
    if (particles_ == 0) return 0.0;
    return std::sqrt(static_cast<double>(max_occ_norm2_)) -
           std::sqrt(static_cast<double>(inscribed_norm2()));
}

bool Aggregation::occupied(int x, int y) const {
    if (std::max(std::abs(x), std::abs(y)) > half_) return false;
    return cells_[static_cast<size_t>(cell_index(x, y))] & kOccBit;
}

GridDir Aggregation::rotor_dir(int x, int y) const {
    const std::uint8_t c = cells_[static_cast<size_t>(cell_index(x, y))];
    return rotor_.order[static_cast<size_t>((c >> 1) & 3)];
}

std::array<int, 4> Aggregation::bounding_box() const { return bbox_; }

std::vector<long long> default_sample_points(long long particles) {
    std::vector<long long> pts;
    for (long long n = 1; n <= particles; ++n) {
        if (n <= 100000 || n % 1000 == 0) pts.push_back(n);
    }
    if (pts.empty() || pts.back() != particles) pts.push_back(particles);
    return pts;
}

std::vector<DeltaSample> idla_run(long long particles, const GridRotor& rotor, InitMode init,
                                  std::uint64_t seed, const std::vector<long long>& sample_points,
                                  Aggregation* final_state) {
    Aggregation agg(rotor, init, seed, particles);
    std::vector<DeltaSample> out;
    out.reserve(sample_points.size());
    long long prev = 0;
    for (long long n : sample_points) {
        if (n < 1 || n > particles || n < prev)
            throw std::invalid_argument("sample points must be ascending and within 1..particles");
        prev = n;
        agg.insert_until(n);
        out.push_back({n, agg.circumscribed_norm2(), agg.inscribed_norm2(), agg.delta()});
    }
    agg.insert_until(particles);
    if (final_state) *final_state = std::move(agg);
    return out;
}

std::vector<std::uint8_t> render_ppm_bytes(const Aggregation& agg) {
    const auto bb = agg.bounding_box();
    const int w = bb[1] - bb[0] + 1;
    const int h = bb[3] - bb[2] + 1;
    std::string header = "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.reserve(out.size() + static_cast<size_t>(w) * static_cast<size_t>(h) * 3);
    static constexpr std::uint8_t colors[4][3] = {
        {255, 0, 0},    // U red
        {255, 255, 0},  // L yellow
        {0, 255, 0},    // D green
        {0, 0, 255},    // R blue
    };
    for (int y = bb[3]; y >= bb[2]; --y) {
        for (int x = bb[0]; x <= bb[1]; ++x) {
            if (agg.occupied(x, y)) {
                const auto& c = colors[static_cast<int>(agg.rotor_dir(x, y))];
                out.insert(out.end(), {c[0], c[1], c[2]});
            } else {
                out.insert(out.end(), {255, 255, 255});
            }
        }
    }
    return out;
}

void render_ppm(const Aggregation& agg, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write PPM file: " + path);
    const auto bytes = render_ppm_bytes(agg);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("PPM write failed: " + path);
}

EnsembleStats ensemble_stats(long long particles, const GridRotor& rotor,
                             const std::vector<std::uint64_t>& seeds, long long window_lo,
                             long long window_hi, int threads) {
    if (seeds.size() < 2) throw std::invalid_argument("ensemble_stats: need at least two seeds");
    const auto samples = default_sample_points(particles);
    std::vector<double> avgs(seeds.size()), maxs(seeds.size());
    std::atomic<size_t> next{0};
    auto worker = [&]() {
        for (size_t i; (i = next.fetch_add(1)) < seeds.size();) {
            auto trace = idla_run(particles, rotor, InitMode::Random, seeds[i], samples);
            double sum = 0, mx = 0;
            long long cnt = 0;
            for (const auto& s : trace) {
                if (s.n > window_lo && s.n <= window_hi) {
                    sum += s.delta;
                    ++cnt;
                }
                mx = std::max(mx, s.delta);
            }
            avgs[i] = cnt ? sum / static_cast<double>(cnt) : 0.0;
            maxs[i] = mx;
        }
    };
    std::vector<std::thread> pool;
    const int nt = std::max(1, std::min<int>(threads, static_cast<int>(seeds.size())));
    for (int i = 0; i < nt - 1; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    auto mean_sd = [](const std::vector<double>& v) {
        double m = 0;
        for (double x : v) m += x;
        m /= static_cast<double>(v.size());
        double s2 = 0;
        for (double x : v) s2 += (x - m) * (x - m);
        const double sd = v.size() > 1 ? std::sqrt(s2 / static_cast<double>(v.size() - 1)) : 0.0;
        return std::pair{m, sd};
    };
    EnsembleStats st;
    std::tie(st.mean_avg_delta, st.sd_avg_delta) = mean_sd(avgs);
    std::tie(st.mean_max_delta, st.sd_max_delta) = mean_sd(maxs);
    st.runs = static_cast<int>(seeds.size());
    return st;
}

void write_trace_csv(const std::vector<DeltaSample>& trace, std::ostream& os) {
    for (const auto& s : trace) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", s.delta);
        os << s.n << ";" << buf << "\n";
    }
}

}  // namespace propp::idla

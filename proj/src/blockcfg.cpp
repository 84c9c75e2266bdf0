#include "propp/blockcfg.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace propp {

std::vector<long long> BlockConfiguration::used_times() const {
    std::vector<long long> ts;
    ts.reserve(schedule.size());
    for (const auto& [t, dirs] : schedule) ts.push_back(t);
    return ts;
}

int BlockConfiguration::odd_chip_count() const {
    int n = 0;
    for (const auto& [t, dirs] : schedule) n += static_cast<int>(dirs.size());
    return n;
}

namespace {

Block rotation_from(const RotorSequence& seq, Dir start,
                    const std::array<Mono, 4>& mono_by_dir) {
    Block b;
    int i = seq.index_of(start);
    for (int j = 0; j < 4; ++j) {
        Dir d = seq.at(i + j);
        b.dirs[static_cast<size_t>(j)] = d;
        b.increasing[static_cast<size_t>(j)] =
            mono_by_dir[static_cast<size_t>(static_cast<int>(d))] == Mono::Increasing;
    }
    return b;
}

}  // namespace

Block block_of_phase(const ModeProfile& profile, long long lo, long long hi) {
    const RotorSequence& seq = profile.seq;
    std::array<Mono, 4> mono{};
    std::vector<Dir> incs;
    for (int d = 0; d < kDirCount; ++d) {
        mono[static_cast<size_t>(d)] =
            mono_in_phase(profile.dir_extrema[static_cast<size_t>(d)], lo, hi);
        if (mono[static_cast<size_t>(d)] == Mono::Flat)
            throw std::logic_error("block_of_phase: single-direction influence flat for x != 0");
        if (mono[static_cast<size_t>(d)] == Mono::Increasing) incs.push_back(static_cast<Dir>(d));
    }
    switch (incs.size()) {
        case 1:
            return rotation_from(seq, incs[0], mono);
        case 3: {
            Dir dec = Dir::NE;
            for (int d = 0; d < kDirCount; ++d)
                if (mono[static_cast<size_t>(d)] == Mono::Decreasing) dec = static_cast<Dir>(d);
            return rotation_from(seq, seq.next(dec), mono);
        }
        case 2: {
            const int i0 = seq.index_of(incs[0]);
            const int i1 = seq.index_of(incs[1]);
            if ((i0 + 1) % 4 == i1) return rotation_from(seq, incs[0], mono);
            if ((i1 + 1) % 4 == i0) return rotation_from(seq, incs[1], mono);
            // Alternating pattern; the pair monotonicity picks the rotation.
            bool saw_flat = false;
            for (Dir c : incs) {
                Mono pm = profile.pair_mono(seq.index_of(c), lo, hi);
                if (pm == Mono::Increasing) return rotation_from(seq, c, mono);
                if (pm == Mono::Flat) saw_flat = true;
            }
            if (saw_flat) {
                // Identically-zero pair sum: both rotations yield the same
                // contribution, so pick the one starting earliest in seq.
                Dir c = seq.index_of(incs[0]) < seq.index_of(incs[1]) ? incs[0] : incs[1];
                return rotation_from(seq, c, mono);
            }
            throw std::logic_error("block_of_phase: alternating phase without increasing pair");
        }
        default:
            throw std::logic_error("block_of_phase: impossible monotonicity pattern");
    }
}

BlockConfiguration block_configuration(Vertex x, const RotorSequence& seq) {
    BlockConfiguration cfg{.vertex = x,
                           .seq = seq,
                           .schedule = {},
                           .contribution = Rational(0),
                           .phases = {}};
    ModeProfile profile = extremal_times(x, seq);
    const auto& ex = profile.extremal_times;
    if (ex.empty()) return cfg;

    std::vector<std::pair<long long, long long>> bounds;
    bounds.emplace_back(0, ex.front());
    for (size_t i = 0; i + 1 < ex.size(); ++i) bounds.emplace_back(ex[i], ex[i + 1]);
    bounds.emplace_back(ex.back(), -1);

    for (auto [lo, hi] : bounds)
        cfg.phases.push_back({lo, hi, block_of_phase(profile, lo, hi < 0 ? -1 : hi)});

    for (size_t i = 0; i < ex.size(); ++i) {
        const Block& ending = cfg.phases[i].block;      // phase ending at ex[i]
        const Block& starting = cfg.phases[i + 1].block;  // phase starting at ex[i]
        const int li = seq.index_of(ending.dirs[3]);
        const int k = ((seq.index_of(starting.dirs[0]) - li - 1) % 4 + 4) % 4;
        if (k == 0) continue;
        std::vector<Dir> dirs;
        dirs.reserve(static_cast<size_t>(k));
        for (int j = 1; j <= k; ++j) dirs.push_back(seq.at(li + j));
        for (Dir d : dirs) cfg.contribution += inf_single(x, d, ex[i]);
        cfg.schedule.emplace_back(ex[i], std::move(dirs));
    }
    return cfg;
}

Rational maxcon(Vertex x, const RotorSequence& seq) {
    return block_configuration(x, seq).contribution;
}

Rational mincon(Vertex x, const RotorSequence& seq) {
    Vertex mirror = (seq.rotor_class() == RotorClass::YAlternating)
                        ? Vertex{x.x1, -x.x2}
                        : Vertex{-x.x1, x.x2};
    return -maxcon(mirror, seq);
}

Rational brute_force_maxcon(Vertex x, const RotorSequence& seq) {
    ModeProfile profile = extremal_times(x, seq);
    const auto& ex = profile.extremal_times;
    if (ex.empty()) return Rational(0);
    const size_t m = ex.size();

    // runsum[i][d0][k]: influence of k chips at time ex[i] starting at
    // rotor position d0, following seq.
    std::vector<std::array<std::array<Rational, 4>, 4>> runsum(m);
    for (size_t i = 0; i < m; ++i) {
        for (int d0 = 0; d0 < 4; ++d0) {
            Rational acc(0);
            runsum[i][static_cast<size_t>(d0)][0] = acc;
            for (int k = 1; k <= 3; ++k) {
                acc += inf_single(x, seq.at(d0 + k - 1), ex[i]);
                if (k < 4) runsum[i][static_cast<size_t>(d0)][static_cast<size_t>(k)] = acc;
            }
        }
    }

    Rational best(0);
    std::vector<int> ks(m, 0);
    for (int d0 = 0; d0 < 4; ++d0) {
        std::fill(ks.begin(), ks.end(), 0);
        while (true) {
            Rational tot(0);
            int c = d0;
            for (size_t i = 0; i < m; ++i) {
                tot += runsum[i][static_cast<size_t>(c % 4)][static_cast<size_t>(ks[i])];
                c += ks[i];
            }
            if (tot > best) best = tot;
            size_t pos = 0;
            while (pos < m && ks[pos] == 3) ks[pos++] = 0;
            if (pos == m) break;
            ++ks[pos];
        }
    }
    return best;
}

namespace {

// Abstract model of the remark's enumeration: functions 0..3 are the four
// single-direction influences (in rotor order), 4 and 5 the pairs (R1,R2)
// and (R2,R3). The other two consecutive pairs are their negations.
struct AbstractCase {
    // direction of each function per phase: +1 increasing, -1 decreasing
    std::vector<std::array<int, 6>> dirs;
};

constexpr int kConsec[4][3] = {
    // a, b, pair function index with sign (+: as stored, -: negated)
    {0, 1, +4},
    {1, 2, +5},
    {2, 3, -4},
    {3, 0, -5},
};

bool properties_hold(const AbstractCase& cs) {
    for (const auto& row : cs.dirs) {
        bool any_inc = false, any_dec = false;
        for (int f = 0; f < 4; ++f) {
            if (row[static_cast<size_t>(f)] > 0) any_inc = true;
            else any_dec = true;
        }
        if (!any_inc || !any_dec) return false;
        for (const auto& con : kConsec) {
            const int pa = row[static_cast<size_t>(con[0])];
            const int pb = row[static_cast<size_t>(con[1])];
            if (pa != pb) continue;
            const int pf = con[2] > 0 ? con[2] : -con[2];
            const int sign = con[2] > 0 ? 1 : -1;
            if (sign * row[static_cast<size_t>(pf)] != pa) return false;
        }
    }
    return true;
}

// -1 when no valid block exists in some phase.
int used_times_of_case(const AbstractCase& cs) {
    const size_t nphases = cs.dirs.size();
    std::vector<int> starts(nphases);
    for (size_t p = 0; p < nphases; ++p) {
        const auto& row = cs.dirs[p];
        std::vector<int> incs;
        for (int f = 0; f < 4; ++f)
            if (row[static_cast<size_t>(f)] > 0) incs.push_back(f);
        int st = -1;
        if (incs.size() == 1) {
            st = incs[0];
        } else if (incs.size() == 3) {
            for (int f = 0; f < 4; ++f)
                if (row[static_cast<size_t>(f)] < 0) st = (f + 1) % 4;
        } else if (incs.size() == 2) {
            if ((incs[0] + 1) % 4 == incs[1]) st = incs[0];
            else if ((incs[1] + 1) % 4 == incs[0]) st = incs[1];
            else {
                for (int c : incs) {
                    for (const auto& con : kConsec) {
                        if (con[0] != c) continue;
                        const int pf = con[2] > 0 ? con[2] : -con[2];
                        const int sign = con[2] > 0 ? 1 : -1;
                        if (sign * row[static_cast<size_t>(pf)] > 0) st = c;
                    }
                }
            }
        }
        if (st < 0) return -1;
        starts[p] = st;
    }
    int used = 0;
    for (size_t p = 0; p + 1 < nphases; ++p) {
        const int last = (starts[p] + 3) % 4;
        const int k = ((starts[p + 1] - last - 1) % 4 + 4) % 4;
        if (k != 0) ++used;
    }
    return used;
}

void enumerate_half(bool bimodal, long long& total, long long& valid, int& max_used) {
    // Extremum owners: function 0 twice in the bimodal case.
    std::vector<int> owners;
    for (int f = 0; f < 6; ++f) {
        owners.push_back(f);
        if (bimodal && f == 0) owners.push_back(f);
    }
    const size_t ne = owners.size();
    std::vector<int> perm(ne);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        // perm[i] = time slot of extremum i; the bimodal pair stays ordered.
        if (bimodal && perm[0] > perm[1]) continue;
        std::array<std::vector<int>, 6> positions;
        for (size_t i = 0; i < ne; ++i)
            positions[static_cast<size_t>(owners[i])].push_back(perm[i]);
        for (auto& v : positions) std::sort(v.begin(), v.end());
        for (int init = 0; init < 64; ++init) {
            ++total;
            AbstractCase cs;
            cs.dirs.resize(ne + 1);
            for (size_t p = 0; p <= ne; ++p) {
                for (int f = 0; f < 6; ++f) {
                    int flips = 0;
                    for (int e : positions[static_cast<size_t>(f)])
                        if (e < static_cast<int>(p)) ++flips;
                    int d = ((init >> f) & 1) ? 1 : -1;
                    cs.dirs[p][static_cast<size_t>(f)] = (flips % 2 == 0) ? d : -d;
                }
            }
            if (!properties_hold(cs)) continue;
            const int used = used_times_of_case(cs);
            if (used < 0) continue;
            ++valid;
            max_used = std::max(max_used, used);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

}  // namespace

AbstractModeReport enumerate_abstract_modes() {
    AbstractModeReport r;
    enumerate_half(false, r.unimodal_total, r.unimodal_valid, r.unimodal_max_used);
    enumerate_half(true, r.bimodal_total, r.bimodal_valid, r.bimodal_max_used);
    return r;
}

}  // namespace propp

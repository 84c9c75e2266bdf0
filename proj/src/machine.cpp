#include "propp/machine.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace propp {

Dir ProppState::rotor_at(Vertex v) const {
    auto it = rotors.find(v);
    return it == rotors.end() ? default_rotor : it->second;
}

void check_parity(const ProppState& s) {
    for (const auto& [v, k] : s.chips) {
        if (!in_lattice(v)) throw std::invalid_argument("chip off the lattice");
        if (k < 0) throw std::invalid_argument("negative chip count");
        if (k > 0 && !parity_match(v, s.time))
            throw std::invalid_argument("chips must sit on vertices ~ time");
    }
}

ProppState propp_step(const ProppState& s) {
    ProppState out = s;
    out.chips.clear();
    for (const auto& [v, k] : s.chips) {
        if (k == 0) continue;
        const Dir r = s.rotor_at(v);
        const int ri = s.seq.index_of(r);
        const long long q = k / 4;
        const int rem = static_cast<int>(k % 4);
        for (int j = 0; j < 4; ++j) {
            const long long c = q + (j < rem ? 1 : 0);
            if (c == 0) continue;
            const Vertex w = v + s.seq.at(ri + j);
            out.chips[w] += c;
        }
        out.rotors[v] = s.seq.next(r, static_cast<unsigned long long>(k % 4));
    }
    out.time = s.time + 1;
    return out;
}

LinearState linear_step(const LinearState& s) {
    LinearState out;
    out.time = s.time + 1;
    static const Rational quarter(1, 4);
    for (const auto& [v, k] : s.chips) {
        if (sgn(k) == 0) continue;
        const Rational share = k * quarter;
        for (int d = 0; d < kDirCount; ++d) out.chips[v + static_cast<Dir>(d)] += share;
    }
    return out;
}

LinearState to_linear(const ProppState& s) {
    LinearState out;
    out.time = s.time;
    for (const auto& [v, k] : s.chips)
        if (k != 0) out.chips[v] = Rational(static_cast<long>(k));
    return out;
}

ProppTrace run_with_trace(const ProppState& initial, long long steps) {
    ProppTrace tr{.initial = initial, .counts = {}};
    ProppState cur = initial;
    tr.counts.push_back(cur.chips);
    for (long long t = 0; t < steps; ++t) {
        cur = propp_step(cur);
        tr.counts.push_back(cur.chips);
    }
    return tr;
}

Rational discrepancy(const ProppState& initial, long long horizon) {
    check_parity(initial);
    ProppState p = initial;
    for (long long t = 0; t < horizon; ++t) p = propp_step(p);
    auto it = p.chips.find(Vertex{0, 0});
    const long long f0 = it == p.chips.end() ? 0 : it->second;

    LinearState l = to_linear(initial);
    for (long long t = 0; t < horizon; ++t) l = linear_step(l);
    auto jt = l.chips.find(Vertex{0, 0});
    const Rational e0 = jt == l.chips.end() ? Rational(0) : jt->second;
    return Rational(static_cast<long>(f0)) - e0;
}

std::map<Vertex, Rational> contribution_from_trace(const ProppTrace& trace, long long horizon) {
    if (static_cast<long long>(trace.counts.size()) <= horizon - 1)
        throw std::invalid_argument("trace shorter than horizon");
    const RotorSequence& seq = trace.initial.seq;
    std::map<Vertex, Rational> cons;
    std::map<Vertex, long long> chip_index;  // chips seen so far per vertex
    for (long long u = 0; u < horizon; ++u) {
        for (const auto& [v, k] : trace.counts[static_cast<size_t>(u)]) {
            if (k == 0) continue;
            long long& i = chip_index[v];
            const int r0 = seq.index_of(trace.initial.rotor_at(v));
            // Full groups of four consecutive directions cancel exactly
            // (sum over DIR of inf_single is zero), so only k mod 4 terms count.
            const int rem = static_cast<int>(k % 4);
            Rational& acc = cons[v];
            for (int j = 0; j < rem; ++j) {
                const Dir d = seq.at(static_cast<int>((r0 + i + j) % 4));
                acc += inf_single(v, d, horizon - u);
            }
            i += k;
        }
    }
    return cons;
}

void OddChipSchedule::validate(long long horizon) const {
    for (const auto& [key, res] : entries) {
        const auto& [v, t] = key;
        if (!in_lattice(v)) throw std::invalid_argument("schedule vertex off the lattice");
        if (t < 0 || t > horizon) throw std::invalid_argument("schedule time outside horizon");
        if (res < 0 || res > 3) throw std::invalid_argument("schedule residue outside 0..3");
        if (res != 0 && !parity_match(v, t))
            throw std::invalid_argument("nonzero residue requires x ~ t");
    }
}

namespace {

long long chips_at(const ProppState& initial, Vertex x, long long t) {
    ProppState cur = initial;
    for (long long u = 0; u < t; ++u) cur = propp_step(cur);
    auto it = cur.chips.find(x);
    return it == cur.chips.end() ? 0 : it->second;
}

}  // namespace

ProppState mod4_forcing_construct(const OddChipSchedule& schedule, long long horizon,
                                  long long window, const ProppState& rotor_template) {
    if (horizon < 0 || horizon > 6)
        throw std::invalid_argument("mod4_forcing_construct: horizon must be in 0..6 (pile sizes reach 3*4^T)");
    if (window < 0) throw std::invalid_argument("mod4_forcing_construct: negative window");
    schedule.validate(horizon);

    auto residue = [&](Vertex x, long long t) -> int {
        auto it = schedule.entries.find({x, t});
        return it == schedule.entries.end() ? 0 : it->second;
    };

    ProppState state = rotor_template;
    state.chips.clear();
    state.time = 0;
    // Base: f(x,0) = pi(x,0).
    for (const auto& [key, res] : schedule.entries)
        if (key.second == 0 && res != 0) state.chips[key.first] = res;

    long long pile = 4;
    for (long long horizon_step = 1; horizon_step <= horizon; ++horizon_step, pile *= 4) {
        // Fix residues at time horizon_step level by level in |x|_1; the
        // correcting pile for x goes to y = x + (s1 T', s2 T') in x's
        // quadrant, at |y|_1 = 2 T' + |x|_1, and cannot disturb any vertex
        // of the same or a smaller level at this time.
        for (long long level = 0; level <= window; ++level) {
            for (long long x1 = -level; x1 <= level; ++x1) {
                const long long r = level - std::llabs(x1);
                for (const long long x2 : (r == 0) ? std::vector<long long>{0}
                                                   : std::vector<long long>{-r, r}) {
                    const Vertex x{x1, x2};
                    if (!parity_match(x, horizon_step)) continue;
                    const int want = residue(x, horizon_step);
                    const long long have = chips_at(state, x, horizon_step);
                    const int d = static_cast<int>((((want - have) % 4) + 4) % 4);
                    if (d == 0) continue;
                    const long long s1 = x1 >= 0 ? 1 : -1;
                    const long long s2 = x2 >= 0 ? 1 : -1;
                    const Vertex y{x1 + s1 * horizon_step, x2 + s2 * horizon_step};
                    state.chips[y] += d * pile;
                }
            }
        }
    }
    check_parity(state);
    return state;
}

std::string state_to_json(const ProppState& s) {
    nlohmann::json j;
    j["time"] = s.time;
    j["rotor_sequence"] = s.seq.to_string();
    j["default_rotor"] = to_string(s.default_rotor);
    auto& chips = j["chips"] = nlohmann::json::array();
    for (const auto& [v, k] : s.chips)
        if (k != 0) chips.push_back({v.x1, v.x2, k});
    auto& rotors = j["rotors"] = nlohmann::json::array();
    for (const auto& [v, d] : s.rotors) rotors.push_back({v.x1, v.x2, to_string(d)});
    return j.dump(2);
}

ProppState state_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ProppState s;
    if (j.contains("rotor_sequence"))
        s.seq = RotorSequence::parse(j["rotor_sequence"].get<std::string>());
    if (j.contains("default_rotor"))
        s.default_rotor = parse_dir(j["default_rotor"].get<std::string>());
    s.time = j.value("time", 0LL);
    for (const auto& row : j.value("chips", nlohmann::json::array())) {
        const Vertex v{row.at(0).get<long long>(), row.at(1).get<long long>()};
        const long long k = row.at(2).get<long long>();
        if (!in_lattice(v)) throw std::invalid_argument("state chips: vertex off the lattice");
        if (k < 0) throw std::invalid_argument("state chips: negative count");
        if (k > 0) s.chips[v] += k;
    }
    for (const auto& row : j.value("rotors", nlohmann::json::array())) {
        const Vertex v{row.at(0).get<long long>(), row.at(1).get<long long>()};
        if (!in_lattice(v)) throw std::invalid_argument("state rotors: vertex off the lattice");
        s.rotors[v] = parse_dir(row.at(2).get<std::string>());
    }
    return s;
}

ProppState load_state(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open state file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return state_from_json(ss.str());
}

void save_state(const ProppState& s, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write state file: " + path);
    out << state_to_json(s) << "\n";
}

}  // namespace propp

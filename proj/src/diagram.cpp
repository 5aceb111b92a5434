#include "orbivol/diagram.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace orbivol {

namespace {

// Roles a crossing assigns to its four slots, in slot order (a, b, c, d):
// OverOut, UnderIn, OverIn, UnderOut for positive crossings;
// OverOut, UnderOut, OverIn, UnderIn for negative ones.
enum class Role { OO, UI, OI, UO };

constexpr std::array<Role, 4> kRolesPos = {Role::OO, Role::UI, Role::OI, Role::UO};
constexpr std::array<Role, 4> kRolesNeg = {Role::OO, Role::UO, Role::OI, Role::UI};

const std::array<Role, 4>& roles_of(Handedness h) {
    return h == Handedness::positive ? kRolesPos : kRolesNeg;
}

void check_incidence(const std::vector<Crossing>& crossings, int num_segments) {
    if (num_segments != 2 * int(crossings.size()))
        throw structural_error("diagram: segment count must be twice the crossing count");
    std::vector<int> count(size_t(num_segments), 0);
    for (const auto& c : crossings)
        for (int s : c.slots) {
            if (s < 0 || s >= num_segments)
                throw structural_error("diagram: slot id out of range");
            ++count[size_t(s)];
        }
    for (int k = 0; k < num_segments; ++k)
        if (count[size_t(k)] != 2)
            throw structural_error("diagram: segment " + std::to_string(k + 1) +
                                   " does not appear exactly twice");
}

// Successor of each segment along the oriented strand (UnderIn -> UnderOut
// and OverIn -> OverOut at every crossing).
std::vector<int> successor_map(const std::vector<Crossing>& crossings,
                               int num_segments) {
    std::vector<int> succ(size_t(num_segments), -1);
    auto set_succ = [&](int from, int to) {
        if (succ[size_t(from)] != -1)
            throw structural_error("diagram: segment " + std::to_string(from + 1) +
                                   " has two successors");
        succ[size_t(from)] = to;
    };
    for (const auto& c : crossings) {
        auto [a, b, cc, d] = c.slots;
        if (c.handed == Handedness::positive) {
            set_succ(b, d);   // under-in -> under-out
            set_succ(cc, a);  // over-in -> over-out
        } else {
            set_succ(d, b);
            set_succ(cc, a);
        }
    }
    for (int k = 0; k < num_segments; ++k)
        if (succ[size_t(k)] == -1)
            throw structural_error("diagram: segment " + std::to_string(k + 1) +
                                   " has no successor");
    return succ;
}

void check_single_component(const std::vector<Crossing>& crossings,
                            int num_segments) {
    auto succ = successor_map(crossings, num_segments);
    int k = 0;
    for (int i = 0; i < num_segments; ++i) {
        k = succ[size_t(k)];
        if (k == 0 && i + 1 < num_segments)
            throw structural_error("diagram: strand closes early (multiple components)");
    }
    if (k != 0) throw structural_error("diagram: strand does not close");
}

}  // namespace

std::vector<SideType> classify_sides(const std::vector<Crossing>& crossings,
                                     int num_segments) {
    check_incidence(crossings, num_segments);
    std::vector<std::vector<Role>> occ(static_cast<size_t>(num_segments));
    for (const auto& c : crossings) {
        const auto& roles = roles_of(c.handed);
        for (int pos = 0; pos < 4; ++pos)
            occ[size_t(c.slots[size_t(pos)])].push_back(roles[size_t(pos)]);
    }
    std::vector<SideType> types(static_cast<size_t>(num_segments));
    for (int k = 0; k < num_segments; ++k) {
        auto rr = occ[size_t(k)];
        std::sort(rr.begin(), rr.end());
        auto has = [&](Role x) { return std::find(rr.begin(), rr.end(), x) != rr.end(); };
        if (has(Role::OO) && has(Role::UI))
            types[size_t(k)] = SideType::TypeI;
        else if (has(Role::UO) && has(Role::OI))
            types[size_t(k)] = SideType::TypeII;
        else if ((has(Role::OO) && has(Role::OI)) || (has(Role::UO) && has(Role::UI)))
            throw non_alternating_error("diagram: segment " + std::to_string(k + 1) +
                                        " passes the same way at both ends");
        else
            throw structural_error("diagram: unclassifiable side " + std::to_string(k + 1));
    }
    return types;
}

KnotDiagram parse_pd(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<std::array<int, 4>> raw;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;  // blank line
        if (head.size() >= 1 && head[0] == '#') continue;
        if (head != "X" && head != "x")
            throw parse_error("parse error at line " + std::to_string(lineno) +
                              ": expected 'X a b c d'", lineno);
        std::array<int, 4> t{};
        for (int i = 0; i < 4; ++i)
            if (!(ls >> t[size_t(i)]))
                throw parse_error("parse error at line " + std::to_string(lineno) +
                                  ": expected four arc labels", lineno);
        std::string extra;
        if (ls >> extra)
            throw parse_error("parse error at line " + std::to_string(lineno) +
                              ": trailing tokens", lineno);
        raw.push_back(t);
    }
    if (raw.empty()) throw parse_error("parse error: no crossings", 0);

    int nseg = 2 * int(raw.size());
    std::vector<int> count(size_t(nseg) + 1, 0);
    for (const auto& t : raw)
        for (int x : t) {
            if (x < 1 || x > nseg)
                throw structural_error("pd: arc labels must lie in 1..2N");
            ++count[size_t(x)];
        }
    for (int x = 1; x <= nseg; ++x)
        if (count[size_t(x)] != 2)
            throw structural_error("pd: arc label " + std::to_string(x) +
                                   " must appear exactly twice");

    auto nxt = [&](int x) { return x % nseg + 1; };
    KnotDiagram d;
    d.num_segments = nseg;
    for (const auto& [s1, s2, s3, s4] : raw) {
        if (nxt(s1) != s3)
            throw structural_error("pd: under-strand " + std::to_string(s1) + "->" +
                                   std::to_string(s3) + " not consecutive");
        Crossing c{};
        if (nxt(s4) == s2) {         // over-strand runs s4 -> s2
            c.slots = {s2 - 1, s1 - 1, s4 - 1, s3 - 1};
            c.handed = Handedness::positive;
        } else if (nxt(s2) == s4) {  // over-strand runs s2 -> s4
            c.slots = {s4 - 1, s3 - 1, s2 - 1, s1 - 1};
            c.handed = Handedness::negative;
        } else {
            throw structural_error("pd: over-strand arcs " + std::to_string(s2) + "," +
                                   std::to_string(s4) + " not consecutive");
        }
        d.crossings.push_back(c);
    }
    check_single_component(d.crossings, d.num_segments);
    d.side_types = classify_sides(d.crossings, d.num_segments);
    return d;
}

KnotDiagram generate_j_diagram(int n, int m) {
    if (n < 1 || m < 1)
        throw domain_error("generate_j_diagram: twist counts must be positive");
    int np = 2 * n, mp = 2 * m;
    int Nv = 2 * np + 2;
    auto vid = [](int j) { return j - 1; };
    auto hid = [&](int j) {
        if (j == 1) return vid(2 * np + 1);
        if (j == 2) return vid(1);
        if (j == 2 * mp + 1) return vid(2 * np + 2);
        if (j == 2 * mp + 2) return vid(2);
        return Nv + (j - 3);
    };
    KnotDiagram d;
    d.num_segments = Nv + 2 * mp - 2;
    for (int j = 1; j <= np; ++j) {
        Crossing c{};
        c.handed = Handedness::positive;
        if (j % 2 == 0)
            c.slots = {vid(2 * j - 1), vid(2 * j), vid(2 * j + 2), vid(2 * j + 1)};
        else
            c.slots = {vid(2 * j + 2), vid(2 * j + 1), vid(2 * j - 1), vid(2 * j)};
        d.crossings.push_back(c);
    }
    for (int j = 1; j <= mp; ++j) {
        Crossing c{};
        c.handed = Handedness::negative;
        if (j % 2 == 1)
            c.slots = {hid(2 * j + 2), hid(2 * j), hid(2 * j - 1), hid(2 * j + 1)};
        else
            c.slots = {hid(2 * j - 1), hid(2 * j + 1), hid(2 * j + 2), hid(2 * j)};
        d.crossings.push_back(c);
    }
    d.side_types = classify_sides(d.crossings, d.num_segments);
    return d;
}

std::string emit(const KnotDiagram& d, int start) {
    auto succ = successor_map(d.crossings, d.num_segments);
    std::vector<int> renum(size_t(d.num_segments), 0);
    int k = start;
    for (int i = 0; i < d.num_segments; ++i) {
        if (renum[size_t(k)] != 0)
            throw structural_error("emit: strand closes early (multiple components)");
        renum[size_t(k)] = i + 1;
        k = succ[size_t(k)];
    }
    if (k != start) throw structural_error("emit: strand does not close");

    std::vector<std::array<int, 4>> tuples;
    for (const auto& c : d.crossings) {
        auto [a, b, cc, dd_] = c.slots;
        if (c.handed == Handedness::positive)
            tuples.push_back({renum[size_t(b)], renum[size_t(a)], renum[size_t(dd_)],
                              renum[size_t(cc)]});
        else
            tuples.push_back({renum[size_t(dd_)], renum[size_t(cc)], renum[size_t(b)],
                              renum[size_t(a)]});
    }
    std::sort(tuples.begin(), tuples.end());
    std::ostringstream out;
    for (const auto& t : tuples)
        out << "X " << t[0] << ' ' << t[1] << ' ' << t[2] << ' ' << t[3] << '\n';
    return out.str();
}

bool diagram_isomorphic(const KnotDiagram& a, const KnotDiagram& b) {
    if (a.num_segments != b.num_segments || a.crossings.size() != b.crossings.size())
        return false;
    std::string base = emit(a, 0);
    for (int start = 0; start < b.num_segments; ++start)
        if (emit(b, start) == base) return true;
    return false;
}

}  // namespace orbivol

#pragma once
#include <array>
#include <string>
#include <vector>

#include "orbivol/errors.hpp"

namespace orbivol {

enum class Handedness { positive, negative };
enum class SideType { TypeI, TypeII };

// One crossing with its four segment slots in the potential-function
// variable positions (z_a, z_b, z_c, z_d).  Segment ids are 0-based.
struct Crossing {
    std::array<int, 4> slots;
    Handedness handed;
};

struct KnotDiagram {
    std::vector<Crossing> crossings;
    int num_segments = 0;
    std::vector<SideType> side_types;  // indexed by segment id
};

// Classify every segment as Type I or Type II from the local roles its two
// crossing endpoints assign to it.  Throws non_alternating_error if a
// segment passes over (or under) at both ends, structural_error for any
// other inconsistent configuration.
std::vector<SideType> classify_sides(const std::vector<Crossing>& crossings,
                                     int num_segments);

// Parse planar-diagram text: one crossing per line, "X a b c d" with
// 1-based arc labels listed counterclockwise starting at the incoming
// under-strand.  Validates label multiplicity, strand consecutiveness,
// single-component closure, and alternation.
KnotDiagram parse_pd(const std::string& text);

// The standard double-twist diagram of J(2n,-2m): 2n vertical positive
// crossings and 2m horizontal negative crossings, with segment indexing
// aligned to the closed-form solution layout (vertical strip first).
KnotDiagram generate_j_diagram(int n, int m);

// Canonical debug serialization in the same PD text format, renumbering
// segments along the strand starting at `start`.
std::string emit(const KnotDiagram& d, int start = 0);

// True if the two diagrams are related by a relabeling that preserves the
// strand structure (checked via canonical serializations over all starts).
bool diagram_isomorphic(const KnotDiagram& a, const KnotDiagram& b);

}  // namespace orbivol

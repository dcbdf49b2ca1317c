#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pblocks/graph.hpp"
#include "pblocks/symmetry.hpp"

namespace pblocks {

// Cyclic order of neighbours around each vertex (by host index).
struct RotationSystem {
    Graph host;
    std::vector<std::vector<std::size_t>> rotation;
};

// First violated rotation-system invariant, if any.
std::optional<std::string> validate(const RotationSystem &r);

using FacialWalk = std::vector<VertexId>;

// Closed walks traced by the sharp-left rule: arriving at v from u, leave
// towards the successor of u in the rotation at v. Every directed edge lies
// on exactly one walk. An edgeless one-vertex graph has one trivial walk.
std::vector<FacialWalk> facial_walks(const RotationSystem &r);

// Representative of a cyclic sequence under rotation and reversal.
FacialWalk canonical_walk(const FacialWalk &w);

// Euler genus of the surface the rotation system describes (connected host):
// V - E + F = 2 - 2g.
int orientable_genus(const RotationSystem &r);

struct PlanarityResult {
    bool planar = false;
    std::optional<RotationSystem> embedding;
    std::vector<FacialWalk> faces;
    Graph witness; // subdivision of K5 or K3,3 inside the host when not planar
};

// Boyer-Myrvold test. NotConnected for disconnected input.
PlanarityResult planarity_test(const Graph &g);

enum class KuratowskiType { None, K5, K33 };

// Whether h is a subdivision of K5 or K3,3: branch vertices of degree 4 or 3,
// every other vertex of degree 2, and the graph obtained by suppressing them
// is simple and equal to K5 or K3,3.
KuratowskiType kuratowski_type(const Graph &h);
inline bool is_kuratowski_subdivision(const Graph &h) { return kuratowski_type(h) != KuratowskiType::None; }

// True iff sigma maps every facial walk of r to a facial walk of r.
// NotAnAutomorphism when sigma is not an automorphism of the host.
bool facial_preservation_check(const RotationSystem &r, const Permutation &sigma);

struct FaceUniquenessReport {
    std::size_t relabelings = 0; // embeddings computed
    bool exhaustive = false;     // every relabeling tried
    std::vector<std::size_t> face_sizes; // sorted, from the identity labelling
    bool sizes_agree = true;
    bool faces_agree = true; // same facial cycles after mapping labels back
    bool unique() const { return sizes_agree && faces_agree; }
};

// Recomputes the embedding under vertex relabelings (all of them when n! <=
// cap, otherwise `cap` seeded random ones) and compares the faces.
// PreconditionViolated unless g is 3-connected, planar and has at most 10 vertices.
FaceUniquenessReport face_multiset_uniqueness_check(const Graph &g, std::size_t cap = 40320, std::uint64_t seed = 1);

} // namespace pblocks

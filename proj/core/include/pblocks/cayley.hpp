#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pblocks/graph.hpp"
#include "pblocks/symmetry.hpp"

namespace pblocks {

// Letters are +(i+1) for generator i and -(i+1) for its inverse.
using Word = std::vector<int>;

Word free_reduce(Word w);
Word inverse_word(const Word &w);

struct SurfaceShape {
    std::size_t p = 0;          // handle pairs a_i, b_i
    std::vector<int> exponents; // m_j for each e_j
    std::size_t s = 0;          // boundary generators f_k
};

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relators; // freely reduced, cyclically meaningful
    std::optional<SurfaceShape> shape;

    std::size_t generator_index(std::string_view name) const; // ParseError when unknown
    std::string format(const Word &w) const;
    std::string describe() const;
};

// Generators a1 b1 ... ap bp e1 ... er f1 ... fs with relators e_j^{m_j},
// the extras, and [a1,b1]...[ap,bp] e1...er f1...fs. Extras are words over
// those names. BadExponent when some m_j < 2.
Presentation surface_presentation(std::size_t p, const std::vector<int> &exponents, std::size_t s,
                                  const std::vector<std::string> &extras = {});

// Text form, either
//     gens: a b; rels: a^2, b^3, (a*b)^3
// or
//     surface(p, [m1, m2, ...], s)  [; rels: extra, ...]
// Words use names, '*' or blanks between factors, (w)^k, x^-1 and [x,y]
// (= x^-1 y^-1 x y); "u = v" means u v^-1. '#' starts a comment.
// ParseError on malformed text, BadExponent on surface exponents below 2.
Presentation parse_presentation(std::string_view text);

struct GroupTable {
    std::size_t order = 0;
    std::size_t identity = 0;
    std::vector<std::vector<std::size_t>> mult; // mult[g][x] = g * generator x
};

// Todd-Coxeter enumeration of the cosets of the trivial subgroup (HLT with
// coincidence processing). Overflow when the coset workspace runs out or the
// order exceeds `limit`; Overflow does not prove the group infinite.
GroupTable coset_enumerate(const Presentation &pr, std::size_t limit);

// First violated table invariant: generators act as permutations and every
// relator traces to the identity from every element.
std::optional<std::string> verify_table(const GroupTable &t, const Presentation &pr);

// Right Cayley graph: edge {g, g*x} for every generator x. An involution
// contributes one edge, and a generator that is trivial in the group none.
Graph cayley_graph(const GroupTable &t, const Presentation &pr);

// Left multiplications g -> h*g as permutations of the elements, one per h
// (index h). These are automorphisms of the right Cayley graph.
std::vector<Permutation> regular_action(const GroupTable &t);

struct RegularActionReport {
    bool automorphisms = true;
    bool free = true;
    bool transitive = true;
    bool ok() const { return automorphisms && free && transitive; }
};

RegularActionReport check_regular_action(const GroupTable &t, const Graph &cayley);

} // namespace pblocks

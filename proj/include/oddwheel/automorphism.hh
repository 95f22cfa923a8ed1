#ifndef ODDWHEEL_AUTOMORPHISM_HH
#define ODDWHEEL_AUTOMORPHISM_HH

#include <oddwheel/graph.hh>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace oddwheel
{
    using Permutation = std::vector<int>;

    /// Every element of the atom's standard symmetry group on internal
    /// indices: dihedral on the rim for wheels and cycles (hub fixed), the
    /// full symmetric group for cliques, reversal for paths.
    auto atom_automorphisms(const AtomGraph & atom) -> std::vector<Permutation>;

    /// Generators of the product symmetry group: each atom generator acting
    /// on one coordinate, plus transpositions of equal factors.
    auto product_generators(const Graph & g) -> std::vector<Permutation>;

    auto is_automorphism(const Graph & g, std::span<const int> p) -> bool;

    /// Element-list representation, row-major: element i maps v to
    /// images[i * degree + v].
    struct PermutationGroup
    {
        int degree = 0;
        std::size_t order = 0;
        std::vector<std::uint16_t> images;

        auto image(std::size_t element, int v) const -> int
        {
            return images[element * static_cast<std::size_t>(degree) + v];
        }
    };

    /// All elements of the product symmetry group of a product graph, or
    /// nullopt when order * degree would exceed max_entries or g is not a
    /// product.
    auto product_group(const Graph & g, std::size_t max_entries) -> std::optional<PermutationGroup>;

    /// Orbit index per vertex under the group generated by gens; orbits are
    /// numbered by their smallest vertex.
    auto orbits_of(int n, const std::vector<Permutation> & gens) -> std::vector<int>;
}

#endif

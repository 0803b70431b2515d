#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "pasting/maps.hpp"
#include "pasting/ogposet.hpp"

namespace pasting {

// Binary tree certifying that `set` is a molecule: a leaf is an atom,
// an inner node is left #k right.
struct Witness {
    ElementSet set;
    int k = -1;
    std::shared_ptr<const Witness> left;
    std::shared_ptr<const Witness> right;
    bool is_leaf() const { return !left; }
};
using WitnessPtr = std::shared_ptr<const Witness>;

struct Decomposition {
    int k;
    ElementSet left;
    ElementSet right;
};

// Molecule recognition over a fixed host, memoized across queries.
class Recognizer {
public:
    explicit Recognizer(Ogposet host, int partition_cap = 14) : P_(std::move(host)), cap_(partition_cap) {}

    const Ogposet& host() const { return P_; }
    WitnessPtr molecule(const ElementSet& U);
    // Every decomposition U = U1 #k U2 into molecules.
    std::vector<Decomposition> decompositions(const ElementSet& U);
    bool submolecule(const ElementSet& V, const ElementSet& U);

private:
    template <class Visit>
    bool candidates(const ElementSet& U, bool all_partitions, Visit&& visit);

    Ogposet P_;
    int cap_;
    std::unordered_map<ElementSet, WitnessPtr, ElementSetHash> memo_;
    std::unordered_map<ElementSet, std::vector<Decomposition>, ElementSetHash> all_memo_;
    std::unordered_map<ElementSet, std::unordered_map<ElementSet, bool, ElementSetHash>, ElementSetHash> sub_memo_;
};

bool is_atom(const ClosedSubset& U);
WitnessPtr is_molecule(const ClosedSubset& U);
bool check_witness(const ClosedSubset& U, const Witness& w);
bool is_submolecule(const ClosedSubset& V, const ClosedSubset& U);

// Test for U ⊆ P a molecule: k-boundary intersections agree with the (k-1)-boundary.
bool spherical_equalities(const Ogposet& P, const ElementSet& U);
bool has_spherical_boundary(const ClosedSubset& U);
bool is_spherical_molecule(const Ogposet& P);

enum class Level { thin, directed, regular, molecule, spherical };

struct ComplexCheck {
    bool ok = true;
    int element = -1;
    std::string reason;
};
ComplexCheck check_complex(const Ogposet& P, Level level);

std::vector<int> layering(const ClosedSubset& U);

struct BinarySplit {
    ElementSet u1, u2;
    ElementSet u1_ext, u2_ext;  // U1 ∪ ∂⁻U and U2 ∪ ∂⁺U
};
// Throws Indeterminate when more than `limit` candidate cuts would be examined.
std::vector<BinarySplit> binary_splits(const ClosedSubset& U, long limit = 1L << 16);

struct MergerTree {
    ElementSet label;
    std::unique_ptr<MergerTree> left, right;
    int leaves() const { return left ? left->leaves() + right->leaves() : 1; }
};
std::unique_ptr<MergerTree> merger_tree(const ClosedSubset& U);

struct Pasting {
    Ogposet poset;
    OgpMap j1;
    OgpMap j2;
};
// U #k V for standalone molecules, glued along the unique iso of boundaries.
Pasting paste(const Ogposet& U, const Ogposet& V, int k);

// Unique iso between the whole boundaries ∂U and ∂V of spherical molecules of equal
// dimension, assembled from the isos of the two sides. Maps elements of U to V.
std::optional<std::vector<int>> boundary_iso(const Ogposet& U, const ElementSet& bu, const Ogposet& V,
                                             const ElementSet& bv);

}  // namespace pasting

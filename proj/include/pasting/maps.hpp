#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pasting/ogposet.hpp"

namespace pasting {

// A map of oriented graded posets. Every instance has passed check_map,
// except those built with trusted() by code that proves the condition itself.
class OgpMap {
public:
    static OgpMap trusted(Ogposet source, Ogposet target, std::vector<int> assignment);

    const Ogposet& source() const { return source_; }
    const Ogposet& target() const { return target_; }
    const std::vector<int>& assignment() const { return a_; }
    int operator()(int x) const { return a_[x]; }

    ElementSet image(const ElementSet& S) const;
    ElementSet image() const;
    bool is_injective() const;
    bool is_surjective() const;
    bool is_iso() const { return is_injective() && is_surjective(); }

    bool operator==(const OgpMap& o) const
    {
        return a_ == o.a_ && source_ == o.source_ && target_ == o.target_;
    }

private:
    OgpMap(Ogposet s, Ogposet t, std::vector<int> a) : source_(std::move(s)), target_(std::move(t)), a_(std::move(a)) {}
    Ogposet source_;
    Ogposet target_;
    std::vector<int> a_;
};

struct MapViolation {
    int element;
    int n;
    Sign side;
};

std::optional<MapViolation> map_violation(const Ogposet& source, const Ogposet& target,
                                          const std::vector<int>& assignment);
OgpMap check_map(const Ogposet& source, const Ogposet& target, const std::vector<int>& assignment);
OgpMap map_from_names(const Ogposet& source, const Ogposet& target,
                      const std::vector<std::pair<std::string, std::string>>& assignment);

OgpMap identity_map(const Ogposet& P);
// f;g in diagrammatic order: apply f first.
OgpMap compose(const OgpMap& f, const OgpMap& g);
// Inverse of a bijective map.
OgpMap inverse(const OgpMap& f);
OgpMap inclusion_of(const Ogposet& host, const Restriction& r);

std::vector<OgpMap> enumerate_maps(const Ogposet& U, const Ogposet& V, bool inclusions_only,
                                   int size_limit = 40);

// All isomorphisms up to `limit`, found by propagation along covers.
std::vector<OgpMap> find_isos(const Ogposet& U, const Ogposet& V, int limit);
std::optional<OgpMap> find_iso(const Ogposet& U, const Ogposet& V);
// Throws NotUnique when a second isomorphism exists.
std::optional<OgpMap> find_unique_iso(const Ogposet& U, const Ogposet& V);

struct Factorization {
    OgpMap surjection;
    OgpMap inclusion;
};
Factorization image_factorization(const OgpMap& f);

struct Pushout {
    Ogposet poset;
    OgpMap j1;
    OgpMap j2;
};
Pushout pushout_inclusions(const OgpMap& i1, const OgpMap& i2);

OgpMap reverse_surjection(const OgpMap& p);

struct CellClass {
    bool degenerate;
    Factorization factorization;
};
CellClass classify_cell(const OgpMap& x);

// Search-bounded: looks for x = p;y with p a non-invertible surjection onto an atom
// of the same dimension taken from `candidates`. Returns the first such p.
std::optional<OgpMap> equal_dim_factorization(const OgpMap& x, const std::vector<Ogposet>& candidates);

}  // namespace pasting

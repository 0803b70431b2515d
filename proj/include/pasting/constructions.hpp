#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pasting/maps.hpp"
#include "pasting/molecule.hpp"
#include "pasting/ogposet.hpp"

namespace pasting {

// A shape together with named maps into or out of it.
struct ShapeBundle {
    Ogposet shape;
    std::map<std::string, OgpMap> maps;

    const OgpMap& map(const std::string& name) const;
};

// Element names: globes use "k-", "k+" and "n" for the top; simplices are
// words over ⊤/⊥; Gray products join names with ⊗.
Ogposet point();
Ogposet empty_ogp();
Ogposet globe(int n);
Ogposet simplex(int n);
Ogposet cube(int n);
// Gⁿ = Oⁿ⁻¹ ⇒ Oⁿ⁻¹ #ₙ₋₂ Oⁿ⁻¹ with maps p1, p2 (onto Oⁿ) and iota_minus, iota1_plus, iota2_plus.
ShapeBundle comp_globe(int n);
// kind is one of point, empty, globe, simplex, cube, comp_globe.
ShapeBundle generate(const std::string& kind, int n);

Ogposet suspension(const Ogposet& P);
OgpMap suspension_map(const OgpMap& f);

struct IndexedProduct {
    Ogposet poset;
    std::vector<int> pair;   // pair[x * |Q| + y]: index of x⊗y or x⋆y
    std::vector<int> left;   // join only: index of x
    std::vector<int> right;  // join only: index of y
};

IndexedProduct gray_indexed(const Ogposet& P, const Ogposet& Q);
Ogposet gray_product(const Ogposet& P, const Ogposet& Q);
OgpMap gray_map(const OgpMap& f, const OgpMap& g);

IndexedProduct join_indexed(const Ogposet& P, const Ogposet& Q);
Ogposet join(const Ogposet& P, const Ogposet& Q);
OgpMap join_map(const OgpMap& f, const OgpMap& g);

// J lists the dimensions whose outgoing cover signs are flipped.
Ogposet dual(const Ogposet& P, const std::vector<int>& J);
enum class DualKind { op, co, all };
std::vector<int> dual_dims(DualKind kind, int max_dim);
Ogposet dual(const Ogposet& P, DualKind kind);
OgpMap dual_map(const OgpMap& f, const std::vector<int>& J);

OgpMap coface(int k, int n);        // Δⁿ⁻¹ ↪ Δⁿ
OgpMap codegeneracy(int k, int n);  // Δⁿ⁺¹ ↠ Δⁿ

// U ⇒ V; maps "in": U → shape and "out": V → shape.
ShapeBundle cell_extension(const Ogposet& U, const Ogposet& V);
// ⟨U⟩ = ∂⁻U ⇒ ∂⁺U.
ShapeBundle compose_atom(const Ogposet& U);

// U_C, the quotient of O¹ ⊗ U collapsing C ⊆ ∂U. Map "q" from O¹ ⊗ U. When C is
// all of ∂U the bundle also has "p", "iota_minus" and "iota_plus".
ShapeBundle relative_cylinder(const Ogposet& U, const ElementSet& C);
ShapeBundle cylinder(const Ogposet& U);
// O(f) for a surjection of atoms of equal dimension.
OgpMap cylinder_map(const OgpMap& f);
// f_≺ : U ↠ O(V) for a surjection of atoms with dim U = dim V + 1.
OgpMap fattening(const OgpMap& f);

// L^V_U (side minus) or R^V_U (side plus), dualized in dimension n+1 when flipped.
// Map "retraction" onto U.
ShapeBundle unitor_atom(const Ogposet& U, const ElementSet& V, Sign side, bool flipped);

struct Substitution {
    Ogposet shape;
    Restriction rest;  // (U ∖ V) ∪ ∂V inside U
    OgpMap outer;      // rest.poset → shape
    OgpMap inner;      // W → shape
};
Substitution substitution(const Ogposet& U, const ElementSet& V, const Ogposet& W);

struct Shell {
    Ogposet shape;
    OgpMap inclusion;  // from the original molecule
};
Shell shell(const Ogposet& U);
Shell shell_kcomp(int n, int k);

OgpMap a_map(int n, bool explicit_table);
OgpMap c_map(int n);

// Eᵏₙ (or its tilde variant) with maps "j" (inclusion of Oᵏ⁺¹(Δⁿ⁻¹), or of
// Oᵏ⁺ⁿ for the tilde variant) and "retraction".
ShapeBundle extr(int k, int n, bool tilde);
// Iterated cylinder Oᵏ(Δⁿ) and Oᵏ(s⁰_≺): Oᵏ(Δⁿ) ↠ Oᵏ⁺¹(Δⁿ⁻¹).
Ogposet iterated_cylinder(const Ogposet& U, int k);
OgpMap iterated_fattened_degeneracy(int k, int n);

enum class HornKind { composition, division, other };
const char* horn_kind_name(HornKind k);
struct Horn {
    ElementSet lambda;
    int removed;
    HornKind kind;
    std::optional<std::array<int, 3>> ternary;  // greatest elements of W0, W+, W-
};
std::vector<Horn> horns(const Ogposet& W);

}  // namespace pasting

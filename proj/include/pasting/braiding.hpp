#pragma once

#include "pasting/maps.hpp"
#include "pasting/ogposet.hpp"

namespace pasting {

// Shapes used to build braidings of two 2-cells with degenerate boundaries.
// U1, U2 are spherical 2-molecules with single-edge boundaries, V1, V2 are 3-atoms;
// p1, p2 : (O² ⇒ Uᵢ) ↠ O² and q1, q2 : Vᵢ ↠ O².
struct BraidingShapes {
    Ogposet u1, u2, v1, v2;
    OgpMap p1, p2, q1, q2;
};

BraidingShapes braiding_shapes();

}  // namespace pasting

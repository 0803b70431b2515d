#pragma once

#include <functional>
#include <string>

#include <json.hpp>

#include "pasting/errors.hpp"
#include "pasting/maps.hpp"
#include "pasting/ogposet.hpp"
#include "pasting/simplicial.hpp"

namespace pasting {

using Json = nlohmann::ordered_json;

inline const char* const kFormatVersion = "1";

// Same poset with elements re-indexed in canonical (dim, id) order.
Ogposet canonicalize(const Ogposet& P);

// Canonical document: elements sorted by (dim, id), covers sorted lexicographically.
Json encode_shape(const Ogposet& P);
// Throws ParseError on malformed documents and ValidationError when the data does
// not form an oriented graded poset. Elements keep document order within each dimension.
Ogposet decode_shape(const Json& doc);

// Resolves a string reference (a path) to a document.
using DocLoader = std::function<Json(const std::string&)>;

Json encode_map(const OgpMap& f);
OgpMap decode_map(const Json& doc, const DocLoader& load = {});

// A subset document is either a list of ids or a shape document whose ids name
// elements of the host. Returns the closure.
ElementSet decode_subset(const Ogposet& host, const Json& doc);
Json encode_subset(const Ogposet& host, const ElementSet& S);

Json encode_complex(const Ogposet& P, const OrderedComplex& C);

std::string to_dot(const Ogposet& P);

// Canonical text form: two-space indentation and a trailing newline.
std::string dump(const Json& j);

Json error_object(const Error& e);

}  // namespace pasting

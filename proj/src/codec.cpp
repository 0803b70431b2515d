#include "pasting/codec.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace pasting {

namespace {

[[noreturn]] void parse_error(const std::string& what, std::string locus = {})
{
    fail(ErrorKind::ParseError, what, std::move(locus));
}

const Json& field(const Json& obj, const char* key)
{
    if (!obj.is_object()) parse_error("expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) parse_error(std::string("missing field '") + key + "'", key);
    return *it;
}

std::string string_field(const Json& obj, const char* key)
{
    const Json& v = field(obj, key);
    if (!v.is_string()) parse_error(std::string("field '") + key + "' must be a string", key);
    return v.get<std::string>();
}

Sign parse_sign(const Json& v)
{
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        if (s == "-") return Sign::minus;
        if (s == "+") return Sign::plus;
    }
    parse_error("sign must be \"+\" or \"-\"", v.dump());
}

std::vector<int> canonical_order(const Ogposet& P)
{
    std::vector<int> order(P.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return std::forward_as_tuple(P.dim(a), P.name(a)) < std::forward_as_tuple(P.dim(b), P.name(b));
    });
    return order;
}

}  // namespace

Ogposet canonicalize(const Ogposet& P)
{
    const std::vector<int> order = canonical_order(P);
    std::vector<int> where(P.size());
    std::vector<ElementSpec> els;
    for (std::size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = static_cast<int>(i);
        els.push_back({P.name(order[i]), P.dim(order[i])});
    }
    std::vector<CoverSpec> cov = cover_list(P);
    for (CoverSpec& c : cov) {
        c.upper = where[c.upper];
        c.lower = where[c.lower];
    }
    return build_ogp(els, cov);
}

Json encode_shape(const Ogposet& P)
{
    Json els = Json::array();
    for (int x : canonical_order(P)) els.push_back({{"id", P.name(x)}, {"dim", P.dim(x)}});
    std::vector<std::tuple<std::string, std::string, char>> cov;
    for (const CoverSpec& c : cover_list(P)) cov.emplace_back(P.name(c.upper), P.name(c.lower), sign_char(c.sign));
    std::sort(cov.begin(), cov.end());
    Json covers = Json::array();
    for (const auto& [u, l, s] : cov) covers.push_back({{"u", u}, {"l", l}, {"sign", std::string(1, s)}});
    return {{"format_version", kFormatVersion}, {"elements", els}, {"covers", covers}};
}

Ogposet decode_shape(const Json& doc)
{
    if (!doc.is_object()) parse_error("shape document must be an object");
    if (auto it = doc.find("format_version"); it != doc.end() && (!it->is_string() || *it != kFormatVersion))
        parse_error("unsupported format_version", "format_version");
    const Json& els = field(doc, "elements");
    const Json& covs = field(doc, "covers");
    if (!els.is_array() || !covs.is_array()) parse_error("elements and covers must be arrays");

    std::vector<ElementSpec> specs;
    std::map<std::string, int> index;
    for (const Json& e : els) {
        ElementSpec s{string_field(e, "id"), std::nullopt};
        if (auto it = e.find("dim"); it != e.end() && !it->is_null()) {
            if (!it->is_number_integer() || it->get<long long>() < 0)
                parse_error("dim must be a natural number", s.name);
            s.dim = it->get<int>();
        }
        if (!index.emplace(s.name, static_cast<int>(specs.size())).second)
            fail(ErrorKind::ValidationError, "DuplicateId: element id '" + s.name + "' is repeated", s.name);
        specs.push_back(std::move(s));
    }
    std::vector<CoverSpec> covers;
    for (const Json& c : covs) {
        const std::string u = string_field(c, "u"), l = string_field(c, "l");
        const Sign sign = parse_sign(field(c, "sign"));
        auto iu = index.find(u), il = index.find(l);
        if (iu == index.end() || il == index.end())
            fail(ErrorKind::ValidationError, "UnknownIndex: cover " + u + " -> " + l + " names an undeclared element",
                 iu == index.end() ? u : l);
        covers.push_back({iu->second, il->second, sign});
    }
    try {
        return build_ogp(specs, covers);
    } catch (const Error& e) {
        fail(ErrorKind::ValidationError, std::string(kind_name(e.kind())) + ": " + e.what(), e.locus());
    }
}

Json encode_map(const OgpMap& f)
{
    const Ogposet& S = f.source();
    Json assignment = Json::array();
    for (int x : canonical_order(S)) assignment.push_back(Json::array({S.name(x), f.target().name(f(x))}));
    return {{"source", encode_shape(S)}, {"target", encode_shape(f.target())}, {"assignment", assignment}};
}

OgpMap decode_map(const Json& doc, const DocLoader& load)
{
    auto side = [&](const char* key) {
        const Json& v = field(doc, key);
        if (v.is_string()) {
            if (!load) parse_error(std::string("path references are not available for '") + key + "'", key);
            return decode_shape(load(v.get<std::string>()));
        }
        return decode_shape(v);
    };
    const Ogposet S = side("source"), T = side("target");
    const Json& a = field(doc, "assignment");
    if (!a.is_array()) parse_error("assignment must be an array");
    std::vector<std::pair<std::string, std::string>> pairs;
    for (const Json& p : a) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
            parse_error("assignment entries must be [from_id, to_id]");
        pairs.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
    }
    std::vector<int> assign(S.size(), -1);
    for (const auto& [from, to] : pairs) {
        auto x = S.find(from);
        auto y = T.find(to);
        if (!x || !y) fail(ErrorKind::ValidationError, "UnknownIndex: assignment names an unknown element", x ? to : from);
        if (assign[*x] >= 0 && assign[*x] != *y)
            fail(ErrorKind::ValidationError, "assignment is not a function", from);
        assign[*x] = *y;
    }
    for (int x = 0; x < S.size(); ++x)
        if (assign[x] < 0) fail(ErrorKind::ValidationError, "assignment is not total", S.name(x));
    try {
        return check_map(S, T, assign);
    } catch (const Error& e) {
        fail(ErrorKind::ValidationError, std::string(kind_name(e.kind())) + ": " + e.what(), e.locus());
    }
}

ElementSet decode_subset(const Ogposet& host, const Json& doc)
{
    std::vector<std::string> ids;
    if (doc.is_array()) {
        for (const Json& v : doc) {
            if (!v.is_string()) parse_error("subset entries must be ids");
            ids.push_back(v.get<std::string>());
        }
    } else if (doc.is_object() && doc.contains("elements")) {
        for (const Json& e : field(doc, "elements")) ids.push_back(string_field(e, "id"));
    } else {
        parse_error("subset must be a list of ids or a shape document");
    }
    ElementSet S = host.none();
    for (const std::string& id : ids) {
        auto x = host.find(id);
        if (!x) fail(ErrorKind::ValidationError, "UnknownIndex: subset names an unknown element", id);
        S.set(*x);
    }
    return clos(host, S);
}

Json encode_subset(const Ogposet& host, const ElementSet& S)
{
    Json ids = Json::array();
    for (int x : canonical_order(host))
        if (S.test(x)) ids.push_back(host.name(x));
    return ids;
}

Json encode_complex(const Ogposet& P, const OrderedComplex& C)
{
    Json degrees = Json::array();
    for (const auto& level : C.chains) {
        Json chains = Json::array();
        for (const auto& ch : level) {
            Json ids = Json::array();
            for (int x : ch) ids.push_back(P.name(x));
            chains.push_back(ids);
        }
        degrees.push_back(chains);
    }
    return {{"chains", degrees}};
}

std::string to_dot(const Ogposet& P)
{
    auto quote = [](const std::string& s) {
        std::string q = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') q += '\\';
            q += c;
        }
        return q + "\"";
    };
    std::ostringstream out;
    out << "digraph ogposet {\n  rankdir=BT;\n  node [shape=plaintext];\n";
    for (int d = 0; d <= P.dim(); ++d) {
        auto [lo, hi] = P.dim_range(d);
        out << "  { rank=same;";
        for (int x = lo; x < hi; ++x) out << " " << quote(P.name(x)) << ";";
        out << " }\n";
    }
    for (int x = 0; x < P.size(); ++x)
        for (const Face& f : P.faces(x))
            out << "  " << quote(P.name(f.elem)) << " -> " << quote(P.name(x)) << " [label=\"" << sign_char(f.sign)
                << "\", color=" << (f.sign == Sign::minus ? "magenta" : "blue") << "];\n";
    out << "}\n";
    return out.str();
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

Json error_object(const Error& e)
{
    Json j = {{"error", kind_name(e.kind())}, {"message", e.what()}};
    if (!e.locus().empty()) j["locus"] = e.locus();
    return j;
}

}  // namespace pasting

#include "pasting/braiding.hpp"

#include <map>
#include <string>
#include <utility>

#include "pasting/constructions.hpp"

namespace pasting {

namespace {

// Builds from (name, dim) lists and (upper, lower, sign) triples keyed by name.
struct Table {
    std::vector<ElementSpec> els;
    std::vector<std::tuple<std::string, std::string, Sign>> cov;

    void cell(const std::string& name, int dim) { els.push_back({name, dim}); }
    void edge(const std::string& name, const std::string& from, const std::string& to)
    {
        cell(name, 1);
        cov.emplace_back(name, from, Sign::minus);
        cov.emplace_back(name, to, Sign::plus);
    }
    void cover(const std::string& u, const std::vector<std::string>& in, const std::vector<std::string>& out)
    {
        for (const auto& l : in) cov.emplace_back(u, l, Sign::minus);
        for (const auto& l : out) cov.emplace_back(u, l, Sign::plus);
    }
    Ogposet build() const
    {
        std::map<std::string, int> at;
        for (std::size_t i = 0; i < els.size(); ++i) at[els[i].name] = static_cast<int>(i);
        std::vector<CoverSpec> c;
        for (const auto& [u, l, s] : cov) c.push_back({at.at(u), at.at(l), s});
        return build_ogp(els, c);
    }
};

using Names = std::vector<std::pair<std::string, std::string>>;

Ogposet make_u(bool mirrored)
{
    Table t;
    for (const char* v : {"v0", "vm", "v1"}) t.cell(v, 0);
    t.edge("t", "v0", "v1");
    t.edge("b", "v0", "v1");
    if (!mirrored) {
        t.edge("u", "v0", "vm");
        t.edge("l", "v0", "vm");
        t.edge("z", "vm", "v1");
        t.cell("x", 2);
        t.cover("x", {"b"}, {"l", "z"});
        t.cell("x'", 2);
        t.cover("x'", {"u", "z"}, {"t"});
    } else {
        t.edge("z", "v0", "vm");
        t.edge("u", "vm", "v1");
        t.edge("l", "vm", "v1");
        t.cell("x", 2);
        t.cover("x", {"b"}, {"z", "l"});
        t.cell("x'", 2);
        t.cover("x'", {"z", "u"}, {"t"});
    }
    t.cell("y", 2);
    t.cover("y", {"l"}, {"u"});
    return t.build();
}

OgpMap make_p(const Ogposet& U, bool mirrored)
{
    ShapeBundle ext = cell_extension(globe(2), U);
    const OgpMap& in = ext.map("in");
    const OgpMap& out = ext.map("out");
    const Ogposet O2 = globe(2);
    const std::string pinch = mirrored ? "0-" : "0+";
    const Names from_u = {{"v0", "0-"}, {"v1", "0+"}, {"vm", pinch}, {"t", "1+"},  {"b", "1-"}, {"u", "1+"},
                          {"l", "1-"},  {"z", pinch},  {"x", "1-"},   {"x'", "1+"}, {"y", "2"}};
    std::vector<int> a(ext.shape.size(), -1);
    for (int x = 0; x < O2.size(); ++x) a[in(x)] = x;
    for (const auto& [from, to] : from_u) a[out(U.index_of(from))] = O2.index_of(to);
    a[*greatest(ext.shape, ext.shape.all())] = O2.index_of("2");
    return check_map(ext.shape, O2, a);
}

Ogposet make_v(bool mirrored)
{
    Table t;
    for (const char* v : {"a", "b", "c"}) t.cell(v, 0);
    if (!mirrored) {
        t.edge("t", "a", "c");
        t.edge("m", "a", "c");
        t.edge("z", "a", "b");
        t.edge("w", "b", "c");
        t.edge("w'", "b", "c");
        t.cell("x", 2);
        t.cover("x", {"m"}, {"t"});
        t.cell("y", 2);
        t.cover("y", {"z", "w"}, {"m"});
        t.cell("x'", 2);
        t.cover("x'", {"w"}, {"w'"});
        t.cell("y'", 2);
        t.cover("y'", {"z", "w'"}, {"t"});
        t.cell("top", 3);
        t.cover("top", {"x", "y"}, {"x'", "y'"});
    } else {
        t.edge("t", "a", "c");
        t.edge("m", "a", "c");
        t.edge("e1", "a", "b");
        t.edge("e2", "a", "b");
        t.edge("z", "b", "c");
        t.cell("x", 2);
        t.cover("x", {"t"}, {"m"});
        t.cell("y", 2);
        t.cover("y", {"m"}, {"e1", "z"});
        t.cell("x'", 2);
        t.cover("x'", {"e2"}, {"e1"});
        t.cell("y'", 2);
        t.cover("y'", {"t"}, {"e2", "z"});
        t.cell("top", 3);
        t.cover("top", {"x", "y"}, {"x'", "y'"});
    }
    return t.build();
}

OgpMap make_q(const Ogposet& V, bool mirrored)
{
    const Names n1 = {{"a", "0-"}, {"b", "0-"}, {"c", "0+"}, {"t", "1+"},  {"m", "1-"},  {"z", "0-"},
                      {"w", "1-"}, {"w'", "1+"}, {"x", "2"},  {"x'", "2"}, {"y", "1-"}, {"y'", "1+"},
                      {"top", "2"}};
    const Names n2 = {{"a", "0-"}, {"b", "0+"}, {"c", "0+"}, {"t", "1-"},  {"m", "1+"},  {"z", "0+"},
                      {"e1", "1+"}, {"e2", "1-"}, {"x", "2"}, {"x'", "2"}, {"y", "1+"}, {"y'", "1-"},
                      {"top", "2"}};
    return map_from_names(V, globe(2), mirrored ? n2 : n1);
}

}  // namespace

BraidingShapes braiding_shapes()
{
    Ogposet u1 = make_u(false), u2 = make_u(true), v1 = make_v(false), v2 = make_v(true);
    OgpMap p1 = make_p(u1, false), p2 = make_p(u2, true);
    OgpMap q1 = make_q(v1, false), q2 = make_q(v2, true);
    return {u1, u2, v1, v2, p1, p2, q1, q2};
}

}  // namespace pasting

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "pasting/constructions.hpp"
#include "pasting/maps.hpp"

using namespace pasting;

namespace {

ErrorKind kind_of(const std::function<void()>& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::Internal;
}

// Vertex i of Δⁿ is the word with a single ⊤ in position i.
std::vector<int> vertex_function(const OgpMap& f)
{
    auto position = [](const std::string& w) {
        auto l = oracle::letters(w);
        return static_cast<int>(std::find(l.begin(), l.end(), true) - l.begin());
    };
    const Ogposet& S = f.source();
    std::vector<int> v(S.dim_range(0).second);
    for (int x = 0; x < S.dim_range(0).second; ++x) v[position(S.name(x))] = position(f.target().name(f(x)));
    return v;
}

}  // namespace

TEST_CASE("check_map accepts maps and rejects non-maps")
{
    Ogposet O1 = globe(1);
    CHECK(check_map(O1, point(), {0, 0, 0}).is_surjective());
    CHECK(kind_of([&] { check_map(O1, O1, {1, 0, 2}); }) == ErrorKind::NotAMap);
    auto v = map_violation(O1, O1, {1, 0, 2});
    REQUIRE(v.has_value());
    CHECK(v->element == 2);
    CHECK(kind_of([&] { check_map(O1, O1, {0, 1}); }) == ErrorKind::PreconditionFailed);

    // collapsing only one side of a 2-globe is not a map
    Ogposet O2 = globe(2);
    std::vector<int> a(O2.size());
    for (int x = 0; x < O2.size(); ++x) a[x] = x;
    a[O2.index_of("1-")] = O2.index_of("0-");
    CHECK_FALSE(map_violation(O2, O2, a) == std::nullopt);
}

TEST_CASE("identity, composition and inverse")
{
    Ogposet D2 = simplex(2);
    OgpMap id = identity_map(D2);
    OgpMap d = coface(1, 2);
    CHECK(compose(d, id) == d);
    CHECK(compose(identity_map(simplex(1)), d) == d);
    OgpMap s = codegeneracy(0, 1);
    CHECK(compose(d, s).source() == simplex(1));
    CHECK(inverse(id) == id);
    CHECK(kind_of([&] { inverse(d); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("maps between simplices are monotone functions")
{
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 3; ++n) {
            INFO("m=" << m << " n=" << n);
            auto all = enumerate_maps(simplex(m), simplex(n), false, 64);
            auto expected = oracle::monotone_functions(m, n, false);
            CHECK(all.size() == expected.size());
            std::set<std::vector<int>> seen;
            for (const OgpMap& f : all) seen.insert(vertex_function(f));
            CHECK(seen == std::set<std::vector<int>>(expected.begin(), expected.end()));

            auto inc = enumerate_maps(simplex(m), simplex(n), true, 64);
            CHECK(inc.size() == oracle::monotone_functions(m, n, true).size());
        }
    CHECK(enumerate_maps(simplex(1), simplex(2), false).size() == 6);
}

TEST_CASE("enumeration respects the size limit")
{
    CHECK(kind_of([] { enumerate_maps(simplex(5), simplex(5), true); }) == ErrorKind::SizeLimit);
    CHECK(enumerate_maps(simplex(4), simplex(5), true, 64).size() == 6);
}

TEST_CASE("isomorphisms")
{
    CHECK(find_isos(globe(2), globe(2), 10).size() == 1);
    CHECK(find_unique_iso(cube(2), cube(2)).has_value());
    CHECK_FALSE(find_iso(globe(2), simplex(2)).has_value());

    Ogposet two = build_ogp({{"a", 0}, {"b", 0}}, {});
    CHECK(find_isos(two, two, 10).size() == 2);
    CHECK(kind_of([&] { find_unique_iso(two, two); }) == ErrorKind::NotUnique);
}

TEST_CASE("image factorization")
{
    OgpMap s = codegeneracy(0, 1);
    Factorization fs = image_factorization(s);
    CHECK(fs.surjection.is_surjective());
    CHECK(fs.inclusion.is_iso());
    CHECK(compose(fs.surjection, fs.inclusion) == s);

    OgpMap d = coface(0, 2);
    Factorization fd = image_factorization(d);
    CHECK(fd.surjection.is_iso());
    CHECK(fd.inclusion.is_injective());
    CHECK(compose(fd.surjection, fd.inclusion) == d);

    OgpMap x = compose(codegeneracy(1, 1), coface(2, 2));
    Factorization fx = image_factorization(x);
    CHECK(fx.inclusion.source().size() == 3);
    CHECK(compose(fx.surjection, fx.inclusion) == x);
}

TEST_CASE("classify cells")
{
    CHECK(classify_cell(codegeneracy(0, 1)).degenerate);
    CHECK_FALSE(classify_cell(coface(1, 2)).degenerate);
    CHECK_FALSE(classify_cell(identity_map(globe(2))).degenerate);
    CHECK(kind_of([] { classify_cell(identity_map(oracle::path2())); }) == ErrorKind::NotAnAtom);
}

TEST_CASE("pushouts of inclusions")
{
    Ogposet O1 = globe(1);
    OgpMap end = check_map(point(), O1, {O1.index_of("0+")});
    OgpMap start = check_map(point(), O1, {O1.index_of("0-")});
    Pushout p = pushout_inclusions(end, start);
    CHECK(p.poset.size() == 5);
    CHECK(find_iso(p.poset, oracle::path2()).has_value());
    CHECK(compose(end, p.j1) == compose(start, p.j2));
    CHECK((p.j1.image() | p.j2.image()) == p.poset.all());

    Pushout q = pushout_inclusions(start, start);
    CHECK(q.poset.size() == 5);
    CHECK(check_complex(q.poset, Level::regular).ok);

    CHECK(kind_of([&] { pushout_inclusions(end, identity_map(O1)); }) == ErrorKind::HostMismatch);
    OgpMap collapse = check_map(O1, point(), {0, 0, 0});
    CHECK(kind_of([&] { pushout_inclusions(collapse, identity_map(O1)); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("reverse surjections")
{
    OgpMap s = codegeneracy(0, 1);
    OgpMap r = reverse_surjection(s);
    CHECK(r.source() == dual(simplex(2), std::vector<int>{2}));
    CHECK(r.assignment() == s.assignment());
    CHECK(kind_of([] { reverse_surjection(coface(0, 2)); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("equal-dimension factorization through a smaller atom")
{
    OgpMap collapse = identity_map(cube(2));
    for (const OgpMap& f : enumerate_maps(cube(2), globe(2), false))
        if (f.is_surjective()) collapse = f;
    REQUIRE(collapse.target() == globe(2));
    auto p = equal_dim_factorization(collapse, {globe(2)});
    REQUIRE(p.has_value());
    CHECK(p->is_surjective());
    CHECK_FALSE(p->is_injective());
    CHECK_FALSE(equal_dim_factorization(identity_map(cube(2)), {globe(2)}).has_value());
    // the square also collapses onto a triangle first
    CHECK(equal_dim_factorization(collapse, {simplex(2)}).has_value());
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "pasting/constructions.hpp"

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

bool iso(const Ogposet& a, const Ogposet& b)
{
    return find_iso(a, b).has_value();
}

Ogposet side(const Ogposet& P, Sign s)
{
    return restrict_to(P, bound(P, P.all(), P.dim() - 1, s)).poset;
}

int top_of(const Ogposet& P)
{
    return *greatest(P, P.all());
}

// x ⊗ y ↦ y ⊗ x, or the join analogue, as a raw assignment.
std::vector<int> swap_factors(const IndexedProduct& pq, const IndexedProduct& qp, int p, int q, bool with_sides)
{
    std::vector<int> a(pq.poset.size(), -1);
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y) a[pq.pair[x * q + y]] = qp.pair[y * p + x];
    if (with_sides) {
        for (int x = 0; x < p; ++x) a[pq.left[x]] = qp.right[x];
        for (int y = 0; y < q; ++y) a[pq.right[y]] = qp.left[y];
    }
    return a;
}

}  // namespace

TEST_CASE("generator sizes and names")
{
    for (int n = 0; n <= 5; ++n) {
        CHECK(globe(n).size() == 2 * n + 1);
        CHECK(simplex(n).size() == (1 << (n + 1)) - 1);
        CHECK(cube(n).dim() == n);
        CHECK(globe(n).dim() == n);
    }
    CHECK(globe(2).find("1-").has_value());
    CHECK(globe(2).find("2").has_value());
    CHECK(simplex(1).find("⊤⊥").has_value());
    CHECK(empty_ogp().size() == 0);
    CHECK(generate("cube", 2).shape == cube(2));
    CHECK(generate("comp_globe", 3).maps.count("p1") == 1);
    CHECK(kind_of([] { generate("torus", 2); }) == ErrorKind::Unsupported);
    CHECK(kind_of([] { comp_globe(1); }) == ErrorKind::Unsupported);
}

TEST_CASE("Gray products")
{
    CHECK(iso(gray_product(globe(1), globe(1)), cube(2)));
    CHECK(iso(gray_product(point(), simplex(2)), simplex(2)));
    CHECK(iso(gray_product(simplex(2), point()), simplex(2)));
    for (const auto& a : {globe(1), simplex(2), oracle::path2()})
        for (const auto& b : {globe(2), simplex(1)}) {
            Ogposet g = gray_product(a, b);
            CHECK(g.size() == a.size() * b.size());
            CHECK(g.dim() == a.dim() + b.dim());
            CHECK(is_molecule(whole(g)));
        }
    CHECK(gray_map(identity_map(globe(1)), identity_map(simplex(2))) ==
          identity_map(gray_product(globe(1), simplex(2))));
}

TEST_CASE("joins")
{
    for (int m = 0; m <= 2; ++m)
        for (int n = 0; n <= 2; ++n) CHECK(iso(join(simplex(m), simplex(n)), simplex(m + n + 1)));
    CHECK(iso(join(empty_ogp(), globe(2)), globe(2)));
    CHECK(iso(join(simplex(1), empty_ogp()), simplex(1)));
    Ogposet j = join(globe(1), oracle::path2());
    CHECK(j.size() == (globe(1).size() + 1) * (oracle::path2().size() + 1) - 1);
    CHECK(j.dim() == 3);
    CHECK(is_molecule(whole(j)));
}

TEST_CASE("suspension")
{
    for (int n = 0; n <= 3; ++n) CHECK(iso(suspension(globe(n)), globe(n + 1)));
    Ogposet s = suspension(simplex(2));
    CHECK(s.size() == simplex(2).size() + 2);
    CHECK(s.find("Σ⊤⊤⊤").has_value());
    CHECK(suspension_map(identity_map(simplex(1))) == identity_map(suspension(simplex(1))));
}

TEST_CASE("duals are involutive and flip the right dimensions")
{
    CHECK(dual_dims(DualKind::op, 4) == std::vector<int>{1, 3});
    CHECK(dual_dims(DualKind::co, 4) == std::vector<int>{2, 4});
    CHECK(dual_dims(DualKind::all, 3) == std::vector<int>{1, 2, 3});
    for (const auto& f : oracle::molecule_fixtures())
        for (DualKind k : {DualKind::op, DualKind::co, DualKind::all}) CHECK(dual(dual(f.shape, k), k) == f.shape);
    // the op-dual of a 1-globe runs the other way
    Ogposet O1op = dual(globe(1), DualKind::op);
    CHECK(O1op.cover_sign(2, 0) == Sign::plus);
}

TEST_CASE("duality swaps the factors of products and joins")
{
    const std::vector<Ogposet> shapes = {globe(1), globe(2), simplex(1), simplex(2), oracle::path2()};
    for (const Ogposet& P : shapes)
        for (const Ogposet& Q : shapes) {
            for (DualKind k : {DualKind::op, DualKind::co}) {
                IndexedProduct pq = gray_indexed(P, Q), qp = gray_indexed(dual(Q, k), dual(P, k));
                auto a = swap_factors(pq, qp, P.size(), Q.size(), false);
                OgpMap f = check_map(dual(pq.poset, k), qp.poset, a);
                CHECK(f.is_iso());
            }
            IndexedProduct pj = join_indexed(P, Q), qj = join_indexed(dual(Q, DualKind::op), dual(P, DualKind::op));
            auto a = swap_factors(pj, qj, P.size(), Q.size(), true);
            CHECK(check_map(dual(pj.poset, DualKind::op), qj.poset, a).is_iso());

            IndexedProduct all = gray_indexed(dual(P, DualKind::all), dual(Q, DualKind::all));
            std::vector<int> id(all.poset.size());
            for (int i = 0; i < all.poset.size(); ++i) id[i] = i;
            CHECK(check_map(dual(gray_product(P, Q), DualKind::all), all.poset, id).is_iso());
        }
}

TEST_CASE("coface and codegeneracy word formulas")
{
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k <= n; ++k) {
            OgpMap d = coface(k, n);
            for (int x = 0; x < d.source().size(); ++x) {
                auto w = oracle::letters(d.source().name(x));
                w.insert(w.begin() + k, false);
                CHECK(d.target().name(d(x)) == oracle::word(w));
            }
        }
    for (int n = 0; n <= 3; ++n)
        for (int k = 0; k <= n; ++k) {
            OgpMap s = codegeneracy(k, n);
            for (int x = 0; x < s.source().size(); ++x) {
                auto w = oracle::letters(s.source().name(x));
                w[k] = w[k] || w[k + 1];
                w.erase(w.begin() + k + 1);
                CHECK(s.target().name(s(x)) == oracle::word(w));
            }
        }
    CHECK(kind_of([] { coface(3, 2); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("cosimplicial identities")
{
    for (int n = 1; n <= 3; ++n)
        for (int j = 1; j <= n + 1; ++j)
            for (int i = 0; i < j; ++i)
                CHECK(compose(coface(i, n), coface(j, n + 1)) == compose(coface(j - 1, n), coface(i, n + 1)));
    for (int n = 0; n <= 2; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                CHECK(compose(codegeneracy(j + 1, n + 1), codegeneracy(i, n)) ==
                      compose(codegeneracy(i, n + 1), codegeneracy(j, n)));
    for (int n = 0; n <= 2; ++n)
        for (int i = 0; i <= n; ++i) {
            CHECK(compose(coface(i, n + 1), codegeneracy(i, n)) == identity_map(simplex(n)));
            CHECK(compose(coface(i + 1, n + 1), codegeneracy(i, n)) == identity_map(simplex(n)));
        }
}

TEST_CASE("binary composition atoms")
{
    for (int n = 2; n <= 4; ++n) {
        ShapeBundle G = comp_globe(n);
        CHECK(G.shape.size() == 2 * n + 3);
        CHECK(is_atom(whole(G.shape)));
        CHECK(G.map("p1").is_surjective());
        CHECK(G.map("p2").is_surjective());
        CHECK(G.map("p1").target() == globe(n));
        for (const char* i : {"iota_minus", "iota1_plus", "iota2_plus"}) {
            CHECK(G.map(i).is_injective());
            CHECK(G.map(i).source() == globe(n - 1));
        }
        const ElementSet in = bound(G.shape, G.shape.all(), n - 1, Sign::minus);
        const ElementSet out = bound(G.shape, G.shape.all(), n - 1, Sign::plus);
        CHECK(in == G.map("iota_minus").image());
        CHECK(out == (G.map("iota1_plus").image() | G.map("iota2_plus").image()));
        CHECK(iso(side(G.shape, Sign::plus), paste(globe(n - 1), globe(n - 1), n - 2).poset));
    }
}

TEST_CASE("cell extensions and composite atoms")
{
    ShapeBundle c = cell_extension(oracle::path2(), globe(1));
    CHECK(c.shape.size() == 5 + 3 - 2 + 1);
    CHECK(c.map("in").source() == oracle::path2());
    CHECK(c.map("out").source() == globe(1));
    CHECK(is_atom(whole(c.shape)));
    CHECK(iso(compose_atom(paste(globe(2), globe(2), 1).poset).shape, globe(2)));
    CHECK(iso(compose_atom(oracle::path2()).shape, globe(1)));
    CHECK(iso(cell_extension(globe(1), oracle::path2()).shape, comp_globe(2).shape));
    CHECK(kind_of([] { cell_extension(globe(1), globe(2)); }) == ErrorKind::BoundaryMismatch);
}

TEST_CASE("cylinders")
{
    for (int n = 0; n <= 3; ++n) CHECK(iso(cylinder(globe(n)).shape, globe(n + 1)));
    for (const Ogposet& U : {simplex(2), cube(2), oracle::path2()}) {
        ShapeBundle C = cylinder(U);
        const int b = static_cast<int>(bound_both(U, U.all(), U.dim() - 1).count());
        CHECK(C.shape.size() == 3 * U.size() - 2 * b);
        CHECK(C.map("p").is_surjective());
        CHECK(compose(C.map("iota_minus"), C.map("p")) == identity_map(U));
        CHECK(compose(C.map("iota_plus"), C.map("p")) == identity_map(U));
        CHECK(is_molecule(whole(C.shape)));
    }
    ShapeBundle R = relative_cylinder(simplex(1), simplex(1).none());
    CHECK(iso(R.shape, gray_product(globe(1), simplex(1))));
    CHECK(cylinder_map(identity_map(simplex(2))) == identity_map(cylinder(simplex(2)).shape));
    OgpMap fat = fattening(codegeneracy(0, 0));
    CHECK(fat.is_iso());
}

TEST_CASE("unitors")
{
    Ogposet O1 = globe(1);
    ElementSet V = O1.none();
    V.set(O1.index_of("0-"));
    ShapeBundle L = unitor_atom(O1, V, Sign::minus, false);
    CHECK(is_atom(whole(L.shape)));
    CHECK(iso(L.shape, comp_globe(2).shape));
    CHECK(L.map("retraction").target() == O1);
    CHECK(L.map("retraction").is_surjective());

    ShapeBundle Lf = unitor_atom(O1, V, Sign::minus, true);
    CHECK(iso(Lf.shape, dual(L.shape, std::vector<int>{2})));

    ElementSet W = O1.none();
    W.set(O1.index_of("0+"));
    CHECK(kind_of([&] { unitor_atom(O1, W, Sign::minus, false); }) == ErrorKind::NotSubmolecule);
    ShapeBundle R = unitor_atom(O1, W, Sign::plus, false);
    CHECK(iso(R.shape, comp_globe(2).shape));
}

TEST_CASE("substitution")
{
    Pasting p = paste(globe(2), globe(2), 1);
    Substitution s = substitution(p.poset, p.j1.image(), p.poset);
    CHECK(s.shape.size() == 9);
    CHECK(iso(s.shape, paste(p.poset, globe(2), 1).poset));
    CHECK(s.inner.is_injective());
    CHECK(s.outer.is_injective());
    CHECK((s.inner.image() | s.outer.image()) == s.shape.all());
    CHECK(kind_of([&] { substitution(p.poset, p.j1.image(), simplex(2)); }) == ErrorKind::BoundaryMismatch);
}

TEST_CASE("shells")
{
    CHECK(shell(globe(1)).shape == globe(1));
    for (const Ogposet& U : {globe(2), simplex(2), simplex(3), paste(globe(2), globe(2), 1).poset, cube(2)}) {
        Shell S = shell(U);
        const int n = U.dim();
        CHECK(S.inclusion.is_injective());
        CHECK(S.inclusion.source() == U);
        CHECK(is_molecule(whole(S.shape)));
        CHECK(is_spherical_molecule(S.shape));
        CHECK(iso(side(S.shape, Sign::minus), globe(n - 1)));
        CHECK(iso(side(S.shape, Sign::plus), globe(n - 1)));
    }
    Shell k = shell_kcomp(2, 0);
    CHECK(iso(side(k.shape, Sign::minus), globe(1)));
    CHECK(kind_of([] { shell(paste(globe(2), globe(2), 0).poset); }) == ErrorKind::NotSpherical);
}

TEST_CASE("canonical surjections onto globes and composition atoms")
{
    for (int n = 0; n <= 4; ++n) {
        OgpMap a = a_map(n, true);
        CHECK(a.is_surjective());
        CHECK(a == a_map(n, false));
        CHECK(a(top_of(simplex(n))) == top_of(globe(n)));
    }
    CHECK(c_map(2).is_iso());
    CHECK(c_map(3).is_surjective());
    CHECK_FALSE(c_map(3).is_injective());
    CHECK(kind_of([] { c_map(1); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("extraction molecules retract onto their core")
{
    for (auto [k, n] : std::vector<std::pair<int, int>>{{0, 2}, {0, 3}, {1, 2}}) {
        ShapeBundle E = extr(k, n, false);
        CHECK(compose(E.map("j"), E.map("retraction")) == identity_map(E.map("j").source()));
        CHECK(is_spherical_molecule(E.shape));
        CHECK(E.map("j").source() == iterated_cylinder(simplex(n - 1), k + 1));
    }
    ShapeBundle T = extr(0, 3, true);
    CHECK(T.map("retraction").target() == globe(3));
    CHECK(compose(T.map("j"), T.map("retraction")) == identity_map(globe(3)));
    CHECK(kind_of([] { extr(0, 1, false); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("horns")
{
    auto hs = horns(globe(2));
    REQUIRE(hs.size() == 2);
    for (const Horn& h : hs) CHECK(h.kind == HornKind::composition);

    Ogposet D2 = simplex(2);
    for (const Horn& h : horns(D2)) {
        const std::string removed = D2.name(h.removed);
        CHECK(h.kind == (removed == "⊤⊥⊤" ? HornKind::composition : HornKind::division));
        REQUIRE(h.ternary.has_value());
        CHECK(D2.name((*h.ternary)[0]) == "⊤⊥⊤");
        CHECK(h.lambda.count() == 5);
    }

    Ogposet G = comp_globe(2).shape;
    int divisions = 0;
    for (const Horn& h : horns(G)) divisions += h.kind == HornKind::division;
    CHECK(divisions == 2);
    CHECK(std::string(horn_kind_name(HornKind::division)) == "division");
    CHECK(kind_of([] { horns(oracle::path2()); }) == ErrorKind::NotAnAtom);
}

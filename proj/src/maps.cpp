#include "pasting/maps.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <tuple>

#include "pasting/constructions.hpp"

namespace pasting {

OgpMap OgpMap::trusted(Ogposet source, Ogposet target, std::vector<int> assignment)
{
    return OgpMap(std::move(source), std::move(target), std::move(assignment));
}

ElementSet OgpMap::image(const ElementSet& S) const
{
    ElementSet out(target_.size());
    for (auto x = S.find_first(); x != ElementSet::npos; x = S.find_next(x)) out.set(a_[x]);
    return out;
}

ElementSet OgpMap::image() const { return image(source_.all()); }

bool OgpMap::is_injective() const
{
    std::vector<char> hit(target_.size(), 0);
    for (int y : a_) {
        if (hit[y]) return false;
        hit[y] = 1;
    }
    return true;
}

bool OgpMap::is_surjective() const { return static_cast<int>(image().count()) == target_.size(); }

namespace {

// Boundaries of clos{x} for every x and every n < dim x, indexed [x][n][side].
struct AtomBoundaries {
    std::vector<ElementSet> closure;
    std::vector<std::vector<std::array<ElementSet, 2>>> bd;
};

AtomBoundaries atom_boundaries(const Ogposet& P)
{
    AtomBoundaries ab;
    ab.closure.resize(P.size());
    ab.bd.resize(P.size());
    for (int x = 0; x < P.size(); ++x) {
        ab.closure[x] = singleton_set(P, x);
        for (int n = 0; n < P.dim(x); ++n)
            ab.bd[x].push_back({bound(P, ab.closure[x], n, Sign::minus), bound(P, ab.closure[x], n, Sign::plus)});
    }
    return ab;
}

ElementSet image_of(const Ogposet& T, const std::vector<int>& a, const ElementSet& S)
{
    ElementSet out(T.size());
    for (auto x = S.find_first(); x != ElementSet::npos; x = S.find_next(x)) out.set(a[x]);
    return out;
}

// Does assigning y to x satisfy the boundary condition at x, given its faces are assigned?
bool condition_at(const Ogposet& T, const std::vector<int>& a, int x, int y, const AtomBoundaries& sb,
                  const AtomBoundaries& tb, MapViolation* why)
{
    const int dx = static_cast<int>(sb.bd[x].size());
    const int dy = static_cast<int>(tb.bd[y].size());
    for (int n = 0; n <= dx; ++n)
        for (int s = 0; s < 2; ++s) {
            const ElementSet& src = n < dx ? sb.bd[x][n][s] : sb.closure[x];
            const ElementSet& tgt = n < dy ? tb.bd[y][n][s] : tb.closure[y];
            if (image_of(T, a, src) != tgt) {
                if (why) *why = {x, n, s ? Sign::plus : Sign::minus};
                return false;
            }
        }
    return true;
}

}  // namespace

std::optional<MapViolation> map_violation(const Ogposet& source, const Ogposet& target,
                                          const std::vector<int>& assignment)
{
    if (static_cast<int>(assignment.size()) != source.size())
        fail(ErrorKind::PreconditionFailed, "assignment is not total on the source");
    for (int y : assignment)
        if (y < 0 || y >= target.size()) fail(ErrorKind::UnknownIndex, "assignment leaves the target");
    AtomBoundaries sb = atom_boundaries(source), tb = atom_boundaries(target);
    for (int x = 0; x < source.size(); ++x) {
        if (target.dim(assignment[x]) > source.dim(x)) return MapViolation{x, source.dim(x), Sign::minus};
        MapViolation why{};
        if (!condition_at(target, assignment, x, assignment[x], sb, tb, &why)) return why;
    }
    return std::nullopt;
}

OgpMap check_map(const Ogposet& source, const Ogposet& target, const std::vector<int>& assignment)
{
    if (auto v = map_violation(source, target, assignment))
        fail(ErrorKind::NotAMap,
             "boundary condition fails at " + source.name(v->element) + " for n=" + std::to_string(v->n) +
                 " side " + sign_char(v->side),
             source.name(v->element));
    return OgpMap::trusted(source, target, assignment);
}

OgpMap map_from_names(const Ogposet& source, const Ogposet& target,
                      const std::vector<std::pair<std::string, std::string>>& assignment)
{
    std::vector<int> a(source.size(), -1);
    for (const auto& [from, to] : assignment) a[source.index_of(from)] = target.index_of(to);
    for (int x = 0; x < source.size(); ++x)
        if (a[x] < 0) fail(ErrorKind::PreconditionFailed, "assignment misses " + source.name(x), source.name(x));
    return check_map(source, target, a);
}

OgpMap identity_map(const Ogposet& P)
{
    std::vector<int> a(P.size());
    for (int x = 0; x < P.size(); ++x) a[x] = x;
    return OgpMap::trusted(P, P, std::move(a));
}

OgpMap compose(const OgpMap& f, const OgpMap& g)
{
    if (!(f.target() == g.source())) fail(ErrorKind::HostMismatch, "maps are not composable");
    std::vector<int> a(f.source().size());
    for (int x = 0; x < f.source().size(); ++x) a[x] = g(f(x));
    return OgpMap::trusted(f.source(), g.target(), std::move(a));
}

OgpMap inverse(const OgpMap& f)
{
    if (!f.is_iso()) fail(ErrorKind::PreconditionFailed, "map is not bijective");
    std::vector<int> a(f.target().size());
    for (int x = 0; x < f.source().size(); ++x) a[f(x)] = x;
    return check_map(f.target(), f.source(), a);
}

OgpMap inclusion_of(const Ogposet& host, const Restriction& r)
{
    return OgpMap::trusted(r.poset, host, r.embed);
}

std::vector<OgpMap> enumerate_maps(const Ogposet& U, const Ogposet& V, bool inclusions_only, int size_limit)
{
    if (U.size() > size_limit || V.size() > size_limit)
        fail(ErrorKind::SizeLimit, "hom-set enumeration is limited to " + std::to_string(size_limit) + " elements");
    AtomBoundaries sb = atom_boundaries(U), tb = atom_boundaries(V);
    std::vector<OgpMap> out;
    std::vector<int> a(U.size(), -1);
    std::vector<char> used(V.size(), 0);
    std::function<void(int)> go = [&](int x) {
        if (x == U.size()) {
            out.push_back(OgpMap::trusted(U, V, a));
            return;
        }
        for (int y = 0; y < V.size(); ++y) {
            if (V.dim(y) > U.dim(x)) break;
            if (inclusions_only && (used[y] || V.dim(y) != U.dim(x))) continue;
            bool faces_ok = true;
            for (const Face& f : U.faces(x))
                if (!tb.closure[y].test(a[f.elem])) {
                    faces_ok = false;
                    break;
                }
            if (!faces_ok) continue;
            a[x] = y;
            if (condition_at(V, a, x, y, sb, tb, nullptr)) {
                used[y] = 1;
                go(x + 1);
                used[y] = 0;
            }
            a[x] = -1;
        }
    };
    go(0);
    return out;
}

namespace {

using Signature = std::tuple<int, int, int, int, int>;

Signature signature(const Ogposet& P, int x)
{
    int fm = 0, fp = 0, cm = 0, cp = 0;
    for (const Face& f : P.faces(x)) (f.sign == Sign::plus ? fp : fm)++;
    for (const Face& c : P.cofaces(x)) (c.sign == Sign::plus ? cp : cm)++;
    return {P.dim(x), fm, fp, cm, cp};
}

}  // namespace

std::vector<OgpMap> find_isos(const Ogposet& U, const Ogposet& V, int limit)
{
    std::vector<OgpMap> out;
    if (U.size() != V.size() || U.num_covers() != V.num_covers()) return out;
    const int n = U.size();
    std::vector<Signature> su(n), sv(n);
    std::map<Signature, int> count;
    for (int x = 0; x < n; ++x) {
        su[x] = signature(U, x);
        sv[x] = signature(V, x);
        count[su[x]]++;
        count[sv[x]]--;
    }
    for (const auto& [s, c] : count)
        if (c != 0) return out;

    // Visit order: breadth-first along covers, starting from top-dimensional elements.
    // anchor[i] = (earlier element, true if the visited element is a face of it, sign).
    struct Anchor {
        int elem = -1;
        bool is_face = false;
        Sign sign = Sign::plus;
    };
    std::vector<int> order;
    std::vector<Anchor> anchor;
    std::vector<char> seen(n, 0);
    for (int root = n - 1; root >= 0; --root) {
        if (seen[root]) continue;
        seen[root] = 1;
        std::size_t start = order.size();
        order.push_back(root);
        anchor.push_back({});
        for (std::size_t i = start; i < order.size(); ++i) {
            int z = order[i];
            for (const Face& f : U.faces(z))
                if (!seen[f.elem]) {
                    seen[f.elem] = 1;
                    order.push_back(f.elem);
                    anchor.push_back({z, true, f.sign});
                }
            for (const Face& c : U.cofaces(z))
                if (!seen[c.elem]) {
                    seen[c.elem] = 1;
                    order.push_back(c.elem);
                    anchor.push_back({z, false, c.sign});
                }
        }
    }

    std::vector<int> a(n, -1);
    std::vector<char> used(n, 0);
    auto consistent = [&](int x, int y) {
        for (const Face& f : U.faces(x))
            if (a[f.elem] >= 0) {
                auto s = V.cover_sign(y, a[f.elem]);
                if (!s || *s != f.sign) return false;
            }
        for (const Face& c : U.cofaces(x))
            if (a[c.elem] >= 0) {
                auto s = V.cover_sign(a[c.elem], y);
                if (!s || *s != c.sign) return false;
            }
        return true;
    };
    std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
        if (i == order.size()) {
            out.push_back(OgpMap::trusted(U, V, a));
            return static_cast<int>(out.size()) >= limit;
        }
        int x = order[i];
        const Anchor& an = anchor[i];
        auto attempt = [&](int y) -> bool {
            if (used[y] || sv[y] != su[x] || !consistent(x, y)) return false;
            a[x] = y;
            used[y] = 1;
            bool stop = go(i + 1);
            used[y] = 0;
            a[x] = -1;
            return stop;
        };
        if (an.elem < 0) {
            for (int y = 0; y < n; ++y)
                if (attempt(y)) return true;
        } else {
            const auto& nbrs = an.is_face ? V.faces(a[an.elem]) : V.cofaces(a[an.elem]);
            for (const Face& f : nbrs)
                if (f.sign == an.sign && attempt(f.elem)) return true;
        }
        return false;
    };
    go(0);
    return out;
}

std::optional<OgpMap> find_iso(const Ogposet& U, const Ogposet& V)
{
    auto isos = find_isos(U, V, 1);
    if (isos.empty()) return std::nullopt;
    return isos.front();
}

std::optional<OgpMap> find_unique_iso(const Ogposet& U, const Ogposet& V)
{
    auto isos = find_isos(U, V, 2);
    if (isos.size() > 1) fail(ErrorKind::NotUnique, "found two distinct isomorphisms");
    if (isos.empty()) return std::nullopt;
    return isos.front();
}

Factorization image_factorization(const OgpMap& f)
{
    ElementSet img = f.image();
    ensure(is_closed(f.target(), img), "image of a map is not closed");
    Restriction r = restrict_to(f.target(), img);
    std::vector<int> local(f.target().size(), -1);
    for (std::size_t i = 0; i < r.embed.size(); ++i) local[r.embed[i]] = static_cast<int>(i);
    std::vector<int> s(f.source().size());
    for (int x = 0; x < f.source().size(); ++x) s[x] = local[f(x)];
    return {check_map(f.source(), r.poset, s), OgpMap::trusted(r.poset, f.target(), r.embed)};
}

Pushout pushout_inclusions(const OgpMap& i1, const OgpMap& i2)
{
    if (!(i1.source() == i2.source())) fail(ErrorKind::HostMismatch, "pushout legs have different sources");
    if (!i1.is_injective() || !i2.is_injective())
        fail(ErrorKind::PreconditionFailed, "pushout legs must be inclusions");
    const Ogposet& P1 = i1.target();
    const Ogposet& P2 = i2.target();
    const Ogposet& Q = i1.source();

    std::vector<int> from2(P2.size(), -1);
    for (int q = 0; q < Q.size(); ++q) from2[i2(q)] = i1(q);
    std::vector<ElementSpec> els = element_list(P1);
    std::vector<int> raw2(P2.size());
    for (int y = 0; y < P2.size(); ++y) {
        if (from2[y] >= 0) {
            raw2[y] = from2[y];
        } else {
            raw2[y] = static_cast<int>(els.size());
            els.push_back({P2.name(y), P2.dim(y)});
        }
    }
    std::vector<CoverSpec> cov = cover_list(P1);
    for (int y = 0; y < P2.size(); ++y)
        for (const Face& f : P2.faces(y)) {
            if (from2[y] >= 0 && from2[f.elem] >= 0) {
                auto s = P1.cover_sign(from2[y], from2[f.elem]);
                if (!s || *s != f.sign)
                    fail(ErrorKind::OrientationConflict, "glued cover carries different signs", P2.name(y));
                continue;
            }
            cov.push_back({raw2[y], raw2[f.elem], f.sign});
        }
    Built b = build_ogp_indexed(els, cov, true);
    std::vector<int> j1(P1.size()), j2(P2.size());
    for (int x = 0; x < P1.size(); ++x) j1[x] = b.position[x];
    for (int y = 0; y < P2.size(); ++y) j2[y] = b.position[raw2[y]];
    return {b.poset, check_map(P1, b.poset, j1), check_map(P2, b.poset, j2)};
}

OgpMap reverse_surjection(const OgpMap& p)
{
    const Ogposet& U = p.source();
    const Ogposet& V = p.target();
    auto tu = greatest(U, U.all());
    auto tv = greatest(V, V.all());
    if (!tu || !tv) fail(ErrorKind::PreconditionFailed, "reverse surjection needs atoms");
    if (!p.is_surjective()) fail(ErrorKind::PreconditionFailed, "reverse surjection needs a surjective map");
    const int n = U.dim();
    if (n <= V.dim()) fail(ErrorKind::PreconditionFailed, "reverse surjection needs dim U > dim V");
    return check_map(dual(U, {n}), V, p.assignment());
}

CellClass classify_cell(const OgpMap& x)
{
    const Ogposet& U = x.source();
    if (!greatest(U, U.all())) fail(ErrorKind::NotAnAtom, "cell shape is not an atom");
    Factorization fz = image_factorization(x);
    return {fz.inclusion.source().dim() < U.dim(), fz};
}

std::optional<OgpMap> equal_dim_factorization(const OgpMap& x, const std::vector<Ogposet>& candidates)
{
    const Ogposet& U = x.source();
    for (const Ogposet& V : candidates) {
        if (V.dim() != U.dim() || V.size() >= U.size() || !greatest(V, V.all())) continue;
        for (const OgpMap& p : enumerate_maps(U, V, false)) {
            if (!p.is_surjective()) continue;
            for (const OgpMap& y : enumerate_maps(V, x.target(), false))
                if (compose(p, y) == x) return p;
        }
    }
    return std::nullopt;
}

}  // namespace pasting

#include "pasting/constructions.hpp"

#include <algorithm>
#include <string>

namespace pasting {

namespace {

const std::string kTop = "⊤";
const std::string kBot = "⊥";

// Partial assignment that refuses to overwrite a value with a different one.
struct Assignment {
    explicit Assignment(int n) : v(n, -1) {}
    void set(int x, int y, const char* what)
    {
        if (v[x] >= 0 && v[x] != y) fail(ErrorKind::Internal, std::string("inconsistent assignment: ") + what);
        v[x] = y;
    }
    void require_total(const char* what) const
    {
        for (int y : v)
            if (y < 0) fail(ErrorKind::Internal, std::string("partial assignment: ") + what);
    }
    std::vector<int> v;
};

int top_of(const Ogposet& U, const char* what)
{
    auto t = greatest(U, U.all());
    if (!t) fail(ErrorKind::NotAnAtom, std::string(what) + " is not an atom");
    return *t;
}

// Splits a name into ⊤/⊥ letters (true for ⊤); nullopt when it is not such a word.
std::optional<std::vector<bool>> parse_word(const std::string& s)
{
    if (s.empty() || s.size() % kTop.size() != 0) return std::nullopt;
    std::vector<bool> w;
    for (std::size_t i = 0; i < s.size(); i += kTop.size()) {
        std::string c = s.substr(i, kTop.size());
        if (c == kTop) w.push_back(true);
        else if (c == kBot) w.push_back(false);
        else return std::nullopt;
    }
    return w;
}

std::string word_string(const std::vector<bool>& w)
{
    std::string s;
    for (bool b : w) s += b ? kTop : kBot;
    return s;
}

// Common word length of all names, or 0 if some name is not a word.
std::size_t word_length(const Ogposet& P)
{
    std::size_t len = 0;
    for (int x = 0; x < P.size(); ++x) {
        auto w = parse_word(P.name(x));
        if (!w || (len && w->size() != len)) return 0;
        len = w->size();
    }
    return len;
}

std::string repeat(const std::string& s, std::size_t k)
{
    std::string out;
    for (std::size_t i = 0; i < k; ++i) out += s;
    return out;
}

const int kO1Minus = 0, kO1Plus = 1, kO1Top = 2;  // element indices in globe(1)

int sign_index(Sign a)
{
    return a == Sign::minus ? kO1Minus : kO1Plus;
}

ElementSet whole_boundary(const Ogposet& U)
{
    return bound_both(U, U.all(), U.dim() - 1);
}

Restriction side_of(const Ogposet& U, Sign a)
{
    return restrict_to(U, bound(U, U.all(), U.dim() - 1, a));
}

}  // namespace

const OgpMap& ShapeBundle::map(const std::string& name) const
{
    auto it = maps.find(name);
    if (it == maps.end()) fail(ErrorKind::UnknownIndex, "bundle has no map named " + name, name);
    return it->second;
}

Ogposet point()
{
    return build_ogp({{kTop, 0}}, {});
}

Ogposet empty_ogp()
{
    return build_ogp({}, {});
}

Ogposet globe(int n)
{
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "globe dimension must be non-negative");
    std::vector<ElementSpec> els;
    std::vector<CoverSpec> cov;
    for (int k = 0; k < n; ++k) {
        els.push_back({std::to_string(k) + "-", k});
        els.push_back({std::to_string(k) + "+", k});
        if (k > 0)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    cov.push_back({2 * k + a, 2 * (k - 1) + b, b == 0 ? Sign::minus : Sign::plus});
    }
    els.push_back({std::to_string(n), n});
    if (n > 0)
        for (int b = 0; b < 2; ++b) cov.push_back({2 * n, 2 * (n - 1) + b, b == 0 ? Sign::minus : Sign::plus});
    return build_ogp(els, cov);
}

Ogposet simplex(int n)
{
    if (n < -1) fail(ErrorKind::IndexOutOfRange, "simplex dimension must be at least -1");
    Ogposet s = empty_ogp();
    for (int i = 0; i <= n; ++i) s = join(s, point());
    return s;
}

Ogposet cube(int n)
{
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "cube dimension must be non-negative");
    if (n == 0) return point();
    Ogposet c = globe(1);
    for (int i = 1; i < n; ++i) c = gray_product(c, globe(1));
    return c;
}

ShapeBundle comp_globe(int n)
{
    if (n < 2) fail(ErrorKind::Unsupported, "the binary composition atom needs n >= 2");
    const int m = n - 1;
    auto nm = [](int j, const char* s) { return std::to_string(j) + s; };
    const std::string mid = nm(m - 1, "^0");
    std::vector<ElementSpec> els;
    std::vector<CoverSpec> cov;
    for (int j = 0; j < m; ++j) {
        els.push_back({nm(j, "-"), j});
        els.push_back({nm(j, "+"), j});
        if (j > 0)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    cov.push_back({2 * j + a, 2 * (j - 1) + b, b == 0 ? Sign::minus : Sign::plus});
    }
    const int lo_minus = 2 * (m - 1), lo_plus = lo_minus + 1;
    const int e_mid = static_cast<int>(els.size());
    els.push_back({mid, m - 1});
    if (m >= 2)
        for (int b = 0; b < 2; ++b) cov.push_back({e_mid, 2 * (m - 2) + b, b == 0 ? Sign::minus : Sign::plus});
    const int e_in = e_mid + 1, e_o1 = e_mid + 2, e_o2 = e_mid + 3, e_top = e_mid + 4;
    els.push_back({nm(m, "-"), m});
    els.push_back({nm(m, "_1+"), m});
    els.push_back({nm(m, "_2+"), m});
    els.push_back({std::to_string(n), n});
    cov.push_back({e_in, lo_minus, Sign::minus});
    cov.push_back({e_in, lo_plus, Sign::plus});
    cov.push_back({e_o1, lo_minus, Sign::minus});
    cov.push_back({e_o1, e_mid, Sign::plus});
    cov.push_back({e_o2, e_mid, Sign::minus});
    cov.push_back({e_o2, lo_plus, Sign::plus});
    cov.push_back({e_top, e_in, Sign::minus});
    cov.push_back({e_top, e_o1, Sign::plus});
    cov.push_back({e_top, e_o2, Sign::plus});
    Ogposet G = build_ogp(els, cov);

    Ogposet On = globe(n), Om = globe(m);
    std::vector<std::pair<std::string, std::string>> common, in_m;
    for (int j = 0; j < m; ++j)
        for (const char* s : {"-", "+"}) common.push_back({nm(j, s), nm(j, s)});
    common.push_back({nm(m, "-"), nm(m, "-")});
    common.push_back({std::to_string(n), std::to_string(n)});

    auto p1 = common, p2 = common;
    p1.push_back({mid, nm(m - 1, "-")});
    p1.push_back({nm(m, "_1+"), nm(m - 1, "-")});
    p1.push_back({nm(m, "_2+"), nm(m, "+")});
    p2.push_back({mid, nm(m - 1, "+")});
    p2.push_back({nm(m, "_2+"), nm(m - 1, "+")});
    p2.push_back({nm(m, "_1+"), nm(m, "+")});

    std::vector<std::pair<std::string, std::string>> im, i1, i2;
    for (int j = 0; j < m - 1; ++j)
        for (const char* s : {"-", "+"}) {
            im.push_back({nm(j, s), nm(j, s)});
            i1.push_back({nm(j, s), nm(j, s)});
            i2.push_back({nm(j, s), nm(j, s)});
        }
    for (const char* s : {"-", "+"}) im.push_back({nm(m - 1, s), nm(m - 1, s)});
    im.push_back({std::to_string(m), nm(m, "-")});
    i1.push_back({nm(m - 1, "-"), nm(m - 1, "-")});
    i1.push_back({nm(m - 1, "+"), mid});
    i1.push_back({std::to_string(m), nm(m, "_1+")});
    i2.push_back({nm(m - 1, "-"), mid});
    i2.push_back({nm(m - 1, "+"), nm(m - 1, "+")});
    i2.push_back({std::to_string(m), nm(m, "_2+")});

    ShapeBundle b{G, {}};
    b.maps.emplace("p1", map_from_names(G, On, p1));
    b.maps.emplace("p2", map_from_names(G, On, p2));
    b.maps.emplace("iota_minus", map_from_names(Om, G, im));
    b.maps.emplace("iota1_plus", map_from_names(Om, G, i1));
    b.maps.emplace("iota2_plus", map_from_names(Om, G, i2));
    return b;
}

ShapeBundle generate(const std::string& kind, int n)
{
    if (kind == "point") return {point(), {}};
    if (kind == "empty") return {empty_ogp(), {}};
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "dimension must be non-negative");
    if (kind == "globe") return {globe(n), {}};
    if (kind == "simplex") return {simplex(n), {}};
    if (kind == "cube") return {cube(n), {}};
    if (kind == "comp_globe") return comp_globe(n);
    fail(ErrorKind::Unsupported, "unknown generator " + kind, kind);
}

Ogposet suspension(const Ogposet& P)
{
    std::vector<ElementSpec> els{{kBot + "-", 0}, {kBot + "+", 0}};
    std::vector<CoverSpec> cov;
    for (int x = 0; x < P.size(); ++x) {
        els.push_back({"Σ" + P.name(x), P.dim(x) + 1});
        if (P.dim(x) == 0) {
            cov.push_back({x + 2, 0, Sign::minus});
            cov.push_back({x + 2, 1, Sign::plus});
        }
        for (const Face& f : P.faces(x)) cov.push_back({x + 2, f.elem + 2, f.sign});
    }
    Built b = build_ogp_indexed(els, cov);
    for (std::size_t i = 0; i < b.position.size(); ++i) ensure(b.position[i] == static_cast<int>(i), "suspension order");
    return b.poset;
}

OgpMap suspension_map(const OgpMap& f)
{
    Ogposet S = suspension(f.source()), T = suspension(f.target());
    std::vector<int> a{0, 1};
    for (int x = 0; x < f.source().size(); ++x) a.push_back(f(x) + 2);
    return check_map(S, T, a);
}

IndexedProduct gray_indexed(const Ogposet& P, const Ogposet& Q)
{
    const int q = Q.size();
    std::vector<ElementSpec> els;
    std::vector<CoverSpec> cov;
    for (int x = 0; x < P.size(); ++x)
        for (int y = 0; y < q; ++y) {
            const int me = x * q + y;
            els.push_back({P.name(x) + "⊗" + Q.name(y), P.dim(x) + Q.dim(y)});
            for (const Face& f : P.faces(x)) cov.push_back({me, f.elem * q + y, f.sign});
            for (const Face& f : Q.faces(y)) cov.push_back({me, x * q + f.elem, parity_sign(P.dim(x)) * f.sign});
        }
    Built b = build_ogp_indexed(els, cov, true);
    return {b.poset, b.position, {}, {}};
}

Ogposet gray_product(const Ogposet& P, const Ogposet& Q)
{
    return gray_indexed(P, Q).poset;
}

OgpMap gray_map(const OgpMap& f, const OgpMap& g)
{
    IndexedProduct S = gray_indexed(f.source(), g.source());
    IndexedProduct T = gray_indexed(f.target(), g.target());
    const int qs = g.source().size(), qt = g.target().size();
    std::vector<int> a(S.poset.size());
    for (int x = 0; x < f.source().size(); ++x)
        for (int y = 0; y < qs; ++y) a[S.pair[x * qs + y]] = T.pair[f(x) * qt + g(y)];
    return check_map(S.poset, T.poset, a);
}

IndexedProduct join_indexed(const Ogposet& P, const Ogposet& Q)
{
    const int p = P.size(), q = Q.size();
    std::vector<int> ident;
    if (p == 0 || q == 0) {
        const Ogposet& R = p == 0 ? Q : P;
        for (int i = 0; i < R.size(); ++i) ident.push_back(i);
        if (p == 0) return {Q, {}, {}, ident};
        return {P, {}, ident, {}};
    }
    const std::size_t lp = word_length(P), lq = word_length(Q);
    const bool words = lp > 0 && lq > 0;

    // Raw layout: P elements, then Q elements, then pairs.
    std::vector<ElementSpec> els;
    std::vector<CoverSpec> cov;
    auto raw_pair = [&](int x, int y) { return p + q + x * q + y; };
    for (int x = 0; x < p; ++x) {
        els.push_back({words ? P.name(x) + repeat(kBot, lq) : P.name(x) + "⋆", P.dim(x)});
        for (const Face& f : P.faces(x)) cov.push_back({x, f.elem, f.sign});
    }
    for (int y = 0; y < q; ++y) {
        els.push_back({words ? repeat(kBot, lp) + Q.name(y) : "⋆" + Q.name(y), Q.dim(y)});
        for (const Face& f : Q.faces(y)) cov.push_back({p + y, p + f.elem, f.sign});
    }
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y) {
            const int me = raw_pair(x, y);
            els.push_back({words ? P.name(x) + Q.name(y) : P.name(x) + "⋆" + Q.name(y), P.dim(x) + Q.dim(y) + 1});
            const Sign twist = parity_sign(P.dim(x) + 1);
            for (const Face& f : P.faces(x)) cov.push_back({me, raw_pair(f.elem, y), f.sign});
            if (P.dim(x) == 0) cov.push_back({me, p + y, Sign::plus});
            for (const Face& f : Q.faces(y)) cov.push_back({me, raw_pair(x, f.elem), twist * f.sign});
            if (Q.dim(y) == 0) cov.push_back({me, x, twist});
        }

    // Word-named joins are emitted in (dim, word) order so that every bracketing
    // of an iterated join gives the same poset.
    std::vector<int> order(els.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    if (words)
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            if (*els[a].dim != *els[b].dim) return *els[a].dim < *els[b].dim;
            return els[a].name < els[b].name;
        });
    std::vector<int> where(els.size());
    std::vector<ElementSpec> sorted;
    for (std::size_t i = 0; i < order.size(); ++i) {
        where[order[i]] = static_cast<int>(i);
        sorted.push_back(els[order[i]]);
    }
    for (CoverSpec& c : cov) {
        c.upper = where[c.upper];
        c.lower = where[c.lower];
    }
    Built b = build_ogp_indexed(sorted, cov, true);
    IndexedProduct out{b.poset, std::vector<int>(p * q), std::vector<int>(p), std::vector<int>(q)};
    for (int x = 0; x < p; ++x) out.left[x] = b.position[where[x]];
    for (int y = 0; y < q; ++y) out.right[y] = b.position[where[p + y]];
    for (int x = 0; x < p; ++x)
        for (int y = 0; y < q; ++y) out.pair[x * q + y] = b.position[where[raw_pair(x, y)]];
    return out;
}

Ogposet join(const Ogposet& P, const Ogposet& Q)
{
    return join_indexed(P, Q).poset;
}

OgpMap join_map(const OgpMap& f, const OgpMap& g)
{
    IndexedProduct S = join_indexed(f.source(), g.source());
    IndexedProduct T = join_indexed(f.target(), g.target());
    const int ps = f.source().size(), qs = g.source().size(), qt = g.target().size();
    std::vector<int> a(S.poset.size(), -1);
    for (int x = 0; x < ps; ++x) a[S.left[x]] = T.left[f(x)];
    for (int y = 0; y < qs; ++y) a[S.right[y]] = T.right[g(y)];
    for (int x = 0; x < ps; ++x)
        for (int y = 0; y < qs; ++y) a[S.pair[x * qs + y]] = T.pair[f(x) * qt + g(y)];
    return check_map(S.poset, T.poset, a);
}

Ogposet dual(const Ogposet& P, const std::vector<int>& J)
{
    for (int j : J)
        if (j <= 0) fail(ErrorKind::PreconditionFailed, "dual dimensions must be positive");
    std::vector<CoverSpec> cov = cover_list(P);
    for (CoverSpec& c : cov)
        if (std::find(J.begin(), J.end(), P.dim(c.upper)) != J.end()) c.sign = -c.sign;
    return with_signs(P, cov);
}

std::vector<int> dual_dims(DualKind kind, int max_dim)
{
    std::vector<int> J;
    for (int d = 1; d <= max_dim; ++d)
        if (kind == DualKind::all || (kind == DualKind::op) == (d % 2 == 1)) J.push_back(d);
    return J;
}

Ogposet dual(const Ogposet& P, DualKind kind)
{
    return dual(P, dual_dims(kind, P.dim()));
}

OgpMap dual_map(const OgpMap& f, const std::vector<int>& J)
{
    return check_map(dual(f.source(), J), dual(f.target(), J), f.assignment());
}

OgpMap coface(int k, int n)
{
    if (n < 0 || k < 0 || k > n) fail(ErrorKind::IndexOutOfRange, "coface index out of range");
    OgpMap iota = OgpMap::trusted(empty_ogp(), point(), {});
    OgpMap f = join_map(join_map(identity_map(simplex(k - 1)), iota), identity_map(simplex(n - k - 1)));
    ensure(f.target() == simplex(n) && f.source() == simplex(n - 1), "coface bracketing");
    return f;
}

OgpMap codegeneracy(int k, int n)
{
    if (n < 0 || k < 0 || k > n) fail(ErrorKind::IndexOutOfRange, "codegeneracy index out of range");
    OgpMap p = check_map(simplex(1), point(), {0, 0, 0});
    OgpMap f = join_map(join_map(identity_map(simplex(k - 1)), p), identity_map(simplex(n - k - 1)));
    ensure(f.target() == simplex(n) && f.source() == simplex(n + 1), "codegeneracy bracketing");
    return f;
}

ShapeBundle cell_extension(const Ogposet& U, const Ogposet& V)
{
    const int n = U.dim();
    if (n < 0 || V.dim() != n) fail(ErrorKind::BoundaryMismatch, "cell extension needs molecules of equal dimension");
    if (!spherical_equalities(U, U.all()) || !spherical_equalities(V, V.all()))
        fail(ErrorKind::NotSpherical, "cell extension needs spherical boundaries");
    auto biso = boundary_iso(U, U.all(), V, V.all());
    if (!biso) fail(ErrorKind::BoundaryMismatch, "boundaries are not isomorphic");
    Restriction D = restrict_to(U, whole_boundary(U));
    std::vector<int> to_v(D.poset.size());
    for (int i = 0; i < D.poset.size(); ++i) to_v[i] = (*biso)[D.embed[i]];
    Pushout po = pushout_inclusions(inclusion_of(U, D), check_map(D.poset, V, to_v));

    std::vector<ElementSpec> els = element_list(po.poset);
    std::vector<CoverSpec> cov = cover_list(po.poset);
    const int top = static_cast<int>(els.size());
    els.push_back({"⇒", n + 1});
    for (int x = 0; x < U.size(); ++x)
        if (U.dim(x) == n) cov.push_back({top, po.j1(x), Sign::minus});
    for (int y = 0; y < V.size(); ++y)
        if (V.dim(y) == n) cov.push_back({top, po.j2(y), Sign::plus});
    Built b = build_ogp_indexed(els, cov, true);
    std::vector<int> in(U.size()), out(V.size());
    for (int x = 0; x < U.size(); ++x) in[x] = b.position[po.j1(x)];
    for (int y = 0; y < V.size(); ++y) out[y] = b.position[po.j2(y)];
    ShapeBundle r{b.poset, {}};
    r.maps.emplace("in", check_map(U, b.poset, in));
    r.maps.emplace("out", check_map(V, b.poset, out));
    return r;
}

ShapeBundle compose_atom(const Ogposet& U)
{
    if (U.dim() < 1) fail(ErrorKind::PreconditionFailed, "compose_atom needs a molecule of positive dimension");
    if (!spherical_equalities(U, U.all())) fail(ErrorKind::NotSpherical, "compose_atom needs a spherical boundary");
    return cell_extension(side_of(U, Sign::minus).poset, side_of(U, Sign::plus).poset);
}

ShapeBundle relative_cylinder(const Ogposet& U, const ElementSet& C)
{
    const ElementSet dU = whole_boundary(U);
    if (static_cast<int>(C.size()) != U.size() || !is_closed(U, C) || !C.is_subset_of(dU))
        fail(ErrorKind::PreconditionFailed, "collapsed set must be a closed subset of the boundary");
    const Ogposet O1 = globe(1);
    IndexedProduct G = gray_indexed(O1, U);
    const int u = U.size(), g = G.poset.size();
    auto at = [&](int a, int x) { return G.pair[a * u + x]; };

    std::vector<int> root(g);
    for (int i = 0; i < g; ++i) root[i] = i;
    for (auto x = C.find_first(); x != ElementSet::npos; x = C.find_next(x)) {
        const int r = std::min({at(kO1Minus, x), at(kO1Plus, x), at(kO1Top, x)});
        for (int a : {kO1Minus, kO1Plus, kO1Top}) root[at(a, x)] = r;
    }
    std::vector<int> cls(g, -1);
    std::vector<std::vector<int>> members;
    std::vector<ElementSpec> els;
    for (int i = 0; i < g; ++i) {
        if (root[i] != i) continue;
        cls[i] = static_cast<int>(members.size());
        members.emplace_back();
        els.push_back({G.poset.name(i), G.poset.dim(i)});
    }
    for (int i = 0; i < g; ++i) {
        cls[i] = cls[root[i]];
        members[cls[i]].push_back(i);
    }
    for (auto x = C.find_first(); x != ElementSet::npos; x = C.find_next(x))
        els[cls[at(kO1Minus, x)]] = {U.name(static_cast<int>(x)), U.dim(static_cast<int>(x))};

    const int nc = static_cast<int>(members.size());
    std::vector<CoverSpec> cov;
    for (int c = 0; c < nc; ++c) {
        ElementSet below(g);
        for (int m : members[c]) below |= clos(G.poset, singleton_set(G.poset, m));
        std::vector<char> seen(nc, 0);
        for (auto m = below.find_first(); m != ElementSet::npos; m = below.find_next(m)) {
            const int b = cls[m];
            if (b == c || seen[b] || *els[b].dim != *els[c].dim - 1) continue;
            seen[b] = 1;
            std::optional<Sign> sign;
            for (int up : members[c]) {
                if (G.poset.dim(up) != *els[c].dim) continue;
                for (const Face& f : G.poset.faces(up)) {
                    if (cls[f.elem] != b || G.poset.dim(f.elem) != *els[b].dim) continue;
                    if (sign && *sign != f.sign)
                        fail(ErrorKind::QuotientInvalid, "quotient orientation is inconsistent", els[c].name);
                    sign = f.sign;
                }
            }
            if (!sign) fail(ErrorKind::QuotientInvalid, "quotient cover has no representative", els[c].name);
            cov.push_back({c, b, *sign});
        }
    }
    Built b = build_ogp_indexed(els, cov, true);
    std::vector<int> q(g);
    for (int i = 0; i < g; ++i) q[i] = b.position[cls[i]];

    ShapeBundle r{b.poset, {}};
    r.maps.emplace("q", check_map(G.poset, b.poset, q));
    if (C == dU) {
        std::vector<int> p(b.poset.size()), im(u), ip(u);
        for (int a : {kO1Minus, kO1Plus, kO1Top})
            for (int x = 0; x < u; ++x) p[q[at(a, x)]] = x;
        for (int x = 0; x < u; ++x) {
            im[x] = q[at(kO1Minus, x)];
            ip[x] = q[at(kO1Plus, x)];
        }
        r.maps.emplace("p", check_map(b.poset, U, p));
        r.maps.emplace("iota_minus", check_map(U, b.poset, im));
        r.maps.emplace("iota_plus", check_map(U, b.poset, ip));
    }
    return r;
}

ShapeBundle cylinder(const Ogposet& U)
{
    return relative_cylinder(U, whole_boundary(U));
}

OgpMap cylinder_map(const OgpMap& f)
{
    const Ogposet& U = f.source();
    const Ogposet& V = f.target();
    top_of(U, "cylinder source");
    top_of(V, "cylinder target");
    if (U.dim() != V.dim() || !f.is_surjective())
        fail(ErrorKind::PreconditionFailed, "cylinder map needs a surjection of atoms of equal dimension");
    ShapeBundle CU = cylinder(U), CV = cylinder(V);
    IndexedProduct GU = gray_indexed(globe(1), U), GV = gray_indexed(globe(1), V);
    const OgpMap& qU = CU.map("q");
    const OgpMap& qV = CV.map("q");
    Assignment a(CU.shape.size());
    for (int s : {kO1Minus, kO1Plus, kO1Top})
        for (int x = 0; x < U.size(); ++x)
            a.set(qU(GU.pair[s * U.size() + x]), qV(GV.pair[s * V.size() + f(x)]), "cylinder map");
    OgpMap Of = check_map(CU.shape, CV.shape, a.v);
    ensure(compose(CU.map("p"), f) == compose(Of, CV.map("p")), "cylinder map square");
    return Of;
}

OgpMap fattening(const OgpMap& f)
{
    const Ogposet& U = f.source();
    const Ogposet& V = f.target();
    const int tu = top_of(U, "fattening source"), tv = top_of(V, "fattening target");
    if (U.dim() != V.dim() + 1 || !f.is_surjective())
        fail(ErrorKind::PreconditionFailed, "fattening needs a surjection lowering dimension by one");
    ShapeBundle CV = cylinder(V);
    IndexedProduct GV = gray_indexed(globe(1), V);
    const OgpMap& q = CV.map("q");
    Assignment a(U.size());
    a.set(tu, q(GV.pair[kO1Top * V.size() + tv]), "fattening top");
    for (Sign s : {Sign::minus, Sign::plus}) {
        ElementSet B = bound(U, U.all(), U.dim() - 1, s);
        for (int x : members_of(B)) a.set(x, q(GV.pair[sign_index(s) * V.size() + f(x)]), "fattening boundary");
    }
    a.require_total("fattening");
    OgpMap fat = check_map(U, CV.shape, a.v);
    ensure(compose(fat, CV.map("p")) == f, "fattening triangle");
    return fat;
}

ShapeBundle unitor_atom(const Ogposet& U, const ElementSet& V, Sign side, bool flipped)
{
    const int top = top_of(U, "unitor base");
    const int n = U.dim();
    if (n < 1) fail(ErrorKind::PreconditionFailed, "unitor needs an atom of positive dimension");
    if (static_cast<int>(V.size()) != U.size() || !is_closed(U, V))
        fail(ErrorKind::NotSubmolecule, "unitor subset must be closed");
    const ElementSet side_set = bound(U, U.all(), n - 1, side);
    Recognizer rec(U);
    if (set_dim(U, V) != n - 1 || !V.is_subset_of(side_set) || !spherical_equalities(U, V) ||
        !rec.submolecule(V, side_set))
        fail(ErrorKind::NotSubmolecule, "unitor subset is not a spherical submolecule of the boundary");

    Restriction Vr = restrict_to(U, V);
    ShapeBundle CV = cylinder(Vr.poset);
    const OgpMap& glue = CV.map(side == Sign::minus ? "iota_plus" : "iota_minus");
    Pushout T = pushout_inclusions(inclusion_of(U, Vr), glue);
    ShapeBundle L = cell_extension(U, T.poset);

    Assignment a(L.shape.size());
    const OgpMap& in = L.map("in");
    const OgpMap& out = L.map("out");
    a.set(top_of(L.shape, "unitor"), top, "unitor top");
    for (int x = 0; x < U.size(); ++x) {
        a.set(in(x), x, "unitor input copy");
        a.set(out(T.j1(x)), x, "unitor output copy");
    }
    const OgpMap& p = CV.map("p");
    for (int c = 0; c < CV.shape.size(); ++c) a.set(out(T.j2(c)), Vr.embed[p(c)], "unitor cylinder");
    a.require_total("unitor");

    Ogposet shape = flipped ? dual(L.shape, std::vector<int>{n + 1}) : L.shape;
    ShapeBundle r{shape, {}};
    r.maps.emplace("retraction", check_map(shape, U, a.v));
    r.maps.emplace("in", check_map(U, shape, in.assignment()));
    r.maps.emplace("out", check_map(T.poset, shape, out.assignment()));
    return r;
}

Substitution substitution(const Ogposet& U, const ElementSet& V, const Ogposet& W)
{
    const int n = U.dim();
    if (static_cast<int>(V.size()) != U.size() || !is_closed(U, V) || set_dim(U, V) != n || W.dim() != n)
        fail(ErrorKind::NotSubmolecule, "substituted subset must be a closed subset of top dimension");
    if (!spherical_equalities(U, V)) fail(ErrorKind::NotSubmolecule, "substituted subset is not spherical");
    if (!spherical_equalities(W, W.all())) fail(ErrorKind::NotSpherical, "replacement is not spherical");
    Recognizer rec(U);
    if (!rec.submolecule(V, U.all())) fail(ErrorKind::NotSubmolecule, "subset is not a submolecule");

    Restriction Vr = restrict_to(U, V);
    auto biso = boundary_iso(Vr.poset, Vr.poset.all(), W, W.all());
    if (!biso) fail(ErrorKind::BoundaryMismatch, "replacement boundary does not match");
    const ElementSet dV = bound_both(U, V, n - 1);
    const ElementSet R = (U.all() - V) | dV;
    ensure(is_closed(U, R), "substitution complement is not closed");
    Restriction Rr = restrict_to(U, R);
    Restriction D = restrict_to(U, dV);
    std::vector<int> local_r(U.size(), -1), local_v(U.size(), -1);
    for (std::size_t i = 0; i < Rr.embed.size(); ++i) local_r[Rr.embed[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < Vr.embed.size(); ++i) local_v[Vr.embed[i]] = static_cast<int>(i);
    std::vector<int> i1(D.poset.size()), i2(D.poset.size());
    for (int i = 0; i < D.poset.size(); ++i) {
        i1[i] = local_r[D.embed[i]];
        i2[i] = (*biso)[local_v[D.embed[i]]];
    }
    Pushout po = pushout_inclusions(check_map(D.poset, Rr.poset, i1), check_map(D.poset, W, i2));
    return {po.poset, Rr, po.j1, po.j2};
}

namespace {

// Glues Oⁿ⁻¹ ⇒ S⁻, U (with S⁻ attached along ∂⁻U) and ∂⁺ ⇒ Oⁿ⁻¹, where `sub` is a
// shell of a molecule isomorphic to ∂⁻U.
Shell shell_glue(const Ogposet& U, const Shell& sub)
{
    const int n = U.dim();
    Restriction Dm = side_of(U, Sign::minus);
    auto h = find_unique_iso(Dm.poset, sub.inclusion.source());
    if (!h) fail(ErrorKind::BoundaryMismatch, "input boundary does not match the inner shell");
    Pushout Y = pushout_inclusions(inclusion_of(U, Dm), compose(*h, sub.inclusion));
    const Ogposet G = globe(n - 1);
    ShapeBundle A = cell_extension(G, sub.shape);
    Pasting AY = paste(A.shape, Y.poset, n - 1);
    ShapeBundle B = cell_extension(side_of(AY.poset, Sign::plus).poset, G);
    Pasting R = paste(AY.poset, B.shape, n - 1);
    OgpMap incl = compose(compose(Y.j1, AY.j2), R.j1);
    for (Sign s : {Sign::minus, Sign::plus})
        ensure(static_cast<bool>(find_iso(side_of(R.poset, s).poset, G)), "shell boundary is not a globe");
    return {R.poset, incl};
}

}  // namespace

Shell shell(const Ogposet& U)
{
    const int n = U.dim();
    if (n <= 1) return {U, identity_map(U)};
    if (!spherical_equalities(U, U.all())) fail(ErrorKind::NotSpherical, "shell needs a spherical boundary");
    return shell_glue(U, shell(side_of(U, Sign::minus).poset));
}

Shell shell_kcomp(int n, int k)
{
    if (k < 0 || k >= n) fail(ErrorKind::IndexOutOfRange, "shell_kcomp needs 0 <= k < n");
    Ogposet U = paste(globe(n), globe(n), k).poset;
    if (n <= 1 || n == k + 1) return shell(U);
    return shell_glue(U, shell_kcomp(n - 1, k));
}

OgpMap a_map(int n, bool explicit_table)
{
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "a_map needs n >= 0");
    const Ogposet D = simplex(n), O = globe(n);
    if (explicit_table) {
        std::vector<int> a(D.size());
        for (int x = 0; x < D.size(); ++x) {
            std::vector<bool> w = *parse_word(D.name(x));
            int j = 0;
            while (j < static_cast<int>(w.size()) && w[w.size() - 1 - j]) ++j;
            std::string target;
            if (j == n + 1) {
                target = std::to_string(n);
            } else {
                int k = 0;
                while (j + k < static_cast<int>(w.size()) && !w[w.size() - 1 - j - k]) ++k;
                const bool head_empty = j + k == static_cast<int>(w.size());
                target = head_empty ? std::to_string(j - 1) + "+" : std::to_string(j) + "-";
            }
            a[x] = O.index_of(target);
        }
        return check_map(D, O, a);
    }
    if (n == 0) return check_map(D, O, {0});
    OgpMap step = fattening(codegeneracy(0, n - 1));
    OgpMap lifted = cylinder_map(a_map(n - 1, false));
    auto iso = find_unique_iso(lifted.target(), O);
    ensure(static_cast<bool>(iso), "cylinder on a globe is not a globe");
    return compose(compose(step, lifted), *iso);
}

OgpMap c_map(int n)
{
    if (n < 2) fail(ErrorKind::IndexOutOfRange, "c_map needs n >= 2");
    const int m = n - 1;
    ShapeBundle G = comp_globe(n);
    const Ogposet D = simplex(n);
    auto word = [&](std::vector<bool> head) {
        for (int i = 0; i < m - 1; ++i) head.push_back(true);
        return word_string(head);
    };
    const std::string w_top = repeat(kTop, n + 1);
    const std::string w2 = word({false, true, true}), w1 = word({true, true, false}), w0 = word({false, true, false});
    std::vector<int> a(D.size());
    for (int x = 0; x < D.size(); ++x) {
        const std::string& s = D.name(x);
        std::string target;
        if (s == w_top) target = std::to_string(n);
        else if (s == w2) target = std::to_string(m) + "_2+";
        else if (s == w1) target = std::to_string(m) + "_1+";
        else if (s == w0) target = std::to_string(m - 1) + "^0";
        else {
            std::vector<bool> w = *parse_word(s);
            const int len = static_cast<int>(w.size());
            int j = 0, k = 0;
            while (j < len && w[len - 1 - j]) ++j;
            while (j + k < len && !w[len - 1 - j - k]) ++k;
            target = j + k == len ? std::to_string(j - 1) + "+" : std::to_string(j) + "-";
        }
        a[x] = G.shape.index_of(target);
    }
    return check_map(D, G.shape, a);
}

Ogposet iterated_cylinder(const Ogposet& U, int k)
{
    Ogposet r = U;
    for (int i = 0; i < k; ++i) r = cylinder(r).shape;
    return r;
}

OgpMap iterated_fattened_degeneracy(int k, int n)
{
    OgpMap f = fattening(codegeneracy(0, n - 1));
    for (int i = 0; i < k; ++i) f = cylinder_map(f);
    return f;
}

namespace {

struct Extr {
    Ogposet shape;
    OgpMap j;  // Oᵏ⁺¹(Δⁿ⁻¹) ↪ Eᵏₙ
    OgpMap r;  // Eᵏₙ ↠ Oᵏ⁺¹(Δⁿ⁻¹)
};

void check_retract(const Extr& e, int k, int n)
{
    const Ogposet OkDn = iterated_cylinder(simplex(n), k);
    const OgpMap s = iterated_fattened_degeneracy(k, n);
    auto b = boundary_iso(e.shape, e.shape.all(), OkDn, OkDn.all());
    ensure(static_cast<bool>(b), "extraction boundary does not match");
    ElementSet dE = whole_boundary(e.shape);
    for (int x : members_of(dE)) ensure(e.r(x) == s((*b)[x]), "retraction square does not commute");
}

Extr extr_plain(int k, int n)
{
    if (k == 0) {
        const Ogposet Dn1 = simplex(n - 1);
        ShapeBundle Cy = cylinder(Dn1);
        Pushout po = pushout_inclusions(coface(0, n), Cy.map("iota_minus"));
        const OgpMap s0 = codegeneracy(0, n - 1);
        const OgpMap& im = Cy.map("iota_minus");
        Assignment a(po.poset.size());
        for (int x = 0; x < po.j1.source().size(); ++x) a.set(po.j1(x), im(s0(x)), "r_0 on the simplex");
        for (int c = 0; c < Cy.shape.size(); ++c) a.set(po.j2(c), c, "r_0 on the cylinder");
        a.require_total("r_0");
        Extr e{po.poset, po.j2, check_map(po.poset, Cy.shape, a.v)};
        check_retract(e, 0, n);
        return e;
    }
    const Extr E = extr_plain(k - 1, n);
    const Ogposet OkDn = iterated_cylinder(simplex(n), k - 1);
    const Ogposet& V = E.j.source();
    ShapeBundle M = cylinder(V);
    const int m = k - 1 + n;  // dimension of E

    ShapeBundle A = cell_extension(OkDn, E.shape);
    Pushout W = pushout_inclusions(E.j, M.map("iota_minus"));
    Pasting AW = paste(A.shape, W.poset, m);
    ShapeBundle B = cell_extension(E.shape, OkDn);
    Pasting X = paste(AW.poset, B.shape, m);

    const OgpMap fromA = compose(AW.j1, X.j1), fromW = compose(AW.j2, X.j1);
    const OgpMap& fromB = X.j2;
    const OgpMap s = iterated_fattened_degeneracy(k - 1, n);
    const OgpMap& im = M.map("iota_minus");
    const OgpMap& ip = M.map("iota_plus");
    const int tv = top_of(V, "extraction core");

    Assignment a(X.poset.size());
    a.set(fromA(top_of(A.shape, "A")), im(tv), "top of A");
    for (int y = 0; y < OkDn.size(); ++y) {
        a.set(fromA(A.map("in")(y)), im(s(y)), "input of A");
        a.set(fromB(B.map("out")(y)), ip(s(y)), "output of B");
    }
    for (int e = 0; e < E.shape.size(); ++e) {
        a.set(fromA(A.map("out")(e)), im(E.r(e)), "output of A");
        a.set(fromB(B.map("in")(e)), ip(E.r(e)), "input of B");
    }
    for (int c = 0; c < M.shape.size(); ++c) a.set(fromW(W.j2(c)), c, "cylinder part");
    a.set(fromB(top_of(B.shape, "B")), ip(tv), "top of B");
    a.require_total("r_{k+1}");
    Extr out{X.poset, compose(W.j2, fromW), check_map(X.poset, M.shape, a.v)};
    check_retract(out, k, n);
    return out;
}

// Ẽᵏₙ with j: Oᵏ⁺ⁿ ↪ Ẽᵏₙ and the composite retraction onto Oᵏ⁺ⁿ.
Extr extr_tilde(int k, int n)
{
    const Extr E = extr_plain(k, n);
    if (n == 2) {
        auto iso = find_unique_iso(E.j.source(), globe(k + 2));
        ensure(static_cast<bool>(iso), "base extraction core is not a globe");
        return {E.shape, compose(inverse(*iso), E.j), compose(E.r, *iso)};
    }
    const Extr S = extr_tilde(k + 1, n - 1);
    const Ogposet& V = E.j.source();
    Substitution sub = substitution(E.shape, E.j.image(), S.shape);
    auto b = boundary_iso(V, V.all(), S.shape, S.shape.all());
    ensure(static_cast<bool>(b), "substituted boundary does not match");
    const ElementSet dV = whole_boundary(V);

    Assignment a(sub.shape.size());
    for (int w = 0; w < S.shape.size(); ++w) a.set(sub.inner(w), w, "inner part");
    for (int o = 0; o < sub.rest.poset.size(); ++o) {
        const int v = E.r(sub.rest.embed[o]);
        ensure(dV.test(v), "outer element retracts into the interior");
        a.set(sub.outer(o), (*b)[v], "outer part");
    }
    a.require_total("tilde retraction");
    OgpMap rho = check_map(sub.shape, S.shape, a.v);
    return {sub.shape, compose(S.j, sub.inner), compose(rho, S.r)};
}

}  // namespace

ShapeBundle extr(int k, int n, bool tilde)
{
    if (k < 0 || n < 2) fail(ErrorKind::IndexOutOfRange, "extraction needs k >= 0 and n >= 2");
    Extr e = tilde ? extr_tilde(k, n) : extr_plain(k, n);
    if (tilde && k == 0) {
        const Ogposet D = simplex(n);
        auto b = boundary_iso(D, D.all(), e.shape, e.shape.all());
        ensure(static_cast<bool>(b), "tilde extraction boundary does not match the simplex");
        const OgpMap an = a_map(n, true);
        for (int x : members_of(whole_boundary(D)))
            ensure(e.r((*b)[x]) == an(x), "tilde retraction disagrees with a_n on the boundary");
    }
    ShapeBundle r{e.shape, {}};
    r.maps.emplace("j", e.j);
    r.maps.emplace("retraction", e.r);
    return r;
}

const char* horn_kind_name(HornKind k)
{
    switch (k) {
    case HornKind::composition: return "composition";
    case HornKind::division: return "division";
    case HornKind::other: return "other";
    }
    return "other";
}

std::vector<Horn> horns(const Ogposet& W)
{
    const int top = top_of(W, "horn shape");
    const int n = W.dim() - 1;
    if (n < 0) fail(ErrorKind::NotAnAtom, "horns need an atom of dimension at least 1");

    std::optional<std::array<int, 3>> ternary;
    auto [lo, hi] = W.dim_range(n);
    if (n > 0 && hi - lo == 3) {
        for (Sign s : {Sign::minus, Sign::plus}) {
            std::vector<int> side, other;
            for (const Face& f : W.faces(top)) (f.sign == s ? side : other).push_back(f.elem);
            if (side.size() != 2) continue;
            const int a = side[0], b = side[1];
            const ElementSet ca = clos(W, singleton_set(W, a)), cb = clos(W, singleton_set(W, b));
            const ElementSet meet = ca & cb;
            auto before = [&](const ElementSet& x, const ElementSet& y) {
                return meet.is_subset_of(bound(W, x, n - 1, Sign::plus) & bound(W, y, n - 1, Sign::minus));
            };
            if (before(ca, cb)) ternary = std::array<int, 3>{other[0], a, b};
            else if (before(cb, ca)) ternary = std::array<int, 3>{other[0], b, a};
        }
    }

    std::vector<Horn> out;
    for (int e = lo; e < hi; ++e) {
        ElementSet L = W.all();
        L.reset(top);
        L.reset(e);
        HornKind kind = HornKind::other;
        for (Sign s : {Sign::minus, Sign::plus})
            if (L == bound(W, W.all(), n, s)) kind = HornKind::composition;
        if (kind == HornKind::other && ternary && (e == (*ternary)[1] || e == (*ternary)[2])) kind = HornKind::division;
        out.push_back({L, e, kind, ternary});
    }
    return out;
}

}  // namespace pasting

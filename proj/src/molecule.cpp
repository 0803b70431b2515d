#include "pasting/molecule.hpp"

#include <algorithm>
#include <functional>
#include <unordered_set>

namespace pasting {

namespace {

// The unique way to split U along k once the maximal elements of dimension > k
// are distributed as `a` (left) and the rest (right). Returns false if no split.
bool split_for(const Ogposet& P, const ElementSet& U, int k, const ElementSet& a, const ElementSet& b,
               const ElementSet& low, ElementSet& u1, ElementSet& u2)
{
    ElementSet c1 = clos(P, a | low);
    ElementSet c2 = clos(P, b | low);
    ElementSet inter = bound(P, c1, k, Sign::plus) | bound(P, c2, k, Sign::minus) | (c1 & c2);
    u1 = c1 | inter;
    u2 = c2 | inter;
    if (u1 == U || u2 == U) return false;
    ElementSet meet = u1 & u2;
    return meet == bound(P, u1, k, Sign::plus) && meet == bound(P, u2, k, Sign::minus);
}

}  // namespace

template <class Visit>
bool Recognizer::candidates(const ElementSet& U, bool all_partitions, Visit&& visit)
{
    const int n = set_dim(P_, U);
    std::vector<int> tops = members_of(maximal(P_, U));
    for (int k = n - 1; k >= 0; --k) {
        std::vector<int> high;
        ElementSet low(P_.size());
        for (int x : tops) {
            if (P_.dim(x) > k)
                high.push_back(x);
            else
                low.set(x);
        }
        const int r = static_cast<int>(high.size());
        if (r < 2) continue;
        auto attempt = [&](unsigned long mask) {
            ElementSet a(P_.size()), b(P_.size());
            for (int i = 0; i < r; ++i) (mask >> i & 1UL ? a : b).set(high[i]);
            ElementSet u1, u2;
            if (!split_for(P_, U, k, a, b, low, u1, u2)) return false;
            return visit(k, u1, u2);
        };
        // Single maximal element on one side first; this suffices for molecules.
        for (int i = 0; i < r; ++i)
            if (attempt(1UL << i)) return true;
        if (r > 2)
            for (int i = 0; i < r; ++i)
                if (attempt(((1UL << r) - 1) & ~(1UL << i))) return true;
        if (!all_partitions || r < 4 || r > cap_) continue;
        for (unsigned long mask = 1; mask + 1 < (1UL << r); ++mask) {
            int c = __builtin_popcountl(mask);
            if (c < 2 || c > r - 2) continue;
            if (attempt(mask)) return true;
        }
    }
    return false;
}

WitnessPtr Recognizer::molecule(const ElementSet& U)
{
    auto it = memo_.find(U);
    if (it != memo_.end()) return it->second;
    WitnessPtr result;
    if (greatest(P_, U)) {
        auto w = std::make_shared<Witness>();
        w->set = U;
        result = w;
    } else {
        for (bool full : {false, true}) {
            candidates(U, full, [&](int k, const ElementSet& u1, const ElementSet& u2) {
                WitnessPtr l = molecule(u1);
                if (!l) return false;
                WitnessPtr r = molecule(u2);
                if (!r) return false;
                auto w = std::make_shared<Witness>();
                w->set = U;
                w->k = k;
                w->left = l;
                w->right = r;
                result = w;
                return true;
            });
            if (result) break;
        }
    }
    memo_[U] = result;
    return result;
}

std::vector<Decomposition> Recognizer::decompositions(const ElementSet& U)
{
    auto it = all_memo_.find(U);
    if (it != all_memo_.end()) return it->second;
    std::vector<Decomposition> out;
    std::unordered_set<ElementSet, ElementSetHash> seen;
    candidates(U, true, [&](int k, const ElementSet& u1, const ElementSet& u2) {
        if (seen.insert(u1).second && molecule(u1) && molecule(u2)) out.push_back({k, u1, u2});
        return false;
    });
    all_memo_[U] = out;
    return out;
}

bool Recognizer::submolecule(const ElementSet& V, const ElementSet& U)
{
    if (V == U) return static_cast<bool>(molecule(U));
    if (!V.is_subset_of(U)) return false;
    auto& row = sub_memo_[V];
    auto it = row.find(U);
    if (it != row.end()) return it->second;
    bool found = false;
    for (const Decomposition& d : decompositions(U)) {
        if ((V.is_subset_of(d.left) && submolecule(V, d.left)) ||
            (V.is_subset_of(d.right) && submolecule(V, d.right))) {
            found = true;
            break;
        }
    }
    sub_memo_[V][U] = found;
    return found;
}

bool is_atom(const ClosedSubset& U) { return static_cast<bool>(greatest(U.host(), U.members())); }

WitnessPtr is_molecule(const ClosedSubset& U)
{
    Recognizer r(U.host());
    return r.molecule(U.members());
}

bool is_submolecule(const ClosedSubset& V, const ClosedSubset& U)
{
    if (!(V.host() == U.host())) fail(ErrorKind::HostMismatch, "subsets live in different posets");
    Recognizer r(U.host());
    return r.submolecule(V.members(), U.members());
}

namespace {

bool check_node(const Ogposet& P, const Witness& w)
{
    if (!is_closed(P, w.set)) return false;
    if (w.is_leaf()) return static_cast<bool>(greatest(P, w.set));
    if (!w.right || w.k < 0) return false;
    const ElementSet& l = w.left->set;
    const ElementSet& r = w.right->set;
    if ((l | r) != w.set || l == w.set || r == w.set) return false;
    if (w.k >= set_dim(P, w.set)) return false;
    ElementSet meet = l & r;
    if (meet != bound(P, l, w.k, Sign::plus) || meet != bound(P, r, w.k, Sign::minus)) return false;
    return check_node(P, *w.left) && check_node(P, *w.right);
}

}  // namespace

bool check_witness(const ClosedSubset& U, const Witness& w)
{
    if (static_cast<int>(w.set.size()) != U.host().size()) fail(ErrorKind::HostMismatch, "witness for another poset");
    return w.set == U.members() && check_node(U.host(), w);
}

bool spherical_equalities(const Ogposet& P, const ElementSet& U)
{
    const int n = set_dim(P, U);
    for (int k = 0; k < n; ++k) {
        ElementSet lhs = bound(P, U, k, Sign::plus) & bound(P, U, k, Sign::minus);
        ElementSet rhs = k == 0 ? P.none() : bound_both(P, U, k - 1);
        if (lhs != rhs) return false;
    }
    return true;
}

bool has_spherical_boundary(const ClosedSubset& U)
{
    if (!is_molecule(U)) fail(ErrorKind::NotAMolecule, "spherical boundary is defined for molecules");
    return spherical_equalities(U.host(), U.members());
}

bool is_spherical_molecule(const Ogposet& P)
{
    Recognizer r(P);
    return r.molecule(P.all()) && spherical_equalities(P, P.all());
}

ComplexCheck check_complex(const Ogposet& P, Level level)
{
    if (level == Level::thin) {
        ThinResult t = is_oriented_thin(P);
        if (t.thin) return {};
        return {false, t.upper,
                "interval [" + (t.lower < 0 ? std::string("bottom") : P.name(t.lower)) + ", " + P.name(t.upper) +
                    "] is not an oriented diamond"};
    }
    Recognizer rec(P);
    if (level == Level::molecule || level == Level::spherical) {
        if (!rec.molecule(P.all())) return {false, -1, "not a molecule"};
        if (level == Level::spherical && !spherical_equalities(P, P.all()))
            return {false, -1, "boundary is not spherical"};
        return {};
    }
    for (int x = 0; x < P.size(); ++x) {
        const int n = P.dim(x);
        if (n == 0) continue;
        ElementSet cl = singleton_set(P, x);
        for (Sign a : {Sign::minus, Sign::plus}) {
            ElementSet bx = bound(P, cl, n - 1, a);
            if (!rec.molecule(bx))
                return {false, x, std::string("boundary ") + sign_char(a) + " of " + P.name(x) + " is not a molecule"};
            for (Sign b : {Sign::minus, Sign::plus})
                if (bound(P, bound(P, cl, n - 1, b), n - 2, a) != bound(P, cl, n - 2, a))
                    return {false, x, "globularity fails at " + P.name(x)};
        }
        if (level == Level::regular && !spherical_equalities(P, cl))
            return {false, x, "atom " + P.name(x) + " does not have spherical boundary"};
    }
    return {};
}

namespace {

struct TopCells {
    int n;
    std::vector<int> cells;
    std::vector<std::vector<int>> preds;  // preds[i]: indices j with cells[j] before cells[i]
};

TopCells top_cells(const Ogposet& P, const ElementSet& U)
{
    TopCells t;
    t.n = set_dim(P, U);
    t.cells = members_of(maximal(P, U));
    const int m = static_cast<int>(t.cells.size());
    t.preds.resize(m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            if (i == j) continue;
            bool before = false;
            for (const Face& f : P.faces(t.cells[j]))
                if (f.sign == Sign::plus) {
                    auto s = P.cover_sign(t.cells[i], f.elem);
                    if (s && *s == Sign::minus) before = true;
                }
            if (before) t.preds[i].push_back(j);
        }
    return t;
}

bool is_cut(const Ogposet& P, const ElementSet& U, int n, const ElementSet& u1, const ElementSet& u2)
{
    ElementSet meet = u1 & u2;
    return (u1 | u2) == U && meet == bound(P, u1, n - 1, Sign::plus) && meet == bound(P, u2, n - 1, Sign::minus);
}

ElementSet closure_of(const Ogposet& P, const std::vector<int>& cells, const std::vector<char>& pick, bool want)
{
    ElementSet s(P.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        if (static_cast<bool>(pick[i]) == want) s.set(cells[i]);
    return clos(P, s);
}

}  // namespace

std::vector<int> layering(const ClosedSubset& U)
{
    const Ogposet& P = U.host();
    Profile prof = subset_profile(U);
    if (prof.dim < 0 || !prof.pure) fail(ErrorKind::NoLayering, "layerings exist only for pure molecules");
    TopCells t = top_cells(P, U.members());
    const int m = static_cast<int>(t.cells.size());
    if (m == 1) return t.cells;
    const int n = t.n;
    ElementSet in = bound(P, U.members(), n - 1, Sign::minus);
    ElementSet out = bound(P, U.members(), n - 1, Sign::plus);

    std::vector<char> chosen(m, 0);
    std::vector<int> order;
    std::unordered_set<std::string> dead;
    auto key = [&] { return std::string(chosen.begin(), chosen.end()); };
    std::function<bool()> go = [&]() -> bool {
        if (static_cast<int>(order.size()) == m) return true;
        if (dead.count(key())) return false;
        for (int i = 0; i < m; ++i) {
            if (chosen[i]) continue;
            bool ready = true;
            for (int j : t.preds[i])
                if (!chosen[j]) ready = false;
            if (!ready) continue;
            chosen[i] = 1;
            order.push_back(t.cells[i]);
            bool ok = static_cast<int>(order.size()) == m ||
                      is_cut(P, U.members(), n, in | closure_of(P, t.cells, chosen, true),
                             out | closure_of(P, t.cells, chosen, false));
            if (ok && go()) return true;
            order.pop_back();
            chosen[i] = 0;
        }
        dead.insert(key());
        return false;
    };
    if (!go()) fail(ErrorKind::NoLayering, "no ordering of top cells gives valid cuts");
    return order;
}

std::vector<BinarySplit> binary_splits(const ClosedSubset& U, long limit)
{
    const Ogposet& P = U.host();
    if (!has_spherical_boundary(U)) fail(ErrorKind::NotSpherical, "binary splits need spherical boundary");
    TopCells t = top_cells(P, U.members());
    const int m = static_cast<int>(t.cells.size());
    std::vector<BinarySplit> out;
    if (m < 2) return out;
    const int n = t.n;
    ElementSet in = bound(P, U.members(), n - 1, Sign::minus);
    ElementSet outb = bound(P, U.members(), n - 1, Sign::plus);
    Recognizer rec(P);

    // Topological order of the precedence relation, so downsets are built greedily.
    std::vector<int> topo;
    std::vector<char> placed(m, 0);
    while (static_cast<int>(topo.size()) < m) {
        bool progress = false;
        for (int i = 0; i < m; ++i) {
            if (placed[i]) continue;
            bool ready = true;
            for (int j : t.preds[i])
                if (!placed[j]) ready = false;
            if (ready) {
                placed[i] = 1;
                topo.push_back(i);
                progress = true;
            }
        }
        if (!progress) return out;  // cyclic precedence: no downset splits U
    }

    long visited = 0;
    std::vector<char> pick(m, 0);
    std::function<void(int)> go = [&](int pos) {
        if (pos == m) {
            int c = static_cast<int>(std::count(pick.begin(), pick.end(), 1));
            if (c == 0 || c == m) return;
            if (++visited > limit) fail(ErrorKind::Indeterminate, "binary split search exceeded its budget");
            BinarySplit s;
            s.u1 = closure_of(P, t.cells, pick, true);
            s.u2 = closure_of(P, t.cells, pick, false);
            ElementSet meet = s.u1 & s.u2;
            if (!meet.is_subset_of(bound(P, s.u1, n - 1, Sign::plus) & bound(P, s.u2, n - 1, Sign::minus))) return;
            s.u1_ext = s.u1 | in;
            s.u2_ext = s.u2 | outb;
            if (!is_cut(P, U.members(), n, s.u1_ext, s.u2_ext)) return;
            if (!rec.molecule(s.u1_ext) || !rec.molecule(s.u2_ext)) return;
            if (!rec.molecule(s.u1) || !rec.molecule(s.u2)) return;
            if (!spherical_equalities(P, s.u1) || !spherical_equalities(P, s.u2)) return;
            if (!rec.submolecule(s.u1, s.u1_ext) || !rec.submolecule(s.u2, s.u2_ext)) return;
            out.push_back(std::move(s));
            return;
        }
        int i = topo[pos];
        bool ready = true;
        for (int j : t.preds[i])
            if (!pick[j]) ready = false;
        if (ready) {
            pick[i] = 1;
            go(pos + 1);
            pick[i] = 0;
        }
        go(pos + 1);
    };
    go(0);
    return out;
}

std::unique_ptr<MergerTree> merger_tree(const ClosedSubset& U)
{
    auto node = std::make_unique<MergerTree>();
    node->label = U.members();
    auto splits = binary_splits(U);
    if (splits.empty()) return node;
    node->left = merger_tree(ClosedSubset::trusted(U.host(), splits.front().u1));
    node->right = merger_tree(ClosedSubset::trusted(U.host(), splits.front().u2));
    return node;
}

std::optional<std::vector<int>> boundary_iso(const Ogposet& U, const ElementSet& bu, const Ogposet& V,
                                             const ElementSet& bv)
{
    const int n = set_dim(U, bu);
    if (n != set_dim(V, bv)) return std::nullopt;
    std::vector<int> a(U.size(), -1);
    if (n <= 0) return a;
    for (Sign s : {Sign::minus, Sign::plus}) {
        Restriction ru = restrict_to(U, bound(U, bu, n - 1, s));
        Restriction rv = restrict_to(V, bound(V, bv, n - 1, s));
        auto iso = find_unique_iso(ru.poset, rv.poset);
        if (!iso) return std::nullopt;
        for (int i = 0; i < ru.poset.size(); ++i) {
            int x = ru.embed[i], y = rv.embed[(*iso)(i)];
            if (a[x] >= 0 && a[x] != y) return std::nullopt;
            a[x] = y;
        }
    }
    return a;
}

Pasting paste(const Ogposet& U, const Ogposet& V, int k)
{
    Restriction ru = restrict_to(U, bound(U, U.all(), k, Sign::plus));
    Restriction rv = restrict_to(V, bound(V, V.all(), k, Sign::minus));
    auto iso = find_unique_iso(ru.poset, rv.poset);
    if (!iso) fail(ErrorKind::BoundaryMismatch, "output " + std::to_string(k) + "-boundary does not match input");
    OgpMap i1 = inclusion_of(U, ru);
    OgpMap i2 = compose(*iso, inclusion_of(V, rv));
    Pushout po = pushout_inclusions(i1, i2);

    const Ogposet& R = po.poset;
    ElementSet l = po.j1.image(), r = po.j2.image();
    ElementSet meet = l & r;
    ensure(meet == bound(R, l, k, Sign::plus) && meet == bound(R, r, k, Sign::minus), "pasting condition fails");
    const int n = R.dim();
    if (U.dim() == n && V.dim() == n && k < n - 1)
        for (Sign s : {Sign::minus, Sign::plus})
            ensure(bound(R, R.all(), n - 1, s) ==
                       (po.j1.image(bound(U, U.all(), n - 1, s)) | po.j2.image(bound(V, V.all(), n - 1, s))),
                   "boundary of a pasting is not the pasting of boundaries");
    return {R, po.j1, po.j2};
}

}  // namespace pasting

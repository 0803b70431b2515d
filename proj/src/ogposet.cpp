#include "pasting/ogposet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace pasting {

const char* kind_name(ErrorKind k)
{
    switch (k) {
    case ErrorKind::NotGraded: return "NotGraded";
    case ErrorKind::CyclicCovers: return "CyclicCovers";
    case ErrorKind::DuplicateEdge: return "DuplicateEdge";
    case ErrorKind::TransitiveEdge: return "TransitiveEdge";
    case ErrorKind::DimMismatch: return "DimMismatch";
    case ErrorKind::UnknownIndex: return "UnknownIndex";
    case ErrorKind::HostMismatch: return "HostMismatch";
    case ErrorKind::NotAMolecule: return "NotAMolecule";
    case ErrorKind::NoLayering: return "NoLayering";
    case ErrorKind::NotSpherical: return "NotSpherical";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::NotAMap: return "NotAMap";
    case ErrorKind::SizeLimit: return "SizeLimit";
    case ErrorKind::NotUnique: return "NotUnique";
    case ErrorKind::OrientationConflict: return "OrientationConflict";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::QuotientInvalid: return "QuotientInvalid";
    case ErrorKind::NotSubmolecule: return "NotSubmolecule";
    case ErrorKind::NotAnAtom: return "NotAnAtom";
    case ErrorKind::Indeterminate: return "Indeterminate";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

std::size_t ElementSetHash::operator()(const ElementSet& s) const
{
    std::size_t h = s.size();
    std::vector<std::uint64_t> blocks;
    boost::to_block_range(s, std::back_inserter(blocks));
    for (auto b : blocks) h ^= std::hash<std::uint64_t>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

struct Ogposet::Data {
    std::vector<int> dims;
    std::vector<std::string> names;
    std::vector<std::vector<Face>> faces;
    std::vector<std::vector<Face>> cofaces;
    std::unordered_map<std::string, int> by_name;
    std::vector<int> dim_start;  // dim_start[d] .. dim_start[d+1]
    std::size_t ncovers = 0;
};

struct OgposetFactory {
    static Ogposet make(std::shared_ptr<const Ogposet::Data> d) { return Ogposet(std::move(d)); }
};

namespace {

const std::shared_ptr<const Ogposet::Data>& empty_data()
{
    static const std::shared_ptr<const Ogposet::Data> d = [] {
        auto e = std::make_shared<Ogposet::Data>();
        e->dim_start = {0};
        return e;
    }();
    return d;
}

}  // namespace

Ogposet::Ogposet() : d_(empty_data()) {}

int Ogposet::size() const { return static_cast<int>(d_->dims.size()); }
int Ogposet::dim(int x) const { return d_->dims[x]; }
int Ogposet::dim() const { return d_->dims.empty() ? -1 : d_->dims.back(); }
const std::string& Ogposet::name(int x) const { return d_->names[x]; }
const std::vector<Face>& Ogposet::faces(int x) const { return d_->faces[x]; }
const std::vector<Face>& Ogposet::cofaces(int x) const { return d_->cofaces[x]; }
std::size_t Ogposet::num_covers() const { return d_->ncovers; }

std::optional<Sign> Ogposet::cover_sign(int upper, int lower) const
{
    for (const Face& f : d_->faces[upper])
        if (f.elem == lower) return f.sign;
    return std::nullopt;
}

std::optional<int> Ogposet::find(std::string_view name) const
{
    auto it = d_->by_name.find(std::string(name));
    if (it == d_->by_name.end()) return std::nullopt;
    return it->second;
}

int Ogposet::index_of(std::string_view name) const
{
    auto i = find(name);
    if (!i) fail(ErrorKind::UnknownIndex, "no element named '" + std::string(name) + "'", std::string(name));
    return *i;
}

std::pair<int, int> Ogposet::dim_range(int d) const
{
    if (d < 0 || d + 1 >= static_cast<int>(d_->dim_start.size())) return {0, 0};
    return {d_->dim_start[d], d_->dim_start[d + 1]};
}

ElementSet Ogposet::none() const { return ElementSet(size()); }
ElementSet Ogposet::all() const
{
    ElementSet s(size());
    s.set();
    return s;
}

bool Ogposet::operator==(const Ogposet& o) const
{
    if (d_ == o.d_) return true;
    if (size() != o.size() || d_->ncovers != o.d_->ncovers) return false;
    for (int x = 0; x < size(); ++x) {
        if (d_->dims[x] != o.d_->dims[x] || d_->names[x] != o.d_->names[x]) return false;
        const auto& a = d_->faces[x];
        const auto& b = o.d_->faces[x];
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i].elem != b[i].elem || a[i].sign != b[i].sign) return false;
    }
    return true;
}

Built build_ogp_indexed(const std::vector<ElementSpec>& elements, const std::vector<CoverSpec>& covers,
                        bool rename_duplicates)
{
    const int n = static_cast<int>(elements.size());
    auto label = [&](int i) { return elements[i].name.empty() ? std::to_string(i) : elements[i].name; };

    std::vector<std::vector<Face>> down(n);
    std::set<std::pair<int, int>> seen;
    for (const CoverSpec& c : covers) {
        if (c.upper < 0 || c.upper >= n || c.lower < 0 || c.lower >= n)
            fail(ErrorKind::UnknownIndex, "cover refers to an undeclared element");
        if (!seen.insert({c.upper, c.lower}).second)
            fail(ErrorKind::DuplicateEdge, "duplicate cover " + label(c.upper) + " -> " + label(c.lower),
                 label(c.upper) + "->" + label(c.lower));
        down[c.upper].push_back({c.lower, c.sign});
    }
    for (auto& v : down) std::sort(v.begin(), v.end(), [](const Face& a, const Face& b) { return a.elem < b.elem; });

    // Topological order from minimal elements upward.
    std::vector<std::vector<int>> up(n);
    std::vector<int> pending(n);
    for (int u = 0; u < n; ++u) {
        pending[u] = static_cast<int>(down[u].size());
        for (const Face& f : down[u]) up[f.elem].push_back(u);
    }
    std::vector<int> order;
    order.reserve(n);
    for (int x = 0; x < n; ++x)
        if (pending[x] == 0) order.push_back(x);
    for (std::size_t i = 0; i < order.size(); ++i)
        for (int u : up[order[i]])
            if (--pending[u] == 0) order.push_back(u);
    if (static_cast<int>(order.size()) != n) {
        for (int x = 0; x < n; ++x)
            if (pending[x] > 0) fail(ErrorKind::CyclicCovers, "covering relation has a cycle", label(x));
    }

    std::vector<ElementSet> below(n, ElementSet(n));
    for (int x : order)
        for (const Face& f : down[x]) {
            below[x] |= below[f.elem];
            below[x].set(f.elem);
        }
    for (int u = 0; u < n; ++u)
        for (const Face& f : down[u])
            for (const Face& g : down[u])
                if (g.elem != f.elem && below[g.elem].test(f.elem))
                    fail(ErrorKind::TransitiveEdge,
                         "cover " + label(u) + " -> " + label(f.elem) + " is implied by a longer path",
                         label(u) + "->" + label(f.elem));

    std::vector<int> dims(n, 0);
    for (int x : order) {
        if (down[x].empty()) continue;
        int d = dims[down[x].front().elem];
        for (const Face& f : down[x])
            if (dims[f.elem] != d)
                fail(ErrorKind::NotGraded, "descending paths from " + label(x) + " have unequal length", label(x));
        dims[x] = d + 1;
    }
    for (int x = 0; x < n; ++x)
        if (elements[x].dim && *elements[x].dim != dims[x])
            fail(ErrorKind::DimMismatch,
                 "declared dim " + std::to_string(*elements[x].dim) + " of " + label(x) + " but grading gives " +
                     std::to_string(dims[x]),
                 label(x));

    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::stable_sort(perm.begin(), perm.end(), [&](int a, int b) { return dims[a] < dims[b]; });
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[perm[i]] = i;

    auto data = std::make_shared<Ogposet::Data>();
    data->dims.resize(n);
    data->names.resize(n);
    data->faces.resize(n);
    data->cofaces.resize(n);
    for (int i = 0; i < n; ++i) {
        int src = perm[i];
        data->dims[i] = dims[src];
        std::string nm = label(src);
        if (data->by_name.count(nm)) {
            if (!rename_duplicates) fail(ErrorKind::ValidationError, "duplicate element id '" + nm + "'", nm);
            while (data->by_name.count(nm)) nm += "'";
        }
        data->by_name.emplace(nm, i);
        data->names[i] = std::move(nm);
        for (const Face& f : down[src]) {
            data->faces[i].push_back({position[f.elem], f.sign});
            data->cofaces[position[f.elem]].push_back({i, f.sign});
        }
    }
    for (int i = 0; i < n; ++i) {
        auto by_elem = [](const Face& a, const Face& b) { return a.elem < b.elem; };
        std::sort(data->faces[i].begin(), data->faces[i].end(), by_elem);
        std::sort(data->cofaces[i].begin(), data->cofaces[i].end(), by_elem);
    }
    data->ncovers = covers.size();
    int top = n ? data->dims.back() : -1;
    data->dim_start.assign(top + 2, n);
    for (int i = n - 1; i >= 0; --i) data->dim_start[data->dims[i]] = i;
    for (int d = top; d >= 0; --d) data->dim_start[d] = std::min(data->dim_start[d], data->dim_start[d + 1]);

    return {OgposetFactory::make(std::move(data)), std::move(position)};
}

Ogposet build_ogp(const std::vector<ElementSpec>& elements, const std::vector<CoverSpec>& covers)
{
    return build_ogp_indexed(elements, covers).poset;
}

ElementSet clos(const Ogposet& P, const ElementSet& S)
{
    ElementSet out = S;
    std::vector<int> stack = members_of(S);
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        for (const Face& f : P.faces(x))
            if (!out.test(f.elem)) {
                out.set(f.elem);
                stack.push_back(f.elem);
            }
    }
    return out;
}

bool is_closed(const Ogposet& P, const ElementSet& S)
{
    for (auto x = S.find_first(); x != ElementSet::npos; x = S.find_next(x))
        for (const Face& f : P.faces(static_cast<int>(x)))
            if (!S.test(f.elem)) return false;
    return true;
}

int set_dim(const Ogposet& P, const ElementSet& U)
{
    for (int x = P.size() - 1; x >= 0; --x)
        if (U.test(x)) return P.dim(x);
    return -1;
}

ElementSet maximal(const Ogposet& P, const ElementSet& U)
{
    ElementSet out(P.size());
    for (auto x = U.find_first(); x != ElementSet::npos; x = U.find_next(x)) {
        bool top = true;
        for (const Face& c : P.cofaces(static_cast<int>(x)))
            if (U.test(c.elem)) {
                top = false;
                break;
            }
        if (top) out.set(x);
    }
    return out;
}

namespace {

std::size_t first_from(const ElementSet& S, int i)
{
    if (i >= static_cast<int>(S.size())) return ElementSet::npos;
    return S.test(i) ? static_cast<std::size_t>(i) : S.find_next(i);
}

}  // namespace

ElementSet granular(const Ogposet& P, const ElementSet& U, int n, Sign a)
{
    ElementSet out(P.size());
    auto [lo, hi] = P.dim_range(n);
    if (lo >= hi) return out;
    for (auto x = first_from(U, lo); x != ElementSet::npos && static_cast<int>(x) < hi; x = U.find_next(x)) {
        bool ok = true;
        for (const Face& c : P.cofaces(static_cast<int>(x)))
            if (U.test(c.elem) && c.sign != a) {
                ok = false;
                break;
            }
        if (ok) out.set(x);
    }
    return out;
}

namespace {

// Elements of U with nothing of dimension > n above them in U.
ElementSet low_part(const Ogposet& P, const ElementSet& U, int n)
{
    if (n + 1 > P.dim()) return U;
    const int start = P.dim_range(n + 1).first;
    ElementSet high(P.size());
    for (auto x = first_from(U, start); x != ElementSet::npos; x = U.find_next(x)) high.set(x);
    return U - clos(P, high);
}

}  // namespace

ElementSet bound(const Ogposet& P, const ElementSet& U, int n, Sign a)
{
    if (n < 0) return P.none();
    if (n >= set_dim(P, U)) return U;
    return clos(P, granular(P, U, n, a)) | low_part(P, U, n);
}

ElementSet bound_both(const Ogposet& P, const ElementSet& U, int n)
{
    return bound(P, U, n, Sign::minus) | bound(P, U, n, Sign::plus);
}

std::vector<int> members_of(const ElementSet& S)
{
    std::vector<int> out;
    out.reserve(S.count());
    for (auto x = S.find_first(); x != ElementSet::npos; x = S.find_next(x)) out.push_back(static_cast<int>(x));
    return out;
}

ElementSet singleton_set(const Ogposet& P, int x)
{
    ElementSet s(P.size());
    s.set(x);
    return clos(P, s);
}

std::optional<int> greatest(const Ogposet& P, const ElementSet& U)
{
    ElementSet m = maximal(P, U);
    if (m.count() != 1) return std::nullopt;
    return static_cast<int>(m.find_first());
}

ClosedSubset::ClosedSubset(Ogposet host, ElementSet members) : host_(std::move(host)), members_(std::move(members))
{
    if (static_cast<int>(members_.size()) != host_.size())
        fail(ErrorKind::HostMismatch, "subset size does not match its host");
    if (!is_closed(host_, members_)) fail(ErrorKind::PreconditionFailed, "subset is not closed");
}

ClosedSubset ClosedSubset::trusted(Ogposet host, ElementSet members)
{
    return ClosedSubset(std::move(host), std::move(members), true);
}

ClosedSubset whole(const Ogposet& P) { return ClosedSubset::trusted(P, P.all()); }

ClosedSubset closure(const Ogposet& P, const std::vector<int>& S)
{
    ElementSet s(P.size());
    for (int x : S) {
        if (x < 0 || x >= P.size()) fail(ErrorKind::UnknownIndex, "index " + std::to_string(x) + " out of range");
        s.set(x);
    }
    return ClosedSubset::trusted(P, clos(P, s));
}

void check_host(const Ogposet& P, const ClosedSubset& U)
{
    if (!(U.host() == P)) fail(ErrorKind::HostMismatch, "subset belongs to a different poset");
}

ClosedSubset boundary(const ClosedSubset& U, int n, Sign a)
{
    return ClosedSubset::trusted(U.host(), bound(U.host(), U.members(), n, a));
}

ClosedSubset boundary_both(const ClosedSubset& U, int n)
{
    return ClosedSubset::trusted(U.host(), bound_both(U.host(), U.members(), n));
}

ElementSet boundary_set(const ClosedSubset& U, int n, Side side, bool gran)
{
    const Ogposet& P = U.host();
    auto one = [&](Sign a) { return gran ? granular(P, U.members(), n, a) : bound(P, U.members(), n, a); };
    switch (side) {
    case Side::minus: return one(Sign::minus);
    case Side::plus: return one(Sign::plus);
    case Side::both: return one(Sign::minus) | one(Sign::plus);
    }
    return P.none();
}

ThinResult is_oriented_thin(const Ogposet& P)
{
    for (int z = 0; z < P.size(); ++z) {
        if (P.dim(z) == 1) {
            const auto& fs = P.faces(z);
            if (fs.size() != 2 || fs[0].sign == fs[1].sign) return {false, -1, z};
        }
        if (P.dim(z) < 2) continue;
        std::map<int, std::vector<Sign>> through;
        for (const Face& y : P.faces(z))
            for (const Face& x : P.faces(y.elem)) through[x.elem].push_back(y.sign * x.sign);
        for (const auto& [x, prods] : through)
            if (prods.size() != 2 || prods[0] == prods[1]) return {false, x, z};
    }
    return {};
}

Restriction restrict_to(const Ogposet& P, const ElementSet& U)
{
    std::vector<int> embed = members_of(U);
    std::vector<int> local(P.size(), -1);
    for (std::size_t i = 0; i < embed.size(); ++i) local[embed[i]] = static_cast<int>(i);
    std::vector<ElementSpec> els;
    std::vector<CoverSpec> cov;
    for (int x : embed) {
        els.push_back({P.name(x), P.dim(x)});
        for (const Face& f : P.faces(x)) {
            if (local[f.elem] < 0) fail(ErrorKind::PreconditionFailed, "restriction to a non-closed subset");
            cov.push_back({local[x], local[f.elem], f.sign});
        }
    }
    Built b = build_ogp_indexed(els, cov);
    // Restriction preserves the (dim, index) order, so positions are the identity.
    for (std::size_t i = 0; i < embed.size(); ++i) ensure(b.position[i] == static_cast<int>(i), "restriction order");
    return {b.poset, embed};
}

Restriction skeleton(const Ogposet& P, int n)
{
    ElementSet s(P.size());
    for (int x = 0; x < P.size(); ++x)
        if (P.dim(x) <= n) s.set(x);
    return restrict_to(P, s);
}

Profile subset_profile(const ClosedSubset& U)
{
    Profile p;
    p.dim = U.dim();
    p.maximal = members_of(maximal(U.host(), U.members()));
    for (int x : p.maximal)
        if (U.host().dim(x) != p.dim) p.pure = false;
    return p;
}

std::vector<CoverSpec> cover_list(const Ogposet& P)
{
    std::vector<CoverSpec> out;
    for (int x = 0; x < P.size(); ++x)
        for (const Face& f : P.faces(x)) out.push_back({x, f.elem, f.sign});
    return out;
}

std::vector<ElementSpec> element_list(const Ogposet& P)
{
    std::vector<ElementSpec> out;
    for (int x = 0; x < P.size(); ++x) out.push_back({P.name(x), P.dim(x)});
    return out;
}

Ogposet with_signs(const Ogposet& P, const std::vector<CoverSpec>& covers)
{
    return build_ogp(element_list(P), covers);
}

}  // namespace pasting

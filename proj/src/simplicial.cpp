#include "pasting/simplicial.hpp"

#include <algorithm>
#include <set>

#include "pasting/constructions.hpp"
#include "pasting/errors.hpp"

namespace pasting {

namespace {

using SparseRow = std::map<int, BigInt>;

BigInt abs_of(const BigInt& v)
{
    return v < 0 ? BigInt(-v) : v;
}

// Dense SNF of what is left after unit pivots; returns the nonzero diagonal.
std::vector<BigInt> dense_factors(std::vector<std::vector<BigInt>> a)
{
    const std::size_t m = a.size(), n = m ? a[0].size() : 0;
    std::vector<BigInt> out;
    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            std::size_t pi = m, pj = n;
            for (std::size_t i = t; i < m; ++i)
                for (std::size_t j = t; j < n; ++j)
                    if (a[i][j] != 0 && (pi == m || abs_of(a[i][j]) < abs_of(a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return out;
            std::swap(a[t], a[pi]);
            for (auto& row : a) std::swap(row[t], row[pj]);

            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0) continue;
                BigInt q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
                if (a[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0) continue;
                BigInt q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
                if (a[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            std::size_t bad = m;
            for (std::size_t i = t + 1; i < m && bad == m; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            for (std::size_t j = t; j < n; ++j) a[t][j] += a[bad][j];
        }
        out.push_back(abs_of(a[t][t]));
    }
    return out;
}

}  // namespace

std::size_t OrderedComplex::count(int k) const
{
    return k >= 0 && k < static_cast<int>(chains.size()) ? chains[k].size() : 0;
}

OrderedComplex nerve(const Ogposet& P)
{
    return nerve(P, P.all());
}

OrderedComplex nerve(const Ogposet& P, const ElementSet& U)
{
    const std::vector<int> elems = members_of(U);
    std::vector<std::vector<int>> above(P.size());
    for (int z : elems) {
        ElementSet below = clos(P, singleton_set(P, z)) & U;
        below.reset(z);
        for (int y : members_of(below)) above[y].push_back(z);
    }
    OrderedComplex C;
    if (elems.empty()) return C;
    C.chains.emplace_back();
    for (int x : elems) C.chains[0].push_back({x});
    for (std::size_t k = 0; !C.chains[k].empty(); ++k) {
        std::vector<std::vector<int>> next;
        for (const auto& ch : C.chains[k])
            for (int z : above[ch.back()]) {
                auto longer = ch;
                longer.push_back(z);
                next.push_back(std::move(longer));
            }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        C.chains.push_back(std::move(next));
    }
    return C;
}

BigInt IntegerMatrix::at(int r, int c) const
{
    auto it = entries_.find({r, c});
    return it == entries_.end() ? BigInt(0) : it->second;
}

void IntegerMatrix::set(int r, int c, const BigInt& v)
{
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) fail(ErrorKind::IndexOutOfRange, "matrix index out of range");
    if (v == 0) entries_.erase({r, c});
    else entries_[{r, c}] = v;
}

void IntegerMatrix::add(int r, int c, const BigInt& v)
{
    set(r, c, at(r, c) + v);
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& other) const
{
    if (cols_ != other.rows_) fail(ErrorKind::DimMismatch, "matrix shapes do not compose");
    std::vector<std::vector<std::pair<int, BigInt>>> by_row(other.rows_);
    for (const auto& [rc, v] : other.entries_) by_row[rc.first].push_back({rc.second, v});
    std::map<std::pair<int, int>, BigInt> acc;
    for (const auto& [rc, v] : entries_)
        for (const auto& [c, w] : by_row[rc.second]) acc[{rc.first, c}] += v * w;
    IntegerMatrix out(rows_, other.cols_);
    for (const auto& [rc, v] : acc)
        if (v != 0) out.entries_[rc] = v;
    return out;
}

std::vector<IntegerMatrix> boundary_matrices(const OrderedComplex& C)
{
    std::vector<IntegerMatrix> out;
    for (int k = 1; k <= C.top_degree(); ++k) {
        std::map<std::vector<int>, int> row_of;
        for (std::size_t i = 0; i < C.chains[k - 1].size(); ++i) row_of[C.chains[k - 1][i]] = static_cast<int>(i);
        IntegerMatrix d(static_cast<int>(C.chains[k - 1].size()), static_cast<int>(C.chains[k].size()));
        for (std::size_t j = 0; j < C.chains[k].size(); ++j) {
            const auto& ch = C.chains[k][j];
            for (std::size_t i = 0; i < ch.size(); ++i) {
                auto face = ch;
                face.erase(face.begin() + static_cast<long>(i));
                auto it = row_of.find(face);
                ensure(it != row_of.end(), "nerve is not closed under faces");
                d.add(it->second, static_cast<int>(j), i % 2 == 0 ? 1 : -1);
            }
        }
        out.push_back(std::move(d));
    }
    for (std::size_t k = 1; k < out.size(); ++k) ensure((out[k - 1] * out[k]).is_zero(), "boundary squares to nonzero");
    return out;
}

SmithForm smith_normal_form(const IntegerMatrix& M)
{
    std::vector<SparseRow> rows(M.rows());
    std::vector<std::set<int>> cols(M.cols());
    for (const auto& [rc, v] : M.entries()) {
        rows[rc.first][rc.second] = v;
        cols[rc.second].insert(rc.first);
    }
    std::vector<char> row_alive(M.rows(), 1);
    SmithForm sf;

    // Eliminate unit pivots first; these contribute factor 1 and keep the matrix sparse.
    for (;;) {
        int pr = -1, pc = -1;
        std::size_t best = 0;
        for (int r = 0; r < M.rows(); ++r) {
            if (!row_alive[r]) continue;
            for (const auto& [c, v] : rows[r]) {
                if (v != 1 && v != -1) continue;
                std::size_t cost = (rows[r].size() - 1) * (cols[c].size() - 1);
                if (pr < 0 || cost < best) {
                    pr = r;
                    pc = c;
                    best = cost;
                }
            }
        }
        if (pr < 0) break;
        const BigInt p = rows[pr][pc];
        std::vector<int> targets(cols[pc].begin(), cols[pc].end());
        for (int r : targets) {
            if (r == pr) continue;
            const BigInt f = rows[r][pc] * p;
            for (const auto& [c, v] : rows[pr]) {
                BigInt& slot = rows[r][c];
                slot -= f * v;
                if (slot == 0) {
                    rows[r].erase(c);
                    cols[c].erase(r);
                } else {
                    cols[c].insert(r);
                }
            }
        }
        for (const auto& [c, v] : rows[pr]) cols[c].erase(pr);
        rows[pr].clear();
        row_alive[pr] = 0;
        sf.factors.push_back(1);
        ++sf.rank;
    }

    std::vector<int> live_rows, live_cols;
    for (int r = 0; r < M.rows(); ++r)
        if (row_alive[r] && !rows[r].empty()) live_rows.push_back(r);
    for (int c = 0; c < M.cols(); ++c)
        if (!cols[c].empty()) live_cols.push_back(c);
    if (live_rows.empty()) return sf;
    std::vector<std::vector<BigInt>> dense(live_rows.size(), std::vector<BigInt>(live_cols.size()));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (std::size_t j = 0; j < live_cols.size(); ++j) {
            auto it = rows[live_rows[i]].find(live_cols[j]);
            if (it != rows[live_rows[i]].end()) dense[i][j] = it->second;
        }
    for (const BigInt& f : dense_factors(std::move(dense))) {
        sf.factors.push_back(f);
        ++sf.rank;
    }
    return sf;
}

std::string HomologyGroup::str() const
{
    if (is_zero()) return "0";
    std::string s;
    auto add = [&](const std::string& part) { s += (s.empty() ? "" : " ⊕ ") + part; };
    if (betti == 1) add("Z");
    else if (betti > 1) add("Z^" + std::to_string(betti));
    for (const BigInt& t : torsion) add("Z/" + t.str());
    return s;
}

const HomologyGroup& HomologySummary::at(int degree) const
{
    static const HomologyGroup zero;
    const int i = degree - min_degree;
    return i >= 0 && i < static_cast<int>(groups.size()) ? groups[i] : zero;
}

bool HomologySummary::is_acyclic() const
{
    return std::all_of(groups.begin(), groups.end(), [](const HomologyGroup& g) { return g.is_zero(); });
}

std::string HomologySummary::str() const
{
    std::string s;
    for (std::size_t i = 0; i < groups.size(); ++i)
        s += "H_" + std::to_string(min_degree + static_cast<int>(i)) + " = " + groups[i].str() + "\n";
    return s;
}

HomologySummary homology(const OrderedComplex& C, bool reduced)
{
    const int top = C.top_degree();
    std::vector<IntegerMatrix> d = boundary_matrices(C);
    std::vector<SmithForm> snf;
    for (const auto& m : d) snf.push_back(smith_normal_form(m));
    // rank_in[k]: rank of the differential leaving degree k; rank_out[k]: rank of the one arriving.
    auto rank_from = [&](int k) -> int {
        if (k >= 1 && k <= top) return snf[k - 1].rank;
        if (k == 0 && reduced && C.count(0) > 0) return 1;
        return 0;
    };
    HomologySummary h;
    h.min_degree = reduced ? -1 : 0;
    for (int k = h.min_degree; k <= std::max(top, h.min_degree); ++k) {
        const long long n_k = k == -1 ? 1 : static_cast<long long>(C.count(k));
        HomologyGroup g;
        g.betti = static_cast<int>(n_k - rank_from(k) - rank_from(k + 1));
        if (k + 1 >= 1 && k + 1 <= top)
            for (const BigInt& f : snf[k].factors)
                if (f > 1) g.torsion.push_back(f);
        h.groups.push_back(std::move(g));
    }
    return h;
}

EulerPair euler(const Ogposet& P)
{
    return euler(P, P.all());
}

EulerPair euler(const Ogposet& P, const ElementSet& U)
{
    EulerPair e;
    for (int x : members_of(U)) e.by_elements += P.dim(x) % 2 == 0 ? 1 : -1;
    OrderedComplex C = nerve(P, U);
    for (int k = 0; k <= C.top_degree(); ++k)
        e.by_chains += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(C.count(k));
    ensure(e.by_elements == e.by_chains, "Euler characteristics disagree");
    return e;
}

std::vector<int> last_vertex_map(int n)
{
    if (n < 0) fail(ErrorKind::IndexOutOfRange, "last_vertex_map needs n >= 0");
    const Ogposet D = simplex(n);
    const std::string top = "⊤";
    std::vector<int> g(D.size());
    for (int x = 0; x < D.size(); ++x) {
        const std::string& w = D.name(x);
        const std::size_t letters = w.size() / top.size();
        int last = -1;
        for (std::size_t i = 0; i < letters; ++i)
            if (w.compare(i * top.size(), top.size(), top) == 0) last = static_cast<int>(i);
        ensure(last >= 0, "simplex element without a vertex");
        g[x] = last;
    }
    for (int x = 0; x < D.size(); ++x)
        for (const Face& f : D.faces(x)) ensure(g[f.elem] <= g[x], "last vertex map is not monotone");
    return g;
}

}  // namespace pasting

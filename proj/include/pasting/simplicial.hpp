#pragma once

#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pasting/ogposet.hpp"

namespace pasting {

using BigInt = boost::multiprecision::cpp_int;

// Strict chains x₀ < … < x_k of a poset, by degree k. Chains are sorted index tuples.
struct OrderedComplex {
    std::vector<std::vector<std::vector<int>>> chains;

    int top_degree() const { return static_cast<int>(chains.size()) - 1; }
    std::size_t count(int k) const;
};

OrderedComplex nerve(const Ogposet& P);
OrderedComplex nerve(const Ogposet& P, const ElementSet& U);

// Sparse integer matrix, entries keyed by (row, col); zero entries are never stored.
class IntegerMatrix {
public:
    IntegerMatrix(int rows = 0, int cols = 0) : rows_(rows), cols_(cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    BigInt at(int r, int c) const;
    void set(int r, int c, const BigInt& v);
    void add(int r, int c, const BigInt& v);
    const std::map<std::pair<int, int>, BigInt>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    IntegerMatrix operator*(const IntegerMatrix& other) const;
    bool operator==(const IntegerMatrix& other) const = default;

private:
    int rows_, cols_;
    std::map<std::pair<int, int>, BigInt> entries_;
};

// ∂_k for k = 1..top; element [k-1] maps degree-k chains (columns) to degree-(k-1) chains (rows).
std::vector<IntegerMatrix> boundary_matrices(const OrderedComplex& C);

struct SmithForm {
    std::vector<BigInt> factors;  // nonzero invariant factors, each dividing the next
    int rank = 0;
};
SmithForm smith_normal_form(const IntegerMatrix& M);

struct HomologyGroup {
    int betti = 0;
    std::vector<BigInt> torsion;
    bool is_zero() const { return betti == 0 && torsion.empty(); }
    std::string str() const;  // "Z ⊕ Z/2", or "0"
};

struct HomologySummary {
    int min_degree = 0;  // -1 in reduced mode
    std::vector<HomologyGroup> groups;

    const HomologyGroup& at(int degree) const;
    bool is_acyclic() const;
    std::string str() const;  // one "H_k = ..." line per degree
};

HomologySummary homology(const OrderedComplex& C, bool reduced);

struct EulerPair {
    long long by_elements = 0;
    long long by_chains = 0;
};
EulerPair euler(const Ogposet& P);
EulerPair euler(const Ogposet& P, const ElementSet& U);

// γₙ: Δⁿ → [n] as an assignment of simplex elements to vertices 0..n.
std::vector<int> last_vertex_map(int n);

}  // namespace pasting

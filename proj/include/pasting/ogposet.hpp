#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pasting/errors.hpp"

namespace pasting {

enum class Sign : std::int8_t { minus = -1, plus = 1 };

inline Sign operator*(Sign a, Sign b)
{
    return a == b ? Sign::plus : Sign::minus;
}
inline Sign operator-(Sign a)
{
    return a == Sign::plus ? Sign::minus : Sign::plus;
}
inline char sign_char(Sign s)
{
    return s == Sign::plus ? '+' : '-';
}
// (-1)^k as a sign.
inline Sign parity_sign(int k)
{
    return (k % 2 == 0) ? Sign::plus : Sign::minus;
}

enum class Side { minus, plus, both };

using ElementSet = boost::dynamic_bitset<std::uint64_t>;

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const;
};

struct Face {
    int elem;
    Sign sign;
};

struct ElementSpec {
    std::string name;
    std::optional<int> dim;
};

struct CoverSpec {
    int upper;
    int lower;
    Sign sign;
};

// An oriented graded poset, stored as its signed Hasse diagram.
// Immutable; copies share the underlying data.
class Ogposet {
public:
    Ogposet();

    int size() const;
    int dim(int x) const;
    int dim() const;  // -1 when empty
    const std::string& name(int x) const;
    const std::vector<Face>& faces(int x) const;    // elements covered by x
    const std::vector<Face>& cofaces(int x) const;  // elements covering x
    std::optional<Sign> cover_sign(int upper, int lower) const;
    std::optional<int> find(std::string_view name) const;
    int index_of(std::string_view name) const;  // throws UnknownIndex
    std::size_t num_covers() const;

    // Elements are sorted by dimension; this is the index range of dimension d.
    std::pair<int, int> dim_range(int d) const;

    ElementSet none() const;
    ElementSet all() const;

    bool same_data(const Ogposet& other) const { return d_ == other.d_; }
    bool operator==(const Ogposet& other) const;
    bool operator!=(const Ogposet& other) const { return !(*this == other); }

    struct Data;

private:
    explicit Ogposet(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
    friend struct OgposetFactory;
};

struct Built {
    Ogposet poset;
    std::vector<int> position;  // position[i] = index of the i-th input element
};

// Validates and builds. Elements are re-sorted by (dim, input order).
// With rename_duplicates, clashing names get primes appended instead of failing.
Built build_ogp_indexed(const std::vector<ElementSpec>& elements, const std::vector<CoverSpec>& covers,
                        bool rename_duplicates = false);
Ogposet build_ogp(const std::vector<ElementSpec>& elements, const std::vector<CoverSpec>& covers);

// Low-level set operations on subsets of a fixed poset.
ElementSet clos(const Ogposet& P, const ElementSet& S);
bool is_closed(const Ogposet& P, const ElementSet& S);
int set_dim(const Ogposet& P, const ElementSet& U);
ElementSet maximal(const Ogposet& P, const ElementSet& U);
ElementSet granular(const Ogposet& P, const ElementSet& U, int n, Sign a);
ElementSet bound(const Ogposet& P, const ElementSet& U, int n, Sign a);
ElementSet bound_both(const Ogposet& P, const ElementSet& U, int n);
std::vector<int> members_of(const ElementSet& S);
ElementSet singleton_set(const Ogposet& P, int x);
std::optional<int> greatest(const Ogposet& P, const ElementSet& U);

// A downward-closed subset of a host poset.
class ClosedSubset {
public:
    ClosedSubset(Ogposet host, ElementSet members);  // checks closedness
    static ClosedSubset trusted(Ogposet host, ElementSet members);

    const Ogposet& host() const { return host_; }
    const ElementSet& members() const { return members_; }
    bool contains(int x) const { return members_.test(x); }
    int count() const { return static_cast<int>(members_.count()); }
    int dim() const { return set_dim(host_, members_); }
    bool operator==(const ClosedSubset& o) const { return host_ == o.host_ && members_ == o.members_; }

private:
    ClosedSubset(Ogposet host, ElementSet members, bool) : host_(std::move(host)), members_(std::move(members)) {}
    Ogposet host_;
    ElementSet members_;
};

ClosedSubset whole(const Ogposet& P);
ClosedSubset closure(const Ogposet& P, const std::vector<int>& S);
void check_host(const Ogposet& P, const ClosedSubset& U);

ClosedSubset boundary(const ClosedSubset& U, int n, Sign a);
ClosedSubset boundary_both(const ClosedSubset& U, int n);
// granular=true gives the raw set of elements of dimension n covered only with the chosen sign.
ElementSet boundary_set(const ClosedSubset& U, int n, Side side, bool granular);

struct ThinResult {
    bool thin = true;
    int lower = -1;  // -1 stands for the adjoined bottom
    int upper = -1;
};
ThinResult is_oriented_thin(const Ogposet& P);

// Restriction of P to a closed subset. embed[i] is the index in P of element i.
struct Restriction {
    Ogposet poset;
    std::vector<int> embed;
};
Restriction restrict_to(const Ogposet& P, const ElementSet& U);
Restriction skeleton(const Ogposet& P, int n);

struct Profile {
    int dim = -1;
    bool pure = true;
    std::vector<int> maximal;
};
Profile subset_profile(const ClosedSubset& U);

// Same underlying poset with some cover signs changed.
Ogposet with_signs(const Ogposet& P, const std::vector<CoverSpec>& covers);
std::vector<CoverSpec> cover_list(const Ogposet& P);
std::vector<ElementSpec> element_list(const Ogposet& P);

}  // namespace pasting

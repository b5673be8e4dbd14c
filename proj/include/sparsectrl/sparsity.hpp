#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sparsectrl {

/// A support is a strictly increasing list of 0-based indices.
using Support = std::vector<int>;

enum class FamilyKind { Unconstrained, Piecewise, Block, Explicit };

const char* family_kind_name(FamilyKind kind);

/// Admissible supports set: every member has cardinality exactly s.
///
/// Piecewise(n, s, m): m consecutive windows of length n/m, each member picks
/// exactly s/m indices per window. Block(n, s, m): blocks of size m, each
/// member is the union of s/m complete blocks (with s/m chosen blocks and total
/// cardinality s, every chosen block is fully included). Both require m | n and
/// m | s. Explicit families are arbitrary s-sets, deduplicated.
class SupportFamily {
public:
    static SupportFamily unconstrained(int n, int s);
    static SupportFamily piecewise(int n, int s, int m);
    static SupportFamily block(int n, int s, int m);
    static SupportFamily explicit_family(int n, std::vector<Support> sets);

    FamilyKind kind() const { return kind_; }
    int n() const { return n_; }
    int s() const { return s_; }
    int m() const { return m_; }

    /// Members of an explicit family, sorted lexicographically.
    const std::vector<Support>& explicit_sets() const { return explicit_sets_; }

    /// True iff the union of all members is {0, ..., n-1}.
    bool covers_all() const;

    /// Union of all members, ascending.
    Support union_of_members() const;

    std::string name() const;

private:
    SupportFamily(FamilyKind kind, int n, int s, int m) : kind_(kind), n_(n), s_(s), m_(m) {}

    FamilyKind kind_;
    int n_;
    int s_;
    int m_ = 0;
    std::vector<Support> explicit_sets_;
};

/// Lazy lexicographic enumeration of the members of a family.
class SupportEnumerator {
public:
    explicit SupportEnumerator(const SupportFamily& family);

    /// Writes the next member into `out`; returns false once exhausted.
    bool next(Support& out);

private:
    const SupportFamily* family_;
    bool done_ = false;
    bool started_ = false;
    // Unconstrained: one combination; Piecewise: one combination per window
    // (window 0 most significant); Block: combination over block indices.
    std::vector<std::vector<int>> combos_;
    std::size_t explicit_pos_ = 0;
};

/// C(n, k) in exact 64-bit arithmetic; throws capacity_error on overflow.
std::uint64_t binomial_checked(int n, int k);

/// |U| by closed form (Unconstrained: C(n,s); Piecewise: C(n/m,s/m)^m;
/// Block: C(n/m,s/m)); explicit families report their stored size.
std::uint64_t family_size(const SupportFamily& family);

/// Q(t, U) = number of distinct t-sized subsets of members of U.
///
/// Unconstrained uses the exact closed form C(n, t). Piecewise and Block use
/// the brute-force subset enumeration while it fits the capacity budget and
/// fall back to the closed forms (which the test suite pins against the brute
/// force on every grid point with n <= 12). Explicit families are brute force
/// only and throw capacity_error beyond the budget.
std::uint64_t count_subsets_q(int t, const SupportFamily& family);

/// Closed-form Q; throws std::invalid_argument for explicit families.
std::uint64_t count_subsets_q_closed_form(int t, const SupportFamily& family);

/// Authoritative enumeration of distinct t-subsets across members.
/// Throws capacity_error when |U| * C(s, t) exceeds `capacity`.
std::uint64_t count_subsets_q_brute_force(int t, const SupportFamily& family,
                                          std::uint64_t capacity = 10'000'000ULL);

/// Structural membership test (set lookup for explicit families).
bool contains_support(const SupportFamily& family, const Support& candidate);

/// True iff `partial` (strictly increasing, possibly empty) is a subset of
/// some member of the family.
bool is_extendable(const SupportFamily& family, const Support& partial);

/// Member with the given lexicographic rank, 0 <= rank < family_size.
Support support_at(const SupportFamily& family, std::uint64_t rank);

/// Interleaving permutation sending block layout to piece-wise layout:
/// old index b*m + j maps to j*(n/m) + b (0-based, b = block, j = offset).
/// Maps every member of Block(n, s, m) onto a member of Piecewise(n, s, m).
std::vector<int> block_to_piecewise_permutation(int n, int m);

} // namespace sparsectrl

#include "sparsectrl/sparsity.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

#include "sparsectrl/errors.hpp"

namespace sparsectrl {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool strictly_increasing_in_range(const Support& set, int n) {
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (set[i] < 0 || set[i] >= n) return false;
        if (i > 0 && set[i] <= set[i - 1]) return false;
    }
    return true;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* ctx) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw capacity_error(std::string(ctx) + ": 64-bit overflow");
    return a * b;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* ctx) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a)
        throw capacity_error(std::string(ctx) + ": 64-bit overflow");
    return a + b;
}

// First lexicographic k-combination of {0..n-1}: (0, 1, ..., k-1).
std::vector<int> first_combination(int k) {
    std::vector<int> c(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
    return c;
}

// Lexicographic successor of a k-combination of {0..n-1}; false at the end.
bool next_combination(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    for (int i = k - 1; i >= 0; --i) {
        if (c[static_cast<std::size_t>(i)] < n - k + i) {
            ++c[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
            return true;
        }
    }
    return false;
}

// Combination with a given lexicographic rank.
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
    std::vector<int> c;
    c.reserve(static_cast<std::size_t>(k));
    int next = 0;
    for (int slot = k; slot > 0; --slot) {
        for (int v = next;; ++v) {
            const std::uint64_t below = binomial_checked(n - v - 1, slot - 1);
            if (rank < below) {
                c.push_back(v);
                next = v + 1;
                break;
            }
            rank -= below;
        }
    }
    return c;
}

} // namespace

const char* family_kind_name(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Unconstrained: return "unconstrained";
        case FamilyKind::Piecewise: return "piecewise";
        case FamilyKind::Block: return "block";
        case FamilyKind::Explicit: return "explicit";
    }
    return "?";
}

SupportFamily SupportFamily::unconstrained(int n, int s) {
    require(n >= 1, "SupportFamily: n must be positive");
    require(s >= 1 && s <= n, "SupportFamily: require 1 <= s <= n");
    return SupportFamily(FamilyKind::Unconstrained, n, s, 0);
}

SupportFamily SupportFamily::piecewise(int n, int s, int m) {
    require(n >= 1, "SupportFamily: n must be positive");
    require(s >= 1 && s <= n, "SupportFamily: require 1 <= s <= n");
    require(m >= 1 && n % m == 0, "SupportFamily: piecewise requires m | n");
    require(s % m == 0, "SupportFamily: piecewise requires m | s");
    return SupportFamily(FamilyKind::Piecewise, n, s, m);
}

SupportFamily SupportFamily::block(int n, int s, int m) {
    require(n >= 1, "SupportFamily: n must be positive");
    require(s >= 1 && s <= n, "SupportFamily: require 1 <= s <= n");
    require(m >= 1 && n % m == 0, "SupportFamily: block requires m | n");
    require(s % m == 0, "SupportFamily: block requires m | s");
    return SupportFamily(FamilyKind::Block, n, s, m);
}

SupportFamily SupportFamily::explicit_family(int n, std::vector<Support> sets) {
    require(n >= 1, "SupportFamily: n must be positive");
    require(!sets.empty(), "SupportFamily: explicit family must be nonempty");
    const int s = static_cast<int>(sets.front().size());
    require(s >= 1 && s <= n, "SupportFamily: require 1 <= s <= n");
    for (const Support& set : sets) {
        require(static_cast<int>(set.size()) == s,
                "SupportFamily: all explicit sets must have the same cardinality");
        require(strictly_increasing_in_range(set, n),
                "SupportFamily: explicit set indices must be strictly increasing in [0, n)");
    }
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    SupportFamily family(FamilyKind::Explicit, n, s, 0);
    family.explicit_sets_ = std::move(sets);
    return family;
}

bool SupportFamily::covers_all() const {
    return static_cast<int>(union_of_members().size()) == n_;
}

Support SupportFamily::union_of_members() const {
    if (kind_ != FamilyKind::Explicit) {
        // Structured families touch every index: any window position or block
        // can be part of some member.
        Support all(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) all[static_cast<std::size_t>(i)] = i;
        return all;
    }
    std::vector<bool> seen(static_cast<std::size_t>(n_), false);
    for (const Support& set : explicit_sets_)
        for (int idx : set) seen[static_cast<std::size_t>(idx)] = true;
    Support out;
    for (int i = 0; i < n_; ++i)
        if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
    return out;
}

std::string SupportFamily::name() const { return family_kind_name(kind_); }

SupportEnumerator::SupportEnumerator(const SupportFamily& family) : family_(&family) {
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            combos_.push_back(first_combination(family.s()));
            break;
        case FamilyKind::Piecewise: {
            const int per_window = family.s() / family.m();
            combos_.assign(static_cast<std::size_t>(family.m()), first_combination(per_window));
            break;
        }
        case FamilyKind::Block:
            combos_.push_back(first_combination(family.s() / family.m()));
            break;
        case FamilyKind::Explicit:
            break;
    }
}

bool SupportEnumerator::next(Support& out) {
    if (done_) return false;
    const SupportFamily& family = *family_;

    if (family.kind() == FamilyKind::Explicit) {
        if (explicit_pos_ >= family.explicit_sets().size()) {
            done_ = true;
            return false;
        }
        out = family.explicit_sets()[explicit_pos_++];
        return true;
    }

    if (started_) {
        switch (family.kind()) {
            case FamilyKind::Unconstrained:
                done_ = !next_combination(combos_[0], family.n());
                break;
            case FamilyKind::Piecewise: {
                // Odometer with the last window fastest keeps the emitted
                // members in lexicographic order.
                const int window = family.n() / family.m();
                int w = family.m() - 1;
                for (; w >= 0; --w) {
                    if (next_combination(combos_[static_cast<std::size_t>(w)], window)) break;
                    combos_[static_cast<std::size_t>(w)] =
                        first_combination(family.s() / family.m());
                }
                done_ = (w < 0);
                break;
            }
            case FamilyKind::Block:
                done_ = !next_combination(combos_[0], family.n() / family.m());
                break;
            case FamilyKind::Explicit:
                break;
        }
        if (done_) return false;
    }
    started_ = true;

    out.clear();
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            out = combos_[0];
            break;
        case FamilyKind::Piecewise: {
            const int window = family.n() / family.m();
            for (int w = 0; w < family.m(); ++w)
                for (int pos : combos_[static_cast<std::size_t>(w)])
                    out.push_back(w * window + pos);
            break;
        }
        case FamilyKind::Block:
            for (int b : combos_[0])
                for (int j = 0; j < family.m(); ++j) out.push_back(b * family.m() + j);
            break;
        case FamilyKind::Explicit:
            break;
    }
    return true;
}

std::uint64_t binomial_checked(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 result = 1;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<unsigned>(n - k + i);
        result /= static_cast<unsigned>(i); // exact: result = C(n-k+i, i)
        if (result > std::numeric_limits<std::uint64_t>::max())
            throw capacity_error("binomial: 64-bit overflow");
    }
    return static_cast<std::uint64_t>(result);
}

std::uint64_t family_size(const SupportFamily& family) {
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            return binomial_checked(family.n(), family.s());
        case FamilyKind::Piecewise: {
            const std::uint64_t per = binomial_checked(family.n() / family.m(),
                                                       family.s() / family.m());
            std::uint64_t total = 1;
            for (int w = 0; w < family.m(); ++w) total = checked_mul(total, per, "family_size");
            return total;
        }
        case FamilyKind::Block:
            return binomial_checked(family.n() / family.m(), family.s() / family.m());
        case FamilyKind::Explicit:
            return family.explicit_sets().size();
    }
    return 0;
}

namespace {

// Number of t-subsets of l blocks of size m that touch all l blocks
// (inclusion-exclusion over untouched blocks).
std::uint64_t surjective_block_subsets(int t, int l, int m) {
    long long total = 0;
    for (int j = 0; j <= l; ++j) {
        const std::uint64_t ways = checked_mul(binomial_checked(l, j),
                                               binomial_checked((l - j) * m, t), "Q block");
        if (ways > static_cast<std::uint64_t>(std::numeric_limits<long long>::max()))
            throw capacity_error("Q block closed form: overflow");
        total += (j % 2 == 0) ? static_cast<long long>(ways) : -static_cast<long long>(ways);
    }
    if (total < 0) throw capacity_error("Q block closed form: inconsistent inclusion-exclusion");
    return static_cast<std::uint64_t>(total);
}

} // namespace

std::uint64_t count_subsets_q_closed_form(int t, const SupportFamily& family) {
    require(t >= 0 && t <= family.s(), "count_subsets_q: require 0 <= t <= s");
    if (t == 0) return 1;
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            // Every t-subset extends to an s-superset.
            return binomial_checked(family.n(), t);
        case FamilyKind::Piecewise: {
            // Subsets with at most s/m indices per window; counted by the
            // coefficient of x^t in (sum_j C(n/m, j) x^j)^m.
            const int per_window = family.s() / family.m();
            const int window = family.n() / family.m();
            std::vector<std::uint64_t> coeff(1, 1);
            for (int w = 0; w < family.m(); ++w) {
                std::vector<std::uint64_t> next(std::min<std::size_t>(coeff.size() + per_window,
                                                                      t + 1),
                                                0);
                for (std::size_t a = 0; a < coeff.size(); ++a) {
                    if (coeff[a] == 0) continue;
                    for (int j = 0; j <= per_window && a + j < next.size(); ++j) {
                        const std::uint64_t add =
                            checked_mul(coeff[a], binomial_checked(window, j), "Q piecewise");
                        next[a + j] = checked_add(next[a + j], add, "Q piecewise");
                    }
                }
                coeff = std::move(next);
            }
            return static_cast<std::size_t>(t) < coeff.size() ? coeff[static_cast<std::size_t>(t)]
                                                              : 0;
        }
        case FamilyKind::Block: {
            // Subsets touching at most s/m of the n/m blocks.
            const int blocks = family.n() / family.m();
            const int max_blocks = family.s() / family.m();
            const int m = family.m();
            std::uint64_t total = 0;
            const int l_lo = (t + m - 1) / m;
            const int l_hi = std::min(t, max_blocks);
            for (int l = std::max(1, l_lo); l <= l_hi; ++l) {
                const std::uint64_t ways = checked_mul(binomial_checked(blocks, l),
                                                       surjective_block_subsets(t, l, m),
                                                       "Q block");
                total = checked_add(total, ways, "Q block");
            }
            return total;
        }
        case FamilyKind::Explicit:
            throw std::invalid_argument("count_subsets_q_closed_form: explicit family");
    }
    return 0;
}

std::uint64_t count_subsets_q_brute_force(int t, const SupportFamily& family,
                                          std::uint64_t capacity) {
    require(t >= 0 && t <= family.s(), "count_subsets_q: require 0 <= t <= s");
    if (t == 0) return 1;
    const std::uint64_t work =
        checked_mul(family_size(family), binomial_checked(family.s(), t), "Q brute force");
    if (work > capacity)
        throw capacity_error("count_subsets_q_brute_force: |U| * C(s,t) exceeds capacity");

    std::set<Support> distinct;
    SupportEnumerator en(family);
    Support member;
    Support subset(static_cast<std::size_t>(t));
    while (en.next(member)) {
        std::vector<int> pick = first_combination(t);
        do {
            for (int i = 0; i < t; ++i)
                subset[static_cast<std::size_t>(i)] =
                    member[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
            distinct.insert(subset);
        } while (next_combination(pick, family.s()));
    }
    return distinct.size();
}

std::uint64_t count_subsets_q(int t, const SupportFamily& family) {
    require(t >= 0 && t <= family.s(), "count_subsets_q: require 0 <= t <= s");
    if (t == 0) return 1;
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            return count_subsets_q_closed_form(t, family);
        case FamilyKind::Piecewise:
        case FamilyKind::Block:
            try {
                return count_subsets_q_brute_force(t, family);
            } catch (const capacity_error&) {
                // Closed forms are pinned against the brute force on the
                // n <= 12 grid by the test suite.
                return count_subsets_q_closed_form(t, family);
            }
        case FamilyKind::Explicit:
            return count_subsets_q_brute_force(t, family);
    }
    return 0;
}

bool contains_support(const SupportFamily& family, const Support& candidate) {
    if (static_cast<int>(candidate.size()) != family.s()) return false;
    if (!strictly_increasing_in_range(candidate, family.n())) return false;
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            return true;
        case FamilyKind::Piecewise: {
            const int window = family.n() / family.m();
            const int per_window = family.s() / family.m();
            std::vector<int> counts(static_cast<std::size_t>(family.m()), 0);
            for (int idx : candidate) ++counts[static_cast<std::size_t>(idx / window)];
            return std::all_of(counts.begin(), counts.end(),
                               [&](int c) { return c == per_window; });
        }
        case FamilyKind::Block: {
            const int blocks = family.n() / family.m();
            std::vector<int> counts(static_cast<std::size_t>(blocks), 0);
            for (int idx : candidate) ++counts[static_cast<std::size_t>(idx / family.m())];
            int touched = 0;
            for (int c : counts) {
                if (c == 0) continue;
                if (c != family.m()) return false;
                ++touched;
            }
            return touched == family.s() / family.m();
        }
        case FamilyKind::Explicit:
            return std::binary_search(family.explicit_sets().begin(),
                                      family.explicit_sets().end(), candidate);
    }
    return false;
}

bool is_extendable(const SupportFamily& family, const Support& partial) {
    if (static_cast<int>(partial.size()) > family.s()) return false;
    if (!strictly_increasing_in_range(partial, family.n())) return false;
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            return true;
        case FamilyKind::Piecewise: {
            const int window = family.n() / family.m();
            const int per_window = family.s() / family.m();
            std::vector<int> counts(static_cast<std::size_t>(family.m()), 0);
            for (int idx : partial)
                if (++counts[static_cast<std::size_t>(idx / window)] > per_window) return false;
            return true;
        }
        case FamilyKind::Block: {
            const int blocks = family.n() / family.m();
            std::vector<bool> touched(static_cast<std::size_t>(blocks), false);
            int count = 0;
            for (int idx : partial) {
                const std::size_t b = static_cast<std::size_t>(idx / family.m());
                if (!touched[b]) {
                    touched[b] = true;
                    ++count;
                }
            }
            return count <= family.s() / family.m();
        }
        case FamilyKind::Explicit:
            for (const Support& set : family.explicit_sets())
                if (std::includes(set.begin(), set.end(), partial.begin(), partial.end()))
                    return true;
            return false;
    }
    return false;
}

Support support_at(const SupportFamily& family, std::uint64_t rank) {
    if (rank >= family_size(family))
        throw std::out_of_range("support_at: rank out of range");
    switch (family.kind()) {
        case FamilyKind::Unconstrained:
            return unrank_combination(family.n(), family.s(), rank);
        case FamilyKind::Piecewise: {
            const int window = family.n() / family.m();
            const int per_window = family.s() / family.m();
            const std::uint64_t per = binomial_checked(window, per_window);
            Support out;
            std::vector<std::uint64_t> digits(static_cast<std::size_t>(family.m()));
            for (int w = family.m() - 1; w >= 0; --w) {
                digits[static_cast<std::size_t>(w)] = rank % per;
                rank /= per;
            }
            for (int w = 0; w < family.m(); ++w)
                for (int pos : unrank_combination(window, per_window,
                                                  digits[static_cast<std::size_t>(w)]))
                    out.push_back(w * window + pos);
            return out;
        }
        case FamilyKind::Block: {
            Support out;
            for (int b : unrank_combination(family.n() / family.m(), family.s() / family.m(),
                                            rank))
                for (int j = 0; j < family.m(); ++j) out.push_back(b * family.m() + j);
            return out;
        }
        case FamilyKind::Explicit:
            return family.explicit_sets()[static_cast<std::size_t>(rank)];
    }
    return {};
}

std::vector<int> block_to_piecewise_permutation(int n, int m) {
    require(n >= 1 && m >= 1 && n % m == 0, "block_to_piecewise_permutation: require m | n");
    const int blocks = n / m;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int b = 0; b < blocks; ++b)
        for (int j = 0; j < m; ++j)
            perm[static_cast<std::size_t>(b * m + j)] = j * blocks + b;
    return perm;
}

} // namespace sparsectrl

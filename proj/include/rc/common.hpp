#ifndef RC_COMMON_HPP
#define RC_COMMON_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rc {

/// Malformed input: bad ids, parse failures, violated preconditions on user data.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A size guard was exceeded (exhaustive enumeration limits).
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Internal contract broken by a caller or by the solver itself.
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

#define RC_ASSERT(cond, msg)                                                    \
    do {                                                                        \
        if (!(cond)) throw ::rc::ContractViolation(std::string(msg) + " [" #cond "]"); \
    } while (0)

constexpr std::int64_t kInf64 = std::numeric_limits<std::int64_t>::max() / 4;

// saturating arithmetic for threshold formulas that overflow quickly
std::int64_t sat_add(std::int64_t a, std::int64_t b);
std::int64_t sat_mul(std::int64_t a, std::int64_t b);
std::int64_t sat_pow(std::int64_t base, int exp);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t seed, std::string_view site);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// Restricted-growth strings: all set partitions of {0..n-1}.
std::vector<std::vector<int>> all_partitions(int n);

/// Subsets of {0..n-1} of size <= r in (size, lexicographic) order, callback gets the index list.
template <class F>
bool for_each_subset_upto(int n, int r, F&& f)
{
    std::vector<int> idx;
    for (int size = 0; size <= r && size <= n; ++size) {
        idx.resize(size);
        for (int i = 0; i < size; ++i) idx[i] = i;
        while (true) {
            if (!f(idx)) return false;
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
    }
    return true;
}

/// Union-find with path halving.
class DisjointSets {
public:
    explicit DisjointSets(int n = 0) { reset(n); }
    void reset(int n)
    {
        parent_.resize(n);
        size_.assign(n, 1);
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x)
    {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }
    int size_of(int x) { return size_[find(x)]; }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
};

} // namespace rc

#endif

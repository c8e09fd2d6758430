#include "rc/families.hpp"

#include <algorithm>
#include <cmath>

#include "rc/common.hpp"

namespace rc {

std::string to_string(FamilyMode m)
{
    switch (m) {
    case FamilyMode::Exhaustive: return "exhaustive";
    case FamilyMode::PerfectHash: return "perfect-hash";
    case FamilyMode::Randomized: return "randomized";
    }
    return "?";
}

FamilyMode family_mode_from_string(const std::string& s)
{
    if (s == "exhaustive") return FamilyMode::Exhaustive;
    if (s == "perfect-hash") return FamilyMode::PerfectHash;
    if (s == "randomized") return FamilyMode::Randomized;
    throw InputError("unknown family mode '" + s + "'");
}

std::uint64_t binom(int n, int r)
{
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    unsigned __int128 acc = 1;
    for (int i = 1; i <= r; ++i) {
        acc = acc * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
        if (acc > static_cast<unsigned __int128>(1000000000000000000ULL)) return 1000000000000000000ULL;
    }
    return static_cast<std::uint64_t>(acc);
}

std::size_t randomized_draws(int a, int b, double delta)
{
    if (a == 0 || b == 0) return 1;
    double pa = static_cast<double>(a) / (a + b);
    double lp = a * std::log(pa) + b * std::log(1.0 - pa);
    double p = std::exp(lp);
    // t = ln(1/delta) / p is enough since (1-p)^t <= exp(-p t)
    double t = std::ceil(std::log(1.0 / delta) / p);
    if (t < 1) t = 1;
    if (t > 4e9) throw SizeError("randomized family would need more than 4e9 draws");
    return static_cast<std::size_t>(t);
}

namespace {

bool is_prime(int p)
{
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

int next_prime(int p)
{
    while (!is_prime(p)) ++p;
    return p;
}

// Every r-subset of {0..n-1} is injective under some prime in `primes`?
bool all_subsets_separated(int n, int r, const std::vector<int>& primes)
{
    bool ok = true;
    std::vector<int> sub;
    for_each_subset_upto(n, r, [&](const std::vector<int>& idx) {
        if (static_cast<int>(idx.size()) != r) return true;
        bool found = false;
        for (int p : primes) {
            bool inj = true;
            for (std::size_t i = 0; i < idx.size() && inj; ++i)
                for (std::size_t j = i + 1; j < idx.size(); ++j)
                    if (idx[i] % p == idx[j] % p) {
                        inj = false;
                        break;
                    }
            if (inj) {
                found = true;
                break;
            }
        }
        if (!found) ok = false;
        return ok;
    });
    return ok;
}

// lexicographic unranking of an r-combination of {0..p-1}
void unrank_combination(int p, int r, std::uint64_t rank, std::vector<int>& out)
{
    out.clear();
    int x = 0;
    for (int i = 0; i < r; ++i) {
        while (true) {
            std::uint64_t c = binom(p - x - 1, r - i - 1);
            if (rank < c) break;
            rank -= c;
            ++x;
        }
        out.push_back(x);
        ++x;
    }
}

} // namespace

SetFamily build_family(const FamilySpec& spec)
{
    const int n = spec.universe_size;
    if (n < 0 || spec.a < 0 || spec.b < 0) throw InputError("family parameters must be nonnegative");
    SetFamily f;
    f.n_ = n;
    f.a_ = std::min(spec.a, n);
    f.b_ = std::min(spec.b, n);
    f.mode_ = spec.mode;
    switch (spec.mode) {
    case FamilyMode::Exhaustive:
        if (n > 20) throw SizeError("exhaustive family limited to |U| <= 20, got " + std::to_string(n));
        f.size_ = std::size_t(1) << n;
        break;
    case FamilyMode::Randomized: {
        if (!(spec.delta > 0.0 && spec.delta < 1.0)) throw InputError("delta must lie in (0,1)");
        f.seed_ = spec.seed;
        int a = f.a_, b = f.b_;
        if (b == 0) {
            f.all_join_ = true;
            f.size_ = 1;
        } else if (a == 0) {
            f.threshold_ = 0;
            f.size_ = 1;
        } else {
            double pr = static_cast<double>(a) / (a + b);
            f.threshold_ = static_cast<std::uint64_t>(std::ldexp(pr, 64) >= 1.8446744073709552e19
                                                          ? ~0ULL
                                                          : std::ldexp(pr, 64));
            f.size_ = randomized_draws(a, b, spec.delta);
            f.failure_bound_ = spec.delta;
        }
        break;
    }
    case FamilyMode::PerfectHash: {
        int a = f.a_, b = f.b_;
        int r = std::min(a + b, n);
        if (a == 0 || n == 0) {
            // the empty set alone covers every pair with A empty
            f.primes_ = {2};
            f.take_ = 0;
            f.group_start_ = {0, 1};
            f.size_ = 1;
            break;
        }
        int p = next_prime(std::max(2, a + b));
        double log_prod = 0.0;
        double log_need = (r * (r - 1) / 2.0) * std::log(std::max(2, n));
        bool direct = binom(n, r) <= 200000;
        while (true) {
            f.primes_.push_back(p);
            log_prod += std::log(static_cast<double>(p));
            if (p >= n) break;               // identity on positions
            if (log_prod > log_need) break;  // product argument
            if (direct && all_subsets_separated(n, r, f.primes_)) break;
            p = next_prime(p + 1);
        }
        f.take_ = a;
        f.group_start_.push_back(0);
        for (int q : f.primes_) f.group_start_.push_back(f.group_start_.back() + binom(q, a));
        f.size_ = f.group_start_.back();
        break;
    }
    }
    return f;
}

void SetFamily::member(std::size_t i, std::vector<char>& in) const
{
    in.assign(n_, 0);
    switch (mode_) {
    case FamilyMode::Exhaustive:
        for (int x = 0; x < n_; ++x) in[x] = static_cast<char>((i >> x) & 1);
        return;
    case FamilyMode::Randomized:
        if (all_join_) {
            std::fill(in.begin(), in.end(), 1);
            return;
        }
        for (int x = 0; x < n_; ++x) in[x] = mix_seed(seed_, i, static_cast<std::uint64_t>(x)) < threshold_;
        return;
    case FamilyMode::PerfectHash: {
        auto it = std::upper_bound(group_start_.begin(), group_start_.end(), i);
        std::size_t g = static_cast<std::size_t>(it - group_start_.begin()) - 1;
        int p = primes_[g];
        std::vector<int> buckets;
        unrank_combination(p, take_, i - group_start_[g], buckets);
        std::vector<char> chosen(p, 0);
        for (int q : buckets) chosen[q] = 1;
        for (int x = 0; x < n_; ++x) in[x] = chosen[x % p];
        return;
    }
    }
}

std::vector<int> SetFamily::member_list(std::size_t i) const
{
    std::vector<char> in;
    member(i, in);
    std::vector<int> out;
    for (int x = 0; x < n_; ++x)
        if (in[x]) out.push_back(x);
    return out;
}

bool covering_check(const SetFamily& fam, int a, int b)
{
    const int n = fam.universe_size();
    if (n > 16) throw SizeError("covering_check limited to |U| <= 16");
    // masks of every member, then every disjoint (A,B)
    std::vector<std::uint32_t> masks(fam.size());
    std::vector<char> in;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        fam.member(i, in);
        std::uint32_t m = 0;
        for (int x = 0; x < n; ++x)
            if (in[x]) m |= 1u << x;
        masks[i] = m;
    }
    std::sort(masks.begin(), masks.end());
    masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
    bool good = true;
    for_each_subset_upto(n, a, [&](const std::vector<int>& ai) {
        std::uint32_t A = 0;
        for (int x : ai) A |= 1u << x;
        std::vector<std::uint32_t> cover;
        for (std::uint32_t S : masks)
            if ((S & A) == A) cover.push_back(S);
        std::vector<int> rest;
        for (int x = 0; x < n; ++x)
            if (!(A >> x & 1)) rest.push_back(x);
        bool ok = for_each_subset_upto(static_cast<int>(rest.size()), b, [&](const std::vector<int>& bi) {
            std::uint32_t B = 0;
            for (int j : bi) B |= 1u << rest[j];
            for (std::uint32_t S : cover)
                if ((S & B) == 0) return true;
            return false;
        });
        if (!ok) good = false;
        return ok;
    });
    return good;
}

} // namespace rc

#include "rc/common.hpp"

#include <functional>

namespace rc {

std::int64_t sat_add(std::int64_t a, std::int64_t b)
{
    if (a >= kInf64 - b) return kInf64;
    return a + b;
}

std::int64_t sat_mul(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) return 0;
    if (a >= kInf64 / b) return kInf64;
    return a * b;
}

std::int64_t sat_pow(std::int64_t base, int exp)
{
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) r = sat_mul(r, base);
    return r;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view site)
{
    // FNV-1a over the label, then mixed with the seed
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : site) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    return splitmix64(seed ^ splitmix64(h));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b)
{
    return splitmix64(splitmix64(seed ^ splitmix64(a + 0x51ed2701ULL)) ^ (b * 0x2545f4914f6cdd1dULL));
}

std::vector<std::vector<int>> all_partitions(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> rgs(n, 0);
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == n) {
            out.push_back(rgs);
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    rgs[0] = 0;
    rec(1, 0);
    return out;
}

} // namespace rc

#include "rc/context.hpp"

#include <algorithm>

#include "rc/common.hpp"

namespace rc {

std::string to_string(FamilyChoice c)
{
    switch (c) {
    case FamilyChoice::Auto: return "auto";
    case FamilyChoice::Exhaustive: return "exhaustive";
    case FamilyChoice::PerfectHash: return "perfect-hash";
    case FamilyChoice::Randomized: return "randomized";
    }
    return "?";
}

FamilyChoice family_choice_from_string(const std::string& s)
{
    if (s == "auto") return FamilyChoice::Auto;
    if (s == "exhaustive") return FamilyChoice::Exhaustive;
    if (s == "perfect-hash") return FamilyChoice::PerfectHash;
    if (s == "randomized") return FamilyChoice::Randomized;
    throw InputError("unknown family mode '" + s + "'");
}

SetFamily SolveContext::family(int universe, std::int64_t a, std::int64_t b, const char* site)
{
    FamilySpec spec;
    spec.universe_size = universe;
    spec.a = static_cast<int>(std::min<std::int64_t>(a, universe));
    spec.b = static_cast<int>(std::min<std::int64_t>(b, universe));
    spec.delta = cfg_.delta;
    spec.seed = mix_seed(mix_seed(cfg_.seed, site), sites_++);
    // exhaustive families stop at 20 elements; larger universes get the
    // deterministic perfect-hash family with the same guarantee
    constexpr int kExhaustiveMax = 20;
    SetFamily f;
    switch (cfg_.family) {
    case FamilyChoice::Auto: {
        spec.mode = FamilyMode::PerfectHash;
        f = build_family(spec);
        if (universe <= kExhaustiveMax && (std::size_t{1} << universe) <= f.size()) {
            spec.mode = FamilyMode::Exhaustive;
            f = build_family(spec);
        }
        break;
    }
    case FamilyChoice::Exhaustive:
        spec.mode = universe <= kExhaustiveMax ? FamilyMode::Exhaustive : FamilyMode::PerfectHash;
        f = build_family(spec);
        break;
    case FamilyChoice::PerfectHash:
        spec.mode = FamilyMode::PerfectHash;
        f = build_family(spec);
        break;
    case FamilyChoice::Randomized:
        spec.mode = FamilyMode::Randomized;
        f = build_family(spec);
        break;
    }
    if (f.size() > 50000000)
        throw SizeError("covering family of size " + std::to_string(f.size()) + " at site " + site +
                        "; use randomized families or a smaller q override");
    stats_.family_modes.insert(to_string(spec.mode));
    if (spec.mode == FamilyMode::Randomized && f.failure_bound() > 0) {
        ++stats_.randomized_sites;
        stats_.failure_bound = std::min(1.0, stats_.failure_bound + f.failure_bound());
    }
    return f;
}

void SolveContext::note_depth(int depth)
{
    stats_.max_depth = std::max(stats_.max_depth, depth);
}

} // namespace rc

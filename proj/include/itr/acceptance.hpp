#pragma once

// The acceptance suite: ten exhaustive or randomized property checks at desk
// scale, each with a case count and a wall-clock budget. Shared by the
// acceptance test binary and `itr verify`.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace itr::acceptance {

enum class Profile {
    Quick,  // reduced counts, for interactive use
    Full,   // the stated counts
};

std::optional<Profile> parse_profile(std::string_view name);
const char* to_string(Profile profile);

struct Result {
    int id = 0;
    std::string title;
    bool passed = false;
    long cases = 0;
    double seconds = 0;
    double budget_seconds = 0;
    std::string detail;
    // Failed only through the known gap: the literal matched-pair check and
    // forest-walk witness search fail, everything else including the
    // brute-force witness scan holds.
    bool documented_gap = false;
};

constexpr int kCriterionCount = 10;

Result run_criterion(int id, Profile profile, std::uint64_t seed);

std::vector<Result> run_all(Profile profile, std::uint64_t seed,
                            const std::function<void(const Result&)>& on_result = {});

// No criterion failed except through the documented gap.
bool acceptable(const std::vector<Result>& results);

// "criterion 3 PASS  <title>: <detail> [cases=..., 1.23 s of 60 s]"
std::string format_line(const Result& result);

}  // namespace itr::acceptance

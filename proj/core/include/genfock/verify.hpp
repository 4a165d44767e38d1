#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace genfock::verify {

enum class Profile { Quick, Full };

/// One identity check. `metric <= threshold` is the pass condition for every
/// check; exact checks count mismatches against a threshold of zero.
struct CheckResult {
    std::string check_id;
    std::string ref;  // the identity or property the check pins down
    std::map<std::string, std::string> params;
    double metric = 0.0;
    double threshold = 0.0;
    bool pass = false;
    double runtime_ms = 0.0;
};

struct VerifyOptions {
    Profile profile = Profile::Quick;
    std::uint64_t seed = 1;
};

/// Runs the whole suite; results are sorted by check_id and fully
/// reproducible for a fixed (profile, seed).
std::vector<CheckResult> run_verify(const VerifyOptions& opts);

bool all_pass(const std::vector<CheckResult>& results);

}  // namespace genfock::verify

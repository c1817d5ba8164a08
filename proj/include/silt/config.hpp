#pragma once

#include <cstdint>

namespace silt {

// Caps for the brute-force steps. Exponential searches must fail loudly via
// cap_exceeded / undecided_error rather than hang.
struct Config {
    int64_t max_dim = 4;                   // module enumeration dimension cap
    int64_t iso_search_cap = 1 << 20;      // combinations tried in iso search
    bool iso_exhaustive_fallback = true;   // after sampling, sweep everything
    int64_t iso_samples = 2048;            // random probes before the sweep
    uint64_t seed = 0;                     // probe order only; results seed-free
    int64_t path_length_cap = 24;          // path algebra exhaustion bound
    int64_t path_count_cap = 200000;
    int64_t enum_candidate_cap = 1 << 22;  // module structures tried per shape
    int64_t subspace_cap = 1 << 22;        // subspaces visited when enumerating
    int64_t idem_refine_cap = 1 << 16;     // element sweeps when refining idempotents
    int64_t lift_cost_cap = 2'000'000;     // system-size bound for triangle lifts
};

}  // namespace silt

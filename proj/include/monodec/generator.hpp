#pragma once

#include <cstdint>

#include "monodec/model.hpp"

namespace monodec {

// Seeded synthetic monolith generator for property tests and desk-scale
// experiments. mt19937_64 with explicit bounded draws, so the stream is
// identical on every platform.
struct GenParams {
    std::uint64_t seed = 1;
    int n_entities = 12;
    int n_functionalities = 6;
    int traces_per_functionality = 2;
    int max_trace_length = 8;
    double write_ratio = 0.35;
    // 1: accesses stay inside the functionality's entity family (block
    // structure); 0: uniform over all entities.
    double clusteredness_bias = 0.0;
    int n_families = 1;
};

struct GeneratedWorkload {
    Monolith monolith;
    // The planted family partition, cluster per family.
    Decomposition planted;
};

GeneratedWorkload generate_monolith(const GenParams& p);

} // namespace monodec

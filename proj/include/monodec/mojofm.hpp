#pragma once

#include <string>
#include <utility>
#include <vector>

#include "monodec/model.hpp"

namespace monodec {

enum class AlignStrategy {
    // Entities missing on one side are added to the other side's biggest
    // cluster (ties: lexicographically smallest cluster name).
    BiggestCluster,
    // Both sides restricted to the intersection of universes.
    DropUncommon,
};

// Makes the two universes equal so the edit distance is defined.
std::pair<Decomposition, Decomposition> align_universes(const Decomposition& a,
                                                        const Decomposition& b,
                                                        AlignStrategy strategy);

// Exact minimum number of Move and Join operations transforming a into b.
// Requires equal universes (align first).
long long mojo_distance(const Decomposition& a, const Decomposition& b);

// How max_mojo_distance obtained its value.
enum class MaxMnoMethod { Enumeration, Construction };

struct MaxMnoResult {
    long long value = 0;
    MaxMnoMethod method = MaxMnoMethod::Enumeration;
};

// Worst mojo_distance(A, b) over every partition A of b's universe. Exact
// set-partition enumeration up to 12 entities; the validated worst-case
// construction above that.
MaxMnoResult max_mojo_distance(const Decomposition& b);

// The two strategies individually, exposed for cross-validation.
long long max_mojo_distance_enumerated(const Decomposition& b);
long long max_mojo_distance_constructed(std::vector<long long> cluster_sizes);

struct MojoResult {
    long long mno = 0;
    long long max_mno = 0;
    double mojo_fm = 0.0;  // (1 - mno/maxMno) * 100
    MaxMnoMethod max_method = MaxMnoMethod::Enumeration;
};

// b is the reference decomposition. Requires aligned universes of size >= 2.
MojoResult mojofm(const Decomposition& a, const Decomposition& b);

// Breadth-first search over decomposition states; guaranteed-minimal op
// count. Verification oracle, limited to universes of at most 8 entities.
long long brute_force_mno(const Decomposition& a, const Decomposition& b);

const char* to_string(MaxMnoMethod m);

} // namespace monodec

#pragma once

// Independent recursive set-partition walk; cross-checks the enumeration
// inside max_mojo_distance.

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <vector>

#include "monodec/mojofm.hpp"

namespace monodec::test {

inline Decomposition partition_of(std::vector<std::set<EntityId>> clusters) {
    Decomposition d;
    std::size_t i = 0;
    for (auto& c : clusters) {
        d.clusters["c" + std::to_string(i++)] = std::move(c);
    }
    return d;
}

inline Decomposition random_partition_of(std::mt19937_64& rng, std::size_t n) {
    const std::size_t k = 1 + rng() % n;
    std::map<std::size_t, std::set<EntityId>> groups;
    for (std::size_t e = 1; e <= n; ++e) {
        groups[rng() % k].insert(static_cast<EntityId>(e));
    }
    Decomposition d;
    std::size_t i = 0;
    for (auto& [label, members] : groups) {
        d.clusters["c" + std::to_string(i++)] = std::move(members);
    }
    return d;
}

inline long long max_mno_by_walk(const Decomposition& b) {
    const std::set<EntityId> universe = b.universe();
    std::vector<EntityId> elems(universe.begin(), universe.end());
    std::vector<std::vector<EntityId>> stack;
    long long best = 0;
    auto to_decomposition = [&]() {
        Decomposition a;
        std::size_t i = 0;
        for (const auto& group : stack) {
            a.clusters["g" + std::to_string(i++)] =
                std::set<EntityId>(group.begin(), group.end());
        }
        return a;
    };
    std::function<void(std::size_t)> place = [&](std::size_t i) {
        if (i == elems.size()) {
            best = std::max(best, mojo_distance(to_decomposition(), b));
            return;
        }
        // Index-based: recursion can grow the stack and reallocate it.
        for (std::size_t g = 0; g < stack.size(); ++g) {
            stack[g].push_back(elems[i]);
            place(i + 1);
            stack[g].pop_back();
        }
        stack.push_back({elems[i]});
        place(i + 1);
        stack.pop_back();
    };
    place(0);
    return best;
}

// All integer-partition shapes of n as cluster-size lists, descending parts.
inline void for_each_shape(long long n,
                           const std::function<void(const std::vector<long long>&)>& fn) {
    std::vector<long long> acc;
    std::function<void(long long, long long)> walk = [&](long long remaining,
                                                         long long cap) {
        if (remaining == 0) {
            fn(acc);
            return;
        }
        for (long long part = std::min(remaining, cap); part >= 1; --part) {
            acc.push_back(part);
            walk(remaining - part, part);
            acc.pop_back();
        }
    };
    walk(n, n);
}

inline Decomposition decomposition_of_shape(const std::vector<long long>& shape) {
    Decomposition b;
    EntityId next = 1;
    std::size_t i = 0;
    for (long long size : shape) {
        auto& cluster = b.clusters["c" + std::to_string(i++)];
        for (long long k = 0; k < size; ++k) {
            cluster.insert(next++);
        }
    }
    return b;
}

} // namespace monodec::test

#include "monodec/mojofm.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <unordered_set>

#include "monodec/errors.hpp"

namespace monodec {

namespace {

void require_equal_universes(const Decomposition& a, const Decomposition& b) {
    if (a.universe() != b.universe()) {
        throw DomainError("UNIVERSE_MISMATCH",
                          "decompositions cover different entity sets; align first");
    }
}

// Kuhn's augmenting paths; tiny graphs, no need for Hopcroft-Karp.
std::size_t max_bipartite_matching(const std::vector<std::vector<std::size_t>>& adj,
                                   std::size_t right_size) {
    std::vector<std::ptrdiff_t> match_right(right_size, -1);
    std::vector<char> visited;
    std::function<bool(std::size_t)> try_augment = [&](std::size_t u) {
        for (std::size_t v : adj[u]) {
            if (visited[v]) {
                continue;
            }
            visited[v] = 1;
            if (match_right[v] < 0 ||
                try_augment(static_cast<std::size_t>(match_right[v]))) {
                match_right[v] = static_cast<std::ptrdiff_t>(u);
                return true;
            }
        }
        return false;
    };
    std::size_t matched = 0;
    for (std::size_t u = 0; u < adj.size(); ++u) {
        visited.assign(right_size, 0);
        if (try_augment(u)) {
            ++matched;
        }
    }
    return matched;
}

// mno from the composition matrix C (rows: A clusters, cols: B clusters):
// every A cluster keeps one of its maximum-overlap tags, a maximum matching
// makes as many tags distinct as possible, the rest is moves plus joins.
long long mno_from_composition(const std::vector<std::vector<long long>>& c,
                               long long n) {
    const std::size_t rows = c.size();
    if (rows == 0) {
        return 0;
    }
    const std::size_t cols = c[0].size();
    long long retained = 0;
    std::vector<std::vector<std::size_t>> candidates(rows);
    for (std::size_t i = 0; i < rows; ++i) {
        long long best = 0;
        for (long long v : c[i]) {
            best = std::max(best, v);
        }
        retained += best;
        for (std::size_t j = 0; j < cols; ++j) {
            if (c[i][j] == best && best > 0) {
                candidates[i].push_back(j);
            }
        }
    }
    const auto distinct_tags =
        static_cast<long long>(max_bipartite_matching(candidates, cols));
    const long long moves = n - retained;
    const long long joins = static_cast<long long>(rows) - distinct_tags;
    return moves + joins;
}

std::vector<std::vector<long long>> composition_matrix(const Decomposition& a,
                                                       const Decomposition& b) {
    std::map<EntityId, std::size_t> b_index;
    std::size_t bi = 0;
    for (const auto& [name, members] : b.clusters) {
        for (EntityId e : members) {
            b_index[e] = bi;
        }
        ++bi;
    }
    std::vector<std::vector<long long>> c;
    c.reserve(a.clusters.size());
    for (const auto& [name, members] : a.clusters) {
        std::vector<long long> row(b.clusters.size(), 0);
        for (EntityId e : members) {
            ++row[b_index.at(e)];
        }
        c.push_back(std::move(row));
    }
    return c;
}

} // namespace

std::pair<Decomposition, Decomposition> align_universes(const Decomposition& a,
                                                        const Decomposition& b,
                                                        AlignStrategy strategy) {
    const std::set<EntityId> ua = a.universe();
    const std::set<EntityId> ub = b.universe();

    if (strategy == AlignStrategy::DropUncommon) {
        std::set<EntityId> common;
        std::set_intersection(ua.begin(), ua.end(), ub.begin(), ub.end(),
                              std::inserter(common, common.begin()));
        if (common.empty()) {
            throw DomainError("EMPTY_INTERSECTION",
                              "universes share no entities under DROP_UNCOMMON");
        }
        auto restrict_to = [&common](const Decomposition& d) {
            Decomposition out;
            for (const auto& [name, members] : d.clusters) {
                std::set<EntityId> kept;
                for (EntityId e : members) {
                    if (common.contains(e)) {
                        kept.insert(e);
                    }
                }
                if (!kept.empty()) {
                    out.clusters.emplace(name, std::move(kept));
                }
            }
            return out;
        };
        return {restrict_to(a), restrict_to(b)};
    }

    auto adopt_missing = [](const Decomposition& into, const std::set<EntityId>& own,
                            const std::set<EntityId>& other) {
        Decomposition out = into;
        std::vector<EntityId> missing;
        std::set_difference(other.begin(), other.end(), own.begin(), own.end(),
                            std::back_inserter(missing));
        if (missing.empty()) {
            return out;
        }
        if (out.clusters.empty()) {
            throw DomainError("EMPTY_DECOMPOSITION",
                              "cannot place entities: decomposition has no clusters");
        }
        // Biggest cluster of the original; name breaks size ties.
        const std::string* target = nullptr;
        std::size_t best = 0;
        for (const auto& [name, members] : out.clusters) {
            if (members.size() > best) {
                best = members.size();
                target = &name;
            }
        }
        auto& cluster = out.clusters[*target];
        cluster.insert(missing.begin(), missing.end());
        return out;
    };
    return {adopt_missing(a, ua, ub), adopt_missing(b, ub, ua)};
}

long long mojo_distance(const Decomposition& a, const Decomposition& b) {
    require_equal_universes(a, b);
    const long long n = static_cast<long long>(a.universe_size());
    return mno_from_composition(composition_matrix(a, b), n);
}

long long max_mojo_distance_enumerated(const Decomposition& b) {
    const std::set<EntityId> universe = b.universe();
    const std::size_t n = universe.size();
    if (n > 12) {
        throw DomainError("UNIVERSE_TOO_LARGE",
                          "set-partition enumeration is limited to 12 entities");
    }
    std::vector<std::size_t> b_of(n);
    {
        std::map<EntityId, std::size_t> b_index;
        std::size_t bi = 0;
        for (const auto& [name, members] : b.clusters) {
            for (EntityId e : members) {
                b_index[e] = bi;
            }
            ++bi;
        }
        std::size_t i = 0;
        for (EntityId e : universe) {
            b_of[i++] = b_index.at(e);
        }
    }
    const std::size_t m = b.clusters.size();

    // Restricted growth strings enumerate every partition exactly once.
    std::vector<std::size_t> label(n, 0);
    std::vector<std::vector<long long>> c;
    long long best = 0;
    std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t i,
                                                             std::size_t used) {
        if (i == n) {
            c.assign(used, std::vector<long long>(m, 0));
            for (std::size_t k = 0; k < n; ++k) {
                ++c[label[k]][b_of[k]];
            }
            best = std::max(best,
                            mno_from_composition(c, static_cast<long long>(n)));
            return;
        }
        for (std::size_t l = 0; l <= used; ++l) {
            label[i] = l;
            walk(i + 1, std::max(used, l + 1));
        }
    };
    walk(0, 0);
    return best;
}

long long max_mojo_distance_constructed(std::vector<long long> cluster_sizes) {
    std::sort(cluster_sizes.begin(), cluster_sizes.end(), std::greater<>());
    const std::size_t m = cluster_sizes.size();
    long long n = 0;
    for (long long s : cluster_sizes) {
        n += s;
    }
    const long long s_max = cluster_sizes.empty() ? 0 : cluster_sizes[0];

    long long best = 0;
    auto consider = [&](const std::vector<std::vector<long long>>& c) {
        best = std::max(best, mno_from_composition(c, n));
    };

    // All singletons.
    {
        std::vector<std::vector<long long>> c;
        for (std::size_t j = 0; j < m; ++j) {
            for (long long k = 0; k < cluster_sizes[j]; ++k) {
                std::vector<long long> row(m, 0);
                row[j] = 1;
                c.push_back(std::move(row));
            }
        }
        consider(c);
    }

    // Staircase transversals of depth t: level k holds one entity of every
    // reference cluster with at least k members. The remainder is either
    // lumped into the deepest level or scattered as singletons.
    for (long long t = 1; t <= s_max; ++t) {
        std::vector<std::vector<long long>> lumped;
        for (long long k = 1; k < t; ++k) {
            std::vector<long long> row(m, 0);
            for (std::size_t j = 0; j < m; ++j) {
                row[j] = cluster_sizes[j] >= k ? 1 : 0;
            }
            lumped.push_back(std::move(row));
        }
        std::vector<long long> rest(m, 0);
        bool any = false;
        for (std::size_t j = 0; j < m; ++j) {
            rest[j] = std::max<long long>(0, cluster_sizes[j] - (t - 1));
            any = any || rest[j] > 0;
        }
        std::vector<std::vector<long long>> scattered = lumped;
        if (any) {
            lumped.push_back(rest);
        }
        consider(lumped);

        {
            std::vector<long long> level(m, 0);
            for (std::size_t j = 0; j < m; ++j) {
                level[j] = cluster_sizes[j] >= t ? 1 : 0;
            }
            if (std::any_of(level.begin(), level.end(),
                            [](long long v) { return v > 0; })) {
                scattered.push_back(std::move(level));
            }
            for (std::size_t j = 0; j < m; ++j) {
                for (long long k = 0; k < cluster_sizes[j] - t; ++k) {
                    std::vector<long long> row(m, 0);
                    row[j] = 1;
                    scattered.push_back(std::move(row));
                }
            }
            consider(scattered);
        }
    }
    return best;
}

MaxMnoResult max_mojo_distance(const Decomposition& b) {
    const std::size_t n = b.universe_size();
    if (n < 2) {
        throw DomainError("SINGLETON_UNIVERSE",
                          "max mojo distance needs at least 2 entities");
    }
    if (n <= 12) {
        return {max_mojo_distance_enumerated(b), MaxMnoMethod::Enumeration};
    }
    std::vector<long long> sizes;
    sizes.reserve(b.clusters.size());
    for (const auto& [name, members] : b.clusters) {
        sizes.push_back(static_cast<long long>(members.size()));
    }
    return {max_mojo_distance_constructed(std::move(sizes)),
            MaxMnoMethod::Construction};
}

MojoResult mojofm(const Decomposition& a, const Decomposition& b) {
    require_equal_universes(a, b);
    const auto max = max_mojo_distance(b);
    MojoResult r;
    r.mno = mojo_distance(a, b);
    r.max_mno = max.value;
    r.max_method = max.method;
    r.mojo_fm = (1.0 - static_cast<double>(r.mno) / static_cast<double>(r.max_mno)) *
                100.0;
    return r;
}

long long brute_force_mno(const Decomposition& a, const Decomposition& b) {
    require_equal_universes(a, b);
    const std::set<EntityId> universe = a.universe();
    const std::size_t n = universe.size();
    if (n > 8) {
        throw DomainError("UNIVERSE_TOO_LARGE",
                          "brute-force search is limited to 8 entities");
    }
    if (n == 0) {
        return 0;
    }

    std::map<EntityId, std::size_t> index;
    std::size_t i = 0;
    for (EntityId e : universe) {
        index[e] = i++;
    }

    // States are canonical label vectors (first-occurrence order) packed
    // 4 bits per element.
    auto encode = [n](const std::vector<std::uint8_t>& labels) {
        std::array<std::int8_t, 16> remap;
        remap.fill(-1);
        std::uint32_t packed = 0;
        std::uint8_t next = 0;
        for (std::size_t k = 0; k < n; ++k) {
            if (remap[labels[k]] < 0) {
                remap[labels[k]] = static_cast<std::int8_t>(next++);
            }
            packed |= static_cast<std::uint32_t>(remap[labels[k]]) << (4 * k);
        }
        return packed;
    };
    auto labels_of = [&](const Decomposition& d) {
        std::vector<std::uint8_t> labels(n, 0);
        std::uint8_t cl = 0;
        for (const auto& [name, members] : d.clusters) {
            for (EntityId e : members) {
                labels[index.at(e)] = cl;
            }
            ++cl;
        }
        return labels;
    };

    const std::uint32_t start = encode(labels_of(a));
    const std::uint32_t goal = encode(labels_of(b));
    if (start == goal) {
        return 0;
    }

    auto decode = [n](std::uint32_t packed) {
        std::vector<std::uint8_t> labels(n);
        for (std::size_t k = 0; k < n; ++k) {
            labels[k] = static_cast<std::uint8_t>((packed >> (4 * k)) & 0xF);
        }
        return labels;
    };

    std::unordered_set<std::uint32_t> seen{start};
    std::deque<std::pair<std::uint32_t, long long>> frontier{{start, 0}};
    while (!frontier.empty()) {
        const auto [state, dist] = frontier.front();
        frontier.pop_front();
        const auto labels = decode(state);
        std::uint8_t cluster_count = 0;
        for (std::uint8_t l : labels) {
            cluster_count = std::max<std::uint8_t>(cluster_count, l + 1);
        }

        auto visit = [&](const std::vector<std::uint8_t>& next_labels) -> bool {
            const std::uint32_t next = encode(next_labels);
            if (next == goal) {
                return true;
            }
            if (seen.insert(next).second) {
                frontier.emplace_back(next, dist + 1);
            }
            return false;
        };

        // Moves: any element to any other existing cluster or a fresh one.
        for (std::size_t k = 0; k < n; ++k) {
            for (std::uint8_t target = 0; target <= cluster_count; ++target) {
                if (target == labels[k]) {
                    continue;
                }
                std::vector<std::uint8_t> next_labels = labels;
                next_labels[k] = target;
                if (visit(next_labels)) {
                    return dist + 1;
                }
            }
        }
        // Joins: merge any two clusters.
        for (std::uint8_t c1 = 0; c1 < cluster_count; ++c1) {
            for (std::uint8_t c2 = static_cast<std::uint8_t>(c1 + 1);
                 c2 < cluster_count; ++c2) {
                std::vector<std::uint8_t> next_labels = labels;
                for (auto& l : next_labels) {
                    if (l == c2) {
                        l = c1;
                    }
                }
                if (visit(next_labels)) {
                    return dist + 1;
                }
            }
        }
    }
    throw Error("state space exhausted without reaching the target partition");
}

const char* to_string(MaxMnoMethod m) {
    return m == MaxMnoMethod::Enumeration ? "enumeration" : "construction";
}

} // namespace monodec

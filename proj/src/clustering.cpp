#include "monodec/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "monodec/errors.hpp"

namespace monodec {

DistanceMatrix similarity_to_distance(const SimilarityMatrix& s, DistanceMode mode) {
    DistanceMatrix d;
    d.entities = s.entities;
    const std::size_t n = s.size();
    d.values.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double v = 0.0;
            if (mode == DistanceMode::RowEuclidean) {
                double sum = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double diff = s.at(i, k) - s.at(j, k);
                    sum += diff * diff;
                }
                v = std::sqrt(sum);
            } else {
                v = 1.0 - (s.at(i, j) + s.at(j, i)) / 2.0;
            }
            d.at(i, j) = v;
            d.at(j, i) = v;
        }
    }
    return d;
}

Dendrogram agglomerate(const DistanceMatrix& d, Linkage linkage) {
    const std::size_t n = d.size();
    if (n == 0) {
        throw DomainError("EMPTY_MATRIX", "cannot cluster zero entities");
    }
    Dendrogram dg;
    dg.leaves = d.entities;
    if (n == 1) {
        return dg;
    }

    // Working copy; merged clusters reuse the slot of the pair's first
    // member, the second slot leaves the active list.
    std::vector<double> w = d.values;
    auto dist = [&](std::size_t a, std::size_t b) -> double& { return w[a * n + b]; };

    std::vector<std::size_t> active(n);
    std::iota(active.begin(), active.end(), 0);
    std::vector<std::size_t> node_of(n);
    std::iota(node_of.begin(), node_of.end(), 0);
    std::vector<std::size_t> cluster_size(n, 1);

    dg.merges.reserve(n - 1);
    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best_a = 0, best_b = 1;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t ai = 0; ai < active.size(); ++ai) {
            for (std::size_t bi = ai + 1; bi < active.size(); ++bi) {
                const double v = dist(active[ai], active[bi]);
                if (v < best) {
                    best = v;
                    best_a = ai;
                    best_b = bi;
                }
            }
        }
        const std::size_t ia = active[best_a];
        const std::size_t ib = active[best_b];

        dg.merges.push_back({node_of[ia], node_of[ib], best});

        const double na = static_cast<double>(cluster_size[ia]);
        const double nb = static_cast<double>(cluster_size[ib]);
        for (std::size_t k : active) {
            if (k == ia || k == ib) {
                continue;
            }
            double updated = 0.0;
            switch (linkage) {
                case Linkage::Single:
                    updated = std::min(dist(k, ia), dist(k, ib));
                    break;
                case Linkage::Complete:
                    updated = std::max(dist(k, ia), dist(k, ib));
                    break;
                case Linkage::Average:
                    updated = (na * dist(k, ia) + nb * dist(k, ib)) / (na + nb);
                    break;
            }
            dist(k, ia) = updated;
            dist(ia, k) = updated;
        }
        cluster_size[ia] += cluster_size[ib];
        node_of[ia] = n + step;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(best_b));
    }
    return dg;
}

Decomposition cut(const Dendrogram& dg, std::size_t n) {
    const std::size_t leaves = dg.leaves.size();
    if (n < 1 || n > leaves) {
        throw DomainError("CUT_RANGE",
                          "cannot cut " + std::to_string(leaves) +
                              " entities into " + std::to_string(n) + " clusters");
    }
    // Apply all but the last n-1 merges.
    const std::size_t applied = dg.merges.size() - (n - 1);
    std::vector<std::size_t> root(leaves + applied);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](std::size_t x) {
        while (root[x] != x) {
            root[x] = root[root[x]];
            x = root[x];
        }
        return x;
    };
    for (std::size_t k = 0; k < applied; ++k) {
        const auto& m = dg.merges[k];
        root[find(m.left)] = leaves + k;
        root[find(m.right)] = leaves + k;
    }

    // Group leaves by component; name clusters by ascending smallest leaf
    // index, which is also first-visit order over the leaves.
    std::map<std::size_t, std::set<EntityId>> components;
    std::vector<std::size_t> roots_in_order;
    for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
        const std::size_t r = find(leaf);
        if (components.try_emplace(r).second) {
            roots_in_order.push_back(r);
        }
        components[r].insert(dg.leaves[leaf]);
    }

    Decomposition d;
    std::size_t idx = 0;
    for (std::size_t r : roots_in_order) {
        d.clusters["c" + std::to_string(idx++)] = std::move(components[r]);
    }
    return d;
}

std::string dendrogram_to_json(const Dendrogram& dg) {
    nlohmann::json root;
    root["leaves"] = dg.leaves;
    nlohmann::json merges = nlohmann::json::array();
    char buf[40];
    for (const auto& m : dg.merges) {
        std::snprintf(buf, sizeof(buf), "%.9g", m.height);
        merges.push_back(nlohmann::json::array(
            {m.left, m.right, std::strtod(buf, nullptr)}));
    }
    root["merges"] = std::move(merges);
    return root.dump(2) + "\n";
}

} // namespace monodec

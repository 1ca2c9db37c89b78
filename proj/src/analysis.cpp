#include "monodec/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include <Eigen/Dense>
#include <json.hpp>

#include "monodec/errors.hpp"
#include "monodec/format.hpp"
#include "monodec/stats.hpp"

namespace monodec {

std::vector<Weights> enumerate_weightings(int step) {
    if (step <= 0 || 100 % step != 0) {
        throw DomainError("WEIGHT_GRID",
                          "step must be a positive divisor of 100, got " +
                              std::to_string(step));
    }
    std::vector<Weights> out;
    for (int a = 0; a <= 100; a += step) {
        for (int w = 0; a + w <= 100; w += step) {
            for (int r = 0; a + w + r <= 100; r += step) {
                out.push_back({a, w, r, 100 - a - w - r});
            }
        }
    }
    return out;
}

std::vector<SweepRecord> sweep(const Monolith& m, int n_min, int n_max, int step,
                               const SweepConfig& config) {
    if (n_min < 1 || n_min > n_max) {
        throw DomainError("N_RANGE", "invalid cluster-count range " +
                                         std::to_string(n_min) + ".." +
                                         std::to_string(n_max));
    }
    if (static_cast<std::size_t>(n_max) > m.entities.size()) {
        throw DomainError("N_RANGE",
                          "cannot cut " + std::to_string(m.entities.size()) +
                              " entities into " + std::to_string(n_max) + " clusters");
    }

    const std::vector<Weights> weightings = enumerate_weightings(step);
    const AccessIndex index = build_access_index(m);
    const SimilarityMatrix access = access_matrix(index);
    const SimilarityMatrix write = write_matrix(index);
    const SimilarityMatrix read = read_matrix(index);
    const SimilarityMatrix sequence = sm_sequence_matrix(m, config.sequence);
    const ComplexityAnalyzer analyzer(m, config.complexity);

    const int n_count = n_max - n_min + 1;
    std::vector<SweepRecord> records(weightings.size() *
                                     static_cast<std::size_t>(n_count));

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t wi = next.fetch_add(1);
            if (wi >= weightings.size() || failed.load()) {
                return;
            }
            const Weights& w = weightings[wi];
            try {
                const SimilarityMatrix combined =
                    combine(access, write, read, sequence, w);
                const DistanceMatrix distance =
                    similarity_to_distance(combined, config.distance_mode);
                const Dendrogram dendrogram = agglomerate(distance, config.linkage);
                for (int n = n_min; n <= n_max; ++n) {
                    SweepRecord record;
                    record.weights = w;
                    record.n_clusters = n;
                    record.decomposition = cut(dendrogram, static_cast<std::size_t>(n));
                    record.uniform_complexity =
                        analyzer.system_complexity(record.decomposition).uniform;
                    records[wi * static_cast<std::size_t>(n_count) +
                            static_cast<std::size_t>(n - n_min)] = std::move(record);
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true)) {
                    failure = "sweep cell (weights " + std::to_string(w.access) + "," +
                              std::to_string(w.write) + "," + std::to_string(w.read) +
                              "," + std::to_string(w.sequence) + ") failed: " + e.what();
                }
                return;
            }
        }
    };

    unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                    : std::max(1u, std::thread::hardware_concurrency());
    jobs = std::min<unsigned>(jobs, static_cast<unsigned>(weightings.size()));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (failed.load()) {
        throw Error(failure);
    }
    return records;
}

std::map<int, SweepRecord> best_per_n(const std::vector<SweepRecord>& records) {
    if (records.empty()) {
        throw DomainError("EMPTY_SWEEP", "no records to select from");
    }
    std::map<int, SweepRecord> best;
    for (const SweepRecord& r : records) {
        auto it = best.find(r.n_clusters);
        if (it == best.end()) {
            best.emplace(r.n_clusters, r);
            continue;
        }
        const SweepRecord& cur = it->second;
        if (r.uniform_complexity < cur.uniform_complexity ||
            (r.uniform_complexity == cur.uniform_complexity &&
             r.weights < cur.weights)) {
            it->second = r;
        }
    }
    return best;
}

namespace {

const char* const kTermNames[] = {"A", "W", "R", "S", "N", "const"};

Eigen::MatrixXd design_matrix(const std::vector<SweepRecord>& records, bool intercept) {
    const auto rows = static_cast<Eigen::Index>(records.size());
    Eigen::MatrixXd x(rows, intercept ? 6 : 5);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const SweepRecord& r = records[static_cast<std::size_t>(i)];
        x(i, 0) = r.weights.access;
        x(i, 1) = r.weights.write;
        x(i, 2) = r.weights.read;
        x(i, 3) = r.weights.sequence;
        x(i, 4) = r.n_clusters;
        if (intercept) {
            x(i, 5) = 1.0;
        }
    }
    return x;
}

std::string describe_dependency(const Eigen::MatrixXd& x) {
    Eigen::FullPivLU<Eigen::MatrixXd> lu(x);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() == 0) {
        return "unidentified dependency";
    }
    std::string out = "linear dependency:";
    for (Eigen::Index j = 0; j < kernel.rows(); ++j) {
        const double c = kernel(j, 0);
        if (std::fabs(c) > 1e-9) {
            out += " " + fixed(c, 4) + "*" + kTermNames[j];
        }
    }
    return out + " = 0";
}

} // namespace

RegressionReport ols_fit(const std::vector<SweepRecord>& records, InterceptMode mode) {
    if (records.size() < 7) {
        throw DomainError("TOO_FEW_RECORDS",
                          "need at least 7 records, got " +
                              std::to_string(records.size()));
    }
    const bool intercept = mode == InterceptMode::Pseudoinverse;
    const Eigen::MatrixXd x = design_matrix(records, intercept);
    Eigen::VectorXd y(static_cast<Eigen::Index>(records.size()));
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        y(i) = records[static_cast<std::size_t>(i)].uniform_complexity;
    }
    const auto n = static_cast<double>(records.size());
    const Eigen::Index p = x.cols();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double sigma_max = sigma(0);
    const double sigma_min = sigma(sigma.size() - 1);
    const double rank_tol =
        sigma_max * n * std::numeric_limits<double>::epsilon();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > rank_tol) {
            ++rank;
        }
    }
    if (!intercept && rank < p) {
        throw DomainError("RANK_DEFICIENT", describe_dependency(x));
    }

    // Minimum-norm least squares through the truncated SVD; for a
    // full-rank design this is the ordinary solution.
    Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(sigma.size());
    for (Eigen::Index i = 0; i < rank; ++i) {
        inv_sigma(i) = 1.0 / sigma(i);
    }
    const Eigen::VectorXd beta =
        svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose() * y;

    const Eigen::VectorXd residuals = y - x * beta;
    const double rss = residuals.squaredNorm();
    const double mean_y = y.mean();
    const double tss = (y.array() - mean_y).square().sum();

    const double dof = n - static_cast<double>(rank);
    const double sigma2 = dof > 0 ? rss / dof : 0.0;
    // Covariance of the (minimum-norm) estimator: sigma^2 V S^-2 V'.
    const Eigen::MatrixXd cov = svd.matrixV() *
                                inv_sigma.array().square().matrix().asDiagonal() *
                                svd.matrixV().transpose() * sigma2;

    const double t975 = dof > 0 ? student_t_975(dof) : 0.0;

    RegressionReport report;
    report.sample_size = records.size();
    report.rank = rank;
    report.intercept = mode;
    report.condition_number =
        sigma_min > 0.0 ? sigma_max / sigma_min : std::numeric_limits<double>::max();
    report.r_squared = tss > 0.0 ? 1.0 - rss / tss : (rss == 0.0 ? 1.0 : 0.0);
    for (Eigen::Index j = 0; j < 6; ++j) {
        const char* term = kTermNames[j];
        if (j < p) {
            const double coef = beta(j);
            const double se = std::sqrt(std::max(0.0, cov(j, j)));
            report.coefficients[term] = coef;
            report.confidence_intervals_95[term] = {coef - t975 * se, coef + t975 * se};
        } else {
            report.coefficients[term] = 0.0;
            report.confidence_intervals_95[term] = {0.0, 0.0};
        }
    }

    // Overall F-test against the mean-only baseline; the numerator loses a
    // degree of freedom when the model space already contains the constant
    // direction (it does on any genuine sweep: weights sum to 100).
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(y.size());
    const Eigen::VectorXd fitted_const =
        x * (svd.matrixV() * inv_sigma.asDiagonal() * svd.matrixU().transpose() * ones);
    const bool constant_in_span = (fitted_const - ones).norm() < 1e-8 * ones.norm();
    report.f_dof_num = std::max<long long>(1, rank - (constant_in_span ? 1 : 0));
    report.f_dof_den = static_cast<long long>(dof);
    if (dof > 0 && rss > 0 && tss > rss) {
        report.f_statistic = ((tss - rss) / static_cast<double>(report.f_dof_num)) /
                             (rss / dof);
        report.f_p_value = f_sf(report.f_statistic, static_cast<double>(report.f_dof_num),
                                dof);
    } else if (tss > 0 && rss == 0.0) {
        report.f_statistic = std::numeric_limits<double>::max();
        report.f_p_value = 0.0;
    }
    return report;
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
    std::string csv = "access,write,read,sequence,nClusters,uniformComplexity\n";
    for (const SweepRecord& r : records) {
        csv += std::to_string(r.weights.access) + "," + std::to_string(r.weights.write) +
               "," + std::to_string(r.weights.read) + "," +
               std::to_string(r.weights.sequence) + "," +
               std::to_string(r.n_clusters) + "," + fixed(r.uniform_complexity, 9) +
               "\n";
    }
    return csv;
}

std::string best_per_n_to_csv(const std::map<int, SweepRecord>& best) {
    std::string csv = "nClusters,access,write,read,sequence,uniformComplexity\n";
    for (const auto& [n, r] : best) {
        csv += std::to_string(n) + "," + std::to_string(r.weights.access) + "," +
               std::to_string(r.weights.write) + "," + std::to_string(r.weights.read) +
               "," + std::to_string(r.weights.sequence) + "," +
               fixed(r.uniform_complexity, 9) + "\n";
    }
    return csv;
}

std::string regression_to_json(const RegressionReport& r) {
    nlohmann::json root;
    root["coefficients"] = r.coefficients;
    nlohmann::json intervals = nlohmann::json::object();
    for (const auto& [term, ci] : r.confidence_intervals_95) {
        intervals[term] = nlohmann::json::array({ci.first, ci.second});
    }
    root["confidenceIntervals95"] = std::move(intervals);
    root["rSquared"] = r.r_squared;
    root["conditionNumber"] = r.condition_number;
    root["sampleSize"] = r.sample_size;
    root["rank"] = r.rank;
    root["intercept"] = r.intercept == InterceptMode::None ? "none" : "pseudoinverse";
    root["fStatistic"] = r.f_statistic;
    root["fPValue"] = r.f_p_value;
    root["fDof"] = nlohmann::json::array({r.f_dof_num, r.f_dof_den});
    return root.dump(2) + "\n";
}

std::string regression_to_table(const RegressionReport& r) {
    std::string out;
    out += "term      Coef.        95% interval\n";
    for (const char* term : kTermNames) {
        if (!r.coefficients.contains(term)) {
            continue;
        }
        const double coef = r.coefficients.at(term);
        const auto& [lo, hi] = r.confidence_intervals_95.at(term);
        char line[96];
        std::snprintf(line, sizeof(line), "%-8s %10.4g    [%.4g, %.4g]\n", term, coef,
                      lo, hi);
        out += line;
    }
    out += "R^2      " + fixed(r.r_squared, 3) + "\n";
    out += "n        " + std::to_string(r.sample_size) + "\n";
    return out;
}

} // namespace monodec

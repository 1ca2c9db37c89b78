#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "monodec/analysis.hpp"
#include "monodec/clustering.hpp"
#include "monodec/complexity.hpp"
#include "monodec/errors.hpp"
#include "monodec/format.hpp"
#include "monodec/generator.hpp"
#include "monodec/mojofm.hpp"
#include "monodec/similarity.hpp"
#include "monodec/trace_io.hpp"

namespace fs = std::filesystem;
using namespace monodec;

namespace {

constexpr const char* kVersion = "0.1.0";

// Exit contract: 0 success, 1 domain error, 2 usage or I/O error.
struct IoFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open " + path.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (!in.good() && !in.eof()) {
        throw IoFailure("failed reading " + path.string());
    }
    return std::move(buffer).str();
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoFailure("cannot write " + path.string());
    }
    out << content;
    if (!out.good()) {
        throw IoFailure("failed writing " + path.string());
    }
}

struct PipelineOptions {
    std::string output_dir = ".";
    std::string distance = "row-euclidean";
    std::string linkage = "average";
    std::string aggregation = "mean";
    bool strict_summation = false;
    bool sequence_self_pairs = false;
    std::string intercept = "none";
    int step = 10;
    int n_min = 3;
    int n_max = 10;
    int jobs = 0;

    DistanceMode distance_mode() const {
        return distance == "one-minus-sym" ? DistanceMode::OneMinusSym
                                           : DistanceMode::RowEuclidean;
    }
    Linkage linkage_mode() const {
        if (linkage == "single") return Linkage::Single;
        if (linkage == "complete") return Linkage::Complete;
        return Linkage::Average;
    }
    ComplexityOptions complexity_options() const {
        return {aggregation == "max" ? TraceAggregation::Max : TraceAggregation::Mean,
                strict_summation};
    }
    SweepConfig sweep_config() const {
        SweepConfig cfg;
        cfg.distance_mode = distance_mode();
        cfg.linkage = linkage_mode();
        cfg.complexity = complexity_options();
        cfg.sequence = {sequence_self_pairs};
        cfg.jobs = jobs;
        return cfg;
    }
    nlohmann::json to_json() const {
        return {{"distance", distance},
                {"linkage", linkage},
                {"aggregation", aggregation},
                {"strictSummation", strict_summation},
                {"sequenceSelfPairs", sequence_self_pairs},
                {"intercept", intercept},
                {"step", step},
                {"nMin", n_min},
                {"nMax", n_max}};
    }
};

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& opts, bool with_sweep_grid) {
    cmd->add_option("--output-dir", opts.output_dir, "Directory for written artifacts")
        ->envname("MONODEC_OUT");
    cmd->add_option("--distance", opts.distance, "Similarity-to-distance bridge")
        ->check(CLI::IsMember({"row-euclidean", "one-minus-sym"}));
    cmd->add_option("--linkage", opts.linkage, "Agglomeration linkage")
        ->check(CLI::IsMember({"average", "single", "complete"}));
    cmd->add_option("--aggregation", opts.aggregation,
                    "Per-functionality aggregation over traces")
        ->check(CLI::IsMember({"mean", "max"}));
    cmd->add_flag("--strict-summation", opts.strict_summation,
                  "Score unsplit traces by the literal summation");
    cmd->add_flag("--sequence-self-pairs", opts.sequence_self_pairs,
                  "Count same-entity adjacencies in the sequence measure");
    if (with_sweep_grid) {
        cmd->add_option("--step", opts.step, "Weight grid step (divides 100)");
        cmd->add_option("--n-min", opts.n_min, "Smallest cluster count");
        cmd->add_option("--n-max", opts.n_max, "Largest cluster count");
        cmd->add_option("--jobs", opts.jobs, "Worker threads (0: all cores)");
        cmd->add_option("--intercept", opts.intercept, "Regression intercept handling")
            ->check(CLI::IsMember({"none", "pseudoinverse"}));
    }
}

Weights parse_weights_arg(const std::vector<int>& values) {
    if (values.size() != 4) {
        throw DomainError("WEIGHT_ARG",
                          "expected four comma-separated weights: access,write,read,sequence");
    }
    return {values[0], values[1], values[2], values[3]};
}

struct PipelineArtifacts {
    SimilarityMatrix combined;
    Dendrogram dendrogram;
};

PipelineArtifacts build_dendrogram(const Monolith& m, const Weights& w,
                                   const PipelineOptions& opts) {
    const AccessIndex idx = build_access_index(m);
    PipelineArtifacts artifacts;
    artifacts.combined =
        combine(access_matrix(idx), write_matrix(idx), read_matrix(idx),
                sm_sequence_matrix(m, {opts.sequence_self_pairs}), w);
    artifacts.dendrogram = agglomerate(
        similarity_to_distance(artifacts.combined, opts.distance_mode()),
        opts.linkage_mode());
    return artifacts;
}

int cmd_validate(const std::string& trace_path) {
    const ValidationReport report = validate_monolith(parse_trace_file(read_file(trace_path)));
    for (const ValidationIssue& e : report.errors) {
        std::cout << "ERROR " << e.code << " " << e.location << ": " << e.message
                  << "\n";
    }
    for (const ValidationIssue& w : report.warnings) {
        std::cout << "WARNING " << w.code << " " << w.location << ": " << w.message
                  << "\n";
    }
    std::cout << (report.accepted() ? "accepted" : "rejected") << " ("
              << report.errors.size() << " errors, " << report.warnings.size()
              << " warnings)\n";
    return report.accepted() ? 0 : 1;
}

int cmd_decompose(const std::string& trace_path, const std::vector<int>& weight_arg,
                  int n, const PipelineOptions& opts, bool dump_similarity) {
    const Weights w = parse_weights_arg(weight_arg);
    validate_weights(w, opts.step);
    const Monolith m = parse_trace_file(read_file(trace_path));
    const PipelineArtifacts artifacts = build_dendrogram(m, w, opts);
    const Decomposition d = cut(artifacts.dendrogram, static_cast<std::size_t>(n));

    const fs::path outdir(opts.output_dir);
    write_file(outdir / "decomposition.json", serialize_decomposition(d));
    write_file(outdir / "dendrogram.json", dendrogram_to_json(artifacts.dendrogram));
    if (dump_similarity) {
        write_file(outdir / "similarity.csv", similarity_to_csv(artifacts.combined));
    }
    std::cout << "wrote " << (outdir / "decomposition.json").string() << " ("
              << d.clusters.size() << " clusters) and "
              << (outdir / "dendrogram.json").string() << "\n";
    for (const auto& [name, members] : d.clusters) {
        std::cout << name << ":";
        for (EntityId e : members) {
            std::cout << " " << e;
        }
        std::cout << "\n";
    }
    return 0;
}

int cmd_complexity(const std::string& trace_path, const std::string& decomposition_path,
                   const PipelineOptions& opts) {
    const Monolith m = parse_trace_file(read_file(trace_path));
    const Decomposition d = parse_decomposition(read_file(decomposition_path));

    std::set<EntityId> universe;
    for (const auto& [id, name] : m.entities) {
        universe.insert(id);
    }
    const std::set<EntityId> covered = d.universe();
    std::vector<EntityId> unassigned;
    std::set_difference(universe.begin(), universe.end(), covered.begin(),
                        covered.end(), std::back_inserter(unassigned));
    if (!unassigned.empty()) {
        std::string list;
        for (EntityId e : unassigned) {
            list += (list.empty() ? "" : ", ") + std::to_string(e);
        }
        throw DomainError("UNASSIGNED_ENTITY", "entities not covered: " + list);
    }
    check_partition(d, universe);

    const ComplexityAnalyzer analyzer(m, opts.complexity_options());
    const ComplexityReport report = analyzer.system_complexity(d);
    const fs::path outdir(opts.output_dir);
    write_file(outdir / "complexity.json", complexity_report_to_json(report));
    write_file(outdir / "complexity.csv", complexity_report_to_csv(report));
    std::cout << "total=" << fixed(report.total, 6)
              << " maxComplexity=" << fixed(report.max_complexity, 6)
              << " uniform=" << fixed(report.uniform, 9) << "\n";
    std::cout << "wrote " << (outdir / "complexity.json").string() << " and "
              << (outdir / "complexity.csv").string() << "\n";
    return 0;
}

std::string mojofm_csv_row(int n_clusters, const std::string& source,
                           const MojoResult& r) {
    return std::to_string(n_clusters) + "," + source + "," + std::to_string(r.mno) +
           "," + std::to_string(r.max_mno) + "," + percent2(r.mojo_fm) + "\n";
}

int cmd_mojofm(const std::string& path_a, const std::string& path_b,
               const std::string& strategy, const std::string& reference,
               const std::string& csv_out, std::string label) {
    const Decomposition a = parse_decomposition(read_file(path_a));
    const Decomposition b = parse_decomposition(read_file(path_b));
    const AlignStrategy align = strategy == "drop-uncommon"
                                    ? AlignStrategy::DropUncommon
                                    : AlignStrategy::BiggestCluster;
    const auto [aligned_a, aligned_b] = align_universes(a, b, align);
    const MojoResult r = reference == "a" ? mojofm(aligned_b, aligned_a)
                                          : mojofm(aligned_a, aligned_b);
    std::cout << "mno=" << r.mno << " maxMno=" << r.max_mno << " ("
              << to_string(r.max_method) << ") mojoFm=" << percent2(r.mojo_fm) << "\n";
    if (!csv_out.empty()) {
        if (label.empty()) {
            label = fs::path(path_a).stem().string();
        }
        write_file(csv_out, "nClusters,source,mno,maxMno,mojoFm\n" +
                                mojofm_csv_row(static_cast<int>(aligned_a.clusters.size()),
                                               label, r));
        std::cout << "wrote " << csv_out << "\n";
    }
    return 0;
}

int cmd_sweep(const std::string& trace_path, const PipelineOptions& opts,
              const std::string& expert_path, std::string label) {
    const std::string input = read_file(trace_path);
    const Monolith m = parse_trace_file(input);
    const std::vector<SweepRecord> records =
        sweep(m, opts.n_min, opts.n_max, opts.step, opts.sweep_config());
    const std::map<int, SweepRecord> best = best_per_n(records);
    const RegressionReport regression =
        ols_fit(records, opts.intercept == "pseudoinverse"
                             ? InterceptMode::Pseudoinverse
                             : InterceptMode::None);

    const fs::path outdir(opts.output_dir);
    std::vector<std::string> outputs;
    auto emit = [&](const std::string& name, const std::string& content) {
        write_file(outdir / name, content);
        outputs.push_back(name);
    };
    emit("sweep.csv", sweep_to_csv(records));
    emit("best_per_n.csv", best_per_n_to_csv(best));
    for (const auto& [n, record] : best) {
        emit("best_n" + std::to_string(n) + ".json",
             serialize_decomposition(record.decomposition));
    }
    emit("regression.json", regression_to_json(regression));
    emit("regression.txt", regression_to_table(regression));

    if (!expert_path.empty()) {
        const Decomposition expert = parse_decomposition(read_file(expert_path));
        if (label.empty()) {
            label = fs::path(trace_path).stem().string();
        }
        std::string csv = "nClusters,source,mno,maxMno,mojoFm\n";
        bool constructed = false;
        for (const auto& [n, record] : best) {
            const auto [aligned, aligned_expert] = align_universes(
                record.decomposition, expert, AlignStrategy::BiggestCluster);
            const MojoResult r = mojofm(aligned, aligned_expert);
            constructed = constructed || r.max_method == MaxMnoMethod::Construction;
            csv += mojofm_csv_row(n, label, r);
        }
        emit("mojofm_vs_expert.csv", csv);
        if (constructed) {
            std::cout << "note: maxMno obtained by worst-case construction "
                         "(universe above the enumeration cutoff)\n";
        }
    }

    nlohmann::json manifest;
    manifest["tool"] = "monodec";
    manifest["version"] = kVersion;
    manifest["command"] = "sweep";
    manifest["input"] = {{"path", trace_path}, {"fnv1a64", fnv1a64_hex(input)}};
    manifest["config"] = opts.to_json();
    manifest["weightings"] = enumerate_weightings(opts.step).size();
    manifest["records"] = records.size();
    manifest["outputs"] = outputs;
    write_file(outdir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "sweep: " << records.size() << " records ("
              << enumerate_weightings(opts.step).size() << " weightings x N "
              << opts.n_min << ".." << opts.n_max << ")\n";
    std::cout << "wrote " << outputs.size() + 1 << " artifacts under "
              << outdir.string() << "\n";
    return 0;
}

int cmd_generate(const GenParams& params, const std::string& out_path,
                 const std::string& planted_out) {
    const GeneratedWorkload workload = generate_monolith(params);
    write_file(out_path, serialize_monolith(workload.monolith));
    std::cout << "wrote " << out_path << " ("
              << workload.monolith.functionalities.size() << " functionalities, "
              << workload.monolith.entities.size() << " entities)\n";
    if (!planted_out.empty()) {
        write_file(planted_out, serialize_decomposition(workload.planted));
        std::cout << "wrote " << planted_out << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"monodec: entity-access traces -> candidate microservice "
                 "decompositions, complexity scoring, MoJoFM comparison"};
    app.set_version_flag("--version", kVersion);
    app.set_config("--config", "", "Read options from a config file");
    app.require_subcommand(1);

    PipelineOptions opts;

    std::string trace_path, decomposition_path, path_a, path_b;
    std::vector<int> weight_arg;
    int n_clusters = 0;
    std::string strategy = "biggest-cluster";
    std::string reference = "b";
    std::string csv_out, label, expert_path;

    CLI::App* validate = app.add_subcommand("validate", "Check a trace file");
    validate->add_option("trace", trace_path, "Trace file (JSON)")->required();

    CLI::App* decompose =
        app.add_subcommand("decompose", "Cluster entities and cut the dendrogram");
    decompose->add_option("trace", trace_path)->required();
    decompose
        ->add_option("--weights", weight_arg,
                     "access,write,read,sequence percentages")
        ->delimiter(',')
        ->required();
    decompose->add_option("--clusters", n_clusters, "Number of clusters")->required();
    add_pipeline_flags(decompose, opts, false);
    decompose->add_option("--step", opts.step, "Weight grid step (divides 100)");
    bool dump_similarity = false;
    decompose->add_flag("--dump-similarity", dump_similarity,
                        "Also write the combined similarity matrix CSV");

    CLI::App* complexity =
        app.add_subcommand("complexity", "Score a decomposition of a monolith");
    complexity->add_option("trace", trace_path)->required();
    complexity->add_option("decomposition", decomposition_path)->required();
    add_pipeline_flags(complexity, opts, false);

    CLI::App* mojo = app.add_subcommand("mojofm", "Compare two decompositions");
    mojo->add_option("a", path_a, "Candidate decomposition")->required();
    mojo->add_option("b", path_b, "Reference decomposition")->required();
    mojo->add_option("--strategy", strategy, "Universe alignment")
        ->check(CLI::IsMember({"biggest-cluster", "drop-uncommon"}));
    mojo->add_option("--reference", reference, "Which side anchors maxMno")
        ->check(CLI::IsMember({"a", "b"}));
    mojo->add_option("--csv", csv_out, "Also write a one-row comparison CSV");
    mojo->add_option("--label", label, "Source label for the CSV row");

    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "Run the full weight-grid / cluster-count protocol");
    sweep_cmd->add_option("trace", trace_path)->required();
    add_pipeline_flags(sweep_cmd, opts, true);
    sweep_cmd->add_option("--expert", expert_path,
                          "Expert decomposition to compare best-per-N against");
    sweep_cmd->add_option("--label", label, "Source label for comparison rows");

    GenParams gen_params;
    std::string gen_out, planted_out;
    CLI::App* generate = app.add_subcommand("generate", "Emit a synthetic trace file");
    generate->add_option("--seed", gen_params.seed);
    generate->add_option("--entities", gen_params.n_entities);
    generate->add_option("--functionalities", gen_params.n_functionalities);
    generate->add_option("--traces", gen_params.traces_per_functionality);
    generate->add_option("--max-trace-len", gen_params.max_trace_length);
    generate->add_option("--write-ratio", gen_params.write_ratio);
    generate->add_option("--clusteredness", gen_params.clusteredness_bias);
    generate->add_option("--families", gen_params.n_families);
    generate->add_option("--out", gen_out, "Trace file to write")->required();
    generate->add_option("--planted-out", planted_out,
                         "Also write the planted family partition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (validate->parsed()) return cmd_validate(trace_path);
        if (decompose->parsed())
            return cmd_decompose(trace_path, weight_arg, n_clusters, opts,
                                 dump_similarity);
        if (complexity->parsed())
            return cmd_complexity(trace_path, decomposition_path, opts);
        if (mojo->parsed())
            return cmd_mojofm(path_a, path_b, strategy, reference, csv_out, label);
        if (sweep_cmd->parsed()) return cmd_sweep(trace_path, opts, expert_path, label);
        if (generate->parsed()) return cmd_generate(gen_params, gen_out, planted_out);
    } catch (const IoFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

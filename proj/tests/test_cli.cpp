#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "monodec/format.hpp"
#include "monodec/mojofm.hpp"
#include "monodec/trace_io.hpp"

#ifndef MONODEC_CLI_PATH
#error "MONODEC_CLI_PATH must point at the built binary"
#endif

namespace fs = std::filesystem;
using namespace monodec;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    const fs::path log = fs::temp_directory_path() / "monodec_cli_test.log";
    const std::string cmd =
        std::string(MONODEC_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::ostringstream buf;
    buf << in.rdbuf();
    r.output = std::move(buf).str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

void spit(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << content;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("monodec_test_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string operator/(const std::string& name) const {
        return (path / name).string();
    }
};

} // namespace

TEST_CASE("cli: generate then validate round trip") {
    TempDir tmp;
    const std::string traces = tmp / "traces.json";
    const RunResult gen = run("generate --seed 3 --entities 6 --functionalities 4 "
                              "--out " + traces);
    REQUIRE(gen.exit_code == 0);
    const RunResult twice = run("generate --seed 3 --entities 6 --functionalities 4 "
                                "--out " + tmp / "again.json");
    REQUIRE(twice.exit_code == 0);
    CHECK(slurp(traces) == slurp(tmp / "again.json"));

    const RunResult ok = run("validate " + traces);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output.find("accepted") != std::string::npos);

    CHECK(run("generate --entities 0 --out " + tmp / "x.json").exit_code == 1);
}

TEST_CASE("cli: validate exit codes") {
    TempDir tmp;
    CHECK(run("validate " + tmp / "missing.json").exit_code == 2);

    spit(tmp / "empty.json", R"({"f1":{"traces":[]}})");
    const RunResult bad = run("validate " + tmp / "empty.json");
    CHECK(bad.exit_code == 1);
    CHECK(bad.output.find("NONEMPTY_TRACES") != std::string::npos);

    spit(tmp / "broken.json", "{not json");
    CHECK(run("validate " + tmp / "broken.json").exit_code == 1);
}

TEST_CASE("cli: decompose writes the decomposition and dendrogram") {
    TempDir tmp;
    const std::string traces = tmp / "traces.json";
    REQUIRE(run("generate --seed 11 --entities 8 --functionalities 5 --out " +
                traces).exit_code == 0);

    const RunResult five =
        run("decompose " + traces + " --weights 40,20,20,20 --clusters 5 "
            "--dump-similarity --output-dir " + tmp / "out");
    REQUIRE(five.exit_code == 0);
    const Decomposition d =
        parse_decomposition(slurp(fs::path(tmp / "out") / "decomposition.json"));
    CHECK(d.clusters.size() == 5);
    CHECK(fs::exists(fs::path(tmp / "out") / "dendrogram.json"));
    CHECK(slurp(fs::path(tmp / "out") / "similarity.csv").find("entity,") == 0);

    const RunResult one =
        run("decompose " + traces + " --weights 100,0,0,0 --clusters 1 "
            "--output-dir " + tmp / "one");
    REQUIRE(one.exit_code == 0);
    CHECK(parse_decomposition(slurp(fs::path(tmp / "one") / "decomposition.json"))
              .clusters.size() == 1);

    CHECK(run("decompose " + traces + " --weights 40,20,20,20 --clusters 99 "
              "--output-dir " + tmp / "bad").exit_code == 1);
    CHECK(run("decompose " + traces + " --weights 40,20,20 --clusters 2 "
              "--output-dir " + tmp / "bad").exit_code == 1);
}

TEST_CASE("cli: complexity against degenerate decompositions") {
    TempDir tmp;
    // Two functionalities coupled through entities 1 and 2.
    spit(tmp / "traces.json",
         R"({"f1":{"traces":[{"id":0,"accesses":[[1,"W"],[2,"W"]]}]},
             "f2":{"traces":[{"id":0,"accesses":[[2,"R"],[1,"R"]]}]}})");
    spit(tmp / "single.json", R"({"clusters":{"all":[1,2]}})");
    spit(tmp / "singletons.json", R"({"clusters":{"a":[1],"b":[2]}})");
    spit(tmp / "partial.json", R"({"clusters":{"a":[1]}})");

    const RunResult zero = run("complexity " + tmp / "traces.json" + " " +
                               tmp / "single.json" + " --output-dir " + tmp / "o1");
    REQUIRE(zero.exit_code == 0);
    CHECK(zero.output.find("uniform=0.000000000") != std::string::npos);

    const RunResult one = run("complexity " + tmp / "traces.json" + " " +
                              tmp / "singletons.json" + " --output-dir " + tmp / "o2");
    REQUIRE(one.exit_code == 0);
    CHECK(one.output.find("uniform=1.000000000") != std::string::npos);
    CHECK(fs::exists(fs::path(tmp / "o2") / "complexity.json"));
    CHECK(fs::exists(fs::path(tmp / "o2") / "complexity.csv"));

    const RunResult partial = run("complexity " + tmp / "traces.json" + " " +
                                  tmp / "partial.json" + " --output-dir " + tmp / "o3");
    CHECK(partial.exit_code == 1);
    CHECK(partial.output.find("UNASSIGNED_ENTITY") != std::string::npos);
    CHECK(partial.output.find("2") != std::string::npos);
}

TEST_CASE("cli: mojofm output matches the library") {
    TempDir tmp;
    spit(tmp / "a.json", R"({"clusters":{"x":[1,2],"y":[3],"z":[4,5]}})");
    spit(tmp / "b.json", R"({"clusters":{"p":[1,2,3],"q":[4,5]}})");

    const Decomposition a = parse_decomposition(slurp(tmp / "a.json"));
    const Decomposition b = parse_decomposition(slurp(tmp / "b.json"));
    const MojoResult expected = mojofm(a, b);

    const RunResult r = run("mojofm " + tmp / "a.json" + " " + tmp / "b.json" +
                            " --csv " + tmp / "cmp.csv" + " --label candidate");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output.find("mno=" + std::to_string(expected.mno)) != std::string::npos);
    CHECK(r.output.find("maxMno=" + std::to_string(expected.max_mno)) !=
          std::string::npos);
    CHECK(r.output.find("mojoFm=" + percent2(expected.mojo_fm)) != std::string::npos);

    const std::string csv = slurp(tmp / "cmp.csv");
    CHECK(csv.find("nClusters,source,mno,maxMno,mojoFm\n") == 0);
    CHECK(csv.find("3,candidate," + std::to_string(expected.mno)) != std::string::npos);

    const RunResult self = run("mojofm " + tmp / "a.json" + " " + tmp / "a.json");
    CHECK(self.output.find("mojoFm=100.00") != std::string::npos);

    spit(tmp / "disjoint.json", R"({"clusters":{"w":[8,9]}})");
    CHECK(run("mojofm " + tmp / "a.json" + " " + tmp / "disjoint.json" +
              " --strategy drop-uncommon").exit_code == 1);

    spit(tmp / "tiny_a.json", R"({"clusters":{"only":[1]}})");
    CHECK(run("mojofm " + tmp / "tiny_a.json" + " " + tmp / "tiny_a.json")
              .exit_code == 1);

    // Swapping the reference side re-anchors maxMno on the other partition.
    const MojoResult swapped = mojofm(b, a);
    const RunResult rev = run("mojofm " + tmp / "a.json" + " " + tmp / "b.json" +
                              " --reference a");
    REQUIRE(rev.exit_code == 0);
    CHECK(rev.output.find("maxMno=" + std::to_string(swapped.max_mno)) !=
          std::string::npos);
}

TEST_CASE("cli: MONODEC_OUT provides the default output directory") {
    TempDir tmp;
    const std::string traces = tmp / "traces.json";
    REQUIRE(run("generate --seed 2 --entities 5 --functionalities 3 --out " +
                traces).exit_code == 0);
    ::setenv("MONODEC_OUT", (tmp / "from_env").c_str(), 1);
    const RunResult r = run("decompose " + traces + " --weights 100,0,0,0 --clusters 2");
    ::unsetenv("MONODEC_OUT");
    REQUIRE(r.exit_code == 0);
    CHECK(fs::exists(fs::path(tmp / "from_env") / "decomposition.json"));
}

TEST_CASE("cli: sweep artifacts and rerun determinism") {
    TempDir tmp;
    const std::string traces = tmp / "traces.json";
    const std::string planted = tmp / "planted.json";
    REQUIRE(run("generate --seed 77 --entities 8 --functionalities 6 "
                "--clusteredness 0.8 --families 2 --out " + traces +
                " --planted-out " + planted).exit_code == 0);

    const std::string common = " --step 50 --n-min 2 --n-max 4 --expert " + planted;
    const RunResult first =
        run("sweep " + traces + common + " --jobs 1 --output-dir " + tmp / "s1");
    REQUIRE(first.exit_code == 0);
    const RunResult second =
        run("sweep " + traces + common + " --jobs 3 --output-dir " + tmp / "s2");
    REQUIRE(second.exit_code == 0);

    for (const char* name : {"sweep.csv", "best_per_n.csv", "manifest.json",
                             "regression.json", "mojofm_vs_expert.csv"}) {
        CAPTURE(name);
        CHECK(slurp(fs::path(tmp / "s1") / name) == slurp(fs::path(tmp / "s2") / name));
    }

    // 10 weightings x 3 cluster counts + header.
    const std::string csv = slurp(fs::path(tmp / "s1") / "sweep.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 31);
    CHECK(fs::exists(fs::path(tmp / "s1") / "best_n3.json"));
    CHECK(fs::exists(fs::path(tmp / "s1") / "regression.txt"));

    // Cluster-count range above the entity count is a domain error.
    CHECK(run("sweep " + traces + " --step 50 --n-min 2 --n-max 9 --output-dir " +
              tmp / "s3").exit_code == 1);
}

TEST_CASE("cli: config file supplies defaults, flags win") {
    TempDir tmp;
    const std::string traces = tmp / "traces.json";
    REQUIRE(run("generate --seed 5 --entities 6 --functionalities 4 --out " +
                traces).exit_code == 0);
    spit(tmp / "monodec.conf",
         "[sweep]\nstep=50\nn-min=2\nn-max=3\nlinkage=\"complete\"\n");
    const RunResult r = run("--config " + tmp / "monodec.conf" + " sweep " + traces +
                            " --n-max 4 --output-dir " + tmp / "out");
    REQUIRE(r.exit_code == 0);
    const std::string manifest = slurp(fs::path(tmp / "out") / "manifest.json");
    CHECK(manifest.find("\"step\": 50") != std::string::npos);
    CHECK(manifest.find("\"nMax\": 4") != std::string::npos);  // flag beat config
    CHECK(manifest.find("\"linkage\": \"complete\"") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run("no-such-command").exit_code == 2);
    CHECK(run("decompose").exit_code == 2);
    CHECK(run("--help").exit_code == 0);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "covlab/error.hpp"

namespace fs = std::filesystem;

namespace {

// The covlab binary sits next to this test binary (shared bin/ directory).
fs::path cli_path() {
    if (const char* env = std::getenv("COVLAB_BIN")) return env;
    return fs::canonical("/proc/self/exe").parent_path() / "covlab";
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    static int counter = 0;
    fs::path dir = fs::temp_directory_path() / "covlab_cli_tests";
    fs::create_directories(dir);
    fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
    fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
    ++counter;
    std::string cmd = cli_path().string() + " " + args + " > " + out.string() + " 2> " +
                      err.string();
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

fs::path write_file(const std::string& name, const std::string& content) {
    fs::path dir = fs::temp_directory_path() / "covlab_cli_tests";
    fs::create_directories(dir);
    fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

const char* kCubeFile = R"(covlab-format 1

[variety Y]
field = GF(5)
ambient = affine 1
dim = 1

[cover f]
source = Y
target = Y
map = [x0^3]
degree = 3
)";

} // namespace

TEST_CASE("analyze emits the golden csv for the cube map over GF(5)") {
    fs::path file = write_file("cube5.cov", kCubeFile);
    RunResult r = run_cli("--format csv analyze " + file.string() + " --max-ext 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "cover,m,x_points,y_points,injective,surjective,max_fiber,ramified,offdiag_pairs\n"
          "f,1,5,5,1,1,1,1,0\n"
          "f,2,25,25,0,0,3,1,48\n");
}

TEST_CASE("identical invocations are byte-identical") {
    fs::path file = write_file("cube5b.cov", kCubeFile);
    std::string args = "--format structured analyze " + file.string() + " --max-ext 3";
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("\"verdict\": \"refuted-at 2\"") != std::string::npos);
}

TEST_CASE("table output names the verdict and methodology") {
    fs::path file = write_file("cube5c.cov", kCubeFile);
    RunResult r = run_cli("analyze " + file.string() + " --max-ext 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict: refuted-at 2") != std::string::npos);
    CHECK(r.out.find("rank(df|T_P X) < dim X") != std::string::npos);
}

TEST_CASE("budget exhaustion truncates the report and flips the exit code") {
    fs::path file = write_file("cube5d.cov", kCubeFile);
    RunResult r = run_cli("--budget 10 --format csv analyze " + file.string() + " --max-ext 3");
    CHECK(r.exit_code == 4);
    CHECK(r.out.find("f,1,5,5,1,1,1,1,0") != std::string::npos);
    CHECK(r.out.find("truncated at extension degree 2") != std::string::npos);
}

TEST_CASE("parse and validation failures use distinct exit codes") {
    fs::path bad = write_file("bad.cov", "not a header\n");
    CHECK(run_cli("analyze " + bad.string()).exit_code == 2);

    fs::path reducible = write_file(
        "reducible.cov",
        "covlab-format 1\n[field F]\ngf = GF(3^2)\nmodulus = x0^2 + 2*x0 + 1\n"
        "[variety L]\nfield = F\nambient = affine 1\ndim = 1\n"
        "[cover f]\nsource = L\ntarget = L\nmap = [x0]\ndegree = 1\n");
    RunResult r = run_cli("analyze " + reducible.string());
    CHECK(r.exit_code == 3);
    CHECK(r.err.find("reducible") != std::string::npos);

    CHECK(run_cli("analyze /nonexistent/file.cov").exit_code == 2);
}

TEST_CASE("construct kummer emits a file that analyze accepts") {
    fs::path base = write_file("line5.cov", R"(covlab-format 1
[variety Y]
field = GF(5)
ambient = affine 1
dim = 1
)");
    fs::path out = fs::temp_directory_path() / "covlab_cli_tests" / "kummer_out.cov";
    RunResult made =
        run_cli("construct kummer --base " + base.string() + " --u x0 --ell 3 --out " + out.string());
    CHECK(made.exit_code == 0);

    RunResult analyzed = run_cli("--format csv analyze " + out.string() + " --max-ext 2");
    CHECK(analyzed.exit_code == 0);
    CHECK(analyzed.out.find(",1,5,5,1,1,1,1,0") != std::string::npos);
    CHECK(analyzed.out.find(",2,25,25,0,0,3,1,48") != std::string::npos);
}

TEST_CASE("construct product emits a reloadable non-finite cover") {
    fs::path base = write_file("factors.cov", R"(covlab-format 1
[variety Y]
field = GF(3)
ambient = affine 1
dim = 1

[variety V]
field = GF(3)
ambient = affine 1
dim = 0
equation = x0^2 - x0
)");
    fs::path out = fs::temp_directory_path() / "covlab_cli_tests" / "product_out.cov";
    RunResult made =
        run_cli("construct product --base " + base.string() + " --y Y --v V --out " + out.string());
    CHECK(made.exit_code == 0);
    CHECK(slurp(out).find("degree = unbounded") != std::string::npos);

    RunResult analyzed = run_cli("--format csv analyze " + out.string() + " --max-ext 2");
    CHECK(analyzed.exit_code == 0);
    // surjective but not injective at both extensions
    CHECK(analyzed.out.find(",1,6,3,0,1,2,0,6") != std::string::npos);
}

TEST_CASE("construct section avoid on the projective line") {
    fs::path base = write_file("p1f2.cov", R"(covlab-format 1
[variety X]
field = GF(2)
ambient = projective 1
dim = 1
)");
    fs::path out = fs::temp_directory_path() / "covlab_cli_tests" / "section_out.cov";
    RunResult made = run_cli("--seed 5 construct section --base " + base.string() +
                             " --mode avoid --dmax 3 --trials 300 --out " + out.string());
    CHECK(made.exit_code == 0);
    RunResult reloaded = run_cli("--format csv analyze " + out.string() + " --max-ext 1");
    // the output file has no cover: analyze reports a validation error, but
    // the file itself must reload cleanly first (error text says "no cover")
    CHECK(reloaded.exit_code == 3);
    CHECK(reloaded.err.find("no cover") != std::string::npos);
}

TEST_CASE("bounds subcommands") {
    RunResult r = run_cli("bounds nonempty --sigma 10 --dim 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("threshold: 81") != std::string::npos);
    CHECK(r.out.find("formula:") != std::string::npos);

    RunResult c = run_cli("--format structured bounds crossover --sigma-z 3 --dim-z 1 --sigma-r 2 --dim-r 0");
    CHECK(c.exit_code == 0);
    CHECK(c.out.find("\"threshold\": \"7\"") != std::string::npos);

    RunResult s = run_cli("bounds surface --hodge 1,0,1,0,1,0,1,0,1");
    CHECK(s.exit_code == 0);
    CHECK(s.out.find("k_sq: 19") != std::string::npos);
    CHECK(s.out.find("embed_dim: 191") != std::string::npos);

    RunResult h = run_cli("--format csv bounds hodge-candidates --b1 1 --b2 0 --b3 1");
    CHECK(h.exit_code == 0);
    CHECK(h.out.find("4") != std::string::npos);

    RunResult bad = run_cli("bounds crossover --sigma-z 1 --dim-z 1 --sigma-r 1 --dim-r 1");
    CHECK(bad.exit_code == 3);
}

TEST_CASE("selftest passes") {
    RunResult r = run_cli("selftest");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("selftest passed") != std::string::npos);
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const std::string kCli = DIRACNU_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = kCli + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

fs::path tmpfile(const std::string& name) {
    return fs::temp_directory_path() / ("diracnu_test_" + name);
}

}  // namespace

TEST_CASE("spectrum json contains the PT example energies") {
    const auto out = tmpfile("spectrum.json");
    const int rc = run("spectrum --variant pt --m 1 --q 1 --alpha 2 --V0 2.5 --n 0 "
                       "--format json --out " + out.string());
    REQUIRE(rc == 0);
    const std::string body = slurp(out);
    CHECK(body.find("1.394337567") != std::string::npos);
    CHECK(body.find("1.105662432") != std::string::npos);
    CHECK(body.find("\"is_real\": true") != std::string::npos);
    CHECK(body.find("\"provenance\"") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("identical invocations are byte-identical") {
    const auto a = tmpfile("scan.csv");
    const std::string args =
        "scan --variant pt --q 1 --alpha 1 --V0 2.5 --vary V0 --from 2.0 --to 6.0 "
        "--steps 25 --n 0 --format csv --out " + a.string();
    REQUIRE(run(args) == 0);
    const std::string first = slurp(a);
    REQUIRE(run(args) == 0);
    CHECK(first == slurp(a));
    CHECK(first.find("param_value,n,branch,E_re,E_im,is_real,outside_window") !=
          std::string::npos);
    fs::remove(a);
}

TEST_CASE("json determinism") {
    const auto a = tmpfile("spec.json");
    const std::string args =
        "spectrum --variant pseudo --q 1 --alpha 2 --V0 2.5 --n 0..2 --format json --out " +
        a.string();
    REQUIRE(run(args) == 0);
    const std::string first = slurp(a);
    REQUIRE(run(args) == 0);
    CHECK(first == slurp(a));
    fs::remove(a);
}

TEST_CASE("wavefunction output has the expected columns") {
    const auto out = tmpfile("wf.csv");
    REQUIRE(run("wavefunction --variant pt --q 1 --alpha 2 --V0 2.5 --n 0 "
                "--x-from 0.1 --x-to 1.5 --steps 11 --out " + out.string()) == 0);
    CHECK(slurp(out).find("x,n,branch,upper_re,upper_im,lower_re,lower_im") !=
          std::string::npos);
    fs::remove(out);
}

TEST_CASE("oracle emits a spectrum") {
    const auto out = tmpfile("oracle.csv");
    REQUIRE(run("oracle --variant exp --q 0 --V0 0 --m 1 --x-min -10 --x-max 10 "
                "--grid-points 64 --out " + out.string()) == 0);
    const std::string body = slurp(out);
    CHECK(body.find("index,E_re,E_im") != std::string::npos);
    fs::remove(out);
}

TEST_CASE("verify exit codes") {
    CHECK(run("verify") == 0);
    CHECK(run("verify --tolerance-scale 1e-9") == 1);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run("frobnicate") == 2);
    CHECK(run("scan --vary V0") == 2);                       // missing required flags
    CHECK(run("spectrum --variant bogus --n 0") == 2);       // bad variant
    CHECK(run("spectrum --variant exp --q 0 --n 0") == 2);   // no closed form at q=0
}

TEST_CASE("failed runs do not leave partial files") {
    const auto out = tmpfile("partial.csv");
    fs::remove(out);
    CHECK(run("spectrum --variant exp --q 0 --n 0 --out " + out.string()) == 2);
    CHECK_FALSE(fs::exists(out));
}

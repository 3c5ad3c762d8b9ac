// End-to-end checks of the modsum binary: exit codes, output formats and
// reproducibility. Runs the real executable via std::system.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace {

const std::string cli = MODSUM_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string out_path = "cli_test_stdout.tmp";
    int status = std::system(
        (cli + " " + args + " < /dev/null > " + out_path + " 2>/dev/null").c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(out_path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    result.output = os.str();
    return result;
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream out(path, std::ios::binary);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    std::string s = os.str();
    return {s.begin(), s.end()};
}

}  // namespace

TEST_CASE("sum prints the lowercase hex check value") {
    write_file("cli_in.bin", {0x12, 0x34, 0x56});
    RunResult r = run("sum --preset koopman8 cli_in.bin");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "c8\n");

    write_file("cli_in.bin", {0x00});
    r = run("sum --preset koopman8 cli_in.bin");
    CHECK(r.output == "00\n");

    write_file("cli_in.bin", {0x12, 0x34});
    r = run("sum --preset koopman16 cli_in.bin");
    CHECK(r.output == "3585\n");

    // explicit algorithm flags reproduce the preset
    r = run("sum --family koopman --modulus 65519 --k 16 cli_in.bin");
    CHECK(r.output == "3585\n");
}

TEST_CASE("sum rejects empty input with exit 2") {
    write_file("cli_in.bin", {});
    RunResult r = run("sum --preset koopman8 cli_in.bin");
    CHECK(r.exit_code == 2);
}

TEST_CASE("encode then verify round-trips; corruption flips the exit code") {
    write_file("cli_in.bin", {0xDE, 0xAD, 0xBE, 0xEF});
    RunResult enc = run("encode --preset koopman16 cli_in.bin --out cli_cw.bin");
    CHECK(enc.exit_code == 0);
    auto cw = read_file("cli_cw.bin");
    REQUIRE(cw.size() == 6);

    CHECK(run("verify --preset koopman16 cli_cw.bin").exit_code == 0);

    auto corrupt = cw;
    corrupt[1] ^= 0x10;
    write_file("cli_cw.bin", corrupt);
    CHECK(run("verify --preset koopman16 cli_cw.bin").exit_code == 1);

    // truncated check field
    write_file("cli_cw.bin", {0x01, 0x02});
    CHECK(run("verify --preset koopman16 cli_cw.bin").exit_code == 2);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("sum --preset nope cli_in.bin").exit_code == 2);
    CHECK(run("sum --bogus-flag").exit_code == 2);
    CHECK(run("sum").exit_code == 2);  // no algorithm given, stdin empty
    CHECK(run("rollover --preset add65525_b4").exit_code == 2);
}

TEST_CASE("sweep emits the documented CSV header and is reproducible") {
    const std::string flags =
        "sweep --preset koopman8 --lengths 1:8 --m 1:2 --trials 2000 --rng-seed 5";
    RunResult a = run(flags);
    CHECK(a.exit_code == 0);
    CHECK(a.output.rfind("algorithm,length_bytes,m,mode,total,undetected,fraction\n",
                         0) == 0);
    CHECK(a.output.find("koopman8,1,1,exhaustive,") != std::string::npos);
    RunResult b = run(flags);
    CHECK(a.output == b.output);
}

TEST_CASE("sweep --exhaustive counts every pattern") {
    RunResult r = run(
        "sweep --preset koopman8 --lengths 12:13 --m 2 --exhaustive --zero-data");
    CHECK(r.exit_code == 0);
    // C(104,2)=5356 patterns at 12 bytes (all caught), C(112,2)=6216 at 13.
    CHECK(r.output.find("koopman8,12,2,exhaustive,5356,0,0\n") != std::string::npos);
    CHECK(r.output.find("koopman8,13,2,exhaustive,6216,2,") != std::string::npos);
}

TEST_CASE("screen ranks modulus 239 first for k=8") {
    RunResult r = run("screen --k 8 --range 128:255 --hd 3 --max-len 64");
    CHECK(r.exit_code == 0);
    std::istringstream lines(r.output);
    std::string header, first;
    std::getline(lines, header);
    std::getline(lines, first);
    CHECK(header == "modulus,k,family,hd,max_len_bytes,first_fail_bytes");
    CHECK(first == "239,8,koopman,3,13,14");
}

TEST_CASE("rollover reports the 16-bit boundary") {
    RunResult r = run("rollover --preset koopman16");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("65519,16,koopman,3,4092,4093\n") != std::string::npos);

    r = run("rollover --preset d239_b14");
    CHECK(r.output.find("239,16,dualsum,3,3332,3333\n") != std::string::npos);

    r = run("rollover --preset koopman8p --max-len 64");
    CHECK(r.output.find("125,8,koopmanparity,4,5,6\n") != std::string::npos);
}

TEST_CASE("pud emits ideal curves and measured curves") {
    RunResult ideal = run("pud --ideal-hd 3 --k 16 --lengths 64:256:64 --ber 1e-6");
    CHECK(ideal.exit_code == 0);
    CHECK(ideal.output.rfind("algorithm,ber,length_bytes,pud\n", 0) == 0);
    CHECK(ideal.output.find("ideal_hd3_k16,1e-06,64,") != std::string::npos);

    RunResult measured = run(
        "pud --preset koopman8 --lengths 4:8:4 --m 1:2 --trials 1000 --ber 1e-06");
    CHECK(measured.exit_code == 0);
    CHECK(measured.output.find("koopman8,1e-06,4,") != std::string::npos);
    CHECK(measured.output.find("koopman8,1e-06,8,") != std::string::npos);
}

// End-to-end checks of the installed command-line tool. The binary path
// comes from the build system (SPINCHAIN_CLI_DEFAULT) and can be
// overridden with the SPINCHAIN_CLI environment variable.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#ifdef __unix__
#include <sys/wait.h>
#endif

#include "doctest.h"

namespace {

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

std::string cli_path() {
  if (const char* env = std::getenv("SPINCHAIN_CLI")) return env;
#ifdef SPINCHAIN_CLI_DEFAULT
  return SPINCHAIN_CLI_DEFAULT;
#else
  return {};
#endif
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

RunResult run_cli(const std::string& args, const std::string& env = "") {
  RunResult r;
  std::string cmd;
  if (!env.empty()) cmd += env + " ";
  cmd += "\"" + cli_path() + "\" " + args +
         " > cli_stdout.txt 2> cli_stderr.txt";
  const int rc = std::system(cmd.c_str());
#ifdef WIFEXITED
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
#else
  r.status = rc;
#endif
  r.out = slurp("cli_stdout.txt");
  r.err = slurp("cli_stderr.txt");
  return r;
}

// value of "key <number>" in line-oriented text output
double text_value(const std::string& out, const std::string& key) {
  std::istringstream is(out);
  std::string line;
  while (std::getline(is, line))
    if (line.rfind(key + " ", 0) == 0)
      return std::strtod(line.c_str() + key.size() + 1, nullptr);
  FAIL("key '" << key << "' not found in output:\n" << out);
  return 0.0;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::istringstream is(line);
  std::string field;
  while (std::getline(is, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

TEST_CASE("coefficient table is printed exactly and reproducibly") {
  REQUIRE_FALSE(cli_path().empty());
  const RunResult first = run_cli("coeffs");
  CHECK(first.status == 0);
  CHECK(first.out.find("1 0 1 4\n") == 0);
  CHECK(first.out.find("4 3 4589 49152\n") != std::string::npos);
  const RunResult second = run_cli("coeffs");
  CHECK(second.out == first.out);
}

TEST_CASE("perturb reproduces the transverse second-order value") {
  const RunResult r =
      run_cli("perturb --n 6 --hx 1 --hz 0 --j 0.1 --order 2 --format csv");
  REQUIRE(r.status == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  CHECK(line == "m,closed,numeric");
  bool seen = false;
  while (std::getline(is, line)) {
    const auto fields = split_csv(line);
    REQUIRE(fields.size() == 3);
    if (fields[0] != "2") continue;
    seen = true;
    const double closed = std::strtod(fields[1].c_str(), nullptr);
    const double numeric = std::strtod(fields[2].c_str(), nullptr);
    // e2 = -N g^4 J^2 / (32 h) = -6 * 0.01 / 32 here
    CHECK(closed == doctest::Approx(-6.0 * 0.01 / 32.0).epsilon(1e-14));
    CHECK(numeric == doctest::Approx(closed).epsilon(1e-12));
  }
  CHECK(seen);
}

TEST_CASE("gs stays within the series truncation budget") {
  const RunResult r =
      run_cli("gs --n 8 --hx 1 --hz 1 --j 0.05 --format text");
  REQUIRE(r.status == 0);
  const double diff = text_value(r.out, "difference");
  const double h = std::sqrt(2.0);
  CHECK(std::abs(diff) / 8.0 < 1e-6 * h);
}

TEST_CASE("two-site build warns about the doubled bond") {
  const RunResult r = run_cli("build --n 2 --hz 1 --j 1");
  CHECK(r.status == 0);
  CHECK(r.out.rfind("dim 4 basis eps\n", 0) == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(r.err.find("twice") != std::string::npos);

  const RunResult lam = run_cli("build --n 2 --hz 1 --j 1 --basis lambda");
  CHECK(lam.status == 0);
  CHECK(lam.out.rfind("dim 4 basis lambda\n", 0) == 0);
}

TEST_CASE("spectrum of decoupled spins is the equidistant ladder") {
  const RunResult r = run_cli("spectrum --n 3 --hz 2 --j 0 --format text");
  REQUIRE(r.status == 0);
  std::istringstream is(r.out);
  std::string line;
  std::vector<double> values;
  while (std::getline(is, line))
    values.push_back(std::strtod(line.c_str(), nullptr));
  REQUIRE(values.size() == 8);
  // h = 2: levels -3, -1, -1, -1, 1, 1, 1, 3, already sorted
  const std::vector<double> want{-3, -1, -1, -1, 1, 1, 1, 3};
  for (std::size_t i = 0; i < values.size(); ++i)
    CHECK(values[i] == doctest::Approx(want[i]).epsilon(1e-12));
}

TEST_CASE("json output carries the shared parameter block") {
  const RunResult r = run_cli("observables --n 6 --hx 3 --hy 4 --j 0");
  REQUIRE(r.status == 0);
  CHECK(r.out.find("\"n\": 6,") != std::string::npos);
  CHECK(r.out.find("\"h\": 5,") != std::string::npos);
  CHECK(r.out.find("\"mx\":") != std::string::npos);
  CHECK(r.out.find("\"corr\":") != std::string::npos);
}

TEST_CASE("exit codes separate usage errors from resource limits") {
  SUBCASE("unknown flag") { CHECK(run_cli("coeffs --bogus").status == 2); }
  SUBCASE("chain too short") {
    CHECK(run_cli("basis --n 1").status == 2);
  }
  SUBCASE("series below its validity range") {
    CHECK(run_cli("gs --n 3 --hx 1 --j 0.1").status == 2);
  }
  SUBCASE("missing required field flags") {
    CHECK(run_cli("gs --n 8").status == 2);
  }
  SUBCASE("missing site count") {
    CHECK(run_cli("build --hx 1").status == 2);
  }
  SUBCASE("zero field magnitude") {
    CHECK(run_cli("spectrum --n 3 --hx 0").status == 2);
  }
  SUBCASE("invalid basis tag") {
    CHECK(run_cli("spectrum --n 3 --hz 1 --basis nope").status == 2);
  }
  SUBCASE("dense build over the cap") {
    CHECK(run_cli("build --n 15 --hx 1").status == 3);
  }
  SUBCASE("environment can lower the cap") {
    CHECK(run_cli("build --n 8 --hx 1", "SPINCHAIN_MAX_N=6").status == 3);
    CHECK(run_cli("build --n 8 --hx 1").status == 0);
  }
  SUBCASE("help exits cleanly") {
    CHECK(run_cli("--help").status == 0);
    CHECK(run_cli("gs --help").status == 0);
  }
}

TEST_CASE("--out writes exactly what stdout would carry") {
  const RunResult direct = run_cli("coeffs --format csv");
  REQUIRE(direct.status == 0);
  const RunResult filed = run_cli("coeffs --format csv --out cli_file.txt");
  CHECK(filed.status == 0);
  CHECK(filed.out.empty());
  CHECK(slurp("cli_file.txt") == direct.out);
  std::remove("cli_file.txt");
}

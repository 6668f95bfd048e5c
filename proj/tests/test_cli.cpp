#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <cstring>
#include <sstream>
#include <string>

#ifndef QLAB_CLI_PATH
#error "QLAB_CLI_PATH must point at the qlab executable"
#endif

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  const std::string out_path =
      std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
      "/qlab_cli_test_out.txt";
  const std::string cmd =
      std::string(QLAB_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  std::ifstream is(out_path, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, ss.str()};
}

}  // namespace

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("eval poly --n 1").exit_code == 2);           // missing flags
  CHECK(run_cli("verify bogus --q 0.5").exit_code == 2);      // bad suite
  CHECK(run_cli("verify all --q 0.5 --corrupt X").exit_code == 2);
  CHECK(run_cli("eval poly --n 1 --q 1.5 --a-re 0 --x 0").exit_code == 2);
}

TEST_CASE("eval poly prints all routes and a tiny deviation") {
  const auto r =
      run_cli("eval poly --n 1 --q 0.5 --a-re 0.3 --x 0.25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("recurrence,2.000000000000000e-01") != std::string::npos);
  CHECK(r.output.find("series_3phi2,") != std::string::npos);
  CHECK(r.output.find("series_2phi0,") != std::string::npos);

  // the deviation row closes the file and must be at rounding level
  const auto pos = r.output.find("max_pairwise_deviation,");
  REQUIRE(pos != std::string::npos);
  const double dev =
      std::atof(r.output.substr(pos + std::strlen("max_pairwise_deviation,"))
                    .c_str());
  CHECK(dev <= 1e-14);
}

TEST_CASE("eval poly omits the 3phi2 route at a = 0") {
  const auto r = run_cli("eval poly --n 2 --q 0.5 --a-re 0 --x 0.25");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("series_3phi2") == std::string::npos);
  CHECK(r.output.find("series_2phi0") != std::string::npos);
}

TEST_CASE("eval qexp and table wcoeff produce deterministic output") {
  const std::string cmd =
      "eval qexp --a-re 0 --a-im -1 --b-re 0.4 --q 0.5 --x 0.5";
  const auto r1 = run_cli(cmd);
  const auto r2 = run_cli(cmd);
  CHECK(r1.exit_code == 0);
  CHECK(r1.output == r2.output);

  const auto t1 = run_cli("table wcoeff --q 0.5 --b-re 0.4 --n-max 6 --m 2");
  const auto t2 = run_cli("table wcoeff --q 0.5 --b-re 0.4 --n-max 6 --m 2");
  CHECK(t1.exit_code == 0);
  CHECK(t1.output == t2.output);
  CHECK(t1.output.find("n,m,w_re,w_im") == 0);
  // header plus rows n = 0..6
  int lines = 0;
  for (char c : t1.output)
    if (c == '\n') ++lines;
  CHECK(lines == 8);
}

TEST_CASE("gram emits a CSV matrix") {
  const auto r = run_cli("gram --n-max 2 --a 0.4 --q 0.5 --nodes 128");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("m,n,computed,expected,abs_err") == 0);
  int lines = 0;
  for (char c : r.output)
    if (c == '\n') ++lines;
  CHECK(lines == 10);  // header + 9 entries
}

TEST_CASE("verify subcommands pass and write the canonical schema") {
  const auto r = run_cli("verify actions --q 0.5");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("check,relation_id,n,m,q,residual,tol,status") == 0);
  CHECK(r.output.find("FAIL") == std::string::npos);

  const auto r2 = run_cli("verify actions --q 0.5");
  CHECK(r.output == r2.output);  // byte-identical reruns

  const auto rj = run_cli("verify limits --format json");
  CHECK(rj.exit_code == 0);
  CHECK(rj.output.find("\"status\": \"PASS\"") != std::string::npos);

  // 5x5 orthogonality matrix: header plus 25 rows
  const auto ro =
      run_cli("verify orthogonality --q 0.5 --a 0.4 --n-max 4 --nodes 512 "
              "--tol 1e-7");
  CHECK(ro.exit_code == 0);
  int lines = 0;
  for (char c : ro.output)
    if (c == '\n') ++lines;
  CHECK(lines == 26);
}

TEST_CASE("--help exits 0") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("verify --help").exit_code == 0);
}

TEST_CASE("verify exit code flips when a tolerance cannot hold") {
  const auto r = run_cli("verify relations --q 0.5 --tol 1e-18");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("QLAB_TOL environment override is honoured") {
  const std::string out = "/tmp/qlab_cli_test_out.txt";
  const std::string cmd = std::string("QLAB_TOL=1e-18 ") + QLAB_CLI_PATH +
                          " verify actions --q 0.5 > " + out + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 1);
}

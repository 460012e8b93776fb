#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
#ifdef SCHAMEL_CLI_PATH
  return SCHAMEL_CLI_PATH;
#else
  const char* env = std::getenv("SCHAMEL_CLI");
  return env ? env : "schamel";
#endif
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("schamel_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
};

int run(const std::string& args, const fs::path& cwd) {
  const std::string cmd = "cd " + cwd.string() + " && " + cli_path() + " " + args +
                          " > cli_stdout.txt 2> cli_stderr.txt";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("domain violations exit with code 2 and one-line reason") {
  TempDir t;
  CHECK(run("spectrum --period 10 --modulus 0.3", t.dir) == 2);
  const std::string err = slurp(t.dir / "cli_stderr.txt");
  CHECK(err.find("period must exceed 4*pi") != std::string::npos);

  CHECK(run("wave --period 16 --modulus 0.99", t.dir) == 2);   // above k_L
  CHECK(run("wave --period 16 --modulus -0.1", t.dir) == 2);   // invalid modulus
  CHECK(run("wave --period 16", t.dir) == 2);                  // missing required flag
  CHECK(run("no_such_command", t.dir) == 2);
}

TEST_CASE("wave: csv shape, header, strict positivity, manifest") {
  TempDir t;
  CHECK(run("wave --period 16 --modulus 0.3", t.dir) == 0);
  std::ifstream f(t.dir / "wave.csv");
  std::string line;
  REQUIRE(std::getline(f, line));
  CHECK(line == "x,phi,psi,dphi_dx");
  int rows = 0;
  while (std::getline(f, line)) {
    ++rows;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    const double phi = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    CHECK(phi > 0.0);
  }
  CHECK(rows == 1024);
  CHECK(fs::exists(t.dir / "wave.manifest.json"));
  const std::string manifest = slurp(t.dir / "wave.manifest.json");
  CHECK(manifest.find("\"beta1\"") != std::string::npos);
  CHECK(manifest.find("\"eta\"") != std::string::npos);
}

TEST_CASE("deterministic output: identical argv and seed give identical bytes") {
  TempDir t;
  CHECK(run("evolve --period 16 --modulus 0.3 --perturb 1e-3 --tmax 0.2 --dt 1e-3 "
            "--grid 128 --seed 42 --out a.csv", t.dir) == 0);
  CHECK(run("evolve --period 16 --modulus 0.3 --perturb 1e-3 --tmax 0.2 --dt 1e-3 "
            "--grid 128 --seed 42 --out b.csv", t.dir) == 0);
  CHECK(slurp(t.dir / "a.csv") == slurp(t.dir / "b.csv"));
  CHECK(slurp(t.dir / "a.csv").find("t,rho,E,Q,V") == 0);

  CHECK(run("evolve --period 16 --modulus 0.3 --perturb 1e-3 --tmax 0.2 --dt 1e-3 "
            "--grid 128 --seed 43 --out c.csv", t.dir) == 0);
  CHECK(slurp(t.dir / "a.csv") != slurp(t.dir / "c.csv"));
}

TEST_CASE("floats round-trip through the csv") {
  TempDir t;
  CHECK(run("wave --period 16 --modulus 0.3 --samples 64 --out w.csv", t.dir) == 0);
  std::ifstream f(t.dir / "w.csv");
  std::string line;
  std::getline(f, line);  // header
  std::getline(f, line);  // x=0 row: phi = beta3^2 printed with 17 significant digits
  const auto c1 = line.find(',');
  const auto c2 = line.find(',', c1 + 1);
  const double phi = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", phi);
  CHECK(line.substr(c1 + 1, c2 - c1 - 1) == buf);
}

TEST_CASE("stability json and exit semantics") {
  TempDir t;
  CHECK(run("stability --period 16 --modulus 0.3", t.dir) == 0);
  const std::string j = slurp(t.dir / "stability.json");
  CHECK(j.find("\"phi_analytic\"") != std::string::npos);
  CHECK(j.find("\"verdicts\"") != std::string::npos);
  CHECK(fs::exists(t.dir / "stability.manifest.json"));
}

TEST_CASE("family sweep emits ordered rows with verdicts") {
  TempDir t;
  CHECK(run("family --period 16 --k-min 0.1 --k-max 0.6 --steps 6", t.dir) == 0);
  std::ifstream f(t.dir / "family.csv");
  std::string line;
  std::getline(f, line);
  CHECK(line == "k,c,A,beta1,beta2,beta3,Q,V,Phi,verdict");
  double prev = 0.0;
  int rows = 0;
  while (std::getline(f, line)) {
    ++rows;
    const double k = std::stod(line.substr(0, line.find(',')));
    CHECK(k > prev);  // ordered by input index
    prev = k;
    CHECK(line.back() == '1');
  }
  CHECK(rows == 6);
}

TEST_CASE("spectrum subcommand succeeds at a small grid") {
  TempDir t;
  CHECK(run("spectrum --period 16 --modulus 0.3 --grid 128", t.dir) == 0);
  std::ifstream f(t.dir / "spectrum.csv");
  std::string line;
  std::getline(f, line);
  CHECK(line == "index,lambda_analytic,lambda_numeric,abs_gap,rel_gap");
  int rows = 0;
  while (std::getline(f, line)) ++rows;
  CHECK(rows == 5);
}

#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

std::string g_cli_path;

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + g_cli_path + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  RunResult r{-1, {}};
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream os(path);
  os << content;
  return path;
}

}  // namespace

TEST_CASE("partition text output is the published block") {
  const RunResult r = run_cli("partition --m 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out ==
        "Qubits: 2\n"
        "Generating Matrix:\n"
        "[1, 1]\n"
        "[1, 0]\n"
        "\n"
        "XZ,YX,ZY\n"
        "XY,ZX,YZ\n"
        "IY,YI,YY\n"
        "IX,XI,XX\n"
        "II,IZ,ZI,ZZ\n");
}

TEST_CASE("partition edge cases") {
  const RunResult one = run_cli("partition --m 1");
  CHECK(one.exit_code == 0);
  CHECK(one.out.ends_with("Y\nX\nI,Z\n"));
  CHECK(run_cli("partition --m 0").exit_code == 2);
  CHECK(run_cli("partition").exit_code == 2);

  const RunResult js = run_cli("partition --m 2 --json");
  CHECK(js.exit_code == 0);
  const auto j = nlohmann::json::parse(js.out);
  CHECK(j["m"] == 2);
  CHECK(j["generating_matrix"] == nlohmann::json({{1, 1}, {1, 0}}));
  CHECK(j["families"].size() == 5);
  CHECK(j["families"][0]["paulis"] == nlohmann::json({"XZ", "YX", "ZY"}));
}

TEST_CASE("lookup") {
  const RunResult r = run_cli("lookup --m 2 --pauli YX");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "family: 1\nmembers: XZ,YX,ZY\n");
  const RunResult z = run_cli("lookup --m 2 --pauli ZZ");
  CHECK(z.exit_code == 0);
  CHECK(z.out.starts_with("family: 0\n"));
  CHECK(run_cli("lookup --m 2 --pauli QQ").exit_code == 2);
  CHECK(run_cli("lookup --m 2 --pauli XXX").exit_code == 2);
}

TEST_CASE("circuit emission") {
  const RunResult empty = run_cli("circuit --m 2 --family 0 --format json");
  CHECK(empty.exit_code == 0);
  CHECK(empty.out == "[]\n");

  const RunResult f1 = run_cli("circuit --m 2 --family 1 --format json");
  CHECK(f1.exit_code == 0);
  const auto j = nlohmann::json::parse(f1.out);
  REQUIRE(j.size() == 8);
  CHECK(j[0]["gate"] == "uy");
  CHECK(j[1]["gate"] == "uy");
  CHECK(j[2]["gate"] == "s");
  CHECK(j[6]["gate"] == "uydg");
  CHECK(j[7]["gate"] == "uydg");

  const RunResult qasm = run_cli("circuit --m 2 --family 1 --format qasm3");
  CHECK(qasm.exit_code == 0);
  CHECK(qasm.out.starts_with("OPENQASM 3.0;\ninclude \"stdgates.inc\";\nqubit[2] q;\n"));

  CHECK(run_cli("circuit --m 2 --family 5 --format json").exit_code == 2);
  CHECK(run_cli("circuit --m 2 --family 1 --format xml").exit_code == 2);
}

TEST_CASE("group") {
  std::string dense3 = R"({"m": 3, "terms": [)";
  bool first = true;
  const char* chars = "IXZY";
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        if (!first) dense3 += ",";
        dense3 += std::string("{\"pauli\": \"") + chars[a] + chars[b] + chars[c] +
                  "\", \"coeff\": 1.0}";
        first = false;
      }
  dense3 += "]}";
  const auto h3 = write_temp("psfam_cli_dense3.json", dense3);

  const RunResult dense = run_cli("group --input " + h3.string() + " --method dense");
  CHECK(dense.exit_code == 0);
  CHECK(nlohmann::json::parse(dense.out)["n_families"] == 9);
  const RunResult qwc = run_cli("group --input " + h3.string() + " --method qwc");
  CHECK(nlohmann::json::parse(qwc.out)["n_families"] == 27);

  const auto empty = write_temp("psfam_cli_empty.json", R"({"m": 2, "terms": []})");
  const RunResult e = run_cli("group --input " + empty.string());
  CHECK(e.exit_code == 0);
  CHECK(nlohmann::json::parse(e.out)["n_families"] == 0);

  CHECK(run_cli("group --input /nonexistent.json").exit_code == 3);
  const auto bad = write_temp("psfam_cli_bad.json", "{not json");
  CHECK(run_cli("group --input " + bad.string()).exit_code == 3);
}

TEST_CASE("expect") {
  const auto h = write_temp("psfam_cli_zz.json", R"({"m": 2, "terms": [{"pauli": "ZZ", "coeff": 1.0}]})");
  const auto psi = write_temp("psfam_cli_00.json", "[[1,0],[0,0],[0,0],[0,0]]");
  const RunResult r = run_cli("expect --input " + h.string() + " --state " + psi.string());
  CHECK(r.exit_code == 0);
  CHECK(r.out == "1.000000000000\n");

  // Exact mode is method independent.
  const auto hr = write_temp("psfam_cli_mix.json", R"({"m": 2, "identity": 0.25, "terms": [
    {"pauli": "ZZ", "coeff": 0.4}, {"pauli": "XY", "coeff": -1.2}, {"pauli": "YI", "coeff": 0.3},
    {"pauli": "XX", "coeff": 0.7}, {"pauli": "IZ", "coeff": -0.1}]})");
  const auto ansatz = write_temp("psfam_cli_ansatz.json",
                                 R"({"layers": 1, "angles": [0.3, 1.1, -0.4, 2.0]})");
  const RunResult dense = run_cli("expect --input " + hr.string() + " --ansatz " + ansatz.string() +
                                  " --method dense");
  const RunResult naive = run_cli("expect --input " + hr.string() + " --ansatz " + ansatz.string() +
                                  " --method naive");
  const RunResult qwc = run_cli("expect --input " + hr.string() + " --ansatz " + ansatz.string() +
                                " --method qwc");
  CHECK(dense.exit_code == 0);
  CHECK(std::abs(std::stod(dense.out) - std::stod(naive.out)) < 1e-9);
  CHECK(std::abs(std::stod(dense.out) - std::stod(qwc.out)) < 1e-9);

  // Shots mode needs a seed and is reproducible with one.
  CHECK(run_cli("expect --input " + h.string() + " --state " + psi.string() +
                " --mode shots --shots 100").exit_code == 2);
  const std::string shots_args = "expect --input " + hr.string() + " --ansatz " + ansatz.string() +
                                 " --mode shots --shots 5000 --seed 42";
  const RunResult s1 = run_cli(shots_args);
  const RunResult s2 = run_cli(shots_args);
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);

  // Usage and file errors.
  CHECK(run_cli("expect --input " + h.string()).exit_code == 2);
  CHECK(run_cli("expect --input " + h.string() + " --state " + psi.string() + " --ansatz " +
                ansatz.string()).exit_code == 2);
  CHECK(run_cli("expect --input /nope.json --state " + psi.string()).exit_code == 3);
  const auto psi1 = write_temp("psfam_cli_onequbit.json", "[[1,0],[0,0]]");
  CHECK(run_cli("expect --input " + h.string() + " --state " + psi1.string()).exit_code == 4);
}

TEST_CASE("bench") {
  const auto csv = std::filesystem::temp_directory_path() / "psfam_cli_bench.csv";
  const RunResult r =
      run_cli("bench --m-range 2..3 --methods qwc,dense --seed 5 --out " + csv.string());
  CHECK(r.exit_code == 0);
  std::ifstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "method,m,density_pct,n_strings,n_families,walltime_s,memory_proxy_bytes");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  // Rows ordered by (m, cut, method name) no matter how --methods was given.
  CHECK(lines[0].starts_with("dense,2,"));
  CHECK(lines[1].starts_with("qwc,2,"));
  CHECK(lines[2].starts_with("dense,3,"));
  CHECK(lines[3].starts_with("qwc,3,"));

  CHECK(run_cli("bench --m-range 3..2 --methods dense --seed 5 --out " + csv.string()).exit_code ==
        2);
  CHECK(run_cli("bench --m-range 2..3 --methods '' --seed 5 --out " + csv.string()).exit_code ==
        2);
  // The gc guard refuses fully dense m = 7 with the default cap.
  CHECK(run_cli("bench --m-range 7..7 --methods gc --seed 5 --out " + csv.string()).exit_code ==
        4);
  // And the environment override tightens it further.
  CHECK(run_cli("bench --m-range 3..3 --methods gc --seed 5 --out " + csv.string(),
                "PSFAM_MAX_ADJ_BYTES=100 ").exit_code == 4);
}

int main(int argc, char** argv) {
  const char* env = std::getenv("PSFAM_CLI");
  if (argc > 1 && argv[1][0] != '-') {
    g_cli_path = argv[1];
    --argc;
    ++argv;
  } else if (env) {
    g_cli_path = env;
  } else {
    std::fprintf(stderr, "pass the CLI path as argv[1] or set PSFAM_CLI\n");
    return 1;
  }
  doctest::Context ctx(argc, argv);
  return ctx.run();
}

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / ("shardcast_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Run run(const std::string& args, const std::string& stdin_text = "") {
  const auto in = scratch() / "stdin";
  const auto err = scratch() / "stderr";
  std::ofstream(in) << stdin_text;
  const std::string cmd = std::string("\"") + SHARDCAST_CLI + "\" " + args + " < \"" + in.string() +
                          "\" 2> \"" + err.string() + "\"";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("split is deterministic and round-trips through recover") {
  const auto a = run("split --k 3 --n 5 --random --seed 7");
  const auto b = run("split --k 3 --n 5 --random --seed 7");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 5);
  CHECK(a.err.empty());

  std::istringstream lines(a.out);
  std::vector<std::string> shares;
  for (std::string l; std::getline(lines, l);) shares.push_back(l);
  const auto r1 = run("recover --verify", shares[0] + "\n" + shares[2] + "\n" + shares[4] + "\n");
  const auto r2 = run("recover --k 3", shares[1] + "\n" + shares[3] + "\n" + shares[0] + "\n");
  CHECK(r1.code == 0);
  CHECK(r1.out == r2.out);
  CHECK(r1.out.size() == 33);
}

TEST_CASE("split of an explicit secret") {
  const auto s = run("split --k 2 --n 3 --secret-hex 00112233 --seed 1");
  REQUIRE(s.code == 0);
  std::istringstream lines(s.out);
  std::string a, b;
  std::getline(lines, a);
  std::getline(lines, b);
  const auto r = run("recover", a + "\n" + b + "\n");
  CHECK(r.out == "00112233\n");
}

TEST_CASE("omitting the seed reports the chosen one") {
  const auto s = run("split --k 2 --n 3 --random");
  CHECK(s.code == 0);
  CHECK(s.err.rfind("seed: ", 0) == 0);
  const auto seed = s.err.substr(6, s.err.find('\n') - 6);
  CHECK(run("split --k 2 --n 3 --random --seed " + seed).out == s.out);
}

TEST_CASE("usage errors exit 2") {
  const auto r = run("split --k 6 --n 5 --random --seed 1");
  CHECK(r.code == 2);
  CHECK_FALSE(r.err.empty());
  CHECK(run("split --k 3").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("domain errors exit 1 with one line") {
  const auto r = run("recover", "1:00ff\n1:00ee\n");
  CHECK(r.code == 1);
  CHECK(r.err.rfind("error: ", 0) == 0);
  CHECK(count_lines(r.err) == 1);
  CHECK(run("decode 0011").code == 1);
  CHECK(run("recover --verify", "1:0011223344556677889900aabbccddee\n2:0011223344556677889900aabbccddef\n").code == 1);
}

TEST_CASE("encode and decode") {
  const auto rows = testing::read_tsv(testing::fixture_path("altbeacon_frames.tsv"));
  for (const auto& row : rows) {
    const auto e = run("encode --id " + row[0] + " --body-hex " + row[1] + " --mfg-id " +
                       std::to_string(std::stoul(row[2], nullptr, 16)) + " --ref-rssi " + row[3] +
                       " --reserved " + row[4]);
    CHECK(e.code == 0);
    CHECK(e.out == row[5] + "\n");
  }
  const auto d = run("decode " + rows[0][5]);
  CHECK(d.code == 0);
  CHECK(d.out ==
        "share_id: 5\nbody: 101112131415161718191a1b1c1d1e1f\nmfg_id: 0x0118\nref_rssi: -59\nreserved: 0\n");
  CHECK(run("decode 1801beac05101112131415161718191a1b1c1d1e1f000000c5").code == 1);
}

TEST_CASE("simulate") {
  const auto conf = scratch() / "small.conf";
  std::ofstream(conf) << "k_n = 3:5, 4:5\nnodes = 1-3\ntrials = 5\n";
  const auto a = run("simulate --config " + conf.string() + " --seed 5");
  const auto b = run("simulate --config " + conf.string() + " --seed 5 --jobs 3");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(count_lines(a.out) == 7);
  CHECK(a.err.empty());

  const auto unseeded = run("simulate --config " + conf.string());
  CHECK(unseeded.code == 0);
  CHECK(unseeded.err.rfind("seed: ", 0) == 0);

  const auto sightings = scratch() / "sightings.tsv";
  const auto out = scratch() / "results.tsv";
  CHECK(run("simulate --config " + conf.string() + " --seed 5 --out " + out.string() +
            " --sightings-out " + sightings.string())
            .code == 0);
  CHECK(slurp(out) == a.out);
  CHECK(slurp(sightings).rfind("timestamp\tdevice_id\tscanner_id\trssi\n", 0) == 0);
  // The exported trace feeds the analyzer.
  CHECK(run("analyze --input " + sightings.string()).code == 0);

  CHECK(run("simulate --config /nonexistent.conf").code == 1);
  std::ofstream(scratch() / "bad.conf") << "k_n = 3:5\nnodes = one\n";
  const auto bad = run("simulate --config " + (scratch() / "bad.conf").string());
  CHECK(bad.code == 1);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("sweep concatenates configs") {
  const auto c1 = scratch() / "c1.conf";
  const auto c2 = scratch() / "c2.conf";
  std::ofstream(c1) << "k_n = 3:5\nnodes = 1,2\ntrials = 2\n";
  std::ofstream(c2) << "k_n = 4:6\nnodes = 3\ntrials = 2\n";
  const auto r = run("sweep --config " + c1.string() + " --config " + c2.string() + " --seed 3");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 4);
}

TEST_CASE("bundled table config lists 72 rows") {
  const auto r = run("simulate --config " + std::string(SHARDCAST_CONFIG_DIR) +
                     "/table_repro.conf --trials 1 --jobs 4");
  CHECK(r.code == 0);
  CHECK(count_lines(r.out) == 73);
}

TEST_CASE("analyze the bundled trace") {
  const auto trace = testing::data_path("trace_600s.tsv");
  const auto r = run("analyze --input " + trace + " --k 5 --n 6 --t 1 --gaps 1,3,30,60");
  REQUIRE(r.code == 0);
  std::string expected = "t\tk\tn\tslots_exposed\ttotal_exposure_s\treduction_factor\n";
  std::string raw;
  std::string scheme;
  for (const auto& row : testing::read_tsv(testing::fixture_path("trace_600s_exposure.tsv"))) {
    if (row[0] == "1" && row[1] == "5" && row[2] == "6") scheme = row[3];
    raw = row[5];
  }
  CHECK(r.out.find("1\t1\t1\t" + raw + "\t" + raw + "\t1.0000\n") != std::string::npos);
  CHECK(r.out.find("1\t5\t6\t" + scheme + "\t" + scheme + "\t") != std::string::npos);

  std::string enc_table = "gap\tencounters\ttotal_duration\n";
  for (const auto& row : testing::read_tsv(testing::fixture_path("trace_600s_encounters.tsv"))) {
    enc_table += row[0] + "\t" + row[1] + "\t" + row[2] + "\n";
  }
  CHECK(r.out.size() > enc_table.size());
  CHECK(r.out.substr(r.out.size() - enc_table.size()) == enc_table);

  const auto enc = run("encounters --input " + trace);
  CHECK(enc.out == enc_table);
  CHECK(count_lines(enc.out) == 5);
}

TEST_CASE("analyze errors") {
  const auto empty = scratch() / "empty.csv";
  std::ofstream(empty) << "";
  auto r = run("analyze --input " + empty.string());
  CHECK(r.code == 1);
  CHECK(r.err.find("EmptyFile") != std::string::npos);

  const auto bad = scratch() / "bad.csv";
  std::ofstream(bad) << "timestamp,device_id,scanner_id,rssi\n1,a,b,-5\n2,a,b,x\n";
  r = run("analyze --input " + bad.string());
  CHECK(r.code == 1);
  CHECK(r.err.find("line 3") != std::string::npos);

  CHECK(run("analyze --input " + testing::data_path("trace_600s.tsv") + " --k 7 --n 6").code == 1);
  CHECK(run("analyze --input " + testing::data_path("trace_600s.tsv") + " --t 0").code == 1);
}

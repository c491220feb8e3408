#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

struct Run {
  int status = -1;
  std::string out;
  std::string err;
};

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("hrcline_cli_test_" + name);
}

Run run(const std::string& args) {
  const auto err_path = temp_file("stderr");
  const std::string cmd = std::string(HRCLINE_CLI) + " " + args + " 2>" + err_path.string();
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int raw = ::pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(err_path);
  r.err.assign(std::istreambuf_iterator<char>(in), {});
  return r;
}

std::string write(const std::string& name, const std::string& text) {
  const auto path = temp_file(name);
  std::ofstream(path) << text;
  return path.string();
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("commands on the bundled scenario") {
  const std::string scenario = HRCLINE_SCENARIO;
  CHECK(run("allocate " + scenario).status == 0);
  const auto balance = run("balance " + scenario);
  CHECK(balance.status == 0);
  CHECK(balance.out.find("takt: 80 s") != std::string::npos);
  CHECK(run("simulate --reps 3 --mode pipelined " + scenario).status == 0);
  CHECK(run("check --format json " + scenario).status == 0);
  const auto demo = run("demo --reps 3");
  CHECK(demo.status == 0);
  CHECK(demo.out.find("unit cycle time: 406 s") != std::string::npos);
}

TEST_CASE("plan from flags") {
  const auto r = run("plan --demand 5000 --days 15 --throughput 85 --format json");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"stations\": 4") != std::string::npos);
  CHECK(r.out.find("\"total\": 5100") != std::string::npos);
}

TEST_CASE("output file") {
  const auto out = temp_file("out.json");
  std::filesystem::remove(out);
  CHECK(run("plan --demand 10 --days 1 --throughput 3 --format json --out " + out.string()).status == 0);
  CHECK(std::filesystem::file_size(out) > 0);
  const auto bad = run("plan --demand 10 --days 1 --throughput 3 --out /nonexistent/dir/x.json");
  CHECK(bad.status == 4);
  CHECK(lines(bad.err) == 1);
}

TEST_CASE("failure exit codes with one error line") {
  SUBCASE("missing file") {
    const auto r = run("balance /nonexistent/file.json");
    CHECK(r.status == 4);
    CHECK(lines(r.err) == 1);
    CHECK(r.err.rfind("hrcline: error: io: ", 0) == 0);
  }
  SUBCASE("syntax") {
    const auto r = run("balance " + write("syntax.json", "{ \"tasks\": ["));
    CHECK(r.status == 2);
    CHECK(lines(r.err) == 1);
    CHECK(r.err.rfind("hrcline: error: parse: ", 0) == 0);
  }
  SUBCASE("validation") {
    const auto r = run("balance " + write("cycle.json", R"({"shift_s": 100, "tasks": [
      {"id": "a", "duration_s": 1, "attributes": {"S":1,"F":1,"M":1,"J":1,"Sf":1}},
      {"id": "b", "duration_s": 1, "attributes": {"S":1,"F":1,"M":1,"J":1,"Sf":1}}],
      "precedence": [["a","b"],["b","a"]]})"));
    CHECK(r.status == 2);
    CHECK(lines(r.err) == 1);
    CHECK(r.err.rfind("hrcline: error: validation: ", 0) == 0);
  }
  SUBCASE("infeasible") {
    const auto r = run("balance " + write("infeasible.json", R"({"shift_s": 100, "tasks": [
      {"id": "a", "duration_s": 1, "attributes": {"S":0,"F":1,"M":1,"J":1,"Sf":1}}],
      "resources": [{"id": "r", "kind": "robot", "reach_mm": 500, "payload_kg": 1,
                     "timing": {"ct_s": 1, "pt_s": 2, "setup_s": 0, "availability": 1}}]})"));
    CHECK(r.status == 3);
    CHECK(lines(r.err) == 1);
    CHECK(r.err.rfind("hrcline: error: infeasible: ", 0) == 0);
  }
  SUBCASE("bad flag value") {
    const auto r = run("simulate --mode sideways " + std::string(HRCLINE_SCENARIO));
    CHECK(r.status == 2);
    CHECK(lines(r.err) == 1);
  }
}

TEST_CASE("zero-task scenario simulates to zero") {
  const auto r = run("simulate --format json --reps 2 " + write("empty.json", R"({"shift_s": 1000})"));
  CHECK(r.status == 0);
  CHECK(r.out.find("\"mean_daily_throughput\": 0.0") != std::string::npos);
}

TEST_CASE("trace file") {
  const auto trace = temp_file("trace.csv");
  std::filesystem::remove(trace);
  CHECK(run("simulate --reps 2 --trace " + trace.string() + " " + HRCLINE_SCENARIO).status == 0);
  std::ifstream in(trace);
  std::string header;
  std::getline(in, header);
  CHECK(header == "time_ms,kind,station,unit");
}

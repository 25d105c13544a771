#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <string>

#include "banarith/cli.hpp"
#include "support.hpp"

using namespace banarith;
using namespace banarith::cli;
using io::Json;
namespace fs = std::filesystem;

namespace {

RunResult call(const std::string& sub, const std::string& input, std::map<std::string, std::string> params = {}) {
  JobSpec job;
  job.subcommand = sub;
  job.input_text = input;
  job.params = std::move(params);
  return run(job);
}

Json error_of(const RunResult& r) { return Json::parse(r.output).at("error"); }

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("banarith_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& file, const std::string& text) const { std::ofstream(path / file) << text; }
};

const char* kDivideEntry = R"({"subcommand": "padic divide", "input": {"b": [-5, 1]}, "params": {"p": "5", "r": "1/2"}})";

}  // namespace

TEST_CASE("every operation is reachable from exactly one subcommand") {
  const std::set<std::string> ops = {
      "norm", "scale_norm", "check_ring_axioms", "seq_norm", "dual_descriptor", "tensor_l1", "sym_power",
      "dominate_weights", "interchange_maps", "kernel_of_coproduct_map", "series_norm", "mul", "restrict",
      "delta_map", "sigma_map", "id_minus_shift", "pairing", "compare_norms", "divide_by_x_minus_p",
      "padic_expand", "quotient_norm_bounds", "bezout_orthogonality", "zp_tensor_norm", "s1_kernel_element_norm",
      "nuclear_norm_diagonal", "build_cert", "decompose_through_l1", "decompose_through_linf", "compose_cert",
      "tensor_cert", "psi_phi_nuclear", "roos_complex", "limit_via_shift", "cech_complex", "truncated_cohomology",
      "split_check", "corpus_replay"};
  std::map<std::string, std::string> owner;
  std::set<std::string> names;
  for (const auto& info : registry()) {
    CHECK(names.insert(info.name).second);
    REQUIRE(find_subcommand(info.name) != nullptr);
    CHECK(find_subcommand(info.name)->operations == info.operations);
    for (const auto& op : info.operations) {
      INFO(op);
      CHECK(owner.emplace(op, info.name).second);
    }
  }
  for (const auto& op : ops) {
    INFO(op);
    CHECK(owner.count(op) == 1);
  }
  CHECK(find_subcommand("padic frobnicate") == nullptr);
}

TEST_CASE("worked examples") {
  const RunResult d = call("padic divide", R"({"b": [-5, 1]})", {{"p", "5"}, {"r", "1/2"}});
  REQUIRE(d.exit_code == kExitOk);
  const Json out = Json::parse(d.output);
  CHECK(out.at("bound") == "11/9");
  CHECK(out.at("bound_holds") == true);
  CHECK(out.at("quotient_norm") == "1/1");
  CHECK(out.at("quotient").at("coeffs") == Json::parse(R"([{"idx": [0], "val": "1/1"}])"));

  const RunResult n =
      call("norm", R"({"radii": ["1/2"], "mode": "arch", "coeffs": [{"idx": [0], "val": "1"}, {"idx": [1], "val": "1"}]})");
  REQUIRE(n.exit_code == kExitOk);
  CHECK(Json::parse(n.output).at("norm") == "3/2");
}

TEST_CASE("output is deterministic") {
  for (int i = 0; i < 2; ++i) CHECK(call("padic divide", R"({"b": [-10, 2]})", {{"p", "5"}, {"r", "1/2"}}).output ==
                                    call("padic divide", R"({"b": [-10, 2]})", {{"p", "5"}, {"r", "1/2"}}).output);
  JobSpec job;
  job.subcommand = "split check";
  job.input_text = R"({"r": "1/2", "samples": 10})";
  job.truncation = 20;
  job.seed = 99;
  const RunResult a = run(job), b = run(job);
  CHECK(a.exit_code == kExitOk);
  CHECK(a.output == b.output);
  CHECK(Json::parse(a.output).at("all_hold") == true);
}

TEST_CASE("validation errors exit with code 2") {
  const RunResult malformed = call("padic divide", "{\"b\": [1,\n");
  CHECK(malformed.exit_code == kExitValidation);
  const Json e = error_of(malformed);
  CHECK(e.at("kind") == "validation");
  CHECK(e.at("position").at("line") == 2);

  CHECK(call("padic frobnicate", "{}").exit_code == kExitValidation);
  const RunResult unknown = call("padic divide", R"({"b": [-5, 1], "colour": 3})", {{"p", "5"}, {"r", "1/2"}});
  CHECK(unknown.exit_code == kExitValidation);
  CHECK(error_of(unknown).at("message").get<std::string>().find("colour") != std::string::npos);
  CHECK(call("padic divide", R"({"b": [-5, 1]})").exit_code == kExitValidation);
  CHECK(call("padic divide", "[1, 2]").exit_code == kExitValidation);

  const RunResult outside = call("padic divide", R"({"b": [-4, 1]})", {{"p", "5"}, {"r", "1/2"}});
  CHECK(outside.exit_code == kExitValidation);
  CHECK(error_of(outside).at("kind") == "not-in-ideal");
  CHECK(error_of(outside).at("remainder") == "1/1");

  JobSpec job;
  job.subcommand = "padic divide";
  job.input_text = R"({"b": [-5, 1]})";
  job.params = {{"p", "5"}, {"r", "1/2"}};
  job.seed = 1;
  CHECK(run(job).exit_code == kExitValidation);
  job.seed.reset();
  job.truncation = 3;
  CHECK(run(job).exit_code == kExitValidation);
  job.truncation.reset();
  job.format = "yaml";
  CHECK(run(job).exit_code == kExitValidation);
}

TEST_CASE("corpus replay") {
  {
    TempDir dir("empty");
    const ReplayReport r = corpus_replay(dir.path.string());
    CHECK(r.passed());
    CHECK(r.entries.empty());
    CHECK(r.warnings.size() == 1);
  }
  const std::string expected = call("padic divide", R"({"b": [-5, 1]})", {{"p", "5"}, {"r", "1/2"}}).output;
  {
    TempDir dir("good");
    dir.write("divide.input.json", kDivideEntry);
    dir.write("divide.expected.json", expected);
    const ReplayReport r = corpus_replay(dir.path.string());
    CHECK(r.passed());
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].passed);

    setenv("BANARITH_CORPUS", dir.path.string().c_str(), 1);
    const RunResult viaenv = call("corpus replay", "");
    unsetenv("BANARITH_CORPUS");
    CHECK(viaenv.exit_code == kExitOk);
    CHECK(Json::parse(viaenv.output).at("checked") == 1);
  }
  {
    TempDir dir("corrupt");
    dir.write("divide.input.json", kDivideEntry);
    std::string bad = expected;
    bad.replace(bad.find("11/9"), 4, "11/8");
    dir.write("divide.expected.json", bad);
    dir.write("orphan.input.json", kDivideEntry);
    const RunResult r = call("corpus replay", "", {{"directory", dir.path.string()}});
    CHECK(r.exit_code == kExitCheckFailed);
    const Json out = Json::parse(r.output);
    CHECK(out.at("failed") == 2);
    CHECK(out.at("entries").at(0).at("reason").get<std::string>().find("divide.expected.json") != std::string::npos);
    CHECK(out.at("entries").at(1).at("reason").get<std::string>().find("missing expected file") != std::string::npos);
  }
  CHECK(call("corpus replay", "", {{"directory", "/nonexistent/banarith"}}).exit_code == kExitValidation);
}

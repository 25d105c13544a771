#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <unistd.h>

#include "banarith/cli.hpp"

namespace {

std::string read_all(std::istream& in) { return std::string(std::istreambuf_iterator<char>(in), {}); }

const std::set<std::string> kKnown = {"--input",  "--output", "--truncation", "--seed",
                                      "--format", "--set",    "--list",       "--help"};

// Unknown "--key value" and "--key=value" pairs become fields of the input document.
std::vector<std::string> split_fields(int argc, char** argv, std::map<std::string, std::string>& fields) {
  std::vector<std::string> rest;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const auto eq = arg.find('=');
    const std::string name = arg.substr(0, eq);
    if (arg.rfind("--", 0) != 0 || arg.size() == 2 || kKnown.count(name)) {
      rest.push_back(arg);
      continue;
    }
    if (eq != std::string::npos) {
      fields[name.substr(2)] = arg.substr(eq + 1);
    } else if (i + 1 < argc) {
      fields[name.substr(2)] = argv[++i];
    } else {
      fields[name.substr(2)] = "true";
    }
  }
  return rest;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact arithmetic for Banach rings, polydisk algebras and nuclear maps"};
  std::vector<std::string> words;
  std::string input, output = "-", format = "json";
  std::optional<long> truncation;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
  bool list = false;

  app.add_option("command", words, "subcommand words, e.g. padic divide");
  app.add_option("-i,--input", input, "input JSON file ('-' for stdin; default: stdin unless it is a terminal)");
  app.add_option("-o,--output", output, "output file ('-' for stdout)");
  app.add_option("-t,--truncation", truncation, "override the subcommand's truncation parameter");
  app.add_option("-s,--seed", seed, "seed for sampled checks");
  app.add_option("-f,--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--set", sets, "extra field key=value merged into the input document");
  app.add_flag("-l,--list", list, "list subcommands");
  std::map<std::string, std::string> fields;
  std::vector<std::string> rest = split_fields(argc, argv, fields);
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : banarith::cli::kExitValidation;
  }

  if (list || words.empty()) {
    for (const auto& s : banarith::cli::registry()) std::printf("%-22s %s\n", s.name.c_str(), s.summary.c_str());
    return words.empty() && !list ? banarith::cli::kExitValidation : banarith::cli::kExitOk;
  }

  banarith::cli::JobSpec job;
  for (const auto& w : words) job.subcommand += (job.subcommand.empty() ? "" : " ") + w;
  job.truncation = truncation;
  job.seed = seed;
  job.format = format;
  job.params = fields;
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::cerr << "--set expects key=value, got '" << kv << "'\n";
      return banarith::cli::kExitValidation;
    }
    job.params[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  if (input == "-" || (input.empty() && !isatty(STDIN_FILENO))) {
    job.input_text = read_all(std::cin);
  } else if (input.empty()) {
    job.input_text.clear();
  } else {
    std::ifstream in(input, std::ios::binary);
    if (!in) {
      std::cerr << "cannot read " << input << "\n";
      return banarith::cli::kExitValidation;
    }
    job.input_text = read_all(in);
  }
  job.output_path = output;

  const banarith::cli::RunResult r = banarith::cli::run(job);
  if (output == "-") std::fwrite(r.output.data(), 1, r.output.size(), stdout);
  return r.exit_code;
}

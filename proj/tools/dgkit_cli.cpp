#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dgkit/error.hpp"
#include "dgkit/job.hpp"

using namespace dgkit;

namespace {

// Input problems exit 1, broken invariants exit 2.
bool invariant_kind(ErrorKind k) { return k == ErrorKind::DSquaredNonzero; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dgkit: reflexivity and Koszul duality for small dg algebras"};
  app.require_subcommand(1, 1);
  // Global flags may follow the subcommand.
  app.fallthrough();
  std::optional<int> characteristic;
  std::string window, json_path;
  std::optional<int> words, paths;
  bool quiet = false;
  app.add_option("--char", characteristic, "Characteristic of the base field (0 or a prime)");
  app.add_option("--window", window, "Degree window LO..HI");
  app.add_option("--words", words, "Bar word weight bound Lambda")->check(CLI::PositiveNumber);
  app.add_option("--paths", paths, "Path length bound L")->check(CLI::PositiveNumber);
  app.add_option("--json", json_path, "Write the JSON report to PATH");
  app.add_flag("--quiet", quiet, "Suppress the text report");

  std::string job_path;
  auto* run = app.add_subcommand("run", "Run the commands listed in a job document");
  run->add_option("job", job_path, "Job document")->required();
  for (const auto& name : command_names()) {
    if (name == "selftest") continue;
    auto* sub = app.add_subcommand(name, "Run '" + name + "' on a job document");
    sub->add_option("job", job_path, "Job document")->required();
  }
  app.add_subcommand("selftest", "Run the built-in invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  Json report;
  try {
    if (command == "selftest") {
      report = selftest();
    } else {
      std::string text = read_file(job_path);
      // Flags override the document; validation then runs on the patched document.
      if (characteristic || !window.empty() || words || paths) {
        Json doc = Json::parse(text, nullptr, false);
        if (doc.is_object()) {
          if (characteristic) doc["characteristic"] = *characteristic;
          if (doc.contains("bounds") && doc["bounds"].is_object()) {
            if (!window.empty()) doc["bounds"]["window"] = window;
            if (words) doc["bounds"]["words"] = *words;
            if (paths) doc["bounds"]["paths"] = *paths;
          }
          text = doc.dump();
        }
      }
      JobDocument job = parse_job(text);
      report = run_job(job, command == "run" ? job.commands : std::vector<std::string>{command});
    }
  } catch (const InputError& e) {
    std::cerr << "input error at " << e.what() << "\n";
    return 1;
  } catch (const InvariantFailure& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n" << e.witness().dump(2) << "\n";
    return 2;
  } catch (const Error& e) {
    if (invariant_kind(e.kind())) {
      std::cerr << "internal invariant failure: " << e.what() << "\n";
      return 2;
    }
    std::cerr << "input error at /" << command << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal invariant failure: " << e.what() << "\n";
    return 2;
  }

  if (!json_path.empty()) {
    std::ofstream out(json_path);
    out << report.dump(2) << "\n";
    if (!out) {
      std::cerr << "input error at " << json_path << ": cannot write report\n";
      return 1;
    }
  }
  if (!quiet) std::cout << render_text(report);
  return 0;
}

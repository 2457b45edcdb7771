#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "gsol/pipeline.hpp"

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw gsol::InputError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic static torus-symmetric vacuum solutions from rod diagrams"};
  std::string command_text;
  std::string config_path;
  std::size_t family = 1;
  int threads = 1;
  std::string sample_override;
  std::string report_override;
  app.add_option("command", command_text,
                 "validate | classify | build | balance | verify | kasner | holonomy | wick | sample")
      ->required();
  app.add_option("config", config_path, "run configuration file")->required()->check(CLI::ExistingFile);
  app.add_option("--family", family, "family turned into time by `wick` (1-based)")->check(CLI::PositiveNumber);
  app.add_option("--threads", threads, "worker threads for point sweeps (0 = hardware)")->check(CLI::NonNegativeNumber);
  app.add_option("--sample-out", sample_override, "CSV path for `sample` (overrides output.sample)");
  app.add_option("--report-out", report_override, "also write the report here (overrides output.report)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(gsol::ExitCode::input_error);
  }

  const auto command = gsol::parse_command(command_text);
  if (!command) {
    std::cerr << "gsol: unknown command '" << command_text << "'\n";
    return static_cast<int>(gsol::ExitCode::input_error);
  }
  if (threads == 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  try {
    const gsol::RunConfig config = gsol::load_config(config_path);
    gsol::PipelineOptions options;
    options.wick_family = family;
    options.threads = threads;
    const gsol::PipelineResult result = gsol::run_pipeline(config, *command, options);

    std::cout << result.report;
    const std::string report_path = report_override.empty() ? config.report_path : report_override;
    if (!report_path.empty()) write_file(report_path, result.report);
    if (*command == gsol::Command::sample) {
      const std::string sample_path = sample_override.empty() ? config.sample_path : sample_override;
      if (sample_path.empty()) {
        std::cout << result.csv;
      } else {
        write_file(sample_path, result.csv);
      }
    }
    return static_cast<int>(result.exit);
  } catch (const std::exception& e) {
    std::cerr << "gsol: " << e.what() << "\n";
    return static_cast<int>(gsol::exit_code_for(e));
  }
}

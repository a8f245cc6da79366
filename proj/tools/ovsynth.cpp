// Command-line front end: reads a .pnet model, synthesizes the control
// places and writes the controlled net, report and optional DOT graphs.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ovsynth/ovsynth.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  out << content;
  return static_cast<bool>(out);
}

std::string json_twin_path(const std::string& report_path) {
  const auto dot = report_path.find_last_of('.');
  const auto slash = report_path.find_last_of('/');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
    return report_path.substr(0, dot) + ".json";
  return report_path + ".json";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthesize control places for a safe Petri net from forbidden states"};
  std::string input;
  std::string out_path, report_path, dot_rg_path, dot_controlled_path;
  ovs::PipelineOptions options;
  app.add_option("input", input, "Input .pnet model")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_path, "Write the controlled net (.pnet)");
  app.add_option("--report", report_path, "Write the text report; a .json twin is written alongside");
  app.add_option("--dot-rg", dot_rg_path, "Write the plant reachability graph (DOT)");
  app.add_option("--dot-controlled", dot_controlled_path, "Write the closed-loop reachability graph (DOT)");
  app.add_option("--max-support", options.support_cap, "Largest border-state support expanded into over-states")
      ->capture_default_str();
  app.add_option("--state-budget", options.state_budget, "Maximum number of reachable states")->capture_default_str();
  app.add_flag("--fallback", options.fallback,
               "When a border state cannot be covered, forbid it by its full-state constraint");
  app.add_flag("--exact-cover", options.exact_cover, "Minimum cover by exhaustive search (at most 20 over-states)");
  CLI11_PARSE(app, argc, argv);

  std::ifstream in(input, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();

  ovs::NetDocument doc;
  try {
    doc = ovs::parse_net(buffer.str());
  } catch (const ovs::Error& e) {
    std::cerr << input << ": " << e.what() << "\n";
    return ovs::exit_code::kParseError;
  }
  doc.options = options;

  const ovs::PipelineResult result = ovs::run_pipeline(doc);
  const std::string text = ovs::report_text(result);

  bool io_ok = true;
  if (report_path.empty()) {
    std::cout << text;
  } else {
    io_ok &= write_file(report_path, text);
    io_ok &= write_file(json_twin_path(report_path), ovs::report_json(result).dump(2) + "\n");
  }
  if (!dot_rg_path.empty() && result.rg)
    io_ok &= write_file(dot_rg_path, ovs::to_dot(result.plant, *result.rg,
                                                 result.partition ? &result.partition->partition : nullptr));
  if (!dot_controlled_path.empty() && result.closed_loop)
    io_ok &= write_file(dot_controlled_path, ovs::to_dot(*result.controlled, result.closed_loop->graph));
  if (!out_path.empty() && result.controlled) io_ok &= write_file(out_path, ovs::print_net(*result.controlled, doc.bad));

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  if (result.error)
    std::cerr << "error [" << result.error->stage << "]: " << result.error->message << "\n";
  if (!io_ok) return ovs::exit_code::kOtherError;
  return result.exit_code;
}

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <string_view>

#include <CLI11.hpp>

#include "mubg/error.hpp"
#include "mubg/parallel.hpp"
#include "mubg/tasks.hpp"

namespace {

int verbosity() {
  const char* v = std::getenv("MUBG_VERBOSITY");
  return v ? std::atoi(v) : 0;
}

// "L,D" window override.
bool parse_window(const std::string& text, int& floor, int& ceiling) {
  auto comma = text.find(',');
  if (comma == std::string::npos) return false;
  try {
    std::size_t a = 0, b = 0;
    floor = std::stoi(text.substr(0, comma), &a);
    ceiling = std::stoi(text.substr(comma + 1), &b);
    return a == comma && b == text.size() - comma - 1;
  } catch (const std::logic_error&) {
    return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mubg: complex bordism of classifying spaces, by exact computation"};
  app.require_subcommand(1);
  std::string manifest_path, out_path, window;
  int mod_power = -1;
  for (const char* name : {"pseries", "tate", "locss", "collapse", "kappa", "integrality"}) {
    const std::string article = std::string_view(name) == "integrality" ? "an " : "a ";
    auto* sub = app.add_subcommand(name, "run " + article + name + " manifest");
    sub->add_option("--manifest", manifest_path, "manifest file")->required();
    sub->add_option("--out", out_path, "report file (default: stdout)");
    sub->add_option("--window", window, "override the window as L,D");
    sub->add_option("--mod-power", mod_power, "override the coefficient power M (0: integers)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? mubg::kExitOk : mubg::kExitUsage;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  mubg::ManifestParse parsed = mubg::load_manifest(manifest_path);
  if (!parsed.manifest) {
    std::cerr << manifest_path << ":\n" << parsed.describe_errors();
    return mubg::kExitParse;
  }
  mubg::Manifest m = std::move(*parsed.manifest);
  if (mubg::to_string(m.task) != sub) {
    std::cerr << "manifest task is '" << mubg::to_string(m.task) << "', not '" << sub << "'\n";
    return mubg::kExitUsage;
  }
  const bool windowed = m.task == mubg::Task::tate || m.task == mubg::Task::locss || m.task == mubg::Task::collapse;
  if (!window.empty()) {
    int l = 0, d = 0;
    if (!windowed || !parse_window(window, l, d) || l > 0 || d < 1 || l < -32 || d > 64) {
      std::cerr << "--window needs L,D with -32 <= L <= 0 < D <= 64 on a windowed task\n";
      return mubg::kExitUsage;
    }
    m.floor = l;
    m.degree = d;
  }
  if (mod_power >= 0) {
    if (!windowed || mod_power > 8) {
      std::cerr << "--mod-power needs 0 <= M <= 8 on a windowed task\n";
      return mubg::kExitUsage;
    }
    m.mod_power = mod_power;
  }

  const unsigned threads = mubg::default_threads();
  const auto start = std::chrono::steady_clock::now();
  mubg::TaskOutput result;
  try {
    result = mubg::run_task(m, threads);
  } catch (const mubg::Error& e) {
    std::cerr << "[" << e.module() << "] " << e.what() << "\n";
    return mubg::kExitComputation;
  } catch (const std::exception& e) {
    std::cerr << "[cli] " << e.what() << "\n";
    return mubg::kExitComputation;
  }
  if (verbosity() > 0) {
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cerr << sub << ": " << secs << " s on " << threads << " threads, exit " << result.exit_code << "\n";
  }
  if (out_path.empty()) {
    std::cout << result.report;
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot write " << out_path << "\n";
      return mubg::kExitUsage;
    }
    out << result.report;
  }
  return result.exit_code;
}

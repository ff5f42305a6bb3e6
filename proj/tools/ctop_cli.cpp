// ctop: drives the library from the command line and writes JSON reports.

#include <fstream>
#include <iostream>

#include "cli.hpp"

namespace {

using namespace ctop;
using namespace ctop::cli;

/// argv without the program name and without --out, which must not
/// change the report bytes.
std::vector<std::string> echo_args(int argc, char** argv) {
  std::vector<std::string> out;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--out") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    out.push_back(a);
  }
  return out;
}

/// Bad input is a usage error; running out of a budget is inconclusive.
int exit_code_for(const Error& e) {
  if (dynamic_cast<const FuelExhausted*>(&e) || dynamic_cast<const PrecisionExhausted*>(&e) ||
      dynamic_cast<const CandidateStalls*>(&e) || dynamic_cast<const IndexUnavailable*>(&e))
    return static_cast<int>(Outcome::Inconclusive);
  return kUsageError;
}

int write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    std::cerr << "ctop: cannot write " << path << "\n";
    return kUsageError;
  }
  f << text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Context ctx;
  ctx.args = echo_args(argc, argv);

  CLI::App app{"ctop: computable topology toolkit"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_option_function<Nat>(
         "--fuel", [&](Nat f) { ctx.run.fuel = f; }, "fuel budget")
      ->check(CLI::PositiveNumber);
  app.add_option("--precision", ctx.run.precision, "dyadic precision exponent K")->check(CLI::Range(1, 62));
  app.add_option("--out", ctx.run.out, "report path (default stdout)");
  app.add_option("--verify", ctx.run.verify, "re-check the certificates of a report");

  register_ceer(app, ctx);
  register_space(app, ctx);
  register_example(app, ctx);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (!ctx.run.verify.empty()) {
      if (ctx.job) {
        std::cerr << "ctop: --verify takes no subcommand\n";
        return kUsageError;
      }
      std::ostringstream out;
      const int code = verify_report(ctx.run.verify, out);
      const int w = write_text(ctx.run.out, out.str());
      return w ? w : code;
    }
    if (!ctx.job) {
      std::cerr << app.help();
      return kUsageError;
    }
    const Report report = ctx.job();
    const int w = write_text(ctx.run.out, report.to_json().dump(2) + "\n");
    return w ? w : static_cast<int>(report.outcome);
  } catch (const Error& e) {
    std::cerr << "ctop: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "ctop: malformed report: " << e.what() << "\n";
    return kUsageError;
  }
}

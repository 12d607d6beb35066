// Command-line front end: parses a session file, runs one verification
// command, emits a line-delimited JSON report, and exits 0/1/2/3 for
// pass/fail/inconclusive/error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "frob/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact positive-characteristic commutative algebra toolkit"};

  std::string input_path, command, report_path;
  frob::CommandOptions opts;
  app.add_option("--input", input_path, "session file")->required();
  app.add_option("--command", command,
                 "one of: trace-eval, lala-check, lift-verify, dn-witness, compat-check, "
                 "testideal, subadd-check, bs-check, symbolic, ustp")
      ->required();
  app.add_option("--e-max", opts.e_max, "Frobenius level cap for chains and searches");
  app.add_option("--n-max", opts.n_max, "largest n for ustp containments");
  app.add_option("--degree-bound", opts.degree_bound,
                 "degree truncation for generator sweeps and oracle witnesses");
  app.add_option("--cap", opts.cap, "enumeration cap (spanning sets, basis sweeps)");
  app.add_option("--max-unknowns", opts.max_unknowns, "linear-system unknown cap");
  app.add_option("--threads", opts.threads, "worker threads for basis sweeps");
  app.add_option("--report", report_path, "write the report here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  std::ifstream in(input_path);
  if (!in) {
    std::cerr << "cannot open input file: " << input_path << "\n";
    return 3;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();

  frob::SessionSpec spec;
  try {
    spec = frob::parse_session(buffer.str());
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << "\n";
    return 3;
  }

  frob::CommandReport rep = frob::run_command(spec, command, opts);
  if (report_path.empty()) {
    std::cout << rep.rendered();
  } else {
    // Write once, atomically: stage to a sibling temp file, then rename.
    std::string tmp = report_path + ".tmp";
    {
      std::ofstream out(tmp);
      if (!out) {
        std::cerr << "cannot open report file: " << tmp << "\n";
        return 3;
      }
      out << rep.rendered();
    }
    if (std::rename(tmp.c_str(), report_path.c_str()) != 0) {
      std::cerr << "cannot move report into place: " << report_path << "\n";
      return 3;
    }
  }
  return rep.exit_code;
}

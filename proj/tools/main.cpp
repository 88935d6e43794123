#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rplace/probes.hpp"
#include "rplace/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"rplace: exact cuts, balls and real places over Hahn fraction fields"};
  std::string script;
  std::vector<std::string> commands;
  bool json = false, list = false, stop = false;
  rplace::SessionOptions opts;
  app.add_option("script", script, "script file, one command per line ('-' for stdin)");
  app.add_option("-e,--eval", commands, "command to run (repeatable, after the script)");
  app.add_flag("--json", json, "print one JSON object per command");
  app.add_option("--seed", opts.seed, "seed of the sampling commands and probes");
  app.add_option("--max-steps", opts.max_steps, "step bound of expansions and cut analysis")->check(CLI::PositiveNumber);
  app.add_flag("--stop-on-error", stop, "stop at the first failing command");
  app.add_flag("--list", list, "list commands and probes");
  CLI11_PARSE(app, argc, argv);

  if (list) {
    for (const auto& c : rplace::Session::commands()) std::cout << c << "\n";
    for (const auto& p : rplace::probe_names()) std::cout << "probe " << p << "\n";
    return 0;
  }

  rplace::Session session(opts);
  bool failed = false;
  auto run = [&](const std::string& line) {
    const auto r = session.run(line);
    if (!r) return true;
    if (json)
      std::cout << r->json.dump() << "\n";
    else
      (r->ok ? std::cout : std::cerr) << r->text << "\n";
    failed |= !r->ok;
    return r->ok || !stop;
  };
  auto run_stream = [&](std::istream& in) {
    std::string line;
    while (std::getline(in, line))
      if (!run(line)) return false;
    return true;
  };

  bool go = true;
  if (script == "-" || (script.empty() && commands.empty())) {
    go = run_stream(std::cin);
  } else if (!script.empty()) {
    std::ifstream in(script);
    if (!in) {
      std::cerr << "cannot open " << script << "\n";
      return 2;
    }
    go = run_stream(in);
  }
  for (const auto& c : commands) {
    if (!go) break;
    go = run(c);
  }
  return failed ? 1 : 0;
}

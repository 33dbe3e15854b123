// tsdlink command-line front end. Talks to the library only through the C API.
#include <cstdio>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsdlink/tsdlink.h"

namespace {

enum Exit { ok = 0, check_failed = 1, usage = 2 };

using Algebra = std::unique_ptr<tsdlink_algebra, decltype(&tsdlink_algebra_free)>;
using Report = std::unique_ptr<tsdlink_report, decltype(&tsdlink_report_free)>;

int fail(tsdlink_status status) {
  std::fprintf(stderr, "tsdlink: %s: %s\n", tsdlink_status_name(status), tsdlink_last_error());
  return usage;
}

int usage_error(const std::string& message) {
  std::fprintf(stderr, "tsdlink: usage error: %s\n", message.c_str());
  return usage;
}

/// Prints the report and maps pass/fail onto the exit code.
int emit(tsdlink_report* raw, const std::string& format) {
  Report report(raw, &tsdlink_report_free);
  if (format == "json") {
    std::printf("%s\n", tsdlink_report_json(report.get()));
  } else {
    std::fputs(tsdlink_report_text(report.get()), stdout);
  }
  return tsdlink_report_passed(report.get()) ? ok : check_failed;
}

bool parse_framings(const std::string& text, std::vector<long>& out) {
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stol(item, &used));
      if (used != item.size()) return false;
    } catch (const std::exception&) {
      return false;
    }
  }
  return !out.empty();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact TSD structures, Yang-Baxter operators and framed link traces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", tsdlink_version());

  std::string format = "text";
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

  std::string path, property, word, framings_text, stabilize = "off";
  unsigned strands = 0, trials = 50, moves = 0, criterion = 0;
  std::uint64_t cap = 0, seed = 0;

  auto* validate = app.add_subcommand("validate", "Check the Jacobi or Filippov identity");
  validate->add_option("file", path, "Algebra JSON")->required();

  auto* check = app.add_subcommand("check", "Check an algebraic identity as an exact operator equality");
  check->add_option("file", path, "Algebra JSON")->required();
  check->add_option("--property", property, "Identity to check")
      ->required()
      ->check(CLI::IsMember({"jacobi", "filippov", "tsd", "coalgebra", "reversibility", "mixed", "ybe", "slide",
                             "fb-relations", "all"}));

  auto* invariant = app.add_subcommand("invariant", "Trace invariant of a framed braid closure");
  invariant->add_option("file", path, "Algebra JSON")->required();
  invariant->add_option("--strands", strands, "Number of strands")->required()->check(CLI::PositiveNumber);
  invariant->add_option("--word", word, "Braid word, e.g. \"s1 s2^-1 t1\"")->required();
  invariant->add_option("--framings", framings_text, "Comma-separated framings added to the word, one per strand");
  invariant->add_option("--cap", cap, "Largest operator dimension (d+1)^(2n) allowed");

  auto* markov = app.add_subcommand("markov", "Trace equality over random Markov-equivalent words");
  markov->add_option("file", path, "Algebra JSON")->required();
  markov->add_option("--strands", strands, "Number of strands")->required()->check(CLI::PositiveNumber);
  markov->add_option("--word", word, "Braid word")->required();
  markov->add_option("--trials", trials, "Number of random words")->check(CLI::PositiveNumber);
  markov->add_option("--seed", seed, "Random seed");
  markov->add_option("--moves", moves, "Rewrites per trial");
  markov->add_option("--stabilize", stabilize, "Also report stabilization (EXPERIMENTAL)")
      ->check(CLI::IsMember({"off", "plain", "compensated"}));
  markov->add_option("--cap", cap, "Largest operator dimension allowed");

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite on the built-in algebras");
  selftest->add_option("--criterion", criterion, "Run a single criterion (1-8)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return usage_error(e.what());
  }

  tsdlink_report* report = nullptr;
  if (*selftest) {
    const tsdlink_status s = tsdlink_selftest(criterion, &report);
    return s == TSDLINK_OK ? emit(report, format) : fail(s);
  }

  tsdlink_algebra* raw = nullptr;
  if (const tsdlink_status s = tsdlink_algebra_load_file(path.c_str(), &raw); s != TSDLINK_OK) return fail(s);
  Algebra algebra(raw, &tsdlink_algebra_free);

  tsdlink_status s = TSDLINK_OK;
  if (*validate) {
    s = tsdlink_validate(algebra.get(), &report);
  } else if (*check) {
    s = tsdlink_check(algebra.get(), property.c_str(), &report);
  } else if (*invariant) {
    std::vector<long> framings;
    if (!framings_text.empty()) {
      if (!parse_framings(framings_text, framings)) return usage_error("--framings expects integers f1,..,fn");
      if (framings.size() != strands) return usage_error("--framings needs exactly one entry per strand");
    }
    s = tsdlink_invariant(algebra.get(), strands, word.c_str(), framings.empty() ? nullptr : framings.data(), cap,
                          &report);
  } else if (*markov) {
    tsdlink_markov_options options{};
    options.trials = trials;
    options.seed = seed;
    options.moves_per_trial = moves;
    options.cap = cap;
    options.stabilize = stabilize == "plain"         ? TSDLINK_STABILIZE_PLAIN
                        : stabilize == "compensated" ? TSDLINK_STABILIZE_COMPENSATED
                                                     : TSDLINK_STABILIZE_OFF;
    s = tsdlink_markov(algebra.get(), strands, word.c_str(), &options, &report);
  }
  return s == TSDLINK_OK ? emit(report, format) : fail(s);
}

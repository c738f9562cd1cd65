// Command-line front end: chain invariants, stability classification,
// wildness witnesses, spectra, and solenoid comparison, in text or JSON.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "steinitz/chain.hpp"
#include "steinitz/dynamics.hpp"
#include "steinitz/errors.hpp"
#include "steinitz/families.hpp"
#include "steinitz/json_io.hpp"
#include "steinitz/render.hpp"
#include "steinitz/solenoid.hpp"

namespace {

using namespace steinitz;

constexpr std::uint64_t kDefaultBound = 100000;

std::uint64_t env_bound() {
  const char* v = std::getenv("STEINITZ_ENUM_BOUND");
  if (!v || !*v) return kDefaultBound;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (!end || *end != '\0' || parsed == 0) {
    fail(ErrorKind::InvalidInput,
         "STEINITZ_ENUM_BOUND must be a positive integer, got \"" + std::string(v) + "\"");
  }
  return parsed;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Options shared by the chain-based commands.
struct ChainArgs {
  std::string family;
  std::string input;
  std::size_t depth = 3;
  std::string p, primes, n, r, k, pi_f, pi_inf;
  std::vector<std::string> extra;  // key=value for families with indexed keys

  void attach(CLI::App* cmd, bool with_depth = true) {
    cmd->add_option("--family", family, "family rule name (see family-list)");
    cmd->add_option("--input", input, "chain spec JSON file (alternative to --family)");
    if (with_depth) cmd->add_option("--depth", depth, "truncation depth")->check(CLI::PositiveNumber);
    cmd->add_option("--p", p, "prime parameter");
    cmd->add_option("--primes", primes, "comma-separated leading primes");
    cmd->add_option("--n", n, "exponent parameter n");
    cmd->add_option("--r", r, "exponent parameter r");
    cmd->add_option("--k", k, "exponent parameter k");
    cmd->add_option("--pi-f", pi_f, "finite-spectrum primes, e.g. 2:2,3:1 or 2:2:1");
    cmd->add_option("--pi-inf", pi_inf, "infinite-spectrum primes, e.g. 5,7");
    cmd->add_option("--param", extra, "extra key=value family parameter")->take_all();
  }

  ChainSpec build() const {
    if (!input.empty()) {
      if (!family.empty()) {
        fail(ErrorKind::InvalidInput, "--family and --input are mutually exclusive");
      }
      return json::chain_spec_from_json(read_file(input));
    }
    if (family.empty()) {
      fail(ErrorKind::InvalidInput, "either --family or --input is required");
    }
    std::vector<std::pair<std::string, std::string>> params;
    auto add = [&](const char* key, const std::string& v) {
      if (!v.empty()) params.push_back({key, v});
    };
    add("p", p);
    add("primes", primes);
    add("n", n);
    add("r", r);
    add("k", k);
    add("pi-f", pi_f);
    add("pi-inf", pi_inf);
    for (const auto& kv : extra) {
      auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) {
        fail(ErrorKind::InvalidInput, "--param expects key=value, got \"" + kv + "\"");
      }
      params.push_back({kv.substr(0, eq), kv.substr(eq + 1)});
    }
    return build_chain(descriptor_from_params(family, params), depth);
  }
};

int run_chain_invariants(const ChainArgs& args, const std::string& format,
                         const std::string& oracle, std::uint64_t bound) {
  ChainSpec spec = args.build();
  ChainReport rep = chain_report(spec);
  if (format == "json") {
    std::cout << json::to_json(rep, 2) << "\n";
  } else {
    std::cout << render::chain_report(rep);
  }
  if (oracle == "verify") {
    bool failed = false;
    for (const auto& inv : rep.levels) {
      auto checks = oracle_verify_level(spec, inv.level, bound);
      if (format != "json") std::cout << render::oracle_checks(inv.level, checks);
      for (const auto& c : checks) {
        if (c.status == OracleCheck::Status::Failed) failed = true;
      }
    }
    if (failed) {
      fail(ErrorKind::InvariantViolation,
           "a brute-force oracle disagrees with the closed forms");
    }
  }
  if (!rep.lagrange_ok) {
    fail(ErrorKind::InvariantViolation, "Lagrange identity failed: " + rep.lagrange_note);
  }
  return 0;
}

int run_spectra(const ChainArgs& args, const std::string& format) {
  if (!args.input.empty() && args.family.empty()) {
    // A bare Steinitz number file gets its spectra directly.
    std::string text = read_file(args.input);
    SteinitzNumber s;
    bool is_chain = false;
    try {
      s = json::steinitz_from_json(text);
    } catch (const Error&) {
      is_chain = true;
    }
    if (!is_chain) {
      auto r = spectra(s);
      if (format == "json") {
        std::cout << json::to_json(r, 2) << "\n";
      } else {
        std::cout << "order: " << render::steinitz(s) << "\n" << render::spectrum(r);
      }
      return 0;
    }
  }
  ChainSpec spec = args.build();
  ChainReport rep = chain_report(spec);
  if (format == "json") {
    std::cout << json::to_json(rep, 2) << "\n";
    return 0;
  }
  std::cout << "quotient order     : " << render::steinitz(rep.steinitz_G) << "\n"
            << render::spectrum(rep.spectra_G);
  std::cout << "relative order     : " << render::steinitz(rep.steinitz_rel) << "\n"
            << render::spectrum(rep.spectra_rel);
  std::cout << "discriminant order : " << render::steinitz(rep.steinitz_D) << "\n"
            << render::spectrum(rep.spectra_D);
  return 0;
}

int run_classify(const ChainArgs& args, const std::string& format, std::uint64_t bound) {
  ChainSpec spec = args.build();
  StabilityReport rep = classify_stability(spec, bound);
  if (format == "json") {
    std::cout << json::to_json(rep, 2) << "\n";
  } else {
    std::cout << render::stability(rep);
  }
  return 0;
}

int run_wild_witness(const ChainArgs& args, const std::string& format,
                     std::size_t shallow, std::size_t deep, std::uint64_t bound) {
  ChainSpec spec = args.build();
  auto w = wild_witness_search(spec, shallow, deep, bound);
  if (format == "text") {
    if (w) {
      std::cout << render::witness(*w);
      std::cout << "verification: " << (verify_witness(spec, *w) ? "passed" : "FAILED")
                << "\n";
    } else {
      std::cout << "no witness found (levels " << shallow + 1 << ".." << deep << ")\n";
    }
  } else {
    if (w) {
      std::cout << json::to_json(*w, 2) << "\n";
    } else {
      std::cout << "{\"witness\": null, \"deepest_level_searched\": " << deep << "}\n";
    }
  }
  return 0;
}

int run_solenoid_compare(const std::string& file1, const std::string& file2,
                         const std::string& format) {
  SolenoidPresentation a = json::solenoid_from_json(read_file(file1));
  SolenoidPresentation b = json::solenoid_from_json(read_file(file2));
  Tri eq = orders_asymptotically_equivalent(a, b);
  bool one_dim = a.dimension == 1 && b.dimension == 1;
  if (format == "json") {
    std::string out = std::string("{\"asymptotically_equivalent\": \"") + tri_name(eq) + "\"";
    if (one_dim) {
      out += std::string(", \"homeomorphic_1d\": \"") + tri_name(eq) + "\"";
    } else {
      out += ", \"homeomorphic_1d\": null, \"note\": \"equal orders do not decide "
             "homeomorphism above dimension 1\"";
    }
    std::cout << out << "}\n";
    return 0;
  }
  std::cout << "presentation 1: " << render::presentation(a) << "\n";
  std::cout << "presentation 2: " << render::presentation(b) << "\n";
  std::cout << "asymptotically equivalent: " << tri_name(eq);
  if (one_dim) {
    std::cout << "; homeomorphic (1-d): " << tri_name(solenoids_homeomorphic_1d(a, b));
  } else {
    std::cout << "; homeomorphism undecided: equal orders do not decide it above dimension 1";
  }
  std::cout << "\n";
  return 0;
}

int run_family_list(const std::string& format) {
  struct Entry {
    const char* name;
    const char* params;
  };
  const Entry entries[] = {
      {"toral-diagonal", "--pi-f q:n[,q:n...] [--pi-inf p[,p...]]"},
      {"toral-product",
       "--param coordinates=K --param pi-f-0=q:n,... [--param pi-inf-0=p,...] ..."},
      {"heis-selfembed", "--p PRIME"},
      {"heis-stable", "--pi-f q:n:r[,q:n:r...] --pi-inf p[,p...]"},
      {"heis-wild", "--primes q1,q2[,...] --n N --r R [--pi-inf p[,p...]]"},
      {"toy-model", "--p PRIME --n N --k K (single level; --depth 1)"},
  };
  if (format == "json") {
    std::string out = "[";
    bool first = true;
    for (const auto& e : entries) {
      if (!first) out += ", ";
      first = false;
      out += std::string("{\"name\": \"") + e.name + "\", \"usage\": \"" + e.params + "\"}";
    }
    std::cout << out << "]\n";
    return 0;
  }
  for (const auto& e : entries) {
    std::cout << e.name << std::string(18 - std::string(e.name).size(), ' ') << e.params
              << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steinitz orders, chain invariants and stability of group chains"};
  app.require_subcommand(1);

  std::string format = "text";
  std::uint64_t threshold = 0;
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threshold", threshold,
                 "enumeration bound (overrides STEINITZ_ENUM_BOUND)");

  ChainArgs spectra_args, inv_args, cls_args, wit_args;
  std::string oracle = "off";
  std::size_t shallow = 1, deep = 2;
  std::string sol1, sol2;

  CLI::App* spectra_cmd =
      app.add_subcommand("spectra", "Steinitz orders and prime spectra of a chain");
  spectra_args.attach(spectra_cmd);

  CLI::App* inv_cmd = app.add_subcommand(
      "chain-invariants", "per-level indices m, n, k, k* and the aggregated orders");
  inv_args.attach(inv_cmd);
  inv_cmd->add_option("--oracle", oracle, "run brute-force cross-checks")
      ->check(CLI::IsMember({"off", "verify"}));

  CLI::App* cls_cmd =
      app.add_subcommand("classify", "stable/wild classification with certificates");
  cls_args.attach(cls_cmd);

  CLI::App* wit_cmd =
      app.add_subcommand("wild-witness", "search for a wildness witness element");
  wit_args.attach(wit_cmd, false);
  wit_cmd->add_option("--shallow", shallow, "shallow level")->check(CLI::PositiveNumber);
  wit_cmd->add_option("--deep", deep, "deepest level to probe")->check(CLI::PositiveNumber);

  CLI::App* sol_cmd =
      app.add_subcommand("solenoid-compare", "compare two solenoid presentation files");
  sol_cmd->add_option("file1", sol1, "first presentation JSON")->required();
  sol_cmd->add_option("file2", sol2, "second presentation JSON")->required();

  app.add_subcommand("family-list", "list available chain families");

  // Let --format/--threshold appear after the subcommand name as well.
  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    std::uint64_t bound = threshold ? threshold : env_bound();
    if (spectra_cmd->parsed()) return run_spectra(spectra_args, format);
    if (inv_cmd->parsed()) return run_chain_invariants(inv_args, format, oracle, bound);
    if (cls_cmd->parsed()) return run_classify(cls_args, format, bound);
    if (wit_cmd->parsed()) {
      // The witness subcommand reuses --depth as the chain's truncation depth;
      // the probe range is --shallow/--deep.
      wit_args.depth = std::max<std::size_t>(deep, 1);
      return run_wild_witness(wit_args, format, shallow, deep, bound);
    }
    if (sol_cmd->parsed()) return run_solenoid_compare(sol1, sol2, format);
    return run_family_list(format);
  } catch (const Error& e) {
    std::cerr << json::error_to_json(e) << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "{\"error\": {\"kind\": \"internal\", \"message\": \"" << e.what()
              << "\"}}\n";
    return 4;
  }
}

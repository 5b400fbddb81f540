// fconv: inspect and verify convolution algebras of (Z/2)^n-sets.
//
// Exit status: 0 every check passed, 1 a check failed, 2 usage or parse
// error, 3 invalid input or resource limit, 4 internal error.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fconv/error.hpp"
#include "fconv/report.hpp"

namespace {

constexpr unsigned cli_max_e_dim = 5;

int exit_code(fconv::ErrorKind k) {
  switch (k) {
    case fconv::ErrorKind::parse_error:
      return 2;
    case fconv::ErrorKind::invalid_input:
    case fconv::ErrorKind::resource_limit:
    case fconv::ErrorKind::precondition_violation:
      return 3;
    case fconv::ErrorKind::positivity_violation:
      return 1;
    default:
      return 4;
  }
}

bool write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return static_cast<bool>(std::cout);
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convolution algebras of (Z/2)^n-sets: structure, positivity of [[oB]], and the dim E = 2 catalog"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string instance_path, out_path, format = "json";
  std::size_t max_dim = 512;
  std::uint64_t seed = 1;
  bool timings = false;
  app.add_option("--instance", instance_path, "instance file (JSON)")->required()->check(CLI::ExistingFile);
  app.add_option("--max-dim", max_dim, "largest dim F to build")->capture_default_str();
  app.add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
  app.add_option("--out", out_path, "write the report here instead of stdout");
  app.add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_flag("--timings", timings, "include per-check timings (makes output nondeterministic)");

  auto* describe = app.add_subcommand("describe", "strata, orbit counts, dim F and the basis census");
  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  auto* ideal = app.add_subcommand("ideal", "basis and action matrices of one right ideal [[oB]]");
  auto* catalog = app.add_subcommand("catalog", "simple modules for dim E = 2");

  std::string a_text, b_text;
  std::size_t orbit_index = 0;
  ideal->add_option("--A", a_text, "stabilizer of the orbit, comma-separated bitstrings (empty for 0)");
  ideal->add_option("--orbit", orbit_index, "index among the orbits with stabilizer A")->capture_default_str();
  ideal->add_option("--B", b_text, "the subspace B, comma-separated bitstrings (empty for 0)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    const auto inst = fconv::parse_instance(instance_path);
    for (const auto& note : inst.notes) std::cerr << "note: " << note << "\n";
    if (inst.spec.e_dim > cli_max_e_dim)
      fconv::fail(fconv::ErrorKind::resource_limit,
                  "dim E = " + std::to_string(inst.spec.e_dim) + " exceeds " + std::to_string(cli_max_e_dim));
    const bool text = format == "text";
    std::string rendered;
    bool pass = true;

    if (*describe) {
      const auto d = fconv::describe(inst);
      rendered = text ? fconv::describe_text(d) : d.dump(2) + "\n";
    } else if (*verify) {
      fconv::VerifyOptions opt;
      opt.max_dim = max_dim;
      opt.seed = seed;
      const auto rep = fconv::verify(inst, opt);
      pass = rep.pass();
      rendered = text ? fconv::to_text(rep, timings) : fconv::to_json(rep, timings).dump(2) + "\n";
    } else if (*ideal) {
      const auto n = inst.spec.e_dim;
      const auto j = fconv::ideal_report(inst, fconv::parse_subspace(a_text, n), orbit_index,
                                         fconv::parse_subspace(b_text, n), max_dim);
      rendered = text ? fconv::ideal_text(j) : j.dump(2) + "\n";
    } else if (*catalog) {
      const auto j = fconv::catalog_report(inst, max_dim);
      pass = j["status"] == "pass";
      rendered = text ? fconv::catalog_text(j) : j.dump(2) + "\n";
    }
    if (!write_output(out_path, rendered)) {
      std::cerr << "error: cannot write " << out_path << "\n";
      return 3;
    }
    return pass ? 0 : 1;
  } catch (const fconv::Error& e) {
    std::cerr << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "internal-error: " << e.what() << "\n";
    return 4;
  }
}

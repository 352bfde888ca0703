#include "spinal/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <optional>

#include "spinal/isomorphism.hpp"
#include "spinal/verify.hpp"

namespace spinal {

namespace {

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct GroupOptions {
  std::string preset;
  std::vector<std::string> params;
  std::string spec;
  int d = 0;

  bool has_group() const { return !preset.empty() || !spec.empty(); }

  SpinalGroup group() const {
    if (!spec.empty()) return parse_group_spec(spec);
    if (preset.empty()) throw UsageError("a group is required: pass --preset or --group-spec");
    PresetArgs args;
    for (const auto& kv : params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + kv + "'");
      args[kv.substr(0, eq)] = kv.substr(eq + 1);
    }
    return spinal::preset(preset, args);
  }

  int degree() const {
    if (d != 0) {
      if (d < 2) throw ParameterError("d must be at least 2");
      return d;
    }
    if (!has_group()) throw UsageError("pass --d, --preset or --group-spec");
    return group().params.d;
  }
};

struct GraphOutput {
  std::string format = "dot";
  std::string path;
};

void add_group_options(CLI::App* cmd, GroupOptions& g, bool with_d) {
  auto* p = cmd->add_option("--preset", g.preset, "named group")->check(CLI::IsMember(preset_names()));
  cmd->add_option("--param", g.params, "preset argument key=value (repeatable)")->needs(p);
  auto* s = cmd->add_option("--group-spec", g.spec, "d=..;m=..;pre=..;per=..")->excludes(p);
  if (with_d) cmd->add_option("--d", g.d, "alphabet size")->excludes(p)->excludes(s);
}

void add_output_options(CLI::App* cmd, GraphOutput& o) {
  cmd->add_option("--format", o.format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  cmd->add_option("--out", o.path, "write to a file instead of standard output");
}

std::string render(const LabeledMultigraph& g, std::optional<std::size_t> root, const std::string& format) {
  if (format == "json") return to_json(g, root).dump(2) + "\n";
  return to_dot(g, root);
}

void emit(const std::string& text, const GraphOutput& o, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.path);
  if (!file) throw Error("cannot open '" + o.path + "' for writing");
  file << text;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Schreier graphs of spinal groups", "spinal"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  bool verbose = false;
  app.add_flag("--verbose,-v", verbose, "human-readable output");

  GroupOptions group;
  GraphOutput output;
  std::string xi_text, eta_text, point_text;
  std::size_t level = 0, radius = 0, n = 0, r = 0, R = 0, pi_index = 0;
  std::size_t k_max = 6;
  std::string suite = "all";
  std::uint64_t seed = 1;

  auto* gamma = app.add_subcommand("gamma", "level Schreier graph Gamma_n");
  add_group_options(gamma, group, false);
  gamma->add_option("--level", level, "n")->required();
  auto* recursive = gamma->add_flag("--recursive", "build by the star recursion");
  auto* direct = gamma->add_flag("--direct", "build from the action (default)");
  auto* both = gamma->add_flag("--both", "build both ways and require equality");
  recursive->excludes(direct)->excludes(both);
  direct->excludes(both);
  add_output_options(gamma, output);

  auto* ball_cmd = app.add_subcommand("ball", "ball around xi in Gamma_xi");
  add_group_options(ball_cmd, group, false);
  ball_cmd->add_option("--xi", xi_text, "boundary point u(v)")->required();
  ball_cmd->add_option("--radius", radius)->required();
  add_output_options(ball_cmd, output);

  auto* delta_cmd = app.add_subcommand("delta", "copy X^n sigma^n(xi) of Gamma_n");
  add_group_options(delta_cmd, group, false);
  delta_cmd->add_option("--xi", xi_text)->required();
  delta_cmd->add_option("--n", n)->required();
  add_output_options(delta_cmd, output);

  auto* ends_cmd = app.add_subcommand("ends", "number of ends of Gamma_xi");
  add_group_options(ends_cmd, group, true);
  ends_cmd->add_option("--xi", xi_text)->required();

  auto* annulus_cmd = app.add_subcommand("annulus", "unbounded components of B(R) minus B(r)");
  add_group_options(annulus_cmd, group, false);
  annulus_cmd->add_option("--xi", xi_text)->required();
  annulus_cmd->add_option("--r", r)->required();
  annulus_cmd->add_option("--R", R)->required();

  auto* limit_cmd = app.add_subcommand("limit", "ball of the limit graph for a recurring epimorphism");
  add_group_options(limit_cmd, group, false);
  limit_cmd->add_option("--pi", pi_index, "index into the period of omega")->required();
  limit_cmd->add_option("--radius", radius)->required();
  add_output_options(limit_cmd, output);

  auto* compat_cmd = app.add_subcommand("compat", "compatibility of two boundary points");
  add_group_options(compat_cmd, group, true);
  compat_cmd->add_option("--xi", xi_text)->required();
  compat_cmd->add_option("--eta", eta_text)->required();

  auto* iso_cmd = app.add_subcommand("iso", "isomorphism of boundary graphs");
  add_group_options(iso_cmd, group, false);
  iso_cmd->add_option("--xi", xi_text)->required();
  iso_cmd->add_option("--eta", eta_text)->required();
  iso_cmd->add_option("--radius", radius, "ball radius for rooted checks");
  auto* rooted = iso_cmd->add_flag("--rooted", "compare rooted balls (default)");
  auto* unrooted = iso_cmd->add_flag("--unrooted", "search Cof(eta) for a compatible point");
  auto* labeled = iso_cmd->add_flag("--labeled", "preserve generator labels");
  auto* unlabeled = iso_cmd->add_flag("--unlabeled", "ignore labels and orientation (default)");
  iso_cmd->add_option("--k-max", k_max, "prefix length bound for --unrooted");
  rooted->excludes(unrooted);
  labeled->excludes(unlabeled);

  auto* phi_cmd = app.add_subcommand("phi", "image of a point under phi_{xi,eta}");
  add_group_options(phi_cmd, group, true);
  phi_cmd->add_option("--xi", xi_text)->required();
  phi_cmd->add_option("--eta", eta_text)->required();
  phi_cmd->add_option("--point", point_text)->required();

  auto* selfsim_cmd = app.add_subcommand("selfsim", "search rho with omega_n = omega_0 rho^n");
  add_group_options(selfsim_cmd, group, false);

  auto* validate_cmd = app.add_subcommand("validate", "check the kernel condition on omega");
  validate_cmd->add_option("--group-spec", group.spec)->required();

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
  verify_cmd->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
  verify_cmd->add_option("--seed", seed);

  std::vector<std::string> argv_storage{"spinal"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsageError;
  }

  try {
    if (gamma->parsed()) {
      const auto g = group.group();
      LabeledMultigraph built;
      if (recursive->count() > 0) {
        built = gamma_recursive(g, level);
      } else {
        built = gamma_direct(g, level);
        if (both->count() > 0 && !equal_labeled(built, gamma_recursive(g, level)))
          throw Error("direct and recursive constructions differ");
      }
      emit(render(built, std::nullopt, output.format), output, out);
      if (verbose) err << built.vertex_count() << " vertices, " << built.edge_count() << " edges\n";
    } else if (ball_cmd->parsed()) {
      const auto g = group.group();
      const auto b = ball(g, parse_point(xi_text, g.params.d), radius);
      emit(render(b.graph, b.root, output.format), output, out);
    } else if (delta_cmd->parsed()) {
      const auto g = group.group();
      const auto b = delta(g, parse_point(xi_text, g.params.d), n);
      emit(render(b.graph, b.root, output.format), output, out);
    } else if (ends_cmd->parsed()) {
      const int d = group.degree();
      const auto e = ends_class(parse_point(xi_text, d), d);
      if (verbose)
        out << (e == EndsClass::One ? "one-ended" : "two-ended") << "\n";
      else
        out << static_cast<int>(e) << "\n";
    } else if (annulus_cmd->parsed()) {
      const auto g = group.group();
      if (R <= r) throw UsageError("--R must exceed --r");
      out << annulus_components(g, parse_point(xi_text, g.params.d), r, R) << "\n";
    } else if (limit_cmd->parsed()) {
      const auto g = group.group();
      const auto& period = g.omega.period();
      if (pi_index >= period.size())
        throw ParameterError("--pi must be below the period length " + std::to_string(period.size()));
      const auto b = limit_ball(g, period[pi_index], radius);
      emit(render(b.graph, b.root, output.format), output, out);
    } else if (compat_cmd->parsed()) {
      const int d = group.degree();
      const auto v = compatible(parse_point(xi_text, d), parse_point(eta_text, d), d);
      if (v.compatible) {
        out << "compatible\n";
      } else {
        out << "incompatible k=" << *v.witness_block;
        if (verbose) out << " position=" << *v.witness_position;
        out << "\n";
      }
    } else if (iso_cmd->parsed()) {
      const auto g = group.group();
      const int d = g.params.d;
      const auto xi = parse_point(xi_text, d);
      const auto eta = parse_point(eta_text, d);
      if (unrooted->count() > 0) {
        if (labeled->count() > 0) throw UnsupportedError("unrooted labeled isomorphism is not supported");
        const auto w = unrooted_witness(xi, eta, k_max, d);
        switch (w.status) {
        case WitnessStatus::Found: out << "isomorphic " << format_point(*w.eta_prime, d) << "\n"; break;
        case WitnessStatus::NoneWithinHorizon: out << "unknown\n"; break;
        case WitnessStatus::NoneExists: out << "not-isomorphic\n"; break;
        }
      } else {
        if (iso_cmd->count("--radius") == 0) throw UsageError("--radius is required for rooted checks");
        const auto b1 = ball(g, xi, radius);
        const auto b2 = ball(g, eta, radius);
        const bool iso = labeled->count() > 0 ? iso_labeled_rooted(b1, b2).has_value()
                                              : iso_unlabeled_rooted(b1, b2).has_value();
        out << (iso ? "isomorphic" : "not-isomorphic") << "\n";
      }
    } else if (phi_cmd->parsed()) {
      const int d = group.degree();
      const auto image = phi(parse_point(xi_text, d), parse_point(eta_text, d), parse_point(point_text, d));
      out << format_point(image, d) << "\n";
    } else if (selfsim_cmd->parsed()) {
      const auto rho = detect_self_similar(group.group());
      out << (rho ? format_matrix(*rho) : std::string("none")) << "\n";
    } else if (validate_cmd->parsed()) {
      try {
        const auto g = parse_group_spec(group.spec);
        out << "valid\n";
        if (verbose) out << format_group_spec(g) << "\n";
      } catch (const InvalidOmega& e) {
        out << "invalid index=" << e.index() << "\n";
        return kExitDomainError;
      }
    } else if (verify_cmd->parsed()) {
      bool all_passed = true;
      for (const auto& result : run_suite(suite, seed)) {
        all_passed = all_passed && result.passed;
        out << result.name << " " << (result.passed ? "pass" : "fail") << "\n";
        if (verbose) out << "  " << result.detail << "\n";
      }
      return all_passed ? kExitOk : kExitDomainError;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

} // namespace spinal

#include "flagparam/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "flagparam/serialize.hpp"
#include "flagparam/verify.hpp"

namespace flagparam::cli {

namespace {

using io::Json;

class CommandError : public std::runtime_error {
 public:
  CommandError(std::string code, int exit_code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)), exit_code_(exit_code) {}
  const std::string& code() const noexcept { return code_; }
  int exit_code() const noexcept { return exit_code_; }

 private:
  std::string code_;
  int exit_code_;
};

struct Options {
  std::string in_path;
  std::string out_path;
  std::string profile;
  std::optional<double> gap_tol;
  std::uint64_t seed = 0;
  std::string suite = "all";
  bool reconstruct = false;
  std::optional<int> n;
};

std::string read_input(const Options& opt, std::istream& in) {
  if (opt.in_path.empty() || opt.in_path == "-") {
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  std::ifstream f(opt.in_path);
  if (!f) throw CommandError("IO", kValidation, "cannot open " + opt.in_path);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

void write_output(const Options& opt, std::ostream& out, const Json& doc) {
  const std::string text = io::dump(doc);
  if (opt.out_path.empty() || opt.out_path == "-") {
    out << text;
    return;
  }
  std::ofstream f(opt.out_path);
  if (!f) throw CommandError("IO", kValidation, "cannot write " + opt.out_path);
  f << text;
}

std::optional<MultiplicityProfile> parse_profile(const std::string& text) {
  if (text.empty()) return std::nullopt;
  std::vector<int> ks;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int k = 0;
    try {
      k = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size() || k < 1) {
      throw CommandError("BAD_PROFILE", kValidation,
                         "--profile expects positive integers k1,k2,...; got '" + text + "'");
    }
    ks.push_back(k);
  }
  if (ks.empty()) throw CommandError("BAD_PROFILE", kValidation, "--profile is empty");
  return MultiplicityProfile(std::move(ks));
}

void require_profile_sum(const MultiplicityProfile& p, Index n) {
  if (p.n() != n) {
    throw CommandError("PROFILE_SUM", kValidation,
                       "profile sums to " + std::to_string(p.n()) + ", expected " +
                           std::to_string(n));
  }
}

Tolerances effective_tolerances(const Options& opt, const Tolerances& base) {
  Tolerances tol = base;
  if (opt.gap_tol) {
    if (!(*opt.gap_tol > 0.0)) {
      throw CommandError("USAGE", kValidation, "--gap-tol must be positive");
    }
    tol.gap = *opt.gap_tol;
  }
  return tol;
}

int cmd_param_to_rho(const Options& opt, const Tolerances& tol, std::istream& in,
                     std::ostream& out) {
  const DensityParameters params = io::params_from_json(io::parse(read_input(opt, in)), tol);
  write_output(opt, out, io::matrix_to_json(parametrize(params).matrix()));
  return kSuccess;
}

int cmd_rho_to_param(const Options& opt, const Tolerances& tol, std::istream& in,
                     std::ostream& out) {
  const Matrix m = io::matrix_from_json(io::parse(read_input(opt, in)));
  const DensityMatrix rho(m, tol);
  write_output(opt, out, io::params_to_json(deparametrize(rho, tol)));
  return kSuccess;
}

int cmd_decompose(const Options& opt, const Tolerances& tol, std::istream& in,
                  std::ostream& out) {
  const Matrix m = io::matrix_from_json(io::parse(read_input(opt, in)));
  const UnitaryMatrix g(m, tol.unitary);
  const MultiplicityProfile profile =
      parse_profile(opt.profile).value_or(MultiplicityProfile::nondegenerate(g.dim()));
  require_profile_sum(profile, g.dim());
  ChartSelection sel;
  sel.rank_tol = tol.rank;
  const CosetDecomposition dec = decompose(g, profile, sel);
  Json doc = io::decomposition_to_json(dec);
  if (opt.reconstruct) {
    doc["residual"] = (reconstruct(dec.coords, dec.h).matrix() - g.matrix()).norm();
  }
  write_output(opt, out, doc);
  return kSuccess;
}

int cmd_sample(const Options& opt, std::ostream& out) {
  std::optional<MultiplicityProfile> profile = parse_profile(opt.profile);
  if (!profile && !opt.n) {
    throw CommandError("USAGE", kValidation, "sample needs N or --profile");
  }
  if (opt.n && *opt.n < 1) throw CommandError("USAGE", kValidation, "N must be >= 1");
  if (!profile) profile = MultiplicityProfile::nondegenerate(*opt.n);
  if (opt.n) require_profile_sum(*profile, *opt.n);
  Rng rng(opt.seed);
  const DensityParameters params = sample_parameters(*profile, rng);
  write_output(opt, out,
               Json{{"params", io::params_to_json(params)},
                    {"rho", io::matrix_to_json(parametrize(params).matrix())}});
  return kSuccess;
}

int cmd_verify(const Options& opt, std::ostream& out) {
  const std::vector<std::string>& names = verification_suites();
  if (std::find(names.begin(), names.end(), opt.suite) == names.end()) {
    throw CommandError("USAGE", kValidation, "unknown suite '" + opt.suite + "'");
  }
  const Json report = verification_report(opt.suite, run_verification(opt.suite));
  write_output(opt, out, report);
  return report["pass"].get<bool>() ? kSuccess : kVerificationFailed;
}

void report_error(const Options& opt, std::ostream& out, std::ostream& err,
                  const std::string& code, const std::string& message) {
  err << "flagparam: " << code << ": " << message << "\n";
  const Json doc{{"error", {{"code", code}, {"message", message}}}};
  try {
    write_output(opt, out, doc);
  } catch (const CommandError&) {
    out << io::dump(doc);
  }
}

}  // namespace

ErrorClass classify(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return {"INVALID_ARGUMENT", kValidation};
    case ErrorCode::ShapeMismatch: return {"SHAPE_MISMATCH", kValidation};
    case ErrorCode::NonFinite: return {"NON_FINITE", kValidation};
    case ErrorCode::NotHermitian: return {"NOT_HERMITIAN", kValidation};
    case ErrorCode::NotUnitary: return {"NOT_UNITARY", kValidation};
    case ErrorCode::NotInBall: return {"NOT_BALL", kValidation};
    case ErrorCode::NotDensity: return {"NOT_DENSITY", kValidation};
    case ErrorCode::NotPSD: return {"NOT_PSD", kNumeric};
    case ErrorCode::SingularInput: return {"SINGULAR", kNumeric};
    case ErrorCode::OutOfChart: return {"OUT_OF_CHART", kNumeric};
    case ErrorCode::NoChart: return {"NO_CHART", kNumeric};
    case ErrorCode::GapAmbiguity: return {"GAP_AMBIGUITY", kAmbiguity};
  }
  return {"INTERNAL", kNumeric};
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err, const std::optional<std::string>& tol_spec) {
  CLI::App app("Grassmann-chart parametrization of unitary and density matrices", "flagparam");
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&opt](CLI::App* cmd) {
    cmd->add_option("--in", opt.in_path, "Input JSON file (default stdin)");
    cmd->add_option("--out", opt.out_path, "Output JSON file (default stdout)");
  };
  CLI::App* p2r = app.add_subcommand("param-to-rho", "ParamsJSON -> density matrix");
  add_io(p2r);
  CLI::App* r2p = app.add_subcommand("rho-to-param", "density matrix -> ParamsJSON");
  add_io(r2p);
  r2p->add_option("--gap-tol", opt.gap_tol, "Eigenvalue clustering threshold");
  CLI::App* dec = app.add_subcommand("decompose", "Coset decomposition of a unitary");
  add_io(dec);
  dec->add_option("--profile", opt.profile, "Block sizes k1,k2,... (default all ones)");
  dec->add_flag("--reconstruct", opt.reconstruct, "Report ||reconstruct - g||_F");
  CLI::App* smp = app.add_subcommand("sample", "Random parameters and density matrix");
  smp->add_option("n", opt.n, "Dimension");
  smp->add_option("--profile", opt.profile, "Block sizes k1,k2,...");
  smp->add_option("--seed", opt.seed, "RNG seed");
  smp->add_option("--out", opt.out_path, "Output JSON file (default stdout)");
  CLI::App* ver = app.add_subcommand("verify", "Run property suites");
  ver->add_option("--suite", opt.suite, "unitarity, roundtrip, sections, lie, jarlskog or all");
  ver->add_option("--out", opt.out_path, "Output JSON file (default stdout)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << "\n";
      return kSuccess;
    }
    report_error(Options{}, out, err, "USAGE", e.what());
    return kValidation;
  }

  try {
    Tolerances base = kDefaultTolerances;
    if (tol_spec) {
      try {
        base = parse_tolerances(*tol_spec);
      } catch (const Error& e) {
        throw CommandError("BAD_TOLERANCE", kValidation,
                           std::string("FLAGPARAM_TOL: ") + e.what());
      }
    }
    const Tolerances tol = effective_tolerances(opt, base);
    if (p2r->parsed()) return cmd_param_to_rho(opt, tol, in, out);
    if (r2p->parsed()) return cmd_rho_to_param(opt, tol, in, out);
    if (dec->parsed()) return cmd_decompose(opt, tol, in, out);
    if (smp->parsed()) return cmd_sample(opt, out);
    return cmd_verify(opt, out);
  } catch (const CommandError& e) {
    report_error(opt, out, err, e.code(), e.what());
    return e.exit_code();
  } catch (const io::SchemaError& e) {
    report_error(opt, out, err, e.code(), e.what());
    return kValidation;
  } catch (const Error& e) {
    const ErrorClass c = classify(e.code());
    report_error(opt, out, err, c.code, e.what());
    return c.exit_code;
  }
}

}  // namespace flagparam::cli

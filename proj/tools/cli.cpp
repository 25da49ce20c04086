#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>

#include "twopoint/errors.hpp"
#include "twopoint/io.hpp"
#include "twopoint/relative_spectrum.hpp"
#include "twopoint/spectra.hpp"
#include "twopoint/toeplitz.hpp"
#include "verify.hpp"

namespace twopoint::cli {
namespace {

using nlohmann::ordered_json;

// Bad flag values; mapped to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const std::string& what) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(v)) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(what + ": expected a finite number, got '" + text + "'");
  }
}

cplx parse_complex(const std::string& text, const std::string& what) {
  const auto comma = text.find(',');
  if (comma == std::string::npos || text.find(',', comma + 1) != std::string::npos) {
    throw UsageError(what + ": expected re,im, got '" + text + "'");
  }
  return {parse_real(text.substr(0, comma), what), parse_real(text.substr(comma + 1), what)};
}

ExtendedParameter parse_t(const std::string& text) {
  if (text == "inf") return ExtendedParameter::infinity();
  return ExtendedParameter::finite(parse_complex(text, "--t"));
}

ordered_json pair_json(cplx z) { return ordered_json::array({z.real(), z.imag()}); }

// Flags shared by the subcommands; each subcommand registers what it uses.
struct Config {
  std::string a = "0.5,0";
  std::string b = "-0.5,0";
  std::string t = "1,0";
  std::string symbol;
  std::string c;
  std::string w, z;
  std::string lower = "-1.5,-1.5", upper = "1.5,1.5";
  int steps_re = 41, steps_im = 41;
  int n = 0;
  int m = 0;
  int n_max = 16;
  double beta = 0.0;
  double lambda = 0.0;
  double zero_tol = IntervalOptions{}.zero_tolerance;
  double refine_tol = IntervalOptions{}.refinement_tolerance;
  std::string out;
  unsigned threads = 0;

  [[nodiscard]] DiskPair pair() const {
    const cplx pa = parse_complex(a, "--a");
    const cplx pb = parse_complex(b, "--b");
    try {
      return DiskPair(pa, pb);
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
  }
  [[nodiscard]] int grid(int fallback) const {
    const int mm = m > 0 ? m : fallback;
    if (!valid_sample_count(mm)) throw UsageError("--M must be a power of two >= 64");
    return mm;
  }
  [[nodiscard]] int grid_for_n() const {
    if (n < 2) throw UsageError("--N must be at least 2");
    return grid(default_quadrature_size(n));
  }
  [[nodiscard]] IntervalOptions interval_options() const {
    IntervalOptions o;
    o.zero_tolerance = zero_tol;
    o.refinement_tolerance = refine_tol;
    return o;
  }
};

// const:<c> | coszeta | blaschke | step:<hi>,<lo>,<c_re>,<c_im> | csv:<path>
BoundarySymbol make_symbol(const std::string& spec, const DiskPair& pair, int m,
                           bool m_explicit) {
  if (spec.empty()) throw UsageError("--symbol is required");
  if (spec == "coszeta") return cosine_symbol(m);
  if (spec == "blaschke") return blaschke_symbol(pair, m);
  if (spec.rfind("const:", 0) == 0) {
    const std::string v = spec.substr(6);
    const cplx value = v.find(',') == std::string::npos ? cplx(parse_real(v, "const"))
                                                        : parse_complex(v, "const");
    return constant_symbol(value, m);
  }
  if (spec.rfind("step:", 0) == 0) {
    std::vector<double> f;
    std::stringstream ss(spec.substr(5));
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(parse_real(item, "step"));
    if (f.size() != 4) throw UsageError("step: expected <hi>,<lo>,<c_re>,<c_im>");
    if (f[2] == 0.0 && f[3] == 0.0) throw UsageError("step: c must be nonzero");
    return step_symbol(pair, KernelDifferenceConstant({f[2], f[3]}), f[0], f[1], m);
  }
  if (spec.rfind("csv:", 0) == 0) {
    const std::string path = spec.substr(4);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open symbol file '" + path + "'");
    BoundarySymbol phi = [&] {
      try {
        return read_symbol_csv(in, spec);
      } catch (const InvalidArgument& e) {
        throw UsageError(e.what());
      }
    }();
    if (m_explicit && phi.size() != m) {
      throw UsageError("--M does not match the row count of '" + path + "'");
    }
    return phi;
  }
  throw UsageError("unknown symbol '" + spec + "'");
}

KernelDifferenceConstant make_c(const std::string& text) {
  if (text.empty()) throw UsageError("--c is required");
  const cplx c = parse_complex(text, "--c");
  if (c == cplx{}) throw UsageError("--c must be nonzero");
  return KernelDifferenceConstant(c);
}

// Writes to --out, or to the stream when no path was given.
void emit(const Config& cfg, std::ostream& out, const std::string& content) {
  if (cfg.out.empty()) {
    out << content;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + cfg.out + "'");
  f << content;
}

std::string sidecar_path(const std::string& out) {
  const auto dot = out.rfind('.');
  const auto slash = out.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return out + ".json";
  }
  return out.substr(0, dot) + ".json";
}

int cmd_kernel(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const ExtendedParameter t = parse_t(cfg.t);
  if (cfg.w.empty() || cfg.z.empty()) throw UsageError("kernel needs --w and --z");
  const cplx w = parse_complex(cfg.w, "--w");
  const cplx z = parse_complex(cfg.z, "--z");
  if (!(std::abs(w) < 1.0)) throw UsageError("--w must lie in the open disk");
  if (!(std::abs(z) <= 1.0 + kCircleSlack)) throw UsageError("--z must lie in the closed disk");
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["a"] = pair_json(pair.a());
  j["b"] = pair_json(pair.b());
  j["t"] = t.is_infinite() ? ordered_json("inf") : pair_json(t.value());
  j["w"] = pair_json(w);
  j["z"] = pair_json(z);
  j["value"] = pair_json(eval_constrained_kernel(pair, t, w, z));
  emit(cfg, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_toeplitz(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const ExtendedParameter t = parse_t(cfg.t);
  const int m = cfg.grid_for_n();
  const BoundarySymbol phi = make_symbol(cfg.symbol, pair, m, cfg.m > 0);
  if (phi.size() < 8 * cfg.n) throw UsageError("--M must be at least 8 N");
  const ToeplitzTruncation a = truncate(pair, t, phi, cfg.n);
  std::ostringstream csv;
  write_truncation_csv(csv, a.matrix);
  emit(cfg, out, csv.str());
  if (!cfg.out.empty()) {
    std::ofstream meta(sidecar_path(cfg.out), std::ios::binary);
    if (!meta) throw UsageError("cannot write metadata next to '" + cfg.out + "'");
    meta << truncation_meta_json(a.meta);
  }
  return kExitOk;
}

int cmd_berezin(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const ExtendedParameter t = parse_t(cfg.t);
  if (t.is_infinite() || t.is_zero()) throw UsageError("berezin needs finite nonzero --t");
  const BoundarySymbol phi = make_symbol(cfg.symbol, pair, cfg.grid(1024), cfg.m > 0);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["a"] = pair_json(pair.a());
  j["b"] = pair_json(pair.b());
  j["t"] = pair_json(t.value());
  j["symbol"] = phi.description();
  j["M"] = phi.size();
  j["value"] = pair_json(berezin_at_a(pair, t, phi));
  emit(cfg, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_portrait(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const ExtendedParameter t = parse_t(cfg.t);
  const int m = cfg.grid_for_n();
  const BoundarySymbol phi = make_symbol(cfg.symbol, pair, m, cfg.m > 0);
  if (phi.size() < 8 * cfg.n) throw UsageError("--M must be at least 8 N");
  if (cfg.steps_re < 2 || cfg.steps_im < 2) throw UsageError("--steps-re/--steps-im must be >= 2");
  const ToeplitzTruncation a = truncate(pair, t, phi, cfg.n);
  const SpectralPortrait p =
      portrait(a.matrix, parse_complex(cfg.lower, "--lower"), parse_complex(cfg.upper, "--upper"),
               cfg.steps_re, cfg.steps_im, cfg.threads);
  std::ostringstream csv;
  write_portrait_csv(csv, p);
  emit(cfg, out, csv.str());
  return kExitOk;
}

int cmd_predict(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const BoundarySymbol phi = make_symbol(cfg.symbol, pair, cfg.grid(4096), cfg.m > 0);
  if (!phi.real_valued()) throw UsageError("relspec needs a real-valued symbol");
  const IntervalPrediction p =
      interval_predict(pair, make_c(cfg.c), phi, cfg.beta, cfg.interval_options());
  emit(cfg, out, to_json(p));
  return kExitOk;
}

int cmd_eigen(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const BoundarySymbol phi = make_symbol(cfg.symbol, pair, cfg.grid_for_n(), cfg.m > 0);
  if (!phi.real_valued()) throw UsageError("relspec needs a real-valued symbol");
  if (phi.size() < 8 * cfg.n) throw UsageError("--M must be at least 8 N");
  const OuterEigenpair e = construct_eigenpair(pair, make_c(cfg.c), phi, cfg.beta, cfg.lambda,
                                               cfg.n, cfg.interval_options());
  emit(cfg, out, to_json(e));
  return kExitOk;
}

int cmd_annihilator(const Config& cfg, std::ostream& out) {
  const DiskPair pair = cfg.pair();
  const BoundarySymbol f = make_symbol(cfg.symbol, pair, cfg.grid(1024), cfg.m > 0);
  if (cfg.n_max < 1 || 2 * (cfg.n_max + 2) >= f.size()) {
    throw UsageError("--n-max must be >= 1 and small against M");
  }
  const AnnihilatorFit fit = annihilator_fit(f, pair);
  const AnnihilatorReport rep = annihilator_verify(f, pair, cfg.n_max);
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["a"] = pair_json(pair.a());
  j["b"] = pair_json(pair.b());
  j["symbol"] = f.description();
  j["M"] = f.size();
  j["d1"] = pair_json(fit.d1);
  j["d2"] = pair_json(fit.d2);
  j["fit_residual"] = fit.residual;
  j["witness"] = rep.witness;
  j["conj_witness"] = rep.conj_witness;
  j["mean"] = rep.mean;
  j["recurrence_defect"] = rep.recurrence_defect();
  emit(cfg, out, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& out, std::ostream& err) {
  const std::vector<Check> checks = invariant_suite(cfg.threads);
  emit(cfg, out, report_json(checks));
  bool ok = true;
  for (const auto& c : checks) {
    if (!c.pass) {
      ok = false;
      err << "verify: check '" << c.name << "' failed: measured " << c.measured << " > bound "
          << c.bound << "\n";
    }
  }
  return ok ? kExitOk : kExitFailure;
}

void add_pair(CLI::App* app, Config& cfg) {
  app->add_option("--a", cfg.a, "constraint point a as re,im")->capture_default_str();
  app->add_option("--b", cfg.b, "constraint point b as re,im")->capture_default_str();
}
void add_t(CLI::App* app, Config& cfg) {
  app->add_option("--t", cfg.t, "parameter t as re,im or inf")->capture_default_str();
}
void add_symbol(CLI::App* app, Config& cfg) {
  app->add_option("--symbol", cfg.symbol,
                  "const:<c> | coszeta | blaschke | step:<hi>,<lo>,<c_re>,<c_im> | csv:<path>")
      ->required();
  app->add_option("--M", cfg.m, "quadrature nodes (power of two >= 64)");
}
void add_n(CLI::App* app, Config& cfg) {
  app->add_option("--N", cfg.n, "truncation size")->required();
}
void add_out(CLI::App* app, Config& cfg) {
  app->add_option("--out", cfg.out, "output file (default: standard output)");
}
void add_tolerances(CLI::App* app, Config& cfg) {
  app->add_option("--zero-tol", cfg.zero_tol, "|m|, |M| below this count as zero")
      ->capture_default_str();
  app->add_option("--refine-tol", cfg.refine_tol, "allowed M vs M/2 change of integrals")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toeplitz operators on two-point constrained Hardy spaces", "twopoint"};
  app.require_subcommand(1);
  Config cfg;

  auto* kernel = app.add_subcommand("kernel", "evaluate the constrained kernel k^t_w(z)");
  add_pair(kernel, cfg);
  add_t(kernel, cfg);
  kernel->add_option("--w", cfg.w, "kernel point w as re,im")->required();
  kernel->add_option("--z", cfg.z, "evaluation point z as re,im")->required();
  add_out(kernel, cfg);

  auto* toeplitz = app.add_subcommand("toeplitz", "N x N truncation as CSV plus JSON sidecar");
  add_pair(toeplitz, cfg);
  add_t(toeplitz, cfg);
  add_symbol(toeplitz, cfg);
  add_n(toeplitz, cfg);
  add_out(toeplitz, cfg);

  auto* berezin = app.add_subcommand("berezin", "Berezin transform at a");
  add_pair(berezin, cfg);
  add_t(berezin, cfg);
  add_symbol(berezin, cfg);
  add_out(berezin, cfg);

  auto* portrait_cmd = app.add_subcommand("portrait", "sigma_min(A_N - lambda) on a lattice");
  add_pair(portrait_cmd, cfg);
  add_t(portrait_cmd, cfg);
  add_symbol(portrait_cmd, cfg);
  add_n(portrait_cmd, cfg);
  portrait_cmd->add_option("--lower", cfg.lower, "lattice corner re,im")->capture_default_str();
  portrait_cmd->add_option("--upper", cfg.upper, "opposite corner re,im")->capture_default_str();
  portrait_cmd->add_option("--steps-re", cfg.steps_re)->capture_default_str();
  portrait_cmd->add_option("--steps-im", cfg.steps_im)->capture_default_str();
  portrait_cmd->add_option("--threads", cfg.threads, "worker threads (0: all)");
  add_out(portrait_cmd, cfg);

  auto* relspec = app.add_subcommand("relspec", "relative eigenvalues of real symbols");
  relspec->require_subcommand(1);
  auto* predict = relspec->add_subcommand("predict", "predicted eigenvalue interval");
  add_pair(predict, cfg);
  add_symbol(predict, cfg);
  predict->add_option("--c", cfg.c, "constant c as re,im")->required();
  predict->add_option("--beta", cfg.beta)->capture_default_str();
  add_tolerances(predict, cfg);
  add_out(predict, cfg);
  auto* eigen = relspec->add_subcommand("eigen", "outer eigenfunction for beta + lambda");
  add_pair(eigen, cfg);
  add_symbol(eigen, cfg);
  add_n(eigen, cfg);
  eigen->add_option("--c", cfg.c, "constant c as re,im")->required();
  eigen->add_option("--beta", cfg.beta)->capture_default_str();
  eigen->add_option("--lambda", cfg.lambda)->capture_default_str();
  add_tolerances(eigen, cfg);
  add_out(eigen, cfg);

  auto* annihilator = app.add_subcommand("annihilator", "fit and test d1 u + conj(d2 u)");
  add_pair(annihilator, cfg);
  add_symbol(annihilator, cfg);
  annihilator->add_option("--n-max", cfg.n_max, "largest witness index")->capture_default_str();
  add_out(annihilator, cfg);

  auto* verify = app.add_subcommand("verify", "run the invariant suite");
  verify->add_option("--threads", cfg.threads, "worker threads (0: all)");
  add_out(verify, cfg);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "twopoint: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (kernel->parsed()) return cmd_kernel(cfg, out);
    if (toeplitz->parsed()) return cmd_toeplitz(cfg, out);
    if (berezin->parsed()) return cmd_berezin(cfg, out);
    if (portrait_cmd->parsed()) return cmd_portrait(cfg, out);
    if (predict->parsed()) return cmd_predict(cfg, out);
    if (eigen->parsed()) return cmd_eigen(cfg, out);
    if (annihilator->parsed()) return cmd_annihilator(cfg, out);
    if (verify->parsed()) return cmd_verify(cfg, out, err);
  } catch (const UsageError& e) {
    err << "twopoint: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "twopoint: invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DegenerateParameter& e) {
    err << "twopoint: check 'degenerate-parameter' failed: " << e.what() << "\n";
  } catch (const HypothesisFailed& e) {
    err << "twopoint: check 'hypothesis m < 0 < M' failed: " << e.what() << "\n";
  } catch (const SignFailure& e) {
    err << "twopoint: check 'sign of psi' failed: " << e.what() << "\n";
  } catch (const IntegrabilityFailure& e) {
    err << "twopoint: check 'integrability' failed: " << e.what() << "\n";
  } catch (const NumericalBreakdown& e) {
    err << "twopoint: check 'numerical breakdown' failed: " << e.what() << "\n";
  } catch (const std::exception& e) {
    err << "twopoint: error: " << e.what() << "\n";
  }
  return kExitFailure;
}

}  // namespace twopoint::cli

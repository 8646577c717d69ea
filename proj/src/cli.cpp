#include "fraclap/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "fraclap/allen_cahn.hpp"
#include "fraclap/dominance.hpp"
#include "fraclap/kernel.hpp"
#include "fraclap/poisson.hpp"
#include "fraclap/toeplitz.hpp"

namespace fraclap::cli {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

const char* kToolLine = "# fraclap 1.0.0";

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Flat key=value defaults file for --config. '#' lines are comments.
std::vector<std::pair<std::string, std::string>> read_config_file(
    const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file: " + path);
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::size_t eq = t.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::ostringstream oss;
      oss << path << ":" << lineno << ": expected key=value";
      throw std::invalid_argument(oss.str());
    }
    kv.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
  }
  return kv;
}

std::vector<double> parse_number_list(const std::string& text,
                                      const char* what) {
  std::vector<double> out;
  std::istringstream iss(text);
  std::string tok;
  while (std::getline(iss, tok, ',')) {
    tok = trim(tok);
    if (tok.empty())
      throw std::invalid_argument(std::string(what) + ": empty entry");
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(tok, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != tok.size())
      throw std::invalid_argument(std::string(what) + ": bad number '" + tok +
                                  "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> doubling_sizes(int lo, int hi, const char* what) {
  if (lo < 4 || hi < lo)
    throw std::invalid_argument(std::string(what) +
                                ": need 4 <= Nmin <= Nmax");
  std::vector<int> v;
  for (long n = lo; n <= hi; n *= 2) v.push_back(static_cast<int>(n));
  return v;
}

// Writes to --out when given, stdout otherwise.
struct Output {
  std::ofstream file;
  std::ostream* os = &std::cout;
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
      os = &file;
    }
  }
  std::ostream& stream() { return *os; }
};

std::vector<double> interior_grid(double a, double b, int N) {
  double h = (b - a) / N;
  std::vector<double> x(static_cast<std::size_t>(N) - 1);
  for (std::size_t j = 0; j < x.size(); ++j) x[j] = a + (j + 1) * h;
  return x;
}

std::vector<double> seeded_uniform01(std::uint64_t seed, std::size_t n) {
  std::vector<double> v(n);
  std::uint64_t state = seed;
  for (double& u : v) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    z ^= z >> 31;
    u = static_cast<double>(z >> 11) * 0x1.0p-53;
  }
  return v;
}

const char* regime_name(DominanceRegime r) {
  switch (r) {
    case DominanceRegime::strict_dd:
      return "strict_dd";
    case DominanceRegime::conditional_dd:
      return "conditional_dd";
    default:
      return "interior_non_dd";
  }
}

// ---------------------------------------------------------------------------
// Subcommand option bags

struct MatrixOpts {
  double s = 0.0;
  int N = 0;
  double a = -1.0, b = 1.0;
  std::string out, config;
};

struct DominanceOpts {
  double s = 0.0;
  int N = 0;
  double a = -1.0, b = 1.0;
  std::string out, config;
};

struct SpectrumOpts {
  double s = 0.0;
  int N = 1024;
  std::string out, config;
};

struct PoissonOpts {
  double s = 0.0;
  int n = 1;
  int Nmin = 64, Nmax = 1024;
  std::string out, config;
};

struct AcRunOpts {
  double s = 0.0;
  double epsilon = 0.1;
  double tau = 0.01;
  double T = 1.0;
  double a = -1.0, b = 1.0;
  int N = 64;
  std::string scheme = "si";
  std::string ic = "gauss";
  std::uint64_t seed = 1;
  std::string snap;
  std::string out = "ac";
  std::string config;
};

struct AcConvergeOpts {
  std::string mode;
  std::string scheme;
  double s = 0.8;
  double epsilon = 0.1;
  double lambda = 10.0;
  double T = 1.6;
  double tau = 1e-4;  // spatial mode time step
  int Nmin = 64, Nmax = 1024;
  int N = 1024;  // temporal mode mesh
  std::string taus = "0.2,0.1,0.05,0.025,0.0125";
  double tau_ref = 0.00078125;
  std::string out, config;
};

// ---------------------------------------------------------------------------
// Subcommand bodies

void run_matrix(const MatrixOpts& o) {
  KernelParams kp;
  kp.s = o.s;
  kp.a = o.a;
  kp.b = o.b;
  kp.N = o.N;
  ToeplitzSymbol sym = stiffness_first_row(kp);
  Output out(o.out);
  std::ostream& os = out.stream();
  os << kToolLine << "\n";
  os << "# matrix s=" << format_g17(o.s) << " N=" << o.N
     << " a=" << format_g17(o.a) << " b=" << format_g17(o.b)
     << " h=" << format_g17(kp.h()) << "\n";
  os << "p,entry\n";
  for (std::size_t p = 0; p < sym.size(); ++p)
    os << p << "," << format_g17(sym.entry(p)) << "\n";
}

void run_dominance(const DominanceOpts& o) {
  KernelParams kp;
  kp.s = o.s;
  kp.a = o.a;
  kp.b = o.b;
  kp.N = o.N;
  DominanceReport rep = dominance_report(kp);
  Output out(o.out);
  std::ostream& os = out.stream();
  os << "{\n";
  os << "  \"s\": " << format_g17(rep.s) << ",\n";
  os << "  \"N\": " << rep.N << ",\n";
  os << "  \"regime\": \"" << regime_name(rep.regime) << "\",\n";
  os << "  \"min_deficit\": " << format_g17(rep.min_deficit) << ",\n";
  os << "  \"argmin_k\": " << rep.argmin_k << ",\n";
  os << "  \"n0_formula\": "
     << (rep.n0_formula >= 0 ? std::to_string(rep.n0_formula) : "null")
     << ",\n";
  os << "  \"n0_exact\": "
     << (rep.n0_exact >= 0 ? std::to_string(rep.n0_exact) : "null") << "\n";
  os << "}\n";
}

void run_spectrum(const SpectrumOpts& o) {
  if (o.N < 64)
    throw std::invalid_argument("spectrum: --N must be at least 64");
  std::vector<int> sizes = doubling_sizes(64, o.N, "spectrum");
  SpectrumReport rep = condition_scaling(o.s, sizes);
  Output out(o.out);
  std::ostream& os = out.stream();
  os << kToolLine << "\n";
  os << "# spectrum s=" << format_g17(o.s) << " mesh=(0,1)\n";
  os << "# fit e_min=" << format_g17(rep.e_min)
     << " e_max=" << format_g17(rep.e_max)
     << " e_cond=" << format_g17(rep.e_cond) << "\n";
  os << "N,lambda_min,lambda_max,cond\n";
  for (std::size_t i = 0; i < rep.sizes.size(); ++i)
    os << rep.sizes[i] << "," << format_g17(rep.lambda_min[i]) << ","
       << format_g17(rep.lambda_max[i]) << "," << format_g17(rep.cond[i])
       << "\n";
}

void run_poisson(const PoissonOpts& o) {
  std::vector<int> Ns = doubling_sizes(o.Nmin, o.Nmax, "poisson");
  ConvergenceTable tab = convergence_sweep(o.s, o.n, Ns);
  Output out(o.out);
  std::ostream& os = out.stream();
  os << kToolLine << "\n";
  os << "# poisson s=" << format_g17(o.s) << " n=" << o.n << "\n";
  os << "N,h,max_error,rate\n";
  for (std::size_t i = 0; i < Ns.size(); ++i)
    os << Ns[i] << "," << format_g17(tab.h[i]) << ","
       << format_g17(tab.max_error[i]) << "," << format_g17(tab.rate[i])
       << "\n";
}

void write_profile(const std::string& path, double t,
                   const std::vector<double>& x,
                   const std::vector<double>& U) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << kToolLine << "\n";
  f << "# t=" << format_g17(t) << "\n";
  f << "x,u\n";
  for (std::size_t j = 0; j < x.size(); ++j)
    f << format_g17(x[j]) << "," << format_g17(U[j]) << "\n";
}

void run_ac_run(const AcRunOpts& o) {
  ACConfig cfg;
  cfg.s = o.s;
  cfg.epsilon = o.epsilon;
  cfg.tau = o.tau;
  cfg.T = o.T;
  cfg.a = o.a;
  cfg.b = o.b;
  cfg.N = o.N;
  cfg.scheme = o.scheme == "cn" ? TimeScheme::crank_nicolson
                                : TimeScheme::semi_implicit;

  if (o.ic == "gauss") {
    cfg.initial_condition = [](double x) { return std::exp(-x * x); };
  } else if (o.ic == "phase") {
    cfg.initial_condition = [](double x) { return 0.8 * std::exp(-x * x); };
  } else if (o.ic == "plateau") {
    cfg.initial_condition = [](double x) {
      return std::abs(x) < 2.0 ? 1.0 : 0.0;
    };
  } else {  // random: one uniform [0,1) draw per interior node
    if (o.N < 2) throw std::invalid_argument("ac-run: N must be >= 4");
    std::vector<double> vals =
        seeded_uniform01(o.seed, static_cast<std::size_t>(o.N) - 1);
    double a = o.a, h = (o.b - o.a) / o.N;
    cfg.initial_condition = [vals, a, h](double x) {
      long j = std::lround((x - a) / h) - 1;
      j = std::max(0L, std::min(j, static_cast<long>(vals.size()) - 1));
      return vals[static_cast<std::size_t>(j)];
    };
  }

  std::vector<double> snaps = parse_number_list(o.snap, "ac-run --snap");
  std::vector<double> x = interior_grid(o.a, o.b, o.N);
  int snap_count = 0;
  auto on_snapshot = [&](double t, const std::vector<double>& U) {
    std::string path =
        o.out + "_snap" + std::to_string(snap_count++) + ".csv";
    write_profile(path, t, x, U);
  };

  ACRunResult res = run_allen_cahn(cfg, snaps, on_snapshot);

  {
    std::string path = o.out + "_trace.csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << kToolLine << "\n";
    f << "# ac-run s=" << format_g17(o.s) << " epsilon=" << format_g17(o.epsilon)
      << " tau=" << format_g17(o.tau) << " T=" << format_g17(o.T)
      << " a=" << format_g17(o.a) << " b=" << format_g17(o.b) << " N=" << o.N
      << " scheme=" << o.scheme << " ic=" << o.ic << "\n";
    if (o.ic == "random") f << "# seed=" << o.seed << "\n";
    f << "t,min_u,max_u,energy\n";
    for (const MonitorRow& r : res.trace)
      f << format_g17(r.t) << "," << format_g17(r.min_u) << ","
        << format_g17(r.max_u) << "," << format_g17(r.energy) << "\n";
  }
  write_profile(o.out + "_final.csv", res.final_state.t, x,
                res.final_state.U);

  const MonitorRow& last = res.trace.back();
  std::cout << "wrote " << o.out << "_trace.csv, " << o.out << "_final.csv";
  if (snap_count > 0) std::cout << ", " << snap_count << " snapshot(s)";
  std::cout << "\n";
  std::cout << "final t=" << format_g17(last.t)
            << " min=" << format_g17(last.min_u)
            << " max=" << format_g17(last.max_u)
            << " energy=" << format_g17(last.energy) << " guarantees="
            << (res.guarantees_active ? "on" : "off") << "\n";
}

void run_ac_converge(const AcConvergeOpts& o) {
  TimeScheme scheme = o.scheme == "cn" ? TimeScheme::crank_nicolson
                                       : TimeScheme::semi_implicit;
  double s = o.s, eps = o.epsilon, lam = o.lambda, T = o.T;

  auto make_cfg = [&](TimeScheme sch, int N, double tau) {
    ACConfig c;
    c.s = s;
    c.epsilon = eps;
    c.tau = tau;
    c.T = T;
    c.a = -1.0;
    c.b = 1.0;
    c.N = N;
    c.scheme = sch;
    c.initial_condition = [lam](double x) {
      return manufactured_solution(lam, x, 0.0);
    };
    c.source = [s, eps, lam](double x, double t) {
      return manufactured_source(s, eps, lam, x, t);
    };
    return c;
  };
  auto final_U = [&](const ACConfig& c) {
    return run_allen_cahn(c).final_state.U;
  };
  auto max_err = [](const std::vector<double>& U,
                    const std::vector<double>& V) {
    double m = 0.0;
    for (std::size_t j = 0; j < U.size(); ++j)
      m = std::max(m, std::abs(U[j] - V[j]));
    return m;
  };

  Output out(o.out);
  std::ostream& os = out.stream();
  os << kToolLine << "\n";

  if (o.mode == "spatial") {
    std::vector<int> Ns = doubling_sizes(o.Nmin, o.Nmax, "ac-converge");
    os << "# ac-converge mode=spatial scheme=" << o.scheme
       << " s=" << format_g17(s) << " epsilon=" << format_g17(eps)
       << " lambda=" << format_g17(lam) << " T=" << format_g17(T)
       << " tau=" << format_g17(o.tau) << "\n";
    os << "N,h,error,rate\n";
    double prev_h = 0.0, prev_e = 0.0;
    for (std::size_t i = 0; i < Ns.size(); ++i) {
      int N = Ns[i];
      double h = 2.0 / N;
      std::vector<double> U = final_U(make_cfg(scheme, N, o.tau));
      std::vector<double> x = interior_grid(-1.0, 1.0, N);
      std::vector<double> ex(x.size());
      for (std::size_t j = 0; j < x.size(); ++j)
        ex[j] = manufactured_solution(lam, x[j], T);
      double e = max_err(U, ex);
      double rate = i == 0 ? std::nan("")
                           : std::log(prev_e / e) / std::log(prev_h / h);
      os << N << "," << format_g17(h) << "," << format_g17(e) << ","
         << format_g17(rate) << "\n";
      prev_h = h;
      prev_e = e;
    }
    return;
  }

  // temporal: errors against both the closed form and a fine-step run on the
  // same mesh. The second column removes the fixed spatial error, which
  // otherwise floors the small-tau rows; the reference is Crank-Nicolson at
  // tau_ref regardless of --scheme so its own time error is negligible.
  std::vector<double> taus = parse_number_list(o.taus, "ac-converge --taus");
  if (taus.empty())
    throw std::invalid_argument("ac-converge: --taus list is empty");
  for (double t : taus)
    if (!(t > 0.0))
      throw std::invalid_argument("ac-converge: taus must be > 0");
  if (!(o.tau_ref > 0.0))
    throw std::invalid_argument("ac-converge: --tau-ref must be > 0");

  std::vector<double> x = interior_grid(-1.0, 1.0, o.N);
  std::vector<double> ex(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    ex[j] = manufactured_solution(lam, x[j], T);
  std::vector<double> Uref =
      final_U(make_cfg(TimeScheme::crank_nicolson, o.N, o.tau_ref));

  os << "# ac-converge mode=temporal scheme=" << o.scheme
     << " s=" << format_g17(s) << " epsilon=" << format_g17(eps)
     << " lambda=" << format_g17(lam) << " T=" << format_g17(T)
     << " N=" << o.N << " tau_ref=" << format_g17(o.tau_ref) << "\n";
  os << "# err_exact compares with the closed-form solution; err_ref "
        "compares with the tau_ref run on the same mesh\n";
  os << "tau,err_exact,err_ref,rate\n";
  double prev_tau = 0.0, prev_e = 0.0;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    std::vector<double> U = final_U(make_cfg(scheme, o.N, taus[i]));
    double e_exact = max_err(U, ex);
    double e_ref = max_err(U, Uref);
    double rate = i == 0 ? std::nan("")
                         : std::log(prev_e / e_ref) /
                               std::log(prev_tau / taus[i]);
    os << format_g17(taus[i]) << "," << format_g17(e_exact) << ","
       << format_g17(e_ref) << "," << format_g17(rate) << "\n";
    prev_tau = taus[i];
    prev_e = e_ref;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"piecewise-linear FEM toolkit for the 1D integral fractional "
               "Laplacian: exact Toeplitz stiffness rows, diagonal dominance "
               "classification, spectra, and maximum-principle-preserving "
               "solvers"};
  app.require_subcommand(0, 1);

  auto add_sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->option_defaults()->multi_option_policy(
        CLI::MultiOptionPolicy::TakeLast);
    return sub;
  };

  MatrixOpts mx;
  CLI::App* sub_matrix =
      add_sub("matrix", "print the first row of the stiffness matrix as CSV");
  sub_matrix->add_option("--s", mx.s, "fractional order in (0, 1.5)")
      ->required();
  sub_matrix->add_option("--N", mx.N, "mesh elements")->required();
  sub_matrix->add_option("--a", mx.a, "left endpoint");
  sub_matrix->add_option("--b", mx.b, "right endpoint");
  sub_matrix->add_option("--out", mx.out, "output file (default stdout)");
  sub_matrix->add_option("--config", mx.config, "key=value defaults file");

  DominanceOpts dm;
  CLI::App* sub_dom = add_sub(
      "dominance", "diagonal dominance report for one (s, N) pair as JSON");
  sub_dom->add_option("--s", dm.s, "fractional order in (0, 1.5)")
      ->required();
  sub_dom->add_option("--N", dm.N, "mesh elements")->required();
  sub_dom->add_option("--a", dm.a, "left endpoint");
  sub_dom->add_option("--b", dm.b, "right endpoint");
  sub_dom->add_option("--out", dm.out, "output file (default stdout)");
  sub_dom->add_option("--config", dm.config, "key=value defaults file");

  SpectrumOpts sp;
  CLI::App* sub_spec = add_sub(
      "spectrum",
      "extreme eigenvalues and condition numbers on meshes 64,128,...,N");
  sub_spec->add_option("--s", sp.s, "fractional order in (0, 1.5)")
      ->required();
  sub_spec->add_option("--N", sp.N, "largest mesh size (power of 2, >= 64)");
  sub_spec->add_option("--out", sp.out, "output file (default stdout)");
  sub_spec->add_option("--config", sp.config, "key=value defaults file");

  PoissonOpts po;
  CLI::App* sub_poi = add_sub(
      "poisson",
      "convergence sweep for the fractional Poisson benchmark on (-1,1)");
  sub_poi->add_option("--s", po.s, "fractional order in (0, 1.5)")
      ->required();
  sub_poi->add_option("--n", po.n, "benchmark family index (>= 1)");
  sub_poi->add_option("--Nmin", po.Nmin, "smallest mesh size");
  sub_poi->add_option("--Nmax", po.Nmax, "largest mesh size");
  sub_poi->add_option("--out", po.out, "output file (default stdout)");
  sub_poi->add_option("--config", po.config, "key=value defaults file");

  AcRunOpts ar;
  CLI::App* sub_run = add_sub(
      "ac-run", "time-march the fractional Allen-Cahn equation and write "
                "trace/profile CSV files");
  sub_run->add_option("--s", ar.s, "fractional order in (0, 1.5)")
      ->required();
  sub_run->add_option("--epsilon", ar.epsilon, "interface parameter");
  sub_run->add_option("--tau", ar.tau, "time step");
  sub_run->add_option("--T", ar.T, "final time");
  sub_run->add_option("--a", ar.a, "left endpoint");
  sub_run->add_option("--b", ar.b, "right endpoint");
  sub_run->add_option("--N", ar.N, "mesh elements");
  sub_run->add_option("--scheme", ar.scheme, "time scheme")
      ->check(CLI::IsMember({"si", "cn"}));
  sub_run
      ->add_option("--ic", ar.ic,
                   "initial data: gauss = exp(-x^2), phase = 0.8 exp(-x^2), "
                   "plateau = indicator of (-2,2), random = seeded uniform")
      ->check(CLI::IsMember({"gauss", "phase", "plateau", "random"}));
  sub_run->add_option("--seed", ar.seed, "seed for --ic random");
  sub_run->add_option("--snap", ar.snap,
                      "comma-separated times at which to write profiles");
  sub_run->add_option("--out", ar.out, "output file prefix");
  sub_run->add_option("--config", ar.config, "key=value defaults file");

  AcConvergeOpts ac;
  CLI::App* sub_conv = add_sub(
      "ac-converge",
      "space/time convergence study against a manufactured solution");
  sub_conv->add_option("--mode", ac.mode, "spatial or temporal")
      ->required()
      ->check(CLI::IsMember({"spatial", "temporal"}));
  sub_conv->add_option("--scheme", ac.scheme, "time scheme")
      ->required()
      ->check(CLI::IsMember({"si", "cn"}));
  sub_conv->add_option("--s", ac.s, "fractional order");
  sub_conv->add_option("--epsilon", ac.epsilon, "interface parameter");
  sub_conv->add_option("--lambda", ac.lambda, "Gaussian width parameter");
  sub_conv->add_option("--T", ac.T, "final time");
  sub_conv->add_option("--tau", ac.tau, "time step for the spatial sweep");
  sub_conv->add_option("--Nmin", ac.Nmin, "smallest mesh (spatial mode)");
  sub_conv->add_option("--Nmax", ac.Nmax, "largest mesh (spatial mode)");
  sub_conv->add_option("--N", ac.N, "mesh elements (temporal mode)");
  sub_conv->add_option("--taus", ac.taus,
                       "comma-separated steps for the temporal sweep");
  sub_conv->add_option("--tau-ref", ac.tau_ref,
                       "reference step for the temporal sweep");
  sub_conv->add_option("--out", ac.out, "output file (default stdout)");
  sub_conv->add_option("--config", ac.config, "key=value defaults file");

  try {
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<std::size_t>(argc > 1 ? argc - 1 : 0));
    for (int i = 1; i < argc; ++i) tokens.emplace_back(argv[i]);

    // --config defaults are injected as tokens right after the subcommand
    // name, so explicit flags (parsed later, TakeLast) win over the file.
    std::string config_path;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (tokens[i] == "--config" && i + 1 < tokens.size())
        config_path = tokens[i + 1];
      else if (tokens[i].rfind("--config=", 0) == 0)
        config_path = tokens[i].substr(9);
    }
    if (!config_path.empty()) {
      if (tokens.empty() || app.get_subcommand_no_throw(tokens[0]) == nullptr)
        throw std::invalid_argument(
            "--config requires the subcommand as the first argument");
      CLI::App* sub = app.get_subcommand(tokens[0]);
      auto kv = read_config_file(config_path);
      std::vector<std::string> injected;
      for (const auto& [key, value] : kv) {
        if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr)
          throw std::invalid_argument("config key '" + key +
                                      "' is not an option of subcommand '" +
                                      tokens[0] + "'");
        injected.push_back("--" + key + "=" + value);
      }
      tokens.insert(tokens.begin() + 1, injected.begin(), injected.end());
    }

    std::reverse(tokens.begin(), tokens.end());
    app.parse(tokens);

    if (app.got_subcommand(sub_matrix))
      run_matrix(mx);
    else if (app.got_subcommand(sub_dom))
      run_dominance(dm);
    else if (app.got_subcommand(sub_spec))
      run_spectrum(sp);
    else if (app.got_subcommand(sub_poi))
      run_poisson(po);
    else if (app.got_subcommand(sub_run))
      run_ac_run(ar);
    else if (app.got_subcommand(sub_conv))
      run_ac_converge(ac);
    else {
      std::cerr << app.help();
      return 1;
    }
    return 0;
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace fraclap::cli

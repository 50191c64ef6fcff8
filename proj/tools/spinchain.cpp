// Command-line front end for the spinchain library. Eight subcommands:
//
//   basis        bit table, weights, and level degeneracies
//   build        emit a Hamiltonian matrix in the export text format
//   spectrum     sorted eigenvalues of the dense build
//   gs           exact vs series ground-state energy
//   perturb      energy corrections e1..e4, closed form vs numeric sums
//   observables  magnetizations and nearest-neighbour correlation
//   coeffs       the exact series coefficient table as fractions
//   validate     run the full acceptance suite
//
// Output goes to stdout or --out, formatted as json (default for most
// commands), csv, or text. All floating-point output uses %.17g so that
// identical inputs give byte-identical files.

#include <bitset>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "spinchain/chain.hpp"
#include "spinchain/fields.hpp"
#include "spinchain/hamiltonian.hpp"
#include "spinchain/io.hpp"
#include "spinchain/observables.hpp"
#include "spinchain/oracle.hpp"
#include "spinchain/perturbation.hpp"
#include "spinchain/validation.hpp"

namespace {

using namespace spinchain;

constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

// SPINCHAIN_MAX_N may lower the dense-matrix cap (for constrained
// machines); it can never raise it.
int dense_cap_from_env() {
  int cap = kDenseSiteCap;
  if (const char* s = std::getenv("SPINCHAIN_MAX_N")) {
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end != s && *end == '\0' && v >= ChainSpec::kMinSites && v < cap)
      cap = static_cast<int>(v);
  }
  return cap;
}

struct Options {
  int n = 0;
  double hx = 0.0, hy = 0.0, hz = 0.0, j = 0.0;
  std::string basis_tag = "eps";
  int order = 4;
  std::string format;  // per-command default applied after parsing
  std::string out;
  std::uint64_t seed = 7;
  bool fields_given = false;
};

// Minimal ordered JSON writer. Every emitter below owns its key order,
// which keeps the output stable byte for byte.
class JsonObject {
 public:
  void number(const std::string& key, double v) { entry(key, format_g17(v)); }
  void integer(const std::string& key, long long v) {
    entry(key, std::to_string(v));
  }
  void text(const std::string& key, const std::string& v) {
    entry(key, "\"" + v + "\"");
  }
  // v must already be valid JSON (array or object built by the caller)
  void raw(const std::string& key, const std::string& v) { entry(key, v); }
  std::string str() const { return "{\n" + body_ + "\n}\n"; }

 private:
  void entry(const std::string& key, const std::string& value) {
    if (!body_.empty()) body_ += ",\n";
    body_ += "  \"" + key + "\": " + value;
  }
  std::string body_;
};

void add_shared_keys(JsonObject& obj, int n,
                     const std::optional<FieldParams>& p) {
  obj.integer("n", n);
  obj.number("hx", p ? p->hx() : 0.0);
  obj.number("hy", p ? p->hy() : 0.0);
  obj.number("hz", p ? p->hz() : 0.0);
  obj.number("j", p ? p->j() : 0.0);
  obj.number("h", p ? p->h() : 0.0);
  obj.number("f", p ? p->f() : 0.0);
  obj.number("g", p ? p->g() : 0.0);
}

std::string csv_fields(const std::optional<FieldParams>& p) {
  const auto g = [](double v) { return format_g17(v); };
  if (!p) return "0,0,0,0,0,0,0";
  return g(p->hx()) + "," + g(p->hy()) + "," + g(p->hz()) + "," +
         g(p->j()) + "," + g(p->h()) + "," + g(p->f()) + "," + g(p->g());
}

int with_output(const std::string& path,
                const std::function<int(std::ostream&)>& emit) {
  if (path.empty()) return emit(std::cout);
  std::ofstream os(path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file '" << path << "'\n";
    return kExitUsage;
  }
  return emit(os);
}

std::string bit_string(SpinIndex r, const ChainSpec& spec) {
  return std::bitset<32>(r).to_string().substr(32 - spec.sites());
}

void warn_doubled_bond(const ChainSpec& spec, const FieldParams& p) {
  if (has_doubled_bond(spec) && p.j() != 0.0)
    std::cerr << "warning: at N = 2 the cyclic bond sum visits the single "
                 "bond from both sides, so the interaction enters twice "
                 "and the eps/lambda builds are inequivalent\n";
}

// --- subcommand bodies -------------------------------------------------

int run_basis(const Options& opt) {
  const ChainSpec spec(opt.n);
  std::optional<FieldParams> p;
  if (opt.fields_given) p.emplace(opt.hx, opt.hy, opt.hz, opt.j);

  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.format == "json") {
      JsonObject obj;
      add_shared_keys(obj, opt.n, p);
      std::string states = "[\n";
      for (std::size_t r = 0; r < spec.dim(); ++r) {
        const auto idx = static_cast<SpinIndex>(r);
        states += "    {\"index\": " + std::to_string(r) + ", \"bits\": \"" +
                  bit_string(idx, spec) +
                  "\", \"weight\": " + std::to_string(weight(idx, spec));
        if (p) states += ", \"energy\": " + format_g17(hf_energy(idx, spec, *p));
        states += "}";
        if (r + 1 < spec.dim()) states += ",";
        states += "\n";
      }
      states += "  ]";
      obj.raw("states", states);
      std::string degs = "[\n";
      for (int m = 0; m <= spec.sites(); ++m) {
        degs += "    {\"weight\": " + std::to_string(m) +
                ", \"count\": " + std::to_string(degeneracy(m, spec)) + "}";
        if (m < spec.sites()) degs += ",";
        degs += "\n";
      }
      degs += "  ]";
      obj.raw("degeneracies", degs);
      os << obj.str();
    } else if (opt.format == "csv") {
      os << (p ? "index,bits,weight,energy\n" : "index,bits,weight\n");
      for (std::size_t r = 0; r < spec.dim(); ++r) {
        const auto idx = static_cast<SpinIndex>(r);
        os << r << ',' << bit_string(idx, spec) << ','
           << weight(idx, spec);
        if (p) os << ',' << format_g17(hf_energy(idx, spec, *p));
        os << '\n';
      }
    } else {
      for (std::size_t r = 0; r < spec.dim(); ++r) {
        const auto idx = static_cast<SpinIndex>(r);
        os << r << ' ' << bit_string(idx, spec) << ' ' << weight(idx, spec);
        if (p) os << ' ' << format_g17(hf_energy(idx, spec, *p));
        os << '\n';
      }
      for (int m = 0; m <= spec.sites(); ++m)
        os << "weight " << m << " count " << degeneracy(m, spec) << '\n';
    }
    return 0;
  });
}

int run_build(const Options& opt) {
  const ChainSpec spec(opt.n);
  check_dense_cap(spec, dense_cap_from_env());
  const FieldParams p(opt.hx, opt.hy, opt.hz, opt.j);
  warn_doubled_bond(spec, p);
  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.basis_tag == "lambda")
      write_matrix(os, build_lambda_matrix(spec, p), "lambda");
    else
      write_matrix(os, build_eps_matrix(spec, p), "eps");
    return 0;
  });
}

int run_spectrum(const Options& opt) {
  const ChainSpec spec(opt.n);
  check_dense_cap(spec, dense_cap_from_env());
  const FieldParams p(opt.hx, opt.hy, opt.hz, opt.j);
  warn_doubled_bond(spec, p);
  const Spectrum s = opt.basis_tag == "lambda"
                         ? eigensolve(build_lambda_matrix(spec, p))
                         : eigensolve(build_eps_matrix(spec, p));
  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.format == "csv") {
      os << "index,eigenvalue\n";
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        os << i << ',' << format_g17(s.eigenvalues(i)) << '\n';
    } else if (opt.format == "text") {
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
        os << format_g17(s.eigenvalues(i)) << '\n';
    } else {
      JsonObject obj;
      add_shared_keys(obj, opt.n, p);
      obj.text("basis", opt.basis_tag);
      std::string arr = "[\n";
      for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
        arr += "    " + format_g17(s.eigenvalues(i));
        if (i + 1 < s.eigenvalues.size()) arr += ",";
        arr += "\n";
      }
      arr += "  ]";
      obj.raw("eigenvalues", arr);
      os << obj.str();
    }
    return 0;
  });
}

int run_gs(const Options& opt) {
  const ChainSpec spec(opt.n);
  check_closed_form_sites(spec);  // series total needs N >= 5
  check_dense_cap(spec, dense_cap_from_env());
  const FieldParams p(opt.hx, opt.hy, opt.hz, opt.j);
  const double exact = eigensolve(build_eps_matrix(spec, p)).ground_energy;
  const double series = corrections(spec, p).total;
  const double diff = exact - series;
  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.format == "csv") {
      os << "n,hx,hy,hz,j,h,f,g,exact,series,difference\n"
         << opt.n << ',' << csv_fields(p) << ',' << format_g17(exact)
         << ',' << format_g17(series) << ',' << format_g17(diff) << '\n';
    } else if (opt.format == "text") {
      os << "exact " << format_g17(exact) << '\n'
         << "series " << format_g17(series) << '\n'
         << "difference " << format_g17(diff) << '\n';
    } else {
      JsonObject obj;
      add_shared_keys(obj, opt.n, p);
      obj.number("exact", exact);
      obj.number("series", series);
      obj.number("difference", diff);
      os << obj.str();
    }
    return 0;
  });
}

int run_perturb(const Options& opt) {
  const ChainSpec spec(opt.n);
  check_closed_form_sites(spec);
  const FieldParams p(opt.hx, opt.hy, opt.hz, opt.j);
  std::vector<double> closed;
  for (int m = 1; m <= opt.order; ++m)
    closed.push_back(correction(m, spec, p));
  std::optional<NumericCorrections> oracle;
  if (spec.sites() <= kOracleSiteCap)
    oracle = rs_corrections(spec, p, opt.order);
  const auto oracle_value = [&](int m) {
    const std::array<double, 4> e{oracle->e1, oracle->e2, oracle->e3,
                                  oracle->e4};
    return e[static_cast<std::size_t>(m) - 1];
  };

  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.format == "csv") {
      os << "m,closed,numeric\n";
      for (int m = 1; m <= opt.order; ++m) {
        os << m << ',' << format_g17(closed[m - 1]) << ',';
        if (oracle) os << format_g17(oracle_value(m));
        os << '\n';
      }
    } else if (opt.format == "text") {
      for (int m = 1; m <= opt.order; ++m) {
        os << 'e' << m << " closed " << format_g17(closed[m - 1]);
        if (oracle) os << " numeric " << format_g17(oracle_value(m));
        os << '\n';
      }
    } else {
      JsonObject obj;
      add_shared_keys(obj, opt.n, p);
      obj.integer("order", opt.order);
      std::string arr = "[\n";
      for (int m = 1; m <= opt.order; ++m) {
        arr += "    {\"m\": " + std::to_string(m) +
               ", \"closed\": " + format_g17(closed[m - 1]);
        if (oracle) arr += ", \"numeric\": " + format_g17(oracle_value(m));
        arr += "}";
        if (m < opt.order) arr += ",";
        arr += "\n";
      }
      arr += "  ]";
      obj.raw("corrections", arr);
      os << obj.str();
    }
    return 0;
  });
}

int run_observables(const Options& opt) {
  const ChainSpec spec(opt.n);
  check_closed_form_sites(spec);
  const FieldParams p(opt.hx, opt.hy, opt.hz, opt.j);
  const ObservableSet obs = observables(spec, p);
  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.format == "csv") {
      os << "n,hx,hy,hz,j,h,f,g,mx,my,mz,corr\n"
         << opt.n << ',' << csv_fields(p) << ',' << format_g17(obs.mx)
         << ',' << format_g17(obs.my) << ',' << format_g17(obs.mz) << ','
         << format_g17(obs.corr) << '\n';
    } else if (opt.format == "text") {
      os << "mx " << format_g17(obs.mx) << '\n'
         << "my " << format_g17(obs.my) << '\n'
         << "mz " << format_g17(obs.mz) << '\n'
         << "corr " << format_g17(obs.corr) << '\n';
    } else {
      JsonObject obj;
      add_shared_keys(obj, opt.n, p);
      obj.number("mx", obs.mx);
      obj.number("my", obs.my);
      obj.number("mz", obs.mz);
      obj.number("corr", obs.corr);
      os << obj.str();
    }
    return 0;
  });
}

int run_coeffs(const Options& opt) {
  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.format == "json") {
      JsonObject obj;
      add_shared_keys(obj, 0, std::nullopt);
      std::string arr = "[\n";
      for (int m = 1; m <= 4; ++m) {
        for (int k = 0; k < m; ++k) {
          const Rational c = series_coefficient(m, k);
          arr += "    {\"m\": " + std::to_string(m) +
                 ", \"k\": " + std::to_string(k) +
                 ", \"num\": " + std::to_string(c.num()) +
                 ", \"den\": " + std::to_string(c.den()) + "}";
          if (!(m == 4 && k == 3)) arr += ",";
          arr += "\n";
        }
      }
      arr += "  ]";
      obj.raw("coefficients", arr);
      os << obj.str();
    } else if (opt.format == "csv") {
      os << "m,k,num,den\n";
      for (int m = 1; m <= 4; ++m)
        for (int k = 0; k < m; ++k) {
          const Rational c = series_coefficient(m, k);
          os << m << ',' << k << ',' << c.num() << ',' << c.den() << '\n';
        }
    } else {
      for (int m = 1; m <= 4; ++m)
        for (int k = 0; k < m; ++k) {
          const Rational c = series_coefficient(m, k);
          os << m << ' ' << k << ' ' << c.num() << ' ' << c.den() << '\n';
        }
    }
    return 0;
  });
}

int run_validate(const Options& opt) {
  const validation::Report report = validation::run_acceptance(opt.seed);
  const int rc = with_output(opt.out, [&](std::ostream& os) {
    os << report.text;
    return 0;
  });
  if (rc != 0) return rc;
  return report.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spin chain in orthogonal fields: matrices, spectra, and "
               "fourth-order perturbation series"};
  app.require_subcommand(1);

  Options opt;
  std::function<int()> action;

  const auto add_n = [&](CLI::App* cmd) {
    cmd->add_option("--n", opt.n, "number of sites")->required();
  };
  const auto add_fields = [&](CLI::App* cmd, bool required) {
    auto* x = cmd->add_option("--hx", opt.hx, "field along x (>= 0)");
    auto* y = cmd->add_option("--hy", opt.hy, "field along y (>= 0)");
    auto* z = cmd->add_option("--hz", opt.hz, "field along z (>= 0)");
    cmd->add_option("--j", opt.j, "nearest-neighbour coupling (>= 0)");
    if (required) {
      // at least one component must be set; magnitude is validated later
      cmd->callback([x, y, z]() {
        if (x->count() + y->count() + z->count() == 0)
          throw CLI::RequiredError("at least one of --hx/--hy/--hz");
      });
    }
  };
  const auto add_format = [&](CLI::App* cmd, const char* dflt) {
    opt.format.clear();
    cmd->add_option("--format", opt.format, std::string("output format, default ") + dflt)
        ->check(CLI::IsMember({"json", "csv", "text"}));
  };
  const auto add_out = [&](CLI::App* cmd) {
    cmd->add_option("--out", opt.out, "write output to this file");
  };

  auto* basis = app.add_subcommand(
      "basis", "bit table, weights, and level degeneracies");
  add_n(basis);
  add_fields(basis, false);
  add_format(basis, "text");
  add_out(basis);
  basis->parse_complete_callback([&] {
    opt.fields_given = basis->count("--hx") + basis->count("--hy") +
                           basis->count("--hz") >
                       0;
    if (opt.format.empty()) opt.format = "text";
    action = [&] { return run_basis(opt); };
  });

  auto* build = app.add_subcommand(
      "build", "emit a Hamiltonian matrix in the export text format");
  add_n(build);
  add_fields(build, true);
  build->add_option("--basis", opt.basis_tag, "matrix basis: eps | lambda")
      ->check(CLI::IsMember({"eps", "lambda"}));
  add_format(build, "matrix export text (other formats not applicable)");
  add_out(build);
  build->parse_complete_callback([&] { action = [&] { return run_build(opt); }; });

  auto* spectrum = app.add_subcommand(
      "spectrum", "sorted eigenvalues of the dense build");
  add_n(spectrum);
  add_fields(spectrum, true);
  spectrum->add_option("--basis", opt.basis_tag,
                       "matrix basis: eps | lambda")
      ->check(CLI::IsMember({"eps", "lambda"}));
  add_format(spectrum, "json");
  add_out(spectrum);
  spectrum->parse_complete_callback([&] {
    if (opt.format.empty()) opt.format = "json";
    action = [&] { return run_spectrum(opt); };
  });

  auto* gs = app.add_subcommand(
      "gs", "exact vs fourth-order series ground-state energy");
  add_n(gs);
  add_fields(gs, true);
  add_format(gs, "json");
  add_out(gs);
  gs->parse_complete_callback([&] {
    if (opt.format.empty()) opt.format = "json";
    action = [&] { return run_gs(opt); };
  });

  auto* perturb = app.add_subcommand(
      "perturb", "energy corrections e1..e4, closed form vs numeric sums");
  add_n(perturb);
  add_fields(perturb, true);
  perturb->add_option("--order", opt.order, "truncation order 1..4")
      ->check(CLI::Range(1, 4));
  add_format(perturb, "json");
  add_out(perturb);
  perturb->parse_complete_callback([&] {
    if (opt.format.empty()) opt.format = "json";
    action = [&] { return run_perturb(opt); };
  });

  auto* observables_cmd = app.add_subcommand(
      "observables", "magnetizations and nearest-neighbour correlation");
  add_n(observables_cmd);
  add_fields(observables_cmd, true);
  add_format(observables_cmd, "json");
  add_out(observables_cmd);
  observables_cmd->parse_complete_callback([&] {
    if (opt.format.empty()) opt.format = "json";
    action = [&] { return run_observables(opt); };
  });

  auto* coeffs = app.add_subcommand(
      "coeffs", "exact series coefficient table as fractions");
  add_format(coeffs, "text: \"m k num den\" rows");
  add_out(coeffs);
  coeffs->parse_complete_callback([&] {
    if (opt.format.empty()) opt.format = "text";
    action = [&] { return run_coeffs(opt); };
  });

  auto* validate = app.add_subcommand(
      "validate", "run the full acceptance suite (report is always text)");
  validate->add_option("--seed", opt.seed,
                       "base seed for the randomized draws");
  add_format(validate, "text report (other formats not applicable)");
  add_out(validate);
  validate->parse_complete_callback(
      [&] { action = [&] { return run_validate(opt); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    return action();
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

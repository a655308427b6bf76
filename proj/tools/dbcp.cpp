// Command-line surface for the diblock-copolymer bifurcation toolkit:
// branch continuation, symmetry-breaking detection, extended-system
// refinement, validated certificates, and diagram rendering.
//
// Exit codes: 0 success / valid certificate, 2 invalid certificate,
// 3 numerical failure, 4 bad input. Every error message is tagged with the
// pipeline stage that raised it.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dbcp/equilibria.hpp"
#include "dbcp/errors.hpp"
#include "dbcp/extended.hpp"
#include "dbcp/io.hpp"
#include "dbcp/validation.hpp"

namespace {

using dbcp::BadInput;
using nlohmann::json;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string join_path(const std::string& dir, const std::string& name) {
  if (dir.empty() || dir == ".") return name;
  if (dir.back() == '/') return dir + name;
  return dir + "/" + name;
}

// Config-file layering: JSON keys fill in every option the command line left
// untouched, so flags override the file and the file overrides defaults.
json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json cfg = dbcp::parse_json(dbcp::read_file(path));
  if (!cfg.is_object()) throw BadInput("cli", "config file must hold a JSON object");
  return cfg;
}

template <class T>
void cfg_fill(const CLI::Option* opt, const json& cfg, const char* key, T& var) {
  if (opt != nullptr && opt->count() > 0) return;
  if (!cfg.contains(key)) return;
  try {
    var = cfg.at(key).get<T>();
  } catch (const json::exception& e) {
    throw BadInput("cli", std::string("config key '") + key + "': " + e.what());
  }
}

// A candidate for refine/validate: either an extended point as-is or a
// detection record promoted to one (kernel normalized by its own functional).
struct Candidate {
  dbcp::ExtendedPoint w;
  dbcp::CosineSeries ell_rep;
  std::optional<double> sigma;
  json source;
};

Candidate load_candidate(const std::string& path, int index) {
  Candidate c;
  c.source = dbcp::parse_json(dbcp::read_file(path));
  if (c.source.is_array()) {
    if (index < 0 || (std::size_t)index >= c.source.size())
      throw BadInput("cli", "--index " + std::to_string(index) + " out of range (file holds " +
                                std::to_string(c.source.size()) + " records)");
    c.source = c.source.at((std::size_t)index);
  }
  if (c.source.contains("lambda0")) {
    dbcp::BifurcationRecord rec = dbcp::bifurcation_from_json(c.source);
    if (rec.n_sym < 1) throw BadInput("cli", "record has no usable n_sym");
    c.w = dbcp::seed_from_record(rec).first;
    c.ell_rep = rec.phi0;
  } else {
    c.w = dbcp::extended_point_from_json(c.source);
    c.ell_rep = c.w.v;
    if (c.source.contains("ell_rep_coeffs")) {
      c.ell_rep.a.clear();
      for (const auto& e : c.source.at("ell_rep_coeffs")) c.ell_rep.a.push_back(e.get<double>());
      c.ell_rep.lap = 0;
    }
  }
  if (c.source.contains("sigma")) c.sigma = c.source.at("sigma").get<double>();
  return c;
}

double pick_sigma(const CLI::Option* opt, double flag_value, const Candidate& c) {
  if (opt->count() > 0) return flag_value;
  if (c.sigma) return *c.sigma;
  return flag_value;
}

struct ContinueArgs {
  double sigma = 6.0;
  std::vector<int> modes;
  double lambda_max = 350.0;
  int N = 200;
  std::string out = ".";
  std::string config;
};

int cmd_continue(const ContinueArgs& a) {
  if (a.modes.empty()) {
    std::cout << "continue: no modes requested, nothing to do\n";
    return 0;
  }
  dbcp::StepPolicy pol;
  pol.N = a.N;
  for (int k : a.modes) {
    if (k < 1) throw BadInput("cli", "mode indices must be >= 1");
    double lamk = dbcp::primary_lambda(a.sigma, k);
    if (!(lamk + pol.seed_offset < a.lambda_max)) {
      std::cerr << "continue: skipping mode " << k << " (detaches at lambda=" << fmt(lamk)
                << ", beyond --lambda-max " << fmt(a.lambda_max) << ")\n";
      continue;
    }
    std::vector<dbcp::BranchSample> branch =
        dbcp::continue_branch(a.sigma, k, lamk, a.lambda_max, pol);
    dbcp::BranchMeta meta;
    meta.sigma = a.sigma;
    meta.k = k;
    meta.n_sym = k;
    meta.N = a.N;
    const std::string path = join_path(a.out, "branch_k" + std::to_string(k) + ".csv");
    dbcp::atomic_write_file(path, dbcp::branch_to_csv(branch, meta));
    std::cout << "continue: mode " << k << ", detach lambda=" << fmt(lamk) << ", "
              << branch.size() << " samples -> " << path << "\n";
  }
  return 0;
}

struct DetectArgs {
  std::vector<std::string> files;
  int n_sym = 0;  // 0: use branch metadata (n_sym, falling back to k)
  int N = 0;
  std::string out = "bifurcations.json";
  std::string config;
};

int cmd_detect(const DetectArgs& a) {
  if (a.files.empty()) throw BadInput("cli", "detect needs at least one branch CSV");
  json all = json::array();
  for (const std::string& f : a.files) {
    auto [branch, meta] = dbcp::branch_from_csv(dbcp::read_file(f));
    int n = a.n_sym > 0 ? a.n_sym : (meta.n_sym > 0 ? meta.n_sym : meta.k);
    if (n < 1) throw BadInput("cli", "no symmetry order: pass --n-sym or use branch metadata");
    if (!(meta.sigma > 0.0))
      throw BadInput("cli", "branch file '" + f + "' carries no positive sigma");
    dbcp::DetectPolicy pol;
    pol.N = a.N;
    std::vector<dbcp::BifurcationRecord> recs =
        dbcp::detect_bifurcations(meta.sigma, branch, n, pol);
    for (const dbcp::BifurcationRecord& r : recs) {
      json jr = dbcp::bifurcation_to_json(r);
      jr["sigma"] = meta.sigma;
      jr["branch_k"] = meta.k;
      jr["source"] = f;
      all.push_back(jr);
      std::cout << "detect: " << f << " lambda0=" << fmt(r.lambda0) << " case="
                << (r.scenario ? std::string(1, r.scenario->case_label) : std::string("?"))
                << (r.resolved ? "" : " UNRESOLVED") << "\n";
    }
    if (recs.empty()) std::cout << "detect: " << f << " no symmetry-breaking crossings\n";
  }
  dbcp::atomic_write_file(a.out, all.dump(2) + "\n");
  std::cout << "detect: " << all.size() << " record(s) -> " << a.out << "\n";
  return 0;
}

struct RefineArgs {
  std::string record;
  int index = 0;
  double sigma = 6.0;
  int N = 200;
  std::string out = "refined.json";
  std::string config;
};

int cmd_refine(const RefineArgs& a, const CLI::Option* sigma_opt) {
  Candidate c = load_candidate(a.record, a.index);
  const double sigma = pick_sigma(sigma_opt, a.sigma, c);
  dbcp::NormalizationFunctional ell = dbcp::make_normalization(c.ell_rep);
  dbcp::ExtendedPoint refined = dbcp::newton_extended(sigma, c.w, ell, a.N);
  json out = dbcp::extended_point_to_json(refined);
  out["sigma"] = sigma;
  out["ell_rep_coeffs"] = json(dbcp::materialized(c.ell_rep).a);
  dbcp::atomic_write_file(a.out, out.dump(2) + "\n");
  std::cout << "refine: lambda*=" << fmt(refined.lambda) << " n_sym=" << refined.n_sym << " -> "
            << a.out << "\n";
  return 0;
}

struct ValidateArgs {
  std::string record;
  int index = 0;
  double sigma = 6.0;
  int N = 0;
  int tail_N = 0;
  double dw = 0.0;
  double dsigma = 0.0;
  bool refine = false;
  bool timings = false;
  std::string out = "certificate.json";
  std::string config;
};

int cmd_validate(const ValidateArgs& a, const CLI::Option* sigma_opt) {
  Candidate c = load_candidate(a.record, a.index);
  const double sigma = pick_sigma(sigma_opt, a.sigma, c);
  dbcp::NormalizationFunctional ell = dbcp::make_normalization(c.ell_rep);
  dbcp::ExtendedPoint w = c.w;
  if (a.refine) {
    const int refine_N = a.N > 0 ? a.N : 200;
    w = dbcp::newton_extended(sigma, w, ell, refine_N);
  }
  dbcp::CertificateConfig cfg;
  cfg.N = a.N;
  cfg.tail_N = a.tail_N;
  cfg.d_w = a.dw;
  cfg.d_sigma = a.dsigma;
  dbcp::ValidationCertificate cert = dbcp::make_certificate(sigma, w, ell, cfg);
  dbcp::atomic_write_file(a.out,
                          dbcp::certificate_to_json(cert, a.timings, &c.source).dump(2) + "\n");
  if (cert.valid) {
    std::cout << "validate: VALID lambda*=" << fmt(w.lambda) << " rho<=" << fmt(cert.rho.hi())
              << " K<=" << fmt(cert.K.hi()) << " M1<=" << fmt(cert.bundle.M1.hi())
              << " delta_sigma=" << fmt(cert.delta_sigma) << " -> " << a.out << "\n";
    return 0;
  }
  std::cout << "validate: INVALID at stage '" << cert.failure_stage << "' ("
            << cert.failure_what << ") -> " << a.out << "\n";
  return 2;
}

struct DiagramArgs {
  std::vector<std::string> files;
  std::string records;
  std::string out_svg = "diagram.svg";
  std::string out_csv = "combined.csv";
  std::string config;
};

int cmd_diagram(const DiagramArgs& a) {
  std::vector<std::vector<dbcp::BranchSample>> branches;
  std::vector<dbcp::BranchMeta> metas;
  for (const std::string& f : a.files) {
    auto [branch, meta] = dbcp::branch_from_csv(dbcp::read_file(f));
    branches.push_back(std::move(branch));
    metas.push_back(meta);
  }
  std::vector<dbcp::BifurcationRecord> recs;
  if (!a.records.empty()) {
    json arr = dbcp::parse_json(dbcp::read_file(a.records));
    if (!arr.is_array()) throw BadInput("cli", "records file must hold a JSON array");
    for (const auto& jr : arr) recs.push_back(dbcp::bifurcation_from_json(jr));
  }
  dbcp::atomic_write_file(a.out_svg, dbcp::diagram_svg(branches, recs));

  std::string csv = "# dbcp-combined v1\nbranch_k,lambda,normX,stability_index\n";
  for (std::size_t b = 0; b < branches.size(); ++b)
    for (const dbcp::BranchSample& s : branches[b])
      csv += std::to_string(metas[b].k) + "," + fmt(s.lambda) + "," + fmt(s.normX) + "," +
             std::to_string(s.stability_index) + "\n";
  dbcp::atomic_write_file(a.out_csv, csv);
  std::cout << "diagram: " << branches.size() << " branch(es), " << recs.size()
            << " record(s) -> " << a.out_svg << ", " << a.out_csv << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diblock-copolymer equilibrium branches, symmetry-breaking bifurcations, "
               "and validated certificates"};
  app.require_subcommand(0, 1);

  ContinueArgs ca;
  CLI::App* sc_continue = app.add_subcommand("continue", "Trace primary branches to CSV");
  auto* ca_sigma = sc_continue->add_option("--sigma", ca.sigma, "Nonlocal parameter");
  auto* ca_modes = sc_continue->add_option("--modes", ca.modes, "Primary mode indices");
  auto* ca_lmax = sc_continue->add_option("--lambda-max", ca.lambda_max, "Continuation end");
  auto* ca_N = sc_continue->add_option("--N", ca.N, "Galerkin modes");
  auto* ca_out = sc_continue->add_option("--out", ca.out, "Output directory");
  sc_continue->add_option("--config", ca.config, "JSON config file");

  DetectArgs da;
  CLI::App* sc_detect = app.add_subcommand("detect", "Locate symmetry-breaking crossings");
  sc_detect->add_option("files", da.files, "Branch CSV files");
  auto* da_nsym = sc_detect->add_option("--n-sym", da.n_sym, "Symmetry order override");
  auto* da_N = sc_detect->add_option("--N", da.N, "Galerkin modes (0: from branch)");
  auto* da_out = sc_detect->add_option("--out", da.out, "Output JSON path");
  sc_detect->add_option("--config", da.config, "JSON config file");

  RefineArgs ra;
  CLI::App* sc_refine = app.add_subcommand("refine", "Newton-polish an extended point");
  sc_refine->add_option("--record", ra.record, "Record or extended-point JSON")->required();
  sc_refine->add_option("--index", ra.index, "Record index when the file holds a list");
  auto* ra_sigma = sc_refine->add_option("--sigma", ra.sigma, "Nonlocal parameter");
  auto* ra_N = sc_refine->add_option("--N", ra.N, "Galerkin modes");
  auto* ra_out = sc_refine->add_option("--out", ra.out, "Output JSON path");
  sc_refine->add_option("--config", ra.config, "JSON config file");

  ValidateArgs va;
  CLI::App* sc_validate = app.add_subcommand("validate", "Produce a validation certificate");
  sc_validate->add_option("--record", va.record, "Record or extended-point JSON")->required();
  sc_validate->add_option("--index", va.index, "Record index when the file holds a list");
  auto* va_sigma = sc_validate->add_option("--sigma", va.sigma, "Nonlocal parameter");
  auto* va_N = sc_validate->add_option("--N", va.N, "Candidate projection / head floor");
  auto* va_tail = sc_validate->add_option("--tail-N", va.tail_N, "Head cutoff request");
  auto* va_dw = sc_validate->add_option("--dw", va.dw, "Ball radius d_w (0: auto)");
  auto* va_ds = sc_validate->add_option("--dsigma", va.dsigma, "Ball radius d_sigma (0: = d_w)");
  auto* va_refine = sc_validate->add_flag("--refine", va.refine, "Newton-polish before validating");
  auto* va_timings =
      sc_validate->add_flag("--timings", va.timings, "Embed wall-clock timings (non-reproducible)");
  auto* va_out = sc_validate->add_option("--out", va.out, "Certificate path");
  sc_validate->add_option("--config", va.config, "JSON config file");

  DiagramArgs ga;
  CLI::App* sc_diagram = app.add_subcommand("diagram", "Render SVG diagram and combined CSV");
  sc_diagram->add_option("files", ga.files, "Branch CSV files");
  auto* ga_rec = sc_diagram->add_option("--records", ga.records, "Bifurcation JSON list");
  auto* ga_svg = sc_diagram->add_option("--out-svg", ga.out_svg, "SVG path");
  auto* ga_csv = sc_diagram->add_option("--out-csv", ga.out_csv, "Combined CSV path");
  sc_diagram->add_option("--config", ga.config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (sc_continue->parsed()) {
      json cfg = load_config(ca.config);
      cfg_fill(ca_sigma, cfg, "sigma", ca.sigma);
      cfg_fill(ca_modes, cfg, "modes", ca.modes);
      cfg_fill(ca_lmax, cfg, "lambda_max", ca.lambda_max);
      cfg_fill(ca_N, cfg, "N", ca.N);
      cfg_fill(ca_out, cfg, "out", ca.out);
      return cmd_continue(ca);
    }
    if (sc_detect->parsed()) {
      json cfg = load_config(da.config);
      cfg_fill(da_nsym, cfg, "n_sym", da.n_sym);
      cfg_fill(da_N, cfg, "N", da.N);
      cfg_fill(da_out, cfg, "out", da.out);
      return cmd_detect(da);
    }
    if (sc_refine->parsed()) {
      json cfg = load_config(ra.config);
      cfg_fill(ra_sigma, cfg, "sigma", ra.sigma);
      cfg_fill(ra_N, cfg, "N", ra.N);
      cfg_fill(ra_out, cfg, "out", ra.out);
      return cmd_refine(ra, ra_sigma);
    }
    if (sc_validate->parsed()) {
      json cfg = load_config(va.config);
      cfg_fill(va_sigma, cfg, "sigma", va.sigma);
      cfg_fill(va_N, cfg, "N", va.N);
      cfg_fill(va_tail, cfg, "tail_N", va.tail_N);
      cfg_fill(va_dw, cfg, "dw", va.dw);
      cfg_fill(va_ds, cfg, "dsigma", va.dsigma);
      cfg_fill(va_out, cfg, "out", va.out);
      cfg_fill(va_refine, cfg, "refine", va.refine);
      cfg_fill(va_timings, cfg, "timings", va.timings);
      return cmd_validate(va, va_sigma);
    }
    if (sc_diagram->parsed()) {
      json cfg = load_config(ga.config);
      cfg_fill(ga_rec, cfg, "records", ga.records);
      cfg_fill(ga_svg, cfg, "out_svg", ga.out_svg);
      cfg_fill(ga_csv, cfg, "out_csv", ga.out_csv);
      return cmd_diagram(ga);
    }
    std::cout << app.help();
    return 0;
  } catch (const BadInput& e) {
    std::cerr << e.what() << "\n";
    return 4;
  } catch (const dbcp::NumericalError& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "[cli] " << e.what() << "\n";
    return 4;
  }
}

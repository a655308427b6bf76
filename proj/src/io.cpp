#include "dbcp/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "dbcp/errors.hpp"

namespace dbcp {

using nlohmann::json;

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// json::at with errors retagged as io failures
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw BadInput("io", std::string(what) + ": " + e.what());
  }
}

std::vector<double> coeffs_of(const CosineSeries& u) {
  return materialized(u).a;
}

json coeff_array(const std::vector<double>& a) {
  return json(a);
}

std::vector<double> doubles_from(const json& j, const char* what) {
  if (!j.is_array()) throw BadInput("io", std::string(what) + " must be an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_number()) throw BadInput("io", std::string(what) + " must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

double finite_or_nan(const json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  return j.get<double>();
}

json nan_to_null(double x) {
  if (!std::isfinite(x)) return json(nullptr);
  return json(x);
}

}  // namespace

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw BadInput("io", "malformed JSON");
  return j;
}

json series_to_json(const CosineSeries& u, std::optional<int> n_sym) {
  json j;
  j["coeffs"] = coeff_array(coeffs_of(u));
  if (n_sym) j["n_sym"] = *n_sym;
  return j;
}

CosineSeries series_from_json(const json& j, std::optional<int>* n_sym) {
  return guarded("series", [&] {
    CosineSeries u;
    u.a = doubles_from(j.at("coeffs"), "coeffs");
    if (n_sym) *n_sym = j.contains("n_sym") ? std::optional<int>(j.at("n_sym").get<int>())
                                            : std::nullopt;
    return u;
  });
}

json interval_to_json(const Interval& x) { return json::array({x.lo(), x.hi()}); }

Interval interval_from_json(const json& j) {
  return guarded("interval", [&] {
    if (!j.is_array() || j.size() != 2) throw BadInput("io", "interval must be [lo, hi]");
    try {
      return Interval(j.at(0).get<double>(), j.at(1).get<double>());
    } catch (const InvalidInterval& e) {
      throw BadInput("io", e.what());
    }
  });
}

json extended_point_to_json(const ExtendedPoint& w) {
  if (w.n_sym < 1) throw BadInput("io", "extended point needs n_sym >= 1");
  json j;
  j["lambda"] = w.lambda;
  j["n_sym"] = w.n_sym;
  CosineSeries u = materialized(w.u);
  std::vector<double> ua;
  std::vector<int> am = classA_modes(w.n_sym, (int)u.modes());
  for (int k : am) ua.push_back(u.a[(std::size_t)k - 1]);
  // trailing zero entries carry no information
  while (!ua.empty() && ua.back() == 0.0) ua.pop_back();
  for (std::size_t i = 0; i < u.a.size(); ++i) {
    int k = (int)i + 1;
    if (u.a[i] != 0.0 && class_of(k, w.n_sym) != ClassTag::A)
      throw BadInput("io", "u support leaves class A at wave number " + std::to_string(k));
  }
  j["u_coeffs_classA"] = coeff_array(ua);
  j["v_coeffs"] = coeff_array(coeffs_of(w.v));
  return j;
}

ExtendedPoint extended_point_from_json(const json& j) {
  return guarded("extended point", [&] {
    ExtendedPoint w;
    w.lambda = j.at("lambda").get<double>();
    w.n_sym = j.at("n_sym").get<int>();
    if (w.n_sym < 1) throw BadInput("io", "extended point needs n_sym >= 1");
    std::vector<double> ua = doubles_from(j.at("u_coeffs_classA"), "u_coeffs_classA");
    if (!ua.empty()) {
      int top = (2 * ((int)ua.size() - 1) + 1) * w.n_sym;
      w.u.a.assign((std::size_t)top, 0.0);
      for (std::size_t i = 0; i < ua.size(); ++i)
        w.u.a[(std::size_t)((2 * (int)i + 1) * w.n_sym) - 1] = ua[i];
    }
    w.v.a = doubles_from(j.at("v_coeffs"), "v_coeffs");
    return w;
  });
}

json scenario_to_json(const ScenarioRecord& s) {
  json j;
  j["case"] = std::string(1, s.case_label);
  j["kernel_class"] = s.kernel_class == ClassTag::B ? "B" : "C";
  j["n_even"] = s.n_even;
  j["kernel_even_about_half"] = s.kernel_even_about_half;
  return j;
}

ScenarioRecord scenario_from_json(const json& j) {
  return guarded("scenario", [&] {
    ScenarioRecord s;
    std::string c = j.at("case").get<std::string>();
    if (c.size() != 1 || c[0] < 'a' || c[0] > 'd')
      throw BadInput("io", "scenario case must be one of a..d");
    s.case_label = c[0];
    std::string kc = j.at("kernel_class").get<std::string>();
    if (kc != "B" && kc != "C") throw BadInput("io", "kernel_class must be B or C");
    s.kernel_class = kc == "B" ? ClassTag::B : ClassTag::C;
    s.n_even = j.at("n_even").get<bool>();
    s.kernel_even_about_half = j.at("kernel_even_about_half").get<bool>();
    return s;
  });
}

json bifurcation_to_json(const BifurcationRecord& r) {
  json j;
  j["lambda0"] = r.lambda0;
  j["n_sym"] = r.n_sym;
  j["u0_coeffs"] = coeff_array(coeffs_of(r.u0));
  j["phi0_coeffs"] = coeff_array(coeffs_of(r.phi0));
  j["scenario"] = r.scenario ? scenario_to_json(*r.scenario) : json(nullptr);
  j["shape_rho"] = nan_to_null(r.shape_rho);
  j["nondegeneracy_value"] = nan_to_null(r.nondegeneracy_value);
  j["resolved"] = r.resolved;
  j["bracket_lo"] = r.bracket_lo;
  j["bracket_hi"] = r.bracket_hi;
  j["kernel_eig"] = r.kernel_eig;
  return j;
}

BifurcationRecord bifurcation_from_json(const json& j) {
  return guarded("bifurcation record", [&] {
    BifurcationRecord r;
    r.lambda0 = j.at("lambda0").get<double>();
    r.n_sym = j.at("n_sym").get<int>();
    r.u0.a = doubles_from(j.at("u0_coeffs"), "u0_coeffs");
    r.phi0.a = doubles_from(j.at("phi0_coeffs"), "phi0_coeffs");
    if (j.contains("scenario") && !j.at("scenario").is_null())
      r.scenario = scenario_from_json(j.at("scenario"));
    if (j.contains("shape_rho")) r.shape_rho = finite_or_nan(j.at("shape_rho"));
    if (j.contains("nondegeneracy_value"))
      r.nondegeneracy_value = finite_or_nan(j.at("nondegeneracy_value"));
    if (j.contains("resolved")) r.resolved = j.at("resolved").get<bool>();
    if (j.contains("bracket_lo")) r.bracket_lo = j.at("bracket_lo").get<double>();
    if (j.contains("bracket_hi")) r.bracket_hi = j.at("bracket_hi").get<double>();
    if (j.contains("kernel_eig")) r.kernel_eig = j.at("kernel_eig").get<double>();
    return r;
  });
}

json certificate_to_json(const ValidationCertificate& cert, bool include_timings,
                         const json* source_record) {
  json j;
  j["schema"] = 1;
  j["valid"] = cert.valid;
  j["failure_stage"] = cert.failure_stage;
  j["failure_what"] = cert.failure_what;

  json in;
  in["sigma_star"] = cert.sigma_star;
  in["w_star"] = extended_point_to_json(cert.w_star);
  in["ell_rep_coeffs"] = coeff_array(coeffs_of(cert.ell_rep));
  if (source_record) in["record"] = *source_record;
  j["inputs"] = in;

  j["discretization"] = json{{"N", cert.N}, {"tail_N", cert.tail_N}};
  j["ball"] = json{{"d_w", cert.bundle.d_w}, {"d_sigma", cert.bundle.d_sigma}};

  j["enclosures"] = json{{"rho", interval_to_json(cert.rho)},
                         {"K", interval_to_json(cert.K)},
                         {"eta", interval_to_json(cert.eta)},
                         {"norm_w_slant", interval_to_json(cert.norm_w_slant)}};

  json lip;
  const std::pair<const char*, const Interval*> cs[] = {
      {"c1", &cert.bundle.c1},       {"c2", &cert.bundle.c2},
      {"c3", &cert.bundle.c3},       {"c4", &cert.bundle.c4},
      {"c5", &cert.bundle.c5},       {"c6", &cert.bundle.c6},
      {"c7", &cert.bundle.c7},       {"c8", &cert.bundle.c8},
      {"c9", &cert.bundle.c9},       {"c10", &cert.bundle.c10},
      {"c11", &cert.bundle.c11},     {"M1", &cert.bundle.M1},
      {"M2", &cert.bundle.M2},       {"M3", &cert.bundle.M3},
      {"M4", &cert.bundle.M4},       {"f1_max", &cert.bundle.f1_max},
      {"f2_max", &cert.bundle.f2_max}, {"f3_max", &cert.bundle.f3_max},
      {"Cbar1", &cert.bundle.Cbar1}};
  for (const auto& [name, p] : cs) lip[name] = interval_to_json(*p);
  j["lipschitz"] = lip;

  j["w_slant"] = cert.w_slant.n_sym >= 1 ? extended_point_to_json(cert.w_slant) : json(nullptr);
  j["box"] = json{{"delta_sigma", interval_to_json(Interval(cert.delta_sigma))},
                  {"delta_w", interval_to_json(Interval(cert.delta_w))}};
  j["checks"] = json{{"contraction", cert.checks.contraction},
                     {"radius", cert.checks.radius},
                     {"box_inside_ball", cert.checks.box_inside_ball},
                     {"slope", cert.checks.slope},
                     {"closure", cert.checks.closure}};
  j["scenario"] = cert.scenario ? scenario_to_json(*cert.scenario) : json(nullptr);

  if (include_timings) {
    json t = json::object();
    for (const auto& [name, ms] : cert.timings_ms) t[name] = ms;
    j["timings_ms"] = t;
  }
  return j;
}

std::string branch_to_csv(const std::vector<BranchSample>& branch, const BranchMeta& meta) {
  std::size_t ncols = (std::size_t)std::max(meta.N, 0);
  for (const BranchSample& s : branch) ncols = std::max(ncols, materialized(s.u).modes());
  std::ostringstream out;
  out << "# dbcp-branch v1\n";
  out << "# sigma=" << fmt17(meta.sigma) << "\n";
  out << "# k=" << meta.k << "\n";
  out << "# n_sym=" << meta.n_sym << "\n";
  out << "# N=" << ncols << "\n";
  out << "# samples=" << branch.size() << "\n";
  out << "lambda,normX,stability_index";
  for (std::size_t c = 1; c <= ncols; ++c) out << ",a_" << c;
  out << "\n";
  for (const BranchSample& s : branch) {
    CosineSeries u = materialized(s.u);
    out << fmt17(s.lambda) << ',' << fmt17(s.normX) << ',' << s.stability_index;
    for (std::size_t c = 0; c < ncols; ++c)
      out << ',' << fmt17(c < u.a.size() ? u.a[c] : 0.0);
    out << "\n";
  }
  return out.str();
}

std::pair<std::vector<BranchSample>, BranchMeta> branch_from_csv(const std::string& text) {
  std::vector<BranchSample> branch;
  BranchMeta meta;
  std::istringstream in(text);
  std::string line;
  bool seen_header = false;
  auto parse_double = [](const std::string& tok, const char* what) {
    char* end = nullptr;
    double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
      throw BadInput("io", std::string("bad ") + what + " field '" + tok + "'");
    return v;
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      auto eat = [&](const char* key, auto&& sink) {
        std::string pre = std::string("# ") + key + "=";
        if (line.rfind(pre, 0) == 0) sink(line.substr(pre.size()));
      };
      eat("sigma", [&](const std::string& v) { meta.sigma = parse_double(v, "sigma"); });
      eat("k", [&](const std::string& v) { meta.k = (int)parse_double(v, "k"); });
      eat("n_sym", [&](const std::string& v) { meta.n_sym = (int)parse_double(v, "n_sym"); });
      eat("N", [&](const std::string& v) { meta.N = (int)parse_double(v, "N"); });
      continue;
    }
    if (!seen_header) {
      if (line.rfind("lambda,normX,stability_index", 0) != 0)
        throw BadInput("io", "branch CSV header must start with lambda,normX,stability_index");
      seen_header = true;
      continue;
    }
    std::vector<std::string> tok;
    std::string cur;
    std::istringstream ls(line);
    while (std::getline(ls, cur, ',')) tok.push_back(cur);
    if (tok.size() < 3) throw BadInput("io", "branch CSV row needs at least three columns");
    BranchSample s;
    s.lambda = parse_double(tok[0], "lambda");
    s.normX = parse_double(tok[1], "normX");
    s.stability_index = (int)parse_double(tok[2], "stability_index");
    s.u.a.assign(tok.size() - 3, 0.0);
    for (std::size_t c = 3; c < tok.size(); ++c)
      s.u.a[c - 3] = parse_double(tok[c], "coefficient");
    branch.push_back(std::move(s));
  }
  if (!seen_header) throw BadInput("io", "branch CSV has no header row");
  return {std::move(branch), meta};
}

namespace {

std::string fmt3(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string fmt6g(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

}  // namespace

std::string diagram_svg(const std::vector<std::vector<BranchSample>>& branches,
                        const std::vector<BifurcationRecord>& records) {
  double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
  bool any = false;
  auto eat = [&](double lx, double ly) {
    if (!any) {
      x0 = x1 = lx;
      y0 = y1 = ly;
      any = true;
    } else {
      x0 = std::min(x0, lx);
      x1 = std::max(x1, lx);
      y0 = std::min(y0, ly);
      y1 = std::max(y1, ly);
    }
  };
  for (const auto& b : branches)
    for (const BranchSample& s : b) eat(s.lambda, s.normX);
  for (const BifurcationRecord& r : records) eat(r.lambda0, norms(r.u0).normX);
  if (x1 - x0 <= 0.0) {
    x0 -= 0.5;
    x1 += 0.5;
  }
  if (y1 - y0 <= 0.0) {
    y0 -= 0.5;
    y1 += 0.5;
  }
  const double padx = 0.05 * (x1 - x0), pady = 0.05 * (y1 - y0);
  x0 -= padx;
  x1 += padx;
  y0 -= pady;
  y1 += pady;

  const double L = 70.0, R = 880.0, T = 20.0, B = 550.0;
  auto mx = [&](double v) { return L + (v - x0) / (x1 - x0) * (R - L); };
  auto my = [&](double v) { return B - (v - y0) / (y1 - y0) * (B - T); };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 900 600\" "
       "width=\"900\" height=\"600\">\n";
  s << "<rect x=\"0\" y=\"0\" width=\"900\" height=\"600\" fill=\"#ffffff\"/>\n";
  s << "<rect x=\"" << fmt3(L) << "\" y=\"" << fmt3(T) << "\" width=\"" << fmt3(R - L)
    << "\" height=\"" << fmt3(B - T)
    << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    double fx = x0 + (x1 - x0) * i / 5.0;
    double fy = y0 + (y1 - y0) * i / 5.0;
    double px = mx(fx), py = my(fy);
    s << "<line x1=\"" << fmt3(px) << "\" y1=\"" << fmt3(B) << "\" x2=\"" << fmt3(px)
      << "\" y2=\"" << fmt3(B + 5) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    s << "<text x=\"" << fmt3(px) << "\" y=\"" << fmt3(B + 20)
      << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">" << fmt6g(fx)
      << "</text>\n";
    s << "<line x1=\"" << fmt3(L - 5) << "\" y1=\"" << fmt3(py) << "\" x2=\"" << fmt3(L)
      << "\" y2=\"" << fmt3(py) << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
    s << "<text x=\"" << fmt3(L - 8) << "\" y=\"" << fmt3(py + 4)
      << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"end\">" << fmt6g(fy)
      << "</text>\n";
  }
  s << "<text x=\"" << fmt3(0.5 * (L + R)) << "\" y=\"590\" font-family=\"monospace\" "
       "font-size=\"14\" text-anchor=\"middle\">lambda</text>\n";
  s << "<text x=\"16\" y=\"" << fmt3(0.5 * (T + B))
    << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\" "
       "transform=\"rotate(-90 16 "
    << fmt3(0.5 * (T + B)) << ")\">X-norm</text>\n";

  static const char* palette[] = {"#1f77b4", "#ff7f0e", "#7f7f7f", "#9467bd",
                                  "#8c564b", "#e377c2", "#bcbd22", "#17becf"};
  for (std::size_t bi = 0; bi < branches.size(); ++bi) {
    const auto& b = branches[bi];
    if (b.empty()) continue;
    s << "<polyline fill=\"none\" stroke=\"" << palette[bi % 8]
      << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) s << ' ';
      s << fmt3(mx(b[i].lambda)) << ',' << fmt3(my(b[i].normX));
    }
    s << "\"/>\n";
  }

  for (const BifurcationRecord& r : records) {
    double px = mx(r.lambda0), py = my(norms(r.u0).normX);
    if (!r.scenario) {
      s << "<rect x=\"" << fmt3(px - 4) << "\" y=\"" << fmt3(py - 4)
        << "\" width=\"8\" height=\"8\" fill=\"none\" stroke=\"#000000\" "
           "stroke-width=\"1.5\"/>\n";
      continue;
    }
    switch (r.scenario->case_label) {
      case 'a':  // even solution, even kernel: green cross
      case 'd':  // odd solution, odd kernel: red cross
      {
        const char* col = r.scenario->case_label == 'a' ? "#008000" : "#d00000";
        s << "<path d=\"M" << fmt3(px - 4) << ' ' << fmt3(py - 4) << " L" << fmt3(px + 4) << ' '
          << fmt3(py + 4) << " M" << fmt3(px - 4) << ' ' << fmt3(py + 4) << " L" << fmt3(px + 4)
          << ' ' << fmt3(py - 4) << "\" stroke=\"" << col << "\" stroke-width=\"2\"/>\n";
        break;
      }
      case 'b':  // even solution, odd kernel: magenta dot
      case 'c':  // odd solution, even kernel: cyan dot
      {
        const char* col = r.scenario->case_label == 'b' ? "#c000c0" : "#00b0b0";
        s << "<circle cx=\"" << fmt3(px) << "\" cy=\"" << fmt3(py) << "\" r=\"4\" fill=\"" << col
          << "\"/>\n";
        break;
      }
      default:
        throw BadInput("io", "unknown scenario case in record");
    }
  }
  s << "</svg>\n";
  return s.str();
}

void atomic_write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw BadInput("io", "cannot open '" + tmp + "' for writing");
    out.write(content.data(), (std::streamsize)content.size());
    out.flush();
    if (!out) throw BadInput("io", "short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw BadInput("io", "cannot rename '" + tmp + "' to '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadInput("io", "cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace dbcp

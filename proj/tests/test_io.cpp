#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "dbcp/errors.hpp"
#include "dbcp/io.hpp"
#include "doctest.h"

using namespace dbcp;
using nlohmann::json;

namespace {

CosineSeries mode(int k, double amp) {
  CosineSeries u((std::size_t)k);
  u.a[(std::size_t)k - 1] = amp;
  return u;
}

double kp2(int k) {
  double t = (double)k * M_PI;
  return t * t;
}

}  // namespace

TEST_CASE("series and extended point json round-trips") {
  CosineSeries u;
  u.a = {0.25, 0.0, -1.0 / 3.0, 7e-17};
  json js = series_to_json(u, 5);
  std::optional<int> n;
  CosineSeries back = series_from_json(js, &n);
  REQUIRE(n.has_value());
  CHECK(*n == 5);
  REQUIRE(back.a.size() == u.a.size());
  for (std::size_t i = 0; i < u.a.size(); ++i) CHECK(back.a[i] == u.a[i]);

  json js2 = series_to_json(u);
  std::optional<int> n2 = 11;
  series_from_json(js2, &n2);
  CHECK(!n2.has_value());

  ExtendedPoint w;
  w.lambda = 115.6875;
  w.n_sym = 3;
  w.u = mode(3, 0.4) + mode(9, -0.03125);
  w.v = mode(1, 0.7) + mode(4, 1e-3);
  json jw = extended_point_to_json(w);
  // class-A packing: entry i holds wave number (2i+1) n_sym
  REQUIRE(jw.at("u_coeffs_classA").size() == 2);
  CHECK(jw.at("u_coeffs_classA").at(0).get<double>() == 0.4);
  CHECK(jw.at("u_coeffs_classA").at(1).get<double>() == -0.03125);
  ExtendedPoint wb = extended_point_from_json(jw);
  CHECK(wb.lambda == w.lambda);
  CHECK(wb.n_sym == 3);
  CHECK(materialized(wb.u) == materialized(w.u));
  CHECK(materialized(wb.v) == materialized(w.v));

  ExtendedPoint offclass = w;
  offclass.u = mode(2, 0.1);
  CHECK_THROWS_AS(extended_point_to_json(offclass), BadInput);
  ExtendedPoint nosym = w;
  nosym.n_sym = 0;
  CHECK_THROWS_AS(extended_point_to_json(nosym), BadInput);
  CHECK_THROWS_AS(extended_point_from_json(json{{"lambda", 1.0}}), BadInput);
}

TEST_CASE("interval, scenario, and bifurcation record json round-trips") {
  Interval x(-1.0 / 3.0, 0.7000000000000001);
  Interval xb = interval_from_json(interval_to_json(x));
  CHECK(xb.lo() == x.lo());
  CHECK(xb.hi() == x.hi());
  CHECK_THROWS_AS(interval_from_json(json::array({1.0})), BadInput);
  CHECK_THROWS_AS(interval_from_json(json::array({2.0, 1.0})), BadInput);  // lo > hi

  for (char c : {'a', 'b', 'c', 'd'}) {
    ScenarioRecord s;
    s.case_label = c;
    s.kernel_class = (c == 'a' || c == 'd') ? ClassTag::B : ClassTag::C;
    s.n_even = (c == 'a' || c == 'b');
    s.kernel_even_about_half = (c == 'a' || c == 'c');
    ScenarioRecord sb = scenario_from_json(scenario_to_json(s));
    CHECK(sb.case_label == s.case_label);
    CHECK(sb.kernel_class == s.kernel_class);
    CHECK(sb.n_even == s.n_even);
    CHECK(sb.kernel_even_about_half == s.kernel_even_about_half);
  }
  CHECK_THROWS_AS(scenario_from_json(json{{"case", "e"}}), BadInput);

  BifurcationRecord r;
  r.lambda0 = 115.6886792452830;
  r.n_sym = 5;
  r.u0 = mode(5, 0.3);
  r.phi0 = mode(2, std::sqrt(2.0) / kp2(2));
  r.scenario = ScenarioRecord{false, ClassTag::B, false, 'd'};
  r.shape_rho = std::numeric_limits<double>::quiet_NaN();
  r.nondegeneracy_value = -2.5;
  r.resolved = false;
  r.bracket_lo = 115.6;
  r.bracket_hi = 115.7;
  r.kernel_eig = 3e-12;
  BifurcationRecord rb = bifurcation_from_json(bifurcation_to_json(r));
  CHECK(rb.lambda0 == r.lambda0);
  CHECK(rb.n_sym == 5);
  CHECK(materialized(rb.u0) == materialized(r.u0));
  CHECK(materialized(rb.phi0) == materialized(r.phi0));
  REQUIRE(rb.scenario.has_value());
  CHECK(rb.scenario->case_label == 'd');
  CHECK(std::isnan(rb.shape_rho));
  CHECK(rb.nondegeneracy_value == -2.5);
  CHECK(!rb.resolved);
  CHECK(rb.bracket_lo == 115.6);
  CHECK(rb.kernel_eig == 3e-12);

  CHECK_THROWS_AS(parse_json("{not json"), BadInput);
}

TEST_CASE("branch csv round-trips at full precision and deterministically") {
  std::vector<BranchSample> branch(3);
  branch[0].lambda = 25.172880981471941;
  branch[0].u = mode(1, 1.0 / 3.0);
  branch[0].normX = norms(branch[0].u).normX;
  branch[0].stability_index = 0;
  branch[1].lambda = 26.5;
  branch[1].u = mode(1, 0.1) + mode(3, -7e-3);
  branch[1].normX = norms(branch[1].u).normX;
  branch[1].stability_index = 1;
  branch[2].lambda = 28.0 + 1e-13;
  branch[2].u = CosineSeries();
  branch[2].normX = 0.0;
  branch[2].stability_index = -2;

  BranchMeta meta;
  meta.sigma = 6.0;
  meta.k = 1;
  meta.n_sym = 1;
  meta.N = 4;
  std::string csv = branch_to_csv(branch, meta);
  auto [back, mb] = branch_from_csv(csv);
  CHECK(mb.sigma == 6.0);
  CHECK(mb.k == 1);
  CHECK(mb.n_sym == 1);
  CHECK(mb.N == 4);
  REQUIRE(back.size() == branch.size());
  for (std::size_t i = 0; i < branch.size(); ++i) {
    CHECK(back[i].lambda == branch[i].lambda);
    CHECK(back[i].normX == branch[i].normX);
    CHECK(back[i].stability_index == branch[i].stability_index);
    CosineSeries expect = materialized(branch[i].u);
    expect.a.resize(4, 0.0);
    REQUIRE(back[i].u.a.size() == 4);
    for (std::size_t c = 0; c < 4; ++c) CHECK(back[i].u.a[c] == expect.a[c]);
  }
  // rewrite is byte-identical
  CHECK(branch_to_csv(back, mb) == csv);

  CHECK_THROWS_AS(branch_from_csv("x,y\n1,2\n"), BadInput);
  CHECK_THROWS_AS(branch_from_csv("lambda,normX,stability_index\n1,2\n"), BadInput);
  CHECK_THROWS_AS(branch_from_csv("lambda,normX,stability_index\n1,2,zzz\n"), BadInput);
}

TEST_CASE("certificate json carries schema, interval pairs, and named checks") {
  const double sigma = 6.0;
  const double lam1 = primary_lambda(sigma, 1);
  ExtendedPoint w;
  w.lambda = lam1;
  w.n_sym = 11;
  w.v = mode(1, std::sqrt(2.0) / kp2(1));
  auto ell = make_normalization(w.v);
  CertificateConfig cfg;
  cfg.N = 24;
  auto cert = make_certificate(sigma, w, ell, cfg);
  REQUIRE(cert.valid);

  json j = certificate_to_json(cert);
  CHECK(j.at("schema").get<int>() == 1);
  CHECK(j.at("valid").get<bool>());
  CHECK(j.at("failure_stage").get<std::string>().empty());
  CHECK(j.at("inputs").at("sigma_star").get<double>() == sigma);
  CHECK(j.at("inputs").at("w_star").at("n_sym").get<int>() == 11);
  CHECK(j.at("discretization").at("N").get<int>() == cert.N);
  Interval rho = interval_from_json(j.at("enclosures").at("rho"));
  CHECK(rho.lo() == cert.rho.lo());
  CHECK(rho.hi() == cert.rho.hi());
  Interval M1 = interval_from_json(j.at("lipschitz").at("M1"));
  CHECK(M1.hi() == cert.bundle.M1.hi());
  CHECK(j.at("checks").at("contraction").get<bool>());
  CHECK(j.at("checks").at("closure").get<bool>());
  CHECK(j.at("box").at("delta_sigma").at(1).get<double>() == cert.delta_sigma);
  CHECK(!j.at("scenario").is_null());
  CHECK(j.at("scenario").at("case").get<std::string>() == "d");  // n odd, class B
  CHECK(!j.contains("timings_ms"));
  json jt = certificate_to_json(cert, true);
  CHECK(jt.contains("timings_ms"));
  CHECK(!jt.at("timings_ms").empty());

  // serialized certificates are byte-reproducible without timings
  auto cert2 = make_certificate(sigma, w, ell, cfg);
  CHECK(certificate_to_json(cert2).dump(2) == j.dump(2));

  // embedding the source record
  json rec = {{"hint", "origin"}};
  json jr = certificate_to_json(cert, false, &rec);
  CHECK(jr.at("inputs").at("record").at("hint").get<std::string>() == "origin");
}

TEST_CASE("diagram svg is deterministic and marks every scenario case") {
  std::vector<std::vector<BranchSample>> branches(2);
  for (int i = 0; i < 5; ++i) {
    BranchSample s;
    s.lambda = 25.0 + 10.0 * i;
    s.u = mode(1, 0.1 * (i + 1));
    s.normX = norms(s.u).normX;
    branches[0].push_back(s);
    s.lambda = 47.0 + 9.0 * i;
    s.u = mode(2, 0.07 * (i + 1));
    s.normX = norms(s.u).normX;
    branches[1].push_back(s);
  }
  std::vector<BifurcationRecord> records(5);
  const char cases[4] = {'a', 'b', 'c', 'd'};
  for (int i = 0; i < 4; ++i) {
    records[(std::size_t)i].lambda0 = 30.0 + 12.0 * i;
    records[(std::size_t)i].u0 = mode(1, 0.2 + 0.1 * i);
    records[(std::size_t)i].n_sym = 2 + i;
    ScenarioRecord s;
    s.case_label = cases[i];
    s.kernel_class = (cases[i] == 'a' || cases[i] == 'd') ? ClassTag::B : ClassTag::C;
    s.n_even = (cases[i] == 'a' || cases[i] == 'b');
    s.kernel_even_about_half = (cases[i] == 'a' || cases[i] == 'c');
    records[(std::size_t)i].scenario = s;
  }
  records[4].lambda0 = 80.0;
  records[4].u0 = mode(2, 0.5);
  records[4].n_sym = 3;  // no scenario: inconclusive marker

  std::string svg = diagram_svg(branches, records);
  CHECK(svg.rfind("<svg ", 0) == 0);
  CHECK(svg.find("viewBox=\"0 0 900 600\"") != std::string::npos);
  CHECK(svg.find("#008000") != std::string::npos);  // case a cross
  CHECK(svg.find("#d00000") != std::string::npos);  // case d cross
  CHECK(svg.find("#c000c0") != std::string::npos);  // case b dot
  CHECK(svg.find("#00b0b0") != std::string::npos);  // case c dot
  CHECK(svg.find("<polyline") != std::string::npos);
  CHECK(svg.find("lambda</text>") != std::string::npos);
  CHECK(diagram_svg(branches, records) == svg);

  std::string empty = diagram_svg({}, {});
  CHECK(empty.rfind("<svg ", 0) == 0);
  CHECK(empty.find("</svg>") != std::string::npos);
  CHECK(empty.find("<polyline") == std::string::npos);
  CHECK(empty.find("<circle") == std::string::npos);
}

TEST_CASE("atomic file write and read round-trip") {
  const std::string path = "io_test_scratch.txt";
  atomic_write_file(path, "alpha\nbeta\n");
  CHECK(read_file(path) == "alpha\nbeta\n");
  atomic_write_file(path, "gamma");
  CHECK(read_file(path) == "gamma");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file(path), BadInput);
  CHECK_THROWS_AS(atomic_write_file("no_such_dir_zz/x.txt", "y"), BadInput);
}
